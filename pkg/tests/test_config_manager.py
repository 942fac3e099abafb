"""
Tests unitaires pour le module config_manager
"""

import os
import tempfile
import unittest
from unittest.mock import patch

import yaml

from pssieve.config_manager import CONFIG_ENV_VAR, ConfigManager, RunConfig
from pssieve.exceptions import ConfigError


class TestConfigManager(unittest.TestCase):
    """Tests pour la classe ConfigManager"""

    def setUp(self):
        """Initialisation avant chaque test"""
        self.tmpdir = tempfile.TemporaryDirectory()
        self.env = patch.dict(os.environ, {}, clear=False)
        self.env.start()
        os.environ.pop(CONFIG_ENV_VAR, None)

    def tearDown(self):
        """Nettoyage après chaque test"""
        self.env.stop()
        self.tmpdir.cleanup()

    def _write(self, name, content):
        path = os.path.join(self.tmpdir.name, name)
        with open(path, "w", encoding="utf-8") as f:
            f.write(content)
        return path

    def test_default_config(self):
        """Vérifie que la configuration par défaut est chargée si aucun fichier n'est trouvé"""
        with patch('os.path.exists', return_value=False):
            manager = ConfigManager()

        self.assertIsNone(manager.source)
        self.assertEqual(manager.config["seed"], 0x5EED)
        self.assertEqual(manager.config["segment_size"], 1 << 20)
        self.assertEqual(manager.config["max_segments"], 256)
        self.assertEqual(manager.config["format"], "json")

    def test_load_flat_config(self):
        """Vérifie la lecture d'un fichier key = value avec commentaires"""
        path = self._write("pssieve.conf", (
            "# grille de travail\n"
            "gamma_grid = [0.992, 0.995]\n"
            "eta = 1e-6\n"
            "\n"
            "mc_samples = 1e5\n"
            "format = csv\n"
        ))
        manager = ConfigManager(path)

        self.assertEqual(manager.source, path)
        self.assertEqual(manager.config["gamma_grid"], [0.992, 0.995])
        self.assertEqual(manager.config["eta"], 1e-6)
        self.assertIsInstance(manager.config["eta"], float)
        self.assertEqual(manager.config["mc_samples"], 100000)
        self.assertEqual(manager.config["format"], "csv")

    def test_load_yaml_config(self):
        """Vérifie le chargement d'une configuration depuis un fichier YAML"""
        path = self._write("pssieve.yml", yaml.dump({"x_scales": [100000], "worker_count": 2}))
        manager = ConfigManager(path)

        self.assertEqual(manager.config["x_scales"], [100000])
        self.assertEqual(manager.config["worker_count"], 2)
        # les autres clés gardent leur valeur par défaut
        self.assertEqual(manager.config["certify_step"], 5e-3)

    def test_env_var_lookup(self):
        """Vérifie que PS_SIEVE_CONFIG désigne le fichier à charger"""
        path = self._write("custom.conf", "worker_count = 3\n")
        with patch.dict(os.environ, {CONFIG_ENV_VAR: path}):
            manager = ConfigManager()

        self.assertEqual(manager.config["worker_count"], 3)

    def test_line_without_equal(self):
        """Vérifie qu'une ligne mal formée lève ConfigError avec son numéro"""
        path = self._write("bad.conf", "eta = 1e-6\ngamma_grid 0.99\n")

        with self.assertRaises(ConfigError) as ctx:
            ConfigManager(path)

        self.assertEqual(ctx.exception.line, 2)
        self.assertIn("ligne 2", str(ctx.exception))

    def test_unparsable_value(self):
        """Vérifie qu'une valeur illisible en YAML lève ConfigError"""
        path = self._write("bad.conf", "# entête\ngamma_grid = [0.99,\n")

        with self.assertRaises(ConfigError) as ctx:
            ConfigManager(path)

        self.assertEqual(ctx.exception.line, 2)

    def test_bad_type_names_line(self):
        """Vérifie qu'une valeur du mauvais type est rattachée à sa ligne"""
        path = self._write("bad.conf", "eta = 1e-6\nworker_count = deux\n")

        with self.assertRaises(ConfigError) as ctx:
            ConfigManager(path)

        self.assertEqual(ctx.exception.line, 2)

    def test_unknown_key_warns(self):
        """Vérifie qu'une clé inconnue est ignorée avec un avertissement"""
        path = self._write("extra.conf", "cache_dir = /tmp/cache\neta = 2e-6\n")

        with self.assertLogs("pssieve", level="WARNING") as logs:
            manager = ConfigManager(path)

        self.assertNotIn("cache_dir", manager.config)
        self.assertEqual(manager.config["eta"], 2e-6)
        self.assertTrue(any("cache_dir" in line for line in logs.output))

    def test_missing_explicit_file(self):
        """Vérifie le repli sur les valeurs par défaut si le fichier indiqué manque"""
        missing = os.path.join(self.tmpdir.name, "absent.conf")
        with patch('os.path.exists', return_value=False):
            with self.assertLogs("pssieve", level="WARNING"):
                manager = ConfigManager(missing)

        self.assertEqual(manager.config["eta"], 1e-6)


class TestRunConfig(unittest.TestCase):
    """Tests pour RunConfig et les surcharges"""

    def setUp(self):
        """Initialisation avant chaque test"""
        with patch('os.path.exists', return_value=False), \
             patch.dict(os.environ, {}, clear=False):
            os.environ.pop(CONFIG_ENV_VAR, None)
            self.manager = ConfigManager()

    def test_overrides_applied_last(self):
        """Vérifie que les surcharges non nulles priment sur le fichier"""
        cfg = self.manager.run_config(format="csv", worker_count=None, seed=7)

        self.assertIsInstance(cfg, RunConfig)
        self.assertEqual(cfg.format, "csv")
        self.assertEqual(cfg.worker_count, 1)
        self.assertEqual(cfg.seed, 7)

    def test_theorem_mode_rejects_small_gamma(self):
        """Vérifie que γ < 0.989 est refusé hors mode exploration"""
        with self.assertRaises(ConfigError):
            self.manager.run_config(gamma_grid=[0.95])

    def test_exploration_mode_warns(self):
        """Vérifie que le mode exploration accepte γ ∈ (99/140, 0.989) en avertissant"""
        with self.assertLogs("pssieve", level="WARNING"):
            cfg = self.manager.run_config(gamma_grid=[0.95], exploration=True)

        self.assertEqual(cfg.gamma_grid, [0.95])

    def test_exploration_mode_bounds(self):
        """Vérifie que γ ≤ 99/140 reste refusé en mode exploration"""
        with self.assertRaises(ConfigError):
            self.manager.run_config(gamma_grid=[0.7], exploration=True)

    def test_unknown_format(self):
        """Vérifie qu'un format inconnu est refusé"""
        with self.assertRaises(ConfigError):
            self.manager.run_config(format="xml")

    def test_unknown_override(self):
        """Vérifie qu'une surcharge inconnue est refusée"""
        with self.assertRaises(ConfigError):
            self.manager.run_config(cache_dir="/tmp/cache")


if __name__ == '__main__':
    unittest.main()
