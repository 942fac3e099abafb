"""
Tests unitaires pour l'interface en ligne de commande
"""

import json
import os
import tempfile
import unittest
from io import StringIO
from unittest.mock import patch

from pssieve.cli import (
    CSV_BANNER,
    EXIT_FAILURE,
    EXIT_OK,
    EXIT_USAGE,
    Table,
    dump_csv,
    main,
    run,
    run_id,
)
from pssieve.config_manager import CONFIG_ENV_VAR, RunConfig

SLOW = os.environ.get("PS_SIEVE_SLOW") == "1"


class TestCli(unittest.TestCase):
    """Tests de bout en bout des sous-commandes"""

    def setUp(self):
        """Répertoire d'artefacts temporaire et environnement nettoyé"""
        self.tmpdir = tempfile.TemporaryDirectory()
        self.env = patch.dict(os.environ, {}, clear=False)
        self.env.start()
        os.environ.pop(CONFIG_ENV_VAR, None)

    def tearDown(self):
        """Nettoyage après chaque test"""
        self.env.stop()
        self.tmpdir.cleanup()

    def _run(self, *argv):
        """Exécute la CLI et retourne (code, stdout)"""
        with patch('sys.stdout', new_callable=StringIO) as out, \
             patch('sys.stderr', new_callable=StringIO):
            code = run(["-q", "--output-dir", self.tmpdir.name, *argv])
        return code, out.getvalue()

    def _artifacts(self):
        return sorted(os.listdir(self.tmpdir.name))

    def test_pair(self):
        """pair --word BA3B écrit κ = 11/30, ℓ = 8/15"""
        code, out = self._run("pair", "--word", "BA3B")
        self.assertEqual(code, EXIT_OK)
        payload = json.loads(out)
        self.assertEqual(payload["kappa"], "11/30")
        self.assertEqual(payload["ell"], "8/15")
        artifacts = self._artifacts()
        self.assertEqual(len(artifacts), 1)
        self.assertTrue(artifacts[0].startswith("pair-"))
        self.assertTrue(artifacts[0].endswith(".json"))

    def test_pair_with_start(self):
        """Le couple de départ est lu sur la ligne de commande"""
        code, out = self._run("pair", "--word", "A", "--start", "1/6,2/3")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(json.loads(out)["kappa"], "1/14")

    def test_bracket_exit_follows_target(self):
        """bracket sort en 1 quand B reste positif mais sous la cible"""
        cases = ((0.0042, True, EXIT_OK), (1e-4, False, EXIT_FAILURE))
        for value, meets, expected in cases:
            report = {"gamma": 0.995, "bracket": value, "meets_target": meets}
            with self.subTest(bracket=value), \
                 patch("pssieve.cli.bracket_report", return_value=report):
                code, out = self._run("bracket", "--gamma", "0.995")
                self.assertEqual(code, expected)
                self.assertEqual(json.loads(out)["results"][0]["meets_target"], meets)

    def test_unknown_flag(self):
        """Un argument inconnu donne le code 2"""
        code, out = self._run("--bogus", "pair", "--word", "B")
        self.assertEqual(code, EXIT_USAGE)
        self.assertEqual(out, "")

    def test_parse_error(self):
        """Un mot invalide donne le code 2"""
        code, _ = self._run("pair", "--word", "BAC")
        self.assertEqual(code, EXIT_USAGE)

    def test_bad_config_line(self):
        """Une ligne de configuration mal formée donne le code 2"""
        path = os.path.join(self.tmpdir.name, "bad.conf")
        with open(path, "w", encoding="utf-8") as f:
            f.write("eta = 1e-6\ngamma_grid 0.99\n")
        code, _ = self._run("--config", path, "pair", "--word", "B")
        self.assertEqual(code, EXIT_USAGE)

    def test_gamma_outside_theorem_domain(self):
        """γ = 0.95 est refusé hors mode exploration"""
        code, _ = self._run("admissible", "--gamma", "0.95")
        self.assertEqual(code, EXIT_USAGE)

    def test_admissible(self):
        """admissible --gamma 0.99 passe"""
        code, out = self._run("admissible", "--gamma", "0.99")
        self.assertEqual(code, EXIT_OK)
        result = json.loads(out)["results"][0]
        self.assertTrue(result["passed"])
        self.assertGreater(result["one_minus_a_slack_over_eta"], 0.1)

    def test_deterministic_artifacts(self):
        """Deux exécutions identiques produisent le même fichier"""
        args = ("--format", "csv", "sievefn", "--s", "2.5", "3.5", "4.5", "--residual-h", "1e-4")
        code1, out1 = self._run(*args)
        code2, out2 = self._run(*args)
        self.assertEqual((code1, code2), (EXIT_OK, EXIT_OK))
        self.assertEqual(out1, out2)
        self.assertTrue(out1.startswith(CSV_BANNER))
        artifacts = self._artifacts()
        self.assertEqual(len(artifacts), 1)
        self.assertTrue(artifacts[0].endswith(".csv"))

    def test_run_id_ignores_output_dir(self):
        """L'empreinte ne dépend pas du répertoire de sortie"""
        a = run_id("pair", {"word": "B"}, RunConfig(output_dir="a"))
        b = run_id("pair", {"word": "B"}, RunConfig(output_dir="b"))
        c = run_id("pair", {"word": "A"}, RunConfig(output_dir="a"))
        self.assertEqual(a, b)
        self.assertNotEqual(a, c)
        self.assertEqual(len(a), 10)

    def test_dump_csv(self):
        """Les valeurs absentes deviennent des cellules vides"""
        text = dump_csv(Table(["a", "b"], [[1, None]]))
        self.assertEqual(text.splitlines(), [CSV_BANNER, "a,b", "1,"])

    def test_lemmas(self):
        """lemma24 et lemma25 respectent les constantes calibrées"""
        code, out = self._run("lemma24", "--J", "8", "--L", "8", "--D", "8",
                              "--delta", "1e-6", "--gamma", "0.99")
        self.assertEqual(code, EXIT_OK)
        self.assertLessEqual(json.loads(out)["ratio"], 1.0)
        code, _ = self._run("lemma25", "--H", "16", "--N", "16", "--M", "64",
                            "--X", "32", "--alpha", "1.0101")
        self.assertEqual(code, EXIT_OK)

    def test_lemma_limit(self):
        """Un paramètre trop grand donne le code 2"""
        code, _ = self._run("lemma24", "--J", "64", "--L", "8", "--D", "8",
                            "--delta", "1e-6", "--gamma", "0.99")
        self.assertEqual(code, EXIT_USAGE)

    def test_psi(self):
        """psi rapporte un rapport par valeur de H"""
        code, out = self._run("psi", "--H", "10", "100", "--samples", "2000")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(len(json.loads(out)["results"]), 2)

    def test_count(self):
        """count --x 1e4 remplit une ligne par échelle"""
        code, out = self._run("count", "--x", "1e4", "2e4")
        self.assertEqual(code, EXIT_OK)
        payload = json.loads(out)
        self.assertEqual(payload["columns"],
                         ["gamma", "x", "count", "benchmark", "ratio", "distinct_a"])
        self.assertEqual([row[1] for row in payload["rows"]], [10000, 20000])

    def test_remainders_frak(self):
        """remainders --frak à trois facteurs"""
        code, out = self._run("remainders", "--x", "1e5", "--frak", "--n-factors", "3")
        self.assertEqual(code, EXIT_OK)
        payload = json.loads(out)
        self.assertEqual(payload["eq"], "8-error-f-1")
        self.assertEqual(len(payload["rows"]), payload["d_max"])

    def test_certify_partition(self):
        """certify-partition au pas 1e-2 passe et rapporte les marges"""
        code, out = self._run("certify-partition", "--step", "1e-2", "--gamma", "0.9891", "0.995")
        self.assertEqual(code, EXIT_OK)
        payload = json.loads(out)
        self.assertEqual(payload["counterexamples"], 0)
        self.assertEqual(len(payload["slacks"]), 2)
        self.assertTrue(all(s["passed"] for s in payload["slacks"]))

    def test_main_uses_argv(self):
        """main transmet argv à run"""
        with patch('sys.stdout', new_callable=StringIO), patch('sys.stderr', new_callable=StringIO):
            code = main(["-q", "--output-dir", self.tmpdir.name, "pair", "--word", "B"])
        self.assertEqual(code, EXIT_OK)

    @unittest.skipUnless(SLOW, "critères complets réservés à PS_SIEVE_SLOW=1")
    def test_reproduce_quick(self):
        """reproduce --quick passe tous les critères"""
        code, out = self._run("reproduce", "--quick")
        payload = json.loads(out)
        failed = [name for name, c in payload["criteria"].items() if not c["passed"]]
        self.assertEqual(failed, [])
        self.assertEqual(code, EXIT_OK)


if __name__ == '__main__':
    unittest.main()
