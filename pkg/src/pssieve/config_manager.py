"""
Module de gestion de la configuration de pssieve
"""

import logging
import os
from dataclasses import dataclass, field, fields
from pathlib import Path

import yaml

from pssieve.exceptions import ConfigError
from pssieve.params import (
    DEFAULT_EPSILON,
    DEFAULT_ETA,
    DEFAULT_SEED,
    GAMMA_MIN,
    THEOREM_GAMMA_MIN,
)

# Configuration du logger
logger = logging.getLogger("pssieve")

CONFIG_ENV_VAR = "PS_SIEVE_CONFIG"


@dataclass
class RunConfig:
    """
    Configuration effective d'une exécution

    Attributes:
        gamma_grid (list): Valeurs de γ à traiter
        eta (float): η
        epsilon (float): ε
        x_scales (list): Échelles x des comptages
        output_dir (str): Répertoire des artefacts
        format (str): "csv" ou "json"
        worker_count (int): Nombre de processus
        segment_size (int): Longueur d'un segment du crible
        max_segments (int): Nombre maximal de segments
        seed (int): Graine du Monte-Carlo
        mc_samples (int): Nombre de tirages Monte-Carlo
        gl_start_nodes (int): Nœuds de Gauss-Legendre initiaux
        gl_max_nodes (int): Nœuds de Gauss-Legendre maximaux
        certify_step (float): Pas de la grille du certificat
        certify_eta_s (float): Marge η_s du certificat
        exploration (bool): Autoriser γ hors de (0.989, 1)
    """

    gamma_grid: list = field(default_factory=lambda: [0.989, 0.992, 0.995, 0.999])
    eta: float = DEFAULT_ETA
    epsilon: float = DEFAULT_EPSILON
    x_scales: list = field(default_factory=lambda: [10**5, 10**6])
    output_dir: str = "."
    format: str = "json"
    worker_count: int = 1
    segment_size: int = 1 << 20
    max_segments: int = 256
    seed: int = DEFAULT_SEED
    mc_samples: int = 10**7
    gl_start_nodes: int = 8
    gl_max_nodes: int = 64
    certify_step: float = 5e-3
    certify_eta_s: float = 0.01
    exploration: bool = False

    def validate(self):
        """
        Vérifie la cohérence des valeurs

        Returns:
            RunConfig: La configuration elle-même
        """
        if self.format not in ("csv", "json"):
            raise ConfigError(f"format inconnu: {self.format!r}")
        if self.worker_count < 1:
            raise ConfigError(f"worker_count={self.worker_count} doit être ≥ 1")
        for gamma in map(float, self.gamma_grid):
            if self.exploration:
                inside = GAMMA_MIN < gamma < 1.0
            else:
                inside = THEOREM_GAMMA_MIN <= gamma < 1.0
            if not inside:
                mode = "exploration" if self.exploration else "théorème"
                raise ConfigError(f"γ={gamma} hors du domaine (mode {mode})")
            if gamma < THEOREM_GAMMA_MIN:
                logger.warning(f"γ={gamma} hors du domaine du théorème (mode exploration)")
        return self


_KNOWN_KEYS = {f.name for f in fields(RunConfig)}
_FLOAT_KEYS = {"eta", "epsilon", "certify_step", "certify_eta_s"}
_INT_KEYS = {"worker_count", "segment_size", "max_segments", "seed", "mc_samples",
             "gl_start_nodes", "gl_max_nodes"}


def _coerce(key, value):
    """
    Convertit une valeur lue vers le type du champ de RunConfig

    PyYAML lit 1e-6 comme une chaîne (pas de point décimal).

    Args:
        key (str): Nom du champ
        value: Valeur lue

    Returns:
        Valeur convertie
    """
    if key in _FLOAT_KEYS:
        return float(value)
    if key in _INT_KEYS:
        number = float(value) if isinstance(value, str) else value
        if int(number) != number:
            raise ValueError(f"{value!r} n'est pas entier")
        return int(number)
    if key == "gamma_grid":
        return [float(v) for v in (value if isinstance(value, list) else [value])]
    if key == "x_scales":
        return [int(float(v)) for v in (value if isinstance(value, list) else [value])]
    if key == "exploration":
        if isinstance(value, str):
            return value.strip().lower() in ("1", "true", "yes", "oui")
        return bool(value)
    return str(value)


class ConfigManager:
    """
    Gère la configuration de pssieve depuis différentes sources

    Cette classe permet de:
    - Charger un fichier YAML ou un fichier plat key = value
    - Rechercher automatiquement les fichiers de configuration
    - Gérer les valeurs par défaut
    - Appliquer les surcharges de la ligne de commande
    """

    DEFAULT_CONFIG_PATHS = [
        "./pssieve.conf",
        "./pssieve.yml",
        "~/.config/pssieve.conf",
        "~/.config/pssieve.yml",
    ]

    def __init__(self, config_path=None):
        """
        Initialise le gestionnaire de configuration

        Args:
            config_path (str, optional): Chemin vers un fichier de configuration
        """
        self.config_path = config_path or os.environ.get(CONFIG_ENV_VAR)
        self.config = {}
        self.source = None
        self._load_config()

    def _load_config(self):
        """
        Charge la configuration depuis un fichier ou utilise la configuration par défaut
        """
        if self.config_path:
            config_path = Path(self.config_path).expanduser().resolve()
            if config_path.exists():
                self._load_file(str(config_path))
                return
            else:
                logger.warning(f"Fichier de configuration spécifié introuvable: {self.config_path}")

        for path in self.DEFAULT_CONFIG_PATHS:
            expanded_path = os.path.expanduser(path)
            if os.path.exists(expanded_path):
                self._load_file(expanded_path)
                return

        logger.debug("Aucun fichier de configuration trouvé, utilisation des valeurs par défaut")
        self.config = self._get_default_config()

    def _load_file(self, path):
        """
        Charge un fichier YAML (.yml, .yaml) ou un fichier plat key = value

        Args:
            path (str): Chemin vers le fichier de configuration
        """
        lines = {}
        if path.endswith((".yml", ".yaml")):
            loaded = self._load_yaml_config(path)
        else:
            loaded, lines = self._load_flat_config(path)
        config = self._get_default_config()
        for key, value in loaded.items():
            if key not in _KNOWN_KEYS:
                logger.warning(f"Clé de configuration inconnue ignorée: {key}")
                continue
            try:
                config[key] = _coerce(key, value)
            except (TypeError, ValueError) as e:
                raise ConfigError(f"{key}: {e}", path=path, line=lines.get(key))
        logger.info(f"Configuration chargée depuis {path}")
        self.config = config
        self.source = path

    def _load_yaml_config(self, path):
        """
        Lit un fichier YAML

        Args:
            path (str): Chemin du fichier

        Returns:
            dict: Valeurs lues
        """
        try:
            with open(path, "r", encoding="utf-8") as file:
                loaded = yaml.safe_load(file)
        except yaml.YAMLError as e:
            mark = getattr(e, "problem_mark", None)
            raise ConfigError(str(e), path=path, line=mark.line + 1 if mark else None)
        if not loaded:
            logger.warning(f"Fichier de configuration vide: {path}")
            return {}
        if not isinstance(loaded, dict):
            raise ConfigError("le document YAML doit être un dictionnaire", path=path)
        return loaded

    def _load_flat_config(self, path):
        """
        Lit un fichier de lignes key = value, valeurs interprétées en YAML

        Args:
            path (str): Chemin du fichier

        Returns:
            tuple: (valeurs lues, numéro de ligne de chaque clé)
        """
        values = {}
        lines = {}
        with open(path, "r", encoding="utf-8") as f:
            for number, line in enumerate(f, start=1):
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                if "=" not in line:
                    raise ConfigError(f"ligne sans '=': {line!r}", path=path, line=number)
                key, raw = line.split("=", 1)
                try:
                    values[key.strip()] = yaml.safe_load(raw.strip())
                    lines[key.strip()] = number
                except yaml.YAMLError:
                    raise ConfigError(f"valeur illisible: {raw.strip()!r}", path=path, line=number)
        logger.debug(f"{len(values)} valeur(s) lue(s) dans {path}")
        return values, lines

    def _get_default_config(self):
        """
        Retourne la configuration par défaut

        Returns:
            dict: Configuration par défaut
        """
        return {f.name: getattr(RunConfig(), f.name) for f in fields(RunConfig)}

    def get_config(self):
        """
        Retourne la configuration complète

        Returns:
            dict: Configuration complète
        """
        return self.config

    def run_config(self, **overrides):
        """
        Construit la RunConfig, les surcharges non nulles étant appliquées en dernier

        Args:
            **overrides: Valeurs issues de la ligne de commande

        Returns:
            RunConfig: Configuration validée
        """
        values = dict(self.config)
        for key, value in overrides.items():
            if key not in _KNOWN_KEYS:
                raise ConfigError(f"surcharge inconnue: {key}")
            if value is not None:
                values[key] = _coerce(key, value)
        return RunConfig(**values).validate()
