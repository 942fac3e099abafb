"""
Module utilitaire pour la gestion du logging dans pssieve
"""

import logging
import sys


def get_logger(name, level=logging.INFO, stream=None):
    """
    Configure et retourne un logger pour pssieve

    Les artefacts CSV/JSON sortent sur stdout, les logs partent donc sur stderr
    par défaut.

    Args:
        name (str): Nom du logger
        level (int): Niveau de log (par défaut: INFO)
        stream (file, optional): Flux de sortie (par défaut: sys.stderr)

    Returns:
        logging.Logger: Logger configuré
    """
    logger = logging.getLogger(name)

    # Ne pas reconfigurer si déjà configuré
    if logger.handlers:
        return logger

    logger.setLevel(level)

    console_handler = logging.StreamHandler(stream if stream is not None else sys.stderr)
    console_handler.setLevel(level)

    formatter = logging.Formatter(
        '%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        datefmt='%Y-%m-%d %H:%M:%S'
    )
    console_handler.setFormatter(formatter)

    logger.addHandler(console_handler)

    return logger


def set_level(logger, level):
    """
    Change le niveau d'un logger et de tous ses handlers

    Args:
        logger (logging.Logger): Logger à modifier
        level (int): Nouveau niveau
    """
    logger.setLevel(level)
    for handler in logger.handlers:
        handler.setLevel(level)
