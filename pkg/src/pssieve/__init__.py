"""
pssieve - Vérification numérique des presque-premiers de la forme [p^{1/γ}]
"""

try:
    from importlib.metadata import version, PackageNotFoundError
    try:
        __version__ = version("pssieve")
    except PackageNotFoundError:
        __version__ = "0.1.0"  # Version par défaut en développement
except ImportError:
    __version__ = "0.1.0"

from .exceptions import (
    CertificationError,
    ConfigError,
    ConsistencyError,
    DomainError,
    NumericError,
    ParameterError,
    ParseError,
    PrecisionError,
    PsSieveError,
    ResourceLimitError,
)
from .params import GammaParams, lower_bound_bracket, make_params

__all__ = [
    "GammaParams",
    "make_params",
    "lower_bound_bracket",
    "PsSieveError",
    "DomainError",
    "ParameterError",
    "ParseError",
    "ConfigError",
    "ResourceLimitError",
    "NumericError",
    "PrecisionError",
    "ConsistencyError",
    "CertificationError",
]
