"""
Hiérarchie des exceptions de pssieve
"""


class PsSieveError(Exception):
    """Classe de base de toutes les erreurs levées par pssieve"""


class DomainError(PsSieveError, ValueError):
    """Argument hors du domaine de définition d'une opération"""


class ParameterError(PsSieveError, ValueError):
    """Jeu de paramètres (γ, η, ε) inadmissible"""


class ParseError(PsSieveError, ValueError):
    """Texte impossible à analyser (mot d'exposants, couple, grille)"""


class ConfigError(PsSieveError):
    """
    Fichier de configuration mal formé

    Attributes:
        path (str|None): Fichier concerné
        line (int|None): Numéro de ligne fautive (à partir de 1)
    """

    def __init__(self, message, path=None, line=None):
        self.path = path
        self.line = line
        if line is not None:
            message = f"{path or '<config>'}, ligne {line}: {message}"
        super().__init__(message)


class ResourceLimitError(PsSieveError):
    """
    Calcul dépassant une limite de ressources configurée

    Attributes:
        limit (int|float): Limite dépassée
    """

    def __init__(self, message, limit=None):
        self.limit = limit
        super().__init__(message)


class NumericError(PsSieveError, ArithmeticError):
    """Échec de convergence d'un calcul numérique"""


class PrecisionError(NumericError):
    """Partie entière indécidable ou identité numérique non vérifiée"""


class ConsistencyError(PsSieveError):
    """Deux chemins de calcul indépendants donnent des résultats différents"""


class CertificationError(PsSieveError):
    """
    Certificat combinatoire mis en défaut

    Attributes:
        counterexamples (list): Points fautifs
    """

    def __init__(self, message, counterexamples=None):
        self.counterexamples = list(counterexamples or [])
        super().__init__(message)
