"""
Module des sommes d'exponentielles

Algèbre exacte des couples d'exposants (processus A et B), évaluation directe
des sommes et contrôles empiriques des lemmes de troncature, de comptage et
de sommes trilinéaires.
"""

import logging
import math
import re
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from pssieve.exceptions import DomainError, ParseError, ResourceLimitError

# Configuration du logger
logger = logging.getLogger("pssieve")

BOUND_EPSILON = 0.05
MAX_SUM_LENGTH = 10**7
MAX_LATTICE_PARAM = 32
MAX_TRILINEAR_PARAM = 256

# Constantes implicites des lemmes: maximum mesuré x 1.4 à 1.5
#   C22: ψ tronquée, H ∈ {10, 100, 1000}, 10⁴ points sur [0, 1000); mesuré 0.499,
#        le rapport tend vers 1/2 quand ‖t‖ → 0
#   C24: quasi-coïncidences (8, 8, 8), γ = 0.99, Δ ∈ {1e-9, 1e-6, 1e-4}; mesuré 0.178 (112 / 630)
#   C25: somme trilinéaire (16, 16, 64), X = 32, α = 1/0.99; mesuré 0.0082
CALIBRATED_CONSTANTS = {"C22": 0.75, "C24": 0.25, "C25": 0.0125}

_WORD_TOKEN = re.compile(r"([AB])(\d*)")
HALF = Fraction(1, 2)


@dataclass(frozen=True)
class ExponentPair:
    """
    Couple d'exposants (κ, ℓ) en rationnels exacts

    Attributes:
        kappa (Fraction): κ ∈ [0, 1/2]
        ell (Fraction): ℓ ∈ [1/2, 1]
    """

    kappa: Fraction
    ell: Fraction

    def __post_init__(self):
        object.__setattr__(self, "kappa", Fraction(self.kappa))
        object.__setattr__(self, "ell", Fraction(self.ell))
        if not (0 <= self.kappa <= HALF <= self.ell <= 1):
            raise DomainError(f"couple invalide ({self.kappa}, {self.ell})")

    @classmethod
    def parse(cls, text):
        """
        Lit un couple écrit "κ,ℓ" (par exemple "11/30,8/15")

        Args:
            text (str): Texte à analyser

        Returns:
            ExponentPair: Couple lu
        """
        parts = [part.strip() for part in text.strip().strip("()").split(",")]
        if len(parts) != 2:
            raise ParseError(f"couple illisible: {text!r}")
        try:
            return cls(Fraction(parts[0]), Fraction(parts[1]))
        except ValueError as e:
            raise ParseError(f"couple illisible: {text!r} ({e})") from e

    def bound(self, lam1, a):
        """Borne λ₁^κ a^ℓ + λ₁^{-1}"""
        if lam1 <= 0:
            return math.inf
        return lam1 ** float(self.kappa) * a ** float(self.ell) + 1.0 / lam1

    def to_dict(self):
        return {"kappa": str(self.kappa), "ell": str(self.ell)}

    def __str__(self):
        return f"({self.kappa}, {self.ell})"


TRIVIAL_PAIR = ExponentPair(Fraction(0), Fraction(1))


def apply_process(pair, proc):
    """
    Applique le processus A ou B à un couple

    Args:
        pair (ExponentPair): Couple de départ
        proc (str): "A" ou "B"

    Returns:
        ExponentPair: Couple image
    """
    k, l = pair.kappa, pair.ell
    if proc == "A":
        return ExponentPair(k / (2 * k + 2), (k + l + 1) / (2 * k + 2))
    if proc == "B":
        return ExponentPair(l - HALF, k + HALF)
    raise ParseError(f"processus inconnu: {proc!r}")


def parse_word(word):
    """
    Découpe un mot comme "BA3B" en liste de processus

    Args:
        word (str): Mot sur l'alphabet {A, B}, exposants décimaux autorisés

    Returns:
        list: Processus dans l'ordre d'écriture
    """
    procs = []
    pos = 0
    for match in _WORD_TOKEN.finditer(word):
        if match.start() != pos:
            break
        count = int(match.group(2)) if match.group(2) else 1
        procs.extend(match.group(1) * count)
        pos = match.end()
    if pos != len(word):
        raise ParseError(f"caractère invalide en position {pos} dans {word!r}")
    return procs


def apply_word(word, start=TRIVIAL_PAIR):
    """
    Applique un mot de processus de droite à gauche

    Args:
        word (str): Mot, par exemple "BA3B"
        start (ExponentPair): Couple de départ (par défaut (0, 1))

    Returns:
        ExponentPair: Couple obtenu
    """
    pair = start
    for proc in reversed(parse_word(word)):
        pair = apply_process(pair, proc)
    return pair


@dataclass(frozen=True)
class ExpSumResult:
    """Somme directe et borne associée au couple fourni"""

    a: int
    b: int
    amp: float
    expnt: float
    value: complex
    lambda1: float
    bound: float
    pair: ExponentPair

    @property
    def ratio(self):
        return abs(self.value) / self.bound if self.bound > 0 else math.inf

    def to_dict(self):
        return {
            "inputs": {"a": self.a, "b": self.b, "amp": self.amp, "expnt": self.expnt,
                       "pair": self.pair.to_dict()},
            "value": [self.value.real, self.value.imag],
            "abs": abs(self.value),
            "bound": self.bound,
            "ratio": self.ratio,
            "eq": "expo-pair-gernal",
        }


def _phase_sum(phases):
    reduced = np.mod(phases, 1.0)
    terms = np.exp(2j * np.pi * reduced)
    return complex(np.sum(terms))


def monomial_exp_sum(a, b, amp, expnt, pair=None):
    """
    Somme directe Σ_{a<n≤b} e(amp·(n/a)^expnt)

    Args:
        a (int): Borne inférieure exclue
        b (int): Borne supérieure incluse, a < b ≤ 2a
        amp (float): Amplitude de la phase
        expnt (float): Exposant de la phase
        pair (ExponentPair, optional): Couple pour la borne (par défaut (1/2, 1/2))

    Returns:
        ExpSumResult: Somme et borne λ₁^κ a^ℓ + λ₁^{-1}
    """
    if not 1 <= a < b <= 2 * a:
        raise DomainError(f"intervalle ({a}, {b}] invalide: 1 ≤ a < b ≤ 2a exigé")
    if b > MAX_SUM_LENGTH:
        raise ResourceLimitError(f"b={b} dépasse la limite {MAX_SUM_LENGTH}", limit=MAX_SUM_LENGTH)
    if pair is None:
        pair = apply_word("B")
    n = np.arange(a + 1, b + 1, dtype=float)
    if amp == 0:
        value = complex(b - a, 0.0)
    else:
        value = _phase_sum(amp * (n / a) ** expnt)
    lam1 = abs(amp * expnt) / a
    return ExpSumResult(a, b, amp, expnt, value, lam1, pair.bound(lam1, a), pair)


def psi(t):
    """
    Fonction en dents de scie ψ(t) = t - [t] - 1/2 (vectorisée)

    Args:
        t (float|array_like): Argument

    Returns:
        float|numpy.ndarray: ψ(t)
    """
    t = np.asarray(t, dtype=float)
    out = t - np.floor(t) - 0.5
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class PsiCheckResult:
    """Rapport maximal erreur de troncature / min(1, 1/(H‖t‖))"""

    H: int
    max_ratio: float
    samples: int
    skipped: int

    def to_dict(self):
        return {
            "inputs": {"H": self.H, "samples": self.samples},
            "value": self.max_ratio,
            "skipped_integral_samples": self.skipped,
            "eq": "psi-expansion",
        }


def psi_truncation_check(t_samples, H, chunk=2048):
    """
    Contrôle l'erreur de la série de Fourier tronquée de ψ

    ψ(t) + Σ_{0<|h|≤H} e(th)/(2πih) = ψ(t) + Σ_{h=1}^{H} sin(2πht)/(πh)

    Args:
        t_samples (array_like): Points d'échantillonnage
        H (int): Ordre de troncature (≥ 2)
        chunk (int): Taille des paquets de points

    Returns:
        PsiCheckResult: Rapport maximal observé
    """
    if H < 2:
        raise DomainError(f"H={H} doit être ≥ 2")
    t = np.asarray(t_samples, dtype=float)
    dist = np.abs(t - np.round(t))
    integral = dist == 0.0
    skipped = int(np.count_nonzero(integral))
    if skipped:
        logger.info(f"{skipped} point(s) entier(s) ignoré(s) (‖t‖ = 0)")
    t = t[~integral]
    dist = dist[~integral]
    h = np.arange(1, H + 1, dtype=float)
    best = 0.0
    for start in range(0, t.size, chunk):
        tc = t[start:start + chunk]
        # réduction modulo 1 avant d'entrer dans le sinus
        frac = tc - np.floor(tc)
        partial = np.sin(2.0 * np.pi * np.outer(frac, h)) @ (1.0 / (np.pi * h))
        error = np.abs(psi(tc) + partial)
        scale = np.minimum(1.0, 1.0 / (H * dist[start:start + chunk]))
        best = max(best, float(np.max(error / scale)))
    return PsiCheckResult(H, best, int(t.size), skipped)


@dataclass(frozen=True)
class TruncationParams:
    """
    Longueur de troncature H et son rôle

    Attributes:
        H (int): Ordre de troncature (≥ 1)
        role (str): H1, H2, Hstar ou Hgeneric
    """

    H: int
    role: str

    def __post_init__(self):
        if self.H < 1:
            raise DomainError(f"H={self.H} doit être ≥ 1")
        if self.role not in ("H1", "H2", "Hstar", "Hgeneric"):
            raise DomainError(f"rôle inconnu: {self.role}")


def truncation_params(p, x, role, X=None):
    """
    Construit H1 = x^{ξ+η}, H2 = X^{ξ/γ+η} ou H* = x^{1-γ+ξ+η}

    Args:
        p (GammaParams): Paramètres
        x (float): Échelle globale
        role (str): H1, H2 ou Hstar
        X (float, optional): Échelle dyadique pour H2 (par défaut x^γ)

    Returns:
        TruncationParams: H entier (partie entière, au moins 1)
    """
    if role == "H1":
        value = x ** (p.xi + p.eta)
    elif role == "H2":
        X = x ** p.gamma if X is None else X
        value = X ** (p.xi / p.gamma + p.eta)
    elif role == "Hstar":
        value = x ** (1.0 - p.gamma + p.xi + p.eta)
    else:
        raise DomainError(f"rôle inconnu: {role}")
    return TruncationParams(max(1, int(value)), role)


def _dyadic(P):
    # convention n ∼ P: P/2 < n ≤ P
    return np.arange(P // 2 + 1, P + 1)


@dataclass(frozen=True)
class LemmaCheckResult:
    """Valeur empirique, borne et rapport d'un contrôle de lemme"""

    inputs: dict
    value: float
    bound: float
    eq: str

    @property
    def ratio(self):
        return self.value / self.bound if self.bound > 0 else math.inf

    def to_dict(self):
        return {"inputs": self.inputs, "value": self.value, "bound": self.bound,
                "ratio": self.ratio, "eq": self.eq}


def lattice_values(J, L, D, gamma):
    """Valeurs h·ℓ^{1/γ}/d pour h ∼ J, ℓ ∼ L, d ∼ D, triées"""
    h = _dyadic(J).astype(float)
    ell = _dyadic(L).astype(float) ** (1.0 / gamma)
    d = _dyadic(D).astype(float)
    values = (h[:, None, None] * ell[None, :, None]) / d[None, None, :]
    return np.sort(values.ravel())


def lattice_count_oracle(J, L, D, Delta, gamma, strict=True):
    """
    Compte les sextuplets avec |h₁ℓ₁^{1/γ}/d₁ - h₂ℓ₂^{1/γ}/d₂| < Δ

    Args:
        J (int): Paramètre de h
        L (int): Paramètre de ℓ
        D (int): Paramètre de d
        Delta (float): Écart Δ ≥ 0
        gamma (float): Exposant γ
        strict (bool): Inégalité stricte (False pour la sonde Δ = 0)

    Returns:
        LemmaCheckResult: Nombre de couples ordonnés et borne (JD)^ε(JDL + ΔD³JL^{2-1/γ})
    """
    if max(J, L, D) > MAX_LATTICE_PARAM:
        raise ResourceLimitError(
            f"J, L, D limités à {MAX_LATTICE_PARAM} (force brute en dimension 6)",
            limit=MAX_LATTICE_PARAM,
        )
    if min(J, L, D) < 2:
        raise DomainError("J, L, D doivent être ≥ 2")
    if Delta < 0:
        raise DomainError(f"Δ={Delta} négatif")
    values = lattice_values(J, L, D, gamma)
    if strict:
        upper = np.searchsorted(values, values + Delta, side="left")
        lower = np.searchsorted(values, values - Delta, side="right")
    else:
        upper = np.searchsorted(values, values + Delta, side="right")
        lower = np.searchsorted(values, values - Delta, side="left")
    count = int(np.sum(upper - lower))
    eps = BOUND_EPSILON
    bound = (J * D) ** eps * (J * D * L + Delta * D**3 * J * L ** (2.0 - 1.0 / gamma))
    return LemmaCheckResult(
        {"J": J, "L": L, "D": D, "Delta": Delta, "gamma": gamma, "strict": strict},
        count, bound, "latticepoints",
    )


def _check_trilinear_exponents(alpha, beta, gamma_e):
    for label, factor in (("alpha", alpha), ("alpha - 1", alpha - 1.0),
                          ("beta", beta), ("gamma", gamma_e)):
        if factor == 0:
            raise DomainError(f"exposant dégénéré: le facteur {label} de α(α-1)βγ est nul")


def trilinear_sum_check(H, N, M, Xamp, alpha, beta, gamma_e):
    """
    Somme trilinéaire S = Σ_h Σ_n |Σ_m e(X(m/M)^α(h/H)^β(n/N)^γ)|

    Args:
        H (int): Paramètre de h
        N (int): Paramètre de n
        M (int): Paramètre de m
        Xamp (float): Amplitude X
        alpha (float): Exposant α
        beta (float): Exposant β
        gamma_e (float): Exposant γ

    Returns:
        LemmaCheckResult: S et borne (HNM)^{1+ε}((X/(HNM²))^{1/4} + M^{-1/2} + X^{-1})
    """
    _check_trilinear_exponents(alpha, beta, gamma_e)
    if max(H, N, M) > MAX_TRILINEAR_PARAM:
        raise ResourceLimitError(f"H, N, M limités à {MAX_TRILINEAR_PARAM}",
                                 limit=MAX_TRILINEAR_PARAM)
    h = (_dyadic(H) / H) ** beta
    n = (_dyadic(N) / N) ** gamma_e
    m = (_dyadic(M) / M) ** alpha
    S_parts = []
    for hv in h:
        phases = Xamp * hv * n[:, None] * m[None, :]
        inner = np.exp(2j * np.pi * np.mod(phases, 1.0)).sum(axis=1)
        S_parts.append(float(np.sum(np.abs(inner))))
    S = math.fsum(S_parts)
    X = abs(Xamp)
    hnm = H * N * M
    bound = hnm ** (1.0 + BOUND_EPSILON) * (
        (X / (H * N * M**2)) ** 0.25 + M ** -0.5 + (1.0 / X if X > 0 else math.inf)
    )
    return LemmaCheckResult(
        {"H": H, "N": N, "M": M, "X": Xamp, "alpha": alpha, "beta": beta, "gamma": gamma_e},
        S, bound, "Robert-Sargos-lemma",
    )
