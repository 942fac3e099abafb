"""
Module du système de paramètres (γ, η, ε, ξ, u, λ)

Contrôle des inégalités d'admissibilité, budgets d'exposants des sommes de
type I/II et de 𝔖₀, et crochet final du crible pondéré (intégrales 1D et 7D).
"""

import functools
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import mpmath
import numpy as np
from scipy.integrate import quad

from pssieve.exceptions import DomainError, NumericError, ParameterError
from pssieve.sieve_functions import eval_F

# Configuration du logger
logger = logging.getLogger("pssieve")

GAMMA_MIN = 99 / 140
THEOREM_GAMMA_MIN = 0.989
SIEVE_CUTOFF_INV = 17.41
TARGET_BRACKET = 0.00024867
DEFAULT_ETA = 1e-6
DEFAULT_EPSILON = 1e-9
DEFAULT_SEED = 0x5EED


def xi_of_gamma(gamma, eta=0.0):
    """
    Niveau de distribution ξ(γ) = (140γ - 99)/270 - η

    Args:
        gamma (float): Exposant γ
        eta (float): Décalage η (par défaut: 0)

    Returns:
        float: ξ
    """
    return (140.0 * gamma - 99.0) / 270.0 - eta


@dataclass(frozen=True)
class GammaParams:
    """
    Jeu complet de paramètres dérivés de γ

    Attributes:
        gamma (float): Exposant γ ∈ (99/140, 1)
        eta (float): Petite marge η > 0
        epsilon (float): Petite marge ε > 0
        xi (float): Niveau de distribution ξ
        u (float): 1/ξ + ε
        lambda_w (float|None): (9 - u - ε)^{-1}, None en mode exploration si non défini
        z_exp (float): Exposant de la coupure du crible, 1/17.41
    """

    gamma: float
    eta: float
    epsilon: float
    xi: float
    u: float
    lambda_w: Optional[float]
    z_exp: float = 1.0 / SIEVE_CUTOFF_INV

    @property
    def z_inv(self):
        """Inverse de l'exposant de coupure (17.41)"""
        return 1.0 / self.z_exp

    @property
    def sieve_level(self):
        """Argument s = 17.41·ξ des fonctions du crible"""
        return self.z_inv * self.xi


def make_params(gamma, eta=DEFAULT_ETA, epsilon=DEFAULT_EPSILON,
                z_exp=1.0 / SIEVE_CUTOFF_INV, strict_weight=True):
    """
    Construit un GammaParams en validant le domaine

    Args:
        gamma (float): Exposant γ ∈ (99/140, 1)
        eta (float): η ∈ (0, 1e-3]
        epsilon (float): ε ∈ (0, 1e-3]
        z_exp (float): Exposant de coupure du crible
        strict_weight (bool): Lever une erreur si 9 - u - ε ≤ 0

    Returns:
        GammaParams: Paramètres dérivés
    """
    if not GAMMA_MIN < gamma < 1.0:
        raise ParameterError(f"γ={gamma} hors de (99/140, 1)")
    for name, value in (("eta", eta), ("epsilon", epsilon)):
        if not 0.0 < value <= 1e-3:
            raise ParameterError(f"{name}={value} hors de (0, 1e-3]")
    xi = xi_of_gamma(gamma, eta)
    if xi <= 0.0:
        raise ParameterError(f"ξ={xi} non positif pour γ={gamma}")
    if xi > gamma * (1.0 - eta) / 2.0:
        raise ParameterError(f"ξ={xi} dépasse γ(1-η)/2")
    u = 1.0 / xi + epsilon
    denominator = 9.0 - u - epsilon
    if denominator > 0.0:
        lambda_w = 1.0 / denominator
    elif strict_weight:
        raise ParameterError(
            f"weight denominator nonpositive: 9 - u - ε = {denominator:.6g} pour γ={gamma}"
        )
    else:
        logger.warning(f"Poids non défini pour γ={gamma} (9 - u - ε = {denominator:.6g})")
        lambda_w = None
    return GammaParams(gamma, eta, epsilon, xi, u, lambda_w, z_exp)


@dataclass(frozen=True)
class BalogFriedlanderWindow:
    """Bornes 𝔞, 𝔟, 𝔠 de la décomposition en sommes de type I et II"""

    a_frak: float
    b_frak: float
    c_frak: float


def balog_friedlander_window(p):
    """
    Calcule 𝔞, 𝔟, 𝔠 pour un jeu de paramètres

    Args:
        p (GammaParams): Paramètres

    Returns:
        BalogFriedlanderWindow: Fenêtre
    """
    g, xi, eta = p.gamma, p.xi, p.eta
    return BalogFriedlanderWindow(
        a_frak=2.0 - (3.0 * xi + 1.0) / g - eta,
        b_frak=(11.0 + 60.0 * xi - 11.0 * g) / (14.0 * g) + eta,
        c_frak=(11.0 + 60.0 * xi + 30.0 * g) / (55.0 * g) - eta,
    )


def bf_degeneracy(gamma):
    """
    Écart |(1-𝔞) - 𝔠/2| calculé avec η = 0 (identiquement nul)

    Args:
        gamma (float): Exposant γ

    Returns:
        float: Écart absolu
    """
    xi = xi_of_gamma(gamma)
    one_minus_a = (3.0 * xi + 1.0) / gamma - 1.0
    half_c = (11.0 + 60.0 * xi + 30.0 * gamma) / (110.0 * gamma)
    return abs(one_minus_a - half_c)


@dataclass(frozen=True)
class Constraint:
    """
    Inégalité lhs < rhs (ou ≤ si non stricte) avec marge signée

    Attributes:
        name (str): Nom de la contrainte
        lhs (float): Membre de gauche
        rhs (float): Membre de droite
        eq (str): Ancre de l'équation
        strict (bool): Inégalité stricte
    """

    name: str
    lhs: float
    rhs: float
    eq: str
    strict: bool = True

    @property
    def slack(self):
        return self.rhs - self.lhs

    @property
    def passed(self):
        return self.slack > 0 if self.strict else self.slack >= 0

    def to_dict(self):
        return {
            "name": self.name,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "slack": self.slack,
            "passed": self.passed,
            "eq": self.eq,
        }


@dataclass(frozen=True)
class ConstraintReport:
    """Résultat de check_admissible pour un γ donné"""

    gamma: float
    eta: float
    constraints: tuple

    @property
    def passed(self):
        return all(c.passed for c in self.constraints)

    def failures(self):
        return [c for c in self.constraints if not c.passed]

    def get(self, name):
        for c in self.constraints:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self):
        return {
            "gamma": self.gamma,
            "eta": self.eta,
            "passed": self.passed,
            "constraints": [c.to_dict() for c in self.constraints],
        }


def check_admissible(p):
    """
    Évalue toutes les inégalités d'admissibilité

    Args:
        p (GammaParams): Paramètres

    Returns:
        ConstraintReport: Marges signées de chaque contrainte
    """
    g, xi, eta = p.gamma, p.xi, p.eta
    w = balog_friedlander_window(p)
    level = p.sieve_level
    constraints = (
        Constraint("gamma > 1/2 + 3xi/2", 0.5 + 1.5 * xi, g, "suffi-condi-1"),
        Constraint("gamma > 1/2 + xi", 0.5 + xi, g, "suffi-condi-2"),
        Constraint("gamma > 2xi", 2.0 * xi, g, "suffi-condi-2"),
        Constraint("gamma > 11/25 + 12xi/5 + eta", 11 / 25 + 12 * xi / 5 + eta, g, "Type-II-condi"),
        Constraint("gamma > (5xi + 6)/7", (5.0 * xi + 6.0) / 7.0, g, "S_0-upp-condition"),
        Constraint("gamma > 225/238", 225 / 238, g, "S_0-upp-condition"),
        Constraint("17.41xi > 2", 2.0, level, "level-def"),
        Constraint("17.41xi < 4", level, 4.0, "level-def"),
        Constraint("xi <= gamma(1 - eta)/2", xi, g * (1.0 - eta) / 2.0, "level-def", strict=False),
        Constraint("9 - u - epsilon > 0", 0.0, 9.0 - p.u - p.epsilon, "weight"),
        Constraint("b < 2/3", w.b_frak, 2.0 / 3.0, "exponen-fenjie"),
        Constraint("1 - c < c - b", 1.0 - w.c_frak, w.c_frak - w.b_frak, "exponen-fenjie"),
        Constraint("1 - a < c/2", 1.0 - w.a_frak, w.c_frak / 2.0, "exponen-fenjie"),
    )
    report = ConstraintReport(g, eta, constraints)
    for c in report.failures():
        logger.debug(f"γ={g}: contrainte '{c.name}' violée (marge {c.slack:.3g})")
    return report


@dataclass(frozen=True)
class BudgetTerm:
    """
    Exposant affine c0 + c_mu·μ de X, μ = log_X M

    Attributes:
        label (str): Libellé du terme
        c0 (float): Coefficient constant
        c_mu (float): Coefficient de μ
        mu_range (tuple): Intervalle fermé (μ_min, μ_max)
    """

    label: str
    c0: float
    c_mu: float
    mu_range: tuple

    def value(self, mu):
        return self.c0 + self.c_mu * mu

    def endpoint_values(self):
        lo, hi = self.mu_range
        return self.value(lo), self.value(hi)

    def max_value(self):
        """Maximum sur l'intervalle, atteint à une extrémité (terme affine)"""
        return max(self.endpoint_values())

    def argmax(self):
        lo, hi = self.mu_range
        return lo if self.value(lo) >= self.value(hi) else hi


@dataclass(frozen=True)
class BudgetReport:
    """
    Bilan d'un budget d'exposants

    Attributes:
        name (str): typeII, typeI ou S0
        terms (tuple): Termes BudgetTerm
        bound (float): Exposant à ne pas atteindre (2 ou 1)
        t_exponents (dict): Exposant de T aux extrémités de la fenêtre
        extra (dict): Contrôles annexes propres au budget
        eq (str): Ancre de l'équation
    """

    name: str
    terms: tuple
    bound: float
    t_exponents: dict
    extra: dict
    eq: str

    @property
    def mu_range(self):
        return self.terms[0].mu_range

    @property
    def delta(self):
        return self.bound - max(t.max_value() for t in self.terms)

    @property
    def violations(self):
        out = []
        for t in self.terms:
            for mu, v in zip(t.mu_range, t.endpoint_values()):
                if v >= self.bound:
                    out.append({"term": t.label, "mu": mu, "value": v})
        return out

    @property
    def t_feasible(self):
        return all(v > 0 for v in self.t_exponents.values())

    @property
    def passed(self):
        extra_ok = all(v > 0 for v in self.extra.values())
        lo, hi = self.mu_range
        return self.delta > 0 and lo <= hi and self.t_feasible and extra_ok

    def evaluate_at(self, mu):
        """
        Évalue tous les termes en un μ arbitraire

        Args:
            mu (float): Valeur de μ, éventuellement hors fenêtre

        Returns:
            list: Dictionnaires {term, mu, value, violated}
        """
        return [
            {"term": t.label, "mu": mu, "value": t.value(mu), "violated": t.value(mu) >= self.bound}
            for t in self.terms
        ]

    def to_dict(self):
        return {
            "name": self.name,
            "bound": self.bound,
            "mu_range": list(self.mu_range),
            "delta": self.delta,
            "passed": self.passed,
            "terms": [
                {"label": t.label, "c0": t.c0, "c_mu": t.c_mu,
                 "endpoint_values": list(t.endpoint_values())}
                for t in self.terms
            ],
            "violations": self.violations,
            "t_exponents": self.t_exponents,
            "t_feasible": self.t_feasible,
            "extra": self.extra,
            "eq": self.eq,
        }


# Monômes de |Σ_II|² après insertion de T: (libellé, X^{(aγ+b)/(41γ)}, M^c, J^j, D^k)
_TYPE_II_MONOMIALS = (
    ("X^{2-1/γ}TJD", (112, -30), Fraction(-55, 41), Fraction(1), Fraction(101, 41)),
    ("XMTJD^{-1}", (71, 11), Fraction(-14, 41), Fraction(1), Fraction(19, 41)),
    ("J^{71/30}D^{-1111/1230}", (71, 11), Fraction(-14, 41), Fraction(71, 30),
     Fraction(-1111, 1230)),
    ("XM^{1/2}", (60, 22), Fraction(-28, 41), Fraction(41, 30), Fraction(-541, 1230)),
)


def exponent_budget_typeII(p):
    """
    Budget de |Σ_II|² après le choix de T, J et D pris à X^{ξ/γ}

    Chaque terme est un monôme X^{(aγ+b)/(41γ)} M^c J^j D^k. Avec J = D = X^{ξ/γ}
    l'exposant de X devient (aγ + b + 41(j+k)ξ)/(41γ). Le troisième monôme a
    j + k = 71/30 - 1111/1230 = 60/41, comme le deuxième (1 + 19/41): les deux
    termes coïncident.

    Le facteur X^η des variables J, D est absorbé par la marge η de la fenêtre.

    Args:
        p (GammaParams): Paramètres

    Returns:
        BudgetReport: Quatre termes affines en μ ∈ [𝔟, 𝔠]
    """
    g, xi = p.gamma, p.xi
    w = balog_friedlander_window(p)
    mu_range = (w.b_frak, w.c_frak)
    terms = tuple(
        BudgetTerm(label, (a * g + b + 41 * float(j + k) * xi) / (41 * g), float(c), mu_range)
        for label, (a, b), c, j, k in _TYPE_II_MONOMIALS
    )

    def t_exp(mu):
        return (30 * g + 11) / (41 * g) - 55 * mu / 41 + 60 * xi / (41 * g)

    return BudgetReport(
        name="typeII",
        terms=terms,
        bound=2.0,
        t_exponents={"mu_min": t_exp(mu_range[0]), "mu_max": t_exp(mu_range[1])},
        extra={"window_nonempty": mu_range[1] - mu_range[0]},
        eq="Sigma-2-fi-1",
    )


def exponent_budget_typeI(p):
    """
    Budget des sommes de type I: (3ξ+1)/(4γ) + 1/2 + μ/4 < 1 pour μ ∈ [0, 𝔞]

    Args:
        p (GammaParams): Paramètres

    Returns:
        BudgetReport: Terme unique, borne 1
    """
    g, xi = p.gamma, p.xi
    a_frak = balog_friedlander_window(p).a_frak
    mu_range = (0.0, a_frak)
    terms = (BudgetTerm("X^{(3ξ+1)/(4γ)+1/2}M^{1/4}", (3 * xi + 1) / (4 * g) + 0.5, 0.25, mu_range),)
    return BudgetReport(
        name="typeI",
        terms=terms,
        bound=1.0,
        # pas de paramètre T ici: on exige seulement une fenêtre non vide
        t_exponents={"mu_max": a_frak},
        extra={"(1-xi)/gamma - a": (1 - xi) / g - a_frak},
        eq="Type-I-es",
    )


def exponent_budget_S0(p):
    """
    Budget de 𝔖₀ sur la fenêtre [5-5γ+4ξ+η, (γ+ξ+2)/4 - η]

    Args:
        p (GammaParams): Paramètres

    Returns:
        BudgetReport: Trois termes affines, borne 2
    """
    g, xi, eta = p.gamma, p.xi, p.eta
    mu_range = (5 - 5 * g + 4 * xi + eta, (g + xi + 2) / 4 - eta)
    terms = (
        BudgetTerm("X^{(14-8γ+10ξ)/3}M^{-4/3}", (14 - 8 * g + 10 * xi) / 3, -4 / 3, mu_range),
        BudgetTerm("X^{(11-5γ+4ξ)/3}M^{-1/3}", (11 - 5 * g + 4 * xi) / 3, -1 / 3, mu_range),
        BudgetTerm("X^{(10-4γ+2ξ)/3}M^{-2/3}", (10 - 4 * g + 2 * xi) / 3, -2 / 3, mu_range),
    )

    def t_exp(mu):
        # J ≥ 1 minimal, D = X^ξ
        return (g + 2) / 3 - 4 * mu / 3 + xi / 3

    return BudgetReport(
        name="S0",
        terms=terms,
        bound=2.0,
        t_exponents={"mu_min": t_exp(mu_range[0]), "mu_max": t_exp(mu_range[1])},
        extra={"gamma - (5xi+6)/7": g - (5 * xi + 6) / 7},
        eq="S_0-upper-2",
    )


def v_ratio(p):
    """Rapport V(x^{γ/2})/V(x^{1/17.41}) au premier ordre: 2/(17.41γ)"""
    return 2.0 * p.z_exp / p.gamma


def upper_sieve_factor(p):
    """Facteur F(17.41ξ) de la majoration du crible supérieur"""
    return eval_F(p.sieve_level)


def weight_denominator(p):
    """9 - u - ε"""
    return 9.0 - p.u - p.epsilon


def f_argument_margin(p):
    """
    Marges de l'argument s = 17.41ξ de f

    Returns:
        dict: {"above_2": s - 2, "below_3": 3 - s}
    """
    s = p.sieve_level
    return {"above_2": s - 2.0, "below_3": 3.0 - s}


def partition_gap(w, eta):
    """
    Écart β₀ - α₀ - η - 2(1 - β₀)/3, qui doit rester strictement positif

    Args:
        w: Fenêtre munie des attributs alpha0 et beta0
        eta (float): η

    Returns:
        float: Écart
    """
    return w.beta0 - w.alpha0 - eta - 2.0 * (1.0 - w.beta0) / 3.0


def _integral_1d_closed(u, xi, z_inv):
    with mpmath.workdps(40):
        u_, xi_, z_ = mpmath.mpf(u), mpmath.mpf(xi), mpmath.mpf(z_inv)
        excess = u_ * xi_ - 1
        value = u_ * mpmath.log(z_ / u_) + ((1 - u_ * xi_) / xi_) * mpmath.log((z_ * xi_ - 1) / excess)
        return float(value), float(excess / xi_)


def integral_1d_pair(p):
    """
    Calcule ∫_u^{17.41} (t-u)/(t(ξt-1)) dt par quadrature adaptative et par forme close

    Args:
        p (GammaParams): Paramètres

    Returns:
        tuple: (valeur par quadrature, valeur par forme close)
    """
    z_inv, u, xi = p.z_inv, p.u, p.xi
    if u == z_inv:
        return 0.0, 0.0
    if u > z_inv:
        raise DomainError(f"u={u} dépasse 17.41")
    if u * xi <= 1.0:
        raise DomainError(f"uξ={u * xi} ≤ 1: pôle dans l'intervalle d'intégration")
    closed, shift = _integral_1d_closed(u, xi, z_inv)

    # d = t - u, ξt - 1 = ξ(d + shift)
    def integrand(d):
        return d / ((u + d) * xi * (d + shift))

    length = z_inv - u
    cuts = [0.0]
    k = 1
    while shift * 10**k < length:
        cuts.append(shift * 10**k)
        k += 2
    cuts.append(length)
    pieces = []
    for left, right in zip(cuts[:-1], cuts[1:]):
        value, _ = quad(integrand, left, right, epsabs=1e-15, epsrel=1e-13, limit=200)
        pieces.append(value)
    return math.fsum(pieces), closed


def integral_1d(p, tol=1e-10):
    """
    ∫_u^{17.41} (t-u)/(t(ξt-1)) dt, quadrature contrôlée par la forme close

    Args:
        p (GammaParams): Paramètres
        tol (float): Écart maximal toléré entre les deux calculs

    Returns:
        float: Valeur de l'intégrale (forme close)
    """
    quad_value, closed = integral_1d_pair(p)
    if abs(quad_value - closed) > tol:
        raise NumericError(
            f"intégrale 1D: quadrature {quad_value!r} et forme close {closed!r} divergent"
        )
    return closed


@dataclass(frozen=True)
class IntegralResult:
    """
    Valeur de l'intégrale 7D avec estimation d'erreur

    Attributes:
        value (float): Estimation
        error (float): Écart de doublement (Gauss) ou erreur standard (Monte Carlo)
        method (str): tensor_gauss ou monte_carlo
        nodes (int|None): Nombre de nœuds par dimension retenu
        samples (int|None): Nombre de tirages
        seed (int|None): Graine du générateur
        history (tuple): Valeurs successives du doublement
    """

    value: float
    error: float
    method: str
    nodes: Optional[int] = None
    samples: Optional[int] = None
    seed: Optional[int] = None
    history: tuple = field(default_factory=tuple)

    def to_dict(self):
        return {
            "value": self.value,
            "error": self.error,
            "method": self.method,
            "nodes": self.nodes,
            "samples": self.samples,
            "seed": self.seed,
            "history": list(self.history),
        }


def _inner_t7(t6, s6):
    # ∫_{t6}^{c/2} dt / (t(c - t)) = log((c - t6)/t6)/c, c = 1 - s6
    c = 1.0 - s6
    ratio = np.maximum((c - t6) / t6, 1.0)
    return np.log(ratio) / c


def _gauss_level(t1_range, n):
    x, w = np.polynomial.legendre.leggauss(n)
    unit = (x + 1.0) / 2.0
    half_w = w / 2.0
    lo1, hi1 = t1_range
    t1s = lo1 + (hi1 - lo1) * unit
    w1s = half_w * (hi1 - lo1) / t1s
    partial = []
    for t1, w1 in zip(t1s, w1s):
        lo2, hi2 = t1, max((1.0 - t1) / 7.0, t1)
        t2s = lo2 + (hi2 - lo2) * unit
        w2s = w1 * half_w * (hi2 - lo2) / t2s
        for t2, w2 in zip(t2s, w2s):
            t = np.array([t2])
            s = np.array([t1 + t2])
            weight = np.array([w2])
            # dimensions 3 à 6 vectorisées
            for k in range(3, 7):
                lo = t[..., None]
                hi = np.maximum((1.0 - s[..., None]) / (9 - k), lo)
                t = lo + (hi - lo) * unit
                weight = weight[..., None] * half_w * (hi - lo) / t
                s = s[..., None] + t
            partial.append(float(np.sum(weight * _inner_t7(t, s))))
    return math.fsum(partial)


def _tensor_gauss(t1_range, start_nodes, max_nodes, tol):
    n = start_nodes
    history = [_gauss_level(t1_range, n)]
    logger.debug(f"I7 Gauss-Legendre n={n}: {history[-1]!r}")
    while n * 2 <= max_nodes:
        n *= 2
        history.append(_gauss_level(t1_range, n))
        delta = abs(history[-1] - history[-2])
        logger.debug(f"I7 Gauss-Legendre n={n}: {history[-1]!r} (écart {delta:.3g})")
        if delta < tol:
            return IntegralResult(history[-1], delta, "tensor_gauss", nodes=n, history=tuple(history))
    raise NumericError(
        f"I7: pas de convergence à {tol} avec {max_nodes} nœuds (valeurs {history})"
    )


def _monte_carlo(t1_range, samples, seed, chunk):
    rng = np.random.default_rng(seed)
    lo1, hi1 = t1_range
    total = 0.0
    total_sq = 0.0
    drawn = 0
    while drawn < samples:
        size = min(chunk, samples - drawn)
        t = lo1 + (hi1 - lo1) * rng.random(size)
        weight = (hi1 - lo1) / t
        s = t.copy()
        for k in range(2, 7):
            lo = t
            hi = np.maximum((1.0 - s) / (9 - k), lo)
            t = lo + (hi - lo) * rng.random(size)
            weight = weight * (hi - lo) / t
            s = s + t
        values = weight * _inner_t7(t, s)
        total += float(np.sum(values))
        total_sq += float(np.sum(values * values))
        drawn += size
    mean = total / samples
    variance = max(total_sq / samples - mean * mean, 0.0) * samples / max(samples - 1, 1)
    return IntegralResult(mean, math.sqrt(variance / samples), "monte_carlo",
                          samples=samples, seed=seed)


@functools.lru_cache(maxsize=32)
def _integral_7fold_cached(t1_range, method, start_nodes, max_nodes, tol, samples, seed, chunk):
    if t1_range[1] <= t1_range[0]:
        return IntegralResult(0.0, 0.0, method)
    if method == "tensor_gauss":
        return _tensor_gauss(t1_range, start_nodes, max_nodes, tol)
    if method == "monte_carlo":
        return _monte_carlo(t1_range, samples, seed, chunk)
    raise DomainError(f"méthode inconnue: {method}")


def integral_7fold(p, method="tensor_gauss", t1_range=None, start_nodes=8, max_nodes=32,
                   tol=1e-7, samples=10**7, seed=DEFAULT_SEED, chunk=10**6):
    """
    Intégrale 7D du terme Ω = 8, la variable t7 étant intégrée en forme close

    L'intégrale ne dépend que de l'exposant de coupure, pas de γ.

    Args:
        p (GammaParams): Paramètres (seul z_exp est utilisé)
        method (str): tensor_gauss ou monte_carlo
        t1_range (tuple, optional): Intervalle de t1 (par défaut [1/17.41, 1/8])
        start_nodes (int): Nœuds initiaux par dimension (Gauss)
        max_nodes (int): Nœuds maximaux par dimension (Gauss)
        tol (float): Écart de doublement visé (Gauss)
        samples (int): Nombre de tirages (Monte Carlo)
        seed (int): Graine (Monte Carlo)
        chunk (int): Taille des paquets de tirages (Monte Carlo)

    Returns:
        IntegralResult: Valeur et estimation d'erreur
    """
    if t1_range is None:
        t1_range = (p.z_exp, 1.0 / 8.0)
    return _integral_7fold_cached(tuple(float(v) for v in t1_range), method,
                                  start_nodes, max_nodes, tol, samples, seed, chunk)


def bracket_terms(p, i1, i7):
    """
    Termes du crochet final

    Args:
        p (GammaParams): Paramètres (λ_w défini)
        i1 (float): Intégrale 1D
        i7 (float): Intégrale 7D

    Returns:
        dict: first, weight_term, omega8_term, bracket
    """
    if p.lambda_w is None:
        raise ParameterError("λ_w non défini: crochet indisponible")
    first = math.log(p.sieve_level - 1.0) / p.xi
    weight_term = p.lambda_w * i1
    omega8_term = p.lambda_w * p.gamma / p.xi * i7
    return {
        "first": first,
        "weight_term": weight_term,
        "omega8_term": omega8_term,
        "bracket": first - weight_term - omega8_term,
    }


def lower_bound_bracket(p, method="tensor_gauss", **kwargs):
    """
    Crochet B(γ) = log(17.41ξ-1)/ξ - λ·I1 - (λγ/ξ)·I7

    Args:
        p (GammaParams): Paramètres admissibles
        method (str): Méthode de l'intégrale 7D
        **kwargs: Options transmises à integral_7fold

    Returns:
        float: Valeur du crochet
    """
    report = check_admissible(p)
    if not report.passed:
        names = ", ".join(c.name for c in report.failures())
        logger.warning(f"γ={p.gamma}: paramètres non admissibles ({names})")
    i1 = integral_1d(p)
    i7 = integral_7fold(p, method=method, **kwargs).value
    return bracket_terms(p, i1, i7)["bracket"]


def bracket_report(p, method="tensor_gauss", **kwargs):
    """
    Rapport complet du crochet final avec toutes les grandeurs intermédiaires

    Args:
        p (GammaParams): Paramètres
        method (str): Méthode de l'intégrale 7D
        **kwargs: Options transmises à integral_7fold

    Returns:
        dict: Rapport sérialisable en JSON
    """
    admissible = check_admissible(p)
    i1_quad, i1_closed = integral_1d_pair(p)
    if abs(i1_quad - i1_closed) > 1e-10:
        raise NumericError(f"intégrale 1D: écart {abs(i1_quad - i1_closed):.3g}")
    i7 = integral_7fold(p, method=method, **kwargs)
    terms = bracket_terms(p, i1_closed, i7.value)
    return {
        "gamma": p.gamma,
        "eta": p.eta,
        "epsilon": p.epsilon,
        "xi": p.xi,
        "u": p.u,
        "lambda": p.lambda_w,
        "I1": i1_closed,
        "I1_quadrature": i1_quad,
        "I1_over_17.41": i1_closed * p.z_exp,
        "I7": i7.value,
        "I7_error": i7.error,
        "I7_method": i7.method,
        "I7_detail": i7.to_dict(),
        "first_term": terms["first"],
        "weight_term": terms["weight_term"],
        "omega8_term": terms["omega8_term"],
        "bracket": terms["bracket"],
        "target": TARGET_BRACKET,
        "meets_target": terms["bracket"] >= TARGET_BRACKET,
        "f_argument_margin": f_argument_margin(p),
        "constraints": [
            {"name": c.name, "slack": c.slack, "passed": c.passed}
            for c in admissible.constraints
        ],
        "admissible": admissible.passed,
        "eq": "level-def",
    }


def bracket_eta_profile(gamma, etas, epsilon=DEFAULT_EPSILON, method="tensor_gauss", **kwargs):
    """
    B(γ) en fonction de η, pour observer la stabilité du crochet

    Args:
        gamma (float): Exposant γ
        etas (iterable): Valeurs de η
        epsilon (float): ε
        method (str): Méthode de l'intégrale 7D

    Returns:
        list: Couples (η, B)
    """
    profile = []
    for eta in etas:
        p = make_params(gamma, eta, epsilon)
        profile.append((eta, lower_bound_bracket(p, method=method, **kwargs)))
    return profile
