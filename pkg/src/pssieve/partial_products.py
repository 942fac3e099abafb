"""
Module de certification des produits partiels

Recherche exhaustive sur une grille du simplexe ordonné: toute famille de huit
exposants (t₁ ≤ ⋯ ≤ t₈, tᵢ ≥ 1/17.41, Σtᵢ ∈ [1 - η_s, 1]) possède une
sous-somme propre dans la fenêtre [α₀, β₀].
"""

import itertools
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from pssieve.exceptions import CertificationError, DomainError
from pssieve.params import SIEVE_CUTOFF_INV, partition_gap, xi_of_gamma

# Configuration du logger
logger = logging.getLogger("pssieve")

N_EXPONENTS = 8
T_MIN = 1.0 / SIEVE_CUTOFF_INV
DEFAULT_STEP = 5e-3
DEFAULT_ETA_S = 0.01
CHUNK_ROWS = 20000

__all__ = [
    "WindowConstants",
    "SimplexPoint",
    "canonical_subsets",
    "subset_hit",
    "subset_sum_table",
    "exhaustive_certify",
    "window_inside_analytic",
    "partition_gap",
]


@dataclass(frozen=True)
class WindowConstants:
    """Fenêtre [α₀, β₀] des produits partiels"""

    alpha0: float = 0.6395925926
    beta0: float = 0.78378703702

    def __post_init__(self):
        if not 0.0 < self.alpha0 < self.beta0 < 1.0:
            raise DomainError(f"fenêtre invalide [{self.alpha0}, {self.beta0}]")


@dataclass(frozen=True)
class SimplexPoint:
    """
    Huit exposants t₁ ≤ ⋯ ≤ t₈

    La validation est explicite (validate) pour permettre l'audit de points
    hors simplexe.
    """

    t: tuple

    def __post_init__(self):
        object.__setattr__(self, "t", tuple(float(v) for v in self.t))
        if len(self.t) != N_EXPONENTS:
            raise DomainError(f"{len(self.t)} exposants au lieu de {N_EXPONENTS}")

    def validate(self, eta_s=DEFAULT_ETA_S, tol=1e-12):
        """
        Vérifie l'ordre, la borne inférieure et la contrainte de somme

        Args:
            eta_s (float): Marge η_s sur la somme
            tol (float): Tolérance d'arrondi

        Returns:
            SimplexPoint: Le point lui-même
        """
        t = self.t
        if any(b < a - tol for a, b in zip(t, t[1:])):
            raise DomainError(f"exposants non ordonnés: {t}")
        if t[0] < T_MIN - tol:
            raise DomainError(f"t₁={t[0]} < 1/{SIEVE_CUTOFF_INV}")
        total = math.fsum(t)
        if not 1.0 - eta_s - tol <= total <= 1.0 + tol:
            raise DomainError(f"Σt={total} hors de [{1.0 - eta_s}, 1]")
        return self


def canonical_subsets():
    """
    Les 254 sous-ensembles propres non vides de {0..7}

    Returns:
        list: Tuples d'indices, triés par cardinal puis lexicographiquement
    """
    return [
        combo
        for size in range(1, N_EXPONENTS)
        for combo in itertools.combinations(range(N_EXPONENTS), size)
    ]


_SUBSETS = canonical_subsets()
_MASKS = np.zeros((len(_SUBSETS), N_EXPONENTS))
for _row, _combo in enumerate(_SUBSETS):
    _MASKS[_row, list(_combo)] = 1.0


def _as_array(pt):
    t = pt.t if isinstance(pt, SimplexPoint) else tuple(pt)
    return np.asarray(t, dtype=float)


def subset_sum_table(pt):
    """
    Table (sous-ensemble, somme) pour l'audit humain

    Returns:
        list: Couples (indices, Σ_{i∈S} tᵢ) dans l'ordre canonique
    """
    sums = _MASKS @ _as_array(pt)
    return [(combo, float(s)) for combo, s in zip(_SUBSETS, sums)]


def subset_hit(pt, w=WindowConstants()):
    """
    Cherche une sous-somme propre dans [α₀, β₀]

    Args:
        pt (SimplexPoint|sequence): Huit exposants
        w (WindowConstants): Fenêtre

    Returns:
        tuple: (touché, premier témoin dans l'ordre canonique ou None)
    """
    sums = _MASKS @ _as_array(pt)
    inside = np.flatnonzero((sums >= w.alpha0) & (sums <= w.beta0))
    if inside.size == 0:
        return False, None
    return True, _SUBSETS[int(inside[0])]


def _grid_bounds(step, eta_s):
    spare = 1.0 - N_EXPONENTS * T_MIN
    kmax = int(math.floor(spare / step + 1e-9))
    kmin = int(math.ceil((spare - eta_s) / step - 1e-9))
    return max(kmin, 0), kmax


def _extend(prefix, total, slots, kmax, lo=None):
    # ajoute une coordonnée v ≥ dernière, en laissant la place à slots - 1 coordonnées ≥ v
    last = prefix[:, -1]
    start = last if lo is None else np.maximum(last, lo - total)
    stop = (kmax - total) // slots
    reps = np.maximum(stop - start + 1, 0)
    rows = np.repeat(np.arange(prefix.shape[0]), reps)
    offsets = np.arange(int(reps.sum())) - np.repeat(np.cumsum(reps) - reps, reps)
    values = start[rows] + offsets
    return np.column_stack([prefix[rows], values]), total[rows] + values


@dataclass
class _ShardResult:
    grid_points: int = 0
    boundary_points: int = 0
    counterexample_count: int = 0
    counterexamples: list = field(default_factory=list)
    min_margin: float = math.inf
    argmin: tuple = ()


def _scan(t, w, out, max_examples):
    for lo in range(0, t.shape[0], CHUNK_ROWS):
        block = t[lo: lo + CHUNK_ROWS]
        sums = block @ _MASKS.T
        margin = np.minimum(sums - w.alpha0, w.beta0 - sums).max(axis=1)
        worst = int(np.argmin(margin))
        if margin[worst] < out.min_margin:
            out.min_margin = float(margin[worst])
            out.argmin = tuple(float(v) for v in block[worst])
        failed = np.flatnonzero(margin < 0.0)
        out.counterexample_count += int(failed.size)
        room = max_examples - len(out.counterexamples)
        for i in failed[:room]:
            out.counterexamples.append(tuple(float(v) for v in block[i]))


def _certify_shard(args):
    """Certifie tous les points de préfixe (k₁, k₂)"""
    k1, k2, step, eta_s, w, max_examples = args
    kmin, kmax = _grid_bounds(step, eta_s)
    out = _ShardResult()
    prefix = np.array([[k1, k2]], dtype=np.int64)
    total = np.array([k1 + k2], dtype=np.int64)
    for slots in range(N_EXPONENTS - 2, 1, -1):
        prefix, total = _extend(prefix, total, slots, kmax)
        if prefix.shape[0] == 0:
            return out

    # points de grille: dernière coordonnée sur la grille, Σk ∈ [kmin, kmax]
    grid, _ = _extend(prefix, total, 1, kmax, lo=kmin)
    t_grid = T_MIN + step * grid
    out.grid_points = int(grid.shape[0])
    _scan(t_grid, w, out, max_examples)

    # points du bord Σt = 1: t₈ = 1 - (t₁ + ⋯ + t₇) ≥ t₇
    t7 = T_MIN + step * prefix.astype(float)
    last = 1.0 - t7.sum(axis=1)
    keep = last >= t7[:, -1] - 1e-12
    t_edge = np.column_stack([t7[keep], last[keep]])
    out.boundary_points = int(t_edge.shape[0])
    _scan(t_edge, w, out, max_examples)
    return out


@dataclass(frozen=True)
class CertReport:
    """
    Rapport de la recherche exhaustive

    Attributes:
        step (float): Pas de la grille
        eta_s (float): Marge sur la somme
        window (WindowConstants): Fenêtre
        grid_points (int): Points de grille (Σt ∈ [1 - η_s, 1])
        boundary_points (int): Points du bord Σt = 1
        counterexample_count (int): Nombre total de contre-exemples
        counterexamples (list): Premiers contre-exemples
        min_margin (float): min sur les points du max sur S de la distance à la fenêtre
        argmin (tuple): Point réalisant min_margin
        partition_gap (float): β₀ - α₀ - 2(1 - β₀)/3, à comparer à η
    """

    step: float
    eta_s: float
    window: WindowConstants
    grid_points: int
    boundary_points: int
    counterexample_count: int
    counterexamples: list
    min_margin: float
    argmin: tuple
    partition_gap: float

    @property
    def points_checked(self):
        return self.grid_points + self.boundary_points

    @property
    def passed(self):
        return self.counterexample_count == 0

    def to_dict(self):
        return {
            "step": self.step,
            "eta_s": self.eta_s,
            "alpha0": self.window.alpha0,
            "beta0": self.window.beta0,
            "points_checked": self.points_checked,
            "grid_points": self.grid_points,
            "boundary_points": self.boundary_points,
            "counterexamples": self.counterexample_count,
            "counterexample_points": [
                {"t": list(t), "subset_sums": [s for _, s in subset_sum_table(t)]}
                for t in self.counterexamples
            ],
            "min_margin": self.min_margin,
            "argmin": list(self.argmin),
            "partition_gap": self.partition_gap,
            "eq": "omega=8-error",
        }


def _shards(step, eta_s):
    _, kmax = _grid_bounds(step, eta_s)
    return [
        (k1, k2)
        for k1 in range(kmax // N_EXPONENTS + 1)
        for k2 in range(k1, (kmax - k1) // (N_EXPONENTS - 1) + 1)
    ]


def exhaustive_certify(step=DEFAULT_STEP, eta_s=DEFAULT_ETA_S, w=WindowConstants(),
                       workers=1, max_examples=100, raise_on_failure=True):
    """
    Certifie la propriété de sous-somme sur toute la grille ordonnée du simplexe

    Args:
        step (float): Pas de la grille dans [1e-3, 1e-2]
        eta_s (float): Marge η_s de la contrainte de somme
        w (WindowConstants): Fenêtre
        workers (int): Nombre de processus (1: séquentiel)
        max_examples (int): Nombre maximal de contre-exemples conservés
        raise_on_failure (bool): Lever CertificationError en cas d'échec

    Returns:
        CertReport: Rapport fusionné
    """
    if not 1e-3 <= step <= 1e-2:
        raise DomainError(f"step={step} hors de [1e-3, 1e-2]")
    if not 0.0 <= eta_s <= 0.1:
        raise DomainError(f"eta_s={eta_s} hors de [0, 0.1]")
    tasks = [(k1, k2, step, eta_s, w, max_examples) for k1, k2 in _shards(step, eta_s)]
    logger.info(f"Certification: pas {step}, η_s={eta_s}, {len(tasks)} sous-arbres")
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_certify_shard, tasks))
    else:
        results = [_certify_shard(task) for task in tasks]

    merged = _ShardResult()
    for res in results:
        merged.grid_points += res.grid_points
        merged.boundary_points += res.boundary_points
        merged.counterexample_count += res.counterexample_count
        merged.counterexamples.extend(res.counterexamples)
        if res.min_margin < merged.min_margin:
            merged.min_margin, merged.argmin = res.min_margin, res.argmin
    report = CertReport(
        step=step,
        eta_s=eta_s,
        window=w,
        grid_points=merged.grid_points,
        boundary_points=merged.boundary_points,
        counterexample_count=merged.counterexample_count,
        counterexamples=merged.counterexamples[:max_examples],
        min_margin=merged.min_margin,
        argmin=merged.argmin,
        partition_gap=partition_gap(w, 0.0),
    )
    logger.info(
        f"{report.points_checked} points vérifiés, {report.counterexample_count} "
        f"contre-exemple(s), marge minimale {report.min_margin:.3g}"
    )
    if raise_on_failure and not report.passed:
        raise CertificationError(
            f"{report.counterexample_count} point(s) sans sous-somme dans la fenêtre",
            counterexamples=report.counterexamples,
        )
    return report


@dataclass(frozen=True)
class SlackReport:
    """
    Position de [α₀, β₀] dans la fenêtre analytique [5 - 5γ + 4ξ + η, (γ + ξ + 2)/4 - η]

    Attributes:
        gamma (float): γ
        eta (float): η
        lower_bound (float): 5 - 5γ + 4ξ + η
        upper_bound (float): (γ + ξ + 2)/4 - η
        lower_slack (float): α₀ - lower_bound
        upper_slack (float): upper_bound - β₀
    """

    gamma: float
    eta: float
    lower_bound: float
    upper_bound: float
    lower_slack: float
    upper_slack: float

    @property
    def passed(self):
        return self.lower_slack >= 0.0 and self.upper_slack >= 0.0

    def to_dict(self):
        return {
            "gamma": self.gamma,
            "eta": self.eta,
            "lower_bound": self.lower_bound,
            "upper_bound": self.upper_bound,
            "lower_slack": self.lower_slack,
            "upper_slack": self.upper_slack,
            "passed": self.passed,
            "eq": "S_0-upp-condition",
        }


def window_inside_analytic(p, w=WindowConstants()):
    """
    Contrôle 5 - 5γ + 4ξ + η ≤ α₀ et β₀ ≤ (γ + ξ + 2)/4 - η

    Args:
        p (GammaParams): Paramètres, γ ∈ [0.989, 1)
        w (WindowConstants): Fenêtre

    Returns:
        SlackReport: Les deux marges (un échec est rapporté, pas levé)
    """
    g, eta = p.gamma, p.eta
    if not 0.989 <= g < 1.0:
        raise DomainError(f"γ={g} hors de [0.989, 1)")
    xi = xi_of_gamma(g, eta)
    lower = 5.0 - 5.0 * g + 4.0 * xi + eta
    upper = (g + xi + 2.0) / 4.0 - eta
    report = SlackReport(g, eta, lower, upper, w.alpha0 - lower, upper - w.beta0)
    if not report.passed:
        logger.warning(
            f"γ={g}: fenêtre hors du domaine analytique "
            f"(marges {report.lower_slack:.3g}, {report.upper_slack:.3g})"
        )
    return report
