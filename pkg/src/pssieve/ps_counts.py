"""
Module de comptage sur la suite [p^{1/γ}] à l'échelle du bureau

Ensembles 𝒜 et 𝒜_d, restes R_d, ensemble ℬ des produits de k premiers,
ℰ_d, ℛ_d, 𝒳, somme pondérée W et décompte des presque-premiers 𝒫₇.
"""

import functools
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
import numpy as np

from pssieve.arith_core import (
    DEFAULT_MAX_SEGMENTS,
    DEFAULT_SEGMENT_SIZE,
    build_sieve,
    small_primes,
)
from pssieve.exceptions import (
    ConsistencyError,
    DomainError,
    ParameterError,
    PrecisionError,
    ResourceLimitError,
)
from pssieve.params import DEFAULT_EPSILON, DEFAULT_ETA, make_params

# Configuration du logger
logger = logging.getLogger("pssieve")

MAX_EXACT_DENOMINATOR = 10**4
MAX_PRECISION = 1024
MAX_COUNT_SCALE = 10**9
MAX_B_SCALE = 10**8
DEFAULT_OMEGA_MAX = 7
B_FACTORS = 8


def exact_exponent(value):
    """
    Fraction décimale exacte de value si son dénominateur reste petit

    Args:
        value (float|Fraction): Exposant

    Returns:
        Fraction|None: 0.99 -> 99/100, None si le dénominateur dépasse 10^4
    """
    frac = value if isinstance(value, Fraction) else Fraction(repr(float(value)))
    return frac if frac.denominator <= MAX_EXACT_DENOMINATOR else None


def floor_rational_power(base, num, den):
    """
    Plus grand entier k ≥ 0 tel que k^den ≤ base^num, soit ⌊base^{num/den}⌋

    Args:
        base (int): Entier ≥ 1
        num (int): Numérateur de l'exposant
        den (int): Dénominateur de l'exposant

    Returns:
        int: Partie entière exacte
    """
    target = base**num
    k = int(float(base) ** (num / den))
    while k > 0 and k**den > target:
        k -= 1
    while (k + 1) ** den <= target:
        k += 1
    return k


def _floor_candidates(y, prec):
    # entiers candidats pour ⌊y⌋ compte tenu de l'erreur relative à prec bits
    f = int(mpmath.floor(y))
    d = y - f
    margin = abs(y) * mpmath.ldexp(1, 12 - prec) + mpmath.ldexp(1, 12 - prec)
    if d < margin:
        return [f - 1, f]
    if 1 - d < margin:
        return [f, f + 1]
    return [f]


def _mp_floor(base, exponent, max_prec=MAX_PRECISION):
    prec = 64
    while prec <= max_prec:
        with mpmath.workprec(prec):
            candidates = _floor_candidates(mpmath.power(base, exponent()), prec)
        if len(candidates) == 1:
            return candidates[0]
        prec *= 2
    raise PrecisionError(
        f"partie entière de {base}^x indécidable à {max_prec} bits (candidats {candidates})"
    )


def _check_gamma(gamma):
    if not 0.5 < float(gamma) < 1.0:
        raise DomainError(f"γ={gamma} hors de (1/2, 1)")


def floor_root_pow(p, gamma, max_prec=MAX_PRECISION):
    """
    ⌊p^{1/γ}⌋ sans arrondi silencieux

    Exposant décimal à petit dénominateur: comparaison entière exacte k^num ≤ p^den.
    Sinon: précision croissante jusqu'à ce qu'un seul entier soit candidat.

    Args:
        p (int): Entier ≥ 2
        gamma (float): Exposant γ ∈ (1/2, 1)
        max_prec (int): Précision maximale en bits

    Returns:
        int: Partie entière
    """
    if p < 2:
        raise DomainError(f"p={p} doit être ≥ 2")
    _check_gamma(gamma)
    frac = exact_exponent(gamma)
    if frac is not None:
        return floor_rational_power(int(p), frac.denominator, frac.numerator)
    return _mp_floor(int(p), lambda: 1 / mpmath.mpf(gamma), max_prec)


def floor_pow(base, gamma, max_prec=MAX_PRECISION):
    """⌊base^γ⌋ pour un entier base ≥ 1"""
    frac = exact_exponent(gamma)
    if frac is not None:
        return floor_rational_power(int(base), frac.numerator, frac.denominator)
    return _mp_floor(int(base), lambda: mpmath.mpf(gamma), max_prec)


def ceil_pow(base, gamma, max_prec=MAX_PRECISION):
    """⌈base^γ⌉ pour un entier base ≥ 1"""
    frac = exact_exponent(gamma)
    if frac is not None:
        num, den = frac.numerator, frac.denominator
        k = floor_rational_power(int(base), num, den)
        return k if k**den == int(base) ** num else k + 1
    # une puissance entière exacte lèverait PrecisionError dans _mp_floor
    return _mp_floor(int(base), lambda: mpmath.mpf(gamma), max_prec) + 1


def _ambiguous(approx, k):
    frac = approx - k
    tol = 64 * np.finfo(float).eps * np.maximum(approx, 1.0)
    return np.flatnonzero((frac < tol) | (frac > 1.0 - tol))


def floor_root_pow_array(values, gamma):
    """
    ⌊n^{1/γ}⌋ vectorisé, les entrées proches d'un entier étant recalculées exactement

    Args:
        values (array_like): Entiers ≥ 2
        gamma (float): Exposant γ

    Returns:
        numpy.ndarray: Parties entières (int64)
    """
    v = np.asarray(values, dtype=np.int64)
    approx = v.astype(float) ** (1.0 / gamma)
    k = np.floor(approx).astype(np.int64)
    for i in _ambiguous(approx, k):
        k[i] = floor_root_pow(int(v[i]), gamma)
    return k


def ceil_pow_array(values, gamma):
    """⌈n^γ⌉ vectorisé avec reprise exacte des cas ambigus"""
    v = np.asarray(values, dtype=np.int64)
    approx = v.astype(float) ** gamma
    k = np.floor(approx).astype(np.int64)
    c = k + 1
    for i in _ambiguous(approx, k):
        c[i] = ceil_pow(int(v[i]), gamma)
    return c


@dataclass
class PsInstance:
    """
    Instance de comptage à l'échelle x

    Attributes:
        x (int): Échelle globale (≥ 10³)
        gamma (float): Exposant γ
        params (GammaParams): Paramètres dérivés
        segment_size (int): Longueur des segments du crible
        max_segments (int): Nombre maximal de segments
    """

    x: int
    gamma: float
    params: object
    segment_size: int = DEFAULT_SEGMENT_SIZE
    max_segments: int = DEFAULT_MAX_SEGMENTS
    _b_cache: dict = field(default_factory=dict, repr=False, compare=False)
    _e_cache: dict = field(default_factory=dict, repr=False, compare=False)

    @functools.cached_property
    def sieve(self):
        """Crible [2, x], construit à la première demande"""
        return build_sieve(2, self.x, self.segment_size, self.max_segments)

    @functools.cached_property
    def x_gamma(self):
        """⌊x^γ⌋"""
        return floor_pow(self.x, self.gamma)

    @functools.cached_property
    def primes(self):
        """Premiers p ≤ x^γ"""
        primes = self.sieve.primes()
        return primes[primes <= self.x_gamma]

    @functools.cached_property
    def a_values(self):
        """Multiensemble des a = ⌊p^{1/γ}⌋, un par premier"""
        return floor_root_pow_array(self.primes, self.gamma)

    @property
    def pi_x_gamma(self):
        """π(x^γ)"""
        return int(self.primes.size)

    @property
    def d_max(self):
        """Plus grand module admis, ⌊x^ξ⌋"""
        return max(1, int(self.x ** self.params.xi))

    @property
    def z(self):
        """Coupure du crible x^{1/17.41}"""
        return self.x ** self.params.z_exp


def make_instance(x, gamma, eta=DEFAULT_ETA, epsilon=DEFAULT_EPSILON,
                  segment_size=DEFAULT_SEGMENT_SIZE, max_segments=DEFAULT_MAX_SEGMENTS):
    """
    Construit une instance de comptage

    Args:
        x (int|float): Échelle (entier, 1e6 accepté)
        gamma (float): Exposant γ
        eta (float): η
        epsilon (float): ε
        segment_size (int): Longueur des segments du crible
        max_segments (int): Nombre maximal de segments

    Returns:
        PsInstance: Instance (le crible est construit à la demande)
    """
    if float(x) != int(x):
        raise DomainError(f"x={x} doit être entier")
    x = int(x)
    if x < 1000:
        raise DomainError(f"x={x} doit être ≥ 10³")
    if x > MAX_COUNT_SCALE:
        raise ResourceLimitError(f"x={x} au-delà de {MAX_COUNT_SCALE}", limit=MAX_COUNT_SCALE)
    params = make_params(gamma, eta, epsilon, strict_weight=False)
    return PsInstance(x, gamma, params, segment_size, max_segments)


@dataclass(frozen=True)
class RemainderRecord:
    """
    #𝒜_d = π(x^γ)/d + R_d

    Attributes:
        d (int): Module
        card_Ad (int): Cardinal de 𝒜_d (avec multiplicité)
        main_term (float): π(x^γ)/d
        R_d (float): Reste, défini comme la différence
    """

    d: int
    card_Ad: int
    main_term: float
    R_d: float

    def to_row(self):
        return [self.d, self.card_Ad, self.main_term, self.R_d]


def _check_modulus(inst, d):
    if not 1 <= d <= inst.d_max:
        raise DomainError(f"d={d} hors de [1, x^ξ] = [1, {inst.d_max}]")


def count_A_d_by_intervals(inst, d):
    """
    #𝒜_d sans passer par les a = [p^{1/γ}]

    [p^{1/γ}] = dm équivaut à ⌈(dm)^γ⌉ ≤ p < ⌈(dm+1)^γ⌉: on compte les premiers
    de chaque intervalle dans la liste triée des p ≤ x^γ.

    Args:
        inst (PsInstance): Instance
        d (int): Module, d ≥ 1

    Returns:
        int: Nombre de premiers p ≤ x^γ avec d | [p^{1/γ}]
    """
    primes = inst.primes
    if primes.size == 0:
        return 0
    m_max = int(float(inst.x_gamma) ** (1.0 / inst.gamma)) // d + 1
    n = d * np.arange(1, m_max + 1, dtype=np.int64)
    # a ≥ 2 puisque p ≥ 2
    n = n[n >= 2]
    lo = ceil_pow_array(n, inst.gamma)
    hi = ceil_pow_array(n + 1, inst.gamma)
    counts = np.searchsorted(primes, hi, side="left") - np.searchsorted(primes, lo, side="left")
    return int(np.sum(counts))


def count_A_d(inst, d):
    """
    #𝒜_d par appartenance directe et par comptage des premiers dans les intervalles

    Args:
        inst (PsInstance): Instance
        d (int): Module, 1 ≤ d ≤ x^ξ

    Returns:
        RemainderRecord: Cardinal, terme principal et reste
    """
    _check_modulus(inst, d)
    direct = int(np.count_nonzero(inst.a_values % d == 0))
    by_intervals = count_A_d_by_intervals(inst, d)
    if direct != by_intervals:
        raise ConsistencyError(f"#𝒜_{d}: appartenance {direct} != intervalles {by_intervals}")
    main = inst.pi_x_gamma / d
    return RemainderRecord(d, direct, main, direct - main)


def remainder_table(inst, d_max=None):
    """RemainderRecord pour d = 1..d_max (par défaut ⌊x^ξ⌋)"""
    d_max = inst.d_max if d_max is None else min(d_max, inst.d_max)
    return [count_A_d(inst, d) for d in range(1, d_max + 1)]


def card_A(inst):
    """
    Cardinaux de 𝒜 en multiensemble et en ensemble

    Returns:
        dict: {"multiset": π(x^γ), "set": nombre de valeurs distinctes}
    """
    return {"multiset": inst.pi_x_gamma, "set": int(np.unique(inst.a_values).size)}


def divisor_double_count(inst, D):
    """
    Σ_{d≤D} #𝒜_d recalculé par Σ_{a∈𝒜} #{d ≤ D : d | a}

    Args:
        inst (PsInstance): Instance
        D (int): Borne des modules

    Returns:
        tuple: (somme sur d, somme sur a)
    """
    by_modulus = sum(count_A_d(inst, d).card_Ad for d in range(1, D + 1))
    values, multiplicity = np.unique(inst.a_values, return_counts=True)
    by_element = 0
    for a, mult in zip(values, multiplicity):
        divs = [1]
        for p, e in inst.sieve.factorize(int(a)):
            divs = [q * p**k for q in divs for k in range(e + 1)]
        by_element += int(mult) * sum(1 for q in divs if q <= D)
    return by_modulus, by_element


@dataclass(frozen=True)
class P7Result:
    """Décompte des premiers p ≤ x^γ avec Ω([p^{1/γ}]) ≤ omega_max"""

    x: int
    gamma: float
    count: int
    distinct: int
    benchmark: float
    omega_max: int
    sifted: bool

    @property
    def ratio(self):
        return self.count / self.benchmark

    def to_row(self):
        return [self.gamma, self.x, self.count, self.benchmark, self.ratio]


def count_P7(inst, omega_max=DEFAULT_OMEGA_MAX, sifted=False):
    """
    Compte les p ≤ x^γ tels que Ω([p^{1/γ}]) ≤ omega_max

    Args:
        inst (PsInstance): Instance
        omega_max (int): Seuil sur Ω (par défaut 7)
        sifted (bool): Ne garder que les a sans facteur premier < x^{1/17.41}

    Returns:
        P7Result: Décompte et référence x^γ/log²x
    """
    a = inst.a_values
    big, _, _, least = inst.sieve.factor_profile(a)
    keep = big <= omega_max
    if sifted:
        keep &= least >= inst.z
    count = int(np.count_nonzero(keep))
    distinct = int(np.unique(a[keep]).size)
    benchmark = inst.x**inst.gamma / math.log(inst.x) ** 2
    logger.info(f"x={inst.x}, γ={inst.gamma}: {count} valeurs avec Ω ≤ {omega_max}")
    return P7Result(inst.x, inst.gamma, count, distinct, benchmark, omega_max, sifted)


@dataclass(frozen=True)
class WeightedSum:
    """
    Somme pondérée W et sa décomposition en quatre classes

    Attributes:
        total (float): W
        classes (dict): Contributions le7, eq8_sf, ge9_sf, ge8_nonsf
        counts (dict): Effectifs des mêmes classes
        survivors (int): Nombre de a sans facteur premier < z
        squarefree_survivors (int): Survivants sans facteur carré
        weight_upper_violations (int): Survivants sans facteur carré avec 𝒲_a ≥ λ(9-Ω(a))
        z (float): x^{1/17.41}
        y (float): x^{1/u}
    """

    total: float
    classes: dict
    counts: dict
    survivors: int
    squarefree_survivors: int
    weight_upper_violations: int
    z: float
    y: float

    def to_dict(self):
        return {
            "W": self.total,
            "classes": self.classes,
            "counts": self.counts,
            "survivors": self.survivors,
            "squarefree_survivors": self.squarefree_survivors,
            "weight_upper_violations": self.weight_upper_violations,
            "eq": "W-fenjie",
        }


def weighted_W_report(inst):
    """
    Calcule W(𝒜, x^{1/17.41}) avec les poids 𝒲_a et la décomposition en classes

    Args:
        inst (PsInstance): Instance dont λ_w est défini

    Returns:
        WeightedSum: Total, classes et contrôle de 𝒲_a < λ(9 - Ω(a))
    """
    p = inst.params
    if p.lambda_w is None:
        raise ParameterError(f"λ_w non défini pour γ={p.gamma}")
    lam, u = p.lambda_w, p.u
    log_x = math.log(inst.x)
    z = inst.z
    y = inst.x ** (1.0 / u)
    a = inst.a_values
    big, _, squarefree, least = inst.sieve.factor_profile(a)
    survive = least >= z
    a, big, squarefree = a[survive], big[survive], squarefree[survive]

    inner = np.zeros(a.shape, dtype=float)
    for q in small_primes(int(math.ceil(y))):
        q = int(q)
        if q < z or q >= y:
            continue
        inner += np.where(a % q == 0, 1.0 - u * math.log(q) / log_x, 0.0)
    weights = 1.0 - lam * inner

    masks = {
        "le7": big <= 7,
        "eq8_sf": (big == 8) & squarefree,
        "ge9_sf": (big >= 9) & squarefree,
        "ge8_nonsf": (big >= 8) & ~squarefree,
    }
    classes = {name: math.fsum(weights[m].tolist()) for name, m in masks.items()}
    counts = {name: int(np.count_nonzero(m)) for name, m in masks.items()}
    upper = lam * (9 - big[squarefree])
    violations = int(np.count_nonzero(weights[squarefree] >= upper))
    if violations:
        logger.warning(f"{violations} élément(s) violent 𝒲_a < λ(9 - Ω(a))")
    return WeightedSum(
        total=math.fsum(weights.tolist()),
        classes=classes,
        counts=counts,
        survivors=int(a.size),
        squarefree_survivors=int(np.count_nonzero(squarefree)),
        weight_upper_violations=violations,
        z=z,
        y=y,
    )


def weighted_W(inst):
    """W(𝒜, x^{1/17.41})"""
    return weighted_W_report(inst).total


@dataclass(frozen=True)
class CurlyB:
    """
    Ensemble ℬ des m = p₁⋯p_k ≤ x, x^{1/17.41} ≤ p₁ < ⋯ < p_k

    Attributes:
        x (int): Échelle
        n_factors (int): Nombre k de facteurs premiers (8 par défaut)
        z (float): Borne inférieure des facteurs
        members (tuple): Éléments en ordre croissant
    """

    x: int
    n_factors: int
    z: float
    members: tuple

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)

    def as_array(self):
        return np.array(self.members, dtype=np.int64)


def _products(primes, start, remaining, k):
    # produits de k premiers strictement croissants de primes[start:], ≤ remaining
    for i in range(start, len(primes)):
        p = primes[i]
        if p**k > remaining:
            break
        if k == 1:
            yield p
        else:
            for rest in _products(primes, i + 1, remaining // p, k - 1):
                yield p * rest


def enumerate_B(inst, n_factors=B_FACTORS):
    """
    Énumère ℬ par parcours en profondeur avec élagage p^k ≤ x/(p₁⋯p_j)

    Args:
        inst (PsInstance): Instance
        n_factors (int): Nombre de facteurs premiers (8 pour ℬ)

    Returns:
        CurlyB: Éléments triés
    """
    if n_factors < 1:
        raise DomainError(f"n_factors={n_factors} doit être ≥ 1")
    if n_factors in inst._b_cache:
        return inst._b_cache[n_factors]
    x, z = inst.x, inst.z
    if x > MAX_B_SCALE:
        raise ResourceLimitError(f"x={x} au-delà de {MAX_B_SCALE} pour ℬ", limit=MAX_B_SCALE)
    first = int(math.ceil(z))
    # les k-1 plus petits premiers admissibles bornent le plus grand facteur
    head = [int(q) for q in small_primes(max(first, 2) * 64 + 64) if q >= z][: n_factors - 1]
    prod_head = math.prod(head)
    if len(head) < n_factors - 1 or prod_head > x:
        return CurlyB(x, n_factors, z, ())
    primes = [int(q) for q in small_primes(x // prod_head) if q >= z]
    members = sorted(_products(primes, 0, x, n_factors))
    logger.debug(f"ℬ (k={n_factors}, x={x}): {len(members)} élément(s)")
    inst._b_cache[n_factors] = CurlyB(x, n_factors, z, tuple(members))
    return inst._b_cache[n_factors]


def _increments(ell, gamma):
    # (ℓ+1)^γ - ℓ^γ sans compensation catastrophique
    ell = np.asarray(ell, dtype=float)
    return ell**gamma * np.expm1(gamma * np.log1p(1.0 / ell))


@dataclass(frozen=True)
class CurlyXResult:
    """𝒳 = Σ((ℓ+1)^γ - ℓ^γ) et son développement Σγℓ^{γ-1}"""

    value: float
    leading: float
    size: int

    @property
    def difference(self):
        return self.value - self.leading

    def to_dict(self):
        return {"X": self.value, "leading": self.leading, "difference": self.difference,
                "members": self.size, "eq": "8-main-error-def"}


def curly_X(inst, n_factors=B_FACTORS):
    """
    Terme principal 𝒳 sur ℬ

    Args:
        inst (PsInstance): Instance
        n_factors (int): Nombre de facteurs premiers

    Returns:
        CurlyXResult: 𝒳, Σγℓ^{γ-1} et leur écart
    """
    ell = enumerate_B(inst, n_factors).as_array()
    if ell.size == 0:
        return CurlyXResult(0.0, 0.0, 0)
    g = inst.gamma
    value = math.fsum(_increments(ell, g).tolist())
    leading = math.fsum((g * ell.astype(float) ** (g - 1.0)).tolist())
    return CurlyXResult(value, leading, int(ell.size))


def epsilon_set(inst, n_factors=B_FACTORS):
    """
    ℰ = {n : [n^{1/γ}] ∈ ℬ}, avec contrôle aller-retour de chaque élément

    Args:
        inst (PsInstance): Instance
        n_factors (int): Nombre de facteurs premiers

    Returns:
        numpy.ndarray: Éléments de ℰ en ordre croissant
    """
    if n_factors in inst._e_cache:
        return inst._e_cache[n_factors]
    ell = enumerate_B(inst, n_factors).as_array()
    if ell.size == 0:
        return np.empty(0, dtype=np.int64)
    g = inst.gamma
    lo = ceil_pow_array(ell, g)
    hi = ceil_pow_array(ell + 1, g)
    counts = hi - lo
    owners = np.repeat(ell, counts)
    offsets = np.arange(int(counts.sum())) - np.repeat(np.cumsum(counts) - counts, counts)
    n = np.repeat(lo, counts) + offsets
    back = floor_root_pow_array(n, g)
    if not np.array_equal(back, owners):
        bad = int(n[np.flatnonzero(back != owners)[0]])
        raise ConsistencyError(f"n={bad}: [n^(1/γ)] n'appartient pas à ℬ")
    inst._e_cache[n_factors] = n
    return n


def card_E_d(inst, d, n_factors=B_FACTORS):
    """#ℰ_d par appartenance directe"""
    return int(np.count_nonzero(epsilon_set(inst, n_factors) % d == 0))


@dataclass(frozen=True)
class RemainderFrakRecord:
    """
    #ℰ_d = 𝒳/d + ℛ_d

    Attributes:
        d (int): Module
        card_E_d (int): Cardinal direct
        curly_X_over_d (float): 𝒳/d
        R_frak (float): ℛ_d
    """

    d: int
    card_E_d: int
    curly_X_over_d: float
    R_frak: float

    def to_row(self):
        return [self.d, self.card_E_d, self.curly_X_over_d, self.R_frak]


def remainder_R_frak(inst, d, n_factors=B_FACTORS, tol=1e-6):
    """
    ℛ_d = Σ_{ℓ∈ℬ} (ψ(-(ℓ+1)^γ/d) - ψ(-ℓ^γ/d))

    ψ(-y/d) = -y/d + ⌈y/d⌉ - 1/2 et ⌈y/d⌉ = ⌈⌈y⌉/d⌉, les plafonds étant exacts.

    Args:
        inst (PsInstance): Instance
        d (int): Module, 1 ≤ d ≤ x^ξ
        n_factors (int): Nombre de facteurs premiers
        tol (float): Tolérance de l'identité #ℰ_d = 𝒳/d + ℛ_d

    Returns:
        RemainderFrakRecord: Cardinal direct, 𝒳/d et ℛ_d
    """
    _check_modulus(inst, d)
    ell = enumerate_B(inst, n_factors).as_array()
    if ell.size == 0:
        return RemainderFrakRecord(d, 0, 0.0, 0.0)
    g = inst.gamma
    increments = _increments(ell, g)
    c0 = ceil_pow_array(ell, g)
    c1 = ceil_pow_array(ell + 1, g)
    jumps = int(np.sum(-(-c1 // d) + (-c0 // d)))
    r_frak = math.fsum((-increments / d).tolist() + [jumps])
    x_over_d = math.fsum(increments.tolist()) / d
    card = card_E_d(inst, d, n_factors)
    if abs(card - (x_over_d + r_frak)) > tol:
        raise PrecisionError(
            f"d={d}: #ℰ_d={card} mais 𝒳/d + ℛ_d = {x_over_d + r_frak!r}"
        )
    return RemainderFrakRecord(d, card, x_over_d, r_frak)
