"""
Module d'arithmétique élémentaire: crible segmenté du plus petit facteur premier,
fonctions Λ, μ, Ω, identité de Heath-Brown et produit de Mertens
"""

import logging
import math
from dataclasses import dataclass

import numpy as np

from pssieve.exceptions import DomainError, ResourceLimitError

# Configuration du logger
logger = logging.getLogger("pssieve")

# Constante d'Euler-Mascheroni C0
EULER_GAMMA = 0.57721566490153286

DEFAULT_SEGMENT_SIZE = 1 << 20
DEFAULT_MAX_SEGMENTS = 256


def small_primes(limit):
    """
    Liste des nombres premiers ≤ limit (crible d'Ératosthène non segmenté)

    Args:
        limit (int): Borne supérieure incluse

    Returns:
        numpy.ndarray: Nombres premiers en ordre croissant (int64)
    """
    if limit < 2:
        return np.empty(0, dtype=np.int64)
    mask = np.ones(limit + 1, dtype=bool)
    mask[:2] = False
    mask[4::2] = False
    for p in range(3, math.isqrt(limit) + 1, 2):
        if mask[p]:
            mask[p * p::2 * p] = False
    return np.flatnonzero(mask).astype(np.int64)


def _fill_segment(view, seg_lo, seg_hi, base_primes):
    """
    Remplit une vue du tableau spf couvrant [seg_lo, seg_hi]

    Args:
        view (numpy.ndarray): Vue du tableau spf pour le segment
        seg_lo (int): Premier entier du segment
        seg_hi (int): Dernier entier du segment
        base_primes (numpy.ndarray): Premiers ≤ sqrt(hi)
    """
    for p in base_primes:
        p = int(p)
        if p * p > seg_hi:
            break
        start = max(p * p, -(-seg_lo // p) * p)
        if start > seg_hi:
            continue
        block = view[start - seg_lo::p]
        block[block == 0] = p
    # Les cases restées vides sont des nombres premiers
    empty = view == 0
    view[empty] = np.arange(seg_lo, seg_hi + 1, dtype=view.dtype)[empty]


class FactorSieve:
    """
    Table du plus petit facteur premier sur un intervalle [lo, hi]

    Cette classe permet de:
    - Énumérer les nombres premiers de l'intervalle
    - Factoriser les entiers de l'intervalle via spf
    - Calculer Λ, μ, Ω, ω élément par élément ou de façon vectorisée
    """

    def __init__(self, lo, hi, spf, base_primes):
        """
        Initialise la table (utiliser build_sieve plutôt que ce constructeur)

        Args:
            lo (int): Premier entier couvert
            hi (int): Dernier entier couvert
            spf (numpy.ndarray): Plus petit facteur premier de chaque entier
            base_primes (numpy.ndarray): Premiers ≤ sqrt(hi)
        """
        self.lo = lo
        self.hi = hi
        self.spf = spf
        self.base_primes = base_primes
        self._primes = None

    def __len__(self):
        return self.hi - self.lo + 1

    def __contains__(self, n):
        return self.lo <= n <= self.hi

    def _check(self, n):
        if not self.lo <= n <= self.hi:
            raise DomainError(f"{n} hors de l'intervalle du crible [{self.lo}, {self.hi}]")

    def spf_of(self, n):
        """Plus petit facteur premier de n"""
        self._check(n)
        return int(self.spf[n - self.lo])

    def is_prime(self, n):
        """Indique si n est premier"""
        return n >= 2 and self.spf_of(n) == n

    def primes(self):
        """
        Nombres premiers de l'intervalle

        Returns:
            numpy.ndarray: Premiers {n : spf(n) = n} en ordre croissant
        """
        if self._primes is None:
            values = np.arange(self.lo, self.hi + 1, dtype=self.spf.dtype)
            self._primes = values[self.spf == values].astype(np.int64)
        return self._primes

    def prime_count(self, upto=None):
        """
        Nombre de premiers de [lo, upto]

        Args:
            upto (int, optional): Borne supérieure (par défaut: hi)

        Returns:
            int: Nombre de premiers
        """
        primes = self.primes()
        if upto is None:
            return int(primes.size)
        return int(np.searchsorted(primes, upto, side="right"))

    def factorize(self, n):
        """
        Factorise n à l'aide de la table

        Les cofacteurs tombés sous lo sont finis par division par les premiers de base.

        Args:
            n (int): Entier de l'intervalle

        Returns:
            list: Couples (p, e) par p croissant
        """
        self._check(n)
        factors = []
        m = n
        while m > 1 and self.lo <= m:
            p = int(self.spf[m - self.lo])
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            factors.append((p, e))
        if m > 1:
            for p in self.base_primes:
                p = int(p)
                if p * p > m:
                    break
                e = 0
                while m % p == 0:
                    m //= p
                    e += 1
                if e:
                    factors.append((p, e))
            if m > 1:
                factors.append((m, 1))
            factors.sort()
        return factors

    def omega_big(self, n):
        """Ω(n): nombre de facteurs premiers comptés avec multiplicité"""
        return sum(e for _, e in self.factorize(n))

    def omega_small(self, n):
        """ω(n): nombre de facteurs premiers distincts"""
        return len(self.factorize(n))

    def mobius(self, n):
        """μ(n)"""
        factors = self.factorize(n)
        if any(e > 1 for _, e in factors):
            return 0
        return -1 if len(factors) % 2 else 1

    def lambda_of(self, n):
        """Λ(n) = log p si n = p^k, 0 sinon"""
        if n == 1:
            return 0.0
        factors = self.factorize(n)
        return math.log(factors[0][0]) if len(factors) == 1 else 0.0

    def factor_profile(self, values):
        """
        Profil factoriel vectorisé d'un tableau d'entiers

        Exige un crible commençant à 2 afin que tous les quotients restent dans la table.

        Args:
            values (array_like): Entiers de [1, hi]

        Returns:
            tuple: (Ω, ω, sans_facteur_carré, plus_petit_facteur) en tableaux numpy;
                le plus petit facteur de 1 vaut 0
        """
        if self.lo != 2:
            raise DomainError("factor_profile exige un crible commençant à 2")
        m = np.array(values, dtype=np.int64, copy=True)
        if m.size and (m.min() < 1 or m.max() > self.hi):
            raise DomainError(f"valeurs hors de [1, {self.hi}]")
        big = np.zeros(m.shape, dtype=np.int64)
        small = np.zeros(m.shape, dtype=np.int64)
        squarefree = np.ones(m.shape, dtype=bool)
        last = np.zeros(m.shape, dtype=np.int64)
        least = np.zeros(m.shape, dtype=np.int64)
        active = np.flatnonzero(m > 1)
        if active.size:
            least[active] = self.spf[m[active] - 2]
        while active.size:
            p = self.spf[m[active] - 2].astype(np.int64)
            repeated = p == last[active]
            squarefree[active[repeated]] = False
            small[active[~repeated]] += 1
            big[active] += 1
            last[active] = p
            m[active] //= p
            active = active[m[active] > 1]
        return big, small, squarefree, least

    def omega_array(self, values):
        """Ω vectorisé (voir factor_profile)"""
        return self.factor_profile(values)[0]

    def squarefree_array(self, values):
        """Indicatrice vectorisée « sans facteur carré » (voir factor_profile)"""
        return self.factor_profile(values)[2]


def build_sieve(lo, hi, segment_size=DEFAULT_SEGMENT_SIZE, max_segments=DEFAULT_MAX_SEGMENTS):
    """
    Construit la table du plus petit facteur premier de [lo, hi] segment par segment

    Args:
        lo (int): Premier entier couvert (≥ 2)
        hi (int): Dernier entier couvert (> lo)
        segment_size (int): Longueur d'un segment
        max_segments (int): Nombre maximal de segments autorisé

    Returns:
        FactorSieve: Table construite
    """
    if lo < 2:
        raise DomainError(f"lo doit être ≥ 2 (reçu {lo})")
    if hi <= lo:
        raise DomainError(f"intervalle vide [{lo}, {hi}]")
    limit = segment_size * max_segments
    length = hi - lo + 1
    if length > limit:
        raise ResourceLimitError(
            f"intervalle de {length} entiers au-delà de la limite {limit} "
            f"(segment_size={segment_size} x max_segments={max_segments})",
            limit=limit,
        )

    base = small_primes(math.isqrt(hi))
    dtype = np.int32 if hi < 2**31 else np.int64
    spf = np.zeros(length, dtype=dtype)
    segments = 0
    for seg_lo in range(lo, hi + 1, segment_size):
        seg_hi = min(seg_lo + segment_size - 1, hi)
        _fill_segment(spf[seg_lo - lo:seg_hi - lo + 1], seg_lo, seg_hi, base)
        segments += 1
    logger.debug(f"Crible [{lo}, {hi}] construit en {segments} segment(s)")
    return FactorSieve(lo, hi, spf, base)


def _trial_factorize(n):
    factors = []
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            factors.append((p, e))
        p += 1 if p == 2 else 2
    if m > 1:
        factors.append((m, 1))
    return factors


def lambda_of(n):
    """
    Fonction de von Mangoldt

    Args:
        n (int): Entier ≥ 1

    Returns:
        float: log p si n = p^k, 0 sinon
    """
    if n < 1:
        raise DomainError(f"Λ n'est pas définie en {n}")
    if n == 1:
        return 0.0
    factors = _trial_factorize(n)
    return math.log(factors[0][0]) if len(factors) == 1 else 0.0


def mobius(n):
    """μ(n) par division d'essai"""
    if n < 1:
        raise DomainError(f"μ n'est pas définie en {n}")
    factors = _trial_factorize(n)
    if any(e > 1 for _, e in factors):
        return 0
    return -1 if len(factors) % 2 else 1


def divisors(n):
    """Diviseurs positifs de n en ordre croissant"""
    divs = [1]
    for p, e in _trial_factorize(n):
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def chebyshev_psi(x):
    """
    Fonction de Chebyshev ψ(x) = Σ_{n≤x} Λ(n), sommée sur les puissances de premiers

    Args:
        x (int): Borne

    Returns:
        float: Valeur de ψ(x)
    """
    terms = []
    for p in small_primes(int(x)):
        p = int(p)
        log_p = math.log(p)
        pk = p
        while pk <= x:
            terms.append(log_p)
            pk *= p
    return math.fsum(terms)


@dataclass(frozen=True)
class HbTerm:
    """
    Terme de l'identité de Heath-Brown pour un n fixé

    Attributes:
        j (int): Indice de l'identité (1 à 3)
        factor_tuple (tuple): Factorisation ordonnée (m_1, ..., m_2j) de n
        weight (float): Signe binomial x produit des μ(m_i) x log m_2j
    """

    j: int
    factor_tuple: tuple
    weight: float


def _check_hb_window(n, X):
    if X < 8:
        raise DomainError(f"X doit être ≥ 8 (reçu {X})")
    if not (2 * n > X and n <= X):
        raise DomainError(f"n={n} hors de la fenêtre dyadique ({X}/2, {X}]")


def _expand(remaining, slots, restricted, X, divs, mob):
    # les `restricted` premières composantes vérifient m^3 <= X et μ(m) != 0
    if slots == 1:
        if restricted > 0 and (remaining**3 > X or mob[remaining] == 0):
            return
        yield (remaining,)
        return
    for m in divs:
        if m > remaining:
            break
        if remaining % m:
            continue
        if restricted > 0:
            if m**3 > X:
                break
            if mob[m] == 0:
                continue
        for rest in _expand(remaining // m, slots - 1, restricted - 1, X, divs, mob):
            yield (m,) + rest


def heath_brown_terms(n, X):
    """
    Énumère les termes non nuls de l'identité de Heath-Brown d'ordre 3 pour n

    Args:
        n (int): Entier de la fenêtre (X/2, X]
        X (int): Paramètre de coupure, les m_1..m_j vérifient m_i ≤ X^{1/3}

    Yields:
        HbTerm: Termes de poids non nul
    """
    _check_hb_window(n, X)
    divs = divisors(n)
    mob = {d: mobius(d) for d in divs}
    for j in (1, 2, 3):
        sign = (-1) ** (j - 1) * math.comb(3, j)
        for tup in _expand(n, 2 * j, j, X, divs, mob):
            if tup[-1] == 1:
                continue
            mu_prod = 1
            for m in tup[:j]:
                mu_prod *= mob[m]
            yield HbTerm(j, tup, sign * mu_prod * math.log(tup[-1]))


def heath_brown_lambda(n, X):
    """
    Évalue Λ(n) par l'identité de Heath-Brown

    Args:
        n (int): Entier de la fenêtre (X/2, X]
        X (int): Paramètre de coupure (≥ 8)

    Returns:
        float: Somme des poids, égale à Λ(n) aux erreurs d'arrondi près
    """
    return math.fsum(term.weight for term in heath_brown_terms(n, X))


def mertens_product(z):
    """
    Produit de Mertens Π_{p<z} (1 - 1/p)

    Args:
        z (int): Borne stricte (≥ 3)

    Returns:
        float: Valeur du produit
    """
    if z < 3:
        raise DomainError(f"z doit être ≥ 3 (reçu {z})")
    primes = small_primes(int(math.ceil(z)) - 1)
    primes = primes[primes < z]
    return float(np.prod(1.0 - 1.0 / primes))


def mertens_ratio(z):
    """Rapport e^{C0}·log z·Π_{p<z}(1 - 1/p), qui tend vers 1"""
    return math.exp(EULER_GAMMA) * math.log(z) * mertens_product(z)
