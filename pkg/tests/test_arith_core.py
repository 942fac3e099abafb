"""
Tests unitaires pour le module arith_core
"""

import math
import unittest

import numpy as np
from hypothesis import given, settings, strategies as st

from pssieve.arith_core import (
    EULER_GAMMA,
    build_sieve,
    chebyshev_psi,
    divisors,
    heath_brown_lambda,
    heath_brown_terms,
    lambda_of,
    mertens_product,
    mertens_ratio,
    mobius,
    small_primes,
)
from pssieve.exceptions import DomainError, ResourceLimitError


class TestSmallPrimes(unittest.TestCase):
    """Tests pour le crible d'Ératosthène non segmenté"""

    def test_first_primes(self):
        """Vérifie les premiers nombres premiers"""
        self.assertEqual(small_primes(30).tolist(), [2, 3, 5, 7, 11, 13, 17, 19, 23, 29])

    def test_small_limits(self):
        """Vérifie les bornes dégénérées"""
        self.assertEqual(small_primes(1).size, 0)
        self.assertEqual(small_primes(2).tolist(), [2])

    def test_prime_count(self):
        """π(10^5) = 9592"""
        self.assertEqual(small_primes(10**5).size, 9592)


class TestFactorSieve(unittest.TestCase):
    """Tests pour la table du plus petit facteur premier"""

    @classmethod
    def setUpClass(cls):
        """Un seul crible, volontairement découpé en petits segments"""
        cls.sieve = build_sieve(2, 10**5, segment_size=4096, max_segments=64)

    def test_segmented_matches_plain(self):
        """Vérifie que les premiers du crible segmenté sont ceux du crible simple"""
        np.testing.assert_array_equal(self.sieve.primes(), small_primes(10**5))
        self.assertEqual(self.sieve.prime_count(1000), 168)

    def test_factorize(self):
        """Vérifie quelques factorisations"""
        self.assertEqual(self.sieve.factorize(360), [(2, 3), (3, 2), (5, 1)])
        self.assertEqual(self.sieve.factorize(99991), [(99991, 1)])
        self.assertEqual(self.sieve.factorize(2**16), [(2, 16)])

    def test_arithmetic_functions(self):
        """Vérifie Ω, ω, μ et Λ sur la table"""
        self.assertEqual(self.sieve.omega_big(360), 6)
        self.assertEqual(self.sieve.omega_small(360), 3)
        self.assertEqual(self.sieve.mobius(30), -1)
        self.assertEqual(self.sieve.mobius(12), 0)
        self.assertAlmostEqual(self.sieve.lambda_of(81), math.log(3))
        self.assertEqual(self.sieve.lambda_of(12), 0.0)

    def test_factor_profile(self):
        """Vérifie le profil vectorisé contre les fonctions élément par élément"""
        values = np.arange(1, 2001)
        big, small, squarefree, least = self.sieve.factor_profile(values)
        for n in (1, 2, 12, 64, 210, 1024, 1999, 2000):
            i = n - 1
            if n == 1:
                self.assertEqual((big[i], small[i], least[i]), (0, 0, 0))
                self.assertTrue(squarefree[i])
                continue
            self.assertEqual(big[i], self.sieve.omega_big(n))
            self.assertEqual(small[i], self.sieve.omega_small(n))
            self.assertEqual(bool(squarefree[i]), self.sieve.mobius(n) != 0)
            self.assertEqual(least[i], self.sieve.spf_of(n))
        np.testing.assert_array_equal(self.sieve.squarefree_array(values), squarefree)

    def test_factor_profile_domain(self):
        """Vérifie le refus des valeurs hors table"""
        with self.assertRaises(DomainError):
            self.sieve.factor_profile([0, 5])
        with self.assertRaises(DomainError):
            self.sieve.factor_profile([10**5 + 1])

    def test_offset_sieve(self):
        """Vérifie un crible ne commençant pas à 2"""
        sieve = build_sieve(1000, 2000)
        self.assertEqual(sieve.prime_count(), 135)
        self.assertEqual(sieve.factorize(1001), [(7, 1), (11, 1), (13, 1)])
        with self.assertRaises(DomainError):
            sieve.factor_profile([1001])
        with self.assertRaises(DomainError):
            sieve.spf_of(999)

    def test_build_errors(self):
        """Vérifie les erreurs de construction"""
        with self.assertRaises(DomainError):
            build_sieve(1, 100)
        with self.assertRaises(DomainError):
            build_sieve(100, 100)
        with self.assertRaises(ResourceLimitError) as ctx:
            build_sieve(2, 10**6, segment_size=1000, max_segments=10)
        self.assertEqual(ctx.exception.limit, 10000)


class TestTrialDivision(unittest.TestCase):
    """Tests pour Λ, μ et les diviseurs par division d'essai"""

    def test_lambda(self):
        """Vérifie Λ sur les puissances de premiers"""
        self.assertEqual(lambda_of(1), 0.0)
        self.assertAlmostEqual(lambda_of(32), math.log(2))
        self.assertAlmostEqual(lambda_of(97), math.log(97))
        self.assertEqual(lambda_of(6), 0.0)
        with self.assertRaises(DomainError):
            lambda_of(0)

    def test_mobius(self):
        """Vérifie μ"""
        self.assertEqual([mobius(n) for n in range(1, 11)], [1, -1, -1, 0, -1, 1, -1, 0, 0, 1])
        with self.assertRaises(DomainError):
            mobius(-3)

    def test_divisors(self):
        """Vérifie la liste des diviseurs"""
        self.assertEqual(divisors(12), [1, 2, 3, 4, 6, 12])
        self.assertEqual(divisors(1), [1])

    @given(st.integers(min_value=1, max_value=5000))
    @settings(max_examples=200, deadline=None)
    def test_mobius_sum_over_divisors(self, n):
        """Σ_{d|n} μ(d) vaut 1 si n = 1, 0 sinon"""
        self.assertEqual(sum(mobius(d) for d in divisors(n)), 1 if n == 1 else 0)

    @given(st.integers(min_value=1, max_value=5000))
    @settings(max_examples=200, deadline=None)
    def test_log_is_sum_of_lambda(self, n):
        """log n = Σ_{d|n} Λ(d)"""
        self.assertAlmostEqual(math.fsum(lambda_of(d) for d in divisors(n)), math.log(n), places=9)

    def test_chebyshev_psi(self):
        """Vérifie ψ(10) = log(2^3·3^2·5·7)"""
        self.assertAlmostEqual(chebyshev_psi(10), math.log(8 * 9 * 5 * 7), places=12)


class TestHeathBrown(unittest.TestCase):
    """Tests pour l'identité de Heath-Brown"""

    def test_identity_on_windows(self):
        """Vérifie Λ(n) sur toute la fenêtre (X/2, X] pour plusieurs X"""
        for X in (8, 64, 300):
            for n in range(X // 2 + 1, X + 1):
                with self.subTest(X=X, n=n):
                    self.assertAlmostEqual(heath_brown_lambda(n, X), lambda_of(n), delta=1e-9)

    def test_identity_sampled_large_window(self):
        """Vérifie l'identité sur un échantillon de (500, 1000]"""
        for n in range(501, 1001, 11):
            self.assertAlmostEqual(heath_brown_lambda(n, 1000), lambda_of(n), delta=1e-9)

    def test_terms_shape(self):
        """Chaque terme factorise n en 2j facteurs, les j premiers étant ≤ X^{1/3}"""
        X = 300
        for term in heath_brown_terms(210, X):
            self.assertEqual(len(term.factor_tuple), 2 * term.j)
            self.assertEqual(math.prod(term.factor_tuple), 210)
            for m in term.factor_tuple[:term.j]:
                self.assertLessEqual(m**3, X)

    def test_window_errors(self):
        """Vérifie le refus de n hors fenêtre ou de X trop petit"""
        with self.assertRaises(DomainError):
            heath_brown_lambda(10, 100)
        with self.assertRaises(DomainError):
            heath_brown_lambda(101, 100)
        with self.assertRaises(DomainError):
            heath_brown_lambda(5, 6)


class TestMertens(unittest.TestCase):
    """Tests pour le produit de Mertens"""

    def test_small_product(self):
        """Π_{p<6}(1 - 1/p) = 4/15"""
        self.assertAlmostEqual(mertens_product(6), 4 / 15, places=14)

    def test_decreasing(self):
        """Le produit décroît strictement d'un premier au suivant"""
        values = [mertens_product(int(p) + 1) for p in small_primes(200)[1:]]
        self.assertTrue(all(b < a for a, b in zip(values, values[1:])))

    def test_ratio_tends_to_one(self):
        """e^{C0}·log z·Π(1 - 1/p) est proche de 1 pour z grand"""
        self.assertAlmostEqual(mertens_ratio(10**6), 1.0, delta=5e-3)
        self.assertAlmostEqual(EULER_GAMMA, 0.5772156649, places=10)

    def test_domain(self):
        """Vérifie le refus de z < 3"""
        with self.assertRaises(DomainError):
            mertens_product(2)


if __name__ == '__main__':
    unittest.main()
