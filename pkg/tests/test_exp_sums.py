"""
Tests unitaires pour le module exp_sums
"""

import cmath
import math
import unittest
from fractions import Fraction

import numpy as np
from hypothesis import given, settings, strategies as st

from pssieve.exceptions import DomainError, ParseError, ResourceLimitError
from pssieve.exp_sums import (
    CALIBRATED_CONSTANTS,
    TRIVIAL_PAIR,
    ExponentPair,
    TruncationParams,
    apply_process,
    apply_word,
    lattice_count_oracle,
    monomial_exp_sum,
    parse_word,
    psi,
    psi_truncation_check,
    trilinear_sum_check,
    truncation_params,
)
from pssieve.params import make_params

kappas = st.fractions(min_value=0, max_value=Fraction(1, 2), max_denominator=1000)
ells = st.fractions(min_value=Fraction(1, 2), max_value=1, max_denominator=1000)

# rapport mesuré 0.0372 sur l'instance (1000, 2000, 300, 1/0.99)
MONOMIAL_RATIO_MAX = 0.06


class TestExponentPairs(unittest.TestCase):
    """Tests pour l'algèbre des couples d'exposants"""

    def test_word_BA3B(self):
        """BA³B(0, 1) = (11/30, 8/15)"""
        pair = apply_word("BA3B")
        self.assertEqual((pair.kappa, pair.ell), (Fraction(11, 30), Fraction(8, 15)))
        self.assertEqual(pair.to_dict(), {"kappa": "11/30", "ell": "8/15"})

    def test_word_equivalent_spellings(self):
        """BA3B et BAAAB désignent le même mot"""
        self.assertEqual(apply_word("BA3B"), apply_word("BAAAB"))
        self.assertEqual(parse_word("A2B"), ["A", "A", "B"])

    def test_trivial_words(self):
        """Le mot vide laisse (0, 1), B donne (1/2, 1/2)"""
        self.assertEqual(apply_word(""), TRIVIAL_PAIR)
        self.assertEqual(apply_word("B"), ExponentPair(Fraction(1, 2), Fraction(1, 2)))

    def test_custom_start(self):
        """Le couple de départ est paramétrable"""
        start = ExponentPair.parse("1/6, 2/3")
        self.assertEqual(apply_word("A", start), ExponentPair(Fraction(1, 14), Fraction(11, 14)))

    @given(kappas, ells)
    @settings(max_examples=200, deadline=None)
    def test_B_is_involution(self, kappa, ell):
        """B∘B est l'identité"""
        pair = ExponentPair(kappa, ell)
        self.assertEqual(apply_process(apply_process(pair, "B"), "B"), pair)

    @given(kappas, ells)
    @settings(max_examples=200, deadline=None)
    def test_A_keeps_pairs_valid(self, kappa, ell):
        """A envoie un couple valide sur un couple valide"""
        pair = apply_process(ExponentPair(kappa, ell), "A")
        self.assertLessEqual(pair.kappa, Fraction(1, 2))
        self.assertGreaterEqual(pair.ell, Fraction(1, 2))

    def test_parse_errors(self):
        """Vérifie les erreurs d'analyse"""
        with self.assertRaises(ParseError):
            parse_word("BAC")
        with self.assertRaises(ParseError):
            apply_word("B A")
        with self.assertRaises(ParseError):
            apply_process(TRIVIAL_PAIR, "C")
        with self.assertRaises(ParseError):
            ExponentPair.parse("1/2")
        with self.assertRaises(ParseError):
            ExponentPair.parse("a,b")

    def test_invalid_pair(self):
        """κ > 1/2 est refusé"""
        with self.assertRaises(DomainError):
            ExponentPair(Fraction(3, 5), Fraction(1, 2))


class TestMonomialSum(unittest.TestCase):
    """Tests pour la somme d'exponentielles directe"""

    def test_zero_amplitude(self):
        """amp = 0 donne b - a"""
        res = monomial_exp_sum(100, 200, 0.0, 1.5)
        self.assertEqual(res.value, complex(100, 0))
        self.assertEqual(res.bound, math.inf)

    def test_matches_direct_loop(self):
        """La somme vectorisée coïncide avec une boucle directe"""
        a, b, amp, expnt = 50, 90, 37.5, 1.3
        expected = sum(cmath.exp(2j * math.pi * amp * (n / a) ** expnt) for n in range(a + 1, b + 1))
        res = monomial_exp_sum(a, b, amp, expnt)
        self.assertAlmostEqual(abs(res.value - expected), 0.0, places=9)
        self.assertLessEqual(abs(res.value), b - a + 1e-9)
        self.assertEqual(res.to_dict()["eq"], "expo-pair-gernal")

    def test_reference_instance_bound(self):
        """a = 1000, b = 2000, phase 300(n/1000)^{1/0.99}: la somme reste loin de la borne (1/2, 1/2)"""
        res = monomial_exp_sum(1000, 2000, 300.0, 1 / 0.99)
        self.assertEqual(res.pair, apply_word("B"))
        self.assertLessEqual(abs(res.value), res.bound)
        self.assertLessEqual(res.ratio, MONOMIAL_RATIO_MAX)

    def test_conjugate_amplitude(self):
        """Changer le signe de l'amplitude conjugue la somme et garde la borne"""
        plus = monomial_exp_sum(1000, 2000, 300.0, 1 / 0.99)
        minus = monomial_exp_sum(1000, 2000, -300.0, 1 / 0.99)
        self.assertAlmostEqual(abs(minus.value - plus.value.conjugate()), 0.0, places=9)
        self.assertEqual(minus.bound, plus.bound)

    def test_domain(self):
        """b doit rester dans (a, 2a]"""
        with self.assertRaises(DomainError):
            monomial_exp_sum(10, 25, 1.0, 1.5)
        with self.assertRaises(DomainError):
            monomial_exp_sum(10, 10, 1.0, 1.5)


class TestPsi(unittest.TestCase):
    """Tests pour ψ et sa série de Fourier tronquée"""

    def test_values(self):
        """ψ(t) = t - [t] - 1/2"""
        self.assertAlmostEqual(psi(0.25), -0.25)
        self.assertAlmostEqual(psi(-0.25), 0.25)
        self.assertAlmostEqual(psi(3.0), -0.5)
        np.testing.assert_allclose(psi([0.5, 1.75]), [0.0, 0.25])

    def test_truncation_ratio_bounded(self):
        """Le rapport reste sous la constante calibrée"""
        samples = np.random.default_rng(0x5EED).random(4000) * 1000.0
        for H in (10, 100, 1000):
            res = psi_truncation_check(samples, H)
            self.assertLessEqual(res.max_ratio, CALIBRATED_CONSTANTS["C22"])
            self.assertEqual(res.samples, 4000)

    def test_ratio_stable_under_doubling(self):
        """Doubler H ne dégrade pas le rapport de plus de 50 %"""
        samples = np.random.default_rng(1).random(2000) * 100.0
        ratios = [psi_truncation_check(samples, H).max_ratio for H in (16, 32, 64, 128)]
        for r_h, r_2h in zip(ratios, ratios[1:]):
            self.assertLessEqual(r_2h, 1.5 * r_h)

    def test_integral_points_skipped(self):
        """Les points entiers sont ignorés et comptés"""
        res = psi_truncation_check([1.0, 2.0, 0.3, 0.7], 10)
        self.assertEqual(res.skipped, 2)
        self.assertEqual(res.samples, 2)
        self.assertEqual(res.to_dict()["eq"], "psi-expansion")

    def test_small_H(self):
        """H < 2 est refusé"""
        with self.assertRaises(DomainError):
            psi_truncation_check([0.3], 1)


class TestTruncationParams(unittest.TestCase):
    """Tests pour les longueurs de troncature"""

    def test_roles(self):
        """H1, H2 et H* sont des parties entières d'au moins 1"""
        p = make_params(0.99)
        x = 10**6
        self.assertEqual(truncation_params(p, x, "H1").H, int(x ** (p.xi + p.eta)))
        self.assertEqual(truncation_params(p, x, "Hstar").H,
                         max(1, int(x ** (1 - p.gamma + p.xi + p.eta))))
        h2 = truncation_params(p, x, "H2", X=10**5)
        self.assertEqual(h2.role, "H2")
        self.assertGreaterEqual(h2.H, 1)

    def test_errors(self):
        """Rôle inconnu ou H nul"""
        with self.assertRaises(DomainError):
            truncation_params(make_params(0.99), 10**6, "H3")
        with self.assertRaises(DomainError):
            TruncationParams(0, "H1")


class TestLatticeCount(unittest.TestCase):
    """Tests pour le comptage de quasi-coïncidences"""

    def test_small_delta(self):
        """Pour Δ infime seules les coïncidences exactes comptent"""
        res = lattice_count_oracle(8, 8, 8, 1e-9, 0.99)
        # 4 valeurs de ℓ, 28 couples (h, d) de même rapport par ℓ
        self.assertGreaterEqual(res.value, 112)
        self.assertLessEqual(res.ratio, CALIBRATED_CONSTANTS["C24"])
        self.assertEqual(res.to_dict()["eq"], "latticepoints")

    def test_calibrated_deltas(self):
        """Les écarts de la calibration restent sous C24"""
        for delta in (1e-6, 1e-4):
            with self.subTest(delta=delta):
                res = lattice_count_oracle(8, 8, 8, delta, 0.99)
                self.assertLessEqual(res.ratio, CALIBRATED_CONSTANTS["C24"])

    def test_zero_delta_non_strict(self):
        """Δ = 0 non strict compte au moins la diagonale"""
        res = lattice_count_oracle(8, 8, 8, 0.0, 0.99, strict=False)
        self.assertGreaterEqual(res.value, 4 * 4 * 4)

    def test_count_grows_with_delta(self):
        """Le décompte croît avec Δ"""
        counts = [lattice_count_oracle(8, 8, 8, d, 0.99).value for d in (1e-6, 1e-3, 1e-1)]
        self.assertTrue(all(b >= a for a, b in zip(counts, counts[1:])))

    def test_limits(self):
        """Vérifie les limites de la force brute"""
        with self.assertRaises(ResourceLimitError):
            lattice_count_oracle(33, 8, 8, 1e-3, 0.99)
        with self.assertRaises(DomainError):
            lattice_count_oracle(1, 8, 8, 1e-3, 0.99)
        with self.assertRaises(DomainError):
            lattice_count_oracle(8, 8, 8, -1.0, 0.99)


class TestTrilinearSum(unittest.TestCase):
    """Tests pour la somme trilinéaire"""

    def test_bound_holds(self):
        """S reste sous la borne pour un cas représentatif"""
        res = trilinear_sum_check(16, 16, 64, 32.0, 1 / 0.99, 1.0, 1.0)
        self.assertLessEqual(res.value, 8 * 8 * 32)
        self.assertLessEqual(res.ratio, CALIBRATED_CONSTANTS["C25"])
        self.assertEqual(res.to_dict()["eq"], "Robert-Sargos-lemma")

    def test_zero_amplitude(self):
        """X = 0: chaque somme intérieure vaut M/2, donc S = HNM/8"""
        res = trilinear_sum_check(16, 16, 16, 0.0, 1.5, 1.0, 1.0)
        self.assertAlmostEqual(res.value, 16 * 16 * 16 / 8)
        self.assertEqual(res.bound, math.inf)

    def test_degenerate_exponents(self):
        """α(α-1)βγ = 0 est refusé"""
        for alpha, beta, gamma_e in ((1.0, 1.0, 1.0), (0.0, 1.0, 1.0), (1.5, 0.0, 1.0)):
            with self.assertRaises(DomainError):
                trilinear_sum_check(8, 8, 8, 10.0, alpha, beta, gamma_e)

    def test_limit(self):
        """H, N, M limités"""
        with self.assertRaises(ResourceLimitError):
            trilinear_sum_check(512, 8, 8, 10.0, 1.5, 1.0, 1.0)


if __name__ == '__main__':
    unittest.main()
