"""
Module des fonctions du crible linéaire F(s) et f(s)

Formes closes sur les intervalles de base, puis intégration du système
différentiel à retard (sF(s))' = f(s-1), (sf(s))' = F(s-1) au-delà.
"""

import logging
import math

import numpy as np
from scipy.interpolate import CubicHermiteSpline

from pssieve.arith_core import EULER_GAMMA
from pssieve.exceptions import DomainError

# Configuration du logger
logger = logging.getLogger("pssieve")

TWO_E_C0 = 2.0 * math.exp(EULER_GAMMA)
DEFAULT_S_MAX = 6.0
DEFAULT_STEP = 1e-4


def _closed_F(s):
    return TWO_E_C0 / s


def _closed_f(s):
    if s <= 2.0:
        return 0.0
    return TWO_E_C0 * math.log(s - 1.0) / s


class SieveFunctionTable:
    """
    Table de F et f sur (0, s_max]

    Cette classe permet de:
    - Évaluer F et f (forme close prioritaire, table au-delà)
    - Calculer les résidus du système différentiel à retard
    """

    def __init__(self, s_grid, sF_vals, sf_vals, s_max, step):
        """
        Initialise la table (utiliser SieveFunctionTable.build)

        Args:
            s_grid (numpy.ndarray): Grille k·h, k = 1..N
            sF_vals (numpy.ndarray): Valeurs de s·F(s) sur la grille
            sf_vals (numpy.ndarray): Valeurs de s·f(s) sur la grille
            s_max (float): Borne supérieure de la table
            step (float): Pas h_s
        """
        self.s_grid = s_grid
        self.s_max = s_max
        self.step = step
        self.C0 = EULER_GAMMA
        self.F_vals = sF_vals / s_grid
        self.f_vals = sf_vals / s_grid
        shift = int(round(1.0 / step))
        # Pentes données par le système lui-même
        dsF = np.zeros_like(sF_vals)
        dsf = np.zeros_like(sf_vals)
        dsF[shift:] = self.f_vals[:-shift]
        dsf[shift:] = self.F_vals[:-shift]
        # sf est nulle sur (0, 2], sF constante sur (0, 3]
        dsf[: 2 * shift] = 0.0
        self._sF = CubicHermiteSpline(s_grid, sF_vals, dsF)
        self._sf = CubicHermiteSpline(s_grid, sf_vals, dsf)

    @classmethod
    def build(cls, s_max=DEFAULT_S_MAX, step=DEFAULT_STEP):
        """
        Construit la table par intégration trapézoïdale à pas fixe

        Args:
            s_max (float): Borne supérieure (par défaut: 6)
            step (float): Pas de la grille, 1/step doit être entier

        Returns:
            SieveFunctionTable: Table construite
        """
        shift = int(round(1.0 / step))
        if shift <= 0 or abs(shift * step - 1.0) > 1e-12:
            raise DomainError(f"1/step doit être entier (step={step})")
        n = int(round(s_max / step))
        s = np.arange(1, n + 1, dtype=float) * step
        sF = np.empty(n)
        sf = np.empty(n)
        i3 = 3 * shift - 1
        i4 = 4 * shift - 1
        sF[: i3 + 1] = TWO_E_C0
        sf[: 2 * shift] = 0.0
        ks = s[2 * shift: min(i4 + 1, n)]
        sf[2 * shift: min(i4 + 1, n)] = TWO_E_C0 * np.log(ks - 1.0)
        half = 0.5 * step
        for i in range(i3 + 1, n):
            # f(s-1) sur la grille: indice i - shift
            f_prev = sf[i - 1 - shift] / s[i - 1 - shift]
            f_curr = sf[i - shift] / s[i - shift]
            sF[i] = sF[i - 1] + half * (f_prev + f_curr)
            if i > i4:
                F_prev = sF[i - 1 - shift] / s[i - 1 - shift]
                F_curr = sF[i - shift] / s[i - shift]
                sf[i] = sf[i - 1] + half * (F_prev + F_curr)
        logger.debug(f"Table des fonctions du crible construite: {n} points, s_max={s_max}")
        return cls(s, sF, sf, s_max, step)

    def _check(self, s):
        if s <= 0 or s > self.s_max + 1e-12:
            raise DomainError(f"s={s} hors de (0, {self.s_max}]")

    def eval_F(self, s):
        """
        Fonction supérieure F(s)

        Args:
            s (float): Argument dans (0, s_max]

        Returns:
            float: F(s)
        """
        self._check(s)
        if s <= 3.0:
            return _closed_F(s)
        return float(self._sF(s)) / s

    def eval_f(self, s):
        """
        Fonction inférieure f(s)

        Args:
            s (float): Argument dans (0, s_max]

        Returns:
            float: f(s)
        """
        self._check(s)
        if s <= 4.0:
            return _closed_f(s)
        return float(self._sf(s)) / s

    def sieve_bounds(self, s):
        """Retourne le couple (F(s), f(s))"""
        return self.eval_F(s), self.eval_f(s)

    def dde_residual(self, s, h):
        """
        Résidus du système à retard par différences centrées

        Args:
            s (float): Point avec 2 + h ≤ s ≤ s_max - h
            h (float): Pas de différence dans (0, 1e-3]

        Returns:
            tuple: (|Δ_h(sF) - f(s-1)|, |Δ_h(sf) - F(s-1)|)
        """
        if not 0 < h <= 1e-3:
            raise DomainError(f"h={h} hors de (0, 1e-3]")
        if s < 2.0 + h - 1e-15 or s > self.s_max - h:
            raise DomainError(f"s={s} trop proche du bord de la table")
        d_sF = ((s + h) * self.eval_F(s + h) - (s - h) * self.eval_F(s - h)) / (2 * h)
        d_sf = ((s + h) * self.eval_f(s + h) - (s - h) * self.eval_f(s - h)) / (2 * h)
        return abs(d_sF - self.eval_f(s - 1.0)), abs(d_sf - self.eval_F(s - 1.0))


_default_table = None


def default_table():
    """Table par défaut (s_max = 6, h_s = 1e-4), construite à la première demande"""
    global _default_table
    if _default_table is None:
        _default_table = SieveFunctionTable.build()
    return _default_table


def eval_F(s):
    """F(s) sur la table par défaut"""
    return default_table().eval_F(s)


def eval_f(s):
    """f(s) sur la table par défaut"""
    return default_table().eval_f(s)


def sieve_bounds(s):
    """Couple (F(s), f(s)) sur la table par défaut"""
    return default_table().sieve_bounds(s)


def dde_residual(s, h):
    """Résidus du système à retard sur la table par défaut"""
    return default_table().dde_residual(s, h)
