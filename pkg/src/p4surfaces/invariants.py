"""Closed-form integer invariants of smooth surfaces in P^4.

Everything is exact integer arithmetic; any forced non-integer value raises,
which catches invalid invariant triples early.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction


def binom(n, k):
    """Generalized binomial coefficient, exact for any integer n."""
    if k < 0:
        return 0
    out = Fraction(1)
    for i in range(k):
        out *= Fraction(n - i, i + 1)
    assert out.denominator == 1
    return int(out)


def _as_int(x, what):
    f = Fraction(x)
    if f.denominator != 1:
        raise ValueError(f"{what} is not an integer: {f}")
    return int(f)


@dataclass(frozen=True)
class SurfaceInvariants:
    d: int
    pi: int
    chi: int
    K2: int = None

    @property
    def HK(self):
        # adjunction on the hyperplane class
        return 2 * self.pi - 2 - self.d

    def double_point_residual(self):
        return double_point_residual(self.d, self.HK, self.K2, self.chi)


def double_point_residual(d, HK, K2, chi):
    """d^2 - 10d - 5 H.K - 2 K^2 + 12 chi; zero for smooth surfaces in P^4."""
    return d * d - 10 * d - 5 * HK - 2 * K2 + 12 * chi


def k2_from_double_point(d, pi, chi):
    """K^2 forced by the double point formula."""
    HK = 2 * pi - 2 - d
    return _as_int(Fraction(d * d - 10 * d - 5 * HK + 12 * chi, 2), "K^2")


def k2_degree12(pi, chi):
    """Degree-12 specialization: K^2 = 47 - 5 pi + 6 chi."""
    return 47 - 5 * pi + 6 * chi


def le_barz(d, pi, chi):
    """Six-secant count N6 with the intermediate double-curve invariants.

    delta: double-curve degree of a general projection; t: apparent triple
    points; h: apparent double points on the double curve.
    """
    delta = binom(d - 1, 2) - pi
    t = binom(d - 1, 3) - pi * (d - 3) + 2 * chi - 2
    h = _as_int(Fraction(delta * (delta - d + 2) - 3 * t, 2), "h")
    n6 = (
        Fraction(-d * (d - 4) * (d - 5) * (d**3 + 30 * d**2 - 577 * d + 786), 144)
        + delta * (2 * binom(d, 4) + 2 * binom(d, 3) - 45 * binom(d, 2) + 148 * d - 317)
        - Fraction(binom(delta, 2) * (d * d - 27 * d + 120), 2)
        - 2 * binom(delta, 3)
        + h * (delta - 8 * d + 56)
        + t * (9 * d - 3 * delta - 28)
        + binom(t, 2)
    )
    return {"delta": delta, "t": t, "h": h, "N6": _as_int(n6, "N6")}


def liaison_link(d, pi, m, n):
    """(d', pi') of the residual in a complete intersection of degrees m, n."""
    if m * n <= d:
        raise ValueError("complete intersection too small for linkage")
    d2 = m * n - d
    pi2 = _as_int(Fraction(2 * pi - (m + n - 4) * (d - d2), 2), "sectional genus")
    return d2, pi2


def chi_of_ci_surface(m, n, t=0):
    """chi(O_V(t)) for the complete intersection surface V of degrees m, n."""
    return (
        binom(t + 4, 4)
        - binom(t - m + 4, 4)
        - binom(t - n + 4, 4)
        + binom(t - m - n + 4, 4)
    )


def chi_twist(d, pi, chi, t):
    """chi(O_S(t)) by Riemann-Roch on a polarized surface."""
    HK = 2 * pi - 2 - d
    return _as_int(chi + Fraction(t * t * d - t * HK, 2), "chi of twist")


def liaison_chi(d, pi, chi, m, n, chi_ci=None):
    """chi(O) of the residual surface: chi(V cap V') - chi(O_S(m+n-5))."""
    if chi_ci is None:
        chi_ci = chi_of_ci_surface(m, n)
    return chi_ci - chi_twist(d, pi, chi, m + n - 5)


@dataclass(frozen=True)
class AdjunctionRow:
    Hsq: int
    HK: int
    Ksq: int
    pi: int = None
    ambient_dim: int = None


def adjunction_step(row: AdjunctionRow, chi, contracted_lines=0):
    """Numeric adjunction: (H, K) -> (H + K, K) after contracting
    `contracted_lines` many (-1)-lines.

    The ambient dimension is h^0(H + K) - 1 = chi + (H1^2 - H1.K1)/2 - 1,
    valid under the vanishing the adjunction-theory setup provides.
    """
    a = contracted_lines
    h1 = row.Hsq + 2 * row.HK + row.Ksq
    hk1 = row.HK + row.Ksq
    k1 = row.Ksq + a
    pi1 = _as_int(Fraction(h1 + hk1, 2) + 1, "adjoint sectional genus")
    ambient = _as_int(chi + Fraction(h1 - hk1, 2) - 1, "ambient dimension")
    return AdjunctionRow(h1, hk1, k1, pi1, ambient)


def severi_genus(chi, h1OH, h0KmH):
    """Sectional genus of a degree-12 linearly normal surface via Riemann-Roch."""
    return chi + 8 + h1OH - h0KmH


def severi_residual(pi, chi, h1OH, h0KmH):
    return pi - severi_genus(chi, h1OH, h0KmH)


def chi_ideal_sheaf(p, inv: SurfaceInvariants):
    """chi(I_S(p)) = chi(O_P4(p)) - chi(O_S(p))."""
    if inv.d == 0:
        return binom(p + 4, 4) - inv.chi
    return binom(p + 4, 4) - chi_twist(inv.d, inv.pi, inv.chi, p)


def bott_h0(p, t):
    """h^0(P^4, Omega^p(t)) by Bott's formula; zero for t <= p."""
    if not 0 <= p <= 4:
        raise ValueError("exterior power out of range")
    if p == 0:
        return binom(t + 4, 4) if t >= 0 else 0
    if t <= p:
        return 0
    return math.comb(t + 4 - p, 4 - p) * math.comb(t - 1, p)


def cohomology_table(inv: SurfaceInvariants, assumptions, pmax=5):
    """Table of h^i(I_S(p)) for 0 <= p <= pmax under stated vanishing.

    assumptions: q, pg, h0_zero_through (no hypersurfaces of degree <= this),
    plus optional `known` entries {(i, p): value}.  Each column must satisfy
    h0 - h1 + h2 - h3 = chi(I_S(p)); a single missing entry per column is
    solved from that, the rest stay symbolic (None).
    """
    q = assumptions.get("q", 0)
    pg = assumptions.get("pg", 0)
    m0 = assumptions.get("h0_zero_through", 0)
    h1z = assumptions.get("h1_zero_through", 1)
    known = dict(assumptions.get("known", {}))
    table = {}
    for p in range(pmax + 1):
        col = [None, None, None, None]
        if p <= m0:
            col[0] = 0
        if p <= h1z:
            col[1] = 0
        if p == 0:
            col[2] = q
            col[3] = pg
        if p >= 1:
            col[3] = 0
        for i in range(4):
            if (i, p) in known:
                col[i] = known[(i, p)]
        chi = chi_ideal_sheaf(p, inv)
        missing = [i for i in range(4) if col[i] is None]
        signed = lambda i, v: v if i % 2 == 0 else -v
        if not missing:
            total = sum(signed(i, col[i]) for i in range(4))
            if total != chi:
                raise ValueError(f"over-constrained column p={p}: {total} != {chi}")
        elif len(missing) == 1:
            i = missing[0]
            rest = sum(signed(k, col[k]) for k in range(4) if k != i)
            v = chi - rest
            if i % 2 == 1:
                v = -v
            if v < 0:
                raise ValueError(f"negative forced entry h^{i}(I({p})) = {v}")
            col[i] = v
        table[p] = col
    return table
