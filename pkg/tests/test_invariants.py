"""Integer invariant formulas: double point, Le Barz, liaison, adjunction."""

import random

import pytest

from p4surfaces.invariants import (
    AdjunctionRow,
    SurfaceInvariants,
    adjunction_step,
    bott_h0,
    binom,
    chi_ideal_sheaf,
    chi_of_ci_surface,
    cohomology_table,
    double_point_residual,
    k2_degree12,
    k2_from_double_point,
    le_barz,
    liaison_chi,
    liaison_link,
    severi_genus,
    severi_residual,
)

SURFACE_ROWS = [
    # (d, pi, chi, K2)
    (12, 13, 3, 0),
    (12, 14, 3, -5),
    (13, 16, 2, -11),
    (14, 19, 2, -15),
    (15, 22, 4, -6),
    (7, 6, 3, 0),
    (5, 2, 1, 1),
]


@pytest.mark.parametrize("d,pi,chi,k2", SURFACE_ROWS)
def test_double_point_residual_vanishes_on_surface_rows(d, pi, chi, k2):
    hk = 2 * pi - 2 - d
    assert double_point_residual(d, hk, k2, chi) == 0
    assert SurfaceInvariants(d, pi, chi, k2).double_point_residual() == 0


def test_k2_degree12_values():
    assert k2_degree12(13, 3) == 0
    assert k2_degree12(14, 3) == -5


def test_k2_degree12_is_double_point_specialization():
    rng = random.Random(0)
    for _ in range(50):
        pi, chi = rng.randrange(0, 40), rng.randrange(-5, 10)
        assert k2_degree12(pi, chi) == k2_from_double_point(12, pi, chi)


def test_le_barz_on_minimal_elliptic_surface():
    out = le_barz(12, 13, 3)
    assert out == {"delta": 42, "t": 52, "h": 594, "N6": 10}


def test_le_barz_paper_values():
    assert le_barz(12, 14, 3)["N6"] == 4
    assert le_barz(13, 16, 2)["N6"] == 10


def test_adjunction_step_rejects_non_integer_genus():
    with pytest.raises(ValueError):
        adjunction_step(AdjunctionRow(9, 0, 0), chi=1)  # odd H^2 + HK


def test_liaison_link_paper_values():
    assert liaison_link(12, 13, 5, 5) == (13, 16)
    assert liaison_link(18, 39, 5, 5) == (7, 6)
    assert liaison_link(11, 10, 5, 5) == (14, 19)
    assert liaison_link(10, 7, 5, 5) == (15, 22)
    assert liaison_link(1, 0, 2, 4) == (7, 6)


def test_liaison_link_requires_room():
    with pytest.raises(ValueError):
        liaison_link(26, 10, 5, 5)


def test_liaison_chi_values():
    assert chi_of_ci_surface(5, 5) == 125
    assert liaison_chi(12, 13, 3, 5, 5) == 2  # minimal elliptic -> K3
    assert liaison_chi(11, 10, 3, 5, 5) == 2  # union scheme -> degree-14 K3
    assert liaison_chi(1, 0, 1, 2, 4) == 3  # plane -> degree-7 elliptic
    assert liaison_chi(10, 7, 1, 5, 5) == 4  # degree-10 union -> degree-15 surface


def test_liaison_chi_involution():
    for d, pi, chi in [(12, 13, 3), (11, 10, 3), (10, 7, 1)]:
        d2, pi2 = liaison_link(d, pi, 5, 5)
        chi2 = liaison_chi(d, pi, chi, 5, 5)
        assert liaison_link(d2, pi2, 5, 5) == (d, pi)
        assert liaison_chi(d2, pi2, chi2, 5, 5) == chi


def test_adjunction_table_degree13_k3():
    x = AdjunctionRow(13, 17, -11)
    x1 = adjunction_step(x, chi=2, contracted_lines=10)
    assert (x1.Hsq, x1.HK, x1.Ksq, x1.pi, x1.ambient_dim) == (36, 6, -1, 22, 16)
    x2 = adjunction_step(AdjunctionRow(x1.Hsq, x1.HK, x1.Ksq), chi=2)
    assert (x2.Hsq, x2.HK, x2.pi, x2.ambient_dim) == (47, 5, 27, 22)
    assert x2.Ksq == -1  # -1 + b with no conics recorded


def test_adjunction_table_degree12_elliptic():
    s = AdjunctionRow(12, 14, -5)
    s1 = adjunction_step(s, chi=3, contracted_lines=4)  # four (-1)-lines, case alpha
    assert (s1.Hsq, s1.HK, s1.Ksq, s1.pi) == (35, 9, -1, 23)
    # the printed first-adjoint ambient P^16 is a misprint; the formula the
    # paper itself uses everywhere else forces h^0(H+K) - 1 = 15
    assert s1.ambient_dim == 15
    s2 = adjunction_step(AdjunctionRow(s1.Hsq, s1.HK, s1.Ksq), chi=3)
    # a = 4 in the displayed 48+a / 4+a / 27+a row
    assert (s2.Hsq, s2.HK, s2.Ksq, s2.pi, s2.ambient_dim) == (52, 8, -1, 31, 24)


def test_adjunction_table_degree12_symbolic_row():
    # with the contraction count left symbolic (a = 0) the displayed
    # 48 + a / 4 + a / 27 + a row is reproduced
    s1 = adjunction_step(AdjunctionRow(12, 14, -5), chi=3, contracted_lines=0)
    s2 = adjunction_step(AdjunctionRow(s1.Hsq, s1.HK, s1.Ksq), chi=3)
    assert (s2.Hsq, s2.HK, s2.pi, s2.ambient_dim) == (48, 4, 27, 24)


def test_adjunction_table_degree14_k3():
    s = AdjunctionRow(14, 22, -15)
    s1 = adjunction_step(s, chi=2, contracted_lines=10)
    assert (s1.Hsq, s1.HK, s1.Ksq, s1.pi, s1.ambient_dim) == (43, 7, -5, 26, 19)
    s2 = adjunction_step(AdjunctionRow(s1.Hsq, s1.HK, s1.Ksq), chi=2)
    assert (s2.Hsq, s2.HK, s2.Ksq, s2.pi, s2.ambient_dim) == (52, 2, -5, 28, 26)


def test_adjunction_fixed_row():
    row = adjunction_step(AdjunctionRow(8, 0, 0), chi=1, contracted_lines=0)
    assert row.Hsq == 8 and row.HK == 0 and row.Ksq == 0


def test_severi_genus():
    assert severi_genus(3, 2, 0) == 13
    assert severi_genus(3, 3, 0) == 14
    assert severi_residual(13, 3, 2, 0) == 0
    assert severi_residual(14, 3, 3, 0) == 0


def test_chi_ideal_sheaf_minimal_elliptic():
    inv = SurfaceInvariants(12, 13, 3, 0)
    # direct evaluation of C(p+4,4) - [chi + (p^2 d - p HK)/2]
    assert chi_ideal_sheaf(0, inv) == -2
    assert chi_ideal_sheaf(1, inv) == 2
    assert chi_ideal_sheaf(3, inv) == -4
    assert chi_ideal_sheaf(4, inv) == -5
    assert chi_ideal_sheaf(5, inv) == 3


def test_chi_ideal_sheaf_empty_surface():
    inv = SurfaceInvariants(0, 1, 7, 0)
    for p in range(4):
        assert chi_ideal_sheaf(p, inv) == binom(p + 4, 4) - 7


def test_cohomology_table_minimal_elliptic():
    inv = SurfaceInvariants(12, 13, 3, 0)
    table = cohomology_table(
        inv,
        {"q": 0, "pg": 2, "h0_zero_through": 4, "known": {(2, p): 0 for p in (2, 3, 4)}},
        pmax=4,
    )
    assert table[0] == [0, 0, 0, 2]  # chi = -2 = 0 - 0 + 0 - 2
    assert table[1] == [0, 0, 2, 0]  # h^2(I_S(1)) = h^1(O_S(1)) = 2
    assert table[3] == [0, 4, 0, 0]
    assert table[4] == [0, 5, 0, 0]


def test_cohomology_table_overconstrained_errors():
    inv = SurfaceInvariants(12, 13, 3, 0)
    with pytest.raises(ValueError):
        cohomology_table(
            inv, {"q": 0, "pg": 2, "h0_zero_through": 4, "known": {(1, 0): 1}}, pmax=1
        )


def test_bott_formula():
    assert bott_h0(3, 4) == 5
    assert bott_h0(1, 2) == 10
    assert bott_h0(2, 3) == 10
    assert bott_h0(2, 2) == 0
    for t in range(0, 6):
        assert bott_h0(0, t) == binom(t + 4, 4)
