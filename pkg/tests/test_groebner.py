"""Groebner bases, normal forms, kernels and syzygies."""

import random

from p4surfaces.groebner import (
    PositionOverTerm,
    groebner_ideal,
    groebner_module,
    kernel_of_map,
    normal_form,
    normal_form_vec,
    syzygy_columns,
)
from p4surfaces.modules import FreeModule, ModuleMap
from p4surfaces.rings import PolyRing, parse_poly

from oracles import ideal_degree_dim, staircase_dim

R = PolyRing(5, 31991)


def P(s, ring=R):
    return parse_poly(ring, s)


def test_already_reduced_basis_is_fixed():
    gb = groebner_ideal([P("x0"), P("x1")])
    assert sorted(map(str, gb.polynomials())) == ["x0", "x1"]


def test_lead_term_staircase_matches_ideal_dimensions():
    gens = [P("x0^2-x1*x2"), P("x0*x1-x2^2")]
    gb = groebner_ideal(gens)
    leads = [min(e)[1] for e in gb.elements]
    for d in range(2, 7):
        assert ideal_degree_dim(gens, d) == staircase_dim(R, leads, d)


def test_koszul_pair_syzygy():
    free = FreeModule(R, (0,))
    cols = [{(0, R.pack((1, 0, 0, 0, 0))): 1}, {(0, R.pack((0, 1, 0, 0, 0))): 1}]
    syz, _ = syzygy_columns(cols, free)
    frame = FreeModule(R, (1, 1))
    nontrivial = [s for s in syz if s]
    assert len(nontrivial) == 1
    polys = frame.to_polys(nontrivial[0])
    # (x1, -x0) up to scalar
    x0, x1 = P("x0"), P("x1")
    s0, s1 = polys
    assert s0 * x0 + s1 * x1 == R.zero()
    assert s0.monic() == x1 and (-s1).monic() == x0


def test_normal_form_of_member_is_zero():
    gens = [P("x0^2-x1*x2"), P("x0*x1-x2^2"), P("x3^3")]
    gb = groebner_ideal(gens)
    rng = random.Random(0)
    for g in gens:
        f = g * R.random_poly(2, rng)
        assert normal_form(f, gb).is_zero()


def test_constants_survive_irrelevant_ideal():
    gb = groebner_ideal([P(f"x{i}") for i in range(5)])
    assert normal_form(P("1"), gb) == P("1")


def test_normal_form_untouched_monomial():
    gb = groebner_ideal([P("x0^2"), P("x1^2")])
    assert normal_form(P("x0*x1"), gb) == P("x0*x1")


def test_normal_form_idempotent_and_linear():
    gens = [P("x0^2-x1*x2"), P("x1^3-x4^3")]
    gb = groebner_ideal(gens)
    rng = random.Random(1)
    for _ in range(15):
        u = R.random_poly(3, rng)
        v = R.random_poly(3, rng)
        nu = normal_form(u, gb)
        assert normal_form(nu, gb) == nu
        assert normal_form(u + v, gb) == normal_form(nu + v, gb)


def test_kernel_of_two_variable_row():
    free_src = FreeModule(R, (1, 1))
    free_tgt = FreeModule(R, (0,))
    m = ModuleMap(free_src, free_tgt, [[P("x0"), P("x1")]])
    ker = kernel_of_map(m)
    assert ker.source.twists == (2,)
    assert m.compose(ker).is_zero()


def test_kernel_of_koszul_contraction_has_ten_quadratic_generators():
    free_src = FreeModule(R, (1,) * 5)
    free_tgt = FreeModule(R, (0,))
    m = ModuleMap(free_src, free_tgt, [[P(f"x{i}") for i in range(5)]])
    ker = kernel_of_map(m)
    assert sorted(ker.source.twists) == [2] * 10
    assert m.compose(ker).is_zero()


def test_syzygies_of_three_variables_are_koszul():
    free = FreeModule(R, (0,))
    cols = [{(0, R.variable(i)): 1} for i in range(3)]
    syz, _ = syzygy_columns(cols, free)
    frame = FreeModule(R, (1, 1, 1))
    nontrivial = [s for s in syz if s]
    degs = sorted(frame.element_degree(s) for s in nontrivial)
    assert degs == [2, 2, 2]


def test_syzygy_of_regular_sequence_is_single_koszul_relation():
    rng = random.Random(9)
    f = R.random_poly(5, rng)
    g = R.random_poly(5, rng)
    free = FreeModule(R, (0,))
    cols = [{(0, m): c for m, c in f.d.items()}, {(0, m): c for m, c in g.d.items()}]
    syz, _ = syzygy_columns(cols, free)
    frame = FreeModule(R, (5, 5))
    nontrivial = [s for s in syz if s]
    assert [frame.element_degree(s) for s in nontrivial] == [10]


def test_syzygies_compose_to_zero():
    gens = [P("x0^2-x1*x2"), P("x0*x1-x2^2"), P("x2^2-x3*x4")]
    free = FreeModule(R, (0,))
    cols = [{(0, m): c for m, c in f.d.items()} for f in gens]
    syz, _ = syzygy_columns(cols, free)
    for s in syz:
        total = R.zero()
        comps = FreeModule(R, (2, 2, 2)).to_polys(s)
        for f, c in zip(gens, comps):
            total = total + f * c
        assert total.is_zero()


def test_reduced_basis_is_canonical_under_input_shuffle():
    gens = [P("x0^2-x1*x2"), P("x0*x1-x2^2"), P("x1^2*x3-x0*x4^2")]
    gb1 = groebner_ideal(gens)
    gb2 = groebner_ideal(list(reversed(gens)))
    assert [e for e in gb1.elements] == [e for e in gb2.elements]


def test_rationals_small_groebner():
    RQ = PolyRing(3, 0, names=("x", "y", "z"))
    x2y = parse_poly(RQ, "x^2-y*z")
    xyz = parse_poly(RQ, "x*y-z^2")
    gb = groebner_ideal([x2y, xyz])
    for g in [x2y, xyz]:
        assert normal_form(g, gb).is_zero()


def test_position_over_term_harvest_order():
    # elements with any weight in earlier positions cannot lead at the last
    free = FreeModule(R, (0, 0))
    order = PositionOverTerm(free)
    assert order.key(0, R.pack((0, 0, 0, 0, 9))) < order.key(1, 0)


def test_module_groebner_membership():
    free = FreeModule(R, (0, 1))
    cols = [
        free.from_polys([P("x0"), P("1")]),
        free.from_polys([P("x1^2"), P("x2")]),
    ]
    gb = groebner_module(cols, free)
    for c in cols:
        assert not normal_form_vec(c, gb)
