"""Ideal operations: quotient, saturation, elimination, minors, images, linkage."""

import random

import pytest

from p4surfaces.ideals import (
    Ideal,
    eliminate,
    ideal_sum,
    image_of_map,
    intersect,
    intersect_many,
    irrelevant_ideal,
    is_ci_pair,
    jacobian_ideal,
    link,
    minors,
    quotient,
    saturate,
)
from p4surfaces.modules import FreeModule, ModuleMap
from p4surfaces.rings import PolyRing, parse_poly

R = PolyRing(5, 31991)


def P(s, ring=R):
    return parse_poly(ring, s)


def I(*gens):
    return Ideal(R, list(gens))


def test_quotient_principal_by_variable():
    assert quotient(I("x0*x1"), I("x0")) == I("x1")


def test_quotient_by_hand_example():
    assert quotient(I("x0^2", "x0*x1"), I("x0")) == I("x0", "x1")


def test_quotient_contains_original_and_unit_quotient():
    a = I("x0^2-x1*x2", "x3^3")
    q = quotient(a, I("x4"))
    assert q.contains_ideal(a)
    # quotient by a unit ideal returns the ideal itself
    unit = Ideal(R, [R.constant(1)])
    assert quotient(a, unit) == a


def test_saturate_strips_embedded_component():
    a = I("x0^2", "x0*x1", "x0*x2", "x0*x3", "x0*x4")
    assert saturate(a) == I("x0")


def test_saturate_fixpoint_on_complete_intersection():
    rng = random.Random(4)
    a = Ideal(R, [R.random_poly(2, rng), R.random_poly(3, rng)])
    assert saturate(a) == a
    assert saturate(saturate(a)) == saturate(a)


def test_saturation_preserves_hilbert_polynomial():
    a = I("x0^2", "x0*x1", "x0*x2", "x0*x3", "x0*x4")
    assert saturate(a).hilbert_polynomial() == a.hilbert_polynomial()


def test_eliminate_single_linear_relation():
    out = eliminate(I("x0-x1"), [0])
    assert out.is_zero()


def test_eliminate_twisted_cubic_graph():
    # graph of the degree-3 Veronese of a line inside P^3 coordinates
    src = PolyRing(2, 31991, names=("s", "t"))
    tgt = PolyRing(4, 31991, names=("y0", "y1", "y2", "y3"))
    forms = [
        parse_poly(src, "s^3"),
        parse_poly(src, "s^2*t"),
        parse_poly(src, "s*t^2"),
        parse_poly(src, "t^3"),
    ]
    img = image_of_map(src, forms, tgt)
    degs = sorted(f.degree() for f in img.minimal_generators())
    assert degs == [2, 2, 2]
    assert img.contains(parse_poly(tgt, "y0*y2-y1^2"))
    assert img.contains(parse_poly(tgt, "y1*y3-y2^2"))
    assert img.contains(parse_poly(tgt, "y0*y3-y1*y2"))


def test_image_of_conic_parameterization():
    src = PolyRing(2, 31991, names=("s", "t"))
    tgt = PolyRing(3, 31991, names=("y0", "y1", "y2"))
    forms = [parse_poly(src, "s^2"), parse_poly(src, "s*t"), parse_poly(src, "t^2")]
    img = image_of_map(src, forms, tgt)
    assert img == Ideal(tgt, [parse_poly(tgt, "y0*y2-y1^2")])


def test_image_requires_nonzero_forms():
    src = PolyRing(2, 31991, names=("s", "t"))
    tgt = PolyRing(3, 31991, names=("y0", "y1", "y2"))
    with pytest.raises(ValueError):
        image_of_map(src, [src.zero()] * 3, tgt)


def test_minors_of_rational_normal_cubic_matrix():
    free_src = FreeModule(R, (1, 1))
    free_tgt = FreeModule(R, (0, 0, 0))
    m = ModuleMap(
        free_src,
        free_tgt,
        [[P("x0"), P("x1")], [P("x1"), P("x2")], [P("x2"), P("x3")]],
    )
    out = minors(m, 2)
    assert out == I("x0*x2-x1^2", "x0*x3-x1*x2", "x1*x3-x2^2")
    ones = minors(m, 1)
    assert ones == I("x0", "x1", "x2", "x3")


def test_jacobian_of_smooth_quadric_is_irrelevant():
    a = I("x0*x1-x2*x3+x4^2")
    jac = jacobian_ideal(a, 1)
    sat = saturate(jac)
    assert sat.contains(R.constant(1))


def test_jacobian_of_quadric_cone_finds_vertex():
    a = I("x0*x1-x2*x3")
    sing = saturate(jacobian_ideal(a, 1))
    assert sing == I("x0", "x1", "x2", "x3")


def test_intersect_principal_ideals():
    assert intersect(I("x0"), I("x1")) == I("x0*x1")


def test_intersect_is_containment_wise_correct():
    a = I("x0^2-x1*x2", "x3")
    b = I("x1", "x4^2")
    c = intersect(a, b)
    assert a.contains_ideal(c) and b.contains_ideal(c)


def test_linkage_of_plane_in_quadric_cubic():
    plane = I("x3", "x4")
    rng = random.Random(11)
    # general CI(2,3) through the plane
    q = P("x3") * R.random_poly(1, rng) + P("x4") * R.random_poly(1, rng)
    c = P("x3") * R.random_poly(2, rng) + P("x4") * R.random_poly(2, rng)
    out = link(plane, q, c)
    from p4surfaces.analysis import analyze

    rep = analyze(out, assume_saturated=True)
    assert (rep.dim, rep.degree, rep.sectional_genus) == (2, 5, 2)
    # linkage is an involution on saturated ideals
    assert link(out, q, c) == plane


def test_link_requires_containment_and_regularity():
    plane = I("x3", "x4")
    with pytest.raises(ValueError):
        link(plane, P("x0"), P("x1*x3-x4^2"))
    with pytest.raises(ValueError):
        link(plane, P("x3"), P("x3*x0"))


def test_is_ci_pair():
    rng = random.Random(3)
    assert is_ci_pair(R.random_poly(2, rng), R.random_poly(3, rng))
    assert not is_ci_pair(P("x0*x1"), P("x0*x2"))


def test_minimal_generators_of_saturated_plane_union():
    two_planes = intersect(I("x0", "x1"), I("x2", "x3"))
    degs = sorted(f.degree() for f in two_planes.minimal_generators())
    assert degs == [2, 2, 2, 2]
