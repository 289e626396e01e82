"""Scheme reports: dimension, degree, sectional genus, chi, smoothness."""

import random

from p4surfaces.analysis import (
    analyze,
    intersection_report,
    smoothness_check,
    surface_invariants_from_report,
)
from p4surfaces.ideals import Ideal, intersect, saturate
from p4surfaces.invariants import chi_of_ci_surface, liaison_link
from p4surfaces.rings import PolyRing, parse_poly

R = PolyRing(5, 31991)


def P(s):
    return parse_poly(R, s)


def I(*gens):
    return Ideal(R, list(gens), saturated=True)


def test_plane_report():
    rep = analyze(I("x3", "x4"))
    assert (rep.dim, rep.degree, rep.sectional_genus, rep.chi_O) == (2, 1, 0, 1)


def test_quintic_ci_report():
    rng = random.Random(21)
    ci = Ideal(R, [R.random_poly(5, rng), R.random_poly(5, rng)], saturated=True)
    rep = analyze(ci)
    assert (rep.dim, rep.degree) == (2, 25)
    # chi from the Koszul resolution; 2 pi - 2 = d (m + n - 4) on the section
    assert rep.chi_O == chi_of_ci_surface(5, 5)
    assert rep.sectional_genus == 76
    inv = surface_invariants_from_report(rep)
    assert inv.HK == 2 * 76 - 2 - 25


def test_bezout_degrees_on_random_complete_intersections():
    rng = random.Random(33)
    for _ in range(20):
        a = rng.randrange(1, 4)
        b = rng.randrange(1, 4)
        ci = Ideal(R, [R.random_poly(a, rng), R.random_poly(b, rng)], saturated=True)
        rep = analyze(ci)
        assert (rep.dim, rep.degree) == (2, a * b)


def test_degenerate_reports():
    assert analyze(Ideal(R, [])).whole_space
    rep = analyze(Ideal(R, [P(f"x{i}") for i in range(5)]))
    assert rep.empty


def test_two_disjoint_planes_union():
    union = intersect(I("x0", "x1"), I("x2", "x3"))
    rep = analyze(union)
    assert (rep.dim, rep.degree) == (2, 2)


def test_smooth_quadric_threefold():
    rep = smoothness_check(I("x0*x1-x2*x3+x4^2"), 1)
    assert rep.smooth


def test_quadric_cone_singular_point():
    rep = smoothness_check(I("x0*x1-x2*x3"), 1)
    assert not rep.smooth
    assert rep.singular_locus_dim == 0
    assert rep.singular_degree == 1


def test_intersection_of_two_general_planes_is_point():
    rng = random.Random(8)
    a = Ideal(R, [R.random_poly(1, rng), R.random_poly(1, rng)])
    b = Ideal(R, [R.random_poly(1, rng), R.random_poly(1, rng)])
    rep = intersection_report(a, b)
    assert (rep.dim, rep.degree) == (0, 1)


def test_unsaturated_input_is_saturated_with_flag():
    a = Ideal(R, [P("x0^2"), P("x0*x1"), P("x0*x2"), P("x0*x3"), P("x0*x4")])
    rep = analyze(a)
    assert rep.saturated is False
    assert (rep.dim, rep.degree) == (3, 1)


def test_acm_flag_on_plane():
    rep = analyze(I("x3", "x4"), acm=True)
    assert rep.acm is True
