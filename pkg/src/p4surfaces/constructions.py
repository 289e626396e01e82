"""Construction kit for the surface recipes: Moore matrices, twisted
cotangent presentations, the derived modules, and the degeneracy-locus
pipeline that turns a module morphism into a saturated surface ideal."""

from __future__ import annotations

from itertools import combinations

import numpy as np

from . import linalg
from .groebner import kernel_of_map
from .homological import _prune_complex, free_resolution, module_hilbert
from .ideals import Ideal, saturate
from .invariants import bott_h0
from .modules import FreeModule, ModuleMap, ModulePresentation
from .rings import Polynomial


class ConstructionError(RuntimeError):
    """A construction stage failed its verification."""

    def __init__(self, stage, detail):
        super().__init__(f"{stage}: {detail}")
        self.stage = stage
        self.detail = detail


DEFAULT_MOORE_POINTS = ((1, 0, 0, 0, 0), (0, 1, 0, 0, 1), (0, 0, 1, 1, 0))
DEFAULT_XI = (1, -1, 1, -1, 1)


# -- Moore matrices and the Horrocks-Mumford cohomology module ---------------


def moore_matrix(ring, z):
    """5x5 block with entry (i, j) = x_{i+j} z_{i-j}, indices mod 5."""
    if not any(z):
        raise ConstructionError("moore-matrix", "parameter point is zero")
    rows = []
    for i in range(5):
        row = []
        for j in range(5):
            c = z[(i - j) % 5]
            row.append(ring.var((i + j) % 5).scale(c) if c else ring.zero())
        rows.append(row)
    return ModuleMap(FreeModule(ring, (1,) * 5), FreeModule(ring, (0,) * 5), rows)


def hm_gamma(ring, points=DEFAULT_MOORE_POINTS):
    """The 5x15 concatenation (M_z0 | M_z1 | M_z2)."""
    blocks = [moore_matrix(ring, z) for z in points]
    rows = [sum((b.matrix[i] for b in blocks), []) for i in range(5)]
    return ModuleMap(FreeModule(ring, (1,) * 15), FreeModule(ring, (0,) * 5), rows)


def hm_module(ring, points=DEFAULT_MOORE_POINTS):
    """Presentation of the H^1 cohomology module of the rank-2 bundle."""
    gamma = hm_gamma(ring, points)
    return ModulePresentation((0,) * 5, gamma)


def _multiplication_cokernel_rank(ring, gamma, xi, deg):
    """Rank data for the multiplication by xi into coker(gamma) in degree deg."""
    p = ring.char
    monos = ring.monomials_of_degree(deg)
    idx = {(i, m): k for k, (i, m) in enumerate((i, m) for i in range(5) for m in monos)}
    rows = []
    for j in range(15):
        col = gamma.column(j)
        for m in ring.monomials_of_degree(deg - 1):
            row = [0] * len(idx)
            for (i, mm), c in col.items():
                row[idx[(i, mm + m)]] = c
            rows.append(row)
    base = np.array(rows, dtype=np.int64)
    base_rank = linalg.rank(base, p)
    mult_rows = []
    for m in ring.monomials_of_degree(deg):
        row = [0] * len(idx)
        for i in range(5):
            if xi[i]:
                row[idx[(i, m)]] = xi[i] % p
        mult_rows.append(row)
    joint = np.vstack([base, np.array(mult_rows, dtype=np.int64)])
    joint_rank = linalg.rank(joint, p)
    return base_rank, joint_rank, len(idx)


def hm_derived_module(ring, rng, xi=DEFAULT_XI, points=DEFAULT_MOORE_POINTS, retries=5):
    """Presentation of the artinian module with Hilbert function (4, 5).

    tau is a random rank-4 matrix annihilating xi; the genericity of xi is
    certified by rank computations on the multiplication maps (injective on
    linear forms, surjective on quadrics).
    """
    p = ring.char
    if not any(c % p for c in xi):
        raise ConstructionError("hm-derived-module", "extension class is zero")
    gamma = hm_gamma(ring, points)
    base1, joint1, _ = _multiplication_cokernel_rank(ring, gamma, xi, 1)
    if joint1 - base1 != 5:
        raise ConstructionError(
            "hm-derived-module", "multiplication by the extension class is not injective"
        )
    base2, joint2, total2 = _multiplication_cokernel_rank(ring, gamma, xi, 2)
    if joint2 != total2:
        raise ConstructionError(
            "hm-derived-module", "multiplication by the extension class is not surjective"
        )
    xi_vec = np.array([c % p for c in xi], dtype=np.int64)
    perp = linalg.nullspace(xi_vec.reshape(1, 5), p)  # 4 x 5
    tau = None
    for _ in range(retries):
        coeffs = np.array(
            [[rng.randrange(p) for _ in range(4)] for _ in range(4)], dtype=np.int64
        )
        cand = (coeffs @ perp) % p
        if linalg.rank(cand, p) == 4:
            tau = cand
            break
    if tau is None:
        raise ConstructionError("hm-derived-module", "no rank-4 annihilator found")
    rows = []
    for r in range(4):
        row = []
        for j in range(15):
            f = ring.zero()
            for i in range(5):
                if tau[r, i]:
                    f = f + gamma.matrix[i][j].scale(int(tau[r, i]))
            row.append(f)
        rows.append(row)
    psi = ModuleMap(FreeModule(ring, (1,) * 15), FreeModule(ring, (0,) * 4), rows)
    return ModulePresentation((0,) * 4, psi)


def generic_linear_module(ring, rng, nrows=4, ncols=15):
    """coker of a random matrix of linear forms (the general-psi baseline)."""
    rows = [
        [ring.random_poly(1, rng) for _ in range(ncols)] for _ in range(nrows)
    ]
    psi = ModuleMap(FreeModule(ring, (1,) * ncols), FreeModule(ring, (0,) * nrows), rows)
    return ModulePresentation((0,) * nrows, psi)


# -- twisted cotangent modules ----------------------------------------------


def _ext_basis(q):
    return list(combinations(range(5), q))


def koszul_contraction(ring, q, source_gen_degree):
    """Contraction with the Euler element: Lambda^q -> Lambda^{q-1} (1)."""
    src_basis = _ext_basis(q)
    tgt_basis = _ext_basis(q - 1)
    tgt_index = {T: i for i, T in enumerate(tgt_basis)}
    cols = {j: {} for j in range(len(src_basis))}
    for j, T in enumerate(src_basis):
        for k, t in enumerate(T):
            rest = T[:k] + T[k + 1 :]
            sign = 1 if k % 2 == 0 else -1
            cols[j][tgt_index[rest]] = (sign, t)
    matrix = []
    for i in range(len(tgt_basis)):
        row = []
        for j in range(len(src_basis)):
            hit = cols[j].get(i)
            row.append(ring.var(hit[1]).scale(hit[0]) if hit else ring.zero())
        matrix.append(row)
    src = FreeModule(ring, (source_gen_degree,) * len(src_basis))
    tgt = FreeModule(ring, (source_gen_degree - 1,) * len(tgt_basis))
    return ModuleMap(src, tgt, matrix)


def twisted_cotangent_module(ring, p):
    """Sections module of Omega^p(p), graded so that the degree-d piece is
    h^0(Omega^p(d)); generators sit in degree p + 1."""
    if not 1 <= p <= 3:
        raise ValueError("exterior power out of range")
    rel = koszul_contraction(ring, p + 2, p + 2)
    return ModulePresentation(rel.target.twists, rel)


def verify_cotangent_hilbert(ring, p, window=range(0, 8)):
    pres = twisted_cotangent_module(ring, p)
    h = module_hilbert(pres, window=window)
    return all(h.function[d] == bott_h0(p, d) for d in window)


def contraction_functional(ring, T, w):
    """Linear form <w, contraction_e(e_T^*)> for w given on the (q-1)-subsets."""
    f = ring.zero()
    for k, t in enumerate(T):
        rest = T[:k] + T[k + 1 :]
        c = w.get(rest, 0)
        if c:
            f = f + ring.var(t).scale(c if k % 2 == 0 else -c)
    return f


# -- presentation utilities ---------------------------------------------------


def minimize_presentation(pres: ModulePresentation):
    ring = pres.ring
    frames = [list(pres.gen_module.twists), list(pres.relations.source.twists)]
    cols = [pres.relations.column(j) for j in range(pres.relations.source.rank)]
    frames, maps_cols = _prune_complex(ring, frames, [cols])
    gen = FreeModule(ring, tuple(frames[0]))
    if not maps_cols:
        return ModulePresentation(gen.twists, ring=ring)
    src = FreeModule(ring, tuple(frames[1]))
    return ModulePresentation(
        gen.twists, ModuleMap.from_columns(src, gen, maps_cols[0])
    )


def presentation_of_step(res, k):
    """coker of the k-th differential: gens = frame k, relations = maps[k]."""
    return ModulePresentation(res.frames[k].twists, res.maps[k])


def random_element(free: FreeModule, degree, rng, positions=None):
    """Random homogeneous element of a free module with uniform coefficients."""
    ring = free.ring
    p = ring.char
    vec = {}
    for i, t in enumerate(free.twists):
        if positions is not None and i not in positions:
            continue
        d = degree - t
        if d < 0:
            continue
        for m in ring.monomials_of_degree(d):
            c = rng.randrange(p)
            if c:
                vec[(i, m)] = c
    return vec


# -- ideal extraction from a twisted-ideal module -----------------------------


def extract_ideal(c_pres: ModulePresentation, expect_unique=True):
    """Recover the underlying ideal of a module isomorphic to a twisted ideal.

    Hom(C, R) is the kernel of the transposed relation matrix; its lowest
    nonzero graded piece must be one-dimensional, and the components of that
    generator are the ideal generators (up to a twist).
    """
    small = minimize_presentation(c_pres)
    rel_t = small.relations.transpose_dual(0)
    ker = kernel_of_map(rel_t)
    if ker.source.rank == 0:
        raise ConstructionError("ideal-extraction", "transposed kernel is zero")
    twists = ker.source.twists
    s = min(twists)
    if expect_unique and twists.count(s) != 1:
        raise ConstructionError(
            "ideal-extraction",
            f"degeneracy not of expected codimension: {twists.count(s)} morphisms",
        )
    j = twists.index(s)
    ring = c_pres.ring
    gens = [ker.matrix[i][j] for i in range(ker.target.rank)]
    gens = [g for g in gens if g]
    ideal = Ideal(ring, gens)
    return saturate(ideal), s


def degeneracy_pipeline(f_pres: ModulePresentation, phi_columns, expect_unique=True):
    """coker of (phi + relations) inside the module F, then ideal extraction."""
    ring = f_pres.ring
    gen = f_pres.gen_module
    rel_cols = [
        f_pres.relations.column(j) for j in range(f_pres.relations.source.rank)
    ]
    all_cols = list(phi_columns) + rel_cols
    twists = tuple(gen.element_degree(c) for c in all_cols)
    rel = ModuleMap.from_columns(FreeModule(ring, twists), gen, all_cols)
    c_pres = ModulePresentation(gen.twists, rel)
    return extract_ideal(c_pres, expect_unique=expect_unique)
