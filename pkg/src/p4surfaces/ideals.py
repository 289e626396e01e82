"""Homogeneous ideals and the liaison-theoretic operations on them.

Quotients and intersections run through position-elimination module
Groebner bases (POT order, harvest of the last position); saturation is
the fixpoint of quotients by the irrelevant ideal; images of rational maps
go through a weighted graph ring plus block elimination.
"""

from __future__ import annotations

import numpy as np

from . import linalg
from .groebner import (
    PositionOverTerm,
    groebner_ideal,
    module_buchberger,
    normal_form,
)
from .homological import (
    Resolution,
    free_resolution,
    hilbert_numerator,
    hilbert_polynomial_from_numerator,
    _minimalize_monomials,
)
from .modules import FreeModule, ModuleMap, ModulePresentation
from .rings import PolyRing, Polynomial, parse_poly


class Ideal:
    """Homogeneous ideal with cached Groebner data."""

    def __init__(self, ring, gens, saturated=None):
        self.ring = ring
        clean = []
        for f in gens:
            if isinstance(f, str):
                f = parse_poly(ring, f)
            if f.ring != ring:
                raise ValueError("generator in wrong ring")
            if f:
                if not f.is_homogeneous():
                    raise ValueError("inhomogeneous generator")
                clean.append(f)
        self.gens = tuple(clean)
        self.saturated = saturated
        self._gb = None
        self._numerator = None
        self._hp = None
        self._min_gens = None

    # -- cached groebner data ---------------------------------------------
    def groebner(self):
        if self._gb is None:
            if not self.gens:
                raise ValueError("zero ideal has no Groebner basis")
            self._gb = groebner_ideal(list(self.gens))
        return self._gb

    def is_zero(self):
        return not self.gens

    def lead_monomials(self):
        return [min(e)[1] for e in self.groebner().elements]

    def groebner_polys(self):
        return self.groebner().polynomials()

    def numerator(self):
        """Hilbert series numerator of R/I."""
        if self._numerator is None:
            leads = [] if self.is_zero() else self.lead_monomials()
            self._numerator = hilbert_numerator(self.ring, leads)
        return self._numerator

    def hilbert_polynomial(self):
        if self._hp is None:
            self._hp = hilbert_polynomial_from_numerator(self.numerator(), self.ring.nvars)
        return self._hp

    def hilbert_function(self, d):
        import math

        n = self.ring.nvars
        return sum(
            c * math.comb(d - j + n - 1, n - 1)
            for j, c in self.numerator().items()
            if d - j >= 0
        )

    def contains(self, f):
        if isinstance(f, str):
            f = parse_poly(self.ring, f)
        if not f:
            return True
        if self.is_zero():
            return False
        return normal_form(f, self.groebner()).is_zero()

    def contains_ideal(self, other):
        return all(self.contains(f) for f in other.gens)

    def __eq__(self, other):
        if not isinstance(other, Ideal) or other.ring != self.ring:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return self.is_zero() and other.is_zero()
        return self.groebner().elements == other.groebner().elements

    def __repr__(self):
        degs = [f.degree() for f in self.gens]
        return f"Ideal({len(self.gens)} gens, degrees {sorted(degs)})"

    # -- generators ---------------------------------------------------------
    def degree_piece(self, d):
        """Basis rows of the degree-d piece, as coefficient vectors."""
        ring = self.ring
        basis = {m: k for k, m in enumerate(ring.monomials_of_degree(d))}
        rows = []
        for g in self.groebner_polys():
            dg = g.degree()
            if dg > d:
                continue
            for m in ring.monomials_of_degree(d - dg):
                row = [0] * len(basis)
                for k, c in g.d.items():
                    row[basis[k + m]] = c
                rows.append(row)
        return np.array(rows, dtype=np.int64) if rows else np.zeros((0, len(basis)), dtype=np.int64)

    def minimal_generators(self):
        """Minimal homogeneous generators, selected degreewise from the basis."""
        if self._min_gens is not None:
            return self._min_gens
        if self.is_zero():
            self._min_gens = ()
            return self._min_gens
        ring = self.ring
        p = ring.char
        gb = self.groebner_polys()
        degs = sorted({g.degree() for g in gb})
        kept = []
        for d in range(degs[0], max(degs) + 1):
            candidates = [g for g in gb if g.degree() == d]
            if not candidates and not kept:
                continue
            basis = {m: k for k, m in enumerate(ring.monomials_of_degree(d))}
            rows = []
            for g in kept:
                dg = g.degree()
                for m in ring.monomials_of_degree(d - dg):
                    if d - dg == 0:
                        continue
                    row = [0] * len(basis)
                    for k, c in g.d.items():
                        row[basis[k + m]] = c
                    rows.append(row)
            base = np.array(rows, dtype=np.int64) if rows else np.zeros((0, len(basis)), dtype=np.int64)
            rank0 = linalg.rank(base, p)
            for g in candidates:
                row = [0] * len(basis)
                for k, c in g.d.items():
                    row[basis[k]] = c
                trial = np.vstack([base, np.array([row], dtype=np.int64)])
                if linalg.rank(trial, p) > rank0:
                    kept.append(g)
                    base = trial
                    rank0 += 1
        self._min_gens = tuple(kept)
        return self._min_gens

    def presentation(self):
        """Presentation of R/I by its minimal generators."""
        gens = self.minimal_generators()
        gen = FreeModule(self.ring, (0,))
        src = FreeModule(self.ring, tuple(f.degree() for f in gens))
        return ModulePresentation((0,), ModuleMap(src, gen, [list(gens)]))

    def resolution(self, minimize=True) -> Resolution:
        return free_resolution(self.presentation(), minimize=minimize)

    def betti(self):
        """Betti table of the ideal module (index 0 = minimal generators)."""
        quotient_betti = self.resolution().betti()
        from .homological import BettiTable

        return BettiTable(
            {(i - 1, d): v for (i, d), v in quotient_betti.entries.items() if i >= 1}
        )


def ideal(ring, gens):
    return Ideal(ring, gens)


def irrelevant_ideal(ring):
    return Ideal(ring, ring.gens(), saturated=False)


def ideal_sum(a: Ideal, b: Ideal):
    return Ideal(a.ring, list(a.gens) + list(b.gens))


# -- quotient / intersection / saturation ----------------------------------


def _harvest(columns, free, block):
    """Module GB harvest: last-position components of elements supported
    entirely at position `block` (POT makes earlier positions dominate)."""
    order = PositionOverTerm(free)
    eng = module_buchberger(columns, free, order=order)
    ring = free.ring
    out = []
    for vec, lead in zip(eng.basis, eng.leads):
        if lead[0] == block:
            assert all(i == block for (i, _) in vec)
            out.append(Polynomial(ring, {m: c for (_, m), c in vec.items()}))
    return out


def intersect(a: Ideal, b: Ideal):
    """I cap J; the scheme-theoretic union of the two subschemes."""
    if a.is_zero() or b.is_zero():
        return Ideal(a.ring, [])
    ring = a.ring
    free = FreeModule(ring, (0, 0))
    cols = []
    for g in a.minimal_generators():
        cols.append(free.from_polys([g, g]))
    for h in b.minimal_generators():
        cols.append(free.from_polys([h, ring.zero()]))
    sat = True if (a.saturated and b.saturated) else None
    return Ideal(ring, _harvest(cols, free, 1), saturated=sat)


def intersect_many(ideals):
    out = ideals[0]
    for nxt in ideals[1:]:
        out = intersect(out, nxt)
    return out


def quotient(a: Ideal, b: Ideal):
    """Ideal quotient a : b = {f : f*b in a}."""
    if b.is_zero():
        return a
    if a.is_zero():
        return a
    ring = a.ring
    hs = list(b.minimal_generators())
    gs = list(a.minimal_generators())
    s = len(hs)
    twists = tuple(-h.degree() for h in hs) + (0,)
    free = FreeModule(ring, twists)
    cols = []
    main = {}
    for t, h in enumerate(hs):
        for m, c in h.d.items():
            main[(t, m)] = c
    main[(s, 0)] = 1
    cols.append(main)
    for t in range(s):
        for g in gs:
            cols.append({(t, m): c for m, c in g.d.items()})
    return Ideal(ring, _harvest(cols, free, s))


def saturate(a: Ideal, b: Ideal = None):
    """Saturation: iterate quotients by b (default: the irrelevant ideal)."""
    if a.is_zero():
        return a
    if b is None:
        b = irrelevant_ideal(a.ring)
    against_irrelevant = tuple(b.gens) == tuple(a.ring.gens())
    cur = a
    while True:
        nxt = quotient(cur, b)
        if nxt == cur:
            out = Ideal(a.ring, cur.gens, saturated=True if against_irrelevant else cur.saturated)
            out._gb = cur._gb
            out._numerator = cur._numerator
            return out
        cur = nxt


def is_saturated(a: Ideal):
    return saturate(a) == a


# -- elimination and images -------------------------------------------------


def eliminate(a: Ideal, var_indices, target_ring=None):
    """Intersection with the subring on the remaining variables."""
    ring = a.ring
    drop = sorted(set(var_indices))
    keep = [i for i in range(ring.nvars) if i not in drop]
    if target_ring is None:
        target_ring = PolyRing(
            len(keep),
            ring.char,
            names=tuple(ring.names[i] for i in keep),
            weights=None,
        )
    if a.is_zero():
        return Ideal(target_ring, [])
    weights = ring.weights or (1,) * ring.nvars
    block_ring = PolyRing(
        ring.nvars,
        ring.char,
        names=tuple(ring.names[i] for i in drop) + tuple(ring.names[i] for i in keep),
        weights=tuple(weights[i] for i in drop) + tuple(weights[i] for i in keep),
        elim=len(drop),
    )
    perm = drop + keep
    moved = []
    for f in a.gens:
        moved.append(
            block_ring.from_terms(
                [(c, tuple(ring.unpack(m)[i] for i in perm)) for m, c in f.d.items()]
            )
        )
    gb = groebner_ideal(moved)
    out = []
    nd = len(drop)
    for g in gb.polynomials():
        exps = block_ring.unpack(g.lead_monomial())
        if any(exps[:nd]):
            continue
        out.append(
            target_ring.from_terms(
                [(c, block_ring.unpack(m)[nd:]) for m, c in g.d.items()]
            )
        )
    return Ideal(target_ring, out)


def image_of_map(source_ring, forms, target_ring, base_ideal=None):
    """Saturated ideal of the closed image of the rational map given by forms.

    Graph ideal in a weighted product ring, block elimination of the source
    variables, then saturation in the target.
    """
    if not forms or all(f.is_zero() for f in forms):
        raise ValueError("map must be given by nonzero forms")
    if len(forms) != target_ring.nvars:
        raise ValueError("form count must match target variable count")
    e = {f.degree() for f in forms if f}
    if len(e) != 1:
        raise ValueError("forms must share one degree")
    e = e.pop()
    n, k = source_ring.nvars, target_ring.nvars
    names = tuple(f"s_{nm}" for nm in source_ring.names) + tuple(target_ring.names)
    graph_ring = PolyRing(
        n + k,
        source_ring.char,
        names=names,
        weights=(1,) * n + (e,) * k,
        elim=n,
    )
    gens = []
    for j, f in enumerate(forms):
        terms = [(-c, source_ring.unpack(m) + (0,) * k) for m, c in f.d.items()]
        exps = [0] * (n + k)
        exps[n + j] = 1
        terms.append((1, tuple(exps)))
        gens.append(graph_ring.from_terms(terms))
    if base_ideal is not None and not base_ideal.is_zero():
        for f in base_ideal.gens:
            gens.append(
                graph_ring.from_terms(
                    [(c, source_ring.unpack(m) + (0,) * k) for m, c in f.d.items()]
                )
            )
    big = Ideal(graph_ring, gens)
    img = eliminate(big, list(range(n)), target_ring=target_ring)
    return saturate(img)


# -- determinantal and jacobian ideals ---------------------------------------


def minors(m: ModuleMap, k):
    """Ideal of k x k minors of the matrix of a graded map."""
    rows, cols = m.target.rank, m.source.rank
    if k > min(rows, cols):
        raise ValueError("minor size exceeds matrix shape")
    ring = m.source.ring
    from itertools import combinations

    memo = {}

    def det(rs, cs):
        if len(rs) == 1:
            return m.matrix[rs[0]][cs[0]]
        key = (rs, cs)
        if key in memo:
            return memo[key]
        total = ring.zero()
        r0 = rs[0]
        rest = rs[1:]
        for idx, c in enumerate(cs):
            entry = m.matrix[r0][c]
            if entry.is_zero():
                continue
            sub = det(rest, cs[:idx] + cs[idx + 1 :])
            term = entry * sub
            total = total + (term if idx % 2 == 0 else -term)
        memo[key] = total
        return total

    out = []
    for rs in combinations(range(rows), k):
        for cs in combinations(range(cols), k):
            d = det(tuple(rs), tuple(cs))
            if d:
                out.append(d)
    return Ideal(ring, out)


def jacobian_matrix(polys):
    ring = polys[0].ring
    rows = []
    for i in range(ring.nvars):
        rows.append([f.derivative(i) for f in polys])
    src = FreeModule(ring, tuple(f.degree() for f in polys))
    tgt = FreeModule(ring, (1,) * ring.nvars)
    return ModuleMap(src, tgt, rows)


def jacobian_ideal(a: Ideal, codim):
    """a plus the codim x codim minors of the Jacobian of its minimal generators."""
    gens = list(a.minimal_generators())
    jac = jacobian_matrix(gens)
    mins = minors(jac, codim)
    return Ideal(a.ring, gens + list(mins.gens))


# -- linkage -----------------------------------------------------------------


def is_ci_pair(f, g):
    """Numerical regular-sequence certificate: Koszul Hilbert numerator."""
    ci = Ideal(f.ring, [f, g])
    num = {}
    for k, v in [(0, 1), (f.degree(), -1), (g.degree(), -1), (f.degree() + g.degree(), 1)]:
        num[k] = num.get(k, 0) + v
    return ci.numerator() == {k: v for k, v in num.items() if v}


def link(a: Ideal, f, g):
    """Residual of a in the complete intersection (f, g)."""
    if isinstance(f, str):
        f = parse_poly(a.ring, f)
    if isinstance(g, str):
        g = parse_poly(a.ring, g)
    if not (a.contains(f) and a.contains(g)):
        raise ValueError("linkage hypersurfaces must contain the scheme")
    if not is_ci_pair(f, g):
        raise ValueError("hypersurfaces do not form a regular sequence")
    ci = Ideal(a.ring, [f, g], saturated=True)
    return saturate(quotient(ci, a))
