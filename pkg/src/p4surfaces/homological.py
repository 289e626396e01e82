"""Free resolutions, Betti tables, Hilbert data and Hom of graded modules."""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from . import linalg
from .groebner import SchreyerOrder, TermOverPosition, module_buchberger, syzygy_columns
from .modules import FreeModule, ModuleMap, ModulePresentation, vec_iadd_scaled
from .rings import Polynomial


class BettiTable:
    """Graded Betti numbers: (homological index, internal degree) -> count."""

    def __init__(self, entries):
        self.entries = {k: v for k, v in dict(entries).items() if v}

    @classmethod
    def from_twists(cls, frames):
        entries = {}
        for i, twists in enumerate(frames):
            for t in twists:
                entries[(i, t)] = entries.get((i, t), 0) + 1
        return cls(entries)

    def column(self, i):
        return {d: v for (k, d), v in self.entries.items() if k == i}

    def length(self):
        return max((i for (i, _) in self.entries), default=0)

    def regularity(self):
        return max((d - i for (i, d) in self.entries), default=0)

    def __eq__(self, other):
        return isinstance(other, BettiTable) and self.entries == other.entries

    def diagonal_rows(self):
        """Macaulay layout: row j, column i holds beta_{i, i+j}."""
        if not self.entries:
            return {}
        rows = {}
        for (i, d), v in self.entries.items():
            rows.setdefault(d - i, {})[i] = v
        return rows

    def to_json(self):
        return {
            "entries": [
                {"i": i, "degree": d, "count": v}
                for (i, d), v in sorted(self.entries.items())
            ],
            "diagonal_rows": {
                str(j): {str(i): v for i, v in sorted(row.items())}
                for j, row in sorted(self.diagonal_rows().items())
            },
        }

    def __str__(self):
        rows = self.diagonal_rows()
        if not rows:
            return "0"
        imax = self.length()
        lines = ["      " + "".join(f"{i:>8}" for i in range(imax + 1))]
        for j in sorted(rows):
            cells = "".join(f"{rows[j].get(i, '.'):>8}" for i in range(imax + 1))
            lines.append(f"{j:>4}: {cells}")
        return "\n".join(lines)

    def __repr__(self):
        return f"BettiTable({sorted(self.entries.items())})"


class Resolution:
    """Chain of free modules F0 <- F1 <- ... with d_k = maps[k-1]."""

    def __init__(self, frames, maps, minimized, terminated=True):
        self.frames = frames  # list of FreeModule
        self.maps = maps  # list of ModuleMap, maps[k]: frames[k+1] -> frames[k]
        self.minimized = minimized
        self.terminated = terminated

    @property
    def length(self):
        return len(self.maps)

    def betti(self):
        return BettiTable.from_twists([f.twists for f in self.frames])

    def check_complex(self):
        for a, b in zip(self.maps, self.maps[1:]):
            if not a.compose(b).is_zero():
                return False
        return True


def _columns_of(m: ModuleMap):
    return [m.column(j) for j in range(m.source.rank)]


def free_resolution(pres: ModulePresentation, length_cap=10, minimize=True):
    """Resolve a presented module by iterated syzygies with Schreyer orders.

    The first map's columns are a Groebner basis of the relation module; each
    further map consists of the tracked S-pair syzygies of the previous one.
    With minimize=True the result is the minimal resolution.
    """
    ring = pres.ring
    cur_free = pres.gen_module
    cur_order = TermOverPosition(cur_free)
    cur_cols = [c for c in _columns_of(pres.relations) if c]
    frames = [list(cur_free.twists)]
    maps_cols = []
    terminated = True
    while cur_cols:
        if len(maps_cols) >= length_cap:
            terminated = False
            break
        eng = module_buchberger(cur_cols, cur_free, order=cur_order, want_syzygies=True)
        maps_cols.append([dict(b) for b in eng.basis])
        frames.append(list(eng.degs))
        cur_order = SchreyerOrder(cur_order, eng.leads)
        cur_free = FreeModule(ring, tuple(eng.degs))
        cur_cols = [s for s in eng.syzygies if s]
    if minimize:
        frames, maps_cols = _prune_complex(ring, frames, maps_cols)
        assert terminated and len(maps_cols) <= ring.nvars + 1, "resolution too long"
    free_frames = [FreeModule(ring, tuple(t)) for t in frames]
    maps = [
        ModuleMap.from_columns(free_frames[k + 1], free_frames[k], cols)
        for k, cols in enumerate(maps_cols)
    ]
    return Resolution(free_frames, maps, minimize, terminated)


def _prune_complex(ring, frames, maps_cols):
    """Remove unit entries by Gaussian elimination on the complex.

    A unit at (i, j) of map k splits off the contractible subcomplex
    R e_j -> R e_i; the remaining differentials are adjusted so that the
    pruned complex has the same homology.
    """
    p = ring.char
    frames = [list(f) for f in frames]
    maps_cols = [[dict(c) for c in cols] for cols in maps_cols]

    def find_unit(cols):
        for j, col in enumerate(cols):
            for (i, m) in col:
                if m == 0:
                    return i, j, col[(i, m)]
        return None

    changed = True
    while changed:
        changed = False
        for k in range(len(maps_cols)):
            cols = maps_cols[k]
            hit = find_unit(cols)
            if hit is None:
                continue
            changed = True
            i, j, c = hit
            inv = ring.inv(c)
            pivot = cols[j]
            # clear row i from the other columns; q2 = (row i entry) / c
            qs = {}
            for j2, col in enumerate(cols):
                if j2 == j:
                    continue
                q = {m: (v * inv) % p if p else v * inv for (r, m), v in col.items() if r == i}
                if not q:
                    continue
                qs[j2] = q
                for m, v in q.items():
                    vec_iadd_scaled(col, pivot, ring.neg(v), m, p)
            # basis change e_j2 = f_j2 + q_j2 f_j: next map row_j += q_j2 row_j2
            if k + 1 < len(maps_cols):
                for col in maps_cols[k + 1]:
                    add = {}
                    for (r, m), v in list(col.items()):
                        if r in qs:
                            for mq, vq in qs[r].items():
                                key = m + mq
                                nv = add.get(key, 0) + v * vq
                                if p:
                                    nv %= p
                                add[key] = nv
                    for m, v in add.items():
                        if not v:
                            continue
                        key = (j, m)
                        nv = col.get(key, 0) + v
                        if p:
                            nv %= p
                        if nv:
                            col[key] = nv
                        else:
                            col.pop(key, None)
                for col in maps_cols[k + 1]:
                    assert all(r != j for (r, _) in col), "pruning left a nonzero row"
            # drop column j and target row i of map k
            del cols[j]
            for col in cols:
                for key in [key for key in col if key[0] == i]:
                    del col[key]
            del frames[k + 1][j]
            del frames[k][i]
            _reindex_rows(cols, i)
            if k + 1 < len(maps_cols):
                _reindex_rows(maps_cols[k + 1], j)
            if k > 0:
                del maps_cols[k - 1][i]
            break
    while maps_cols and not any(maps_cols[-1]):
        maps_cols.pop()
        frames.pop()
    return frames, maps_cols


def _reindex_rows(cols, removed):
    for col in cols:
        items = list(col.items())
        col.clear()
        for (r, m), v in items:
            col[(r - 1 if r > removed else r, m)] = v


# -- Hilbert data ----------------------------------------------------------


def _minimalize_monomials(ring, gens):
    gens = sorted(set(gens), key=lambda m: (ring.deg(m), m))
    out = []
    for m in gens:
        if not any(ring.divisible(m, g) for g in out):
            out.append(m)
    return out


def hilbert_numerator(ring, gens):
    """Numerator of the Hilbert series of R/(monomial ideal), as {degree: coeff}.

    Pivot recursion: N(I) = N(I + (x)) + t^w N(I : x) along a variable in
    some generator.
    """
    gens = _minimalize_monomials(ring, gens)
    if not gens:
        return {0: 1}
    if gens[0] == 0:
        return {}

    def poly_add(a, b, sign=1):
        for k, v in b.items():
            a[k] = a.get(k, 0) + sign * v
            if not a[k]:
                del a[k]
        return a

    def poly_shift(a, d):
        return {k + d: v for k, v in a.items()}

    def product_formula(ms):
        out = {0: 1}
        for m in ms:
            out = poly_add(poly_shift(out, ring.deg(m)), out, sign=-1)
            out = {k: -v for k, v in out.items()}
        return out

    def pairwise_coprime(ms):
        for a in range(len(ms)):
            for b in range(a + 1, len(ms)):
                if ring.lcm(ms[a], ms[b]) != ms[a] + ms[b]:
                    return False
        return True

    def rec(ms):
        if not ms:
            return {0: 1}
        if ms[0] == 0:
            return {}
        if len(ms) <= 2 or pairwise_coprime(ms):
            if pairwise_coprime(ms):
                return product_formula(ms)
        counts = [0] * ring.nvars
        for m in ms:
            for idx, e in enumerate(ring.unpack(m)):
                if e:
                    counts[idx] += 1
        piv = max(range(ring.nvars), key=lambda idx: counts[idx])
        x = ring.variable(piv)
        plus = _minimalize_monomials(ring, [m for m in ms if not ring.divisible(m, x)] + [x])
        colon = _minimalize_monomials(
            ring, [m - x if ring.divisible(m, x) else m for m in ms]
        )
        w = ring.deg(x)
        return poly_add(rec(plus), poly_shift(rec(colon), w))

    return rec(gens)


def _binomial_poly(shift, n):
    """Coefficients of the polynomial binom(d + shift, n) in d, exact."""
    coeffs = [Fraction(1)]
    for a in range(n):
        # multiply by (d + shift - a)
        const = Fraction(shift - a)
        new = [Fraction(0)] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            new[i] += c * const
            new[i + 1] += c
        coeffs = new
    import math

    f = Fraction(1, math.factorial(n))
    return [c * f for c in coeffs]


def hilbert_polynomial_from_numerator(numerator, nvars):
    """Hilbert polynomial coefficients (low degree first, Fractions)."""
    n = nvars - 1
    out = [Fraction(0)] * (n + 1)
    for j, c in numerator.items():
        for i, b in enumerate(_binomial_poly(n - j, n)):
            out[i] += c * b
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def eval_poly_coeffs(coeffs, d):
    v = Fraction(0)
    for c in reversed(coeffs):
        v = v * d + c
    return v


class HilbertData:
    """Hilbert function on a window plus the exact Hilbert polynomial."""

    def __init__(self, function, polynomial, numerator):
        self.function = dict(function)
        self.polynomial = list(polynomial)
        self.numerator = dict(numerator)

    def poly_value(self, d):
        v = eval_poly_coeffs(self.polynomial, d)
        assert v.denominator == 1
        return int(v)

    def __repr__(self):
        return f"HilbertData(fn={self.function}, poly={self.polynomial})"


def _lead_module(pres: ModulePresentation):
    """Per-position lead-term monomial ideals of the relation submodule."""
    free = pres.gen_module
    cols = [c for c in _columns_of(pres.relations) if c]
    by_pos = {i: [] for i in range(free.rank)}
    if cols:
        eng = module_buchberger(cols, free, order=TermOverPosition(free))
        for (pos, m) in eng.leads:
            by_pos[pos].append(m)
    return by_pos


def _count_monomials(ring, d):
    import math

    if d < 0:
        return 0
    n = ring.nvars
    return math.comb(d + n - 1, n - 1)


def _staircase_count(ring, gens, d, cache):
    """Monomials of degree d in the monomial ideal generated by gens."""
    key = (tuple(gens), d)
    if key in cache:
        return cache[key]
    total = _count_monomials(ring, d)
    num = cache.setdefault(tuple(gens), hilbert_numerator(ring, gens))
    quotient_dim = sum(
        c * _count_monomials(ring, d - j) for j, c in num.items() if j <= d
    )
    out = total - quotient_dim
    cache[key] = out
    return out


def module_hilbert(pres: ModulePresentation, window=None):
    """HilbertData of a finitely presented graded module (coker of relations)."""
    ring = pres.ring
    by_pos = _lead_module(pres)
    tmin = min(pres.twists, default=0)
    if window is None:
        window = range(tmin, tmin + 10)
    cache = {}
    numerator = {}
    for i, t in enumerate(pres.twists):
        num = hilbert_numerator(ring, _minimalize_monomials(ring, by_pos[i]))
        for j, c in num.items():
            numerator[j + t] = numerator.get(j + t, 0) + c
            if not numerator[j + t]:
                del numerator[j + t]
    function = {}
    for d in window:
        total = 0
        for i, t in enumerate(pres.twists):
            total += _count_monomials(ring, d - t) - _staircase_count(
                ring, tuple(_minimalize_monomials(ring, by_pos[i])), d - t, cache
            )
        function[d] = total
    poly = hilbert_polynomial_from_numerator(numerator, ring.nvars)
    return HilbertData(function, poly, numerator)


def betti_hilbert_consistency(betti: BettiTable, hilbert: HilbertData, ring, window):
    """Alternating Betti-binomial sums must reproduce the Hilbert function."""
    for d in window:
        total = 0
        for (i, t), v in betti.entries.items():
            total += (-1) ** i * v * _count_monomials(ring, d - t)
        if total != hilbert.function.get(d):
            return False
    return True


# -- Hom -------------------------------------------------------------------


def _degree_basis(free: FreeModule, d):
    """(position, monomial) basis of the degree-d piece of a free module."""
    out = []
    for i, t in enumerate(free.twists):
        if d - t < 0:
            continue
        for m in free.ring.monomials_of_degree(d - t):
            out.append((i, m))
    return out


def hom_degree_maps(a: ModulePresentation, b: ModulePresentation, shift=0):
    """Basis of degree-`shift` homomorphisms a -> b, as ModuleMaps.

    Degreewise linear algebra: images of a's generators are unknowns, and
    every relation of a must land in b's relation submodule.
    """
    ring = a.ring
    p = ring.char
    if not p:
        raise ValueError("hom computations need a prime field")
    img_index = []  # (gen j, position i, monomial m) -> unknown column
    img_slots = {}
    for j, t in enumerate(a.twists):
        for (i, m) in _degree_basis(b.gen_module, t + shift):
            img_slots[(j, i, m)] = len(img_index)
            img_index.append((j, i, m))
    nimg = len(img_index)
    rel_b_cols = [c for c in _columns_of(b.relations) if c]
    rows = {}
    aux_index = []

    def row_key(i, m, rel_idx):
        key = (rel_idx, i, m)
        if key not in rows:
            rows[key] = len(rows)
        return rows[key]

    entries = []  # (row, col, value)
    rel_a_cols = [c for c in _columns_of(a.relations) if c]
    for rel_idx, rcol in enumerate(rel_a_cols):
        rdeg = a.gen_module.element_degree(rcol)
        # sum_j r_j * img_j - sum_l lambda_l x^m rel_b_l = 0
        for (j, mr), cr in rcol.items():
            for (i, m) in _degree_basis(b.gen_module, a.twists[j] + shift):
                col = img_slots[(j, i, m)]
                entries.append((row_key(i, m + mr, rel_idx), col, cr))
        for l, bcol in enumerate(rel_b_cols):
            bdeg = b.gen_module.element_degree(bcol)
            shift_deg = rdeg + shift - bdeg
            if shift_deg < 0:
                continue
            for mm in ring.monomials_of_degree(shift_deg):
                aux = len(aux_index)
                aux_index.append(None)
                for (i, m), c in bcol.items():
                    entries.append((row_key(i, m + mm, rel_idx), nimg + aux, (-c) % p))
    nrows = len(rows)
    ncols = nimg + len(aux_index)
    if nrows == 0:
        mat = np.zeros((1, ncols or 1), dtype=np.int64)
        if not ncols:
            return []
    else:
        mat = np.zeros((nrows, ncols), dtype=np.int64)
        for r, c, v in entries:
            mat[r, c] = (mat[r, c] + v) % p
    null = linalg.nullspace(mat, p)
    if null.shape[0] == 0:
        return []
    img_part = null[:, :nimg] % p
    img_part = linalg.rref(img_part, p)[0]
    img_part = img_part[~np.all(img_part == 0, axis=1)]
    out = []
    for rowvec in img_part:
        cols = []
        for j in range(len(a.twists)):
            vec = {}
            for (jj, i, m), idx in img_slots.items():
                if jj == j and rowvec[idx]:
                    vec[(i, m)] = int(rowvec[idx])
            cols.append(vec)
        src = FreeModule(ring, tuple(t + shift for t in a.twists))
        out.append(ModuleMap.from_columns(src, b.gen_module, cols))
    return out


def presented_kernel(f0: ModuleMap, m_pres: ModulePresentation, n_pres: ModulePresentation):
    """Kernel of the map m -> n lifted by f0 on generator frames.

    Returns (presentation, embedding) where embedding maps the kernel's
    generators into m's generator module.
    """
    ring = m_pres.ring
    n_free = n_pres.gen_module
    f_cols = _columns_of(f0)
    nrel_cols = [c for c in _columns_of(n_pres.relations) if c]
    stacked = f_cols + nrel_cols
    syz, _ = syzygy_columns(stacked, n_free)
    nf = len(f_cols)
    m_free = m_pres.gen_module
    z_cols = []
    for s in syz:
        z = {}
        for (k, m), c in s.items():
            if k < nf:
                vec_iadd_scaled(z, {(k, 0): 1}, c, m, ring.char)
        if z:
            z_cols.append(z)
    # relations among the kernel generators, modulo m's relations
    mrel_cols = [c for c in _columns_of(m_pres.relations) if c]
    stacked2 = z_cols + mrel_cols
    if z_cols:
        syz2, _ = syzygy_columns(stacked2, m_free)
    else:
        syz2 = []
    nz = len(z_cols)
    rel_cols = []
    for s in syz2:
        r = {}
        for (k, m), c in s.items():
            if k < nz:
                vec_iadd_scaled(r, {(k, 0): 1}, c, m, ring.char)
        if r:
            rel_cols.append(r)
    twists = tuple(m_free.element_degree(z) for z in z_cols)
    frame = FreeModule(ring, twists)
    rel_twists = tuple(frame.element_degree(r) for r in rel_cols)
    relations = ModuleMap.from_columns(FreeModule(ring, rel_twists), frame, rel_cols)
    embedding = ModuleMap.from_columns(frame, m_free, z_cols)
    return ModulePresentation(twists, relations), embedding


def hom_module(a: ModulePresentation, b: ModulePresentation):
    """Presentation of Hom(a, b) via the kernel of Hom(F0, b) -> Hom(F1, b).

    Hom(F0, b) is a direct sum of shifted copies of b; the induced map is
    right multiplication by a's relation matrix.
    """
    ring = a.ring
    hom_f0 = None
    for j, t in enumerate(a.twists):
        piece = b.shift(-t)
        hom_f0 = piece if hom_f0 is None else hom_f0.direct_sum(piece)
    rel_src_twists = a.relations.source.twists
    hom_f1 = None
    for l, t in enumerate(rel_src_twists):
        piece = b.shift(-t)
        hom_f1 = piece if hom_f1 is None else hom_f1.direct_sum(piece)
    if hom_f1 is None:
        pres = hom_f0 if hom_f0 is not None else ModulePresentation((), ring=ring)
        return pres
    nb = len(b.twists)
    cols = []
    for j in range(len(a.twists)):
        for i in range(nb):
            # image of generator (j, i): for each relation l, component
            # (l, i) is multiplication by rel[j][l]
            vec = {}
            for l in range(len(rel_src_twists)):
                f = a.relations.matrix[j][l]
                for m, c in f.d.items():
                    vec[(l * nb + i, m)] = c
            cols.append(vec)
    f0 = ModuleMap.from_columns(hom_f0.gen_module, hom_f1.gen_module, cols)
    pres, _ = presented_kernel(f0, hom_f0, hom_f1)
    return pres
