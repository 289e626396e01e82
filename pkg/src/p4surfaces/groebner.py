"""Buchberger engine for submodules of graded free modules.

All inputs are homogeneous, so S-pairs are processed degree by degree
(normal selection) and a degree-truncated run is a truncated Groebner
basis.  Pair pruning follows Gebauer-Moeller; the product criterion is
applied only in rank one, where the skipped pair contributes its Koszul
syzygy directly.  S-pair reductions optionally track cofactors, which
yields the syzygy module in the basis frame (Schreyer).
"""

from __future__ import annotations

import heapq

from .modules import FreeModule, ModuleMap, vec_iadd_scaled
from .rings import Polynomial


class TermOverPosition:
    """Monomial first (ring order), position ties; smaller key = lead."""

    def __init__(self, free):
        self.ring = free.ring

    def key(self, pos, m):
        return (-self.ring.deg(m), m, pos)


class PositionOverTerm:
    """Position first (earlier positions dominate); used for harvest tricks."""

    def __init__(self, free):
        self.ring = free.ring

    def key(self, pos, m):
        return (pos, -self.ring.deg(m), m)


class SchreyerOrder:
    """Order on a syzygy frame induced by the lead terms of the basis below."""

    def __init__(self, prev_order, anchors):
        self.prev = prev_order
        self.anchors = anchors  # anchors[pos] = (prev_pos, prev_monomial)

    def key(self, pos, m):
        pp, pm = self.anchors[pos]
        return (*self.prev.key(pp, pm + m), pos)


class GroebnerBasis:
    """Reduced Groebner basis of a submodule of a graded free module."""

    def __init__(self, free, elements, order, reduced=True):
        self.free = free
        self.elements = elements  # module element dicts, monic, canonical order
        self.order = order
        self.reduced = reduced

    @property
    def ring(self):
        return self.free.ring

    def __len__(self):
        return len(self.elements)

    def polynomials(self):
        if self.free.rank != 1:
            raise ValueError("polynomial view needs a rank-one module")
        return [Polynomial(self.ring, {m: c for (_, m), c in e.items()}) for e in self.elements]


class _Engine:
    def __init__(self, free, order=None, degree_cap=None, want_syzygies=False, want_reps=False):
        self.free = free
        self.ring = free.ring
        self.p = free.ring.char
        self.order = order or TermOverPosition(free)
        self.degree_cap = degree_cap
        self.want_syz = want_syzygies
        self.want_reps = want_reps
        self.basis = []  # element dicts, monic
        self.leads = []  # (pos, m)
        self.degs = []  # element degrees
        self.reps = []  # over the input frame
        self.syzygies = []  # over the basis frame
        self.by_pos = {}  # lead position -> list of basis indices
        self.pairs = []  # heap of (degree, seq, i, j)
        self._seq = 0
        self.truncated = False
        self._keyfn = lambda t: self.order.key(*t)

    # -- term utilities ----------------------------------------------------
    def _lead(self, vec):
        return min(vec, key=self._keyfn)

    def _reduce(self, vec, track=None, full=True):
        """Fully reduce vec against the basis; returns the remainder.

        track, if given, accumulates cofactors over the basis frame so that
        input = remainder + sum track[(k, m)] * x^m * basis[k].
        """
        ring, p = self.ring, self.p
        divisible = ring.divisible
        work = dict(vec)
        rem = {}
        while work:
            pos, m = min(work, key=self._keyfn)
            c = work[(pos, m)]
            hit = -1
            for k in self.by_pos.get(pos, ()):
                if divisible(m, self.leads[k][1]):
                    hit = k
                    break
            if hit < 0:
                if not full:
                    rem.update(work)
                    return rem
                del work[(pos, m)]
                rem[(pos, m)] = c
                continue
            shift = m - self.leads[hit][1]
            vec_iadd_scaled(work, self.basis[hit], ring.neg(c), shift, p)
            if track is not None:
                key = (hit, shift)
                nc = track.get(key, 0) + c
                if p:
                    nc %= p
                if nc:
                    track[key] = nc
                else:
                    track.pop(key, None)
        return rem

    def _monic(self, vec, lead):
        c = vec[lead]
        if c == 1:
            return vec, 1
        inv = self.ring.inv(c)
        p = self.p
        if p:
            return {k: (v * inv) % p for k, v in vec.items()}, inv
        return {k: v * inv for k, v in vec.items()}, inv

    # -- pair management (Gebauer-Moeller, per lead position) --------------
    def _add_element(self, vec, rep=None):
        ring = self.ring
        lead = self._lead(vec)
        vec, inv = self._monic(vec, lead)
        if rep is not None and inv != 1:
            p = self.p
            rep = {k: (v * inv) % p if p else v * inv for k, v in rep.items()}
        t = len(self.basis)
        pos, mt = lead
        lcm, divisible = ring.lcm, ring.divisible
        older = list(self.by_pos.get(pos, ()))

        self.basis.append(vec)
        self.leads.append(lead)
        self.degs.append(ring.deg(mt) + self.free.twists[pos])
        if self.want_reps:
            self.reps.append(rep if rep is not None else {})
        self.by_pos.setdefault(pos, []).append(t)

        # prune old pairs by the chain criterion
        if older:
            kept = []
            for item in self.pairs:
                _, _, i, j = item
                if self.leads[i][0] == pos:
                    mi, mj = self.leads[i][1], self.leads[j][1]
                    mij = lcm(mi, mj)
                    if (
                        divisible(mij, mt)
                        and mij != lcm(mi, mt)
                        and mij != lcm(mj, mt)
                    ):
                        continue
                kept.append(item)
            if len(kept) != len(self.pairs):
                self.pairs = kept
                heapq.heapify(self.pairs)

        # new pairs against older same-position elements, percolated
        cand = {i: lcm(self.leads[i][1], mt) for i in older}
        kept_lcms = []
        for i in sorted(cand, key=lambda i: (ring.deg(cand[i]), cand[i], i)):
            L = cand[i]
            if any(divisible(L, L2) for (L2, _) in kept_lcms):
                continue
            kept_lcms.append((L, i))
        for L, i in kept_lcms:
            if self.free.rank == 1 and L == self.leads[i][1] + mt:
                # product criterion; the pair's Koszul syzygy comes for free
                if self.want_syz:
                    p = self.p
                    syz = {(i, m): c for (_, m), c in self.basis[t].items()}
                    for (_, m), c in self.basis[i].items():
                        key = (t, m)
                        nc = syz.get(key, 0) - c
                        if p:
                            nc %= p
                        if nc:
                            syz[key] = nc
                        else:
                            syz.pop(key, None)
                    self.syzygies.append(syz)
                continue
            deg = ring.deg(L) + self.free.twists[pos]
            heapq.heappush(self.pairs, (deg, self._seq, i, t))
            self._seq += 1

    def insert_input(self, j, vec):
        """Insert input column j, reducing it against the current basis."""
        track = {} if (self.want_syz or self.want_reps) else None
        rem = self._reduce(vec, track=track)
        if not rem:
            if self.want_syz and track is not None:
                # the input is dependent; its syzygy lives in the input frame
                # and is recovered by the caller from the rep bookkeeping
                self._dependent_inputs.append((j, track))
            return
        rep = {(j, 0): 1} if self.want_reps else None
        if rep is not None:
            p = self.p
            for (k, m), c in track.items():
                vec_iadd_scaled(rep, self.reps[k], self.ring.neg(c), m, p)
        self._add_element(rem, rep=rep)

    def run(self, columns):
        self._dependent_inputs = []
        for j, col in enumerate(columns):
            if col:
                self.insert_input(j, col)
            # zero columns contribute trivial syzygies e_j, picked up by caller
        while self.pairs:
            deg, _, i, j = heapq.heappop(self.pairs)
            if self.degree_cap is not None and deg > self.degree_cap:
                self.truncated = True
                heapq.heappush(self.pairs, (deg, 0, i, j))
                break
            pos = self.leads[i][0]
            mi, mj = self.leads[i][1], self.leads[j][1]
            L = self.ring.lcm(mi, mj)
            svec = {}
            vec_iadd_scaled(svec, self.basis[i], 1, L - mi, self.p)
            vec_iadd_scaled(svec, self.basis[j], self.ring.neg(1), L - mj, self.p)
            track = {} if (self.want_syz or self.want_reps) else None
            rem = self._reduce(svec, track=track)
            if rem:
                rep = None
                if self.want_reps:
                    p = self.p
                    rep = {}
                    vec_iadd_scaled(rep, self.reps[i], 1, L - mi, p)
                    vec_iadd_scaled(rep, self.reps[j], self.ring.neg(1), L - mj, p)
                    for (k, m), c in track.items():
                        vec_iadd_scaled(rep, self.reps[k], self.ring.neg(c), m, p)
                t = len(self.basis)
                lc = rem[self._lead(rem)]
                self._add_element(rem, rep=rep)
                if self.want_syz:
                    # the S-pair reduces to zero against basis + new element:
                    # that relation is a syzygy with a unit on e_t
                    syz = {(i, L - mi): 1, (j, L - mj): self.ring.neg(1), (t, 0): self.ring.neg(lc)}
                    p = self.p
                    for (k, m), c in track.items():
                        key = (k, m)
                        nc = syz.get(key, 0) - c
                        if p:
                            nc %= p
                        if nc:
                            syz[key] = nc
                        else:
                            syz.pop(key, None)
                    self.syzygies.append(syz)
            elif self.want_syz:
                syz = {(i, L - mi): 1, (j, L - mj): self.ring.neg(1)}
                p = self.p
                for (k, m), c in track.items():
                    key = (k, m)
                    nc = syz.get(key, 0) - c
                    if p:
                        nc %= p
                    if nc:
                        syz[key] = nc
                    else:
                        syz.pop(key, None)
                self.syzygies.append(syz)
        return self


def module_buchberger(
    columns,
    free,
    order=None,
    degree_cap=None,
    want_syzygies=False,
    want_reps=False,
):
    """Run Buchberger on homogeneous columns of a free module.

    Returns the engine, whose basis/leads/degs/syzygies/reps fields hold the
    completed (non-reduced) basis and the tracked data.
    """
    eng = _Engine(
        free,
        order=order,
        degree_cap=degree_cap,
        want_syzygies=want_syzygies,
        want_reps=want_reps,
    )
    return eng.run(columns)


def _interreduce(eng):
    """Minimalize and tail-reduce the completed basis; canonical order."""
    ring = eng.ring
    idx = sorted(range(len(eng.basis)), key=lambda k: eng.order.key(*eng.leads[k]))
    keep = []
    for k in idx:
        pos, m = eng.leads[k]
        if not any(
            eng.leads[k2][0] == pos and ring.divisible(m, eng.leads[k2][1])
            for k2 in keep
            if k2 != k
        ):
            keep.append(k)
    reducer = _Engine(eng.free, order=eng.order)
    for k in keep:
        reducer.basis.append(eng.basis[k])
        reducer.leads.append(eng.leads[k])
        reducer.degs.append(eng.degs[k])
        reducer.by_pos.setdefault(eng.leads[k][0], []).append(len(reducer.basis) - 1)
    out = []
    for slot, k in enumerate(keep):
        # tail terms are never divisible by the element's own lead, so the
        # element may stay in the reducer while its tail is normalized
        tail = dict(reducer.basis[slot])
        del tail[eng.leads[k]]
        rem = reducer._reduce(tail)
        rem[eng.leads[k]] = 1
        reducer.basis[slot] = rem
        out.append(rem)
    return out


def groebner_module(columns, free, order=None):
    """Unique reduced Groebner basis of the submodule generated by columns."""
    order = order or TermOverPosition(free)
    eng = module_buchberger([dict(c) for c in columns if c], free, order=order)
    elements = _interreduce(eng)
    return GroebnerBasis(free, elements, order)


def groebner_ideal(polys):
    """Reduced Groebner basis of an ideal, as a rank-one module basis."""
    polys = [f for f in polys if f]
    if not polys:
        raise ValueError("no nonzero generators")
    ring = polys[0].ring
    free = FreeModule(ring, (0,))
    cols = [{(0, m): c for m, c in f.d.items()} for f in polys]
    return groebner_module(cols, free)


def normal_form_vec(vec, gb: GroebnerBasis):
    eng = _Engine(gb.free, order=gb.order)
    for e in gb.elements:
        lead = eng._lead(e)
        eng.basis.append(e)
        eng.leads.append(lead)
        eng.degs.append(0)
        eng.by_pos.setdefault(lead[0], []).append(len(eng.basis) - 1)
    return eng._reduce(dict(vec))


def normal_form(f: Polynomial, gb: GroebnerBasis):
    """Remainder of f on division by the (rank-one) basis."""
    if gb.free.rank != 1:
        raise ValueError("use normal_form_vec for modules")
    rem = normal_form_vec({(0, m): c for m, c in f.d.items()}, gb)
    return Polynomial(f.ring, {m: c for (_, m), c in rem.items()})


def syzygy_columns(columns, free, order=None):
    """Generators of the syzygy module of the given columns.

    Returns (syzygies, engine): syzygies are module elements over the input
    frame (position j = column j).  Uses the tracked basis representation:
    Syz(F) = P.Syz(G) + (I - P.B) for G the completed basis.
    """
    cols = [dict(c) for c in columns]
    eng = module_buchberger(cols, free, order=order, want_syzygies=True, want_reps=True)
    p = eng.p
    out = []
    for j, col in enumerate(cols):
        if not col:
            out.append({(j, 0): 1})
    for j, track in eng._dependent_inputs:
        syz = {(j, 0): 1}
        for (k, m), c in track.items():
            vec_iadd_scaled(syz, eng.reps[k], eng.ring.neg(c), m, p)
        out.append(syz)
    for syz in eng.syzygies:
        conv = {}
        for (k, m), c in syz.items():
            vec_iadd_scaled(conv, eng.reps[k], c, m, p)
        if conv:
            out.append(conv)
    # columns of I - P.B for inputs that joined the basis after reduction
    for j, col in enumerate(cols):
        if not col:
            continue
        track = {}
        rem = eng._reduce(dict(col), track=track)
        assert not rem, "input does not reduce to zero against its own basis"
        delta = {(j, 0): 1}
        for (k, m), c in track.items():
            vec_iadd_scaled(delta, eng.reps[k], eng.ring.neg(c), m, p)
        if delta:
            out.append(delta)
    return out, eng


def preimage_columns(map_cols, extra_cols, target: FreeModule, source: FreeModule):
    """Generators of {v : sum v_i map_cols_i lies in <extra_cols>}.

    Graph harvest: stack (map_cols_i, e_i) and (extra_cols_l, 0) in
    target (+) source, run a POT basis preferring the target block, and keep
    the source components of elements supported there.
    """
    ring = target.ring
    rank_t = target.rank
    big = FreeModule(ring, target.twists + source.twists)
    cols = []
    for i, c in enumerate(map_cols):
        col = dict(c)
        col[(rank_t + i, 0)] = 1
        cols.append(col)
    for c in extra_cols:
        cols.append(dict(c))
    order = PositionOverTerm(big)
    eng = module_buchberger(cols, big, order=order)
    out = []
    for vec, lead in zip(eng.basis, eng.leads):
        if lead[0] >= rank_t:
            assert all(i >= rank_t for (i, _) in vec)
            out.append({(i - rank_t, m): c for (i, m), c in vec.items()})
    return out


def kernel_of_map(m: ModuleMap):
    """Kernel of a graded map as columns into its source module.

    Returns a ModuleMap whose columns generate ker(m); composing m with it
    gives zero.
    """
    cols = m.columns()
    vecs = []
    twists = []
    for s in preimage_columns(cols, [], m.target, m.source):
        deg = m.source.element_degree(s)
        if deg is None:
            continue
        twists.append(deg)
        vecs.append(s)
    frame = FreeModule(m.source.ring, tuple(twists))
    return ModuleMap.from_columns(frame, m.source, vecs)
