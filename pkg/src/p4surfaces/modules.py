"""Graded free modules, graded maps and finite presentations.

A free module stores generator degrees (`twists`): twist e means a
generator in degree e, i.e. a summand R(-e).  A module element is a dict
{(position, packed monomial): coefficient}; the term (i, m) has element
degree deg(m) + twists[i].
"""

from __future__ import annotations

from .rings import Polynomial


class FreeModule:
    __slots__ = ("ring", "twists")

    def __init__(self, ring, twists):
        self.ring = ring
        self.twists = tuple(twists)

    @property
    def rank(self):
        return len(self.twists)

    def zero(self):
        return {}

    def generator(self, i):
        return {(i, 0): self.ring.normalize(1)}

    def element_degree(self, vec):
        """Degree of a homogeneous element; None for zero."""
        if not vec:
            return None
        degs = {self.ring.deg(m) + self.twists[i] for (i, m) in vec}
        if len(degs) != 1:
            raise ValueError("element is not homogeneous")
        return degs.pop()

    def from_polys(self, polys):
        """Element from one polynomial per position."""
        vec = {}
        for i, f in enumerate(polys):
            d = f.d if isinstance(f, Polynomial) else f
            for m, c in d.items():
                vec[(i, m)] = c
        return vec

    def to_polys(self, vec):
        cols = [dict() for _ in range(self.rank)]
        for (i, m), c in vec.items():
            cols[i][m] = c
        return [Polynomial(self.ring, d) for d in cols]

    def twist(self, a):
        """Shift all generator degrees by a."""
        return FreeModule(self.ring, tuple(t + a for t in self.twists))

    def __eq__(self, other):
        return (
            isinstance(other, FreeModule)
            and self.ring == other.ring
            and self.twists == other.twists
        )

    def __repr__(self):
        return f"FreeModule{self.twists}"


def vec_iadd_scaled(dst, src, c, m, p):
    """dst += c * x^m * src, in place; src is a module element dict."""
    for (i, k), v in src.items():
        key = (i, k + m)
        nv = dst.get(key, 0) + c * v
        if p:
            nv %= p
        if nv:
            dst[key] = nv
        else:
            dst.pop(key, None)
    return dst


def vec_scale(vec, c, p):
    if p:
        return {k: (v * c) % p for k, v in vec.items()}
    return {k: v * c for k, v in vec.items()}


class ModuleMap:
    """Graded map of free modules; entry (i, j) maps source generator j to
    target generator i, so columns are the images of the source generators."""

    def __init__(self, source, target, matrix):
        self.source = source
        self.target = target
        self.matrix = [list(row) for row in matrix]
        if len(self.matrix) != target.rank or any(
            len(row) != source.rank for row in self.matrix
        ):
            raise ValueError("matrix shape does not match source/target ranks")

    @classmethod
    def from_columns(cls, source, target, columns):
        matrix = [[None] * source.rank for _ in range(target.rank)]
        for j, col in enumerate(columns):
            polys = target.to_polys(col)
            for i in range(target.rank):
                matrix[i][j] = polys[i]
        return cls(source, target, matrix)

    def column(self, j):
        vec = {}
        for i in range(self.target.rank):
            f = self.matrix[i][j]
            for m, c in f.d.items():
                vec[(i, m)] = c
        return vec

    def columns(self):
        return [self.column(j) for j in range(self.source.rank)]

    def violations(self):
        """Graded-map contract: entry (i,j) zero or homogeneous of degree
        source.twist(j) - target.twist(i).  Returns a list of (i, j, reason)."""
        out = []
        for i in range(self.target.rank):
            for j in range(self.source.rank):
                f = self.matrix[i][j]
                if f.is_zero():
                    continue
                want = self.source.twists[j] - self.target.twists[i]
                if not f.is_homogeneous():
                    out.append((i, j, "inhomogeneous entry"))
                elif f.degree() != want:
                    out.append((i, j, f"degree {f.degree()}, expected {want}"))
        return out

    def apply(self, vec):
        """Image of a source element."""
        p = self.source.ring.char
        out = {}
        cols = self.columns()
        for (j, m), c in vec.items():
            vec_iadd_scaled(out, cols[j], c, m, p)
        return out

    def compose(self, other):
        """self after other (matrix product self . other)."""
        if other.target.twists != self.source.twists:
            raise ValueError("composition twist mismatch")
        cols = [self.apply(col) for col in other.columns()]
        return ModuleMap.from_columns(other.source, self.target, cols)

    def is_zero(self):
        return all(f.is_zero() for row in self.matrix for f in row)

    def transpose_dual(self, canonical_twist=0):
        """Dual map Hom(-, R(-canonical_twist)): twists negate and shift.

        With canonical_twist=5 this is Hom(-, R(-5)), the graded dual used
        for artinian modules over a five-variable ring.
        """
        src = FreeModule(self.source.ring, tuple(canonical_twist - t for t in self.target.twists))
        tgt = FreeModule(self.source.ring, tuple(canonical_twist - t for t in self.source.twists))
        matrix = [
            [self.matrix[i][j] for i in range(self.target.rank)]
            for j in range(self.source.rank)
        ]
        return ModuleMap(src, tgt, matrix)

    def __repr__(self):
        return f"ModuleMap({self.source.twists} -> {self.target.twists})"


def check_graded_map(m: ModuleMap):
    """Report-only homogeneity check; empty list iff the map is graded."""
    return m.violations()


class ModulePresentation:
    """Finitely presented graded module: generator twists plus a relation map
    into the generator module.  Minimality is a property, not an invariant."""

    def __init__(self, generator_twists, relations: ModuleMap = None, ring=None):
        self.twists = tuple(generator_twists)
        if relations is None:
            if ring is None:
                raise ValueError("free presentation needs an explicit ring")
            gen_module = FreeModule(ring, self.twists)
            relations = ModuleMap(FreeModule(ring, ()), gen_module, [[] for _ in self.twists])
        if relations.target.twists != self.twists:
            raise ValueError("relation target does not match generators")
        self.relations = relations
        self.ring = relations.target.ring

    @property
    def gen_module(self):
        return self.relations.target

    def shift(self, a):
        """Twist by R(-a): all generator and relation degrees move by a."""
        rel = ModuleMap(
            self.relations.source.twist(a), self.relations.target.twist(a), self.relations.matrix
        )
        return ModulePresentation(rel.target.twists, rel)

    def direct_sum(self, other):
        if other.ring != self.ring:
            raise ValueError("direct sum over different rings")
        twists = self.twists + other.twists
        gen = FreeModule(self.ring, twists)
        src = FreeModule(
            self.ring, self.relations.source.twists + other.relations.source.twists
        )
        zero = self.ring.zero()
        r0, c0 = len(self.twists), self.relations.source.rank
        matrix = [[zero] * src.rank for _ in range(gen.rank)]
        for i in range(r0):
            for j in range(c0):
                matrix[i][j] = self.relations.matrix[i][j]
        for i in range(len(other.twists)):
            for j in range(other.relations.source.rank):
                matrix[r0 + i][c0 + j] = other.relations.matrix[i][j]
        return ModulePresentation(twists, ModuleMap(src, gen, matrix))

    def __repr__(self):
        return f"ModulePresentation(gens={self.twists}, rels={self.relations.source.twists})"


def free_presentation(ring, twists):
    return ModulePresentation(twists, ring=ring)
