"""Exact multivariate polynomials over a prime field or the rationals.

Monomials are packed integers, 8 bits per exponent, variable 0 in the low
byte.  For monomials of equal (weighted) degree the plain integer order of
the packed value is the reverse of grevlex, so the lead term of a
homogeneous polynomial is ``min()`` over the dict keys.  Block elimination
orders only enter through the lead-term key functions.
"""

from __future__ import annotations

import re
from fractions import Fraction

FIELD_BITS = 8
MAX_EXPONENT = (1 << (FIELD_BITS - 1)) - 1  # borrow trick needs exponents < 128

DEFAULT_CHAR = 31991  # classical Macaulay default prime


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class MonomialOrder:
    """Total multiplicative order on exponent tuples.

    kind: 'grevlex', 'lex' or 'elim' (block order eliminating the first
    `block` variables, grevlex inside each block).  Keys compare so that a
    larger key means a larger monomial.
    """

    def __init__(self, kind="grevlex", block=0, weights=None):
        if kind not in ("grevlex", "lex", "elim"):
            raise ValueError(f"unknown monomial order {kind!r}")
        self.kind = kind
        self.block = block
        self.weights = weights

    def _deg(self, exps):
        if self.weights is None:
            return sum(exps)
        return sum(w * e for w, e in zip(self.weights, exps))

    def key(self, exps):
        if self.kind == "lex":
            return tuple(exps)
        if self.kind == "grevlex":
            return (self._deg(exps), tuple(-e for e in reversed(exps)))
        xs, ys = exps[: self.block], exps[self.block :]
        return (
            sum(xs),
            tuple(-e for e in reversed(xs)),
            self._deg(exps),
            tuple(-e for e in reversed(ys)),
        )

    def __repr__(self):
        if self.kind == "elim":
            return f"MonomialOrder('elim', block={self.block})"
        return f"MonomialOrder({self.kind!r})"


class PolyRing:
    """Graded polynomial ring over F_p (char p) or Q (char 0).

    `weights` assigns a positive weight to each variable; homogeneity always
    means weighted homogeneity.  `elim > 0` selects the block elimination
    order on the first `elim` variables (used for images of maps); the
    default order is grevlex.
    """

    def __init__(self, nvars=5, char=DEFAULT_CHAR, names=None, weights=None, elim=0):
        if char != 0 and not is_prime(char):
            raise ValueError(f"characteristic {char} is not prime")
        if names is None:
            names = tuple(f"x{i}" for i in range(nvars))
        if len(names) != nvars:
            raise ValueError("variable name count mismatch")
        self.nvars = nvars
        self.char = char
        self.names = tuple(names)
        self.weights = tuple(weights) if weights is not None else None
        self.elim = elim
        self._shifts = tuple(FIELD_BITS * i for i in range(nvars))
        # per-field borrow guard for the divisibility test
        self.borrow_mask = sum(1 << (FIELD_BITS * i + FIELD_BITS - 1) for i in range(nvars))
        self._xmask = (1 << (FIELD_BITS * elim)) - 1 if elim else 0
        self.order = MonomialOrder(
            "elim" if elim else "grevlex", block=elim, weights=self.weights
        )
        self.one = 0  # the unit monomial

    # -- monomials -------------------------------------------------------
    def pack(self, exps):
        m = 0
        for i, e in enumerate(exps):
            if e:
                if e > MAX_EXPONENT:
                    raise OverflowError(f"exponent {e} exceeds packing bound")
                m |= e << self._shifts[i]
        return m

    def unpack(self, m):
        return tuple((m >> s) & 0xFF for s in self._shifts)

    def variable(self, i):
        return 1 << self._shifts[i]

    def deg(self, m):
        d = 0
        if self.weights is None:
            while m:
                d += m & 0xFF
                m >>= FIELD_BITS
            return d
        for w in self.weights:
            d += w * (m & 0xFF)
            m >>= FIELD_BITS
        return d

    def divisible(self, a, b):
        """True iff monomial b divides monomial a."""
        h = self.borrow_mask
        return ((a | h) - b) & h == h

    def lcm(self, a, b):
        out = 0
        for s in self._shifts:
            ea, eb = (a >> s) & 0xFF, (b >> s) & 0xFF
            out |= (ea if ea >= eb else eb) << s
        return out

    def monomial_key(self, m):
        """Sort key; larger key = larger monomial in the ring order."""
        return self.order.key(self.unpack(m))

    def _elim_lead_key(self, m):
        x = m & self._xmask
        return (-self.deg_block(x), x, m >> (FIELD_BITS * self.elim))

    def deg_block(self, x):
        d = 0
        while x:
            d += x & 0xFF
            x >>= FIELD_BITS
        return d

    def lead(self, d):
        """Lead monomial of a nonzero homogeneous polynomial dict."""
        if self.elim:
            return min(d, key=self._elim_lead_key)
        return min(d)

    # -- coefficients ----------------------------------------------------
    def normalize(self, c):
        return c % self.char if self.char else Fraction(c)

    def inv(self, c):
        if self.char:
            return pow(c, self.char - 2, self.char)
        return 1 / Fraction(c)

    def neg(self, c):
        return (-c) % self.char if self.char else -c

    # -- polynomial construction -----------------------------------------
    def zero(self):
        return Polynomial(self, {})

    def from_terms(self, terms):
        """Build a polynomial from (coefficient, exponent-tuple) pairs."""
        d = {}
        p = self.char
        for c, exps in terms:
            m = self.pack(exps)
            c = d.get(m, 0) + (c % p if p else Fraction(c))
            if p:
                c %= p
            if c:
                d[m] = c
            else:
                d.pop(m, None)
        return Polynomial(self, d)

    def monomial(self, exps, c=1):
        return self.from_terms([(c, exps)])

    def var(self, i):
        return self.monomial(tuple(1 if j == i else 0 for j in range(self.nvars)))

    def gens(self):
        return [self.var(i) for i in range(self.nvars)]

    def constant(self, c):
        return self.from_terms([(c, (0,) * self.nvars)])

    def monomials_of_degree(self, d):
        """All packed monomials of total degree d (standard grading only)."""
        if self.weights is not None:
            raise ValueError("degree enumeration requires the standard grading")

        def rec(i, rem):
            if i == self.nvars - 1:
                yield rem << self._shifts[i]
                return
            for e in range(rem + 1):
                for tail in rec(i + 1, rem - e):
                    yield (e << self._shifts[i]) | tail

        return list(rec(0, d))

    def random_poly(self, degree, rng, homogeneous=True):
        """Random form of the given degree with uniform coefficients."""
        assert homogeneous
        if self.char == 0:
            raise ValueError("random polynomials need a prime field")
        terms = {m: rng.randrange(self.char) for m in self.monomials_of_degree(degree)}
        return Polynomial(self, {m: c for m, c in terms.items() if c})

    def random_linear_form(self, rng):
        return self.random_poly(1, rng)

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and self.nvars == other.nvars
            and self.char == other.char
            and self.names == other.names
            and self.weights == other.weights
            and self.elim == other.elim
        )

    def __hash__(self):
        return hash((self.nvars, self.char, self.names, self.weights, self.elim))

    def __repr__(self):
        base = f"GF({self.char})" if self.char else "QQ"
        return f"PolyRing({base}[{','.join(self.names)}])"

    parse = None  # bound below


class Polynomial:
    """Immutable-by-convention polynomial: dict of packed monomial -> coefficient."""

    __slots__ = ("ring", "d")

    def __init__(self, ring, d):
        self.ring = ring
        self.d = d

    def is_zero(self):
        return not self.d

    def __bool__(self):
        return bool(self.d)

    def __len__(self):
        return len(self.d)

    def degree(self):
        """Weighted degree (requires homogeneity); -1 for the zero polynomial."""
        if not self.d:
            return -1
        degs = {self.ring.deg(m) for m in self.d}
        if len(degs) != 1:
            raise ValueError("polynomial is not homogeneous")
        return degs.pop()

    def is_homogeneous(self):
        return len({self.ring.deg(m) for m in self.d}) <= 1

    def lead_monomial(self):
        return self.ring.lead(self.d)

    def lead_coefficient(self):
        return self.d[self.ring.lead(self.d)]

    def _check(self, other):
        if not isinstance(other, Polynomial) or other.ring != self.ring:
            raise ValueError("operands live in different rings")

    def __add__(self, other):
        self._check(other)
        p = self.ring.char
        d = dict(self.d)
        for m, c in other.d.items():
            nc = d.get(m, 0) + c
            if p:
                nc %= p
            if nc:
                d[m] = nc
            else:
                d.pop(m, None)
        return Polynomial(self.ring, d)

    def __neg__(self):
        p = self.ring.char
        return Polynomial(self.ring, {m: (p - c if p else -c) for m, c in self.d.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check(other)
        p = self.ring.char
        d = {}
        a, b = (self.d, other.d) if len(self.d) <= len(other.d) else (other.d, self.d)
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                m = m1 + m2
                nc = d.get(m, 0) + c1 * c2
                if p:
                    nc %= p
                if nc:
                    d[m] = nc
                else:
                    d.pop(m, None)
        return Polynomial(self.ring, d)

    __rmul__ = __mul__

    def scale(self, c):
        p = self.ring.char
        c = c % p if p else Fraction(c)
        if not c:
            return Polynomial(self.ring, {})
        if p:
            return Polynomial(self.ring, {m: (v * c) % p for m, v in self.d.items()})
        return Polynomial(self.ring, {m: v * c for m, v in self.d.items()})

    def monic(self):
        if not self.d:
            return self
        return self.scale(self.ring.inv(self.lead_coefficient()))

    def shift_monomial(self, m, c=1):
        """c * x^m * self."""
        p = self.ring.char
        if p:
            return Polynomial(self.ring, {k + m: (v * c) % p for k, v in self.d.items()})
        return Polynomial(self.ring, {k + m: v * c for k, v in self.d.items()})

    def derivative(self, i):
        ring = self.ring
        p = ring.char
        shift = FIELD_BITS * i
        d = {}
        for m, c in self.d.items():
            e = (m >> shift) & 0xFF
            if not e:
                continue
            nc = c * e
            if p:
                nc %= p
            if nc:
                d[m - (1 << shift)] = nc
        return Polynomial(ring, d)

    def evaluate(self, point):
        """Value at a point (list of scalars), exact in the coefficient field."""
        ring = self.ring
        p = ring.char
        total = 0
        for m, c in self.d.items():
            v = c
            for i, e in enumerate(ring.unpack(m)):
                if e:
                    v *= pow(point[i], e, p) if p else point[i] ** e
            total += v
        return total % p if p else total

    def terms(self):
        """Terms sorted descending in the ring order."""
        return sorted(self.d.items(), key=lambda t: self.ring.monomial_key(t[0]), reverse=True)

    def __eq__(self, other):
        return isinstance(other, Polynomial) and self.ring == other.ring and self.d == other.d

    def __hash__(self):
        return hash((self.ring, tuple(sorted(self.d.items()))))

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"<{format_poly(self)}>"


# -- text grammar ---------------------------------------------------------
# terms joined by + / -; term = optional integer coefficient '*' monomial;
# monomial = xI^E factors joined by '*'; e.g. 3*x0^2*x1-x4^3

_TOKEN = re.compile(r"[+-]|[A-Za-z_][A-Za-z_0-9]*(?:\^\d+)?|\d+|\*")


def parse_poly(ring, text):
    """Parse the text polynomial grammar; raises ValueError with position info."""
    s = "".join(text.split())
    if not s:
        raise ValueError("empty polynomial")
    name_to_index = {n: i for i, n in enumerate(ring.names)}
    pos = 0
    terms = []
    sign = 1
    expect_term = True
    coeff = None
    exps = None

    def flush():
        nonlocal coeff, exps
        if exps is None and coeff is None:
            raise ValueError(f"dangling sign at position {pos}")
        c = sign * (1 if coeff is None else coeff)
        terms.append((c, tuple(exps or [0] * ring.nvars)))
        coeff = None
        exps = None

    after_star = False
    signed = False
    while pos < len(s):
        mo = _TOKEN.match(s, pos)
        if not mo:
            raise ValueError(f"parse error at position {pos}: {s[pos:pos + 8]!r}")
        tok = mo.group()
        if tok in "+-":
            if after_star or (expect_term and signed):
                raise ValueError(f"unexpected sign at position {pos}")
            if not expect_term:
                flush()
            sign = 1 if tok == "+" else -1
            signed = True
            expect_term = True
        elif tok.isdigit():
            if coeff is not None or exps is not None:
                raise ValueError(f"unexpected integer at position {pos}")
            coeff = int(tok)
            expect_term = False
            after_star = False
            signed = False
        elif tok == "*":
            if expect_term or after_star:
                raise ValueError(f"unexpected '*' at position {pos}")
            after_star = True
        else:
            name, _, e = tok.partition("^")
            if name not in name_to_index:
                raise ValueError(f"unknown variable {name!r} at position {pos}")
            if exps is None:
                exps = [0] * ring.nvars
            exps[name_to_index[name]] += int(e) if e else 1
            expect_term = False
            after_star = False
            signed = False
        pos = mo.end()
    if expect_term or after_star:
        raise ValueError("truncated polynomial")
    flush()
    return ring.from_terms(terms)


def format_poly(poly):
    """Canonical text form; round-trips bit-exactly through parse_poly."""
    if not poly.d:
        return "0"
    ring = poly.ring
    char = ring.char
    parts = []
    for m, c in poly.terms():
        if char:
            neg = c > char - c  # print small negatives as '-'
            mag = char - c if neg else c
        else:
            neg = c < 0
            mag = -c if neg else c
        factors = [
            f"{ring.names[i]}^{e}" if e > 1 else ring.names[i]
            for i, e in enumerate(ring.unpack(m))
            if e
        ]
        body = "*".join(factors)
        if not factors:
            body = str(mag)
        elif mag != 1:
            body = f"{mag}*{body}"
        parts.append(("-" if neg else "+") + body)
    out = "".join(parts)
    return out[1:] if out.startswith("+") else out


PolyRing.parse = parse_poly
