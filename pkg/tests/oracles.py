"""Brute-force oracles used by the test suite, independent of the engine."""

import numpy as np

from p4surfaces import linalg


def ideal_degree_dim(polys, d):
    """dim of the degree-d piece of an ideal, by rank of monomial multiples."""
    ring = polys[0].ring
    p = ring.char
    basis = {m: k for k, m in enumerate(ring.monomials_of_degree(d))}
    rows = []
    for f in polys:
        df = f.degree()
        if df > d:
            continue
        for m in ring.monomials_of_degree(d - df):
            row = [0] * len(basis)
            for k, c in f.d.items():
                row[basis[k + m]] = c
            rows.append(row)
    if not rows:
        return 0
    return linalg.rank(np.array(rows, dtype=np.int64), p)


def staircase_dim(ring, lead_monomials, d):
    """Number of degree-d monomials divisible by some lead monomial."""
    count = 0
    for m in ring.monomials_of_degree(d):
        if any(ring.divisible(m, g) for g in lead_monomials):
            count += 1
    return count
