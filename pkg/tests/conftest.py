"""Shared fixtures and the independent brute-force oracles used across suites."""

from __future__ import annotations

import itertools

import pytest

from tiltkit.rings import QQ, Ideal, Polynomial, RingSpec
from tiltkit.slices import _gauss_rank, monomials


@pytest.fixture
def R2():
    return RingSpec(QQ, ("x", "y"))


@pytest.fixture
def R3():
    return RingSpec(QQ, ("x", "y", "z"))


def poly_to_vec(f):
    return {e: c for e, c in f.terms}


def brute_force_member(f, generators, ring, degree_cap=6):
    """Membership by coefficient solving: f in span{m * g} up to the cap.

    Exact for monomial ideals when the cap is at least deg f; used as the
    Groebner-free cross-check.
    """
    if f.is_zero():
        return True
    span = []
    for g in generators:
        gdeg = g.total_degree()
        for d in range(0, degree_cap - gdeg + 1):
            for m in monomials(ring.nvars, d):
                span.append(poly_to_vec(g.term_mul(m, ring.coefficients.one)))
    fld = ring.coefficients
    base = _gauss_rank(span, fld)
    return _gauss_rank(span + [poly_to_vec(f)], fld) == base


def brute_force_vector_kernel(columns, nrows, ring, degree_cap=3):
    """All low-degree kernel vectors of a polynomial matrix, by linear solving.

    Returns vectors (tuples of polynomials) spanning {c : sum c_j col_j = 0}
    with deg(c_j) <= degree_cap, computed with dense slice linear algebra.
    """
    fld = ring.coefficients
    ncols = len(columns)
    unknowns = []  # (col index, monomial)
    for j in range(ncols):
        for d in range(0, degree_cap + 1):
            for m in monomials(ring.nvars, d):
                unknowns.append((j, m))
    # row index keys: (component, monomial)
    rows = {}
    for uidx, (j, m) in enumerate(unknowns):
        for comp in range(nrows):
            entry = columns[j][comp]
            for e, c in entry.terms:
                key = (comp, tuple(a + b for a, b in zip(e, m)))
                rows.setdefault(key, {})[uidx] = c
    # solve the homogeneous system by reducing the transpose
    keys = sorted(rows)
    matrix = [[rows[k].get(u, fld.zero) for u in range(len(unknowns))]
              for k in keys]
    # gaussian elimination to find a nullspace basis
    m_rows = [list(r) for r in matrix]
    pivots = {}
    r = 0
    for col in range(len(unknowns)):
        sel = None
        for i in range(r, len(m_rows)):
            if m_rows[i][col]:
                sel = i
                break
        if sel is None:
            continue
        m_rows[r], m_rows[sel] = m_rows[sel], m_rows[r]
        inv = fld.inv(m_rows[r][col])
        m_rows[r] = [fld.mul(v, inv) for v in m_rows[r]]
        for i in range(len(m_rows)):
            if i != r and m_rows[i][col]:
                factor = m_rows[i][col]
                m_rows[i] = [fld.add(a, fld.neg(fld.mul(factor, b)))
                             for a, b in zip(m_rows[i], m_rows[r])]
        pivots[col] = r
        r += 1
    free_cols = [c for c in range(len(unknowns)) if c not in pivots]
    vectors = []
    for fc in free_cols:
        sol = [fld.zero] * len(unknowns)
        sol[fc] = fld.one
        for pc, pr in pivots.items():
            sol[pc] = fld.neg(m_rows[pr][fc])
        polys = []
        for j in range(ncols):
            terms = {}
            for uidx, (jj, m) in enumerate(unknowns):
                if jj == j and sol[uidx]:
                    terms[m] = sol[uidx]
            polys.append(Polynomial.from_dict(ring, terms))
        vectors.append(tuple(polys))
    return vectors
