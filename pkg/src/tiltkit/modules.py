"""Finitely presented modules: syzygies, resolutions, Ext and Tor.

A module is the cokernel of a polynomial matrix.  Over a quotient ring
R = P/Q all Groebner machinery runs in the ambient polynomial ring P with the
relation columns q*e_i adjoined, so kernels and membership tests are genuinely
R-linear.  Homology of a complex of finitely presented modules is presented by
cycle generators (a kernel computation) modulo boundary images and ambient
relations (a second kernel computation), which keeps every homology object a
finitely presented module with a decidable zero test.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .rings import (Ideal, Polynomial, RingMismatchError, RingSpec,
                    _divides, _exp_sub, _exp_lcm, _quotient_basis)


class ResolutionTooShortError(ValueError):
    """Requested homological degree exceeds the computed resolution."""


# ---------------------------------------------------------------------------
# free maps and finitely presented modules
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FreeMap:
    """A matrix of polynomials, read as a map R^(ncols) -> R^(nrows)."""

    ring: RingSpec
    rows: tuple

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(tuple(r) for r in self.rows))
        widths = {len(r) for r in self.rows}
        if len(widths) > 1:
            raise ValueError("ragged matrix")
        for row in self.rows:
            for entry in row:
                if entry.ring != self.ring:
                    raise RingMismatchError("matrix entry from a different ring")

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    @classmethod
    def from_columns(cls, ring, columns, nrows):
        rows = tuple(tuple(col[i] for col in columns) for i in range(nrows))
        return cls(ring, rows)

    @classmethod
    def zero(cls, ring, nrows, ncols):
        z = ring.zero()
        return cls(ring, tuple(tuple(z for _ in range(ncols)) for _ in range(nrows)))

    @classmethod
    def identity(cls, ring, n):
        one, z = ring.one(), ring.zero()
        return cls(ring, tuple(tuple(one if i == j else z for j in range(n))
                               for i in range(n)))

    def column(self, j):
        return tuple(self.rows[i][j] for i in range(self.nrows))

    def columns(self):
        return [self.column(j) for j in range(self.ncols)]

    def transpose(self) -> "FreeMap":
        return FreeMap(self.ring, tuple(
            tuple(self.rows[i][j] for i in range(self.nrows))
            for j in range(self.ncols)))

    def compose(self, other: "FreeMap") -> "FreeMap":
        """Matrix product self * other (apply other first)."""
        if other.nrows != self.ncols:
            raise ValueError("rank mismatch in composition")
        z = self.ring.zero()
        rows = []
        for i in range(self.nrows):
            row = []
            for j in range(other.ncols):
                acc = z
                for k in range(self.ncols):
                    acc = acc + self.rows[i][k] * other.rows[k][j]
                row.append(acc)
            rows.append(tuple(row))
        return FreeMap(self.ring, tuple(rows))

    def apply(self, vector):
        z = self.ring.zero()
        out = []
        for i in range(self.nrows):
            acc = z
            for k in range(self.ncols):
                acc = acc + self.rows[i][k] * vector[k]
            out.append(acc)
        return tuple(out)

    def scale_matrix(self, f: Polynomial) -> "FreeMap":
        return FreeMap(self.ring, tuple(tuple(e * f for e in row) for row in self.rows))

    def is_zero_matrix(self) -> bool:
        return all(e.is_zero() for row in self.rows for e in row)

    def vcat_columns(self, other: "FreeMap") -> "FreeMap":
        """Columns of self followed by columns of other (same row count)."""
        if other.nrows != self.nrows:
            raise ValueError("row mismatch")
        return FreeMap(self.ring, tuple(
            self.rows[i] + other.rows[i] for i in range(self.nrows)))

    def __str__(self):
        return "[" + "; ".join(", ".join(str(e) for e in row) for row in self.rows) + "]"


@dataclass(frozen=True)
class FPModule:
    """Cokernel of a free map; gen_degrees record the grading when known."""

    presentation: FreeMap
    gen_degrees: tuple = None

    def __post_init__(self):
        if self.gen_degrees is not None:
            object.__setattr__(self, "gen_degrees", tuple(self.gen_degrees))
            if len(self.gen_degrees) != self.presentation.nrows:
                raise ValueError("one degree per generator expected")

    @property
    def ring(self) -> RingSpec:
        return self.presentation.ring

    @property
    def rank(self) -> int:
        """Number of generators in the presentation."""
        return self.presentation.nrows

    def degrees(self):
        return self.gen_degrees if self.gen_degrees is not None \
            else (0,) * self.rank

    def is_graded(self) -> bool:
        """True when every presentation column is homogeneous for the grading."""
        if self.gen_degrees is None and self.rank > 0:
            degs = (0,) * self.rank
        else:
            degs = self.degrees()
        for q in self.ring.quotient:
            if not q.is_homogeneous():
                return False
        for j in range(self.presentation.ncols):
            col = self.presentation.column(j)
            if vector_degree(col, degs) is None and \
                    any(not e.is_zero() for e in col):
                return False
        return True

    def __str__(self):
        return f"coker{self.presentation}"


def free_module(ring: RingSpec, rank: int = 1) -> FPModule:
    return FPModule(FreeMap.zero(ring, rank, 0), gen_degrees=(0,) * rank)


def cyclic(ideal: Ideal) -> FPModule:
    """R/I presented by the single row of I's generators."""
    ring = ideal.ring
    row = tuple(ideal.generators)
    return FPModule(FreeMap(ring, (row,)), gen_degrees=(0,))


def vector_degree(col, ambient_degrees):
    """Common degree of a homogeneous nonzero vector, else None."""
    deg = None
    for comp, entry in enumerate(col):
        if entry.is_zero():
            continue
        if not entry.is_homogeneous():
            return None
        d = entry.total_degree() + ambient_degrees[comp]
        if deg is None:
            deg = d
        elif deg != d:
            return None
    return deg


def _ring_vec(ring, col):
    """Reinterpret an ambient vector in the (possibly quotient) ring."""
    if not ring.quotient:
        return col
    return tuple(p if p.ring == ring else Polynomial(ring, p.terms) for p in col)


# ---------------------------------------------------------------------------
# vector-level Groebner engine
#
# Terms are (component, exponent tuple) pairs.  With split > 0 the components
# below split dominate every term in the remaining components, which is the
# elimination order used for kernel and lifting computations.
# ---------------------------------------------------------------------------

def _vkey(ring, split):
    rkey = ring.sort_key

    def key(term):
        comp, exps = term
        return (1 if comp < split else 0, rkey(exps), -comp)

    return key


def _vec_to_terms(col):
    d = {}
    for comp, poly in enumerate(col):
        for e, c in poly.terms:
            d[(comp, e)] = c
    return d


def _terms_to_vec(ring, d, r):
    cols = [dict() for _ in range(r)]
    for (comp, e), c in d.items():
        cols[comp][e] = c
    return tuple(Polynomial.from_dict(ring, cd) for cd in cols)


def _freeze(d, key):
    return tuple(sorted(((t, c) for t, c in d.items()), key=lambda tc: key(tc[0]),
                        reverse=True))


def _v_reduce(work, basis, fld, key):
    """Full normal form of a term dict against basis [(leadterm, inv_lc, terms)]."""
    work = dict(work)
    rem = {}
    while work:
        t = max(work, key=key)
        comp, e = t
        for (bc, be), binv, bterms in basis:
            if bc == comp and _divides(be, e):
                factor_c = fld.neg(fld.mul(work[t], binv))
                shift = _exp_sub(e, be)
                for (gc, ge), coeff in bterms:
                    nt = (gc, tuple(a + b for a, b in zip(ge, shift)))
                    s = fld.add(work.get(nt, rem.pop(nt, fld.zero)), fld.mul(coeff, factor_c))
                    if s:
                        work[nt] = s
                    else:
                        work.pop(nt, None)
                break
        else:
            rem[t] = work.pop(t)
    return rem


def _v_monic(d, fld, key):
    lead = max(d, key=key)
    inv = fld.inv(d[lead])
    if inv == fld.one:
        return d
    return {t: fld.mul(c, inv) for t, c in d.items()}


def _v_buchberger(gens, ring, split):
    """Reduced module Groebner basis of the span of the term-dict generators."""
    fld = ring.coefficients
    key = _vkey(ring, split)
    G = [_v_monic(dict(g), fld, key) for g in gens if g]

    def entry(d):
        lt = max(d, key=key)
        return (lt, fld.inv(d[lt]), tuple(d.items()))

    basis = [entry(g) for g in G]
    pairs = set()
    for i in range(len(G)):
        for j in range(i + 1, len(G)):
            if basis[i][0][0] == basis[j][0][0]:
                pairs.add((i, j))

    def pair_key(p):
        i, j = p
        (c, ei), (_, ej) = basis[i][0], basis[j][0]
        lcm = _exp_lcm(ei, ej)
        return (sum(lcm), key((c, lcm)), i, j)

    while pairs:
        i, j = min(pairs, key=pair_key)
        pairs.discard((i, j))
        (comp, ei), (_, ej) = basis[i][0], basis[j][0]
        lcm = _exp_lcm(ei, ej)
        # chain criterion (valid for modules; the coprimality criterion is not)
        skip = False
        for k in range(len(G)):
            if k in (i, j):
                continue
            ck, ek = basis[k][0]
            if (ck == comp and _divides(ek, lcm)
                    and (min(i, k), max(i, k)) not in pairs
                    and (min(j, k), max(j, k)) not in pairs):
                skip = True
                break
        if skip:
            continue
        si, sj = _exp_sub(lcm, ei), _exp_sub(lcm, ej)
        s = {}
        for (gc, ge), coeff in basis[i][2]:
            t = (gc, tuple(a + b for a, b in zip(ge, si)))
            s[t] = fld.add(s.get(t, fld.zero), coeff)
        for (gc, ge), coeff in basis[j][2]:
            t = (gc, tuple(a + b for a, b in zip(ge, sj)))
            v = fld.add(s.get(t, fld.zero), fld.neg(coeff))
            if v:
                s[t] = v
            else:
                s.pop(t, None)
        r = _v_reduce(s, basis, fld, key)
        if r:
            r = _v_monic(r, fld, key)
            G.append(r)
            basis.append(entry(r))
            n = len(G) - 1
            for k in range(n):
                if basis[k][0][0] == basis[n][0][0]:
                    pairs.add((k, n))

    # interreduce: minimal leads, then full tail reduction
    order = sorted(range(len(G)), key=lambda i: key(basis[i][0]))
    minimal = []
    for i in order:
        c, e = basis[i][0]
        if not any(bc == c and _divides(be, e)
                   for (bc, be), _, _ in (basis[k] for k in minimal)):
            minimal.append(i)
    reduced = []
    for i in minimal:
        others = [basis[k] for k in minimal if k != i]
        r = _v_reduce(dict(basis[i][2]), others, fld, key)
        if r:
            reduced.append(_v_monic(r, fld, key))
    reduced.sort(key=lambda d: key(max(d, key=key)), reverse=True)
    return tuple((max(d, key=key), fld.inv(d[max(d, key=key)]), tuple(d.items()))
                 for d in reduced)


@lru_cache(maxsize=None)
def _gb_cached(ring, r, split, frozen_gens):
    gens = [dict(fg) for fg in frozen_gens]
    return _v_buchberger(gens, ring, split)


def _quotient_term_dicts(ring, r):
    out = []
    for q in _quotient_basis(ring):
        for comp in range(r):
            out.append({(comp, e): c for e, c in q.terms})
    return out


def _module_gb(ring, r, cols, extra=()):
    """Plain (split 0) basis of span(cols + extra) + Q*R^r."""
    key = _vkey(ring, 0)
    gens = []
    for col in list(cols) + list(extra):
        d = _vec_to_terms(col)
        if d:
            gens.append(_freeze(d, key))
    for d in _quotient_term_dicts(ring, r):
        gens.append(_freeze(d, key))
    return _gb_cached(ring, r, 0, tuple(gens))


def _augmented_gb(ring, r, cols, extra):
    """Elimination basis used for kernels and lifts through the columns."""
    s = len(cols)
    fld = ring.coefficients
    key = _vkey(ring, r)
    gens = []
    for i, col in enumerate(cols):
        d = _vec_to_terms(col)
        d[(r + i, (0,) * ring.nvars)] = fld.one
        gens.append(_freeze(d, key))
    for col in extra:
        d = _vec_to_terms(col)
        if d:
            gens.append(_freeze(d, key))
    for d in _quotient_term_dicts(ring, r):
        gens.append(_freeze(d, key))
    return _gb_cached(ring, r + s, r, tuple(gens))


def submodule_contains(ring, r, cols, vector) -> bool:
    """vector in span(cols) + Q*R^r?"""
    gb = _module_gb(ring, r, cols)
    return not _v_reduce(_vec_to_terms(vector), list(gb), ring.coefficients,
                         _vkey(ring, 0))


def span_contains(ring, r, big, small) -> bool:
    """Every column of small lies in span(big) + Q*R^r."""
    gb = _module_gb(ring, r, big)
    fld = ring.coefficients
    key = _vkey(ring, 0)
    return all(not _v_reduce(_vec_to_terms(col), list(gb), fld, key)
               for col in small)


def kernel_columns(ring, r, cols, extra=()):
    """Generators of {c : cols * c in span(extra) + Q*R^r}, as vectors in R^s."""
    s = len(cols)
    gb = _augmented_gb(ring, r, cols, extra)
    out = []
    for lead, _, terms in gb:
        if lead[0] >= r:  # no upper-block terms: a syzygy element
            shifted = {(comp - r, e): c for (comp, e), c in terms}
            out.append(_terms_to_vec(ring, shifted, s))
    return out


def lift_columns(ring, r, cols, targets, extra=()):
    """Coefficient vectors c_t with cols * c_t = target_t modulo span(extra) + Q.

    Entries are None where a target is not liftable.  Lifts are deterministic:
    the first solution the normal-form reduction produces.
    """
    gb = _augmented_gb(ring, r, cols, extra)
    fld = ring.coefficients
    key = _vkey(ring, r)
    s = len(cols)
    lifts = []
    for tgt in targets:
        nf = _v_reduce(_vec_to_terms(tgt), list(gb), fld, key)
        if any(comp < r for comp, _ in nf):
            lifts.append(None)
            continue
        coeff = {(comp - r, e): fld.neg(c) for (comp, e), c in nf.items()}
        lifts.append(_terms_to_vec(ring, coeff, s))
    return lifts


# ---------------------------------------------------------------------------
# zero tests, subquotients and induced maps
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def is_zero(module: FPModule) -> bool:
    """Every generator lies in the relation span, coordinate by coordinate."""
    ring = module.ring
    r = module.rank
    if r == 0:
        return True
    cols = module.presentation.columns()
    one, z = ring.one(), ring.zero()
    for i in range(r):
        e_i = tuple(one if k == i else z for k in range(r))
        if not submodule_contains(ring, r, cols, e_i):
            return False
    return True


@dataclass(frozen=True)
class Subquotient:
    """A homology object: cycle generators in a free cover, modulo relations."""

    ring: RingSpec
    ambient_rank: int
    gens: tuple           # cycle representatives, vectors in R^ambient_rank
    relation_cols: tuple  # boundary images + ambient relations, same shape
    module: FPModule      # coker presentation of the subquotient

    def is_zero(self) -> bool:
        return is_zero(self.module)


def _zero_subquotient(ring):
    return Subquotient(ring, 0, (), (), free_module(ring, 0))


def subquotient(ring, ambient_rank, cycle_gens, relation_cols, ambient_degrees=None):
    """Present span(cycle_gens)/span(relation_cols) as a finitely presented module."""
    if not cycle_gens:
        return _zero_subquotient(ring)
    rel_vectors = kernel_columns(ring, ambient_rank, cycle_gens, extra=relation_cols)
    pres = FreeMap.from_columns(ring, rel_vectors, len(cycle_gens)) if rel_vectors \
        else FreeMap.zero(ring, len(cycle_gens), 0)
    degs = None
    if ambient_degrees is not None:
        degs = []
        for g in cycle_gens:
            d = vector_degree(g, ambient_degrees)
            if d is None and any(not p.is_zero() for p in g):
                degs = None
                break
            degs.append(0 if d is None else d)
    module = FPModule(pres, gen_degrees=tuple(degs) if degs is not None else None)
    return Subquotient(ring, ambient_rank, tuple(cycle_gens), tuple(relation_cols),
                       module)


@dataclass(frozen=True)
class ModuleMap:
    """A map between presented modules, as a matrix on their generators."""

    source: FPModule
    target: FPModule
    matrix: FreeMap

    def is_zero_map(self) -> bool:
        ring = self.matrix.ring
        rels = self.target.presentation.columns()
        return all(submodule_contains(ring, self.target.rank, rels, col)
                   for col in self.matrix.columns())

    def is_surjective(self) -> bool:
        combined = self.matrix.vcat_columns(self.target.presentation)
        return is_zero(FPModule(combined))

    def is_injective(self) -> bool:
        ring = self.matrix.ring
        ker = kernel_columns(ring, self.target.rank, self.matrix.columns(),
                             extra=self.target.presentation.columns())
        return span_contains(ring, self.source.rank,
                             self.source.presentation.columns(), ker)

    def is_isomorphism(self) -> bool:
        return self.is_surjective() and self.is_injective()

    def compose(self, earlier: "ModuleMap") -> "ModuleMap":
        return ModuleMap(earlier.source, self.target,
                         self.matrix.compose(earlier.matrix))


def induced_map(source: Subquotient, target: Subquotient,
                ambient_columns) -> ModuleMap:
    """Map induced on subquotients by a chain-level map of their free covers.

    ambient_columns[k] is the image in target's cover of the k-th coordinate
    vector of source's cover.
    """
    ring = source.ring
    if not source.gens:
        return ModuleMap(source.module, target.module,
                         FreeMap.zero(ring, len(target.gens), 0))
    z = ring.zero()
    images = []
    for g in source.gens:
        img = [z] * target.ambient_rank
        for k, coeff in enumerate(g):
            if coeff.is_zero():
                continue
            col = ambient_columns[k]
            for i in range(target.ambient_rank):
                if not col[i].is_zero():
                    img[i] = img[i] + col[i] * coeff
        images.append(tuple(img))
    if not target.gens:
        for img in images:  # must already be a relation (zero in the target)
            if not submodule_contains(ring, target.ambient_rank,
                                      list(target.relation_cols), img):
                raise ValueError("chain map does not preserve cycles")
        return ModuleMap(source.module, target.module,
                         FreeMap.zero(ring, 0, len(source.gens)))
    lifts = lift_columns(ring, target.ambient_rank, list(target.gens), images,
                         extra=target.relation_cols)
    cols = []
    for lf in lifts:
        if lf is None:
            raise ValueError("chain map does not preserve cycles")
        cols.append(lf)
    return ModuleMap(source.module, target.module,
                     FreeMap.from_columns(ring, cols, len(target.gens)))


def kron_columns(freemap: FreeMap, copies: int):
    """Columns of freemap tensor identity: the map on M-copies lifted to covers."""
    ring = freemap.ring
    z = ring.zero()
    cols = []
    for j in range(freemap.ncols):
        for l in range(copies):
            col = [z] * (freemap.nrows * copies)
            for i in range(freemap.nrows):
                entry = freemap.rows[i][j]
                if not entry.is_zero():
                    col[i * copies + l] = entry
            cols.append(tuple(col))
    return cols


def _block_relations(module: FPModule, copies: int):
    """Relation columns of M^copies inside its free cover R^(u*copies)."""
    ring = module.ring
    u = module.rank
    z = ring.zero()
    out = []
    for j in range(copies):
        for t in range(module.presentation.ncols):
            col = [z] * (u * copies)
            for l in range(u):
                entry = module.presentation.rows[l][t]
                if not entry.is_zero():
                    col[j * u + l] = entry
            out.append(tuple(col))
    return out


def homology_at(module: FPModule, incoming, outgoing, spot_rank: int,
                spot_degrees=None) -> Subquotient:
    """Homology of  M^a --incoming--> M^spot --outgoing--> M^b  in the middle.

    incoming/outgoing are FreeMaps over the ring (or None for a missing side);
    spot_degrees are the degrees of the free basis at the spot, used to grade
    the result when the coefficients are graded.
    """
    ring = module.ring
    u = module.rank
    if u == 0 or spot_rank == 0:
        return _zero_subquotient(ring)
    ambient = u * spot_rank

    if outgoing is not None and outgoing.nrows > 0 and not outgoing.is_zero_matrix():
        target_rels = _block_relations(module, outgoing.nrows)
        cycles = kernel_columns(ring, u * outgoing.nrows,
                                kron_columns(outgoing, u), extra=target_rels)
    else:
        one, z = ring.one(), ring.zero()
        cycles = [tuple(one if k == i else z for k in range(ambient))
                  for i in range(ambient)]

    relations = list(_block_relations(module, spot_rank))
    if incoming is not None and incoming.ncols > 0:
        relations.extend(kron_columns(incoming, u))

    degrees = None
    if spot_degrees is not None and module.gen_degrees is not None:
        degrees = tuple(spot_degrees[j] + module.gen_degrees[l]
                        for j in range(spot_rank) for l in range(u))
    return subquotient(ring, ambient, cycles, tuple(relations), degrees)


# ---------------------------------------------------------------------------
# syzygies and free resolutions
# ---------------------------------------------------------------------------

def syzygies(f: FreeMap) -> FreeMap:
    """A map whose image is the kernel of f (over the ring, quotient included)."""
    ring = f.ring
    cols = kernel_columns(ring, f.nrows, f.columns())
    if not cols:
        return FreeMap.zero(ring, f.ncols, 0)
    return FreeMap.from_columns(ring, cols, f.ncols)


def minimize_presentation(f: FreeMap, row_degrees=None):
    """Split off scalar entries by Gaussian pivoting; tracks surviving rows.

    Returns (matrix, row_degrees) where row_degrees follows the kept rows.
    """
    ring = f.ring
    fld = ring.coefficients
    rows = [list(r) for r in f.rows]
    degs = list(row_degrees) if row_degrees is not None else None
    while True:
        pivot = None
        for i, row in enumerate(rows):
            for j, entry in enumerate(row):
                if not entry.is_zero() and entry.total_degree() == 0:
                    pivot = (i, j)
                    break
            if pivot:
                break
        if pivot is None:
            break
        i, j = pivot
        inv = fld.inv(rows[i][j].constant_term())
        for jj in range(len(rows[0])):
            if jj == j or rows[i][jj].is_zero():
                continue
            factor = rows[i][jj].scale(inv)
            for ii in range(len(rows)):
                rows[ii][jj] = rows[ii][jj] - rows[ii][j] * factor
        rows = [row[:j] + row[j + 1:] for k, row in enumerate(rows) if k != i]
        if degs is not None:
            degs.pop(i)
        if not rows:
            break
    out = FreeMap(ring, tuple(tuple(r) for r in rows)) if rows \
        else FreeMap.zero(ring, 0, 0)
    return out, tuple(degs) if degs is not None else None


def _prune_generators(ring, r, cols):
    """Drop columns lying in the span of the others (minimal generating set)."""
    cols = [c for c in cols if any(not p.is_zero() for p in c)]
    cols.sort(key=lambda c: (max((p.total_degree() for p in c if not p.is_zero()),
                                 default=0),
                             tuple(tuple(p.terms) for p in c)))
    kept = list(cols)
    i = 0
    while i < len(kept):
        rest = kept[:i] + kept[i + 1:]
        if rest and submodule_contains(ring, r, rest, kept[i]):
            kept.pop(i)
        else:
            i += 1
    return kept


@dataclass(frozen=True)
class Resolution:
    """Differentials d_1..d_length of a partial free resolution of a module."""

    module: FPModule
    diffs: tuple
    minimal: bool
    f0_degrees: tuple = None

    @property
    def length(self) -> int:
        return len(self.diffs)

    def rank(self, k: int) -> int:
        if k == 0:
            return self.diffs[0].nrows if self.diffs else self.module.rank
        if k <= len(self.diffs):
            return self.diffs[k - 1].ncols
        raise ResolutionTooShortError(f"degree {k} beyond computed length")

    def ranks(self):
        return [self.rank(k) for k in range(self.length + 1)]

    def differential(self, k: int) -> FreeMap:
        if 1 <= k <= len(self.diffs):
            return self.diffs[k - 1]
        raise ResolutionTooShortError(f"degree {k} beyond computed length")

    def degrees(self, k: int):
        """Generator degrees of F_k, or None when the grading is unknown."""
        degs = self.f0_degrees
        if degs is None:
            return None
        for step in range(1, k + 1):
            d = self.diffs[step - 1]
            nxt = []
            for j in range(d.ncols):
                dd = vector_degree(d.column(j), degs)
                if dd is None:
                    nxt.append(None)
                else:
                    nxt.append(dd)
            if any(x is None for x in nxt):
                return None
            degs = tuple(nxt)
        return degs

    def is_exact_at(self, k: int) -> bool:
        """im d_{k+1} = ker d_k, checked by mutual span containment."""
        ring = self.module.ring
        d_k = self.differential(k)
        d_next = self.differential(k + 1)
        ker = kernel_columns(ring, d_k.nrows, d_k.columns())
        return (span_contains(ring, d_k.ncols, d_next.columns(), ker)
                and span_contains(ring, d_k.ncols, ker, d_next.columns()))


@lru_cache(maxsize=None)
def free_resolution(module: FPModule, length: int, minimal=None) -> Resolution:
    """Partial free resolution F_length -> ... -> F_0 with coker(d_1) = M.

    Minimal resolutions (no scalar entries in differentials) are produced
    exactly when the input is graded; ungraded resolutions are merely valid
    and projective-dimension read-offs from them are upper bounds.
    """
    if length < 1:
        raise ValueError("length must be >= 1")
    ring = module.ring
    graded = module.is_graded() if minimal is None else minimal
    d1 = module.presentation
    f0_degrees = module.gen_degrees if graded else (
        module.gen_degrees if module.gen_degrees is not None else None)
    if graded:
        d1, f0_degrees = minimize_presentation(d1, module.degrees())
        cols = _prune_generators(ring, d1.nrows, d1.columns())
        d1 = FreeMap.from_columns(ring, cols, d1.nrows) if cols \
            else FreeMap.zero(ring, d1.nrows, 0)
    diffs = [d1]
    for _ in range(1, length):
        prev = diffs[-1]
        if prev.ncols == 0:
            diffs.append(FreeMap.zero(ring, 0, 0))
            continue
        ker = kernel_columns(ring, prev.nrows, prev.columns())
        if graded:
            ker = _prune_generators(ring, prev.ncols, ker)
        if not ker:
            diffs.append(FreeMap.zero(ring, prev.ncols, 0))
        else:
            diffs.append(FreeMap.from_columns(ring, ker, prev.ncols))
    return Resolution(module, tuple(diffs), graded, f0_degrees)


# ---------------------------------------------------------------------------
# Ext and Tor
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def ext_presented(module: FPModule, coefficients: FPModule, i: int) -> Subquotient:
    """Ext^i(M, N) as a subquotient of Hom(F_i, N) for a resolution F of M."""
    if i < 0:
        raise ValueError("Ext index must be >= 0")
    if coefficients.ring != module.ring:
        raise RingMismatchError("Ext over mismatched rings")
    res = free_resolution(module, i + 1)
    spot = res.rank(i)
    outgoing = res.differential(i + 1).transpose()
    incoming = res.differential(i).transpose() if i >= 1 else None
    degs = res.degrees(i)
    spot_deg = tuple(-d for d in degs) if degs is not None else None
    return homology_at(coefficients, incoming, outgoing, spot, spot_deg)


@lru_cache(maxsize=None)
def tor_presented(module: FPModule, coefficients: FPModule, i: int) -> Subquotient:
    """Tor_i(M, N) as a subquotient of F_i tensor N."""
    if i < 0:
        raise ValueError("Tor index must be >= 0")
    if coefficients.ring != module.ring:
        raise RingMismatchError("Tor over mismatched rings")
    res = free_resolution(module, i + 1)
    spot = res.rank(i)
    outgoing = res.differential(i) if i >= 1 else None
    incoming = res.differential(i + 1)
    return homology_at(coefficients, incoming, outgoing, spot, res.degrees(i))


def ext(module: FPModule, coefficients: FPModule, i: int) -> FPModule:
    return ext_presented(module, coefficients, i).module


def tor(module: FPModule, coefficients: FPModule, i: int) -> FPModule:
    return tor_presented(module, coefficients, i).module


def ext_is_zero(module, coefficients, i) -> bool:
    return ext_presented(module, coefficients, i).is_zero()


def tor_is_zero(module, coefficients, i) -> bool:
    return tor_presented(module, coefficients, i).is_zero()
