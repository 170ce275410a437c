"""Bounded complexes of finite free modules.

Homological indexing throughout: d_k maps degree k to degree k-1.  Tensor
products follow the sign rule d(a@b) = d(a)@b + (-1)^deg(a) a@d(b); the basis
of each total term is ordered with the first factor's degree descending, so
matrices are reproducible across runs.
"""

from __future__ import annotations

from dataclasses import dataclass

from .rings import RingMismatchError, RingSpec
from .modules import (FPModule, FreeMap, Subquotient, free_module, homology_at,
                      subquotient, kernel_columns, _zero_subquotient)


@dataclass(frozen=True)
class FreeComplex:
    """Differentials d_k : C_k -> C_(k-1) for lo < k <= hi, plus ranks."""

    ring: RingSpec
    lo: int
    hi: int
    diffs: tuple          # diffs[k - lo - 1] = d_k for k in (lo, hi]
    basis_degrees: tuple = None  # per degree lo..hi, tuple of basis degrees

    def __post_init__(self):
        if self.hi < self.lo:
            raise ValueError("empty degree range")
        if len(self.diffs) != self.hi - self.lo:
            raise ValueError("one differential per adjacent degree pair expected")
        for k in range(self.lo + 1, self.hi):
            upper, lower = self.differential(k + 1), self.differential(k)
            if lower.ncols != upper.nrows:
                raise ValueError(f"rank mismatch between d_{k + 1} and d_{k}")
            if not lower.compose(upper).is_zero_matrix():
                raise ValueError(f"d_{k} o d_{k + 1} is not zero")

    def differential(self, k: int) -> FreeMap:
        if not (self.lo < k <= self.hi):
            raise IndexError(f"no differential at degree {k}")
        return self.diffs[k - self.lo - 1]

    def rank(self, k: int) -> int:
        if k < self.lo or k > self.hi:
            return 0
        if k == self.lo:
            return self.diffs[0].nrows if self.diffs else self._rank_lo()
        return self.differential(k).ncols

    def _rank_lo(self):
        # single-degree complex: rank recorded via basis_degrees
        if self.basis_degrees is not None:
            return len(self.basis_degrees[0])
        return 1

    def ranks(self):
        return {k: self.rank(k) for k in range(self.lo, self.hi + 1)}

    def degrees_at(self, k: int):
        if self.basis_degrees is None or k < self.lo or k > self.hi:
            return None
        return self.basis_degrees[k - self.lo]

    def to_record(self):
        """JSON-ready {degrees, ranks, matrices} record (golden-test format)."""
        return {
            "degrees": [self.lo, self.hi],
            "ranks": [self.rank(k) for k in range(self.lo, self.hi + 1)],
            "matrices": {
                str(k): [[str(e) for e in row]
                         for row in self.differential(k).rows]
                for k in range(self.lo + 1, self.hi + 1)
            },
        }


def single_free(ring: RingSpec, rank: int = 1, degree: int = 0,
                degrees=None) -> FreeComplex:
    """The complex with one free module concentrated in one degree."""
    degs = tuple(degrees) if degrees is not None else (0,) * rank
    return FreeComplex(ring, degree, degree, (), ((degs),))


def two_term(ring: RingSpec, entry, degree_hi: int = 1) -> FreeComplex:
    """0 -> R --entry--> R -> 0 concentrated in degrees degree_hi, degree_hi-1."""
    d = FreeMap(ring, ((entry,),))
    if entry.is_homogeneous() and not entry.is_zero():
        degs = ((0,), (entry.total_degree(),))
    else:
        degs = None
    return FreeComplex(ring, degree_hi - 1, degree_hi, (d,), degs)


def tensor(x: FreeComplex, y: FreeComplex) -> FreeComplex:
    """Total complex of the double complex x tensor y, with Koszul signs."""
    if x.ring != y.ring:
        raise RingMismatchError("tensor of complexes over different rings")
    ring = x.ring
    lo, hi = x.lo + y.lo, x.hi + y.hi

    def blocks(k):
        """(p, q) with p+q=k ordered by p descending, with offsets."""
        out = []
        offset = 0
        for p in range(min(x.hi, k - y.lo), max(x.lo, k - y.hi) - 1, -1):
            q = k - p
            r = x.rank(p) * y.rank(q)
            if r:
                out.append((p, q, offset, x.rank(p), y.rank(q)))
                offset += r
        return out, offset

    diffs = []
    for k in range(lo + 1, hi + 1):
        src, src_rank = blocks(k)
        tgt, tgt_rank = blocks(k - 1)
        tgt_at = {(p, q): off for p, q, off, _, _ in tgt}
        z = ring.zero()
        rows = [[z] * src_rank for _ in range(tgt_rank)]
        for p, q, off, rx, ry in src:
            if (p - 1, q) in tgt_at:
                d = x.differential(p)
                toff = tgt_at[(p - 1, q)]
                for i in range(d.nrows):
                    for j in range(rx):
                        e = d.rows[i][j]
                        if e.is_zero():
                            continue
                        for l in range(ry):
                            rows[toff + i * ry + l][off + j * ry + l] = e
            if (p, q - 1) in tgt_at:
                d = y.differential(q)
                sign = -1 if p % 2 else 1
                toff = tgt_at[(p, q - 1)]
                for i in range(d.nrows):
                    for l in range(ry):
                        e = d.rows[i][l]
                        if e.is_zero():
                            continue
                        if sign < 0:
                            e = -e
                        for j in range(rx):
                            rows[toff + j * d.nrows + i][off + j * ry + l] = \
                                rows[toff + j * d.nrows + i][off + j * ry + l] + e
        diffs.append(FreeMap(ring, tuple(tuple(r) for r in rows)))

    degrees = None
    if x.basis_degrees is not None and y.basis_degrees is not None:
        degrees = []
        for k in range(lo, hi + 1):
            degs = []
            for p, q, off, rx, ry in blocks(k)[0]:
                dx, dy = x.degrees_at(p), y.degrees_at(q)
                for j in range(rx):
                    for l in range(ry):
                        degs.append(dx[j] + dy[l])
            degrees.append(tuple(degs))
        degrees = tuple(degrees)
    return FreeComplex(ring, lo, hi, tuple(diffs), degrees)


def dualize(x: FreeComplex) -> FreeComplex:
    """Apply Hom(-, R): degrees negate, differentials transpose."""
    diffs = tuple(x.differential(-k + 1).transpose()
                  for k in range(-x.hi + 1, -x.lo + 1))
    degrees = None
    if x.basis_degrees is not None:
        degrees = tuple(tuple(-d for d in x.degrees_at(-k))
                        for k in range(-x.hi, -x.lo + 1))
    return FreeComplex(x.ring, -x.hi, -x.lo, diffs, degrees)


def shift(x: FreeComplex, n: int) -> FreeComplex:
    """The same complex with all degrees raised by n (differentials unchanged)."""
    return FreeComplex(x.ring, x.lo + n, x.hi + n, x.diffs, x.basis_degrees)


def tensor_chain_map(fx, x: FreeComplex, x2: FreeComplex,
                     fy, y: FreeComplex, y2: FreeComplex):
    """Tensor of two degree-zero chain maps, as per-degree matrices.

    fx maps x -> x2 (dict degree -> FreeMap), fy maps y -> y2.  Degree-zero
    chain maps need no signs.  Returns dict degree -> FreeMap from
    tensor(x, y) to tensor(x2, y2).
    """
    ring = x.ring
    t_src, t_tgt = tensor(x, y), tensor(x2, y2)
    out = {}
    for k in range(t_src.lo, t_src.hi + 1):
        src_blocks = []
        offset = 0
        for p in range(min(x.hi, k - y.lo), max(x.lo, k - y.hi) - 1, -1):
            q = k - p
            r = x.rank(p) * y.rank(q)
            if r:
                src_blocks.append((p, q, offset))
                offset += r
        src_rank = offset
        tgt_blocks = {}
        offset = 0
        for p in range(min(x2.hi, k - y2.lo), max(x2.lo, k - y2.hi) - 1, -1):
            q = k - p
            r = x2.rank(p) * y2.rank(q)
            if r:
                tgt_blocks[(p, q)] = offset
                offset += r
        tgt_rank = offset
        z = ring.zero()
        rows = [[z] * src_rank for _ in range(tgt_rank)]
        for p, q, off in src_blocks:
            if (p, q) not in tgt_blocks or p not in fx or q not in fy:
                continue
            toff = tgt_blocks[(p, q)]
            a, b = fx[p], fy[q]
            for i in range(a.nrows):
                for j in range(a.ncols):
                    ae = a.rows[i][j]
                    if ae.is_zero():
                        continue
                    for s in range(b.nrows):
                        for t in range(b.ncols):
                            be = b.rows[s][t]
                            if be.is_zero():
                                continue
                            rows[toff + i * b.nrows + s][off + j * b.ncols + t] = \
                                rows[toff + i * b.nrows + s][off + j * b.ncols + t] + ae * be
        out[k] = FreeMap(ring, tuple(tuple(r) for r in rows))
    return out


# ---------------------------------------------------------------------------
# truncation X_{>= n}
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TruncatedComplex:
    """X_hi -> ... -> X_n -> im(d_n), the corner being a non-free module."""

    parent: FreeComplex
    n: int

    @property
    def ring(self):
        return self.parent.ring

    def corner_map(self):
        """d_n into the corner, or None when the corner is the zero module."""
        if self.n <= self.parent.lo or self.n > self.parent.hi:
            return None
        return self.parent.differential(self.n)

    def corner_module(self) -> FPModule:
        """im(d_n) presented as X_n modulo the syzygies of d_n."""
        d = self.corner_map()
        if d is None:
            return FPModule(FreeMap.zero(self.ring, 0, 0))
        ker = kernel_columns(self.ring, d.nrows, d.columns())
        pres = FreeMap.from_columns(self.ring, ker, d.ncols) if ker \
            else FreeMap.zero(self.ring, d.ncols, 0)
        return FPModule(pres)


def truncate_geq(x: FreeComplex, n: int) -> TruncatedComplex:
    if n > x.hi + 1:
        raise ValueError("truncation degree beyond the complex")
    return TruncatedComplex(x, max(n, x.lo))


def truncation_homology(t: TruncatedComplex, k: int,
                        coefficients: FPModule = None) -> Subquotient:
    """Homology of the truncation (tensored with coefficients when given)."""
    x, n = t.parent, t.n
    ring = x.ring
    M = coefficients if coefficients is not None else free_module(ring)
    if k >= n:
        return homology_with_coefficients_presented(x, M, k, "tensor")
    if k == n - 1 and x.lo < n <= x.hi:
        # the corner degree: image of d_n modulo itself, presented honestly
        d = x.differential(n)
        u = M.rank
        from .modules import kron_columns, _block_relations
        cols = kron_columns(d, u)
        rels = list(_block_relations(M, d.nrows)) + cols
        return subquotient(ring, d.nrows * u, cols, tuple(rels))
    return _zero_subquotient(ring)


# ---------------------------------------------------------------------------
# homology with coefficients
# ---------------------------------------------------------------------------

def homology_with_coefficients_presented(x: FreeComplex, module: FPModule,
                                         i: int, variance: str) -> Subquotient:
    """H_i(X tensor M) or H^i(Hom(X, M)) as a presented subquotient.

    Hom(F, M) for F free of rank r is realized as M^r with transposed maps.
    Indices outside the degree range give the zero module.
    """
    ring = x.ring
    if module.ring != ring:
        raise RingMismatchError("coefficients over a different ring")
    if variance == "tensor":
        if i < x.lo or i > x.hi:
            return _zero_subquotient(ring)
        spot = x.rank(i)
        outgoing = x.differential(i) if i > x.lo else None
        incoming = x.differential(i + 1) if i + 1 <= x.hi else None
        return homology_at(module, incoming, outgoing, spot, x.degrees_at(i))
    if variance == "hom":
        if i < x.lo or i > x.hi:
            return _zero_subquotient(ring)
        spot = x.rank(i)
        outgoing = x.differential(i + 1).transpose() if i + 1 <= x.hi else None
        incoming = x.differential(i).transpose() if i > x.lo else None
        degs = x.degrees_at(i)
        spot_deg = tuple(-d for d in degs) if degs is not None else None
        return homology_at(module, incoming, outgoing, spot, spot_deg)
    raise ValueError("variance must be 'tensor' or 'hom'")


def homology_with_coefficients(x: FreeComplex, module: FPModule, i: int,
                               variance: str = "tensor") -> FPModule:
    return homology_with_coefficients_presented(x, module, i, variance).module
