"""Exact polynomial arithmetic and ideal algebra over QQ or GF(p).

Everything here is immutable and exact: coefficients are arbitrary-precision
rationals (``fractions.Fraction``) or integers reduced mod p.  Quotient rings
R = k[x...]/Q are handled by carrying the relation ideal Q on the ring and
adjoining its generators to every Groebner computation in the ambient
polynomial ring.
"""

from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache


class RingMismatchError(ValueError):
    """Raised when operands live over different rings."""


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Coefficient field: the rationals or a prime field GF(p)."""

    kind: str  # "rationals" | "prime-field"
    characteristic: int = 0

    def __post_init__(self):
        if self.kind == "rationals":
            if self.characteristic != 0:
                raise ValueError("rationals have characteristic 0")
        elif self.kind == "prime-field":
            if not _is_prime(self.characteristic):
                raise ValueError(f"{self.characteristic} is not prime")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    def coerce(self, x):
        if self.characteristic == 0:
            return Fraction(x)
        return int(x) % self.characteristic

    @property
    def zero(self):
        return self.coerce(0)

    @property
    def one(self):
        return self.coerce(1)

    def add(self, a, b):
        c = a + b
        return c if self.characteristic == 0 else c % self.characteristic

    def mul(self, a, b):
        c = a * b
        return c if self.characteristic == 0 else c % self.characteristic

    def neg(self, a):
        return -a if self.characteristic == 0 else (-a) % self.characteristic

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        if self.characteristic == 0:
            return 1 / Fraction(a)
        return pow(a, self.characteristic - 2, self.characteristic)

    def __str__(self):
        return "QQ" if self.characteristic == 0 else f"GF({self.characteristic})"


QQ = FieldSpec("rationals", 0)


def GF(p: int) -> FieldSpec:
    return FieldSpec("prime-field", p)


# Monomials are plain exponent tuples; orders compare via sort keys so that
# bigger key = bigger monomial.

def _lex_key(exps):
    return exps


def _degrevlex_key(exps):
    # a > b iff deg a > deg b, or degrees tie and the rightmost nonzero
    # entry of a - b is negative; encoded as a lexicographic key.
    return (sum(exps), tuple(-e for e in reversed(exps)))


_ORDER_KEYS = {"lex": _lex_key, "degrevlex": _degrevlex_key}


@dataclass(frozen=True)
class RingSpec:
    """A finitely presented commutative ring k[x_1..x_n]/Q with a monomial order."""

    coefficients: FieldSpec
    variables: tuple
    order: str = "degrevlex"
    quotient: tuple = ()  # generators of Q, as Polynomials in this ring's ambient

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("variable names must be distinct")
        if self.order not in _ORDER_KEYS:
            raise ValueError(f"unknown monomial order {self.order!r}")
        for q in self.quotient:
            if q.ring.variables != self.variables:
                raise ValueError("quotient generators must use the declared variables")

    @property
    def nvars(self) -> int:
        return len(self.variables)

    @property
    def ambient(self) -> "RingSpec":
        """The same polynomial ring without quotient relations."""
        if not self.quotient:
            return self
        return RingSpec(self.coefficients, self.variables, self.order)

    def sort_key(self, exps):
        return _ORDER_KEYS[self.order](exps)

    def zero(self) -> "Polynomial":
        return Polynomial(self, ())

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c) -> "Polynomial":
        c = self.coefficients.coerce(c)
        if not c:
            return Polynomial(self, ())
        return Polynomial(self, (((0,) * self.nvars, c),))

    def gen(self, name: str) -> "Polynomial":
        i = self.variables.index(name)
        exps = tuple(1 if j == i else 0 for j in range(self.nvars))
        return Polynomial(self, ((exps, self.coefficients.one),))

    def gens(self):
        return tuple(self.gen(v) for v in self.variables)

    def monomial(self, exps, coeff=1) -> "Polynomial":
        c = self.coefficients.coerce(coeff)
        if not c:
            return self.zero()
        return Polynomial(self, ((tuple(exps), c),))

    def poly(self, text: str) -> "Polynomial":
        """Parse a polynomial expression like ``x^2*y - 3*(x + 1)``."""
        return parse_polynomial(self, text)

    def with_quotient(self, relations) -> "RingSpec":
        rels = tuple(r if r.ring == self.ambient else Polynomial(self.ambient, r.terms)
                     for r in relations)
        return RingSpec(self.coefficients, self.variables, self.order, rels)

    def extend(self, extra_name: str) -> "RingSpec":
        """Adjoin one fresh variable (used for radical-membership runs)."""
        if extra_name in self.variables:
            raise ValueError(f"variable {extra_name!r} already present")
        bigger = RingSpec(self.coefficients, self.variables + (extra_name,), self.order)
        if self.quotient:
            bigger = bigger.with_quotient(tuple(lift_to(q, bigger) for q in self.quotient))
        return bigger

    def __str__(self):
        s = f"{self.coefficients}[{','.join(self.variables)}]"
        if self.quotient:
            s += "/(" + ", ".join(str(q) for q in self.quotient) + ")"
        return s


class Polynomial:
    """A sparse polynomial: terms sorted descending by the ring's order."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: RingSpec, terms):
        self.ring = ring
        key = ring.sort_key
        self.terms = tuple(sorted(terms, key=lambda t: key(t[0]), reverse=True))
        self._hash = None

    @classmethod
    def from_dict(cls, ring: RingSpec, d) -> "Polynomial":
        return cls(ring, tuple((e, c) for e, c in d.items() if c))

    def is_zero(self) -> bool:
        return not self.terms

    def lead(self):
        """Leading (monomial, coefficient) pair."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        return self.terms[0]

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e, _ in self.terms)

    def is_homogeneous(self) -> bool:
        if not self.terms:
            return True
        degs = {sum(e) for e, _ in self.terms}
        return len(degs) == 1

    def constant_term(self):
        zero_exp = (0,) * self.ring.nvars
        for e, c in self.terms:
            if e == zero_exp:
                return c
        return self.ring.coefficients.zero

    def _check(self, other) -> "Polynomial":
        if self.ring != other.ring:
            raise RingMismatchError(f"{self.ring} vs {other.ring}")
        return other

    def __add__(self, other):
        self._check(other)
        fld = self.ring.coefficients
        d = dict(self.terms)
        for e, c in other.terms:
            s = fld.add(d.get(e, fld.zero), c)
            if s:
                d[e] = s
            else:
                d.pop(e, None)
        return Polynomial.from_dict(self.ring, d)

    def __neg__(self):
        fld = self.ring.coefficients
        return Polynomial(self.ring, tuple((e, fld.neg(c)) for e, c in self.terms))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        self._check(other)
        fld = self.ring.coefficients
        d = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = tuple(a + b for a, b in zip(e1, e2))
                s = fld.add(d.get(e, fld.zero), fld.mul(c1, c2))
                if s:
                    d[e] = s
                else:
                    d.pop(e, None)
        return Polynomial.from_dict(self.ring, d)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c):
        fld = self.ring.coefficients
        c = fld.coerce(c)
        if not c:
            return self.ring.zero()
        return Polynomial(self.ring, tuple((e, fld.mul(k, c)) for e, k in self.terms))

    def term_mul(self, exps, coeff):
        """Multiply by a single term (fast path used by division loops)."""
        fld = self.ring.coefficients
        return Polynomial(self.ring, tuple(
            (tuple(a + b for a, b in zip(e, exps)), fld.mul(c, coeff))
            for e, c in self.terms))

    def monic(self):
        if not self.terms:
            return self
        _, lc = self.lead()
        return self.scale(self.ring.coefficients.inv(lc))

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        out = self.ring.one()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        return (isinstance(other, Polynomial) and self.ring == other.ring
                and self.terms == other.terms)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, self.terms))
        return self._hash

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms:
            mono = "*".join(
                f"{v}^{k}" if k > 1 else v
                for v, k in zip(self.ring.variables, e) if k)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{c}*{mono}")
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    __repr__ = __str__


def lift_to(f: Polynomial, bigger: RingSpec) -> Polynomial:
    """Reinterpret f in a ring whose variable list extends f's (new exponents 0)."""
    pad = bigger.nvars - f.ring.nvars
    if pad < 0 or bigger.variables[:f.ring.nvars] != f.ring.variables:
        raise RingMismatchError("target ring does not extend the source ring")
    return Polynomial(bigger, tuple((e + (0,) * pad, c) for e, c in f.terms))


def _divides(e1, e2) -> bool:
    return all(a <= b for a, b in zip(e1, e2))


def _exp_sub(e1, e2):
    return tuple(a - b for a, b in zip(e1, e2))


def _exp_lcm(e1, e2):
    return tuple(max(a, b) for a, b in zip(e1, e2))


def normal_form(f: Polynomial, basis) -> Polynomial:
    """Full remainder of f under multivariate division by the listed polynomials."""
    ring = f.ring
    fld = ring.coefficients
    divisors = [(g.lead()[0], fld.inv(g.lead()[1]), g) for g in basis if not g.is_zero()]
    rem = {}
    work = dict(f.terms)
    key = ring.sort_key
    while work:
        e = max(work, key=key)
        for le, linv, g in divisors:
            if _divides(le, e):
                # subtract (c / lc(g)) * x^(e-le) * g; the term at e cancels exactly
                factor_c = fld.neg(fld.mul(work[e], linv))
                factor_e = _exp_sub(e, le)
                for ge, gc in g.terms:
                    ne = tuple(a + b for a, b in zip(ge, factor_e))
                    s = fld.add(work.get(ne, rem.pop(ne, fld.zero)), fld.mul(gc, factor_c))
                    if s:
                        work[ne] = s
                    else:
                        work.pop(ne, None)
                break
        else:
            rem[e] = work.pop(e)
    return Polynomial.from_dict(ring, rem)


def _s_polynomial(f: Polynomial, g: Polynomial) -> Polynomial:
    fld = f.ring.coefficients
    (ef, cf), (eg, cg) = f.lead(), g.lead()
    lcm = _exp_lcm(ef, eg)
    return (f.term_mul(_exp_sub(lcm, ef), fld.inv(cf))
            - g.term_mul(_exp_sub(lcm, eg), fld.inv(cg)))


def buchberger(gens, ring: RingSpec):
    """Reduced Groebner basis of the listed polynomials (quotient NOT adjoined here).

    Pair selection follows the normal strategy: smallest lcm degree first,
    ties broken by the monomial order then pair index, so runs are reproducible.
    """
    G = []
    for g in gens:
        if not g.is_zero():
            G.append(g.monic())
    pairs = {(i, j) for i in range(len(G)) for j in range(i + 1, len(G))}

    def pair_key(p):
        i, j = p
        lcm = _exp_lcm(G[i].lead()[0], G[j].lead()[0])
        return (sum(lcm), ring.sort_key(lcm), i, j)

    while pairs:
        i, j = min(pairs, key=pair_key)
        pairs.discard((i, j))
        ei, ej = G[i].lead()[0], G[j].lead()[0]
        lcm = _exp_lcm(ei, ej)
        if lcm == tuple(a + b for a, b in zip(ei, ej)):
            continue  # coprime leading monomials: S-polynomial reduces to zero
        # chain criterion: an already-processed k with LM(k) | lcm makes (i,j) redundant
        skip = False
        for k in range(len(G)):
            if k in (i, j):
                continue
            if (_divides(G[k].lead()[0], lcm)
                    and (min(i, k), max(i, k)) not in pairs
                    and (min(j, k), max(j, k)) not in pairs):
                skip = True
                break
        if skip:
            continue
        r = normal_form(_s_polynomial(G[i], G[j]), G)
        if not r.is_zero():
            G.append(r.monic())
            n = len(G) - 1
            pairs.update((k, n) for k in range(n))
    return _interreduce(G, ring)


def _interreduce(G, ring: RingSpec):
    # minimalize: drop elements whose leading monomial another one divides
    G = sorted((g for g in G if not g.is_zero()),
               key=lambda g: ring.sort_key(g.lead()[0]))
    minimal = []
    for g in G:
        if not any(_divides(h.lead()[0], g.lead()[0]) for h in minimal):
            minimal.append(g)
    reduced = []
    for i, g in enumerate(minimal):
        r = normal_form(g, minimal[:i] + minimal[i + 1:])
        if not r.is_zero():
            reduced.append(r.monic())
    return sorted(reduced, key=lambda g: ring.sort_key(g.lead()[0]), reverse=True)


@lru_cache(maxsize=None)
def _quotient_basis(ring: RingSpec):
    """Groebner basis of the quotient relations, computed in the ambient ring."""
    if not ring.quotient:
        return ()
    return tuple(buchberger(list(ring.quotient), ring.ambient))


class Ideal:
    """A finitely generated ideal with a lazily cached reduced Groebner basis."""

    def __init__(self, ring: RingSpec, generators):
        self.ring = ring
        qb = _quotient_basis(ring)
        gens = []
        for g in generators:
            if g.ring != ring and g.ring == ring.ambient:
                g = Polynomial(ring, g.terms)
            elif g.ring != ring:
                raise RingMismatchError("generator from a different ring")
            if qb and normal_form(_as_ambient(g), list(qb)).is_zero():
                continue  # zero modulo the quotient relations
            if not g.is_zero():
                gens.append(g)
        self.generators = tuple(gens)
        self._basis = None
        self._lock = threading.Lock()

    def groebner(self):
        """Reduced Groebner basis of the ideal plus the quotient relations."""
        if self._basis is None:
            with self._lock:
                if self._basis is None:
                    work = [_as_ambient(g) for g in self.generators]
                    work += list(_quotient_basis(self.ring))
                    self._basis = tuple(buchberger(work, self.ring.ambient))
        return self._basis

    def member(self, f: Polynomial) -> bool:
        if f.ring != self.ring and f.ring != self.ring.ambient:
            raise RingMismatchError("polynomial from a different ring")
        return normal_form(_as_ambient(f), list(self.groebner())).is_zero()

    def normal_form(self, f: Polynomial) -> Polynomial:
        if f.ring != self.ring and f.ring != self.ring.ambient:
            raise RingMismatchError("polynomial from a different ring")
        return normal_form(_as_ambient(f), list(self.groebner()))

    def is_unit_ideal(self) -> bool:
        return self.member(self.ring.one())

    def is_zero_ideal(self) -> bool:
        return not self.groebner()

    def radical_member(self, f: Polynomial) -> bool:
        """f in sqrt(I), decided by 1 in I + (1 - t*f) in the extended ring."""
        if f.ring != self.ring and f.ring != self.ring.ambient:
            raise RingMismatchError("polynomial from a different ring")
        if self.member(f):
            return True
        name = "t#"
        while name in self.ring.variables:
            name += "#"
        big = self.ring.extend(name)
        lifted = [lift_to(_as_ambient(g), big.ambient) for g in self.generators]
        t = big.ambient.gen(name)
        trick = big.ambient.one() - t * lift_to(_as_ambient(f), big.ambient)
        probe = Ideal(big, [Polynomial(big, h.terms) for h in lifted + [trick]])
        return probe.is_unit_ideal()

    def radical_membership_witness(self, f: Polynomial, cap: int = 8):
        """Smallest n <= cap with f^n in I, or None (test aid for radical calls)."""
        power = f.ring.one()
        for n in range(1, cap + 1):
            power = power * f
            if self.member(power):
                return n
        return None

    def __eq__(self, other):
        return (isinstance(other, Ideal) and self.ring == other.ring
                and self.groebner() == other.groebner())

    def __hash__(self):
        return hash((self.ring, self.groebner()))

    def __str__(self):
        return "(" + ", ".join(str(g) for g in self.generators) + ")"

    __repr__ = __str__


def _as_ambient(f: Polynomial) -> Polynomial:
    if not f.ring.quotient:
        return f
    return Polynomial(f.ring.ambient, f.terms)


def groebner(ideal: Ideal) -> Ideal:
    """The same ideal presented by its reduced Groebner basis (basis cached)."""
    basis = ideal.groebner()
    out = Ideal(ideal.ring, tuple(Polynomial(ideal.ring, g.terms) for g in basis))
    out._basis = basis
    return out


def member(f: Polynomial, ideal: Ideal) -> bool:
    return ideal.member(f)


def radical_member(f: Polynomial, ideal: Ideal) -> bool:
    return ideal.radical_member(f)


def ideal_sum(a: Ideal, b: Ideal) -> Ideal:
    if a.ring != b.ring:
        raise RingMismatchError("ideal sum across rings")
    return Ideal(a.ring, a.generators + b.generators)


def ideal_product(a: Ideal, b: Ideal) -> Ideal:
    if a.ring != b.ring:
        raise RingMismatchError("ideal product across rings")
    gens = []
    seen = set()
    for f in a.generators:
        for g in b.generators:
            h = f * g
            if h.terms not in seen:
                seen.add(h.terms)
                gens.append(h)
    return Ideal(a.ring, gens)

def ideal_power(a: Ideal, j: int) -> Ideal:
    if j < 1:
        raise ValueError("ideal power wants j >= 1")
    gens = []
    seen = set()
    for combo in itertools.combinations_with_replacement(a.generators, j):
        h = a.ring.one()
        for f in combo:
            h = h * f
        if h.terms not in seen:
            seen.add(h.terms)
            gens.append(h)
    return Ideal(a.ring, gens)


def generator_powers(ideal: Ideal, j: int) -> Ideal:
    """The ideal generated by the j-th powers of the fixed generator system."""
    if j < 1:
        raise ValueError("generator powers want j >= 1")
    return Ideal(ideal.ring, tuple(g ** j for g in ideal.generators))


# --- small expression parser -------------------------------------------------
#
# Grammar: expr := term (('+'|'-') term)*; term := factor ('*' factor)*;
# factor := atom ('^' int)?; atom := int | var | '(' expr ')' | '-' atom.


class PolyParseError(ValueError):
    def __init__(self, message, position):
        super().__init__(f"{message} (at offset {position})")
        self.position = position


def _tokenize_poly(text):
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(("int", text[i:j], i))
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("name", text[i:j], i))
            i = j
        elif ch in "+-*^()/":
            tokens.append((ch, ch, i))
            i += 1
        else:
            raise PolyParseError(f"unexpected character {ch!r}", i)
    tokens.append(("end", "", len(text)))
    return tokens


def parse_polynomial(ring: RingSpec, text: str) -> Polynomial:
    tokens = _tokenize_poly(text)
    pos = 0

    def peek():
        return tokens[pos]

    def take(kind=None):
        nonlocal pos
        tok = tokens[pos]
        if kind is not None and tok[0] != kind:
            raise PolyParseError(f"expected {kind}, found {tok[1]!r}", tok[2])
        pos += 1
        return tok

    def atom():
        kind, value, at = peek()
        if kind == "int":
            take()
            return ring.constant(int(value))
        if kind == "name":
            take()
            if value not in ring.variables:
                raise PolyParseError(f"unknown variable {value!r}", at)
            return ring.gen(value)
        if kind == "(":
            take()
            e = expr()
            take(")")
            return e
        if kind == "-":
            take()
            return -atom()
        raise PolyParseError(f"unexpected token {value!r}", at)

    def factor():
        base = atom()
        if peek()[0] == "^":
            take()
            exp = take("int")
            return base ** int(exp[1])
        return base

    def term():
        out = factor()
        while peek()[0] in ("*", "/"):
            op = take()[0]
            rhs = factor()
            if op == "*":
                out = out * rhs
            else:
                if rhs.total_degree() != 0 or rhs.is_zero():
                    raise PolyParseError("division only by nonzero constants", peek()[2])
                out = out.scale(ring.coefficients.inv(rhs.constant_term()))
        return out

    def expr():
        if peek()[0] == "-":
            take()
            out = -term()
        else:
            out = term()
        while peek()[0] in ("+", "-"):
            op = take()[0]
            rhs = term()
            out = out + rhs if op == "+" else out - rhs
        return out

    result = expr()
    end = peek()
    if end[0] != "end":
        raise PolyParseError(f"trailing input {end[1]!r}", end[2])
    return result
