"""Input DSL: declarations, command dispatch, and canonical serialization.

Statements end with ';'.  Declarations:

    ring R = QQ[x,y] order degrevlex;
    ring S = GF(5)[x]/(x^2) order degrevlex;
    ideal I = (x^2 - y, x*y - 1) in R;
    module M = coker [[x, y]] in R;
    seq T = ({(x, y)}, {(x, y)}) in R;   # or bare (x, y) entries

Commands:

    groebner I; grade I M; koszul I; ext I M 2; tor I M 1; smodule I 2;
    pdcheck I 2; compare I M 2; thomason I <= J; validate T;
    member-tilt T M; member-cotilt T M; resolving T; proreg I depth 4;
    cech-h I M 2; cech-coh I M 2; local-h I M 2; local-coh I M 2; iszero M;

A ring name is accepted wherever a module is expected and denotes the free
module of rank one.  Sessions re-serialize to canonical DSL text, and the
canonical text re-parses to an identical session (byte-stable round trip).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .koszul import (ComparisonMapError, GradeMismatchError, compare_ext_koszul,
                     grade as _grade, koszul as _koszul_op, s_module,
                     s_module_pd_check)
from .modules import (FPModule, FreeMap, cyclic, ext_presented, free_module,
                      is_zero, tor_presented)
from .rings import (FieldSpec, GF, Ideal, PolyParseError, QQ, RingSpec,
                    parse_polynomial)
from .spectrum import (CharacteristicSequence, GabrielBasis, ThomasonSet,
                       UnvalidatedSequenceError, cotilting_membership,
                       resolving_generators, thomason_contains,
                       tilting_membership, validate_characteristic_sequence)
from .towers import (cech_cohomology_vanishes, cech_homology_vanishes,
                     local_vanishing, weakly_proregular_upto)


class DslError(ValueError):
    """Parse-category failure: syntax, unknown name, or kind mismatch."""

    def __init__(self, message, line, column):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


@dataclass
class Limits:
    """Documented defaults bounding every potentially expensive loop."""

    max_degree: int = 6
    tower_depth: int = 4
    resolution_length: int = 8


@dataclass(frozen=True)
class CommandResult:
    status: str            # "ok" | "error"
    command: str
    payload: dict = None
    citations: tuple = ()
    error: dict = None

    def to_record(self):
        rec = {"status": self.status, "command": self.command,
               "citations": list(self.citations)}
        if self.payload is not None:
            rec["payload"] = self.payload
        if self.error is not None:
            rec["error"] = self.error
        return rec


# ---------------------------------------------------------------------------
# tokenizer
# ---------------------------------------------------------------------------

_PUNCT = ("<=", "(", ")", "[", "]", "{", "}", ",", ";", "=", "/", "<")


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    offset: int
    line: int
    column: int

    @property
    def end(self):
        return self.offset + len(self.text)


def _tokenize(text):
    tokens = []
    i, line, col = 0, 1, 1
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if ch.isspace():
            i += 1
            col += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if text.startswith("<=", i):
            tokens.append(_Token("punct", "<=", i, line, col))
            i += 2
            col += 2
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(_Token("int", text[i:j], i, line, col))
            col += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(_Token("name", text[i:j], i, line, col))
            col += j - i
            i = j
            continue
        if ch in "()[]{},;=/<^*+-":
            tokens.append(_Token("punct", ch, i, line, col))
            i += 1
            col += 1
            continue
        raise DslError(f"unexpected character {ch!r}", line, col)
    tokens.append(_Token("end", "", n, line, col))
    return tokens


# ---------------------------------------------------------------------------
# session
# ---------------------------------------------------------------------------

@dataclass
class Session:
    limits: Limits = field(default_factory=Limits)
    rings: dict = field(default_factory=dict)
    ideals: dict = field(default_factory=dict)
    modules: dict = field(default_factory=dict)
    seqs: dict = field(default_factory=dict)
    statements: list = field(default_factory=list)  # canonical text lines
    seed: int = 0

    def declare(self, kind, name, value, canonical):
        registry = getattr(self, kind + "s")
        for reg in (self.rings, self.ideals, self.modules, self.seqs):
            if registry is not reg and name in reg:
                raise KeyError(f"name {name!r} already declared with another kind")
        if name in registry:
            raise KeyError(f"{kind} {name!r} already declared")
        registry[name] = value
        self.statements.append(canonical)

    def serialize(self) -> str:
        return "\n".join(self.statements) + ("\n" if self.statements else "")


def _canonical_field(fld: FieldSpec) -> str:
    return "QQ" if fld.characteristic == 0 else f"GF({fld.characteristic})"


def _canonical_ring(name, ring: RingSpec) -> str:
    body = f"{_canonical_field(ring.coefficients)}[{','.join(ring.variables)}]"
    if ring.quotient:
        body += "/(" + ", ".join(str(q) for q in ring.quotient) + ")"
    return f"ring {name} = {body} order {ring.order};"


def _canonical_ideal(name, ideal: Ideal, ring_name) -> str:
    gens = ", ".join(str(g) for g in ideal.generators)
    return f"ideal {name} = ({gens}) in {ring_name};"


def _canonical_module(name, module: FPModule, ring_name) -> str:
    rows = ", ".join("[" + ", ".join(str(e) for e in row) + "]"
                     for row in module.presentation.rows)
    return f"module {name} = coker [{rows}] in {ring_name};"


def _canonical_seq(name, seq, ring_name) -> str:
    entries = []
    for entry in seq.entries:
        ideals = ", ".join("(" + ", ".join(str(g) for g in b.generators) + ")"
                           for b in entry.basis)
        entries.append("{" + ideals + "}")
    return f"seq {name} = ({', '.join(entries)}) in {ring_name};"


# ---------------------------------------------------------------------------
# parser / executor
# ---------------------------------------------------------------------------

class _Parser:
    def __init__(self, text, session: Session):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0
        self.session = session

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def take(self, text=None, kind=None) -> _Token:
        tok = self.tokens[self.pos]
        if text is not None and tok.text != text:
            raise DslError(f"expected {text!r}, found {tok.text!r}",
                           tok.line, tok.column)
        if kind is not None and tok.kind != kind:
            raise DslError(f"expected {kind}, found {tok.text!r}",
                           tok.line, tok.column)
        self.pos += 1
        return tok

    def _command_word(self) -> _Token:
        """A statement head; adjacent name('-'name)* merge into one word."""
        head = self.take(kind="name")
        text = head.text
        while (self.peek().text == "-" and self.tokens[self.pos].offset ==
               head.offset + len(text) and
               self.tokens[self.pos + 1].kind == "name" and
               self.tokens[self.pos + 1].offset == self.tokens[self.pos].offset + 1):
            self.take("-")
            part = self.take(kind="name")
            text += "-" + part.text
        return _Token("name", text, head.offset, head.line, head.column)

    # -- raw-text slices for polynomial atoms --------------------------------

    def _slice_until(self, closers, depth_openers="([{", depth_closers=")]}"):
        """Raw text from here to the next top-level closer/comma; not consumed."""
        start_tok = self.peek()
        depth = 0
        j = self.pos
        while True:
            tok = self.tokens[j]
            if tok.kind == "end":
                raise DslError("unterminated expression", tok.line, tok.column)
            if depth == 0 and tok.text in closers:
                break
            if tok.text in depth_openers:
                depth += 1
            elif tok.text in depth_closers:
                depth -= 1
                if depth < 0:
                    break
            j += 1
        end_tok = self.tokens[j]
        return start_tok, self.text[start_tok.offset:end_tok.offset], j

    def _parse_poly(self, ring, closers):
        start_tok, raw, j = self._slice_until(closers)
        if not raw.strip():
            raise DslError("empty polynomial expression",
                           start_tok.line, start_tok.column)
        try:
            poly = parse_polynomial(ring, raw)
        except PolyParseError as exc:
            abs_off = start_tok.offset + exc.position
            line = self.text.count("\n", 0, abs_off) + 1
            col = abs_off - (self.text.rfind("\n", 0, abs_off) + 1) + 1
            raise DslError(f"bad polynomial: {exc}", line, col) from exc
        self.pos = j
        return poly

    def _poly_list(self, ring, open_text="(", close_text=")"):
        """A parenthesized comma-separated polynomial list; may be empty."""
        self.take(open_text)
        polys = []
        if self.peek().text == close_text:
            self.take(close_text)
            return polys
        while True:
            polys.append(self._parse_poly(ring, (",", close_text)))
            tok = self.take()
            if tok.text == close_text:
                return polys
            if tok.text != ",":
                raise DslError(f"expected ',' or {close_text!r}, found {tok.text!r}",
                               tok.line, tok.column)

    # -- name lookups ---------------------------------------------------------

    def _lookup(self, kind, tok: _Token):
        registry = getattr(self.session, kind + "s")
        if tok.text not in registry:
            for other in ("ring", "ideal", "module", "seq"):
                if other != kind and tok.text in getattr(self.session, other + "s"):
                    raise DslError(
                        f"kind mismatch: {tok.text!r} is a {other}, not a {kind}",
                        tok.line, tok.column)
            raise DslError(f"unknown {kind} {tok.text!r}", tok.line, tok.column)
        return registry[tok.text]

    def _module_arg(self, tok: _Token, ring: RingSpec) -> FPModule:
        """A module name, or a ring name standing for its rank-one free module."""
        if tok.text in self.session.modules:
            module = self.session.modules[tok.text]
        elif tok.text in self.session.rings:
            module = free_module(self.session.rings[tok.text])
        else:
            raise DslError(f"unknown module {tok.text!r}", tok.line, tok.column)
        if module.ring != ring:
            raise DslError(f"kind mismatch: module {tok.text!r} lives over a "
                           "different ring", tok.line, tok.column)
        return module

    # -- statements -----------------------------------------------------------

    def statements(self):
        """Parse and execute every statement; yields results for commands."""
        results = []
        while self.peek().kind != "end":
            head = self._command_word()
            if head.text == "ring":
                self._ring_decl()
            elif head.text == "ideal":
                self._ideal_decl()
            elif head.text == "module":
                self._module_decl()
            elif head.text == "seq":
                self._seq_decl()
            else:
                results.append(self._command(head))
        return results

    def _ring_decl(self):
        name = self.take(kind="name")
        self.take("=")
        fld_tok = self.take(kind="name")
        if fld_tok.text == "QQ":
            fld = QQ
        elif fld_tok.text == "GF":
            self.take("(")
            p = self.take(kind="int")
            self.take(")")
            try:
                fld = GF(int(p.text))
            except ValueError as exc:
                raise DslError(str(exc), p.line, p.column) from exc
        else:
            raise DslError(f"unknown coefficient field {fld_tok.text!r}",
                           fld_tok.line, fld_tok.column)
        self.take("[")
        variables = [self.take(kind="name").text]
        while self.peek().text == ",":
            self.take(",")
            variables.append(self.take(kind="name").text)
        self.take("]")
        try:
            ring = RingSpec(fld, tuple(variables))
        except ValueError as exc:
            raise DslError(str(exc), name.line, name.column) from exc
        if self.peek().text == "/":
            self.take("/")
            rels = self._poly_list(ring)
            ring = ring.with_quotient(rels)
        order = "degrevlex"
        if self.peek().text == "order":
            self.take("order")
            order_tok = self.take(kind="name")
            if order_tok.text not in ("lex", "degrevlex"):
                raise DslError(f"unknown order {order_tok.text!r}",
                               order_tok.line, order_tok.column)
            order = order_tok.text
        self.take(";")
        if order != ring.order:
            ring = RingSpec(ring.coefficients, ring.variables, order,
                            tuple(parse_polynomial(
                                RingSpec(ring.coefficients, ring.variables, order),
                                str(q)) for q in ring.quotient))
        try:
            self.session.declare("ring", name.text, ring,
                                 _canonical_ring(name.text, ring))
        except KeyError as exc:
            raise DslError(str(exc.args[0]), name.line, name.column) from exc

    def _ring_of(self, tok: _Token) -> tuple:
        ring_name = tok.text
        ring = self._lookup("ring", tok)
        return ring_name, ring

    def _ideal_decl(self):
        name = self.take(kind="name")
        self.take("=")
        # generators need the ring, which is declared after 'in'; scan ahead
        save = self.pos
        depth = 0
        j = self.pos
        while not (depth == 0 and self.tokens[j].text == "in"):
            if self.tokens[j].kind == "end":
                raise DslError("missing 'in RING' clause",
                               self.tokens[j].line, self.tokens[j].column)
            if self.tokens[j].text in "([{":
                depth += 1
            elif self.tokens[j].text in ")]}":
                depth -= 1
            j += 1
        ring_tok = self.tokens[j + 1]
        _, ring = self._ring_of(ring_tok)
        self.pos = save
        gens = self._poly_list(ring)
        self.take("in")
        self.take(ring_tok.text)
        self.take(";")
        ideal = Ideal(ring, gens)
        try:
            self.session.declare("ideal", name.text, ideal,
                                 _canonical_ideal(name.text, ideal, ring_tok.text))
        except KeyError as exc:
            raise DslError(str(exc.args[0]), name.line, name.column) from exc

    def _module_decl(self):
        name = self.take(kind="name")
        self.take("=")
        self.take("coker")
        save = self.pos
        depth = 0
        j = self.pos
        while not (depth == 0 and self.tokens[j].text == "in"):
            if self.tokens[j].kind == "end":
                raise DslError("missing 'in RING' clause",
                               self.tokens[j].line, self.tokens[j].column)
            if self.tokens[j].text in "([{":
                depth += 1
            elif self.tokens[j].text in ")]}":
                depth -= 1
            j += 1
        ring_tok = self.tokens[j + 1]
        _, ring = self._ring_of(ring_tok)
        self.pos = save
        self.take("[")
        rows = []
        while True:
            rows.append(self._poly_list(ring, "[", "]"))
            tok = self.take()
            if tok.text == "]":
                break
            if tok.text != ",":
                raise DslError(f"expected ',' or ']', found {tok.text!r}",
                               tok.line, tok.column)
        widths = {len(r) for r in rows}
        if len(widths) > 1:
            raise DslError("ragged presentation matrix", name.line, name.column)
        self.take("in")
        self.take(ring_tok.text)
        self.take(";")
        module = FPModule(FreeMap(ring, tuple(tuple(r) for r in rows)))
        try:
            self.session.declare("module", name.text, module,
                                 _canonical_module(name.text, module, ring_tok.text))
        except KeyError as exc:
            raise DslError(str(exc.args[0]), name.line, name.column) from exc

    def _seq_decl(self):
        name = self.take(kind="name")
        self.take("=")
        save = self.pos
        depth = 0
        j = self.pos
        while not (depth == 0 and self.tokens[j].text == "in"):
            if self.tokens[j].kind == "end":
                raise DslError("missing 'in RING' clause",
                               self.tokens[j].line, self.tokens[j].column)
            if self.tokens[j].text in "([{":
                depth += 1
            elif self.tokens[j].text in ")]}":
                depth -= 1
            j += 1
        ring_tok = self.tokens[j + 1]
        _, ring = self._ring_of(ring_tok)
        self.pos = save
        self.take("(")
        entries = []
        while True:
            tok = self.peek()
            if tok.text == "(":
                entries.append(GabrielBasis(
                    ring, (Ideal(ring, self._poly_list(ring)),)))
            elif tok.text == "{":
                self.take("{")
                ideals = []
                while True:
                    if self.peek().text == "(":
                        ideals.append(Ideal(ring, self._poly_list(ring)))
                    else:
                        ident = self.take(kind="name")
                        ideals.append(self._lookup("ideal", ident))
                    nxt = self.take()
                    if nxt.text == "}":
                        break
                    if nxt.text != ",":
                        raise DslError(f"expected ',' or '}}', found {nxt.text!r}",
                                       nxt.line, nxt.column)
                entries.append(GabrielBasis(ring, tuple(ideals)))
            elif tok.kind == "name":
                ident = self.take(kind="name")
                entries.append(GabrielBasis(
                    ring, (self._lookup("ideal", ident),)))
            else:
                raise DslError(f"expected a sequence entry, found {tok.text!r}",
                               tok.line, tok.column)
            nxt = self.take()
            if nxt.text == ")":
                break
            if nxt.text != ",":
                raise DslError(f"expected ',' or ')', found {nxt.text!r}",
                               nxt.line, nxt.column)
        self.take("in")
        self.take(ring_tok.text)
        self.take(";")
        seq = CharacteristicSequence(tuple(entries))
        try:
            self.session.declare("seq", name.text, seq,
                                 _canonical_seq(name.text, seq, ring_tok.text))
        except KeyError as exc:
            raise DslError(str(exc.args[0]), name.line, name.column) from exc

    # -- commands -------------------------------------------------------------

    def _command(self, head: _Token) -> CommandResult:
        handler = _COMMANDS.get(head.text)
        if handler is None:
            raise DslError(f"unknown command {head.text!r}", head.line, head.column)
        spec, fn = handler
        args = []
        canonical_parts = [head.text]
        for kind in spec:
            if kind == "int":
                tok = self.take(kind="int")
                args.append(int(tok.text))
                canonical_parts.append(tok.text)
            elif kind == "le":
                self.take("<=")
                canonical_parts.append("<=")
            elif kind == "depth":
                self.take("depth")
                canonical_parts.append("depth")
            else:
                tok = self.take(kind="name")
                args.append((kind, tok))
                canonical_parts.append(tok.text)
        self.take(";")
        canonical = " ".join(canonical_parts) + ";"
        self.session.statements.append(canonical)
        resolved = []
        ring = None
        for a in args:
            if not isinstance(a, tuple):
                resolved.append(a)
                continue
            kind, tok = a
            if kind == "ideal":
                value = self._lookup("ideal", tok)
                ring = value.ring
            elif kind == "seq":
                value = self._lookup("seq", tok)
                ring = value.ring
            elif kind == "module":
                if ring is None:
                    raise DslError("module argument needs a preceding ideal/seq",
                                   tok.line, tok.column)
                value = self._module_arg(tok, ring)
            elif kind == "anymodule":
                if tok.text in self.session.modules:
                    value = self.session.modules[tok.text]
                elif tok.text in self.session.rings:
                    value = free_module(self.session.rings[tok.text])
                else:
                    raise DslError(f"unknown module {tok.text!r}",
                                   tok.line, tok.column)
            else:
                raise DslError(f"internal: bad arg kind {kind}", tok.line, tok.column)
            resolved.append(value)
        try:
            payload, citations = fn(self.session, *resolved)
            return CommandResult("ok", canonical, payload, tuple(citations))
        except GradeMismatchError as exc:
            return CommandResult("error", canonical,
                                 error={"code": "certificate-mismatch",
                                        "message": str(exc)})
        except ComparisonMapError as exc:
            return CommandResult("error", canonical,
                                 error={"code": "comparison-map-failure",
                                        "message": str(exc)})
        except UnvalidatedSequenceError as exc:
            return CommandResult("error", canonical,
                                 error={"code": "unvalidated-sequence",
                                        "message": str(exc)})
        except (ValueError, ArithmeticError) as exc:
            return CommandResult("error", canonical,
                                 error={"code": "computation-error",
                                        "message": str(exc)})


# ---------------------------------------------------------------------------
# command handlers
# ---------------------------------------------------------------------------

def _h_groebner(session, ideal):
    basis = ideal.groebner()
    return {"basis": [str(g) for g in basis]}, ()


def _h_grade(session, ideal, module):
    bound = max(1, min(len(ideal.generators) + 1, session.limits.resolution_length))
    report = _grade(ideal, module, bound)
    return ({"value": report.value, "bound": report.bound,
             "koszul_certificate": list(report.koszul_flags),
             "ext_certificate": list(report.ext_flags)},
            ("koszul-cohomology-grade", "ext-grade-double-certification"))


def _h_koszul(session, ideal):
    data = _koszul_op(ideal)
    return {"generators": [str(g) for g in data.generators],
            "complex": data.complex.to_record()}, ()


def _check_index(session, i):
    if i > session.limits.resolution_length:
        raise ValueError(
            f"resolution too short: index {i} exceeds the configured "
            f"length {session.limits.resolution_length}")


def _h_ext(session, ideal, module, i):
    _check_index(session, i)

    sub = ext_presented(cyclic(ideal), module, i)
    return {"index": i, "is_zero": sub.is_zero(),
            "presentation": [[str(e) for e in row]
                             for row in sub.module.presentation.rows]}, ()


def _h_tor(session, ideal, module, i):
    _check_index(session, i)

    sub = tor_presented(cyclic(ideal), module, i)
    return {"index": i, "is_zero": sub.is_zero(),
            "presentation": [[str(e) for e in row]
                             for row in sub.module.presentation.rows]}, ()


def _h_smodule(session, ideal, k):
    smod = s_module(ideal, k)
    return {"index": k,
            "presentation": [[str(e) for e in row]
                             for row in smod.module.presentation.rows]}, ()


def _h_pdcheck(session, ideal, n):
    report = s_module_pd_check(ideal, n)
    return report.to_record(), ("dual-koszul-tail-resolution",)


def _h_compare(session, ideal, module, n):
    _check_index(session, n)
    report = compare_ext_koszul(ideal, module, n)
    return report.to_record(), ("ext-koszul-comparison-map",)


def _h_thomason(session, ideal_i, ideal_j):
    ring = ideal_i.ring
    big = ThomasonSet(ring, (ideal_j,))
    small = ThomasonSet(ring, (ideal_i,))
    return ({"contains": thomason_contains(big, small),
             "reading": "V(first) inside V(second)"},
            ("closed-piece-containment-via-radical-membership",))


def _h_validate(session, seq):
    report = validate_characteristic_sequence(seq)
    return report.to_record(), ("descending-chain-check",
                                "ring-ext-vanishing-check")


def _h_member_tilt(session, seq, module):
    report = tilting_membership(seq, module)
    return report.to_record(), ("tor-vanishing-class-membership",)


def _h_member_cotilt(session, seq, module):
    report = cotilting_membership(seq, module)
    return report.to_record(), ("ext-vanishing-class-membership",)


def _h_resolving(session, seq):
    gens = resolving_generators(seq)
    return ({"generators": [{
        "level": g["level"], "ideal": str(g["ideal"]),
        "index": g["s_module"].index,
        "presentation": [[str(e) for e in row]
                         for row in g["s_module"].module.presentation.rows],
        "pd_report": g["pd_report"].to_record()} for g in gens]},
        ("resolving-subcategory-generators",))


def _h_proreg(session, ideal, depth):
    report = weakly_proregular_upto(ideal, depth)
    return report, ("pro-zero-tower-probe",)


def _verdict_payload(verdict):
    rec = verdict.to_record()
    citations = tuple(step["rule"] for step in rec["reduction_chain"]
                      if isinstance(step, dict) and "rule" in step)
    return rec, citations


def _h_cech_h(session, ideal, module, n):
    verdict = cech_homology_vanishes(
        ideal, module, n, tower_depth=session.limits.tower_depth)
    return _verdict_payload(verdict)


def _h_cech_coh(session, ideal, module, n):
    verdict = cech_cohomology_vanishes(ideal, module, n)
    return _verdict_payload(verdict)


def _h_local_h(session, ideal, module, n):
    verdict = local_vanishing(
        ideal, module, n, "homology", tower_depth=session.limits.tower_depth)
    return _verdict_payload(verdict)


def _h_local_coh(session, ideal, module, n):
    verdict = local_vanishing(
        ideal, module, n, "cohomology", tower_depth=session.limits.tower_depth)
    return _verdict_payload(verdict)


def _h_iszero(session, module):
    return {"is_zero": is_zero(module)}, ()


_COMMANDS = {
    "groebner": (("ideal",), _h_groebner),
    "grade": (("ideal", "module"), _h_grade),
    "koszul": (("ideal",), _h_koszul),
    "ext": (("ideal", "module", "int"), _h_ext),
    "tor": (("ideal", "module", "int"), _h_tor),
    "smodule": (("ideal", "int"), _h_smodule),
    "pdcheck": (("ideal", "int"), _h_pdcheck),
    "compare": (("ideal", "module", "int"), _h_compare),
    "thomason": (("ideal", "le", "ideal"), _h_thomason),
    "validate": (("seq",), _h_validate),
    "member-tilt": (("seq", "module"), _h_member_tilt),
    "member-cotilt": (("seq", "module"), _h_member_cotilt),
    "resolving": (("seq",), _h_resolving),
    "proreg": (("ideal", "depth", "int"), _h_proreg),
    "cech-h": (("ideal", "module", "int"), _h_cech_h),
    "cech-coh": (("ideal", "module", "int"), _h_cech_coh),
    "local-h": (("ideal", "module", "int"), _h_local_h),
    "local-coh": (("ideal", "module", "int"), _h_local_coh),
    "iszero": (("anymodule",), _h_iszero),
}


def run_text(text, session: Session = None):
    """Parse and execute DSL text; returns (session, [CommandResult])."""
    if session is None:
        session = Session()
    parser = _Parser(text, session)
    results = parser.statements()
    return session, results
