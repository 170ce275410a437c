"""Thomason-set algebra, characteristic sequences, and class membership.

A Thomason set is presented as a finite union of closed pieces V(I) with I
finitely generated; containment of such sets reduces to radical membership
(V(J) lies in the union of the V(I_a) iff the product of the I_a is contained
in the radical of J).  A Gabriel topology of finite type is presented by a
finite basis of finitely generated ideals; membership of an arbitrary
finitely generated ideal J in the filter is decided by the same criterion.

Basis sufficiency.  The validator and the membership tests only examine basis
ideals.  This is enough because vanishing propagates from a basis through the
whole filter: if Ext^j(R/I1, M) and Ext^j(R/I2, M) vanish for j < k, the
filtration 0 -> I1/(I1.I2) -> R/(I1.I2) -> R/I1 -> 0 (whose kernel term is an
R/I2-module) forces Ext^j(R/(I1.I2), M) = 0 for j < k; inductively the same
holds for finite products and powers of basis ideals, and any finitely
generated ideal J in the filter contains such a power, making R/J a cyclic
module over R modulo that power, so a second filtration argument gives
Ext^j(R/J, M) = 0 for j < k.  The Tor-side argument is identical.  The test
suite spot-checks this propagation on randomized inputs.
"""

from __future__ import annotations

from dataclasses import dataclass

from .koszul import SModule, s_module, s_module_pd_check
from .modules import FPModule, cyclic, ext_is_zero, free_module, tor_is_zero
from .rings import Ideal, RingMismatchError, RingSpec, ideal_product
from .towers import VanishingVerdict, cech_cohomology_vanishes, cech_homology_vanishes


class UnvalidatedSequenceError(ValueError):
    """Membership tests demand a validated characteristic sequence."""


@dataclass(frozen=True)
class ThomasonSet:
    """Union of V(I) over the listed pieces (all finitely generated)."""

    ring: RingSpec
    pieces: tuple

    def __post_init__(self):
        object.__setattr__(self, "pieces", tuple(self.pieces))
        for p in self.pieces:
            if p.ring != self.ring:
                raise RingMismatchError("piece over a different ring")

    def to_record(self):
        return {"pieces": [[str(g) for g in p.generators] for p in self.pieces]}


@dataclass(frozen=True)
class GabrielBasis:
    """Finite basis of finitely generated ideals for a finite-type topology."""

    ring: RingSpec
    basis: tuple

    def __post_init__(self):
        object.__setattr__(self, "basis", tuple(self.basis))
        if not self.basis:
            raise ValueError("a Gabriel basis must be nonempty")
        for b in self.basis:
            if b.ring != self.ring:
                raise RingMismatchError("basis ideal over a different ring")

    def contains_ideal(self, j: Ideal) -> bool:
        """Filter membership: some product power of the basis sits inside J."""
        return thomason_contains(thomason_of_torsion_class(self),
                                 ThomasonSet(self.ring, (j,)))

    def to_record(self):
        return {"basis": [[str(g) for g in b.generators] for b in self.basis]}


@dataclass(frozen=True)
class CharacteristicSequence:
    entries: tuple

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))
        rings = {e.ring for e in self.entries}
        if len(rings) > 1:
            raise RingMismatchError("mixed rings in a characteristic sequence")

    @property
    def length(self) -> int:
        return len(self.entries)

    @property
    def ring(self) -> RingSpec:
        return self.entries[0].ring

    def to_record(self):
        return {"length": self.length,
                "entries": [e.to_record() for e in self.entries]}


def thomason_contains(big: ThomasonSet, small: ThomasonSet) -> bool:
    """small <= big: every piece V(J) of small lies in the union of big's pieces.

    V(J) <= V(I_1) u ... u V(I_m) = V(I_1 ... I_m) iff I_1...I_m <= sqrt(J),
    checked generator by generator through radical membership.  The empty
    union is V(R), so containment then needs 1 in sqrt(J).
    """
    if big.ring != small.ring:
        raise RingMismatchError("Thomason sets over different rings")
    ring = big.ring
    product = None
    for piece in big.pieces:
        product = piece if product is None else ideal_product(product, piece)
    if product is None:
        product = Ideal(ring, [ring.one()])
    # a piece equal to the zero ideal makes the union all of Spec R, and the
    # product criterion is then vacuously satisfied, as it should be
    for j_piece in small.pieces:
        for g in product.generators:
            if not j_piece.radical_member(g):
                return False
    return True


def thomason_of_torsion_class(basis: GabrielBasis) -> ThomasonSet:
    """The support set of the torsion class: pieces V(I) for basis ideals I."""
    return ThomasonSet(basis.ring, basis.basis)


@dataclass(frozen=True)
class ValidationReport:
    sequence: CharacteristicSequence
    valid: bool
    descent_failures: tuple   # indices i with X_i not containing X_{i+1}
    ext_failures: tuple       # triples (i, ideal_index, j) with Ext^j(R/I, R) != 0

    def to_record(self):
        return {
            "valid": self.valid,
            "descent_failures": list(self.descent_failures),
            "ext_failures": [[i, k, j] for (i, k, j) in self.ext_failures],
        }


def validate_characteristic_sequence(seq: CharacteristicSequence) -> ValidationReport:
    """Check the descending-chain and ring-Ext-vanishing conditions.

    Failure is a report, not an exception: all failing triples are listed.
    Only basis ideals are examined; see the module docstring for why that
    suffices for the whole topology.
    """
    ring = seq.ring
    rfree = free_module(ring)
    descent = []
    for i in range(seq.length - 1):
        big = thomason_of_torsion_class(seq.entries[i])
        small = thomason_of_torsion_class(seq.entries[i + 1])
        if not thomason_contains(big, small):
            descent.append(i)
    ext_failures = []
    for i, entry in enumerate(seq.entries):
        for k, ideal in enumerate(entry.basis):
            rmod = cyclic(ideal)
            for j in range(i + 1):
                if not ext_is_zero(rmod, rfree, j):
                    ext_failures.append((i, k, j))
    valid = not descent and not ext_failures
    return ValidationReport(seq, valid, tuple(descent), tuple(ext_failures))


def _require_valid(seq: CharacteristicSequence) -> ValidationReport:
    report = validate_characteristic_sequence(seq)
    if not report.valid:
        raise UnvalidatedSequenceError(
            f"sequence fails validation: {report.to_record()}")
    return report


@dataclass(frozen=True)
class MembershipReport:
    member: bool
    witness: tuple = None   # first failing (level, ideal_index) if any

    def to_record(self):
        return {"member": self.member,
                "witness": list(self.witness) if self.witness else None}


def tilting_membership(seq: CharacteristicSequence, module: FPModule) -> MembershipReport:
    """Is M in the class cut out by Tor_i(R/I, -) = 0 over basis ideals at level i?"""
    _require_valid(seq)
    for i, entry in enumerate(seq.entries):
        for k, ideal in enumerate(entry.basis):
            if not tor_is_zero(cyclic(ideal), module, i):
                return MembershipReport(False, (i, k))
    return MembershipReport(True)


def cotilting_membership(seq: CharacteristicSequence, module: FPModule) -> MembershipReport:
    """Ext-side mirror: Ext^i(R/I, -) = 0 over basis ideals at level i."""
    _require_valid(seq)
    for i, entry in enumerate(seq.entries):
        for k, ideal in enumerate(entry.basis):
            if not ext_is_zero(cyclic(ideal), module, i):
                return MembershipReport(False, (i, k))
    return MembershipReport(True)


def resolving_generators(seq: CharacteristicSequence):
    """The S-modules S_{I, i+1} for basis ideals I at level i, with pd reports.

    Together with the free module of rank one these generate the resolving
    subcategory attached to the sequence.
    """
    _require_valid(seq)
    out = []
    for i, entry in enumerate(seq.entries):
        for ideal in entry.basis:
            if ideal.is_unit_ideal():
                continue  # trivial piece contributes nothing beyond R
            # validation forces grade > i, and the grade of a proper ideal is
            # at most its generator count, so the index below stays in range
            smod = s_module(ideal, i + 1)
            report = s_module_pd_check(ideal, i + 1)
            out.append({"level": i, "ideal": ideal, "s_module": smod,
                        "pd_report": report})
    return out


def membership_matches_vanishing_reductions(seq: CharacteristicSequence,
                                            module: FPModule,
                                            with_evidence: bool = False) -> dict:
    """Regression tie between the classification routes.

    The tilting-side membership verdict must equal the conjunction of the
    Cech-homology reductions over basis ideals, and the cotilting side the
    Cech-cohomology reductions.
    """
    tilt = tilting_membership(seq, module).member
    cotilt = cotilting_membership(seq, module).member
    cech_h = all(
        cech_homology_vanishes(ideal, module, i + 1,
                               with_evidence=with_evidence).value == "vanishes"
        for i, entry in enumerate(seq.entries) for ideal in entry.basis)
    cech_c = all(
        cech_cohomology_vanishes(ideal, module, i + 1).value == "vanishes"
        for i, entry in enumerate(seq.entries) for ideal in entry.basis)
    return {
        "tilting": tilt, "cech_homology": cech_h,
        "cotilting": cotilt, "cech_cohomology": cech_c,
        "consistent": (tilt == cech_h) and (cotilt == cech_c),
    }


def perfect_ring_triviality_probe(ring: RingSpec, candidates) -> dict:
    """Over a finite-dimensional quotient, Hom(R/I, R) != 0 for proper f.g. I.

    The caller declares the ring finite dimensional; that claim is verified
    (every variable must be nilpotent modulo the quotient).  Any proper
    candidate with vanishing Hom is flagged as a contradiction.
    """
    ambient = ring.ambient
    qideal = Ideal(ambient, list(ring.quotient))
    for v in ambient.gens():
        if not qideal.radical_member(v):
            raise ValueError(
                "ring is not a finite-dimensional quotient: "
                f"{v} is not nilpotent modulo the relations")
    rfree = free_module(ring)
    results = []
    contradictions = []
    for ideal in candidates:
        if ideal.is_unit_ideal():
            results.append({"ideal": str(ideal), "proper": False,
                            "hom_nonzero": False})
            continue
        hom_nonzero = not ext_is_zero(cyclic(ideal), rfree, 0)
        results.append({"ideal": str(ideal), "proper": True,
                        "hom_nonzero": hom_nonzero})
        if not hom_nonzero:
            contradictions.append(str(ideal))
    return {"candidates": results, "contradictions": contradictions,
            "consistent": not contradictions}
