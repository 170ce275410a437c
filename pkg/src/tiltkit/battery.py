"""Seeded verification batteries behind `tiltkit test-battery`.

Every section returns {"passed": bool, ...detail}; the driver aggregates.
All randomness flows through one seeded generator, so identical seeds give
identical JSON, byte for byte.
"""

from __future__ import annotations

import random

from .complexes import homology_with_coefficients_presented
from .koszul import compare_ext_koszul, grade, koszul, s_module_pd_check
from .modules import (FPModule, FreeMap, cyclic, ext_presented, free_module,
                      tor_presented)
from .rings import GF, Ideal, QQ, RingSpec
from .slices import homology_slice_dim, module_slice_dim
from .spectrum import (CharacteristicSequence, GabrielBasis, ThomasonSet,
                       membership_matches_vanishing_reductions,
                       perfect_ring_triviality_probe, thomason_contains,
                       validate_characteristic_sequence)
from .towers import weakly_proregular_upto


def _ring(n, names="xyzw"):
    return RingSpec(QQ, tuple(names[:n]))


def random_monomial_ideal(ring, rng, max_gens=3, max_exp=2):
    """A random nonzero proper monomial ideal with small exponents."""
    n = ring.nvars
    gens = []
    for _ in range(rng.randint(1, max_gens)):
        exps = [0] * n
        while sum(exps) == 0:
            exps = [rng.randint(0, max_exp) for _ in range(n)]
        gens.append(ring.monomial(tuple(exps)))
    return Ideal(ring, gens)


def monomial_minimal_primes(ideal):
    """Minimal variable subsets hitting every generator's support."""
    n = ideal.ring.nvars
    supports = []
    for g in ideal.generators:
        exps = g.lead()[0]
        supports.append({i for i in range(n) if exps[i] > 0})
    covers = []
    for mask in range(1 << n):
        s = {i for i in range(n) if mask >> i & 1}
        if all(s & sup for sup in supports):
            covers.append(s)
    return [s for s in covers if not any(t < s for t in covers)]


def _prime_contains_monomial_ideal(prime_vars, ideal):
    for g in ideal.generators:
        exps = g.lead()[0]
        if not any(exps[i] > 0 for i in prime_vars):
            return False
    return True


def thomason_oracle_contains(big: ThomasonSet, small: ThomasonSet) -> bool:
    """Combinatorial route: each minimal prime of each V(J) meets some piece."""
    for j_piece in small.pieces:
        for prime in monomial_minimal_primes(j_piece):
            if not any(_prime_contains_monomial_ideal(prime, piece)
                       for piece in big.pieces):
                return False
    return True


# ---------------------------------------------------------------------------
# battery sections
# ---------------------------------------------------------------------------

def regular_sequence_section(max_vars=4, max_degree=6):
    """H_i of the variable sequence on R: zero above 0, R/I at 0, slice-checked."""
    checks = []
    for c in range(1, max_vars + 1):
        ring = _ring(c)
        ideal = Ideal(ring, list(ring.gens()))
        kx = koszul(ideal).complex
        rfree = free_module(ring)
        for i in range(0, c + 1):
            sub = homology_with_coefficients_presented(kx, rfree, i, "tensor")
            want_zero = i > 0
            ok = sub.is_zero() == want_zero
            slice_ok = True
            for d in range(0, max_degree + 1):
                oracle = homology_slice_dim(kx, rfree, i, d)
                presented = module_slice_dim(sub.module, d) \
                    if sub.module.gen_degrees is not None else 0
                if oracle != presented:
                    slice_ok = False
                if i == 0 and d == 0 and oracle != 1:
                    slice_ok = False
                if i > 0 and oracle != 0:
                    slice_ok = False
            checks.append({"vars": c, "degree": i, "zero_ok": ok,
                           "slices_ok": slice_ok})
    passed = all(c["zero_ok"] and c["slices_ok"] for c in checks)
    return {"passed": passed, "checks": checks}


def _battery_ideals(rng, count, nvars=3):
    ring = _ring(nvars)
    ideals = []
    seen = set()
    while len(ideals) < count:
        ideal = random_monomial_ideal(ring, rng)
        key = tuple(sorted(tuple(g.lead()[0]) for g in ideal.generators))
        if key in seen:
            continue
        seen.add(key)
        ideals.append(ideal)
    return ring, ideals


def grade_section(rng, count=20):
    """Koszul-side and Ext-side grade must agree on every battery entry."""
    ring, ideals = _battery_ideals(rng, count)
    rfree = free_module(ring)
    coeff_mods = [("R", rfree)]
    v = ring.gen(ring.variables[0])
    coeff_mods.append(("R/(x)", cyclic(Ideal(ring, [v]))))
    results = []
    for ideal in ideals:
        for label, module in coeff_mods:
            report = grade(ideal, module, bound=ring.nvars + 1)
            results.append({"ideal": str(ideal), "module": label,
                            "value": report.value})
    return {"passed": True, "count": len(results), "results": results}


def comparison_section(rng, count=8):
    """Wherever the Ext-prefix hypothesis holds, the comparison map is an iso."""
    ring, ideals = _battery_ideals(rng, count)
    rfree = free_module(ring)
    modules = [("R", rfree),
               ("R/(z)", cyclic(Ideal(ring, [ring.gen(ring.variables[-1])])))]
    checked = []
    for ideal in ideals:
        for label, module in modules:
            for n in range(0, 3):
                report = compare_ext_koszul(ideal, module, n)
                checked.append({"ideal": str(ideal), "module": label, "n": n,
                                "hypothesis": report.hypothesis_holds,
                                "iso": report.is_isomorphism})
    bad = [c for c in checked if c["hypothesis"] and not c["iso"]]
    return {"passed": not bad, "checked": len(checked), "failures": bad}


def class_equality_section(rng, count=10, max_n=3):
    """Prefix-vanishing agreement between Ext/Koszul-cohomology and Tor/Koszul-homology."""
    ring, ideals = _battery_ideals(rng, count)
    rfree = free_module(ring)
    mods = [("R", rfree),
            ("R/(y)", cyclic(Ideal(ring, [ring.gen(ring.variables[1])])))]
    failures = []
    total = 0
    for ideal in ideals:
        kx = koszul(ideal).complex
        rmod = cyclic(ideal)
        for label, module in mods:
            ext_z, hco_z, tor_z, hho_z = [], [], [], []
            for i in range(max_n):
                ext_z.append(ext_presented(rmod, module, i).is_zero())
                hco_z.append(homology_with_coefficients_presented(
                    kx, module, i, "hom").is_zero())
                tor_z.append(tor_presented(rmod, module, i).is_zero())
                hho_z.append(homology_with_coefficients_presented(
                    kx, module, i, "tensor").is_zero())
            for n in range(1, max_n + 1):
                total += 2
                if all(ext_z[:n]) != all(hco_z[:n]):
                    failures.append({"side": "cohomology", "ideal": str(ideal),
                                     "module": label, "n": n})
                if all(tor_z[:n]) != all(hho_z[:n]):
                    failures.append({"side": "homology", "ideal": str(ideal),
                                     "module": label, "n": n})
    return {"passed": not failures, "comparisons": total, "failures": failures}


def s_module_section():
    """Dual Koszul tails of the variable ideals resolve S_{I,n} with pd = n."""
    results = []
    for c in (2, 3):
        ring = _ring(c)
        ideal = Ideal(ring, list(ring.gens()))
        report = s_module_pd_check(ideal, c)
        results.append({"vars": c, **report.to_record()})
    passed = all(r["certified"] and r["pd"] == r["index"] for r in results)
    return {"passed": passed, "results": results}


def thomason_section(rng, pairs=100, nvars=4):
    """Radical-membership route vs minimal-prime combinatorial oracle."""
    ring = _ring(nvars)
    agreements = 0
    failures = []
    for _ in range(pairs):
        big = ThomasonSet(ring, tuple(random_monomial_ideal(ring, rng)
                                      for _ in range(rng.randint(1, 2))))
        small = ThomasonSet(ring, tuple(random_monomial_ideal(ring, rng)
                                        for _ in range(rng.randint(1, 2))))
        got = thomason_contains(big, small)
        want = thomason_oracle_contains(big, small)
        if got == want:
            agreements += 1
        else:
            failures.append({"big": big.to_record(), "small": small.to_record(),
                             "groebner_route": got, "oracle": want})
    return {"passed": not failures, "pairs": pairs, "agreements": agreements,
            "failures": failures}


def proregularity_section(depth=4):
    """Polynomial rings: pro-zero throughout; plus the one-step witness ring."""
    results = []
    for c in (1, 2, 3):
        ring = _ring(c)
        ideal = Ideal(ring, list(ring.gens()))
        rep = weakly_proregular_upto(ideal, depth)
        results.append({"ring": str(ring), "ideal": str(ideal),
                        "pro_zero": rep["all_pro_zero_up_to_depth"]})
    amb = RingSpec(QQ, ("x", "y"))
    witness_ring = amb.with_quotient([amb.poly("y^2"), amb.poly("x*y")])
    wit = weakly_proregular_upto(Ideal(witness_ring, [witness_ring.gen("x")]), depth)
    one_step = all(w and w[1] == w[0] + 1
                   for w in wit["per_degree"][1]["witnesses"][:-1])
    results.append({"ring": str(witness_ring), "ideal": "(x)",
                    "pro_zero": wit["all_pro_zero_up_to_depth"],
                    "one_step_witness": one_step})
    passed = all(r["pro_zero"] for r in results) and one_step
    return {"passed": passed, "results": results}


def validator_section():
    """The two pinned sequences and the perfect-ring probe."""
    ring = _ring(2)
    x, y = ring.gens()
    good = CharacteristicSequence((GabrielBasis(ring, (Ideal(ring, [x, y]),)),
                                   GabrielBasis(ring, (Ideal(ring, [x, y]),))))
    bad = CharacteristicSequence((GabrielBasis(ring, (Ideal(ring, [x]),)),
                                  GabrielBasis(ring, (Ideal(ring, [x]),))))
    good_rep = validate_characteristic_sequence(good)
    bad_rep = validate_characteristic_sequence(bad)
    amb = RingSpec(QQ, ("x",))
    perfect = perfect_ring_triviality_probe(
        amb.with_quotient([amb.poly("x^2")]),
        [Ideal(amb.with_quotient([amb.poly("x^2")]),
               [amb.with_quotient([amb.poly("x^2")]).gen("x")])])
    passed = (good_rep.valid and not bad_rep.valid
              and bad_rep.ext_failures == ((1, 0, 1),)
              and perfect["consistent"])
    return {"passed": passed, "good": good_rep.to_record(),
            "bad": bad_rep.to_record(), "perfect_probe": perfect}


def consistency_section(rng, module_count=4):
    """Membership verdicts equal the Cech/local reduction verdicts."""
    ring = _ring(2)
    x, y = ring.gens()
    seqs = [
        CharacteristicSequence((GabrielBasis(ring, (Ideal(ring, [x, y]),)),
                                GabrielBasis(ring, (Ideal(ring, [x, y]),)))),
        CharacteristicSequence((GabrielBasis(ring, (Ideal(ring, [x, y]),)),
                                GabrielBasis(ring, (Ideal(ring, [x * x, x * y, y * y]),)))),
    ]
    modules = [("R", free_module(ring)),
               ("R/(x,y)", cyclic(Ideal(ring, [x, y]))),
               ("coker[1-x]", FPModule(FreeMap(ring, ((ring.one() - x,),)))),
               ("R^2", free_module(ring, 2))]
    rows = []
    for seq in seqs:
        for label, module in modules:
            rec = membership_matches_vanishing_reductions(seq, module,
                                                          with_evidence=False)
            rows.append({"module": label, **rec})
    return {"passed": all(r["consistent"] for r in rows), "rows": rows}


def run_battery(seed=0, max_degree=6, tower_depth=4, max_vars=4):
    """Run every section; deterministic given the seed."""
    rng = random.Random(seed)
    sections = {
        "koszul_regular_sequences": regular_sequence_section(max_vars, max_degree),
        "grade_double_certification": grade_section(rng),
        "comparison_map": comparison_section(rng),
        "class_equality": class_equality_section(rng),
        "s_module_certification": s_module_section(),
        "thomason_oracle": thomason_section(rng),
        "weak_proregularity": proregularity_section(tower_depth),
        "validator": validator_section(),
        "classification_consistency": consistency_section(rng),
    }
    return {"seed": seed,
            "passed": all(s["passed"] for s in sections.values()),
            "sections": sections}
