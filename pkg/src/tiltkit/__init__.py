"""tiltkit: exact homological computation over finitely presented rings.

Groebner bases and finitely presented modules with decidable zero tests;
Koszul (co)homology, grade with double certification, the Ext comparison map,
and the dual-Koszul S-modules; truncated power towers with pro-zero probes;
Thomason-set algebra and characteristic-sequence validation with tilting and
cotilting membership tests.  See the DSL in `tiltkit.dsl` and the CLI in
`tiltkit.cli` for the batch interface.
"""

from .rings import (FieldSpec, GF, Ideal, Polynomial, QQ, RingMismatchError,
                    RingSpec, groebner, ideal_power, ideal_product, ideal_sum,
                    member, radical_member)
from .modules import (FPModule, FreeMap, ModuleMap, Resolution, Subquotient,
                      cyclic, ext, ext_is_zero, free_module, free_resolution,
                      is_zero, syzygies, tor, tor_is_zero)
from .complexes import (FreeComplex, dualize, homology_with_coefficients,
                        single_free, tensor, truncate_geq, two_term)
from .koszul import (ComparisonMapError, GradeMismatchError, KoszulData,
                     SModule, compare_ext_koszul, generator_invariance, grade,
                     koszul, koszul_cohomology, koszul_homology, s_module,
                     s_module_pd_check)
from .towers import (Tower, VanishingVerdict, cech_cohomology_vanishes,
                     cech_homology_vanishes, ideal_power_ext_tower,
                     koszul_power_tower, local_vanishing, pro_zero_upto,
                     weakly_proregular_upto)
from .spectrum import (CharacteristicSequence, GabrielBasis, ThomasonSet,
                       cotilting_membership, perfect_ring_triviality_probe,
                       resolving_generators, thomason_contains,
                       thomason_of_torsion_class, tilting_membership,
                       validate_characteristic_sequence)

__version__ = "0.1.0"
