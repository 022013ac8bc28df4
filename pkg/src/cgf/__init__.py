"""Exact-arithmetic witnesses for elementary matrix groups over commutative
rings: completions of right-invertible blocks, explicit factorizations,
homotopy-commutativity certificates, two-chart splitting and patching, and a
brute-force orbit oracle over finite rings."""

from .errors import CgfError
from .factor import (common_perp, roitman, sp_inverse, transvection_factor,
                     two_row_equiv, whitehead_linear, whitehead_symplectic)
from .homotopy import (CommuteResult, Homotopy, TransportResult,
                       commutator_witness, homotopy_commute_linear,
                       homotopy_commute_orthogonal,
                       homotopy_commute_symplectic, mat_substitute,
                       vaserstein_transport)
from .localglobal import (SplitResult, fixed_frame_check, patch,
                          quillen_split)
from .matrices import (Form, HyperbolicVector, IsotropicFrame, Mat,
                       RightInverseCert, block_perp, hyperbolic_pair_check,
                       identity, membership, phi, psi, right_inverse)
from .oracle import OrbitTable, certify_equivalence, enumerate_orbits
from .orthoquot import (FactoredOrthogonal, O2Class, classify_o2,
                        commutator_harness, commutator_harness_hso,
                        orth_inverse, vaserstein_quotient)
from .reduce import (complete_orth, complete_sp, complete_um_linear,
                     reduce_row_linear, reduce_row_symplectic)
from .rings import (FractionRing, IntegerRing, LocalizedIntegers, ModularRing,
                    PolyExt, PrimeField, QuotientRing, RationalField, Ring,
                    RingValue, TruncatedPolyLocal, arith, inverse, is_unit,
                    localize_denominator_check, ring_from_json, substitute)
from .words import (FAMILY_LIN, FAMILY_ORTH, FAMILY_SP, Check, Generator,
                    GenWord, Witness, apply_word_left, apply_word_right,
                    apply_word_to_row, dilate, empty_word, eval_word,
                    gen_matrix, invert_word, paired_index, specialize,
                    word_from_pairs)

__all__ = [
    # rings
    "Ring", "RingValue", "IntegerRing", "RationalField", "ModularRing",
    "PrimeField", "TruncatedPolyLocal", "LocalizedIntegers", "PolyExt",
    "QuotientRing", "FractionRing", "arith", "is_unit", "inverse",
    "substitute", "localize_denominator_check", "ring_from_json",
    # matrices
    "Mat", "Form", "psi", "phi", "identity", "block_perp", "membership",
    "right_inverse", "RightInverseCert", "IsotropicFrame",
    "HyperbolicVector", "hyperbolic_pair_check",
    # words
    "Generator", "GenWord", "Witness", "Check", "gen_matrix", "eval_word",
    "invert_word", "dilate", "specialize", "empty_word", "word_from_pairs",
    "apply_word_left", "apply_word_right", "apply_word_to_row",
    "paired_index", "FAMILY_LIN", "FAMILY_SP", "FAMILY_ORTH",
    # reduce
    "reduce_row_linear", "reduce_row_symplectic", "complete_um_linear",
    "complete_sp", "complete_orth",
    # factor
    "whitehead_linear", "whitehead_symplectic", "sp_inverse",
    "transvection_factor", "common_perp", "two_row_equiv", "roitman",
    # homotopy
    "Homotopy", "CommuteResult", "TransportResult", "homotopy_commute_linear",
    "homotopy_commute_symplectic", "homotopy_commute_orthogonal",
    "commutator_witness", "vaserstein_transport", "mat_substitute",
    # localglobal
    "quillen_split", "SplitResult", "patch", "fixed_frame_check",
    # orthoquot
    "O2Class", "classify_o2", "vaserstein_quotient", "FactoredOrthogonal",
    "commutator_harness", "commutator_harness_hso", "orth_inverse",
    # oracle
    "OrbitTable", "enumerate_orbits", "certify_equivalence",
    "CgfError",
]
