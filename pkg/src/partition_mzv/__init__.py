"""Exact calculus of polynomial functions on partitions and their bridge to
(q-analogues of) multiple zeta values.

The package computes, in exact rational arithmetic: quasi-shuffle, shuffle
and pointwise products of the word algebra underlying functions on
partitions; the conjugation involution; q-brackets both by brute-force
enumeration and by nested-sum closed forms; Eisenstein series and detection
of quasimodular brackets; degree and limit extraction at q -> 1 as multiple
zeta value combinations; conjugated zeta values; regularized word values in
Q[T]; the Moller (character-squared) transform; and numeric multiple zeta
evaluation as the floating-point oracle for everything symbolic.
"""

from .exact import (
    Poly,
    QSeries,
    Rat,
    bernoulli,
    bernoulli_poly_at_half,
    euler_product,
    faulhaber_poly,
    partition_gf,
    shifted_power_sum_poly,
)
from .partitions import (
    arm_leg_cells,
    centralizer_size,
    character,
    conjugacy_class_size,
    conjugate,
    hook_lengths,
    multiplicity,
    partitions_of,
    partitions_up_to,
    stanley,
)
from .words import (
    BINOMIAL,
    BINOMIAL_SHIFTED,
    MODELS,
    MONOMIAL,
    SEKI,
    WordSum,
    canonicalize_psi,
    classify,
    derive,
    diamond,
    exp_to_strict,
    get_model,
    iota,
    model_convert,
    pointwise,
    regularize,
    shuffle,
    stuffle,
    weight,
    words_of_weight,
    words_up_to_weight,
)
from .peval import (
    PartitionFunction,
    eval_armleg,
    eval_expword,
    eval_hook_moment,
    eval_qk,
    eval_word,
    moebius,
    moller_transform,
    qbracket_enum,
    ubracket_coeff,
)
from .brackets import (
    QuasimodularPoly,
    degree_probe,
    eisenstein,
    qbracket_fast,
    qbracket_float,
    quasimod_detect,
)
from .mzv import (
    BiMzv,
    MzvLin,
    bimzv,
    degree,
    mzv_eval,
    reduce_general_zeta,
    verify_sum_formula,
    weight_limit,
    xi_expand,
    zdegree_limit,
)
from .serialize import format_word, format_wordsum, parse_wordsum

__version__ = "0.1.0"

__all__ = [
    "BINOMIAL", "BINOMIAL_SHIFTED", "BiMzv", "MODELS", "MONOMIAL",
    "MzvLin", "PartitionFunction", "Poly", "QSeries", "QuasimodularPoly",
    "Rat", "SEKI", "WordSum",
    "arm_leg_cells", "bernoulli", "bernoulli_poly_at_half", "bimzv",
    "canonicalize_psi", "centralizer_size", "character", "classify",
    "conjugacy_class_size", "conjugate", "degree", "degree_probe",
    "derive", "diamond", "eisenstein", "euler_product", "eval_armleg",
    "eval_expword", "eval_hook_moment", "eval_qk", "eval_word",
    "exp_to_strict", "faulhaber_poly", "format_word", "format_wordsum",
    "get_model", "hook_lengths", "iota", "model_convert", "moebius",
    "moller_transform", "multiplicity", "mzv_eval", "parse_wordsum",
    "partition_gf", "partitions_of", "partitions_up_to", "pointwise",
    "qbracket_enum", "qbracket_fast", "qbracket_float", "quasimod_detect",
    "reduce_general_zeta", "regularize", "shifted_power_sum_poly",
    "shuffle", "stanley", "stuffle", "ubracket_coeff", "verify_sum_formula",
    "weight", "weight_limit", "words_of_weight", "words_up_to_weight",
    "xi_expand", "zdegree_limit",
]
