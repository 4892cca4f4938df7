"""Exact invariant-form calculus for Lie algebras with hypercomplex structure.

The package computes, over the Gaussian rationals and with no floating
point anywhere: Chevalley-Eilenberg differentials, integrability of
hypercomplex triples, the bigraded operators del / delbar / del_J, four
flavours of quaternionic cohomology with sigma-eigenspace refinements,
HKT / hyperkahler / SL(n,H) certificates (each by two independent methods
where available), and parameter sweeps over three built-in families.
"""

from .exact import GaussianRational, gq, parse_rational, format_rational
from .linalg import (Subspace, rank, naive_rank, rank_kernel_image, quotient,
                     realify, nullspace, solve)
from .liealg import (LieAlgebra, validate_jacobi, ce_differential,
                     unimodularity, lower_central_series,
                     find_codim1_abelian_ideal)
from .hypercomplex import (HypercomplexTriple, check_quaternion_triple,
                           nijenhuis_tensor, one_zero_coframe,
                           HypercomplexInstance, bigraded_operator,
                           sigma_decompose, closed_quaternionic_coframe,
                           verify_identities)
from .cohomology import (cohomology_group, jbar_subgroups, ddj_lemma_check,
                         both_closed_representative, natural_map_check,
                         pure_full_implication)
from .metric import (build_metric, hkt_check, hyperkahler_check,
                     hodge_star_p0, operator_P_invariant)
from .families import (build_family, recognize_block_form, sl_check,
                       classify, sweep, FAMILY_IDS)
from .io import (InstanceDocument, parse_instance, load_instance,
                 emit_document, realize, emit_report)

__all__ = [
    "GaussianRational", "gq", "parse_rational", "format_rational",
    "Subspace", "rank", "naive_rank", "rank_kernel_image", "quotient",
    "realify", "nullspace", "solve",
    "LieAlgebra", "validate_jacobi", "ce_differential", "unimodularity",
    "lower_central_series", "find_codim1_abelian_ideal",
    "HypercomplexTriple", "check_quaternion_triple", "nijenhuis_tensor",
    "one_zero_coframe", "HypercomplexInstance", "bigraded_operator",
    "sigma_decompose", "closed_quaternionic_coframe", "verify_identities",
    "cohomology_group", "jbar_subgroups", "ddj_lemma_check",
    "natural_map_check", "pure_full_implication",
    "build_metric", "hkt_check", "hyperkahler_check", "hodge_star_p0",
    "operator_P_invariant",
    "build_family", "recognize_block_form", "sl_check", "classify", "sweep",
    "FAMILY_IDS",
    "InstanceDocument", "parse_instance", "load_instance", "emit_document",
    "realize", "emit_report",
]

__version__ = "0.1.0"
