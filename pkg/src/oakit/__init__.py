"""Strength-2 orthogonal arrays with a maximally repeated row: bounds,
constructions, exhaustive verification and classification."""

from .bounds import (BoundNotApplicableError, BoundReport, basic_quadruple,
                     feasible_quadruples, floor_bound, make_bound_report,
                     rao_repeat_bound, refined_bound)
from .cyclic import (DistanceProfile, develop, distance_check, distance_profile,
                     search_starting_rows)
from .deletion import (delete_columns, deletion_margin, m_optimal_after_deletion,
                       max_safe_deletions)
from .designs import (INFINITY, BlockDesign, FormatError, HadamardMatrix,
                      InfeasibleError, OrthogonalArray, Quadruple,
                      StartingRowSet, canonical_to_infinity,
                      infinity_to_canonical, read_bibd, read_hadamard, read_oa,
                      read_starting_rows, write_bibd, write_hadamard, write_oa,
                      write_oa_stream, write_starting_rows)
from .enumerate_partition import (DEFAULT_MATERIALIZE_LIMIT, MaterializeLimitError,
                                  PartitionSpec, abar_of, default_partition_spec,
                                  enumerate_oa, enumeration_lambda,
                                  enumeration_repeats, max_gamma,
                                  multi_partition_oa, partition_lambda,
                                  partition_oa, shift_bijection,
                                  stream_enumerate, stream_partition_class,
                                  stream_tuples, tuple_count)
from .hadamard_bibd import (UnreachableOrderError, basic_oa_from_hadamard,
                            bibd_to_oa, derived_then_complement, hadamard,
                            hadamard_to_symmetric_bibd, oa_to_bibd)
from .verifier import (StreamingVerifier, VerificationReport, classify,
                       repeated_row, verify_strength2, zero_count_check)

__version__ = "0.1.0"

__all__ = [
    "BlockDesign", "BoundNotApplicableError", "BoundReport",
    "DEFAULT_MATERIALIZE_LIMIT", "DistanceProfile", "FormatError",
    "HadamardMatrix", "INFINITY", "InfeasibleError", "MaterializeLimitError",
    "OrthogonalArray", "PartitionSpec", "Quadruple", "StartingRowSet",
    "StreamingVerifier", "UnreachableOrderError", "VerificationReport",
    "abar_of", "basic_oa_from_hadamard", "basic_quadruple", "bibd_to_oa",
    "canonical_to_infinity", "classify", "default_partition_spec",
    "delete_columns", "deletion_margin", "derived_then_complement", "develop",
    "distance_check", "distance_profile", "enumerate_oa", "enumeration_lambda",
    "enumeration_repeats", "feasible_quadruples", "floor_bound", "hadamard",
    "hadamard_to_symmetric_bibd", "infinity_to_canonical",
    "m_optimal_after_deletion", "make_bound_report", "max_gamma",
    "max_safe_deletions", "multi_partition_oa", "oa_to_bibd", "partition_lambda",
    "partition_oa", "rao_repeat_bound", "read_bibd", "read_hadamard", "read_oa",
    "read_starting_rows", "refined_bound", "repeated_row", "search_starting_rows",
    "shift_bijection", "stream_enumerate", "stream_partition_class",
    "stream_tuples", "tuple_count", "verify_strength2", "write_bibd",
    "write_hadamard", "write_oa", "write_oa_stream", "write_starting_rows",
    "zero_count_check",
]
