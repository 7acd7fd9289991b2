"""Weakly distance-regular digraphs of valency three.

Constructions for the two parametrised families, an exact regularity
analyzer over two-way distance pairs, isomorphism search with verifiable
certificates, quotient/circuit helpers, parameter sweeps against the
closed regularity laws, and a census of small abelian Cayley digraphs.
"""

from .census import (CensusCatalogue, CensusClass, CensusHit, CensusSpec,
                     abelian_group_shapes, census_scan)
from .digraph import (Digraph, DistancePairMatrix, NotStronglyConnected,
                      arc_type, arc_type_census, distance_pairs, girth,
                      is_strongly_connected, parse_dot, raw_distances, to_dot)
from .families import (CayleySpec, GammaQskParams, GrammarError, IsoMap,
                       ProbePair, admissible_u_values, base_point_automorphism,
                       cayley, cayley_iso_target, cayley_iso_target_with_u,
                       classify_c123, confirm_probe, counterexample_probe,
                       gamma_g, gamma_g_distance, gamma_qsk, gamma_qsk_distance,
                       parse_construction, theorem_families, valid_k_range)
from .iso import (IsoCertificate, are_isomorphic, automorphism_with,
                  is_vertex_transitive, verify_certificate)
from .quotient import (DEFAULT_CYCLE_CAP, VertexPartition, enumerate_circuits,
                       equivalence_closure, is_circuit, quotient_digraph,
                       quotient_to_dot, same_type_circuit_check)
from .scheme import (IntersectionTensor, RelationPartition, WdrReport,
                     WdrWitness, analyze, check_scheme_identities, count_paths,
                     relation_matrix, relation_matrix_identity_check,
                     relation_partition)
from .sweep import (LAW_GAMMA_G, LAW_GAMMA_QSK, SweepRow, SweepSpec, run_sweep,
                    sweep_header, sweep_table)

__version__ = "0.1.0"

__all__ = [
    "CayleySpec", "CensusCatalogue", "CensusClass", "CensusHit", "CensusSpec",
    "DEFAULT_CYCLE_CAP", "Digraph", "DistancePairMatrix", "GammaQskParams",
    "GrammarError", "IntersectionTensor", "IsoCertificate", "IsoMap",
    "LAW_GAMMA_G", "LAW_GAMMA_QSK", "NotStronglyConnected", "ProbePair",
    "RelationPartition", "SweepRow", "SweepSpec", "VertexPartition",
    "WdrReport", "WdrWitness", "abelian_group_shapes",
    "admissible_u_values", "analyze", "arc_type", "arc_type_census",
    "are_isomorphic", "automorphism_with", "base_point_automorphism",
    "cayley", "cayley_iso_target", "cayley_iso_target_with_u", "census_scan",
    "check_scheme_identities", "classify_c123", "confirm_probe",
    "count_paths", "counterexample_probe", "distance_pairs",
    "enumerate_circuits", "equivalence_closure", "gamma_g",
    "gamma_g_distance", "gamma_qsk", "gamma_qsk_distance", "girth",
    "is_circuit", "is_strongly_connected", "is_vertex_transitive",
    "parse_construction", "parse_dot", "quotient_digraph", "quotient_to_dot",
    "raw_distances",
    "relation_matrix", "relation_matrix_identity_check", "relation_partition",
    "run_sweep", "same_type_circuit_check", "sweep_header", "sweep_table",
    "theorem_families", "to_dot", "valid_k_range", "verify_certificate",
]
