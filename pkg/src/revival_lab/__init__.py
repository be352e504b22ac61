"""Certification of fractional revival, periodicity and subset state
transfer in continuous quantum walks on unweighted graphs, with exact
closed-form treatment of the fused-star family X(a, k, c).
"""

from .exact import (QuadraticValue, charpoly_int, fermat_two_squares,
                    is_perfect_square, is_prime, rationalize,
                    square_free_part, two_adic_valuation)
from .graphs import (Graph, Partition, WeightedGraph, build_path,
                     build_star, build_stellar, cartesian_product,
                     graph_from_graph6, graph_from_json, graph_to_dot,
                     graph_to_graph6, graph_to_json, induced_subgraph,
                     is_equitable, stellar_cells, stellar_partition,
                     symmetrized_quotient)
from .spectral import (SpectralDecomposition, StellarExact, TransitionMatrix,
                       char_poly_suite, decompose, exact_char_poly,
                       spectral_report, stellar_decompose, transition_matrix)
from .states import (StateMatrix, SupportGraph, average_state,
                     eigenvalue_support, is_periodic, subset_state,
                     support_divisibility_check, support_graph,
                     support_graph_to_dot, vertex_state)
from .revival import (BalancedResult, FRObservation, RevivalCertificate,
                      are_cospectral, are_parallel, balanced_fr_analysis,
                      certify_fr, fractional_cospectrality,
                      support_structure_check, verify_fr_at)
from .stellar import (FamilyRecipe, StellarAnalysis, analyze,
                      diophantine_check, double_star_tree, generate_family,
                      generate_polygamy_triple, k1_no_fr_check)
from .transfer import (PolygamyReport, SubsetTransferReport,
                       average_state_equality, detect_subset_transfer,
                       induced_cospectrality, induced_transfer_check,
                       polygamy_witness)

__version__ = "1.0.0"
