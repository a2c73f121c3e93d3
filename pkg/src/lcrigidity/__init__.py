"""Linearly constrained rigidity of looped simple graphs."""

from .balancedness import (BalancednessVerdict, is_essentially_k_balanced, is_k_balanced,
                           is_weakly_k_balanced)
from .errors import (BudgetExceeded, DuplicateEdge, HypothesisViolated, InvalidCover,
                     LCRigidityError, MalformedStep, ParamsInvalid, PreconditionViolated,
                     UnknownElement)
from .graph import (Edge, Loop, LoopedSimpleGraph, add_uniform_loops, components, delete,
                    induced, remove_vertices)
from .matroid import (Cover, ThinCover2D, dilworth_f1, f0, f1, induced_rank, params,
                      rank_by_cover, thin_cover_value, val_t)
from .rigidity import (Framework, RankReport, RigidityMatrix, build_matrix, generic_rank,
                       is_globally_L2_rigid_char, is_Ld_rigid, is_redundantly_Ld_rigid,
                       random_framework)
from .sparsity import (SparsityCertificate, build_t_tight_witness,
                       find_spanning_d_tight_Kd2_free, hamilton_decomposition, is_t_sparse,
                       is_t_tight)

__version__ = "0.1.0"
