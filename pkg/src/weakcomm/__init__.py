"""Exact rational-matrix toolkit for weak commutation relations,
generalized inverses, invariant-subspace lattices, and the theorem
campaigns built on them.
"""

from .exact_linalg import (ParseError, RationalMatrix, RationalPoly,
                           ShapeError, charpoly, format_matrix, inverse,
                           is_nilpotent, kernel_basis, parse_matrix, rank,
                           rational_roots)
from .subspace_lattice import (RedPair, Subspace, analytic_core, ascent,
                               colspace, descent, hyperkernel, hyperrange,
                               is_invariant, is_red_pair, nullspace,
                               power_chain, quasinilpotent_part, restriction)
from .commutant import (CommutationProfile, CommWitness, comm_basis,
                        in_comm2, in_comm_l, in_comm_r, in_comm_w, profile,
                        sample_comm_l, sample_comm_r, sample_comm_w)
from .gen_inverse import (DrazinResult, NotReducingError,
                          SingularRestrictionError, drazin, drazin_index,
                          is_ired_pair, is_ired_pair_weak, is_pseudo_inverse,
                          pair_of_pseudo_inverse, phi_map)
from .spectra import (DegenerateSpectraReport, LocalData, RootSet,
                      degenerate_spectra_report, is_semiregular, local_data,
                      spectra_equal, spectrum)
from .theorem_harness import (CampaignConfig, CampaignResult,
                              GenerationStarved, TheoremId,
                              VerificationReport, Verdict, generate_instance,
                              near_miss_instances, question_probe,
                              run_campaign, verify)

__all__ = [name for name in dir() if not name.startswith("_")]
