"""Negativity monogamy for three-party pure quantum states.

Computes entanglement negativity and concurrence triples, evaluates and
verifies the polynomial boundary of the achievable negativity set, and
explores its qudit generalization.
"""

from negmono.backend import active_backend
from negmono.boundary import (BoundaryCurve, boundary_curve, classify_triple,
                              closed_form_root, implicit_surface_eval,
                              parametric_boundary_triple, quartic_eval,
                              stationarity_residuals)
from negmono.explorer import (SampleRecord, SearchReport, emit_dataset,
                              perturbation_search, read_dataset,
                              region_fill_sweep, sample_triples)
from negmono.linalg import (density_from_pure, hermitian_eigenvalues,
                            jacobi_eigenvalues, partial_trace,
                            partial_transpose, tensor_product)
from negmono.measures import (ConcurrenceTriple, MarginalSpectra,
                              NegativityTriple, concurrence_pure_cut,
                              concurrence_triple, marginal_spectra,
                              monogamy_residual, n_abc_squared_closed_form,
                              negativity, negativity_triple,
                              wootters_concurrence)
from negmono.qudit import (PtBlockDecomposition, asymptotic_check,
                           higuchi_residual, n_abc_closed_form,
                           pt_block_decompose, pt_determinants,
                           qudit_negativity_triple, swap_surface_scan)
from negmono.states import (AcinParams, PureState, QuditFamilyParams,
                            SwapFamilyParams, acin_state, haar_random_pure,
                            named_state, qudit_family_state, swap_family_state)

__version__ = "0.1.0"
