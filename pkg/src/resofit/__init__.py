"""Total-least-squares data fitting plus exact state-vector simulation of
two probe-qubit resonant-transition eigensolvers, with a 12-mode
linear-prediction benchmark wired end to end."""

__version__ = "0.1.0"

from .errors import (DimMismatch, GenericityViolated, InsufficientSamples,
                     NonFinite, NonGeneric, NotHermitian, NotNormalized,
                     RankDeficient, ResofitError, Singular, ZeroProbability,
                     ZeroVector)
from .fitting import (AugmentedSystem, BoundCheck, FitProblem, TlsSolution,
                      augment, fit_quality, identity_check_eq11, ls_solve,
                      ls_tls_bound, solver_report, tls_closed_form, tls_solve)
from .hamiltonian import (HamiltonianModel, RegisterEmbedding, build_F,
                          build_h1, build_h2, embed_operator, embed_vector,
                          make_embedding, reference_b, reference_ls,
                          resonance_omega)
from .numerics import (HermEig, SvdFactorization, expm_unitary, hermitian_eig,
                       poly_roots, solve_hermitian, svd)
from .prony import (PRESETS, PronyParams, add_noise, build_lp_system,
                    gen_signal, read_params, read_signal, recover_modes,
                    vanblaricum12, write_signal)
from .resonance import (Algorithm2Result, CollapseResult, SweepPlan,
                        SweepResult, algorithm2_iterate, apply_sampling,
                        collapse_algorithm1, evolve, excited_state,
                        find_peaks, ground_transition_element,
                        probe_decay_probability, sample_measurements,
                        sweep_algorithm1, sweep_algorithm2, sweep_csv,
                        two_level_model)
