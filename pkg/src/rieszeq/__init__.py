"""Riesz sphere potentials, equilibrium-measure certificates for radial
external fields, and independent numeric verification oracles."""

from .backend import BACKEND, USE_NUMBA
from .equilibrium import (ConditionReport, ModifiedPotentialCtx, SphereVerdict,
                          UnimodalCertificate, alpha_threshold, certify_sphere,
                          f_eval, g_eval, global_min_scan, necessary_report,
                          power_law_energy, power_law_radius, power_law_verdict,
                          rescale_maps, stationary_radii, sufficient_certify,
                          unimodal_certify)
from .fields import (Exponential, LennardJones, PowerLaw, PowerLog, PowerSink,
                     RadialField, confinement_check, field_eval,
                     field_from_dict, field_limits, field_to_dict, q_eval)
from .oracle import (ParticleConfig, RadialMeasure, SupportReport,
                     kernel_matrix, particle_equilibrium_solve,
                     radial_equilibrium_solve, scaling_equivalence_check,
                     support_report)
from .specfun import (DivergentAtOne, DomainError, Hyp2F1Args, NoConvergence,
                      SpecFunConfig, digamma, hyp2f1, hyp2f1_euler_quad,
                      hyp3f2_log_kernel, hyp3f2_log_quad, ln_gamma)
from .sphere import (QuadratureFailure, RieszParams, SphereEvalPoint, b_d,
                     c_sd, funk_hecke_oracle, h_eval, h_eval_lambda,
                     sphere_energy, sphere_potential)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
