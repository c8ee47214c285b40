"""Finite-field and floating-point experiments with quiver representations."""
from .field import (BUDGET_ENV, DEFAULT_BUDGET, DEFAULT_ORBIT_BUDGET, BudgetExceeded, PrimeField,
                    batch_rank_mod_p, nullspace_mod_p, rank_mod_p, resolve_budget)
from .reps import QuiverRepFq, end_basis, ext1_dim, ext_quiver, gl_order, hom_dim, moment_map
from .counting import count_nilpotent, count_preprojective, is_nilpotent_rep, stack_count
from .kac import kac_bruteforce, kac_hua, kac_polynomials, poly_eval
from .integrality import NoFit, Normalization, candidate_grid, integrality_shadow, predict
from .dn import DegenerateSampling, dn_singularity_check, zero_sampler

__all__ = [
    "BUDGET_ENV", "DEFAULT_BUDGET", "DEFAULT_ORBIT_BUDGET", "BudgetExceeded", "PrimeField",
    "batch_rank_mod_p", "nullspace_mod_p", "rank_mod_p", "resolve_budget",
    "QuiverRepFq", "end_basis", "ext1_dim", "ext_quiver", "gl_order", "hom_dim", "moment_map",
    "count_nilpotent", "count_preprojective", "is_nilpotent_rep", "stack_count",
    "kac_bruteforce", "kac_hua", "kac_polynomials", "poly_eval",
    "NoFit", "Normalization", "candidate_grid", "integrality_shadow", "predict",
    "DegenerateSampling", "dn_singularity_check", "zero_sampler",
]
