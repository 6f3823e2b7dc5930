from .mdist import MultiDist, mdist_scale, mdist_sum
from .calculus import (ProbStep, TermProbStep, check_embedding, check_mass_conservation, check_surface_swap, lift,
                       lift_steps, prob_factorization_oracle, prob_suite, prob_view, term_prob_steps)
