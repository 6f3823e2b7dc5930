from .ars import ARSView, Bounds, FiniteStep, calculus_view, finite_view
from .search import DEFAULT_BUDGET, Segment, find_path, search
from .swaps import SwapKind, check_star_swap, check_strong_postponement, check_swap
from .oracle import Outcome, Verdict, factorization_oracle, oracle_report, reorder_sequence, replay_chain
from .modular import Component, ModularVerdict, head_test, leftweak_test, modular_test
