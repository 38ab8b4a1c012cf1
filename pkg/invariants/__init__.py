"""
Invariants package for the Zhelobenko/Kostant verification engine
Contains the Weyl group calculus, the Zhelobenko operators and invariance solver,
the Kostant verifier and the rank-one enveloping-algebra oracle
"""

from .weyl_calculus import (
    ActionKind, Direction, act_simple, act_word, bgg, eq2_check, psi, theta, theta_inverse, w_invariants
)
from .zhelobenko import (
    Generator, InvarianceConditions, PTuple, SolutionSpace, ZeroWeightElement, P_to_q, check_prop33,
    eq9_residual, extract_generators, is_invariant, q_to_P, solve_invariants, xi
)
from .kostant import ScanReport, VerificationReport, evaluate_invariant, scan_scalars, verify_kostant
from .pbw_oracle import OracleReport, sl2_pbw_oracle

__all__ = [
    'ActionKind', 'Direction', 'act_simple', 'act_word', 'bgg', 'eq2_check', 'psi', 'theta',
    'theta_inverse', 'w_invariants',
    'ZeroWeightElement', 'PTuple', 'InvarianceConditions', 'SolutionSpace', 'Generator', 'xi',
    'check_prop33', 'is_invariant', 'q_to_P', 'P_to_q', 'eq9_residual', 'solve_invariants',
    'extract_generators',
    'VerificationReport', 'ScanReport', 'evaluate_invariant', 'verify_kostant', 'scan_scalars',
    'OracleReport', 'sl2_pbw_oracle',
]
