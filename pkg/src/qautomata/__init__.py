# -*- coding: utf-8 -*-
"""Exact decision procedures for rational-weighted automata."""
from .errors import (AlphabetMismatchError, BudgetExceededError, CircuitError, ConfigError, DimensionError,
                     EmptyPolynomialError, EpsilonError, ForeignSymbolError, InvalidBasisError, IsolationError,
                     NotWellMatchedError, ParseError, QAutomataError, RewardRangeError, SingularMatrixError,
                     StochasticityError)
from .linalg import QMatrix, QVector, RowSpace, UPoly, det, inverse, kron, rank, star
from .wfa import (WFA, Alphabet, EquivResult, Verdict, Witness, backward_basis_det, difference, enumerate_oracle,
                  equivalent_det, evaluate, evaluate_labels, forward_basis_det, is_zero_det, transpose)
from .random_source import RandomSource
from .randomized import (ZeroResult, ZeroVerdict, equivalent_randomized, zero_isolation, zero_sz, zero_sz_cex,
                         zero_sz_forward)
from .minimize import (Basis, backward_basis_rand, backward_reduce, forward_basis_rand, forward_reduce,
                       gram_backward, gram_forward, hankel_rank, is_minimal, minimize)
from .pra import (PRA, distribution_equivalent, epsilon_check, expectation_equivalent, expectation_reduce,
                  expected_reward_oracle, first_moment_automaton, laurent_automaton, reward_distribution_oracle)
from .circuits import Circuit, CircuitBuilder, acit_equal, circuit_eval_exact, circuit_eval_mod, parse_circuit
from .vpa import (WVPA, VisiblyAlphabet, acit_to_vpa, is_well_matched, level_sum_exact, vpa_equivalent,
                  vpa_equivalent_exact, vpa_evaluate, vpa_product)
from .formats import parse, parse_text, render

__version__ = "0.1.0"
