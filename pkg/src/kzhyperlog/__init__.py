"""Symbolic KZ series solutions on M_{0,4} and M_{0,5}, the reduced bar
algebra of the Orlik-Solomon model, and certified numerics for
hyperlogarithms and the identities derived from them."""

from .errors import (AlphabetError, ConvergenceError, DivergenceError, DomainError,
                     InternalConsistencyError, KZError, PreconditionError)
from .wordalg import ShufflePoly, concat, shuffle
from .envalg import NCPoly, U05, normal_form
from .osbar import TensorElement, bar_basis, b0_basis, cic_check, iota_12, iota_21
from .kzsolve import SeriesSolution, expand_1kz, expand_2kz, expand_g1kz
from .hyperlog import EvalConfig, Estimate, eval_mpl1, eval_mpl2, eval_mzv, eval_word
from .identities import Identity, Report, verify

__version__ = "0.1.0"
