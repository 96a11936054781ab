"""Exact computation of the total co-independent domination number.

The package solves gamma_t, gamma_t,coi, alpha and beta exactly, builds the
gadget reduction from the independence number, generates the extremal graph
families and the tree family built from P4, and checks the known bounds.
"""

from .errors import (
    InfeasibleError,
    InvalidInputError,
    IsolatedVertexError,
    NotATreeError,
    ParseError,
    PreconditionError,
    TcoiError,
)
from .graph import Graph
from .solvers import Method, Problem, SolveResult, alpha, beta, gamma_t, gamma_tcoi

__version__ = "0.1.0"

__all__ = [
    "Graph", "InfeasibleError", "InvalidInputError", "IsolatedVertexError", "Method",
    "NotATreeError", "ParseError", "PreconditionError", "Problem", "SolveResult",
    "TcoiError", "alpha", "beta", "gamma_t", "gamma_tcoi",
]
