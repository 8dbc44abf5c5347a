"""Connected sums of simplicial complexes, polytope cuts, Stanley-Reisner rings and Koszul Tor.

Faces are lists of 1-based vertex labels (any sequence is accepted as input);
integers are exact Python ints.
"""

from ._connsum import *  # noqa: F401,F403
from ._connsum import HypothesisError, Polytope, SimplicialComplex, TorResult

__all__ = [name for name in dir() if not name.startswith("_")]
