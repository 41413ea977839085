"""CTL verification of infinite-state systems by program specialization.

A system is described by linear constraints over rational variables.  The
property is turned into a constraint logic program, specialized by
unfold/fold with generalization, and the specialized program is evaluated
bottom-up.
"""

from .bottomup import Verdict
from .firing import Firing
from .generalization import GenOp
from .runner import RunConfig, RunReport, run
from .syntax import ParseError, ValidationError, parse_spec

__all__ = ["Firing", "GenOp", "ParseError", "RunConfig", "RunReport", "ValidationError",
           "Verdict", "parse_spec", "run"]
__version__ = "0.1.0"
