"""hvlab: a numerical laboratory for the Volterra operator T_g on spaces
of analytic functions in the unit disk."""
from .catalog import CATALOG, FunctionSpec, realize
from .config import Config, RunConfig
from .norms import NormEstimate, SpaceSpec, estimate
from .operators import apply
from .series import TaylorSeries


__version__ = '0.1.0'
