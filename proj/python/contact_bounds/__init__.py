"""Load bounds for two incompressible neo-Hookean bodies in unilateral contact."""

from ._core import *  # noqa: F401,F403
from ._core import Error, Example, ExampleParams, LoadInterval, Regime

__all__ = [name for name in dir() if not name.startswith("_")]
