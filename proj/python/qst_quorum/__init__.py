"""Design quantum-state-tomography quorums of rank-l projectors."""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
