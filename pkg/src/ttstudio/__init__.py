"""Interactive timetabling studio.

Course/event/resource graphs are compiled into finite-domain constraint
models, emitted as readable constraint programs, and solved by
branch-and-bound over soft-constraint scores.
"""

__version__ = "0.1.0"

from .graph import Graph, LinkRejection, NodeKind
from .grid import TimeGrid, decode_slot

__all__ = ["Graph", "LinkRejection", "NodeKind", "TimeGrid", "decode_slot", "__version__"]
