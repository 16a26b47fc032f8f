"""Numerical workbench for phase-space composition laws on a matched torus grid.

Submodules are imported explicitly (``from moyalbench import grid``); this
file stays free of heavy imports so the command-line entry point can pin
thread counts before numpy loads.
"""

__version__ = "0.1.0"
