"""Python layer over the ndform C++ core.

The heavy lifting happens in the compiled ``_core`` extension; the wrappers
here turn its JSON-string results into plain dictionaries.
"""

import json

from ._core import (
    __version__,
    infsup_json,
    mesh_stats,
    problem_ids,
    run_convergence_json,
    solve_errors,
)

__all__ = [
    "__version__",
    "infsup",
    "mesh_stats",
    "problem_ids",
    "run_convergence",
    "solve_errors",
]


def run_convergence(test, degree=2, levels=(8, 16, 32, 64), p=2.0, method="c0dg",
                    solver="direct", tol=1e-10):
    """Run a convergence sweep and return the full record as a dict."""
    return json.loads(
        run_convergence_json(test, degree, list(levels), p, method, solver, tol)
    )


def infsup(test, degree=2, levels=(4, 8, 16)):
    """Run the inf-sup stability probe and return the record as a dict."""
    return json.loads(infsup_json(test, degree, list(levels)))
