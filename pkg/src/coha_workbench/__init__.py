"""Workbench for quiver, current-algebra and point-count computations.

The subpackages mirror the layers of the toolkit:

* ``quiver``      quivers, dimension vectors, Euler forms, mod-2 twists
* ``paths``       exact path-algebra arithmetic, potentials, quotient dimensions
* ``lie``         graded Lie algebras presented by generators and Serre relations
* ``current``     the weight-twisted current algebra n[u]
* ``characters``  truncated bigraded characters and plethystic exponentials
* ``replab``      finite-field and numerical representation experiments
* ``cli``         the ``coha-workbench`` command line
"""

__version__ = "0.1.0"

from .quiver import (
    Quiver,
    IntBilinearForm,
    ModTwoBilinearForm,
    euler_form,
    symmetrized_euler,
    build_double,
    build_triple,
    tau_form,
    solve_psi,
    verify_psi,
    det_weight,
)

__all__ = [
    "Quiver",
    "IntBilinearForm",
    "ModTwoBilinearForm",
    "euler_form",
    "symmetrized_euler",
    "build_double",
    "build_triple",
    "tau_form",
    "solve_psi",
    "verify_psi",
    "det_weight",
]
