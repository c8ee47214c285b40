"""
Lie algebras from Serre presentations
=====================================

Free Lie algebras via Lyndon words, then the quotient by Serre relators.
For Dynkin quivers this recovers the positive part of the simple Lie algebra.
"""
from coha_workbench.lie import (GradedGenerator, check_lie_axioms, free_lie_dims, preprojective_root_data,
                                serre_quotient, simple_presentation, structure_constants)
from coha_workbench.quiver import jordan, kronecker, linear_quiver

x, y = GradedGenerator("x", (1, 0)), GradedGenerator("y", (0, 1))
print("free Lie algebra on x, y up to (3,3):", free_lie_dims([x, y], (3, 3)))

g = serre_quotient(simple_presentation(linear_quiver(2)), (2, 2))
print("n+(A2) dims:", g.dims())
print("structure constants:", structure_constants(g))
print("axioms hold:", check_lie_axioms(g).passed)

g3 = serre_quotient(simple_presentation(linear_quiver(3)), (2, 2, 2))
print("n+(A3) dims:", dict(sorted(g3.dims().items())))

# loop quivers give imaginary generators in every degree
print("Jordan generators:", [h.degree for h in preprojective_root_data(jordan(), [(1,)], (3,))])
print("Kronecker generators:",
      [h.degree for h in preprojective_root_data(kronecker(), [(1, 0), (0, 1), (1, 1)], (3, 3))])
