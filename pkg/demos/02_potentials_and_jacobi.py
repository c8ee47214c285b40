"""
Potentials, cyclic derivatives and dimensional reduction
========================================================

The canonical cubic potential on the triple quiver has cyclic derivatives
that reproduce the preprojective relations, so the Jacobi algebra looks like
the preprojective algebra with a free central variable adjoined.
"""
from coha_workbench.paths import (canonical_cubic, cyclic_derivative, jacobi_relations, preprojective_components,
                                  truncated_quotient_dims, verify_dimensional_reduction_relations,
                                  solve_positive_weight, dn_deformation_potential)
from coha_workbench.quiver import affine_dn, build_double, build_triple, corpus, dn_star_names, jordan, linear_quiver

A2 = linear_quiver(2)
W = canonical_cubic(A2)
print("W =", W)
print("dW/d(omega_1) =", cyclic_derivative(W, "ω_1"))

for name, Q in sorted(corpus().items()):
    print(f"{name:10s} relation check:", verify_dimensional_reduction_relations(Q).passed)

# graded dimensions: Jacobi algebra vs preprojective algebra, path length <= 6
for Q in (jordan(), A2):
    jac = truncated_quotient_dims(build_triple(Q), jacobi_relations(canonical_cubic(Q)), 6)
    pi = truncated_quotient_dims(build_double(Q), list(preprojective_components(Q).values()), 6)
    print("Jac:", jac, " Pi:", pi)

# a deformed potential on affine D4 still admits a positive grading
deformed = canonical_cubic(affine_dn(4), dn_star_names(4)) + dn_deformation_potential(4, triple=True)
print("positive weight for the deformed D4 potential:", solve_positive_weight(deformed))
