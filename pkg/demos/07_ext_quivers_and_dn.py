"""
Ext-quivers and a numerical look at the D_n fibre
=================================================

Ext-quivers of collections of simple representations, then random points on
the zero fibre of the moment map for affine D4 and a rank test on monomials
in a few trace functions.
"""
from coha_workbench.quiver import jordan, linear_quiver
from coha_workbench.replab import QuiverRepFq, dn_singularity_check, ext_quiver

A2 = linear_quiver(2)
E, zeta, rep = ext_quiver([QuiverRepFq.simple(A2, v, 3) for v in A2.vertices], A2.vertices)
print("Ext-quiver of vertex simples:", [(a.src, a.tgt) for a in E.arrows], rep.passed)

# two non-isomorphic one-dimensional Jordan simples give two disjoint loops
S = [QuiverRepFq(jordan(), (1,), 5, {"a": [[lam]]}) for lam in (1, 2)]
E, zeta, rep = ext_quiver(S)
print("Jordan simples:", [(a.src, a.tgt) for a in E.arrows], rep.passed)

rep = dn_singularity_check(4, samples=25, seed=7)
print(rep.summary())
print("singular values:", rep.data["singular_values"])
print("largest |y| over samples:", rep.data["max_abs"]["y"])
