"""
The twisted current algebra
===========================

x u^p brackets with y u^q through a weight |d| = sum r_i d_i.  Multiplication
by u and the derivation partial_u satisfy Heisenberg relations, and a change
of variable u -> u/|d| turns the twisted bracket into the plain one.
"""
from coha_workbench.current import (CurrentElement, TwistWeights, current_algebra_suite, heisenberg_check,
                                    rescaling_check, trivial_bracket, twisted_bracket)
from coha_workbench.lie import serre_quotient, simple_presentation
from coha_workbench.quiver import linear_quiver

g = serre_quotient(simple_presentation(linear_quiver(2)), (2, 2))
w = TwistWeights((1, 1))
G1u, G2u = CurrentElement.basis(g, "G1", 1), CurrentElement.basis(g, "G2", 1)
print("twisted [G1 u, G2 u] =", twisted_bracket(g, w, G1u, G2u))
print("plain   [G1 u, G2 u] =", trivial_bracket(g, G1u, G2u))

print(current_algebra_suite(g, w, upow=3).summary())
print("central charges for r=(2,3):", heisenberg_check(g, TwistWeights((2, 3))).data["central_charges"])
print(rescaling_check(g, TwistWeights((2, 3))).summary())
