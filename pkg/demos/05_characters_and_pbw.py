"""
Characters and the PBW identity
===============================

A character records dimensions by dimension vector and cohomological degree.
Tensoring with a polynomial ring and taking the plethystic exponential gives
the character of U(n[u]); counting PBW monomials directly gives the same.
"""
from coha_workbench.characters import (Character, character_of_lie, pbw_character_check, plethystic_exp,
                                       tensor_polynomial_ring)
from coha_workbench.lie import serre_quotient, simple_presentation
from coha_workbench.quiver import linear_quiver

t = Character((4,), (0, 0), {((1,), 0): 1})
print("Exp(t):", plethystic_exp(t).to_list())

odd = Character((3,), (0, 4), {((1,), 1): 1})
print("signed Exp of an odd class stops at t^1:", plethystic_exp(odd).to_list())

print("1/(1-q^2)^2:", tensor_polynomial_ring(Character.one((0,), (0, 6)), 2).to_list())

g = serre_quotient(simple_presentation(linear_quiver(2)), (2, 2))
print(pbw_character_check(character_of_lie(g, (0, 8))).summary())
