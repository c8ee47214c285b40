"""
Quivers, Euler forms and the sign twist
=======================================

Build a few small quivers, look at their Euler forms, form the triple
quiver and find a mod-2 form psi with psi + psi^T equal to the sign form tau.
"""
from coha_workbench.quiver import (ModTwoBilinearForm, build_triple, euler_form, jordan, kronecker, linear_quiver,
                                   symmetrized_euler, solve_psi, tau_form, verify_psi)

A2 = linear_quiver(2)
print("Euler form of A2:", euler_form(A2).matrix)
print("symmetrized:", symmetrized_euler(A2).matrix)

# the triple adds a reversed arrow a* for each arrow and a loop at each vertex
T = build_triple(A2)
print("triple arrows:", T.arrow_names())
print("tau on the triple:", tau_form(T).to_list())

# psi is found by linear algebra over F_2
for Q in (jordan(), A2, kronecker()):
    T = build_triple(Q)
    psi = solve_psi(T)
    base = ModTwoBilinearForm(T.vertices, euler_form(Q).matrix)
    print(Q.vertices, "psi =", psi.to_list(), "verified:", verify_psi(T, psi),
          "| base Euler form works too:", verify_psi(T, base))
