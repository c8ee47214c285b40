"""
Counting points over finite fields
==================================

Count representations of the doubled quiver with zero moment map, compare the
fast linear-algebra count with naive enumeration, compute Kac polynomials two
ways, and run the fit-then-predict comparison between the two.
"""
import time

from coha_workbench.quiver import jordan, kronecker, linear_quiver
from coha_workbench.replab import (count_nilpotent, count_preprojective, integrality_shadow, kac_bruteforce,
                                   kac_polynomials, stack_count)
from coha_workbench.replab.kac import poly_str

J, A2 = jordan(), linear_quiver(2)
for d, q in [((1,), 3), ((2,), 2), ((2,), 3)]:
    t0 = time.perf_counter()
    fast = count_preprojective(J, d, q)
    t1 = time.perf_counter()
    naive = count_preprojective(J, d, q, mode="naive")
    t2 = time.perf_counter()
    print(f"Jordan d={d} q={q}: fast {fast} ({t1 - t0:.3f}s) naive {naive} ({t2 - t1:.3f}s)")

print("stack count row:", stack_count(J, (3,), 2))
print("nilpotent part, Jordan d=2 q=2:", count_nilpotent(J, (2,), 2))

for Q, dmax in [(J, (3,)), (kronecker(), (2, 2))]:
    for d, p in sorted(kac_polynomials(Q, dmax).items()):
        print(f"  a_{d}(q) = {poly_str(p)}   brute force at q=2: {kac_bruteforce(Q, d, 2)}")

rep = integrality_shadow(J, (3,), (2, 3), also=[("a2", A2, (2, 2), (2,))], name="jordan")
print(rep.summary())
print("fitted:", rep.data["fit"])
