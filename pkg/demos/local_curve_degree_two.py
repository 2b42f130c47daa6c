"""Degree-two invariants of a local curve, step by step.

Run with ``python demos/local_curve_degree_two.py``.
"""

from fractions import Fraction

from gvpairs.localcurve import (
    check_deg2_conjecture,
    deg2_fixed_components,
    gw_degree1,
    gw_degree2,
    pair_degree1,
    pair_degree2,
    residue_k_values,
    residue_term,
)
from gvpairs.symcore import ratfunc_eq

l = (2, -1, -3)
print(f"local curve with degrees {l}")

# %% degree one: a single fixed pair, and the GW and pair invariants agree
print("GW_{0,[P1]} =", gw_degree1(l))
print("P_{1,[P1]}  =", pair_degree1(l))

# %% degree two on the GW side
print("GW_{0,2[P1]} =", gw_degree2(l))

# %% the fixed locus only sees the positive-degree axis
for comp in deg2_fixed_components(l):
    print("fixed component", comp)

# %% each residue index contributes one term
for k in residue_k_values(l[0]):
    print(f"residue along axis 1, k={k}:", residue_term(l, 1, k))

p12 = pair_degree2(l)
print("P_{1,2[P1]} =", p12)

# %% the identity, checked exactly
rhs = p12 + pair_degree1(l).scale(Fraction(1, 8))
print("GW_{0,2} == P_{1,2} + P_{1,1}/8 :", ratfunc_eq(gw_degree2(l), rhs))

# %% a handful of other triples
for trip in [(-1, -1, 0), (-2, 0, 0), (5, -3, -4), (3, 1, -6), (-10, -10, 18)]:
    print(trip, check_deg2_conjecture(trip).conjecture_holds)
