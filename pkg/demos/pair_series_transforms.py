"""From stable pair counts to genus-one GV type invariants.

Run with ``python demos/pair_series_transforms.py``.
"""

from fractions import Fraction

from gvpairs.gvseries import (
    ClassLattice,
    GeomData,
    QSeries,
    genus1_forward,
    macmahon,
    macmahon_product,
    meeting_invariants,
    n1_from_genus1,
    n1_from_p0,
    sigma,
)

# %% the MacMahon function and its -20th power
cutoff = 8
m = macmahon(cutoff)
print("M(q)       :", [int(m[(d,)]) for d in range(cutoff + 1)])
p0 = m ** -20
print("M(q)^-20   :", [int(p0[(d,)]) for d in range(cutoff + 1)])

# %% invert the product formula: only degree one survives
n1 = n1_from_p0(p0)
print("n1 from P0 :", {b[0]: int(v) for b, v in n1.items()})

# %% a product Y x E: the genus-one series is chi * sigma(d)/d
lat = ClassLattice.rank1(6)
chi = 42
gw1 = QSeries(lat, {(d,): Fraction(chi * sigma(d), d) for d in range(1, 7)})
print("n1 for Y x E:", {b[0]: int(v) for b, v in n1_from_genus1(gw1, GeomData(lat), {}).items()})
print("P0 for Y x E equals M(q)^chi:", macmahon_product({(1,): chi}, lat) == macmahon(6) ** chi)

# %% meeting numbers from four-cycle data, and their effect on genus one
geom = GeomData(ClassLattice.rank1(4), 1, [[1]], {(1,): [3]}, {(1,): 5})
for (b1, b2), v in sorted(meeting_invariants(geom).items()):
    print(f"m_{{{b1[0]},{b2[0]}}} = {v}")
series = genus1_forward({(1,): 2}, geom)
print("GW_1 :", {b[0]: str(v) for b, v in series.to_table().items()})
print("back:", {b[0]: int(v) for b, v in n1_from_genus1(series, geom).items() if v})
