"""Counting torus-fixed pairs on a local elliptic curve with 3D Young diagrams.

Run with ``python demos/plane_partitions.py``.
"""

from gvpairs.gvseries import macmahon
from gvpairs.partitions import count_plane_partitions, list_plane_partitions, p0_local_elliptic_series

# %% the three diagrams with two boxes
for p in list_plane_partitions(2):
    print(p.sorted_boxes())

# %% counts against the MacMahon function
top = 12
counts = [count_plane_partitions(m) for m in range(top + 1)]
mac = macmahon(top)
print("diagrams:", counts)
print("MacMahon:", [int(mac[(m,)]) for m in range(top + 1)])
print("series agree:", p0_local_elliptic_series(top) == mac)
