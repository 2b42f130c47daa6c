"""Exact checks of Gopakumar-Vafa type invariants against stable pair invariants.

Modules:

* :mod:`gvpairs.symcore` - exact rational functions in two torus weights
* :mod:`gvpairs.localcurve` - equivariant invariants of local curves over P^1
* :mod:`gvpairs.gvseries` - q-series transforms between GW, GV and pair invariants
* :mod:`gvpairs.partitions` - plane partition enumeration
* :mod:`gvpairs.tables` - tabulated values and their consistency checks
"""

__version__ = "0.1.0"

from .symcore import LinForm, Poly2, PoleError, RatFunc, HSeries, ratfunc_eq, ratfunc_eval, parse_ratfunc
from .localcurve import (
    CYConditionError,
    LocalCurveGeom,
    InvariantReport,
    check_deg2_conjecture,
    grid_check,
    gw_degree1,
    gw_degree2,
    pair_degree1,
    pair_degree2,
)
from .gvseries import (
    ClassLattice,
    GeomData,
    IntegralityError,
    QSeries,
    gw0_from_n0,
    n0_from_gw0,
    meeting_invariants,
    genus1_forward,
    n1_from_genus1,
    macmahon,
    macmahon_product,
    n1_from_p0,
    ideal_generating_check,
    multiple_cover_expand,
)
from .partitions import PlanePartition, count_plane_partitions, list_plane_partitions
from .tables import PaperRecord, load_tables, dump_tables, run_consistency_checks
