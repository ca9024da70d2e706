"""Central tendency and dispersion of interval-valued data.

Central intervals minimize an L_p aggregation of interval distances to a
sample; the attained minimum is the matching dispersion.  Hypercubes are
handled coordinate-wise, and exact prototypes drive a dynamic clustering.
"""

__version__ = "0.1.0"

from .closed_form import (
    CentralEstimate,
    Method,
    center_l1_hausdorff,
    center_l2_bounds,
    center_l2_midlen,
    center_linf_hausdorff,
    central_interval,
    eval_dispersion,
)
from .clustering import ClusteringConfig, ClusteringResult, cluster, criterion
from .errors import (
    DimensionMismatch,
    IntervalError,
    KTooLarge,
    LowerExceedsUpper,
    MalformedHeader,
    NonFiniteBound,
    RowError,
    ZeroDispersion,
)
from .hypercube import (
    DispersionProfile,
    Hypercube,
    HypercubeDataset,
    centrocube,
    dispersion_profile,
    dist_hypercube,
    normalized_dist,
)
from .intervals import (
    Distance,
    Interval,
    IntervalSample,
    hausdorff,
    hausdorff_midlen,
    lp_bounds_dist,
    lp_midlen_dist,
    make_interval,
)
from .io import read_csv, write_csv
from .l2_hausdorff import (
    Breakpoints,
    RectangleSolution,
    RectangleSubproblem,
    breakpoints,
    center_l2_hausdorff,
    classify,
    solve_rectangle,
)
