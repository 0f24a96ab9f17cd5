"""Frame-set obstructions for Gabor systems generated by cardinal B-splines.

Exact enumeration of the point set P and hyperbolic segments H, the Janssen
tie tiles, Zak transforms and Zibulski-Zeevi matrices of N_n, and explicit
kernel-vector certificates that G(N_n, a, b) is not a frame on H.
"""

from .bspline import build_bspline, evaluate, periodization, pou_region, verify_partly_pou
from .certify import Certificate, NotInH, build_certificate, certify_nonframe, find_x0
from .errors import DegenerateConstant, InfeasibleWitness, PreconditionViolated
from .numeric import (
    CircleIntervalSet,
    circle_intersect,
    circle_shift,
    parse_rational,
    round_nearest,
    signed_frac,
)
from .sets import (
    ObstructionParams,
    enum_P,
    enum_P_grochenig,
    ghosh_selvan_segment,
    in_old_hyperbolas,
    local_gaps,
    segment_H,
    tile_of,
    verify_containment,
)
from .zak import (
    LatticeParams,
    ZZPoint,
    column_group_sum,
    lattice,
    scan,
    smallest_singular_value,
    zak_eval,
    zz_matrix,
)

__version__ = "0.1.0"
