"""C2D4 genus-2 curves over Q: invariants, Richelot duals, local and global arithmetic."""

from .arith import Place
from .config import Config, default_config
from .errors import InternalInconsistency, NotSemistable, Unsupported
from .globalreport import check_conjecture, parity_prediction
from .localdata import local_data
from .model import C2D4Curve, CurveError, DegenerateInvariants, parse_curve
from .richelot import RichelotDegenerate, dual_curve

__all__ = [
    "C2D4Curve", "Config", "CurveError", "DegenerateInvariants", "InternalInconsistency",
    "NotSemistable", "Place", "RichelotDegenerate", "Unsupported", "check_conjecture",
    "default_config", "dual_curve", "local_data", "parity_prediction", "parse_curve",
]
__version__ = "0.1.0"
