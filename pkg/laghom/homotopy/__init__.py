from .base import Homotopy
from .lifted import LiftedHomotopy, univariate_cell_homotopy
from .straight_line import StraightLineHomotopy

__all__ = [
	"Homotopy",
	"LiftedHomotopy",
	"StraightLineHomotopy",
	"univariate_cell_homotopy",
]
