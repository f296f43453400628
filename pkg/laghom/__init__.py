from .config import SolverConfig, TrackerConfig
from .core.degree import DegreeProfile, algebraic_degree_generic, derangement, multiaffine_degree, refined_hypersurface_degree, symmetric_sum
from .core.lagrange import LinearObjectiveProblem, SquareSystem, lagrange_general, lagrange_linear_hypersurface, random_hypersurface_problem
from .core.poly import CompiledSystem, SparsePolynomial, evaluate, gradient, jacobian, partial, random_generic
from .core.solver import classify_real, solve, solve_oracle_total_degree, solve_univariate_polyhedral
from .core.start_system import build_binomial_start, build_total_degree_start
from .core.tracker import track_all, track_all_async, track_path
from .core.tropical import binomial_lifting, build_tropical_system, lower_hull_cells_univariate, solve_tropical
from .types import CriticalPoint, PathResult, SolveReport

__all__ = [
	"SolverConfig",
	"TrackerConfig",
	"DegreeProfile",
	"algebraic_degree_generic",
	"derangement",
	"multiaffine_degree",
	"refined_hypersurface_degree",
	"symmetric_sum",
	"LinearObjectiveProblem",
	"SquareSystem",
	"lagrange_general",
	"lagrange_linear_hypersurface",
	"random_hypersurface_problem",
	"CompiledSystem",
	"SparsePolynomial",
	"evaluate",
	"gradient",
	"jacobian",
	"partial",
	"random_generic",
	"classify_real",
	"solve",
	"solve_oracle_total_degree",
	"solve_univariate_polyhedral",
	"build_binomial_start",
	"build_total_degree_start",
	"track_all",
	"track_all_async",
	"track_path",
	"binomial_lifting",
	"build_tropical_system",
	"lower_hull_cells_univariate",
	"solve_tropical",
	"CriticalPoint",
	"PathResult",
	"SolveReport",
]
