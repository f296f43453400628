from .files import ProblemFile, ResultFile, dump_problem, dump_result, load_problem, parse_problem, write_problem, write_result

__all__ = [
	"ProblemFile",
	"ResultFile",
	"dump_problem",
	"dump_result",
	"load_problem",
	"parse_problem",
	"write_problem",
	"write_result",
]
