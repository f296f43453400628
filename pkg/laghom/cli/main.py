from __future__ import annotations

import logging
from fractions import Fraction
from pathlib import Path
from typing import Optional

import orjson
import typer
from pydantic import ValidationError
from rich.console import Console
from rich.logging import RichHandler
from rich.table import Table

from ..config import SolverConfig, TrackerConfig, env_log_level
from ..core.bench import iter_bench
from ..core.degree import DegreeProfile, algebraic_degree_generic, multiaffine_degree, refined_hypersurface_degree
from ..core.poly import SparsePolynomial
from ..core.solver import solve, solve_univariate_polyhedral
from ..core.tropical import check_unit_cell, lower_hull_cells_univariate
from ..errors import LHError, LHTrackingError
from ..io.files import dump_result, load_problem, write_result
from ..types import CriticalPoint
from ..utils.fs import atomic_write_bytes


app = typer.Typer(name="lh", help="Critical points of linear objectives on polynomial hypersurfaces")
console = Console()

# lifted support of x^3 - x^2 + 2x - 1
EXAMPLE_COEFFS = {0: -1.0, 1: 2.0, 2: -1.0, 3: 1.0}
EXAMPLE_WEIGHTS = {0: 0, 1: 3, 2: 1, 3: 2}


@app.callback()
def main(log_level: str = typer.Option(env_log_level(), "--log-level", help="DEBUG, INFO, WARNING or ERROR")):
	logging.basicConfig(
		level=log_level.upper(),
		format="%(message)s",
		handlers=[RichHandler(console=Console(stderr=True), show_path=False)],
		force=True,
	)


def _parse_int_list(text: str) -> list[int]:
	try:
		return [int(v) for v in text.split(",") if v.strip()]
	except ValueError:
		raise typer.BadParameter(f"expected comma-separated integers, got {text!r}")


def _expand_degrees(text: str, n: Optional[int]) -> list[int]:
	ds = _parse_int_list(text)
	if len(ds) == 1 and n is not None:
		return ds * n
	if len(ds) > 1 and n is not None and n != len(ds):
		raise typer.BadParameter(f"--n {n} does not match the {len(ds)} degrees given")
	return ds


def _fmt(z: complex) -> str:
	if abs(z.imag) == 0:
		return f"{z.real:.10g}"
	return f"{z.real:.10g}{z.imag:+.10g}j"


def _point_row(p: CriticalPoint) -> list[str]:
	xs = ", ".join(_fmt(complex(v)) for v in p.x)
	lams = ", ".join(_fmt(complex(v)) for v in p.multipliers)
	obj = "" if p.objective_value is None else f"{p.objective_value:.10g}"
	return [xs, lams, f"{p.residual:.1e}", "yes" if p.is_real else "no", obj]


@app.command("solve")
def cmd_solve(
	problem: Path = typer.Argument(..., help="Problem file (JSON, format 1)"),
	output: Optional[Path] = typer.Option(None, help="Write the result document here"),
	seed: Optional[int] = typer.Option(None, help="Overrides the file's seed"),
	threads: Optional[int] = typer.Option(None, help="Path-tracking threads (default LH_THREADS)"),
	tol: Optional[float] = typer.Option(None, help="Endpoint residual tolerance"),
	real_tol: Optional[float] = typer.Option(None, help="Relative imaginary-part tolerance"),
	format: str = typer.Option("table", help="table or machine"),
):
	if format not in ("table", "machine"):
		raise typer.BadParameter("format must be 'table' or 'machine'")
	try:
		pf = load_problem(problem)
		lp = pf.to_problem()
		updates: dict = {}
		if seed is not None or pf.seed is not None:
			updates["seed"] = seed if seed is not None else pf.seed
		if threads is not None:
			updates["threads"] = threads
		if real_tol is not None:
			updates["real_tol"] = real_tol
		if tol is not None:
			updates["tracker"] = TrackerConfig(endpoint_tol=tol)
		cfg = SolverConfig.model_validate({**SolverConfig().model_dump(), **updates})
		report = solve(lp, cfg)
	except LHTrackingError as exc:
		console.print(f"[red]{exc}[/red]")
		raise typer.Exit(code=2)
	except (LHError, ValidationError) as exc:
		console.print(f"[red]error:[/red] {exc}")
		raise typer.Exit(code=1)

	if output is not None:
		try:
			write_result(output, report)
		except OSError as exc:
			console.print(f"[red]cannot write {output}:[/red] {exc}")
			raise typer.Exit(code=1)

	if format == "machine":
		typer.echo(dump_result(report).decode(), nl=False)
	else:
		table = Table(title=f"{len(report.found)} critical points ({report.expected_count} expected)")
		for col in ("x", "lambda", "residual", "real", "objective"):
			table.add_column(col)
		for p in report.found:
			table.add_row(*_point_row(p))
		console.print(table)
		console.print(
			f"paths {report.n_paths}: {report.n_converged} converged, {report.n_diverged} diverged, {report.n_failed} failed; "
			f"tracking {report.wall_time:.3f}s"
		)
		if report.note:
			console.print(f"note: {report.note}")
		if report.global_minimum is not None:
			console.print(f"global minimum {report.global_minimum.objective_value:.10g}")

	if len(report.found) != report.expected_count:
		raise typer.Exit(code=2)
	if report.n_failed:
		raise typer.Exit(code=2)


@app.command("degree")
def cmd_degree(
	degrees: str = typer.Option("", help="Coordinate degrees, e.g. 2,3,4, or one degree used with --n"),
	n: Optional[int] = typer.Option(None, help="Dimension"),
	d0: int = typer.Option(1, help="Objective degree"),
	multiaffine: bool = typer.Option(False, help="Also print the multiaffine count !(n+1)"),
	format: str = typer.Option("table", help="table or machine"),
):
	ds = _expand_degrees(degrees, n)
	if not ds and not (multiaffine and n):
		raise typer.BadParameter("give --degrees, or --multiaffine with --n")
	row: dict = {}
	try:
		if ds:
			ds = sorted(ds)
			row["degrees"] = ds
			row["generic"] = algebraic_degree_generic(DegreeProfile(d0, (max(ds),), len(ds)))
			row["refined"] = refined_hypersurface_degree(ds)
		if multiaffine:
			dim = n if n is not None else len(ds)
			row["multiaffine"] = multiaffine_degree(dim)
	except LHError as exc:
		console.print(f"[red]error:[/red] {exc}")
		raise typer.Exit(code=1)
	if format == "machine":
		typer.echo(orjson.dumps(row).decode())
		return
	for key, value in row.items():
		console.print(f"{key}: {value}", soft_wrap=True)


@app.command("tropical-check")
def cmd_tropical_check(
	degrees: str = typer.Option("", help="Coordinate degrees, e.g. 2,3,4, or one degree used with --n"),
	n: Optional[int] = typer.Option(None, help="Dimension"),
	allow_low_degree: bool = typer.Option(False, help="Accept degrees below 2"),
	example: bool = typer.Option(False, help="Run the univariate lower-hull fixture instead"),
):
	if example:
		_tropical_example()
		return
	ds = _expand_degrees(degrees, n)
	if not ds:
		raise typer.BadParameter("give --degrees")
	ds = sorted(ds)
	if min(ds) < 2 and not allow_low_degree:
		console.print("[red]error:[/red] degrees below 2 fall outside the lifting's hypotheses; pass --allow-low-degree")
		raise typer.Exit(code=1)
	try:
		ok, solutions = check_unit_cell(ds)
	except LHError as exc:
		console.print(f"[red]error:[/red] {exc}")
		raise typer.Exit(code=1)
	for sol in solutions:
		a = ", ".join(str(v) for v in sol.a)
		console.print(f"a = ({a}), b = {sol.b}", soft_wrap=True)
	console.print("PASS" if ok else "FAIL")
	if not ok:
		raise typer.Exit(code=2)


def _tropical_example() -> None:
	cells = lower_hull_cells_univariate([(k, w) for k, w in EXAMPLE_WEIGHTS.items()])
	for cell in cells:
		pts = ", ".join(f"({e}, {w})" for e, w in cell.points)
		console.print(f"cell {{{pts}}} normal ({cell.normal[0]}, {cell.normal[1]})", soft_wrap=True)
	poly = SparsePolynomial.from_terms(1, {(k,): c for k, c in EXAMPLE_COEFFS.items()})
	roots = solve_univariate_polyhedral(poly, {k: Fraction(w) for k, w in EXAMPLE_WEIGHTS.items()})
	for r in roots:
		console.print(f"root {_fmt(complex(r))}  |f| = {abs(poly([r])):.1e}", soft_wrap=True)


@app.command("bench")
def cmd_bench(
	d: int = typer.Option(2, help="Constraint degree"),
	n_min: int = typer.Option(2, help="Smallest dimension"),
	n_max: int = typer.Option(4, help="Largest dimension"),
	repetitions: int = typer.Option(1, help="Instances per dimension"),
	seed: int = typer.Option(0, help="First instance seed"),
	threads: int = typer.Option(1, help="Path-tracking threads"),
	oracle_max_paths: int = typer.Option(0, help="Run the total-degree oracle when its path count is at most this"),
	output: Optional[Path] = typer.Option(None, help="Write one JSON line per row here"),
):
	table = Table(title=f"d = {d}")
	for col in ("n", "expected", "paths", "converged", "found", "mean s", "median s", "oracle paths", "oracle found", "oracle s", "failed runs"):
		table.add_column(col, justify="right")

	def cell(value) -> str:
		if value is None:
			return "NA"
		return f"{value:.3f}" if isinstance(value, float) else str(value)

	lines = []
	try:
		for row in iter_bench(d, n_min, n_max, repetitions, seed, threads, oracle_max_paths):
			table.add_row(*(cell(v) for v in (row.n, row.expected_count, row.paths, row.converged, row.found, row.time_mean, row.time_median, row.oracle_paths, row.oracle_found, row.oracle_time, row.failed_runs)))
			lines.append(orjson.dumps(row.to_dict()))
	except LHError as exc:
		console.print(f"[red]error:[/red] {exc}")
		raise typer.Exit(code=1)
	console.print(table)
	if output is not None:
		atomic_write_bytes(output, b"".join(line + b"\n" for line in lines))
