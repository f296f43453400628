"""Problem and result documents.

Both are JSON objects with a ``"format": 1`` header. Writing goes through
orjson with two-space indentation and a trailing newline; floats use the
shortest round-trip representation, so a file written here parses back to
the same doubles and re-serializes byte-identically.
"""

from __future__ import annotations

from pathlib import Path
from typing import Any, Literal, Optional

import numpy as np
import orjson
from pydantic import BaseModel, Field, NonNegativeInt, ValidationError, field_validator, model_validator

from ..core.lagrange import LinearObjectiveProblem
from ..core.poly import SparsePolynomial
from ..errors import LHProblemFileError, LHProblemError
from ..types import CriticalPoint, SolveReport
from ..utils.fs import atomic_write_bytes, read_bytes


FORMAT_VERSION = 1
_DUMP_OPTIONS = orjson.OPT_INDENT_2 | orjson.OPT_APPEND_NEWLINE


class TermRecord(BaseModel):
	exponents: list[NonNegativeInt]
	re: float
	im: float = 0.0


class ProblemFile(BaseModel):
	format: Literal[1] = FORMAT_VERSION
	n: int = Field(ge=1)
	objective: list[float]
	constraint: list[TermRecord] = Field(min_length=1)
	seed: Optional[int] = None

	@field_validator("constraint")
	@classmethod
	def _no_duplicates(cls, terms: list[TermRecord]) -> list[TermRecord]:
		seen = set()
		for term in terms:
			key = tuple(term.exponents)
			if key in seen:
				raise ValueError(f"duplicate exponent vector {list(key)}")
			seen.add(key)
		return terms

	@model_validator(mode="after")
	def _check_lengths(self) -> "ProblemFile":
		if len(self.objective) != self.n:
			raise ValueError(f"objective has {len(self.objective)} entries, expected n = {self.n}")
		for k, term in enumerate(self.constraint):
			if len(term.exponents) != self.n:
				raise ValueError(f"constraint[{k}].exponents has length {len(term.exponents)}, expected n = {self.n}")
		return self

	def to_problem(self) -> LinearObjectiveProblem:
		f = SparsePolynomial.from_terms(self.n, [(t.exponents, complex(t.re, t.im)) for t in self.constraint])
		try:
			return LinearObjectiveProblem(tuple(self.objective), f)
		except LHProblemError as exc:
			raise LHProblemFileError(str(exc), field="constraint") from exc

	@classmethod
	def from_problem(cls, problem: LinearObjectiveProblem, seed: int | None = None) -> "ProblemFile":
		terms = [TermRecord(exponents=list(e), re=c.real, im=c.imag) for e, c in problem.f.terms]
		return cls(n=problem.n, objective=list(problem.u), constraint=terms, seed=seed)


class PointRecord(BaseModel):
	x_re: list[float]
	x_im: list[float]
	lambda_re: list[float]
	lambda_im: list[float]
	residual: float
	is_real: bool
	objective: Optional[float] = None

	@classmethod
	def from_point(cls, p: CriticalPoint) -> "PointRecord":
		return cls(
			x_re=p.x.real.tolist(),
			x_im=p.x.imag.tolist(),
			lambda_re=p.multipliers.real.tolist(),
			lambda_im=p.multipliers.imag.tolist(),
			residual=p.residual,
			is_real=p.is_real,
			objective=p.objective_value,
		)

	def to_point(self) -> CriticalPoint:
		return CriticalPoint(
			np.array(self.x_re) + 1j * np.array(self.x_im),
			np.array(self.lambda_re) + 1j * np.array(self.lambda_im),
			self.residual,
			self.is_real,
			self.objective,
		)


class ResultFile(BaseModel):
	format: Literal[1] = FORMAT_VERSION
	problem: dict[str, Any] = Field(default_factory=dict)
	expected_count: int = Field(ge=0)
	n_paths: int = Field(ge=0)
	n_converged: int = Field(ge=0)
	n_diverged: int = Field(ge=0)
	n_failed: int = Field(ge=0)
	points: list[PointRecord]
	global_minimum: Optional[PointRecord] = None
	wall_time: float
	min_grad_norm: Optional[float] = None
	note: str = ""

	@model_validator(mode="after")
	def _check_counts(self) -> "ResultFile":
		if self.n_converged + self.n_diverged + self.n_failed != self.n_paths:
			raise ValueError("converged + diverged + failed must equal the number of paths")
		return self

	@classmethod
	def from_report(cls, report: SolveReport) -> "ResultFile":
		return cls(
			problem=report.problem,
			expected_count=report.expected_count,
			n_paths=report.n_paths,
			n_converged=report.n_converged,
			n_diverged=report.n_diverged,
			n_failed=report.n_failed,
			points=[PointRecord.from_point(p) for p in report.found],
			global_minimum=PointRecord.from_point(report.global_minimum) if report.global_minimum else None,
			wall_time=report.wall_time,
			min_grad_norm=report.min_grad_norm,
			note=report.note,
		)


def _field_path(loc: tuple) -> str:
	return ".".join(str(part) for part in loc) or "<root>"


def parse_problem(data: bytes | str) -> ProblemFile:
	try:
		raw = orjson.loads(data)
	except orjson.JSONDecodeError as exc:
		raise LHProblemFileError(f"malformed JSON: {exc.msg}", line=exc.lineno) from exc
	if not isinstance(raw, dict):
		raise LHProblemFileError("problem file must be a JSON object", field="<root>")
	try:
		return ProblemFile.model_validate(raw)
	except ValidationError as exc:
		first = exc.errors()[0]
		raise LHProblemFileError(first["msg"], field=_field_path(first["loc"])) from exc


def load_problem(path: Path | str) -> ProblemFile:
	try:
		data = read_bytes(Path(path))
	except OSError as exc:
		raise LHProblemFileError(f"cannot read {path}: {exc.strerror}") from exc
	return parse_problem(data)


def dump_problem(pf: ProblemFile) -> bytes:
	return orjson.dumps(pf.model_dump(mode="json"), option=_DUMP_OPTIONS)


def write_problem(path: Path | str, pf: ProblemFile) -> None:
	atomic_write_bytes(Path(path), dump_problem(pf))


def dump_result(report: SolveReport | ResultFile) -> bytes:
	rf = report if isinstance(report, ResultFile) else ResultFile.from_report(report)
	return orjson.dumps(rf.model_dump(mode="json"), option=_DUMP_OPTIONS)


def write_result(path: Path | str, report: SolveReport | ResultFile) -> None:
	atomic_write_bytes(Path(path), dump_result(report))


def load_result(path: Path | str) -> ResultFile:
	return ResultFile.model_validate(orjson.loads(read_bytes(Path(path))))
