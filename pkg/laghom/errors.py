class LHError(Exception):
	pass


class LHDimensionError(LHError):
	pass


class LHIndexError(LHError):
	pass


class LHProblemError(LHError):
	pass


class LHProfileError(LHError):
	pass


class LHSupportError(LHError):
	pass


class LHStartSystemError(LHError):
	pass


class LHTropicalError(LHError):
	pass


class LHPreconditionError(LHError):
	pass


class LHTrackingError(LHError):
	pass


class LHProblemFileError(LHError):
	def __init__(self, message: str, line: int | None = None, field: str | None = None):
		super().__init__(message)
		self.line = line
		self.field = field

	def __str__(self) -> str:
		where = []
		if self.line is not None:
			where.append(f"line {self.line}")
		if self.field:
			where.append(f"field {self.field}")
		base = super().__str__()
		return f"{base} ({', '.join(where)})" if where else base
