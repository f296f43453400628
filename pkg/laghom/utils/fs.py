from __future__ import annotations

import os
from pathlib import Path


def ensure_parent(path: Path) -> None:
	path.parent.mkdir(parents=True, exist_ok=True)


def read_bytes(path: Path) -> bytes:
	return path.read_bytes()


def atomic_write_bytes(path: Path, data: bytes) -> None:
	"""Write to a sibling temp file, then rename over ``path``."""
	ensure_parent(path)
	tmp = path.with_suffix(path.suffix + ".tmp")
	tmp.write_bytes(data)
	os.replace(tmp, path)
