"""Location of bundled data files (overridable with ``K3TK_DATA_DIR``)."""

from __future__ import annotations

import os
from pathlib import Path

ENV_VAR = "K3TK_DATA_DIR"
_BUNDLED = Path(__file__).resolve().parent / "data"


def data_dir() -> Path:
    override = os.environ.get(ENV_VAR)
    return Path(override) if override else _BUNDLED


def data_path(name: str) -> Path:
    return data_dir() / name
