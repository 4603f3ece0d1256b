"""Bundled desk-scale problem instances.

Each instance is a plain problem JSON inside ``nonalter/corpus/`` and can be
fed to the CLI directly or loaded through :func:`load`.
"""

from __future__ import annotations

from importlib.resources import files
from pathlib import Path
from typing import Tuple

from .problem_io import parse_problem
from .quad_core import QuadForm

NAMES = (
    "ex22",
    "ex23",
    "ex24",
    "ex25a",
    "ex25b",
    "cdt_s2",
    "hqpd_s5a",
    "hqpd_s5b",
    "qp1qc_embed",
    "gtrs",
)


def corpus_dir() -> Path:
    return Path(str(files("nonalter") / "corpus"))


def corpus_path(name: str) -> Path:
    if name not in NAMES:
        raise KeyError(f"unknown corpus instance {name!r}; choose from {NAMES}")
    return corpus_dir() / f"{name}.json"


def load(name: str) -> Tuple[QuadForm, QuadForm, QuadForm, dict]:
    """Load one bundled instance as (f, g, h, meta)."""
    return parse_problem(corpus_path(name))
