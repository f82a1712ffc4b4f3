"""On-disk cache of complexity tables, keyed by build parameters.

File names carry machine version, caps and the condition fingerprint, so
incompatible tables can never be loaded by accident. Imported tables lack
per-length program counts (the file keeps only K/witness/m); every cached
use-case needs only those persisted fields.
"""

from __future__ import annotations

import os
from pathlib import Path
from typing import Callable

from .enumeration import ComplexityTable, TableError, build_table, export_table, import_table
from .machine import MACHINE_VERSION, Budgets, Condition

ENV_CACHE_DIR = "ALGSTAT_CACHE_DIR"


def default_cache_dir() -> Path:
    env = os.environ.get(ENV_CACHE_DIR)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "algstat"


def table_path(cache_dir: str | Path, L: int, budgets: Budgets, fingerprint: str) -> Path:
    name = (
        f"{MACHINE_VERSION}_L{L}_T{budgets.max_steps}"
        f"_O{budgets.max_output}_{fingerprint[:16]}.table"
    )
    return Path(cache_dir) / name


def load_or_build(
    L: int,
    cond: Condition | None = None,
    budgets: Budgets | None = None,
    workers: int = 1,
    cache_dir: str | Path | None = None,
    warn: Callable[[str], None] | None = None,
    backend: str | None = None,
) -> tuple[ComplexityTable, bool]:
    """Fetch a table from the cache or build and cache it.

    Returns (table, was_built). ``warn`` is called with a message when a
    cold-cache build starts. A stale or unreadable cache file is rebuilt
    and overwritten, never trusted.
    """
    cond = cond if cond is not None else Condition.none()
    budgets = budgets if budgets is not None else Budgets()
    cache_dir = Path(cache_dir) if cache_dir is not None else default_cache_dir()
    fingerprint = cond.fingerprint()
    path = table_path(cache_dir, L, budgets, fingerprint)
    if path.exists():
        try:
            table = import_table(path)
        except TableError:
            table = None
        if (
            table is not None
            and table.L == L
            and table.budgets == budgets
            and table.cond_fingerprint == fingerprint
        ):
            return table, False
    if warn is not None:
        warn(f"cache miss: enumerating L={L} under condition [{cond.serial()}]")
    table = build_table(L, cond, budgets, workers=workers, backend=backend)
    cache_dir.mkdir(parents=True, exist_ok=True)
    tmp = path.with_name(f"{path.name}.{os.getpid()}.tmp")
    export_table(table, tmp)
    os.replace(tmp, path)
    return table, True
