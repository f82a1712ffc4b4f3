"""Exhaustive enumeration of halting programs and exact complexity tables.

A ComplexityTable records, for every output producible by a halting
program of length <= L under a fixed condition and budgets: the exact
complexity K (shortest program length), the canonical witness (first
shortest program in length-then-lexicographic order), the per-length
halting-program counts, and the exact dyadic mass m = sum 2^{-l(p)} over
programs producing that output.

Builds walk the opcode decode tree, never raw bit strings. The tree is
split at a fixed shallow depth into one "short" subtask plus one subtask
per bit prefix; results merge with an order-canonical rule, so tables are
identical for any worker count.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Iterator, NamedTuple

from .bits import bits_to_text, text_to_bits
from .kernel import compile_condition, get_backend
from .machine import MACHINE_VERSION, Budgets, Condition

DEFAULT_MAX_LEN = 24
DEFAULT_COND_MAX_LEN = 22
DEFAULT_ENTRY_CAP = 5_000_000
_SPLIT_PREFIX_LEN = 6  # decode tree split depth for parallel builds


class TableError(Exception):
    """Base class for table build/parse failures."""


class TableFormatError(TableError):
    """Malformed or truncated table file."""


class TableVersionError(TableFormatError):
    """Table file written by a different machine version."""


class EntryCapExceeded(TableError):
    """The build produced more distinct outputs than the configured cap."""


class Entry(NamedTuple):
    k: int
    witness: str
    m_num: int  # numerator of m over 2**L
    by_length: dict[int, int] | None  # None for imported tables


class ComplexityTable:
    """Immutable result of one exhaustive enumeration."""

    def __init__(
        self,
        L: int,
        budgets: Budgets,
        cond_fingerprint: str,
        entries: dict[str, Entry],
        cond_serial: str | None = None,
        machine_version: str = MACHINE_VERSION,
    ):
        self.machine_version = machine_version
        self.L = L
        self.budgets = budgets
        self.cond_fingerprint = cond_fingerprint
        self.cond_serial = cond_serial
        self.entries = entries
        self._sorted: list[str] | None = None

    # -- lookups ---------------------------------------------------------

    def k_of(self, x: str) -> int | None:
        e = self.entries.get(x)
        return e.k if e is not None else None

    def witness_of(self, x: str) -> str | None:
        e = self.entries.get(x)
        return e.witness if e is not None else None

    def m_of(self, x: str) -> Fraction:
        e = self.entries.get(x)
        return Fraction(e.m_num, 1 << self.L) if e is not None else Fraction(0)

    def __contains__(self, x: str) -> bool:
        return x in self.entries

    def __len__(self) -> int:
        return len(self.entries)

    def sorted_outputs(self) -> list[str]:
        if self._sorted is None:
            self._sorted = sorted(self.entries, key=lambda s: (len(s), s))
        return self._sorted

    # -- aggregates ------------------------------------------------------

    def kraft_sum(self) -> Fraction:
        return Fraction(sum(e.m_num for e in self.entries.values()), 1 << self.L)

    def count_by_length(self) -> list[int] | None:
        """Halting programs per length, summed over outputs (None after import)."""
        hist = [0] * (self.L + 1)
        for e in self.entries.values():
            if e.by_length is None:
                return None
            for l, c in e.by_length.items():
                hist[l] += c
        return hist

    def halting_count(self) -> int | None:
        hist = self.count_by_length()
        return sum(hist) if hist is not None else None

    # -- identity --------------------------------------------------------

    def _identity(self):
        # by_length is an in-memory enrichment, not part of the persisted
        # identity, so equality ignores it.
        return (
            self.machine_version,
            self.L,
            self.budgets,
            self.cond_fingerprint,
            {x: (e.k, e.witness, e.m_num) for x, e in self.entries.items()},
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, ComplexityTable):
            return NotImplemented
        return self._identity() == other._identity()

    def __repr__(self) -> str:  # pragma: no cover - debug aid
        return (
            f"ComplexityTable(L={self.L}, outputs={len(self.entries)}, "
            f"cond={self.cond_fingerprint[:12]})"
        )


# -- building --------------------------------------------------------------


def _walk_task(args):
    backend, L, T, O, kind, bits, codes, elems, prefix, min_len = args
    return get_backend(backend).walk(L, T, O, kind, bits, codes, elems, prefix, min_len)


def _tasks(L: int, budgets: Budgets, compiled, backend_name: str | None):
    kind, bits, codes, elems = compiled
    base = (backend_name, L, budgets.max_steps, budgets.max_output, kind, bits, codes, elems)
    if L <= _SPLIT_PREFIX_LEN + 3:
        return [base + ("", 0)]
    plen = _SPLIT_PREFIX_LEN
    tasks = [(backend_name, plen - 1, budgets.max_steps, budgets.max_output, kind, bits, codes, elems, "", 0)]
    for k in range(1 << plen):
        tasks.append(base + (format(k, f"0{plen}b"), plen))
    return tasks


def _merge(total: dict[str, list], part: dict[str, list]) -> None:
    for out, src in part.items():
        e = total.get(out)
        if e is None:
            total[out] = src
        else:
            if (src[0], src[1]) < (e[0], e[1]):
                e[0], e[1] = src[0], src[1]
            e[2] += src[2]
            bl = e[3]
            for l, c in src[3].items():
                bl[l] = bl.get(l, 0) + c


def build_table(
    L: int,
    cond: Condition | None = None,
    budgets: Budgets | None = None,
    workers: int = 1,
    entry_cap: int = DEFAULT_ENTRY_CAP,
    backend: str | None = None,
) -> ComplexityTable:
    """Enumerate all halting programs of length <= L and tabulate them.

    The result is independent of ``workers`` (order-canonical merge) and
    of ``backend`` (the kernels are exact twins).
    """
    if L < 3:
        raise ValueError("L must be at least 3 (HALT alone is 3 bits)")
    cond = cond if cond is not None else Condition.none()
    budgets = budgets if budgets is not None else Budgets()
    tasks = _tasks(L, budgets, compile_condition(cond), backend)

    merged: dict[str, list] = {}

    def _fold(task, part):
        # masses come back scaled to the task's own cap; bring them to L
        shift = L - task[1]
        if shift:
            for e in part.values():
                e[2] <<= shift
        _merge(merged, part)

    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for task, part in zip(tasks, pool.map(_walk_task, tasks, chunksize=4)):
                _fold(task, part)
    else:
        for task in tasks:
            _fold(task, _walk_task(task))
    if len(merged) > entry_cap:
        raise EntryCapExceeded(f"{len(merged)} outputs exceeds entry cap {entry_cap}")

    entries = {out: Entry(e[0], e[1], e[2], e[3]) for out, e in merged.items()}
    table = ComplexityTable(L, budgets, cond.fingerprint(), entries, cond_serial=cond.serial())
    if table.kraft_sum() > 1:
        raise TableError("internal error: Kraft sum exceeds 1")
    return table


def enumerate_halting(
    L: int,
    cond: Condition | None = None,
    budgets: Budgets | None = None,
    backend: str | None = None,
) -> Iterator[tuple[str, str, int]]:
    """Yield (program, output, steps) for every halting program of
    length <= L, each exactly once, in (length, lexicographic) order."""
    if L < 3:
        raise ValueError("L must be at least 3 (HALT alone is 3 bits)")
    cond = cond if cond is not None else Condition.none()
    budgets = budgets if budgets is not None else Budgets()
    kind, bits, codes, elems = compile_condition(cond)
    yield from get_backend(backend).collect(
        L, budgets.max_steps, budgets.max_output, kind, bits, codes, elems
    )


def find_prefix_violation(programs: Iterable[str]) -> tuple[str, str] | None:
    """Return a (shorter, longer) halting-program pair violating
    prefix-freeness, or None. Adjacent comparison after a lexicographic
    sort suffices: if a is a proper prefix of c then a is a prefix of its
    immediate successor too."""
    ordered = sorted(programs)
    for a, b in itertools.pairwise(ordered):
        if len(a) < len(b) and b.startswith(a):
            return a, b
    return None


# -- persistence ------------------------------------------------------------


def _dyadic_text(m_num: int, L: int) -> str:
    tz = (m_num & -m_num).bit_length() - 1
    return f"{m_num >> tz}/2^{L - tz}"


def export_table(table: ComplexityTable, path: str | Path) -> None:
    """Write the line-oriented text form. Deterministic byte-for-byte."""
    lines = [
        f"machine {table.machine_version}",
        f"L {table.L}",
        f"T {table.budgets.max_steps}",
        f"O {table.budgets.max_output}",
        f"condition {table.cond_fingerprint}",
    ]
    for out in table.sorted_outputs():
        e = table.entries[out]
        lines.append(
            f"{bits_to_text(out)} {e.k} {bits_to_text(e.witness)} {_dyadic_text(e.m_num, table.L)}"
        )
    Path(path).write_text("\n".join(lines) + "\n", encoding="ascii")


def _header_int(line: str, key: str) -> int:
    parts = line.split()
    if len(parts) != 2 or parts[0] != key:
        raise TableFormatError(f"expected '{key} <value>' header line, got {line!r}")
    try:
        return int(parts[1])
    except ValueError:
        raise TableFormatError(f"non-integer {key} header: {line!r}") from None


def import_table(path: str | Path) -> ComplexityTable:
    """Parse a table file; validates version, caps and the Kraft bound.

    Imported entries carry no per-length program counts (the file format
    stores only output, K, witness and m)."""
    text = Path(path).read_text(encoding="ascii")
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if len(lines) < 5:
        raise TableFormatError("truncated table file: incomplete header")

    mparts = lines[0].split()
    if len(mparts) != 2 or mparts[0] != "machine":
        raise TableFormatError(f"expected 'machine <version>' header line, got {lines[0]!r}")
    if mparts[1] != MACHINE_VERSION:
        raise TableVersionError(f"table written by {mparts[1]!r}, this build is {MACHINE_VERSION!r}")
    L = _header_int(lines[1], "L")
    T = _header_int(lines[2], "T")
    O = _header_int(lines[3], "O")
    cparts = lines[4].split()
    if len(cparts) != 2 or cparts[0] != "condition":
        raise TableFormatError(f"expected 'condition <fingerprint>' header line, got {lines[4]!r}")
    fingerprint = cparts[1]

    entries: dict[str, Entry] = {}
    for ln in lines[5:]:
        fields = ln.split()
        if len(fields) != 4:
            raise TableFormatError(f"malformed record: {ln!r}")
        try:
            out = text_to_bits(fields[0])
            witness = text_to_bits(fields[2])
            k = int(fields[1])
            num_text, _, exp_text = fields[3].partition("/2^")
            num, exp = int(num_text), int(exp_text)
        except ValueError:
            raise TableFormatError(f"malformed record: {ln!r}") from None
        if len(witness) != k:
            raise TableFormatError(f"witness length disagrees with K in record: {ln!r}")
        if not (0 <= exp <= L) or num < 1:
            raise TableFormatError(f"mass out of range in record: {ln!r}")
        if out in entries:
            raise TableFormatError(f"duplicate output in table file: {fields[0]}")
        entries[out] = Entry(k, witness, num << (L - exp), None)

    table = ComplexityTable(L, Budgets(T, O), fingerprint, entries)
    if table.kraft_sum() > 1:
        raise TableFormatError("corrupt table: Kraft sum exceeds 1")
    return table
