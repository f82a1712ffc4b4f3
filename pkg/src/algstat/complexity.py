"""Derived complexity quantities: conditional K, joint K via pairing,
algorithmic mutual information, and the exact machine-law audits
(additivity of complexity, directed triangle inequality).

All quantities are read off enumeration tables, so they are exact for the
machine under the stated caps; "Absent" means the cap was too small, never
an approximation.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Callable, NamedTuple

from .bits import bits_to_text, pair
from .cache import load_or_build
from .enumeration import DEFAULT_COND_MAX_LEN, ComplexityTable
from .machine import Budgets, Condition

# Unconditional cap that covers pair(x, y) for the default audit sweep:
# pairs of length-<=4 strings reach 13 bits, and any 13-bit string has an
# emit-only program of length 2*13+3 = 29.
AUDIT_MAX_LEN = 29
DEFAULT_SOI_LEN_CAP = 4


class Absent(Exception):
    """A queried string lies outside the table's horizon."""

    def __init__(self, x: str, L: int, conditioned: bool = False):
        where = "conditional table" if conditioned else "table"
        super().__init__(
            f"{bits_to_text(x)} has no program within the {where}'s cap L={L}; "
            f"enlarge it (see `algstat enumerate --max-len`)"
        )
        self.x = x
        self.L = L


def k_of(table: ComplexityTable, x: str) -> int | None:
    return table.k_of(x)


def require_k(table: ComplexityTable, x: str) -> int:
    k = table.k_of(x)
    if k is None:
        raise Absent(x, table.L)
    return k


def shortest_program(table: ComplexityTable, x: str) -> str:
    """x*: the canonical witness. Its length is K(x) and, to the machine,
    it carries both x and K(x) — which is why conditions use it."""
    w = table.witness_of(x)
    if w is None:
        raise Absent(x, table.L)
    return w


def k_cond(
    x: str,
    cond: Condition,
    L_c: int = DEFAULT_COND_MAX_LEN,
    budgets: Budgets | None = None,
    workers: int = 1,
    cache_dir: str | Path | None = None,
    warn: Callable[[str], None] | None = None,
    backend: str | None = None,
) -> int | None:
    """Exact K(x | cond) under the conditional cap, or None if absent.
    Builds (and caches) the conditional table on first use."""
    table, _ = load_or_build(
        L_c, cond, budgets, workers=workers, cache_dir=cache_dir, warn=warn, backend=backend
    )
    return table.k_of(x)


class MIRecord(NamedTuple):
    x: str
    y: str
    kx: int
    ky: int
    kxy: int  # K(pair(x, y))

    @property
    def i(self) -> int:
        """Information in y about x: K(x) + K(y) - K(x,y)."""
        return self.kx + self.ky - self.kxy


def mutual_info(table: ComplexityTable, x: str, y: str) -> MIRecord:
    """Joint complexity is K of the pairing; raises Absent when x, y or
    the pair lies beyond the table cap. The pairing is asymmetric, so
    mutual_info(x, y) and mutual_info(y, x) differ by a machine constant;
    callers that care report both orders."""
    kx = require_k(table, x)
    ky = require_k(table, y)
    kxy = require_k(table, pair(x, y))
    return MIRecord(x, y, kx, ky, kxy)


def _all_strings(len_cap: int) -> list[str]:
    out = [""]
    for l in range(1, len_cap + 1):
        out.extend(format(v, f"0{l}b") for v in range(1 << l))
    return out


@dataclass(frozen=True)
class SoiReport:
    """Measured machine constants for the complexity laws on one sweep."""

    len_cap: int
    pairs_checked: int
    additivity_max_slack: int  # max |K(<x,y>) - K(x) - K(y|x*)|
    additivity_argmax: tuple[str, str]
    triangle_c: int  # minimal c >= 0 with K(x|y*) <= K(z|y*) + K(x|z*) + c
    triangle_argmax: tuple[str, str, str]
    mi_self_gap_max: int  # max |I(x:x) - (K(x) - K(x|x*))|
    mi_swap_gap_max: int  # max |I(x:y) - I(y:x)|

    def measured(self) -> dict[str, int]:
        return {
            "soi_additivity": self.additivity_max_slack,
            "soi_triangle": self.triangle_c,
            "mi_self_gap": self.mi_self_gap_max,
            "mi_swap_gap": self.mi_swap_gap_max,
        }


def soi_audit(
    table: ComplexityTable,
    len_cap: int = DEFAULT_SOI_LEN_CAP,
    L_c: int = DEFAULT_COND_MAX_LEN,
    workers: int = 1,
    cache_dir: str | Path | None = None,
    warn: Callable[[str], None] | None = None,
    backend: str | None = None,
) -> SoiReport:
    """Sweep all strings of length <= len_cap.

    Additivity: the machine analogue of K(x,y) =+ K(x) + K(y|x*), reported
    as the max absolute slack. Triangle: the minimal nonnegative c making
    K(x|y*) <= K(z|y*) + K(x|z*) + c hold across the sweep. Also measures
    the self-information gap and the pairing-order gap feeding the frozen
    constants file.
    """
    xs = _all_strings(len_cap)
    k_un = {x: require_k(table, x) for x in xs}
    cond_tables: dict[str, ComplexityTable] = {}
    for x in xs:
        cond = Condition.string(shortest_program(table, x))
        cond_tables[x], _ = load_or_build(
            L_c, cond, workers=workers, cache_dir=cache_dir, warn=warn, backend=backend
        )

    def kc(y: str, given: str) -> int:
        k = cond_tables[given].k_of(y)
        if k is None:
            raise Absent(y, L_c, conditioned=True)
        return k

    add_max, add_arg = -1, ("", "")
    swap_max = 0
    kxy: dict[tuple[str, str], int] = {}
    for x in xs:
        for y in xs:
            kxy[(x, y)] = require_k(table, pair(x, y))
    for x in xs:
        for y in xs:
            slack = abs(kxy[(x, y)] - k_un[x] - kc(y, x))
            if slack > add_max:
                add_max, add_arg = slack, (x, y)
            swap_max = max(swap_max, abs(kxy[(x, y)] - kxy[(y, x)]))

    self_gap = 0
    for x in xs:
        i_xx = 2 * k_un[x] - kxy[(x, x)]
        self_gap = max(self_gap, abs(i_xx - (k_un[x] - kc(x, x))))

    tri_max, tri_arg = 0, ("", "", "")
    for y in xs:
        t_y = cond_tables[y]
        for z in xs:
            t_z = cond_tables[z]
            kzy = t_y.k_of(z)
            if kzy is None:
                raise Absent(z, L_c, conditioned=True)
            for x in xs:
                kx_y, kx_z = t_y.k_of(x), t_z.k_of(x)
                if kx_y is None or kx_z is None:
                    raise Absent(x, L_c, conditioned=True)
                deficit = kx_y - kzy - kx_z
                if deficit > tri_max:
                    tri_max, tri_arg = deficit, (x, y, z)

    return SoiReport(
        len_cap=len_cap,
        pairs_checked=len(xs) * len(xs),
        additivity_max_slack=add_max,
        additivity_argmax=add_arg,
        triangle_c=tri_max,
        triangle_argmax=tri_arg,
        mi_self_gap_max=self_gap,
        mi_swap_gap_max=swap_max,
    )
