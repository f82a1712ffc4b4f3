"""Independent reference implementations used only by tests.

The naive table oracle runs the machine on *every* bit string up to a
length cap — no decode-tree walk, no pruning — so it cross-checks the
enumeration kernels against the machine semantics alone. The counting
recurrences predict halting-program totals per length straight from the
opcode length table, independently of both.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product

from algstat.machine import Budgets, Condition, Status, run


def naive_entries(L: int, cond: Condition | None = None, budgets: Budgets | None = None):
    """Map output -> (K, witness, m_num over 2**L, by_length) by running
    all 2^{L+1}-2 candidate strings. Only sane for L <= 13 or so."""
    entries: dict[str, list] = {}
    for l in range(3, L + 1):
        for tup in product("01", repeat=l):
            p = "".join(tup)
            r = run(p, cond, budgets)
            if r.status is not Status.HALTED:
                continue
            out = r.output
            e = entries.get(out)
            if e is None:
                entries[out] = [l, p, 1 << (L - l), {l: 1}]
            else:
                # first hit at the smallest length is lexicographically
                # smallest because product() yields in lex order
                e[2] += 1 << (L - l)
                e[3][l] = e[3].get(l, 0) + 1
    return {out: (e[0], e[1], e[2], e[3]) for out, e in entries.items()}


def naive_halting_programs(L: int, cond: Condition | None = None, budgets: Budgets | None = None):
    """All halting programs as (program, output, steps), (length, lex) order."""
    progs = []
    for l in range(3, L + 1):
        for tup in product("01", repeat=l):
            p = "".join(tup)
            r = run(p, cond, budgets)
            if r.status is Status.HALTED:
                progs.append((p, r.output, r.steps))
    return progs


@lru_cache(maxsize=None)
def token_seq_count(n: int) -> int:
    """Number of unconditioned non-HALT token sequences of total length n
    (EMIT0/EMIT1 are 2 bits, DOUBLE/FLIP are 4), assuming budgets never
    bind. Halting programs of length b correspond to n = b - 3."""
    if n < 0:
        return 0
    if n == 0:
        return 1
    return 2 * token_seq_count(n - 2) + 2 * token_seq_count(n - 4)


@lru_cache(maxsize=None)
def token_seq_count_str(n: int) -> int:
    """Same, when a Str condition adds the four 5-bit COPYIN forms and the
    condition is long enough that the pointer never runs out."""
    if n < 0:
        return 0
    if n == 0:
        return 1
    return (
        2 * token_seq_count_str(n - 2)
        + 2 * token_seq_count_str(n - 4)
        + 4 * token_seq_count_str(n - 5)
    )


def predicted_halting_by_length(L: int, conditioned_on_long_str: bool = False) -> list[int]:
    f = token_seq_count_str if conditioned_on_long_str else token_seq_count
    return [0 if b < 3 else f(b - 3) for b in range(L + 1)]


def blind_models(x: str, alpha_max: int):
    """Models of x found by decoding *every* bit string shorter than
    alpha_max — the grammar-free ground truth for enumerate_models."""
    from algstat.models_set import SetLangError, decode

    found = []
    for l in range(3, alpha_max):
        for tup in product("01", repeat=l):
            bits = "".join(tup)
            try:
                desc = decode(bits)
            except SetLangError:
                continue
            if desc.member(x):
                found.append(desc)
    found.sort(key=lambda d: (d.code_len, d.code))
    return found


class ToyModel:
    """Minimal stand-in for a decodable model condition."""

    def __init__(self, code: str, pairs: list[tuple[str, str]]):
        self.code = code
        self._pairs = pairs

    def codebook_pairs(self) -> list[tuple[str, str]]:
        return list(self._pairs)
