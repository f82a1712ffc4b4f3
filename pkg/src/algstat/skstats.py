"""Complexity-level sets S^k and their index combinatorics.

S^k collects every table output of complexity at most k in canonical
order. Each member gets a fixed-width index; comparing an index against
the binary cardinality word N_k yields the joint prefix m_x whose length
measures how close to the end of the enumeration x sits. The X(r)
family and its counting bounds are exactly checkable: the proofs use
only prefix-freeness and index counting, so a failure here is an
implementation bug, never machine noise.

Indices are 1-based ranks written in standard binary, padded to
width = bit_length(N_k); the N-word is bin(N_k) itself. Because
rank <= N_k at equal width, the first differing bit always has
rank-bit 0 and N-bit 1, giving the exact I = m 0 i / N = m 1 n split.
When x is the last member the two words coincide; the record is then
flagged degenerate with m_x the longest proper prefix.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .bits import bits_to_text
from .enumeration import ComplexityTable


@dataclass(frozen=True)
class SkIndex:
    k: int
    members: tuple[str, ...]  # canonical (length, lex) order
    n_k: int
    width: int  # index width in bits = bit_length(n_k)
    t_k: int  # |S^k \ S^{k-1}|

    def __contains__(self, x: str) -> bool:
        return x in self.members

    def __len__(self) -> int:
        return self.n_k

    def rank_of(self, x: str) -> int:
        """1-based position in the canonical enumeration."""
        try:
            return self.members.index(x) + 1
        except ValueError:
            raise KeyError(f"{bits_to_text(x)} is not in S^{self.k}") from None

    def index_of(self, x: str) -> str:
        return format(self.rank_of(x), f"0{self.width}b")

    def n_word(self) -> str:
        return format(self.n_k, f"0{self.width}b")


def sk(table: ComplexityTable, k: int) -> SkIndex:
    """S^k with its padded index assignment."""
    if k > table.L:
        raise ValueError(f"k={k} exceeds the table cap L={table.L}")
    members = []
    newest = 0
    for x in table.sorted_outputs():  # already canonical (length, lex)
        kx = table.k_of(x)
        if kx <= k:
            members.append(x)
            if kx == k:
                newest += 1
    n_k = len(members)
    return SkIndex(
        k=k,
        members=tuple(members),
        n_k=n_k,
        width=n_k.bit_length(),
        t_k=newest,
    )


@dataclass(frozen=True)
class MxRecord:
    x: str
    k: int
    index: str  # padded I_x
    m_x: str  # longest joint prefix of I_x and the N-word
    i_x: str  # continuation of I_x after m_x 0 (or after m_x when degenerate)
    n_x: str  # continuation of the N-word after m_x 1 (ditto)
    degenerate: bool  # I_x equals the N-word (x enumerated last)


def mx(table: ComplexityTable, k: int, x: str) -> MxRecord:
    idx = sk(table, k)
    word = idx.index_of(x)  # KeyError if x is not in S^k
    n_word = idx.n_word()
    if word == n_word:
        m = word[:-1]
        return MxRecord(x=x, k=k, index=word, m_x=m, i_x=word[len(m):],
                        n_x=word[len(m):], degenerate=True)
    split = next(i for i in range(idx.width) if word[i] != n_word[i])
    # rank < N_k at equal width forces the 0/1 orientation
    assert word[split] == "0" and n_word[split] == "1"
    return MxRecord(
        x=x,
        k=k,
        index=word,
        m_x=word[:split],
        i_x=word[split + 1:],
        n_x=n_word[split + 1:],
        degenerate=False,
    )


def sk_mx(table: ComplexityTable, k: int, x: str) -> tuple[str, ...]:
    """The members of S^k whose indices continue m_x with 0 — the
    near-optimal explicit set for x. Degenerate records drop the forced
    0 (the subset is then the <= 2 members sharing m_x itself)."""
    idx = sk(table, k)
    rec = mx(table, k, x)
    prefix = rec.m_x if rec.degenerate else rec.m_x + "0"
    return tuple(y for y in idx.members if idx.index_of(y).startswith(prefix))


# -- X(r): strings enumerated close to the end --------------------------------


@dataclass(frozen=True)
class XrRow:
    r: int
    members: tuple[str, ...]
    mass_sum: Fraction  # sum of 2^-K(x) over the members
    bound: Fraction  # 2^(-r+2)

    @property
    def passed(self) -> bool:
        return self.mass_sum <= self.bound


def _mx_lengths(table: ComplexityTable) -> dict[str, int]:
    """l(m_x) for every table string, each at its own level k = K(x)."""
    levels: dict[int, SkIndex] = {}
    out: dict[str, int] = {}
    for x in table.sorted_outputs():
        k = table.k_of(x)
        idx = levels.get(k)
        if idx is None:
            idx = levels[k] = sk(table, k)
        out[x] = len(mx(table, k, x).m_x)
    return out


def xr(table: ComplexityTable, r: int) -> tuple[str, ...]:
    """X(r) = {x : l(m_x) >= r} with m_x taken at k = K(x), canonical
    order, restricted to the table support."""
    lengths = _mx_lengths(table)
    return tuple(x for x in table.sorted_outputs() if lengths[x] >= r)


def xr_report(table: ComplexityTable) -> list[XrRow]:
    """One row per r from 0 up to the first empty X(r)."""
    lengths = _mx_lengths(table)
    canonical = table.sorted_outputs()
    rows = []
    r = 0
    while True:
        members = tuple(x for x in canonical if lengths[x] >= r)
        mass = sum((Fraction(1, 1 << table.k_of(x)) for x in members), Fraction(0))
        rows.append(XrRow(r=r, members=members, mass_sum=mass, bound=Fraction(4, 1 << r)))
        if not members:
            break
        r += 1
    return rows


def xr_bound_check(table: ComplexityTable) -> tuple[bool, Fraction, list[XrRow]]:
    """(all_pass, max ratio sum/bound, rows). The theorem says the ratio
    never exceeds 1; this is exact dyadic arithmetic end to end."""
    rows = xr_report(table)
    ratio = max((row.mass_sum / row.bound for row in rows), default=Fraction(0))
    return all(row.passed for row in rows), ratio, rows


def slice_bound_check(table: ComplexityTable) -> bool:
    """|X(r) ∩ (S^k \\ S^{k-1})| <= 2^(-r+1) N_k for every (k, r), checked
    as the integer inequality count * 2^r <= 2 * N_k."""
    lengths = _mx_lengths(table)
    ks = {x: table.k_of(x) for x in table.sorted_outputs()}
    n_at: dict[int, int] = {}
    for k in sorted(set(ks.values())):
        n_at[k] = sum(1 for v in ks.values() if v <= k)
    max_r = max(lengths.values(), default=0)
    for k in n_at:
        slice_members = [x for x in ks if ks[x] == k]
        for r in range(max_r + 2):
            count = sum(1 for x in slice_members if lengths[x] >= r)
            if count * (1 << r) > 2 * n_at[k]:
                return False
    return True


def t_kraft_sum(table: ComplexityTable) -> Fraction:
    """Sum over k of t_k 2^-k; at most 1 because S^k growth mirrors the
    prefix-free program tree."""
    counts: dict[int, int] = {}
    for x in table.sorted_outputs():
        k = table.k_of(x)
        counts[k] = counts.get(k, 0) + 1
    return sum((Fraction(t, 1 << k) for k, t in counts.items()), Fraction(0))


def logn_gap(table: ComplexityTable) -> int:
    """Max over k of |floor(log2 N_k) - (k - K(b(k)))| — the constant the
    cardinality lemma's within-O(1) equality actually hides, measured."""
    from .bits import nat_to_bits

    worst = 0
    counts: dict[int, int] = {}
    for x in table.sorted_outputs():
        k = table.k_of(x)
        counts[k] = counts.get(k, 0) + 1
    for k in range(min(counts), table.L + 1):
        n_seen = sum(t for kk, t in counts.items() if kk <= k)
        if n_seen == 0:
            continue
        k_of_k = table.k_of(nat_to_bits(k))
        if k_of_k is None:
            continue
        gap = abs((n_seen.bit_length() - 1) - (k - k_of_k))
        worst = max(worst, gap)
    return worst


# -- CSV exports ---------------------------------------------------------------


def sk_csv(table: ComplexityTable, k: int) -> str:
    idx = sk(table, k)
    lines = ["member,K,index"]
    for x in idx.members:
        lines.append(f"{bits_to_text(x)},{table.k_of(x)},{idx.index_of(x)}")
    return "\n".join(lines) + "\n"


def _dyadic_csv(q: Fraction) -> str:
    if q == 0:
        return "0"
    num, den = q.numerator, q.denominator
    exp = den.bit_length() - 1
    return f"{num}/2^{exp}" if exp else str(num)


def xr_csv(table: ComplexityTable) -> str:
    lines = ["r,|X(r)|,sum,bound,pass"]
    for row in xr_report(table):
        lines.append(
            f"{row.r},{len(row.members)},{_dyadic_csv(row.mass_sum)},"
            f"{_dyadic_csv(row.bound)},{int(row.passed)}"
        )
    return "\n".join(lines) + "\n"
