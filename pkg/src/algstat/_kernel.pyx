# cython: language_level=3
# cython: boundscheck=False, wraparound=False
"""Compiled enumeration kernel — exact twin of algstat._pykernel.

Same entry points, same arguments, same results; only faster. Keep the
two files in lockstep: the test suite cross-checks them output-for-output.
"""

COND_NONE = 0
COND_STR = 1
COND_MODEL = 2

_COMPL = str.maketrans("01", "10")


cdef class _Walker:
    cdef long L, max_steps, max_output, cond_kind, cond_len, plen, min_len, nbook
    cdef str prefix, cond_bits
    cdef tuple book_codes, book_elems
    cdef dict entries

    cdef bint matches(self, long cur_len, str tb):
        cdef long end
        if cur_len >= self.plen:
            return True
        end = cur_len + len(tb)
        if end > self.plen:
            end = self.plen
        return self.prefix[cur_len:end] == tb[: end - cur_len]

    cdef int rec(self, str cur, long steps, str buf, long ptr) except -1:
        cdef long cur_len = len(cur)
        cdef long buf_len = len(buf)
        cdef long total, m, cost, cw_len, i
        cdef str p, tb, cw, elem
        cdef list e
        cdef dict bl
        cdef object mass

        # HALT
        total = cur_len + 3
        if (
            total <= self.L
            and total >= self.min_len
            and steps + 1 <= self.max_steps
            and self.matches(cur_len, "100")
        ):
            p = cur + "100"
            # Python-int shift: immune to C overflow for any L
            mass = (<object> 1) << (self.L - total)
            e = <list> self.entries.get(buf)
            if e is None:
                self.entries[buf] = [total, p, mass, {total: 1}]
            else:
                if total < <long> e[0] or (total == <long> e[0] and p < <str> e[1]):
                    e[0] = total
                    e[1] = p
                e[2] = e[2] + mass
                bl = <dict> e[3]
                bl[total] = bl.get(total, 0) + 1

        # EMIT0 / EMIT1 (non-HALT tokens need 3 more bits for the HALT)
        if cur_len + 5 <= self.L and steps + 1 <= self.max_steps and buf_len + 1 <= self.max_output:
            if self.matches(cur_len, "00"):
                self.rec(cur + "00", steps + 1, buf + "0", ptr)
            if self.matches(cur_len, "01"):
                self.rec(cur + "01", steps + 1, buf + "1", ptr)

        # COPYIN
        if self.cond_kind == COND_STR and cur_len + 8 <= self.L:
            m = 1
            for i in range(4):
                if (
                    ptr + m <= self.cond_len
                    and steps + m <= self.max_steps
                    and buf_len + m <= self.max_output
                ):
                    tb = "101" + ("00", "01", "10", "11")[i]
                    if self.matches(cur_len, tb):
                        self.rec(cur + tb, steps + m, buf + self.cond_bits[ptr : ptr + m], ptr + m)
                m = m * 2

        # DOUBLE / FLIP
        if cur_len + 7 <= self.L and 2 * buf_len <= self.max_output:
            cost = buf_len if buf_len > 1 else 1
            if steps + cost <= self.max_steps:
                if self.matches(cur_len, "1100"):
                    self.rec(cur + "1100", steps + cost, buf + buf, ptr)
                if self.matches(cur_len, "1101"):
                    self.rec(cur + "1101", steps + cost, buf + buf.translate(_COMPL), ptr)

        # SFDECODE
        if self.cond_kind == COND_MODEL:
            for i in range(self.nbook):
                cw = <str> self.book_codes[i]
                elem = <str> self.book_elems[i]
                cw_len = len(cw)
                if (
                    cur_len + 7 + cw_len <= self.L
                    and steps + cw_len <= self.max_steps
                    and buf_len + len(elem) <= self.max_output
                ):
                    tb = "1110" + cw
                    if self.matches(cur_len, tb):
                        self.rec(cur + tb, steps + cw_len, buf + elem, ptr)
        return 0


def walk(
    L,
    max_steps,
    max_output,
    cond_kind,
    cond_bits,
    book_codes,
    book_elems,
    prefix="",
    min_len=0,
):
    """See algstat._pykernel.walk; identical contract."""
    cdef _Walker w = _Walker()
    w.L = L
    w.max_steps = max_steps
    w.max_output = max_output
    w.cond_kind = cond_kind
    w.cond_bits = cond_bits
    w.cond_len = len(cond_bits)
    w.book_codes = tuple(book_codes)
    w.book_elems = tuple(book_elems)
    w.nbook = len(w.book_codes)
    w.prefix = prefix
    w.plen = len(prefix)
    w.min_len = min_len
    w.entries = {}
    w.rec("", 0, "", 0)
    return w.entries


cdef class _Collector:
    cdef long L, max_steps, max_output, cond_kind, cond_len, nbook
    cdef str cond_bits
    cdef tuple book_codes, book_elems
    cdef list progs

    cdef int rec(self, str cur, long steps, str buf, long ptr) except -1:
        cdef long cur_len = len(cur)
        cdef long buf_len = len(buf)
        cdef long m, cost, i
        cdef str cw, elem
        if cur_len + 3 <= self.L and steps + 1 <= self.max_steps:
            self.progs.append((cur + "100", buf, steps + 1))
        if cur_len + 5 <= self.L and steps + 1 <= self.max_steps and buf_len + 1 <= self.max_output:
            self.rec(cur + "00", steps + 1, buf + "0", ptr)
            self.rec(cur + "01", steps + 1, buf + "1", ptr)
        if self.cond_kind == COND_STR and cur_len + 8 <= self.L:
            m = 1
            for i in range(4):
                if ptr + m <= self.cond_len and steps + m <= self.max_steps and buf_len + m <= self.max_output:
                    self.rec(cur + "101" + ("00", "01", "10", "11")[i], steps + m, buf + self.cond_bits[ptr : ptr + m], ptr + m)
                m = m * 2
        if cur_len + 7 <= self.L and 2 * buf_len <= self.max_output:
            cost = buf_len if buf_len > 1 else 1
            if steps + cost <= self.max_steps:
                self.rec(cur + "1100", steps + cost, buf + buf, ptr)
                self.rec(cur + "1101", steps + cost, buf + buf.translate(_COMPL), ptr)
        if self.cond_kind == COND_MODEL:
            for i in range(self.nbook):
                cw = <str> self.book_codes[i]
                elem = <str> self.book_elems[i]
                if (
                    cur_len + 7 + len(cw) <= self.L
                    and steps + len(cw) <= self.max_steps
                    and buf_len + len(elem) <= self.max_output
                ):
                    self.rec(cur + "1110" + cw, steps + len(cw), buf + elem, ptr)
        return 0


def collect(L, max_steps, max_output, cond_kind, cond_bits, book_codes, book_elems):
    """See algstat._pykernel.collect; identical contract."""
    cdef _Collector c = _Collector()
    c.L = L
    c.max_steps = max_steps
    c.max_output = max_output
    c.cond_kind = cond_kind
    c.cond_bits = cond_bits
    c.cond_len = len(cond_bits)
    c.book_codes = tuple(book_codes)
    c.book_elems = tuple(book_elems)
    c.nbook = len(c.book_codes)
    c.progs = []
    c.rec("", 0, "", 0)
    c.progs.sort(key=lambda t: (len(t[0]), t[0]))
    return c.progs
