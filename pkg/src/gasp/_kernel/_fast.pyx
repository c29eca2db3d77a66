# cython: language_level=3
"""Compiled kernel; mirrors gasp/_kernel/pure.py (see there for contracts)."""

from array import array

from .lowering import KIND_DNF, KIND_LITCONJ, KIND_SUM, KIND_TABLE

cdef int K_LITCONJ = KIND_LITCONJ
cdef int K_SUM = KIND_SUM
cdef int K_TABLE = KIND_TABLE
cdef int K_DNF = KIND_DNF

cdef long long _evals = 0

_EMPTY_L = array("l", [0])
_EMPTY_B = array("b", [0])
_EMPTY_Q = array("q", [0])
_EMPTY_UQ = array("Q", [0])


def backend_name():
    return "c"


def reset_eval_count():
    global _evals
    _evals = 0


def eval_count():
    return _evals


cdef class _View:
    cdef Py_ssize_t n_atoms, n_rules
    cdef long[:] head, dom_off, dom_len, dom_atom
    cdef long[:] tab_off, tab_len, dnf_off, dnf_len
    cdef signed char[:] kind, cmp
    cdef long long[:] weight, guard
    cdef unsigned long long[:] tab_mask, dnf_pos, dnf_neg
    cdef tuple head_idx

    def __cinit__(self, cp):
        self.n_atoms = cp.n_atoms
        self.n_rules = cp.n_rules
        self.head = cp.head if len(cp.head) else _EMPTY_L
        self.kind = cp.kind if len(cp.kind) else _EMPTY_B
        self.dom_off = cp.dom_off if len(cp.dom_off) else _EMPTY_L
        self.dom_len = cp.dom_len if len(cp.dom_len) else _EMPTY_L
        self.dom_atom = cp.dom_atom if len(cp.dom_atom) else _EMPTY_L
        self.weight = cp.weight if len(cp.weight) else _EMPTY_Q
        self.cmp = cp.cmp if len(cp.cmp) else _EMPTY_B
        self.guard = cp.guard if len(cp.guard) else _EMPTY_Q
        self.tab_off = cp.tab_off if len(cp.tab_off) else _EMPTY_L
        self.tab_len = cp.tab_len if len(cp.tab_len) else _EMPTY_L
        self.tab_mask = cp.tab_mask if len(cp.tab_mask) else _EMPTY_UQ
        self.dnf_off = cp.dnf_off if len(cp.dnf_off) else _EMPTY_L
        self.dnf_len = cp.dnf_len if len(cp.dnf_len) else _EMPTY_L
        self.dnf_pos = cp.dnf_pos if len(cp.dnf_pos) else _EMPTY_UQ
        self.dnf_neg = cp.dnf_neg if len(cp.dnf_neg) else _EMPTY_UQ
        self.head_idx = tuple(cp.head_idx)


cdef bint _c_cmp(int code, long long lhs, long long rhs) noexcept:
    if code == 0:
        return lhs == rhs
    if code == 1:
        return lhs != rhs
    if code == 2:
        return lhs <= rhs
    if code == 3:
        return lhs < rhs
    if code == 4:
        return lhs >= rhs
    return lhs > rhs


cdef bint _c_table_lookup(_View v, Py_ssize_t r, unsigned long long local) noexcept:
    cdef Py_ssize_t lo = v.tab_off[r]
    cdef Py_ssize_t hi = lo + v.tab_len[r]
    cdef Py_ssize_t end = hi
    cdef Py_ssize_t mid
    while lo < hi:
        mid = (lo + hi) // 2
        if v.tab_mask[mid] < local:
            lo = mid + 1
        else:
            hi = mid
    return lo < end and v.tab_mask[lo] == local


cdef bint _c_dnf(_View v, Py_ssize_t r, unsigned long long local) noexcept:
    cdef Py_ssize_t doff = v.dnf_off[r]
    cdef Py_ssize_t d
    cdef unsigned long long pos, neg
    for d in range(v.dnf_len[r]):
        pos = v.dnf_pos[doff + d]
        neg = v.dnf_neg[doff + d]
        if local & pos == pos and local & neg == 0:
            return True
    return False


cdef bint _c_eval(_View v, Py_ssize_t r, unsigned char[:] flags) noexcept:
    global _evals
    cdef int kind = v.kind[r]
    cdef Py_ssize_t off = v.dom_off[r]
    cdef Py_ssize_t n = v.dom_len[r]
    cdef Py_ssize_t j
    cdef long long total
    cdef unsigned long long local
    cdef int want
    _evals += 1
    if kind == K_LITCONJ:
        for j in range(n):
            want = 1 if v.weight[off + j] > 0 else 0
            if flags[v.dom_atom[off + j]] != want:
                return False
        return True
    if kind == K_SUM:
        total = 0
        for j in range(n):
            if flags[v.dom_atom[off + j]]:
                total += v.weight[off + j]
        return _c_cmp(v.cmp[r], total, v.guard[r])
    local = 0
    for j in range(n):
        if flags[v.dom_atom[off + j]]:
            local |= (<unsigned long long>1) << j
    if kind == K_TABLE:
        return _c_table_lookup(v, r, local)
    return _c_dnf(v, r, local)


cdef bint _c_eval_local(_View v, Py_ssize_t r, unsigned long long local) noexcept:
    cdef int kind = v.kind[r]
    cdef Py_ssize_t off = v.dom_off[r]
    cdef Py_ssize_t n = v.dom_len[r]
    cdef Py_ssize_t j
    cdef long long total
    cdef int want
    if kind == K_LITCONJ:
        for j in range(n):
            want = 1 if v.weight[off + j] > 0 else 0
            if (local >> j) & 1 != <unsigned long long>want:
                return False
        return True
    if kind == K_SUM:
        total = 0
        for j in range(n):
            if (local >> j) & 1:
                total += v.weight[off + j]
        return _c_cmp(v.cmp[r], total, v.guard[r])
    if kind == K_TABLE:
        return _c_table_lookup(v, r, local)
    return _c_dnf(v, r, local)


cdef bint _c_models(_View v, unsigned char[:] flags) noexcept:
    cdef Py_ssize_t r
    for r in range(v.n_rules):
        if not flags[v.head[r]] and _c_eval(v, r, flags):
            return False
    return True


cdef int _c_cond_sat(
    _View v, Py_ssize_t r, unsigned char[:] i_flags, unsigned char[:] m_flags
) except -1:
    cdef Py_ssize_t off = v.dom_off[r]
    cdef Py_ssize_t n = v.dom_len[r]
    cdef Py_ssize_t diff[64]
    cdef Py_ssize_t t = 0
    cdef Py_ssize_t j, a
    cdef unsigned long long sub, limit
    cdef bint ok = True
    for j in range(n):
        a = v.dom_atom[off + j]
        if m_flags[a] and not i_flags[a]:
            if t >= 63:
                raise ValueError(
                    "conditional-satisfaction difference set exceeds 63 atoms"
                )
            diff[t] = a
            t += 1
    limit = (<unsigned long long>1) << t
    sub = 0
    while sub < limit:
        for j in range(t):
            i_flags[diff[j]] = <unsigned char>((sub >> j) & 1)
        if not _c_eval(v, r, i_flags):
            ok = False
            break
        sub += 1
    for j in range(t):
        i_flags[diff[j]] = 0
    return ok


cdef int _c_lfp(
    _View v, unsigned char[:] m_flags, unsigned char[:] cur_flags, object stages
) except -1:
    # cur_flags must be all zero on entry; holds the final stage on return.
    cdef Py_ssize_t n_heads = len(v.head_idx)
    cdef Py_ssize_t it, r, a, h
    cdef bint changed, escaped
    nxt_ba = bytearray(v.n_atoms)
    cdef unsigned char[:] nxt_flags = nxt_ba
    for it in range(n_heads + 2):
        for a in range(v.n_atoms):
            nxt_flags[a] = 0
        for r in range(v.n_rules):
            h = v.head[r]
            if nxt_flags[h]:
                continue
            if _c_cond_sat(v, r, cur_flags, m_flags):
                nxt_flags[h] = 1
        if stages is not None:
            stages.append(
                tuple(a for a in range(v.n_atoms) if nxt_flags[a])
            )
        changed = False
        escaped = False
        for a in range(v.n_atoms):
            if nxt_flags[a] != cur_flags[a]:
                changed = True
            if nxt_flags[a] and not m_flags[a]:
                escaped = True
        if not changed:
            return 1
        for a in range(v.n_atoms):
            cur_flags[a] = nxt_flags[a]
        if escaped:
            return 0
    return 0


def eval_body(cp, r, flags):
    cdef _View v = _View(cp)
    cdef unsigned char[:] fl = flags
    return bool(_c_eval(v, r, fl))


def models(cp, flags):
    cdef _View v = _View(cp)
    cdef unsigned char[:] fl = flags
    return bool(_c_models(v, fl))


def cond_sat(cp, r, i_flags, m_flags):
    cdef _View v = _View(cp)
    cdef unsigned char[:] i_fl = i_flags
    cdef unsigned char[:] m_fl = m_flags
    return bool(_c_cond_sat(v, r, i_fl, m_fl))


def lfp_stages(cp, m_flags):
    cdef _View v = _View(cp)
    cdef unsigned char[:] m_fl = m_flags
    cur_ba = bytearray(v.n_atoms)
    cdef unsigned char[:] cur = cur_ba
    stages = [()]
    converged = bool(_c_lfp(v, m_fl, cur, stages))
    return stages, converged


def is_psp(cp, m_flags):
    cdef _View v = _View(cp)
    cdef unsigned char[:] m_fl = m_flags
    cdef Py_ssize_t a
    cur_ba = bytearray(v.n_atoms)
    cdef unsigned char[:] cur = cur_ba
    if not _c_lfp(v, m_fl, cur, None):
        return False
    for a in range(v.n_atoms):
        if m_fl[a] != cur[a]:
            return False
    return True


def enum_psp(cp):
    cdef _View v = _View(cp)
    heads = v.head_idx
    cdef Py_ssize_t h = len(heads)
    cdef Py_ssize_t head_arr[64]
    cdef Py_ssize_t j, a
    cdef unsigned long long cand, limit
    cdef bint good
    if h > 63:
        raise ValueError("too many head atoms for enumeration")
    for j in range(h):
        head_arr[j] = heads[j]
    m_ba = bytearray(v.n_atoms)
    cur_ba = bytearray(v.n_atoms)
    cdef unsigned char[:] m_flags = m_ba
    cdef unsigned char[:] cur = cur_ba
    out = []
    limit = (<unsigned long long>1) << h
    cand = 0
    while cand < limit:
        for j in range(h):
            m_flags[head_arr[j]] = <unsigned char>((cand >> j) & 1)
        if _c_models(v, m_flags):
            for a in range(v.n_atoms):
                cur[a] = 0
            if _c_lfp(v, m_flags, cur, None):
                good = True
                for a in range(v.n_atoms):
                    if m_flags[a] != cur[a]:
                        good = False
                        break
                if good:
                    out.append(cand)
        cand += 1
    return out


def enum_flp(cp):
    cdef _View v = _View(cp)
    heads = v.head_idx
    cdef Py_ssize_t h = len(heads)
    cdef Py_ssize_t head_arr[64]
    cdef Py_ssize_t j, ri, n_rows
    cdef Py_ssize_t r
    cdef unsigned long long cand, limit, sub
    cdef bint model, minimal, dominated
    if h > 63:
        raise ValueError("too many head atoms for enumeration")
    for j in range(h):
        head_arr[j] = heads[j]
    i_ba = bytearray(v.n_atoms)
    j_ba = bytearray(v.n_atoms)
    cdef unsigned char[:] i_flags = i_ba
    cdef unsigned char[:] j_flags = j_ba
    rows_arr = array("l", [0] * max(1, v.n_rules))
    cdef long[:] rows = rows_arr
    out = []
    limit = (<unsigned long long>1) << h
    cand = 0
    while cand < limit:
        for j in range(h):
            i_flags[head_arr[j]] = <unsigned char>((cand >> j) & 1)
        model = True
        n_rows = 0
        for r in range(v.n_rules):
            if _c_eval(v, r, i_flags):
                if not i_flags[v.head[r]]:
                    model = False
                    break
                rows[n_rows] = r
                n_rows += 1
        if model:
            minimal = True
            if cand:
                sub = (cand - 1) & cand
                while True:
                    for j in range(h):
                        j_flags[head_arr[j]] = <unsigned char>((sub >> j) & 1)
                    dominated = True
                    for ri in range(n_rows):
                        r = rows[ri]
                        if not j_flags[v.head[r]] and _c_eval(v, r, j_flags):
                            dominated = False
                            break
                    if dominated:
                        minimal = False
                        break
                    if sub == 0:
                        break
                    sub = (sub - 1) & cand
            if minimal:
                out.append(cand)
        cand += 1
    return out


def has_proper_submodel(cp, base):
    cdef _View v = _View(cp)
    cdef Py_ssize_t n = len(base)
    cdef Py_ssize_t idx[64]
    cdef Py_ssize_t j
    cdef unsigned long long full, sub
    if n == 0:
        return False
    if n > 63:
        raise ValueError("too many atoms for subset enumeration")
    for j in range(n):
        idx[j] = base[j]
    flags_ba = bytearray(v.n_atoms)
    cdef unsigned char[:] flags = flags_ba
    for j in range(n):
        flags[idx[j]] = 1
    for j in range(n):
        flags[idx[j]] = 0
        if _c_models(v, flags):
            return True
        flags[idx[j]] = 1
    full = ((<unsigned long long>1) << n) - 1
    sub = (full - 1) & full
    while True:
        for j in range(n):
            flags[idx[j]] = <unsigned char>((sub >> j) & 1)
        if _c_models(v, flags):
            return True
        if sub == 0:
            return False
        sub = (sub - 1) & full


def tabulate(cp, r):
    cdef _View v = _View(cp)
    cdef Py_ssize_t k = v.dom_len[r]
    cdef unsigned long long local, limit
    if k > 30:
        raise ValueError("domain too large to tabulate densely")
    out_ba = bytearray(1 << k)
    cdef unsigned char[:] out = out_ba
    limit = (<unsigned long long>1) << k
    local = 0
    while local < limit:
        if _c_eval_local(v, r, local):
            out[local] = 1
        local += 1
    return out_ba


def closure_below(bits, n):
    out_ba = bytearray(bits)
    cdef unsigned char[:] out = out_ba
    cdef Py_ssize_t i, s, bit
    cdef Py_ssize_t size = len(out_ba)
    for i in range(n):
        bit = 1 << i
        for s in range(size):
            if s & bit and out[s ^ bit]:
                out[s] = 1
    return out_ba


def closure_above(bits, n):
    out_ba = bytearray(bits)
    cdef unsigned char[:] out = out_ba
    cdef Py_ssize_t i, s, bit
    cdef Py_ssize_t size = len(out_ba)
    for i in range(n):
        bit = 1 << i
        for s in range(size):
            if not s & bit and out[s | bit]:
                out[s] = 1
    return out_ba
