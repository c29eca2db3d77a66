"""Pure-Python kernel: the reference implementation of the hot loops.

The compiled extension in _fast.pyx mirrors this module function for
function; parity between the two is covered by the kernel test suite.
Interpretations are byte-per-atom membership vectors (bytearrays), rule
bodies come from a CompiledProgram, and the conditional-satisfaction loop
enumerates only subsets of the body domain, never the full lattice.
"""

from __future__ import annotations

from bisect import bisect_left

from .lowering import KIND_DNF, KIND_LITCONJ, KIND_SUM, KIND_TABLE, CompiledProgram

_evals = 0


def backend_name() -> str:
    return "py"


def reset_eval_count() -> None:
    global _evals
    _evals = 0


def eval_count() -> int:
    return _evals


def _cmp(code, lhs, rhs):
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


def eval_body(cp: CompiledProgram, r: int, flags) -> bool:
    """Truth of rule r's body on the interpretation given as a flag vector."""
    global _evals
    _evals += 1
    kind = cp.kind[r]
    off = cp.dom_off[r]
    n = cp.dom_len[r]
    if kind == KIND_LITCONJ:
        for j in range(n):
            want = 1 if cp.weight[off + j] > 0 else 0
            if flags[cp.dom_atom[off + j]] != want:
                return False
        return True
    if kind == KIND_SUM:
        total = 0
        for j in range(n):
            if flags[cp.dom_atom[off + j]]:
                total += cp.weight[off + j]
        return _cmp(cp.cmp[r], total, cp.guard[r])
    local = 0
    for j in range(n):
        if flags[cp.dom_atom[off + j]]:
            local |= 1 << j
    if kind == KIND_TABLE:
        lo = cp.tab_off[r]
        hi = lo + cp.tab_len[r]
        i = bisect_left(cp.tab_mask, local, lo, hi)
        return i < hi and cp.tab_mask[i] == local
    # KIND_DNF
    doff = cp.dnf_off[r]
    for d in range(cp.dnf_len[r]):
        pos = cp.dnf_pos[doff + d]
        neg = cp.dnf_neg[doff + d]
        if local & pos == pos and local & neg == 0:
            return True
    return False


def _eval_local(cp, r, local):
    """Truth of rule r's body on a local domain bitmask (tabulation only)."""
    kind = cp.kind[r]
    off = cp.dom_off[r]
    n = cp.dom_len[r]
    if kind == KIND_LITCONJ:
        for j in range(n):
            want = 1 if cp.weight[off + j] > 0 else 0
            if local >> j & 1 != want:
                return False
        return True
    if kind == KIND_SUM:
        total = 0
        for j in range(n):
            if local >> j & 1:
                total += cp.weight[off + j]
        return _cmp(cp.cmp[r], total, cp.guard[r])
    if kind == KIND_TABLE:
        lo = cp.tab_off[r]
        hi = lo + cp.tab_len[r]
        i = bisect_left(cp.tab_mask, local, lo, hi)
        return i < hi and cp.tab_mask[i] == local
    doff = cp.dnf_off[r]
    for d in range(cp.dnf_len[r]):
        pos = cp.dnf_pos[doff + d]
        neg = cp.dnf_neg[doff + d]
        if local & pos == pos and local & neg == 0:
            return True
    return False


def models(cp: CompiledProgram, flags) -> bool:
    for r in range(cp.n_rules):
        if not flags[cp.head[r]] and eval_body(cp, r, flags):
            return False
    return True


def cond_sat(cp: CompiledProgram, r: int, i_flags, m_flags) -> bool:
    """Conditional satisfaction of rule r's body by (I, M), assuming I ⊆ M.

    Tests the body on I extended by every subset of (M ∩ D) \\ (I ∩ D);
    by domain irrelevance this covers every J with I ⊆ J ⊆ M.  ``i_flags``
    is mutated during the loop and restored before returning.
    """
    off = cp.dom_off[r]
    n = cp.dom_len[r]
    diff = []
    for j in range(n):
        a = cp.dom_atom[off + j]
        if m_flags[a] and not i_flags[a]:
            diff.append(a)
    t = len(diff)
    ok = True
    for sub in range(1 << t):
        for j in range(t):
            i_flags[diff[j]] = sub >> j & 1
        if not eval_body(cp, r, i_flags):
            ok = False
            break
    for a in diff:
        i_flags[a] = 0
    return ok


def _lfp(cp: CompiledProgram, m_flags, collect):
    """Iterate the head-derivation operator from the empty set under M.

    Returns (stages, converged).  Stages are sorted atom-index tuples and
    include the initial empty stage plus, on convergence, the repeated
    fixpoint.  Iteration aborts (converged=False) as soon as a stage is
    not contained in M: stages grow monotonically, so no later stage can
    come back to equal M, and the I ⊆ M precondition stays intact.
    """
    n_heads = len(cp.head_idx)
    cur: set[int] = set()
    cur_flags = bytearray(cp.n_atoms)
    stages = [()] if collect else None
    for _ in range(n_heads + 2):
        nxt = set()
        for r in range(cp.n_rules):
            h = cp.head[r]
            if h in nxt:
                continue
            if cond_sat(cp, r, cur_flags, m_flags):
                nxt.add(h)
        if collect:
            stages.append(tuple(sorted(nxt)))
        if nxt == cur:
            return stages, True, cur
        for a in cur:
            cur_flags[a] = 0
        for a in nxt:
            cur_flags[a] = 1
        cur = nxt
        if any(not m_flags[a] for a in cur):
            return stages, False, cur
    return stages, False, cur


def lfp_stages(cp: CompiledProgram, m_flags):
    stages, converged, _ = _lfp(cp, m_flags, collect=True)
    return stages, converged


def is_psp(cp: CompiledProgram, m_flags) -> bool:
    _, converged, fix = _lfp(cp, m_flags, collect=False)
    if not converged:
        return False
    return all(m_flags[a] == (1 if a in fix else 0) for a in range(cp.n_atoms))


def enum_psp(cp: CompiledProgram) -> list[int]:
    """Masks over cp.head_idx of all interpretations equal to their own
    least fixpoint."""
    heads = cp.head_idx
    h = len(heads)
    m_flags = bytearray(cp.n_atoms)
    out = []
    for cand in range(1 << h):
        for j in range(h):
            m_flags[heads[j]] = cand >> j & 1
        # A fixpoint equal to M models the program; reject cheap misses early.
        if not models(cp, m_flags):
            continue
        if is_psp(cp, m_flags):
            out.append(cand)
    return out


def enum_flp(cp: CompiledProgram) -> list[int]:
    """Masks over cp.head_idx of all minimal models of their own reduct."""
    heads = cp.head_idx
    h = len(heads)
    i_flags = bytearray(cp.n_atoms)
    j_flags = bytearray(cp.n_atoms)
    out = []
    for cand in range(1 << h):
        for j in range(h):
            i_flags[heads[j]] = cand >> j & 1
        rows = [r for r in range(cp.n_rules) if eval_body(cp, r, i_flags)]
        if any(not i_flags[cp.head[r]] for r in rows):
            continue
        minimal = True
        sub = (cand - 1) & cand
        while cand:
            for j in range(h):
                j_flags[heads[j]] = sub >> j & 1
            if all(
                j_flags[cp.head[r]] or not eval_body(cp, r, j_flags) for r in rows
            ):
                minimal = False
                break
            if sub == 0:
                break
            sub = (sub - 1) & cand
        if minimal:
            out.append(cand)
    return out


def has_proper_submodel(cp: CompiledProgram, base) -> bool:
    """Whether any proper subset of the given atom indices models cp."""
    if not base:
        return False
    flags = bytearray(cp.n_atoms)
    for a in base:
        flags[a] = 1
    # One-atom removals first: cheap and usually decisive.
    for a in base:
        flags[a] = 0
        if models(cp, flags):
            return True
        flags[a] = 1
    n = len(base)
    full = (1 << n) - 1
    sub = (full - 1) & full
    while True:
        for j in range(n):
            flags[base[j]] = sub >> j & 1
        if models(cp, flags):
            return True
        if sub == 0:
            return False
        sub = (sub - 1) & full


def tabulate(cp: CompiledProgram, r: int) -> bytearray:
    """Dense truth table of rule r's body over its local domain lattice."""
    k = cp.dom_len[r]
    out = bytearray(1 << k)
    for local in range(1 << k):
        if _eval_local(cp, r, local):
            out[local] = 1
    return out


def closure_below(bits: bytearray, n: int) -> bytearray:
    """out[s] = 1 iff some subset of s is set in bits (subset-sum DP)."""
    out = bytearray(bits)
    for i in range(n):
        bit = 1 << i
        for s in range(len(out)):
            if s & bit and out[s ^ bit]:
                out[s] = 1
    return out


def closure_above(bits: bytearray, n: int) -> bytearray:
    """out[s] = 1 iff some superset of s is set in bits."""
    out = bytearray(bits)
    for i in range(n):
        bit = 1 << i
        for s in range(len(out)):
            if not s & bit and out[s | bit]:
                out[s] = 1
    return out
