"""Core search kernels over CSR adjacency arrays.

These functions are written against a deliberately small subset of Python:
int64 arithmetic, numpy arrays, explicit stacks, and a homogeneous dict.
The numba backend compiles *these exact functions* with ``njit``; the
fallback backend runs them as plain Python. Keeping one source for both
guarantees the two backends cannot drift apart.

State encoding: a position is (token vertex, used-edge bitmask); the side
to move is implied by the popcount of the mask, and the start vertex is
fixed per search. Memo key = mask * n_vertices + token, which stays well
inside int64 for the supported edge counts (<= 40 by default; the key
needs bits(edges) + bits(vertices) <= 63).

Terminal positions (arrival at start, or arrival at a vertex whose last
incident edge was just consumed) are recognized at move generation and are
never pushed or memoized.
"""

import numpy as np

_BIG = np.int64(1) << 60


def win_search(indptr, nbr, eidx, inc, nv, start, token, mask, cap):
    """Decide whether the player to move from (token, mask) wins.

    Depth-first AND/OR search with early cutoff: a frame is decided as won
    the moment one child loses for the opponent, so siblings after that
    child are never explored.

    Returns (code, witness, states, memo_entries):
      code     1 if the mover wins, 0 if not, -1 if the memo cap was hit
      witness  destination vertex of the lowest-index winning move at the
               root (-1 when the root is lost); children are scanned in
               ascending destination order, so the first cutoff is the
               lowest winning move
      states   frames expanded (memo hits and terminals not included)
    """
    n_edges = indptr[nv] // 2
    st_token = np.empty(n_edges + 2, np.int64)
    st_mask = np.empty(n_edges + 2, np.int64)
    st_pos = np.empty(n_edges + 2, np.int64)
    # seed-and-pop pins the dict to int64->int64 (real keys are never negative)
    memo = {np.int64(-1): np.int64(0)}
    memo.pop(np.int64(-1))
    sp = 0
    st_token[0] = token
    st_mask[0] = mask
    st_pos[0] = indptr[token]
    states = 1
    retval = -1  # result bubbling up from a finished child, -1 = none
    final = -1
    witness = -1
    while sp >= 0:
        t = st_token[sp]
        m = st_mask[sp]
        pos = st_pos[sp]
        res = -1
        if retval >= 0:
            # resuming after the child explored at slot `pos` finished
            if retval == 0:
                res = 1
            else:
                pos += 1
            retval = -1
        if res < 0:
            suspended = False
            end = indptr[t + 1]
            while pos < end:
                e = eidx[pos]
                if (m >> e) & 1:
                    pos += 1
                    continue
                to = nbr[pos]
                nm = m | (np.int64(1) << e)
                if to == start or (inc[to] & ~nm) == 0:
                    res = 1
                    break
                ck = nm * nv + to
                cached = memo.get(ck)
                if cached is not None:
                    if cached == 0:
                        res = 1
                        break
                    pos += 1
                    continue
                st_pos[sp] = pos
                sp += 1
                st_token[sp] = to
                st_mask[sp] = nm
                st_pos[sp] = indptr[to]
                states += 1
                suspended = True
                break
            if suspended:
                continue
            if res < 0:
                res = 0
        memo[m * nv + t] = np.int64(res)
        if cap > 0 and len(memo) > cap:
            return -1, -1, states, len(memo)
        if sp == 0:
            final = res
            if res == 1:
                witness = nbr[pos]
        retval = res
        sp -= 1
    return final, witness, states, len(memo)


def length_search(indptr, nbr, eidx, inc, nv, start, token, mask, cap):
    """Exact game length from (token, mask) under the delaying convention.

    Value for the side to move: +k when it wins and k is the minimal
    number of remaining plies it can force; -k when it loses and k is the
    maximal number of plies it can drag the game out while the opponent
    plays to end it fastest. Every move consumes an edge, so 1 <= k <=
    remaining edges and the recursion is well-founded.

    Unlike win_search this must expand every child (min/max needs all of
    them), except that an immediate winning move ends the frame at the
    optimal value +1 outright.

    Returns (code, value, best_to, states, memo_entries) where best_to is
    the destination of the lowest-index move achieving the value at the
    root (first achiever under strict improvement).
    """
    n_edges = indptr[nv] // 2
    st_token = np.empty(n_edges + 2, np.int64)
    st_mask = np.empty(n_edges + 2, np.int64)
    st_pos = np.empty(n_edges + 2, np.int64)
    st_bw = np.empty(n_edges + 2, np.int64)  # best (minimal) winning length
    st_bl = np.empty(n_edges + 2, np.int64)  # best (maximal) losing length
    st_bwto = np.empty(n_edges + 2, np.int64)
    st_blto = np.empty(n_edges + 2, np.int64)
    memo = {np.int64(-1): np.int64(0)}
    memo.pop(np.int64(-1))
    sp = 0
    st_token[0] = token
    st_mask[0] = mask
    st_pos[0] = indptr[token]
    st_bw[0] = _BIG
    st_bl[0] = np.int64(-1)
    st_bwto[0] = np.int64(-1)
    st_blto[0] = np.int64(-1)
    states = 1
    retval = np.int64(0)  # child value bubbling up; 0 = none (values are never 0)
    final = np.int64(0)
    best_to = np.int64(-1)
    while sp >= 0:
        t = st_token[sp]
        m = st_mask[sp]
        pos = st_pos[sp]
        bw = st_bw[sp]
        bl = st_bl[sp]
        bwto = st_bwto[sp]
        blto = st_blto[sp]
        if retval != 0:
            c = retval
            retval = np.int64(0)
            if c < 0:
                cand = np.int64(1) - c
                if cand < bw:
                    bw = cand
                    bwto = nbr[pos]
            else:
                cand = np.int64(1) + c
                if cand > bl:
                    bl = cand
                    blto = nbr[pos]
            pos += 1
        decided = False
        suspended = False
        end = indptr[t + 1]
        while pos < end:
            e = eidx[pos]
            if (m >> e) & 1:
                pos += 1
                continue
            to = nbr[pos]
            nm = m | (np.int64(1) << e)
            if to == start or (inc[to] & ~nm) == 0:
                # a one-ply win is the global minimum; nothing can beat it
                bw = np.int64(1)
                bwto = to
                decided = True
                break
            ck = nm * nv + to
            cached = memo.get(ck)
            if cached is not None:
                if cached < 0:
                    cand = np.int64(1) - cached
                    if cand < bw:
                        bw = cand
                        bwto = to
                else:
                    cand = np.int64(1) + cached
                    if cand > bl:
                        bl = cand
                        blto = to
                pos += 1
                continue
            st_pos[sp] = pos
            st_bw[sp] = bw
            st_bl[sp] = bl
            st_bwto[sp] = bwto
            st_blto[sp] = blto
            sp += 1
            st_token[sp] = to
            st_mask[sp] = nm
            st_pos[sp] = indptr[to]
            st_bw[sp] = _BIG
            st_bl[sp] = np.int64(-1)
            st_bwto[sp] = np.int64(-1)
            st_blto[sp] = np.int64(-1)
            states += 1
            suspended = True
            break
        if suspended:
            continue
        if decided:
            res = np.int64(1)
        elif bw < _BIG:
            res = bw
        else:
            res = -bl
        memo[m * nv + t] = res
        if cap > 0 and len(memo) > cap:
            return -1, np.int64(0), np.int64(-1), states, len(memo)
        if sp == 0:
            final = res
            if res > 0:
                best_to = bwto
            else:
                best_to = blto
        retval = res
        sp -= 1
    return 1, final, best_to, states, len(memo)
