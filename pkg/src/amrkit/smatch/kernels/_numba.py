"""numba-compiled mapping kernels.

Mappings are int64 arrays over graph-A variable indices holding a graph-B
index or -1 (unmapped). Scores are matched-triple counts built from a unary
weight matrix (instance/attribute matches and self-loops) and a list of
pairwise entries ``(i -> j) and (k -> l) => +w`` for relation triples.
"""

import numpy as np
from numba import njit


@njit(cache=True)
def _score(m, unary, pi, pj, pk, pl, pw):
    s = 0
    for i in range(m.shape[0]):
        if m[i] >= 0:
            s += unary[i, m[i]]
    for p in range(pi.shape[0]):
        if m[pi[p]] == pj[p] and m[pk[p]] == pl[p]:
            s += pw[p]
    return s


@njit(cache=True)
def mapping_scores(cands, unary, pi, pj, pk, pl, pw):
    out = np.empty(cands.shape[0], dtype=np.int64)
    for r in range(cands.shape[0]):
        out[r] = _score(cands[r], unary, pi, pj, pk, pl, pw)
    return out


@njit(cache=True)
def hill_climb(init, unary, pi, pj, pk, pl, pw):
    n_a, n_b = unary.shape
    m = init.copy()
    used = np.zeros(n_b, dtype=np.bool_)
    for i in range(n_a):
        if m[i] >= 0:
            used[m[i]] = True
    cur = _score(m, unary, pi, pj, pk, pl, pw)
    while True:
        best = cur
        best_i = -1
        best_x = -1
        best_swap = False
        for i in range(n_a):
            old = m[i]
            for j in range(n_b):
                if used[j]:
                    continue
                m[i] = j
                s = _score(m, unary, pi, pj, pk, pl, pw)
                if s > best:
                    best, best_i, best_x, best_swap = s, i, j, False
            m[i] = old
            for k in range(i + 1, n_a):
                if m[i] == m[k]:
                    continue
                mk = m[k]
                m[k] = old
                m[i] = mk
                s = _score(m, unary, pi, pj, pk, pl, pw)
                if s > best:
                    best, best_i, best_x, best_swap = s, i, k, True
                m[i] = old
                m[k] = mk
        if best_i < 0:
            return m, cur
        if best_swap:
            tmp = m[best_i]
            m[best_i] = m[best_x]
            m[best_x] = tmp
        else:
            if m[best_i] >= 0:
                used[m[best_i]] = False
            m[best_i] = best_x
            used[best_x] = True
        new = _score(m, unary, pi, pj, pk, pl, pw)
        if new != best or new < cur:
            raise AssertionError("hill climb produced a non-monotone step")
        cur = new
