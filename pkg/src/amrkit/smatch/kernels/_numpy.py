"""Pure-numpy versions of the mapping kernels.

Same contracts and move order as the numba kernels; each climbing step
materializes every candidate move as a row and scores them all at once.
"""

import numpy as np


def mapping_scores(cands, unary, pi, pj, pk, pl, pw):
    cands = np.asarray(cands, dtype=np.int64)
    n_rows, n_a = cands.shape
    mapped = cands >= 0
    cols = np.where(mapped, cands, 0)
    u = np.where(mapped, unary[np.arange(n_a)[None, :], cols], 0).sum(axis=1)
    if pi.shape[0] == 0:
        return u.astype(np.int64)
    hit = (cands[:, pi] == pj) & (cands[:, pk] == pl)
    return (u + hit.astype(np.int64) @ pw).astype(np.int64)


def _moves(m, n_b):
    """All single remap/swap moves from ``m`` as rows, in canonical order.

    Order: by first variable i; for each i, remaps to free j ascending, then
    swaps with k > i ascending.
    """
    n_a = m.shape[0]
    used = np.zeros(n_b, dtype=bool)
    used[m[m >= 0]] = True
    free = np.flatnonzero(~used)
    r_i = np.repeat(np.arange(n_a), free.size)
    r_j = np.tile(free, n_a)
    s_i, s_k = np.triu_indices(n_a, 1)
    keep = m[s_i] != m[s_k]
    s_i, s_k = s_i[keep], s_k[keep]

    kind = np.concatenate([np.zeros(r_i.size, np.int64), np.ones(s_i.size, np.int64)])
    first = np.concatenate([r_i, s_i])
    second = np.concatenate([r_j, s_k])
    order = np.lexsort((second, kind, first))

    n_r = r_i.size
    cands = np.tile(m, (n_r + s_i.size, 1))
    rows = np.arange(n_r)
    cands[rows, r_i] = r_j
    rows = np.arange(n_r, n_r + s_i.size)
    cands[rows, s_i] = m[s_k]
    cands[rows, s_k] = m[s_i]
    return cands[order]


def hill_climb(init, unary, pi, pj, pk, pl, pw):
    m = np.array(init, dtype=np.int64)
    n_b = unary.shape[1]
    cur = int(mapping_scores(m[None, :], unary, pi, pj, pk, pl, pw)[0])
    while True:
        cands = _moves(m, n_b)
        if cands.shape[0] == 0:
            return m, cur
        scores = mapping_scores(cands, unary, pi, pj, pk, pl, pw)
        best = int(np.argmax(scores))
        if scores[best] <= cur:
            return m, cur
        m = cands[best].copy()
        new = int(mapping_scores(m[None, :], unary, pi, pj, pk, pl, pw)[0])
        if new < cur:
            raise AssertionError("hill climb produced a non-monotone step")
        cur = new
