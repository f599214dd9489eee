# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernel: backward-induction minimizer for linear one-step costs.

Must stay bit-identical to tradegame._dpcore_py.minimize_linear: same windows,
same iteration order, same floating expression shape, strict-< tie-breaking.
"""

from libc.stdlib cimport free, malloc


def minimize_linear(int V, int T, int tl, int tu, double kappa, double[::1] w):
    """Minimize sum_t [ k_t*w[t-1] + k_t*(k_t + kappa*held)*w[T+t-1] ] over all
    increment sequences summing to V with tl <= k_t <= tu.

    Returns (increments list, optimal value). Raises ValueError if infeasible.
    """
    if not (tl * T <= V <= tu * T):
        raise ValueError("empty action space")
    if w.shape[0] != 2 * T:
        raise ValueError("weight vector must have length 2T")

    cdef int t, s, k, s2, idx, held, best_k
    cdef double best, cand, p
    cdef int *lo = <int *> malloc((T + 2) * sizeof(int))
    cdef int *hi = <int *> malloc((T + 2) * sizeof(int))
    cdef int width = 0, wd

    # s = shares still to buy at the start of step t; windows intersect
    # backward reachability from a(0)=0 with forward reachability to a(T)=V
    for t in range(1, T + 1):
        lo[t] = max(V - tu * (t - 1), tl * (T - t + 1))
        hi[t] = min(V - tl * (t - 1), tu * (T - t + 1))
        wd = hi[t] - lo[t] + 1
        if wd > width:
            width = wd

    cdef double *opt = <double *> malloc((T + 1) * width * sizeof(double))
    cdef int *br = <int *> malloc((T + 1) * width * sizeof(int))

    try:
        for s in range(lo[T], hi[T] + 1):
            held = V - s
            idx = (T - 1) * width + (s - lo[T])
            opt[idx] = s * w[T - 1] + s * (s + kappa * held) * w[2 * T - 1]
            br[idx] = s

        for t in range(T - 1, 0, -1):
            for s in range(lo[t], hi[t] + 1):
                held = V - s
                best = 0.0
                best_k = 0
                idx = -1
                for k in range(tl, tu + 1):
                    s2 = s - k
                    if s2 < lo[t + 1] or s2 > hi[t + 1]:
                        continue
                    p = k * w[t - 1] + k * (k + kappa * held) * w[T + t - 1]
                    cand = opt[t * width + (s2 - lo[t + 1])] + p
                    if idx < 0 or cand < best:
                        best = cand
                        best_k = k
                        idx = 0
                opt[(t - 1) * width + (s - lo[t])] = best
                br[(t - 1) * width + (s - lo[t])] = best_k

        incs = []
        s = V
        for t in range(1, T + 1):
            k = br[(t - 1) * width + (s - lo[t])]
            incs.append(k)
            s -= k
        return incs, opt[0 * width + (V - lo[1])]
    finally:
        free(opt)
        free(br)
        free(lo)
        free(hi)
