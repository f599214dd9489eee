"""Pure-Python fallback for the linear-cost minimizer.

Mirrors tradegame._dpcore exactly: same windows, same iteration order, same
floating expression shape, strict-< tie-breaking. Keep the two in sync; the
parity test asserts bit-identical output.
"""

from __future__ import annotations


def minimize_linear(V: int, T: int, tl: int, tu: int, kappa: float, w) -> tuple[list[int], float]:
    if not (tl * T <= V <= tu * T):
        raise ValueError("empty action space")
    if len(w) != 2 * T:
        raise ValueError("weight vector must have length 2T")
    w = [float(x) for x in w]
    kappa = float(kappa)

    lo = [0] * (T + 2)
    hi = [0] * (T + 2)
    for t in range(1, T + 1):
        lo[t] = max(V - tu * (t - 1), tl * (T - t + 1))
        hi[t] = min(V - tl * (t - 1), tu * (T - t + 1))

    opt: list[dict[int, float]] = [dict() for _ in range(T + 1)]
    br: list[dict[int, int]] = [dict() for _ in range(T + 1)]

    for s in range(lo[T], hi[T] + 1):
        held = V - s
        opt[T][s] = s * w[T - 1] + s * (s + kappa * held) * w[2 * T - 1]
        br[T][s] = s

    for t in range(T - 1, 0, -1):
        nxt = opt[t + 1]
        for s in range(lo[t], hi[t] + 1):
            held = V - s
            best = 0.0
            best_k = 0
            seen = False
            for k in range(tl, tu + 1):
                s2 = s - k
                if s2 < lo[t + 1] or s2 > hi[t + 1]:
                    continue
                p = k * w[t - 1] + k * (k + kappa * held) * w[T + t - 1]
                cand = nxt[s2] + p
                if not seen or cand < best:
                    best = cand
                    best_k = k
                    seen = True
            opt[t][s] = best
            br[t][s] = best_k

    incs = []
    s = V
    for t in range(1, T + 1):
        k = br[t][s]
        incs.append(k)
        s -= k
    return incs, opt[1][V]
