# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel-grid scan for the brute-force oracle (hot inner loop).

Mirrors `_scan_py.scan_pair_tables`; see that module for the contract.
"""

import numpy as np
cimport numpy as cnp


def scan_pair_tables(double[:, ::1] G, double[:, ::1] Hc, double Hp,
                     double[::1] thresholds, bint n_mode):
    cdef int steps = G.shape[0] - 1
    cdef int nt = thresholds.shape[0]
    cdef int a1, a2, a3, b1, b2, b3, t
    cdef double chi, info, lhs
    cdef cnp.ndarray[cnp.float64_t, ndim=1] best_arr = np.full(nt, np.inf)
    cdef double[::1] best = best_arr

    for a1 in range(steps // 3 + 1):
        for a2 in range(a1, (steps - a1) // 2 + 1):
            a3 = steps - a1 - a2
            for b1 in range(steps + 1):
                for b2 in range(steps + 1 - b1):
                    b3 = steps - b1 - b2
                    chi = G[a1, b1] + G[a2, b2] + G[a3, b3]
                    info = Hp - (Hc[a1, b1] + Hc[a2, b2] + Hc[a3, b3])
                    lhs = info + chi if n_mode else info
                    for t in range(nt):
                        if lhs <= thresholds[t] and chi < best[t]:
                            best[t] = chi
    return best_arr
