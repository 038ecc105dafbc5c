"""Pure-numpy fallback for the kernel-grid scan used by the brute-force oracle.

Same semantics as the compiled module `_scan_cy`; selection happens in
`_backend`.
"""

from __future__ import annotations

import numpy as np


def scan_pair_tables(G, Hc, Hp, thresholds, n_mode):
    """Scan all 2-row, 3-column kernels on a shared resolution grid.

    G[a, b] and Hc[a, b] hold the per-column contributions q_j * S(posterior)
    and q_j * H(posterior) when column j receives weight a/steps from row 1
    and b/steps from row 2.  Row 1 is enumerated up to column permutation
    (sorted triples), row 2 freely; both rows always share one permutation,
    so no kernel class is missed.

    Returns the minimum sum of G-contributions subject to
      info = Hp - sum Hc <= threshold          (n_mode = False)
      info + chi        <= threshold           (n_mode = True)
    for every threshold, as an array.
    """
    G = np.asarray(G, dtype=float)
    Hc = np.asarray(Hc, dtype=float)
    thresholds = np.asarray(thresholds, dtype=float)
    steps = G.shape[0] - 1

    b1, b2 = np.meshgrid(np.arange(steps + 1), np.arange(steps + 1), indexing="ij")
    keep = b1 + b2 <= steps
    b1 = b1[keep]
    b2 = b2[keep]
    b3 = steps - b1 - b2

    best = np.full(thresholds.shape, np.inf)
    for a1 in range(steps // 3 + 1):
        for a2 in range(a1, (steps - a1) // 2 + 1):
            a3 = steps - a1 - a2
            chi = G[a1, b1] + G[a2, b2] + G[a3, b3]
            info = Hp - (Hc[a1, b1] + Hc[a2, b2] + Hc[a3, b3])
            lhs = info + chi if n_mode else info
            for t, thr in enumerate(thresholds):
                ok = lhs <= thr
                if ok.any():
                    v = chi[ok].min()
                    if v < best[t]:
                        best[t] = v
    return best
