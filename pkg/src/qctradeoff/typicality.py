"""Desk-scale typicality machinery: types, conditional typical sets and
subspaces, channel simulation, and Chernoff derandomization.

Strings are integer arrays over alphabets {0..|I|-1}; all set computations
work on count statistics (types), never on explicit 2^n enumerations except
in the small-n brute-force cross-checks.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import gammaln
from scipy.stats import binom

from . import qcore

_LN2 = math.log(2.0)


# ---------------------------------------------------------------------------
# Types and typical sets


def type_counts(I, alphabet: int) -> np.ndarray:
    return np.bincount(np.asarray(I, dtype=int), minlength=alphabet)


def is_typical(I, P, delta: float) -> bool:
    """Membership in T_{P,delta}: |P_I(i) - P(i)| <= delta / sqrt(n) for all i."""
    if delta <= 0:
        raise ValueError("delta must be positive")
    P = np.asarray(P, dtype=float)
    I = np.asarray(I, dtype=int)
    n = I.size
    counts = type_counts(I, P.size)
    return bool(np.all(np.abs(counts / n - P) <= delta / math.sqrt(n) + 1e-15))


def log2_multinomial(counts) -> float:
    counts = np.asarray(counts, dtype=float)
    n = counts.sum()
    return float((gammaln(n + 1) - gammaln(counts + 1).sum()) / _LN2)


def type_class_bounds(counts) -> tuple[float, float]:
    """log2 bounds (n+1)^{-|I|} 2^{nH(P_I)} <= |T_P| <= 2^{nH(P_I)}."""
    counts = np.asarray(counts, dtype=float)
    n = counts.sum()
    k = counts.size
    H = qcore.shannon_entropy(counts / n)
    return n * H - k * math.log2(n + 1), n * H


def typical_count_bounds(P, delta: float, n: int) -> tuple[float, float]:
    """log2 bounds on |T_{P,delta}| from the displayed inequalities:
    (n+1)^{-|I|} 2^{n(H - |I| eta(delta/sqrt n))} and
    (n+1)^{+|I|} 2^{n(H + |I| eta(delta/sqrt n))}."""
    if delta <= 0:
        raise ValueError("delta must be positive")
    P = np.asarray(P, dtype=float)
    k = P.size
    H = qcore.shannon_entropy(P)
    slack = k * qcore.eta(delta / math.sqrt(n))
    poly = k * math.log2(n + 1)
    return n * (H - slack) - poly, n * (H + slack) + poly


def _compositions(length: int, total: int):
    if length == 1:
        yield (total,)
        return
    for v in range(total + 1):
        for rest in _compositions(length - 1, total - v):
            yield (v,) + rest


def exact_typical_size(P, delta: float, n: int) -> float:
    """log2 of the exact |T_{P,delta}| by summing type-class sizes."""
    P = np.asarray(P, dtype=float)
    k = P.size
    band = delta / math.sqrt(n)
    total = 0.0
    for counts in _compositions(k, n):
        c = np.array(counts, dtype=float)
        if np.all(np.abs(c / n - P) <= band + 1e-15):
            total += math.exp(gammaln(n + 1) - gammaln(c + 1).sum())
    if total <= 0.0:
        return -math.inf
    return math.log2(total)


def typical_probability(P, delta: float, n: int) -> float:
    """Exact P^{(x)n}(T_{P,delta}) by summing over types (small alphabets)."""
    P = np.asarray(P, dtype=float)
    k = P.size
    band = delta / math.sqrt(n)
    logP = np.where(P > 0, np.log(np.where(P > 0, P, 1.0)), -np.inf)
    total = 0.0
    for counts in _compositions(k, n):
        c = np.array(counts, dtype=float)
        if np.all(np.abs(c / n - P) <= band + 1e-15):
            if np.any((c > 0) & (P <= 0)):
                continue
            lp = gammaln(n + 1) - gammaln(c + 1).sum() + float((c * np.where(np.isfinite(logP), logP, 0.0)).sum())
            total += math.exp(lp)
    return min(total, 1.0)


def joint_counts(I, J, sizeI: int, sizeJ: int) -> np.ndarray:
    I = np.asarray(I, dtype=int)
    J = np.asarray(J, dtype=int)
    out = np.zeros((sizeI, sizeJ), dtype=int)
    np.add.at(out, (I, J), 1)
    return out


def is_cond_typical(J, I, W, delta: float, eps_robust: float = 0.0) -> bool:
    """Membership in T_{W,delta}(I) (robust variant for eps_robust > 0):
    |N(ij|IJ) - N(i|I) W(j|i)| <= delta sqrt(N(i|I)) + eps_robust N(i|I)."""
    W = np.asarray(W, dtype=float)
    I = np.asarray(I, dtype=int)
    J = np.asarray(J, dtype=int)
    if I.size != J.size:
        raise ValueError("length mismatch")
    N = joint_counts(I, J, W.shape[0], W.shape[1])
    ni = N.sum(axis=1)
    for i in range(W.shape[0]):
        if ni[i] == 0:
            continue
        band = delta * math.sqrt(ni[i]) + eps_robust * ni[i]
        if np.any(np.abs(N[i] - ni[i] * W[i]) > band + 1e-12):
            return False
    return True


# ---------------------------------------------------------------------------
# Conditional typical subspace overlap


def _band_interval(n_i: float, w: float, delta: float, eps: float):
    lo = math.ceil(n_i * w - delta * math.sqrt(n_i) - eps * n_i - 1e-12)
    hi = math.floor(n_i * w + delta * math.sqrt(n_i) + eps * n_i + 1e-12)
    return max(lo, 0), min(hi, int(n_i))


def _group_weights(E: qcore.Ensemble, kernel: np.ndarray, j: int):
    """Eigen-data of the conditional state rho_j and the per-(i,k) weights
    u[i, k] = |<e_{k|j} | phi_i>|^2."""
    p = E.probs
    K = kernel
    qj = float(p @ K[:, j])
    if qj <= 0.0:
        raise ValueError(f"symbol {j} has zero probability under the kernel")
    post = p * K[:, j] / qj
    rho = E.mix(post)
    evals, evecs = np.linalg.eigh(rho)
    u = np.abs(E.states @ evecs.conj()) ** 2          # (m, d)
    return np.clip(evals, 0.0, 1.0), u


def projector_overlap(I, J, E: qcore.Ensemble, kernel, delta: float,
                      eps_robust: float = 0.0) -> float:
    """Tr( phi_I  Pi_{rho,delta}(J) ), the weight of the input product state
    on the conditional typical subspace of the kernel's posterior states.

    The projector is diagonal in the per-symbol eigenbases, so the overlap
    is the probability that per-symbol eigenindex counts land in the typical
    bands; within each J-symbol this is an exact convolution of the
    independent per-(i,j) multinomials (binomials at d = 2).
    """
    I = np.asarray(I, dtype=int)
    J = np.asarray(J, dtype=int)
    kernel = qcore.validate_kernel(np.asarray(kernel, dtype=float), E.m)
    d = E.dim
    total = 1.0
    for j in np.unique(J):
        mask = J == j
        n_j = int(mask.sum())
        evals, u = _group_weights(E, kernel, int(j))
        counts_i = type_counts(I[mask], E.m)
        if d == 2:
            # Distribution of the count of eigenindex 1 within this symbol:
            # convolution of Binomial(n_ij, u[i, 1]).
            pmf = np.array([1.0])
            for i in range(E.m):
                if counts_i[i] == 0:
                    continue
                pmf = np.convolve(pmf, binom.pmf(np.arange(counts_i[i] + 1),
                                                 counts_i[i], u[i, 1]))
            lo1, hi1 = _band_interval(n_j, evals[1], delta, eps_robust)
            lo0, hi0 = _band_interval(n_j, evals[0], delta, eps_robust)
            # The k = 0 constraint maps to n_j - c in [lo0, hi0].
            lo = max(lo1, n_j - hi0)
            hi = min(hi1, n_j - lo0)
            prob = float(pmf[lo:hi + 1].sum()) if hi >= lo else 0.0
        else:
            prob = _overlap_dp_generic(counts_i, u, evals, n_j, delta, eps_robust)
        total *= min(max(prob, 0.0), 1.0)
    return total


def _overlap_dp_generic(counts_i, u, evals, n_j, delta, eps):
    """Dict-based DP over eigenindex count vectors for d > 2 (small n)."""
    d = u.shape[1]
    dist = {(0,) * d: 1.0}
    for i, n_i in enumerate(counts_i):
        if n_i == 0:
            continue
        step = {}
        for comp in _compositions(d, int(n_i)):
            lp = gammaln(n_i + 1) - sum(gammaln(c + 1) for c in comp)
            lw = 0.0
            ok = True
            for c, w in zip(comp, u[i]):
                if c > 0:
                    if w <= 0:
                        ok = False
                        break
                    lw += c * math.log(w)
            if not ok:
                continue
            step[comp] = math.exp(lp + lw)
        new = {}
        for base, pb in dist.items():
            for comp, pc in step.items():
                key = tuple(b + c for b, c in zip(base, comp))
                new[key] = new.get(key, 0.0) + pb * pc
        dist = new
    prob = 0.0
    bands = [_band_interval(n_j, evals[k], delta, eps) for k in range(d)]
    for key, pv in dist.items():
        if all(lo <= c <= hi for c, (lo, hi) in zip(key, bands)):
            prob += pv
    return prob


def projector_overlap_brute(I, J, E: qcore.Ensemble, kernel, delta: float,
                            eps_robust: float = 0.0) -> float:
    """Brute-force enumeration over eigenindex strings; n <= ~8 only."""
    I = np.asarray(I, dtype=int)
    J = np.asarray(J, dtype=int)
    n = I.size
    d = E.dim
    if d ** n > 2_000_000:
        raise ValueError("string space too large for brute force")
    eig = {int(j): _group_weights(E, kernel, int(j)) for j in np.unique(J)}
    total = 0.0
    for K in itertools.product(range(d), repeat=n):
        ok = True
        for j in np.unique(J):
            mask = J == j
            n_j = int(mask.sum())
            evals, _ = eig[int(j)]
            kc = np.bincount(np.array(K)[mask], minlength=d)
            for k in range(d):
                lo, hi = _band_interval(n_j, evals[k], delta, eps_robust)
                if not (lo <= kc[k] <= hi):
                    ok = False
                    break
            if not ok:
                break
        if not ok:
            continue
        w = 1.0
        for t in range(n):
            _, u = eig[int(J[t])]
            w *= u[I[t], K[t]]
        total += w
    return total


# ---------------------------------------------------------------------------
# Reverse Shannon channel simulation


@dataclass
class RSTReport:
    n: int
    delta: float
    H_PW: float                      # mutual information H(P:W) per symbol
    log_M: float                     # classical message budget (bits)
    log_N: float                     # shared randomness budget (bits)
    log_M_theorem: float             # theorem budget with K = 1
    tv_distance_estimate: float      # max over panel, exact class-level TV
    tv_mc: float                     # Monte-Carlo cross-check
    tv_mc_error: float               # 95% confidence half-width
    tv_bound: float                  # |I||J| / delta^2
    failure_prob: float
    panel_tv: list = field(default_factory=list)
    seed: int | None = None

    @property
    def within_bound(self) -> bool:
        return self.tv_distance_estimate <= self.tv_bound + self.tv_mc_error + 1e-12


def channel_mutual_info(P, W) -> float:
    P = np.asarray(P, dtype=float)
    W = np.asarray(W, dtype=float)
    q = P @ W
    total = 0.0
    for i in range(W.shape[0]):
        for j in range(W.shape[1]):
            if P[i] > 0 and W[i, j] > 0:
                total += P[i] * W[i, j] * math.log2(W[i, j] / q[j])
    return total


def _log_ratio_matrix(W, q):
    """log2(W(j|i)/q(j)); -inf where W = 0 (those strings never occur)."""
    out = np.full(W.shape, -np.inf)
    for i in range(W.shape[0]):
        for j in range(W.shape[1]):
            if W[i, j] > 0 and q[j] > 0:
                out[i, j] = math.log2(W[i, j] / q[j])
    return out


def _group_class_data(n_i, Wi, qrow_log):
    """Per-group class enumeration: compositions c of n_i over |J| with
    log2 pmf under W(.|i) and the log2 likelihood ratio sum_j c_j lr_ij."""
    sizeJ = Wi.size
    comps = np.array(list(_compositions(sizeJ, int(n_i))), dtype=float)
    with np.errstate(divide="ignore"):
        logW = np.where(Wi > 0, np.log(np.where(Wi > 0, Wi, 1.0)), -np.inf)
    lp = gammaln(n_i + 1) - gammaln(comps + 1).sum(axis=1)
    wmass = comps @ np.where(np.isfinite(logW), logW, 0.0)
    valid = ~np.any((comps > 0) & (Wi[None, :] <= 0), axis=1)
    logpmf = np.where(valid, (lp + wmass) / _LN2, -np.inf)
    lr = comps @ np.where(np.isfinite(qrow_log), qrow_log, 0.0)
    lr = np.where(np.any((comps > 0) & ~np.isfinite(qrow_log)[None, :], axis=1),
                  -np.inf, lr)
    return comps, logpmf, lr


def reverse_shannon_sim(W, P, n: int, delta: float, seed: int = 0,
                        panel: int = 6, trials: int = 4000) -> RSTReport:
    """Simulate classical channel simulation with a shared random codebook.

    Construction: the shared randomness is a codebook of M strings drawn iid
    from the output marginal q^{(x)n}; given input I the encoder selects index
    mu with probability proportional to the likelihood ratio
    W(J_mu|I)/q(J_mu) and sends it; the decoder emits J_mu.  For a codebook
    exponentially larger than 2^{n H(P:W)} the output law is close to the
    true channel; M is budgeted as n H(P:W) plus a CLT margin on the
    log-likelihood-ratio fluctuation, which stays within the theorem's
    eta-correction budget.

    Everything is evaluated on count classes (the sufficient statistic):
    the output tilt is W(class) * M / (M + r(class)), the residual total
    variation is the exact class sum of W * r / (M + r) plus the failure
    mass, and a Monte-Carlo estimator of the same quantity cross-checks it.
    """
    W = np.asarray(W, dtype=float)
    P = np.asarray(P, dtype=float)
    sizeI, sizeJ = W.shape
    rng = np.random.default_rng(seed)
    q = P @ W
    info = channel_mutual_info(P, W)
    lr = _log_ratio_matrix(W, q)

    # Per-symbol variance of the log ratio under the channel.
    var = 0.0
    for i in range(sizeI):
        mean_i = sum(W[i, j] * lr[i, j] for j in range(sizeJ) if W[i, j] > 0)
        var += P[i] * sum(W[i, j] * (lr[i, j] - mean_i) ** 2
                          for j in range(sizeJ) if W[i, j] > 0)
    margin = math.ceil(2.33 * math.sqrt(max(var, 0.0) * n)) + 12.0
    log_M = n * info + margin
    cond_H = -sum(P[i] * W[i, j] * math.log2(W[i, j])
                  for i in range(sizeI) for j in range(sizeJ) if W[i, j] > 0)
    log_N = n * cond_H + margin
    eta_term = n * sizeI * sizeJ * qcore.eta(delta / math.sqrt(n))
    log_M_theorem = n * info + eta_term + sizeI * sizeJ * math.log2(n + 1)

    band = delta / math.sqrt(n)
    panel_tv = []
    fail_max = 0.0
    mc_vals = []
    for _ in range(panel):
        for _try in range(1000):
            counts = rng.multinomial(n, P)
            if np.all(np.abs(counts / n - P) <= band + 1e-15):
                break
        groups = [
            _group_class_data(counts[i], W[i], lr[i]) for i in range(sizeI)
        ]
        n_classes = int(np.prod([g[0].shape[0] for g in groups]))
        if n_classes > 4_000_000:
            raise ValueError("class space too large; reduce |J| or n")

        # Exact class-level residual: sum_c pmf_W(c) * r(c) / (r(c) + M).
        logpmf = np.zeros(1)
        logr = np.zeros(1)
        for comps, lp, lrr in groups:
            logpmf = (logpmf[:, None] + lp[None, :]).ravel()
            logr = (logr[:, None] + lrr[None, :]).ravel()
        keep = np.isfinite(logpmf)
        logpmf = logpmf[keep]
        logr = logr[keep]
        # r/(r+M) = 1/(1 + 2^(log_M - log r)); log r = -inf never occurs
        # under W (those classes have pmf 0 and were dropped).
        expo = np.clip(log_M - logr, -60.0, 60.0)
        resid = float((np.exp2(logpmf) / (1.0 + np.exp2(expo))).sum())

        # Failure mass: codebook contains no positive-ratio string.
        log2_mass = 0.0
        for i in range(sizeI):
            pos = q[W[i] > 0].sum()
            if pos <= 0:
                log2_mass = -math.inf
                break
            log2_mass += counts[i] * math.log2(pos)
        t_exp = log_M + log2_mass
        p_fail = 0.0 if t_exp > 60 else math.exp(-(2.0 ** t_exp) * 1.0)
        fail_max = max(fail_max, p_fail)
        panel_tv.append(resid + p_fail)

        # Monte-Carlo cross-check of the same residual.
        per = max(trials // panel, 200)
        sims = np.zeros(per)
        for t in range(per):
            lr_sum = 0.0
            for i in range(sizeI):
                cj = rng.multinomial(counts[i], W[i])
                lr_sum += float(cj @ np.where(np.isfinite(lr[i]), lr[i], 0.0))
            e = min(max(log_M - lr_sum, -60.0), 60.0)
            sims[t] = 1.0 / (1.0 + 2.0 ** e)
        mc_vals.append(sims)

    mc = np.concatenate(mc_vals)
    tv_mc = float(mc.mean()) + fail_max
    tv_err = float(1.96 * mc.std(ddof=1) / math.sqrt(mc.size))
    return RSTReport(
        n=n, delta=delta, H_PW=info, log_M=log_M, log_N=log_N,
        log_M_theorem=log_M_theorem,
        tv_distance_estimate=float(max(panel_tv)),
        tv_mc=tv_mc, tv_mc_error=tv_err,
        tv_bound=sizeI * sizeJ / delta ** 2,
        failure_prob=fail_max, panel_tv=panel_tv, seed=seed)


# ---------------------------------------------------------------------------
# Derandomization and the coding audit


def chernoff_failure_bound(L: int, eps: float, mu: float) -> float:
    """Pr{ sample mean < (1 - eps) mu } <= exp(-L eps^2 mu / (2 ln 2))."""
    return math.exp(-L * eps * eps * mu / (2.0 * _LN2))


def required_L(delta: float, sizeI: int, sizeJ: int, mu: float, n: int) -> int:
    """The displayed sufficient codebook count
    L > (2 delta^4 ln 2 / (|I|^2 |J|^2 mu)) n log|I|."""
    if sizeI < 2:
        return 1
    val = (2.0 * delta ** 4 * _LN2 / (sizeI ** 2 * sizeJ ** 2 * mu)) \
        * n * math.log2(sizeI)
    return int(math.floor(val)) + 1


def derandomize(F: np.ndarray, x: np.ndarray, L: int, eps: float,
                mu: float | None = None, seed: int = 0) -> np.ndarray:
    """Sample L shared-randomness indices iid from x and verify that every
    row of the fidelity table keeps its mean above (1 - eps) mu."""
    F = np.asarray(F, dtype=float)
    x = np.asarray(x, dtype=float)
    if eps <= 0.0:
        raise ValueError("eps must be positive")
    if F.min() < 0.0 or F.max() > 1.0 + 1e-12:
        raise ValueError("fidelity values must lie in [0, 1]")
    if abs(x.sum() - 1.0) > 1e-9:
        raise ValueError("x must be a distribution")
    if mu is None:
        mu = float((F @ x).min())
    rng = np.random.default_rng(seed)
    for _ in range(10):
        idx = rng.choice(x.size, size=L, p=x)
        means = F[:, idx].mean(axis=1)
        if np.all(means >= (1.0 - eps) * mu - 1e-12):
            return idx
    raise RuntimeError(
        "derandomization failed after 10 retries: L below the Chernoff "
        "bound or adversarial table")


@dataclass
class CodingAuditReport:
    n: int
    delta: float
    bound: float                      # 1 - 4 |I||J| / delta^2
    per_I: list
    classical_rate: float             # leading + corrections, bits total
    quantum_rate: float
    classical_leading: float          # n S(A:C)
    quantum_leading: float            # n S(A:B|C)

    @property
    def all_pass(self) -> bool:
        return all(entry["fidelity_lb"] >= self.bound - 1e-12
                   for entry in self.per_I)


def _cond_typ_probability(counts_i, W, delta):
    """Exact P(J in T_{W,delta}(I)) given input counts, product over rows."""
    total = 1.0
    for i, n_i in enumerate(counts_i):
        if n_i == 0:
            continue
        row = W[i]
        if row.size == 2:
            lo1, hi1 = _band_interval(n_i, row[1], delta, 0.0)
            lo0, hi0 = _band_interval(n_i, row[0], delta, 0.0)
            lo = max(lo1, n_i - hi0)
            hi = min(hi1, n_i - lo0)
            pr = float(binom.cdf(hi, n_i, row[1]) -
                       (binom.cdf(lo - 1, n_i, row[1]) if lo > 0 else 0.0))
        else:
            pr = 0.0
            for comp in _compositions(row.size, int(n_i)):
                c = np.array(comp, dtype=float)
                ok = np.all(np.abs(c - n_i * row) <=
                            delta * math.sqrt(n_i) + 1e-12)
                if not ok:
                    continue
                if np.any((c > 0) & (row <= 0)):
                    continue
                lp = gammaln(n_i + 1) - gammaln(c + 1).sum() \
                    + float((c * np.log(np.where(row > 0, row, 1.0))).sum())
                pr += math.exp(lp)
        total *= min(max(pr, 0.0), 1.0)
    return total


def _sample_cond_typical_J(rng, counts_i, W, delta, max_tries=5000):
    """Joint counts with each row multinomial(n_i, W_i) conditioned typical."""
    sizeJ = W.shape[1]
    out = np.zeros((counts_i.size, sizeJ), dtype=int)
    for i, n_i in enumerate(counts_i):
        if n_i == 0:
            continue
        for _ in range(max_tries):
            c = rng.multinomial(n_i, W[i])
            if np.all(np.abs(c - n_i * W[i]) <= delta * math.sqrt(n_i) + 1e-12):
                out[i] = c
                break
        else:
            raise RuntimeError("conditional-typicality rejection failed")
    return out


def coded_fidelity_audit(E: qcore.Ensemble, kernel, n: int, delta: float,
                         seed: int = 0, n_samples: int = 10) -> CodingAuditReport:
    """Audit the achievability chain at finite block length.

    For sampled typical inputs I: the classical side delivers a jointly
    typical J (probability bounded by the conditional weak law), the decoder
    projects onto the conditional typical subspace (success probability =
    the projector overlap, which is also the post-projection fidelity for a
    pure input).  The product is a certified per-I fidelity lower bound,
    compared against 1 - 4 |I||J| / delta^2.
    """
    kernel = qcore.validate_kernel(np.asarray(kernel, dtype=float), E.m)
    rng = np.random.default_rng(seed)
    P = E.probs
    sizeI, sizeJ = kernel.shape
    band = delta / math.sqrt(n)
    bound = 1.0 - 4.0 * sizeI * sizeJ / delta ** 2
    per_I = []
    for _ in range(n_samples):
        for _try in range(2000):
            counts = rng.multinomial(n, P)
            if np.all(np.abs(counts / n - P) <= band + 1e-15):
                break
        p_typ = _cond_typ_probability(counts, kernel, delta)
        Nij = _sample_cond_typical_J(rng, counts, kernel, delta)
        # Build aligned strings with these joint counts (order is
        # irrelevant: every statistic below depends on counts only).
        I_str = []
        J_str = []
        for i in range(sizeI):
            for j in range(sizeJ):
                I_str.extend([i] * Nij[i, j])
                J_str.extend([j] * Nij[i, j])
        overlap = projector_overlap(np.array(I_str), np.array(J_str),
                                    E, kernel, delta)
        per_I.append({
            "counts": counts.tolist(),
            "p_typical_J": p_typ,
            "overlap": overlap,
            "fidelity_lb": p_typ * overlap,
        })
    info = qcore.classical_info(E, kernel)
    chi_c = qcore.conditional_chi(E, kernel)
    eta_c = n * sizeI * sizeJ * qcore.eta(delta / math.sqrt(n))
    eta_q = 3.0 * E.dim * n * sizeI * sizeJ * qcore.eta(
        2.0 * delta * sizeI * sizeJ / math.sqrt(n))
    return CodingAuditReport(
        n=n, delta=delta, bound=bound, per_I=per_I,
        classical_leading=n * info,
        quantum_leading=n * chi_c,
        classical_rate=n * info + eta_c + sizeI * sizeJ * math.log2(n + 1),
        quantum_rate=n * chi_c + eta_q + E.dim * sizeJ * math.log2(n + 1),
    )
