"""Executable verifiers for the combinatorics behind the curvature margin.

Three layers live here:

* the majorization trick (weighted-sum domination transfers through a
  decreasing weight sequence), checked hypothesis by hypothesis;
* window-restricted binomial inequalities, both the continuous form
  (quadrature over closed-form intervals) and the discrete form (exact
  arbitrary-precision integers, zero tolerance);
* the coefficient-level inequalities that tie log-concave weights to the
  curvature margin, plus a brute-force midpoint oracle for the certifier.

Seeded random generators for log-concave weight vectors and concave
piecewise-linear mixing functions round out the module; they drive both
the randomized sweeps and the test suite.
"""

import warnings
from dataclasses import dataclass

import numpy as np

from .mixtures import (
    ContinuousMixture,
    DiscreteMixture,
    QuadratureError,
    _refinement_gap,
    density_grid,
    is_log_concave_weights,
)
from .quadrature import QuadratureConfig, panel_nodes
from .special import DomainError, int_binom_exact, log_abs_gen_binom_ext

CONTINUOUS_WHICH = ("ineq4", "ineq5", "ineq6")
DISCRETE_WHICH = ("ineq2p1", "ineq2p2", "ineq2p3")

# direction of each inequality: +1 means lhs >= rhs, -1 means lhs <= rhs
_DIRECTION = {
    "ineq4": 1,
    "ineq5": -1,
    "ineq6": 1,
    "ineq2p1": 1,
    "ineq2p2": -1,
    "ineq2p3": 1,
}


@dataclass(frozen=True)
class LemmaCase:
    """One evaluated inequality instance: parameters plus both sides.

    window is q (continuous) or k (discrete). margin is oriented so the
    inequality holds iff margin >= 0 (up to quadrature tolerance in the
    continuous case; exactly in the discrete case). clipped records that
    the requested q exceeded the widest window for which the integration
    set stays inside its constraint strip and was reduced accordingly.
    """

    M: float
    n: float
    window: float
    which: str
    lhs: float
    rhs: float
    clipped: bool = False

    @property
    def margin(self):
        diff = self.lhs - self.rhs
        return diff if _DIRECTION[self.which] > 0 else -diff

    def holds(self, tol: float = 0.0) -> bool:
        return self.margin >= -tol


# ---------------------------------------------------------------------------
# majorization


@dataclass(frozen=True)
class MajorizationInstance:
    """Tabulated quadruple (a, b, u, v) for the majorization hypothesis.

    With m set, the arrays sample the functions on a uniform grid over
    [0, m] and integrals are trapezoid sums; with m=None they are plain
    finite sequences and integrals are plain sums.
    """

    a: np.ndarray
    b: np.ndarray
    u: np.ndarray
    v: np.ndarray
    m: float | None = None

    def __post_init__(self):
        arrays = [np.asarray(arr, dtype=float) for arr in (self.a, self.b, self.u, self.v)]
        n = arrays[0].shape[0]
        if any(arr.ndim != 1 or arr.shape[0] != n for arr in arrays):
            raise ValueError("a, b, u, v must be 1-D arrays of equal length")
        if n < 2 and self.m is not None:
            raise ValueError("continuous tabulation needs at least two grid points")
        if self.m is not None and not self.m > 0.0:
            raise ValueError("domain length m must be positive")
        for name, arr in zip("abuv", arrays):
            object.__setattr__(self, name, arr)

    def integration_weights(self) -> np.ndarray:
        if self.m is None:
            return np.ones_like(self.a)
        h = self.m / (self.a.shape[0] - 1)
        w = np.full(self.a.shape[0], h)
        w[0] = w[-1] = 0.5 * h
        return w


def check_majorization(inst: MajorizationInstance, tol: float = 1e-10) -> dict:
    """Verify the majorization hypotheses and conclusion numerically.

    Hypotheses: a decreasing, a >= b >= 0, u and v nonnegative, and the
    running (weighted) sums of u dominate those of v. Conclusion:
    sum(a*u) >= sum(b*v) in the same weighting. Whenever hypotheses_ok is
    reported the conclusion is guaranteed up to tol * scale rounding.
    """
    w = inst.integration_weights()
    scale = max(1.0, float(np.max(np.abs(inst.a))), float(np.max(np.abs(inst.u))),
                float(np.max(np.abs(inst.v))))
    slack = tol * scale
    nonneg = all(bool(np.all(arr >= -slack)) for arr in (inst.a, inst.b, inst.u, inst.v))
    a_decreasing = bool(np.all(np.diff(inst.a) <= slack))
    a_dominates_b = bool(np.all(inst.a >= inst.b - slack))
    run_u = np.cumsum(w * inst.u)
    run_v = np.cumsum(w * inst.v)
    running_ok = bool(np.all(run_u >= run_v - slack * np.maximum(1.0, np.abs(run_v))))
    hypotheses_ok = nonneg and a_decreasing and a_dominates_b and running_ok
    lhs = float(np.dot(w, inst.a * inst.u))
    rhs = float(np.dot(w, inst.b * inst.v))
    conclusion_scale = max(1.0, abs(lhs), abs(rhs))
    return {
        "hypotheses_ok": hypotheses_ok,
        "conclusion_ok": lhs >= rhs - tol * conclusion_scale,
        "lhs": lhs,
        "rhs": rhs,
    }


# ---------------------------------------------------------------------------
# window-restricted binomial inequalities, continuous form


def _window_interval(M: float, n: float, q: float, which: str):
    """Closed-form integration interval for one inequality's window set.

    Each set is {lower constraints} intersected with |2s - c| <= q around
    the window center c. The requested q is clipped to the widest value
    keeping the interval inside the constraint strip (beyond that the
    lower constraints truncate the window asymmetrically and the
    inequality is no longer covered). Returns (lo, hi, clipped) with
    lo > hi meaning the empty set.
    """
    if which == "ineq4":
        center, q_max = n, min(n, 2.0 * M - n)
    elif which == "ineq5":
        center, q_max = n + 1.0, min(n + 1.0, 2.0 * M - n - 1.0)
    elif which == "ineq6":
        center, q_max = n, min(n + 2.0, 2.0 * M - n - 2.0)
    else:
        raise ValueError(f"unknown continuous inequality {which!r}")
    q_eff = min(q, q_max)
    if q_eff <= 0.0:
        return 0.0, -1.0, True
    return (center - q_eff) / 2.0, (center + q_eff) / 2.0, q_eff < q


def _binom_ext_product(m1, s1, m2, s2):
    log1, sign1 = log_abs_gen_binom_ext(m1, s1)
    log2, sign2 = log_abs_gen_binom_ext(m2, s2)
    with np.errstate(invalid="ignore"):
        log_sum = log1 + log2
    vals = np.zeros_like(log_sum)
    finite = np.isfinite(log_sum)
    vals[finite] = sign1[finite] * sign2[finite] * np.exp(log_sum[finite])
    return vals


def _lemma2_integrands(M: float, n: float, which: str):
    def lhs(s):
        return _binom_ext_product(M - 1.0, s, M - 1.0, n - s)

    if which in ("ineq4", "ineq5"):
        def rhs(s):
            return _binom_ext_product(M, s, M - 2.0, n - s)
    else:
        def rhs(s):
            return _binom_ext_product(M, s + 1.0, M - 2.0, n - s - 1.0)

    return lhs, rhs


def lemma2_continuous(
    M: float, n: float, q: float, which: str, quad: QuadratureConfig | None = None
) -> LemmaCase:
    """Evaluate one of the three window-restricted integral inequalities.

    The binomial factors use the extension beyond their positivity domain
    (the same Gamma functional equations behind the Pascal identities),
    since the window set can carry the second factor's argument past its
    positive range even after clipping.
    """
    if not M > 1.0:
        raise DomainError(f"lemma2_continuous requires M > 1, got {M!r}")
    if not q > 0.0:
        raise DomainError(f"lemma2_continuous requires q > 0, got {q!r}")
    if not n > -2.0:
        raise DomainError(f"lemma2_continuous requires n > -2, got {n!r}")
    if which not in CONTINUOUS_WHICH:
        raise ValueError(f"which must be one of {CONTINUOUS_WHICH}, got {which!r}")
    config = quad if quad is not None else QuadratureConfig()
    lo, hi, clipped = _window_interval(M, n, q, which)
    if lo > hi:
        return LemmaCase(M, n, q, which, 0.0, 0.0, clipped=True)
    lhs_fn, rhs_fn = _lemma2_integrands(M, n, which)
    results = []
    for fn in (lhs_fn, rhs_fn):
        vals = []
        for cfg in (config, config.refined()):
            s, w = panel_nodes([lo, hi], cfg)
            vals.append(float(np.dot(w, fn(s))))
        if _refinement_gap(vals[0], vals[1]) > config.abs_tol:
            raise QuadratureError(
                f"lemma integrand quadrature did not converge for {which} "
                f"(M={M}, n={n}, q={q})"
            )
        results.append(vals[1])
    return LemmaCase(M, n, q, which, results[0], results[1], clipped=clipped)


# ---------------------------------------------------------------------------
# discrete form, exact arithmetic


def lemma2_discrete(M: int, n: int, k: int, which: str) -> LemmaCase:
    """Exact-integer evaluation of one window-restricted binomial sum inequality."""
    if not (isinstance(M, (int, np.integer)) and M >= 1):
        raise DomainError(f"lemma2_discrete requires a positive integer M, got {M!r}")
    if not (isinstance(n, (int, np.integer)) and n >= 0):
        raise DomainError(f"lemma2_discrete requires a nonnegative integer n, got {n!r}")
    if not (isinstance(k, (int, np.integer)) and 2 * k <= n + 1):
        raise DomainError(f"lemma2_discrete requires integer k <= (n+1)/2, got k={k!r}, n={n!r}")
    if which not in DISCRETE_WHICH:
        raise ValueError(f"which must be one of {DISCRETE_WHICH}, got {which!r}")
    M, n, k = int(M), int(n), int(k)
    hi = n - k + 1 if which == "ineq2p2" else n - k
    lhs = sum(int_binom_exact(M - 1, i) * int_binom_exact(M - 1, n - i) for i in range(k, hi + 1))
    if which == "ineq2p3":
        rhs = sum(
            int_binom_exact(M, i + 1) * int_binom_exact(M - 2, n - i - 1) for i in range(k, hi + 1)
        )
    else:
        rhs = sum(int_binom_exact(M, i) * int_binom_exact(M - 2, n - i) for i in range(k, hi + 1))
    return LemmaCase(M, n, k, which, lhs, rhs)


def discrete_lemma_sweep(max_M: int = 12, k_min: int = -1, min_M: int = 2) -> list[LemmaCase]:
    """Exhaustively evaluate all three discrete inequalities.

    Covers every min_M <= M <= max_M, 0 <= n <= 2M-2, and integer k from
    k_min up to floor((n+1)/2), skipping empty summation ranges. k <= 0
    reproduces the full-range Vandermonde equality since out-of-range
    terms vanish. The sweep starts at M = 2 because the middle inequality
    is vacuously broken at M = 1: its right side carries a C(-1, .)
    factor that the zero-extension convention kills entirely (the factor
    only ever arises from second derivatives, which need M >= 2).
    """
    cases = []
    for M in range(min_M, max_M + 1):
        for n in range(0, 2 * M - 1):
            for k in range(k_min, (n + 1) // 2 + 1):
                for which in DISCRETE_WHICH:
                    hi = n - k + 1 if which == "ineq2p2" else n - k
                    if hi < k:
                        continue
                    cases.append(lemma2_discrete(M, n, k, which))
    return cases


# ---------------------------------------------------------------------------
# coefficient-level inequalities for weight vectors


def _weight_at(weights: np.ndarray, i: int) -> float:
    if 0 <= i < weights.shape[0]:
        return float(weights[i])
    return 0.0


def _warn_if_not_log_concave(weights, M):
    mix = DiscreteMixture(M, weights)
    if not is_log_concave_weights(mix):
        warnings.warn("weight vector is not log-concave; the inequality direction is not guaranteed",
                      stacklevel=3)


def core_inequalities_discrete(weights, M: int, n: int, which: int) -> tuple[float, float]:
    """Both sides of one coefficient-level inequality (which in {13, 14, 15}).

    For log-concave weights the direction is lhs >= rhs for 13 and 15 and
    lhs <= rhs for 14; a non-log-concave input is reported by warning, not
    an error. Binomials are exact integers; weights enter as floats.
    """
    if which not in (13, 14, 15):
        raise ValueError(f"which must be 13, 14 or 15, got {which!r}")
    if not 0 <= n <= 2 * M - 2:
        raise DomainError(f"n must satisfy 0 <= n <= 2M-2, got n={n!r}, M={M!r}")
    w = np.asarray(weights, dtype=float)
    _warn_if_not_log_concave(w, M)
    lhs = 0.0
    rhs = 0.0
    for i in range(-2, n + 3):
        j = n - i
        cl = int_binom_exact(M - 1, i) * int_binom_exact(M - 1, j)
        cr = int_binom_exact(M, i) * int_binom_exact(M - 2, j)
        if which == 13:
            lhs += _weight_at(w, i) * _weight_at(w, j) * cl
            rhs += _weight_at(w, i) * _weight_at(w, j) * cr
        elif which == 14:
            lhs += _weight_at(w, i) * _weight_at(w, j + 1) * cl
            rhs += _weight_at(w, i) * _weight_at(w, j + 1) * cr
        else:
            lhs += _weight_at(w, i + 1) * _weight_at(w, j + 1) * cl
            rhs += _weight_at(w, i) * _weight_at(w, j + 2) * cr
    return lhs, rhs


def coefficient_inequality_12(weights, M: int, n: int) -> tuple[float, float]:
    """Both sides of the coefficient identity behind the curvature margin.

    lhs pairs first differences against C(M-1,i)C(M-1,j); rhs pairs a
    weight against a second difference with C(M,i)C(M-2,j); indices run
    over i+j = n with out-of-range weights equal to zero. For log-concave
    weights lhs >= rhs, and M(M-1) * sum_n (lhs-rhs) (1-x)^n x^(2M-2-n)
    equals ((M-1)/M) g'(x)^2 - g(x) g''(x).
    """
    if not 0 <= n <= 2 * M - 2:
        raise DomainError(f"n must satisfy 0 <= n <= 2M-2, got n={n!r}, M={M!r}")
    w = np.asarray(weights, dtype=float)

    def d1(i):
        return _weight_at(w, i) - _weight_at(w, i + 1)

    def d2(i):
        return _weight_at(w, i) - 2.0 * _weight_at(w, i + 1) + _weight_at(w, i + 2)

    lhs = 0.0
    rhs = 0.0
    for i in range(-2, n + 3):
        j = n - i
        lhs += d1(i) * d1(j) * int_binom_exact(M - 1, i) * int_binom_exact(M - 1, j)
        rhs += _weight_at(w, i) * d2(j) * int_binom_exact(M, i) * int_binom_exact(M - 2, j)
    return lhs, rhs


# ---------------------------------------------------------------------------
# brute-force midpoint oracle


def brute_force_logconcavity(mix, samples: int = 1000, seed: int = 0, tol: float = 1e-10) -> dict:
    """Direct midpoint-definition test over random (x, y, lambda) triples.

    Independent of the analytic-derivative machinery: only density values
    enter. Returns {"ok": bool, "witness": (x, y, lam) or None}.
    """
    rng = np.random.default_rng(seed)
    eps = 1e-9
    x = eps + (1.0 - 2.0 * eps) * rng.random(samples)
    y = eps + (1.0 - 2.0 * eps) * rng.random(samples)
    lam = rng.random(samples)
    mid = lam * x + (1.0 - lam) * y
    pts = np.concatenate([x, y, mid])
    dens = density_grid(mix, pts)
    fx, fy, fm = dens[:samples], dens[samples : 2 * samples], dens[2 * samples :]
    applicable = (fx > 0.0) & (fy > 0.0)
    rhs = np.zeros_like(fx)
    rhs[applicable] = np.exp(
        lam[applicable] * np.log(fx[applicable]) + (1.0 - lam[applicable]) * np.log(fy[applicable])
    )
    bad = applicable & (fm < rhs - tol * rhs)
    if np.any(bad):
        i = int(np.flatnonzero(bad)[0])
        return {"ok": False, "witness": (float(x[i]), float(y[i]), float(lam[i]))}
    return {"ok": True, "witness": None}


# ---------------------------------------------------------------------------
# seeded random generators (drive the sweeps and the test suite)


def random_log_concave_weights(rng, M: int, max_step: float = 1.0, zero_edges: bool = False):
    """Random log-concave weight vector of length M+1.

    Built as exp of a concave sequence: increments are the running sums of
    a decreasing slope sequence, so second differences are <= 0 by
    construction. max_step bounds |log w_{i+1} - log w_i|, keeping the
    curvature margins well inside floating-point resolution. With
    zero_edges, a random prefix and/or suffix is zeroed out.
    """
    start = rng.uniform(-0.5 * max_step, 0.5 * max_step)
    drops = rng.uniform(0.0, max_step / max(M, 1), size=max(M, 1))
    slopes = start - np.concatenate([[0.0], np.cumsum(drops[:-1])]) if M >= 1 else np.empty(0)
    levels = np.concatenate([[0.0], np.cumsum(slopes)])
    levels -= np.max(levels)
    w = np.exp(levels)
    if zero_edges:
        lead = int(rng.integers(0, max(1, M // 3)))
        trail = int(rng.integers(0, max(1, M // 3)))
        if lead:
            w[:lead] = 0.0
        if trail:
            w[len(w) - trail :] = 0.0
        if not np.any(w > 0.0):
            w[M // 2] = 1.0
    return w


def random_concave_mixture(
    rng, M: float | None = None, max_segments: int = 16, m_range=(2.0, 20.0)
) -> ContinuousMixture:
    """Random continuous mixture with a concave piecewise-linear log mixing.

    Chord slopes decrease strictly across the knots, so the represented
    mixing function is log-concave and the curvature margin stays safely
    positive at grid resolution.
    """
    if M is None:
        lo, hi = m_range
        M = lo + (hi - lo) * (1.0 - rng.random())
    M = float(M)
    n_seg = int(rng.integers(1, max_segments + 1))
    interior = np.sort(rng.uniform(0.05 * M, 0.95 * M, size=n_seg - 1))
    # enforce a minimum knot separation so panels stay well conditioned
    sep = 1e-3 * M
    kept = []
    last = 0.0
    for t in interior:
        if t - last >= sep and M - t >= sep:
            kept.append(t)
            last = t
    knots = np.concatenate([[0.0], kept, [M]])
    seg = np.diff(knots)
    start_slope = rng.uniform(-1.5, 1.5)
    gaps = rng.uniform(0.05, 2.0 / max(len(seg), 1), size=len(seg))
    slopes = start_slope - np.concatenate([[0.0], np.cumsum(gaps[:-1])])
    levels = np.concatenate([[0.0], np.cumsum(slopes * seg)])
    levels -= np.max(levels)
    return ContinuousMixture(M, knots, levels)


def continuous_lemma_sweep(
    count: int = 50, seed: int = 0, quad: QuadratureConfig | None = None
) -> list[LemmaCase]:
    """Randomized sweep of the three continuous inequalities.

    Draws M in (1, 20], n in (-2, 2M-2] and q in (0, 2M]; each draw is
    evaluated for all three inequalities (3 * count cases).
    """
    rng = np.random.default_rng(seed)
    cases = []
    for _ in range(count):
        M = 1.0 + 19.0 * (1.0 - rng.random())
        n = -2.0 + 2.0 * M * (1.0 - rng.random())
        q = 2.0 * M * (1.0 - rng.random())
        for which in CONTINUOUS_WHICH:
            cases.append(lemma2_continuous(M, n, q, which, quad))
    return cases
