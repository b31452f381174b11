import json
import math

import numpy as np
import pytest

from betamix import (
    ContinuousMixture,
    DiscreteMixture,
    DomainError,
    QuadratureConfig,
    QuadratureError,
    cdf,
    eval_density_continuous,
    eval_derivs_continuous,
    is_log_concave_weights,
    mixture_from_json,
    mixture_to_json,
    normalization,
    random_concave_mixture,
    sample,
)
from betamix.mixtures import ContinuousEvaluator, discrete_density_grid

from oracles import binom_ext_oracle, central_d1, central_d2, ks_distance, piecewise_linear_log_alpha

NEG_INF = float("-inf")


def flat_mixture(M=2.0):
    return ContinuousMixture(M, [0.0, M], [0.0, 0.0])


def test_flat_mixing_frozen_value():
    # integral_0^2 C(2,s) * 0.25 ds, frozen from a 30-digit quadrature
    v = eval_density_continuous(flat_mixture(), 0.5)
    assert v == pytest.approx(0.81519570563115379181, rel=1e-12)
    assert eval_density_continuous(flat_mixture(), 0.25) == pytest.approx(
        0.71937248153625242279, rel=1e-12
    )
    assert eval_density_continuous(flat_mixture(), 0.9) == pytest.approx(
        0.53818267485120302906, rel=1e-12
    )


def test_density_against_riemann_oracle():
    mix = ContinuousMixture(3.0, [0.0, 0.7, 1.9, 3.0], [0.3, 0.9, 0.4, -1.2])
    n = 1_000_000
    s = (np.arange(n) + 0.5) * (3.0 / n)
    alpha = piecewise_linear_log_alpha(mix.knots, mix.log_alpha, s)
    for x in (0.2, 0.55, 0.9):
        ref = float(np.mean(alpha * binom_ext_oracle(3.0, s) * (1 - x) ** s * x ** (3.0 - s)) * 3.0)
        assert eval_density_continuous(mix, x) == pytest.approx(ref, rel=1e-7)


def test_delta_limit_single_bump():
    # mass-1 spike at s*=1 with M=2 approaches C(2,1)(1-x)x as width -> 0
    x = 0.37
    target = 2.0 * (1.0 - x) * x
    drop = 40.0
    errors = []
    for w in (0.2, 0.1, 0.05):
        peak = math.log(drop / (2.0 * w * (1.0 - math.exp(-drop))))
        mix = ContinuousMixture(
            2.0,
            [0.0, 1.0 - w, 1.0, 1.0 + w, 2.0],
            [-60.0, peak - drop, peak, peak - drop, -60.0],
        )
        # panel density must track the bump's log-slope drop/w
        quad = QuadratureConfig(panels_per_unit=int(20.0 / w))
        errors.append(abs(eval_density_continuous(mix, x, quad=quad) - target))
    assert errors[0] > errors[1] > errors[2]
    assert errors[2] < 1e-3


def test_zero_mixture_density():
    mix = ContinuousMixture(2.0, [0.0, 2.0], [NEG_INF, NEG_INF])
    assert mix.is_zero
    assert eval_density_continuous(mix, 0.5) == 0.0


def test_partial_dead_zone():
    # a -inf knot zeroes out both adjacent intervals, leaving only [2, 3]
    mix = ContinuousMixture(3.0, [0.0, 1.0, 2.0, 3.0], [0.0, NEG_INF, 0.0, 0.0])
    assert list(mix.segment_active()) == [False, False, True]
    n = 1_000_000
    s = 2.0 + (np.arange(n) + 0.5) / n
    x = 0.45
    ref = float(np.mean(binom_ext_oracle(3.0, s) * (1 - x) ** s * x ** (3.0 - s)))
    assert eval_density_continuous(mix, x) == pytest.approx(ref, rel=1e-9)


def test_flat_mixing_derivative_is_boundary_only():
    # alpha(s) - alpha(s+1) vanishes on [0, M-1] for constant alpha, so f'
    # reduces to the two boundary strips; finite differences confirm.
    mix = flat_mixture(3.0)
    for x in (0.3, 0.7):
        res = eval_derivs_continuous(mix, x)
        fd = central_d1(lambda t: eval_density_continuous(mix, t), x)
        assert res.d1 == pytest.approx(fd, rel=1e-6)


def test_log_linear_mixing_derivatives():
    # l(s) = s * ln r, the continuous analog of geometric weights
    r = 2.0
    M = 4.0
    mix = ContinuousMixture(M, [0.0, M], [0.0, M * math.log(r)])
    for x in (0.25, 0.6):
        res = eval_derivs_continuous(mix, x)
        g = lambda t: eval_density_continuous(mix, t)
        assert res.d1 == pytest.approx(central_d1(g, x), rel=1e-6)
        assert res.d2 == pytest.approx(central_d2(g, x), rel=1e-5)


def test_derivatives_against_finite_differences_random():
    rng = np.random.default_rng(21)
    checked = 0
    while checked < 60:
        mix = random_concave_mixture(rng, m_range=(2.2, 12.0))
        x = rng.uniform(0.01, 0.99)
        ev = ContinuousEvaluator(mix)
        xs = np.array([x - 1e-5, x, x + 1e-5])
        f3 = ev.density(xs)
        d1 = float(ev.d1(xs[1:2])[0])
        d2 = float(ev.d2(xs[1:2])[0])
        fd1 = (f3[2] - f3[0]) / 2e-5
        fd2 = (f3[2] - 2.0 * f3[1] + f3[0]) / 1e-10
        M = mix.M
        assert abs(d1 - fd1) <= 1e-5 * max(abs(fd1), M * f3[1])
        assert abs(d2 - fd2) <= 1e-5 * max(abs(fd2), M * (M - 1) * f3[1])
        checked += 1


def test_derivatives_with_dead_zones():
    # derivative kernels must handle mixing functions that vanish on a
    # prefix or suffix of [0, M] (shifted difference supports change)
    cases = [
        ContinuousMixture(4.0, [0.0, 1.0, 2.5, 4.0], [NEG_INF, 0.4, 0.8, -0.6]),
        ContinuousMixture(3.5, [0.0, 2.0, 3.0, 3.5], [0.2, 0.9, NEG_INF, NEG_INF]),
    ]
    for mix in cases:
        ev = ContinuousEvaluator(mix)
        M = mix.M
        for x in (0.15, 0.5, 0.85):
            pts = np.array([x - 1e-5, x, x + 1e-5])
            f3 = ev.density(pts)
            d1 = float(ev.d1(pts[1:2])[0])
            d2 = float(ev.d2(pts[1:2])[0])
            fd1 = (f3[2] - f3[0]) / 2e-5
            fd2 = (f3[2] - 2.0 * f3[1] + f3[0]) / 1e-10
            assert abs(d1 - fd1) <= 1e-5 * max(abs(fd1), M * f3[1])
            assert abs(d2 - fd2) <= 1e-5 * max(abs(fd2), M * (M - 1) * f3[1])


def test_derivs_require_order_above_two():
    mix = flat_mixture(1.8)
    with pytest.raises(DomainError):
        eval_derivs_continuous(mix, 0.5)


def test_eval_domain_checks():
    mix = flat_mixture()
    with pytest.raises(DomainError):
        eval_density_continuous(mix, 0.0)
    with pytest.raises(DomainError):
        eval_density_continuous(mix, 1.0)


def test_normalization_flat():
    # integral of alpha over [0, 2] is 2, each kernel integrates to 1/(M+1)
    assert normalization(flat_mixture()) == pytest.approx(2.0 / 3.0, rel=1e-12)


def test_cdf_endpoints_and_uniform():
    mix = flat_mixture()
    assert cdf(mix, 0.0) == 0.0
    assert cdf(mix, 1.0) == pytest.approx(normalization(mix), rel=1e-9)
    vals = [cdf(mix, x) for x in np.linspace(0.0, 1.0, 11)]
    assert np.all(np.diff(vals) >= -1e-14)


def test_quadrature_failure_surfaces():
    mix = ContinuousMixture(3.0, [0.0, 1.5, 3.0], [0.0, 1.0, -2.0])
    crude = QuadratureConfig(panels_per_unit=1, nodes_per_panel=1, abs_tol=1e-12)
    with pytest.raises(QuadratureError):
        eval_density_continuous(mix, 0.41, quad=crude)


def test_discrete_continuous_agreement():
    # bumps of shrinking width concentrated at the integers converge to the
    # discrete mixture; the error must decrease monotonically with width
    M = 3
    weights = np.array([1.0, 2.0, 1.5, 0.8])
    drop = 40.0
    xs = np.array([0.3, 0.62])
    target = discrete_density_grid(DiscreteMixture(M, weights), xs)
    errors = []
    for w in (0.2, 0.1, 0.05):
        knots = [0.0, w]
        ramp = 1.0 - math.exp(-drop)
        levels = [math.log(weights[0] * drop / (w * ramp)), math.log(weights[0] * drop / (w * ramp)) - drop]
        for i in range(1, M):
            peak = math.log(weights[i] * drop / (2.0 * w * ramp))
            knots.extend([i - w, i, i + w])
            levels.extend([peak - drop, peak, peak - drop])
        peak = math.log(weights[M] * drop / (w * ramp))
        knots.extend([M - w, M])
        levels.extend([peak - drop, peak])
        mix = ContinuousMixture(float(M), knots, levels)
        ev = ContinuousEvaluator(mix, QuadratureConfig(panels_per_unit=int(20.0 / w)))
        errors.append(float(np.max(np.abs(ev.density(xs) - target))))
    assert errors[0] > errors[1] > errors[2]
    assert errors[2] < 5e-3


def test_sampling_continuous():
    mix = ContinuousMixture(3.0, [0.0, 1.5, 3.0], [0.0, 0.5, -1.0])
    draws = sample(mix, 50_000, seed=3)
    assert np.all((draws > 0.0) & (draws < 1.0))
    # compare the empirical CDF against quadrature CDF values on a grid
    total = normalization(mix)
    grid = np.linspace(0.0, 1.0, 201)
    model = np.array([cdf(mix, float(x)) for x in grid]) / total
    empirical = np.searchsorted(np.sort(draws), grid, side="right") / draws.size
    assert np.max(np.abs(empirical - model)) <= 0.01


def test_json_round_trip():
    mix = ContinuousMixture(2.5, [0.0, 1.0, 2.5], [0.1, NEG_INF, -0.3])
    blob = json.dumps(mixture_to_json(mix))
    back = mixture_from_json(json.loads(blob))
    np.testing.assert_array_equal(back.knots, mix.knots)
    np.testing.assert_array_equal(back.log_alpha, mix.log_alpha)
    disc = DiscreteMixture(2, [1.0, 0.5, 0.0])
    back = mixture_from_json(json.loads(json.dumps(mixture_to_json(disc))))
    np.testing.assert_array_equal(back.weights, disc.weights)
    assert back.M == 2


def test_json_accepts_minus_inf_string():
    mix = mixture_from_json({"M": 2.0, "knots": [0.0, 2.0], "log_alpha": ["-inf", 0.0]})
    assert np.isneginf(mix.log_alpha[0])


@pytest.mark.parametrize(
    "obj",
    [
        {"M": 2.0},
        {"M": 2.5, "weights": [1.0, 1.0]},
        {"M": 2.0, "knots": [0.0, 2.0], "log_alpha": ["nope", 0.0]},
        [1, 2, 3],
    ],
)
def test_json_rejects_malformed(obj):
    with pytest.raises(ValueError):
        mixture_from_json(obj)


@pytest.mark.parametrize(
    "M, knots, log_alpha",
    [
        (1.0, [0.0, 1.0], [0.0, 0.0]),          # order must exceed 1
        (2.0, [0.0, 1.0], [0.0, 0.0]),          # grid must end at M
        (2.0, [0.5, 2.0], [0.0, 0.0]),          # grid must start at 0
        (2.0, [0.0, 1.0, 1.0, 2.0], [0.0, 0.0, 0.0, 0.0]),  # strictly increasing
        (2.0, [0.0, 2.0], [0.0, np.inf]),       # +inf forbidden
        (2.0, [0.0, 2.0], [0.0]),               # length mismatch
    ],
)
def test_invalid_construction(M, knots, log_alpha):
    with pytest.raises(ValueError):
        ContinuousMixture(M, knots, log_alpha)


def test_log_concavity_checker_discrete():
    assert is_log_concave_weights(DiscreteMixture(3, [1.0, 2.0, 2.0, 1.0]))
    assert is_log_concave_weights(DiscreteMixture(2, [0.0, 1.0, 0.5]))  # zero prefix ok
    assert not is_log_concave_weights(DiscreteMixture(2, [1.0, 0.01, 1.0]))
    assert not is_log_concave_weights(DiscreteMixture(2, [1.0, 0.0, 1.0]))  # support gap
    assert is_log_concave_weights(DiscreteMixture(2, [0.0, 0.0, 0.0]))  # vacuous


def test_log_concavity_checker_continuous():
    assert is_log_concave_weights(flat_mixture())
    concave = ContinuousMixture(2.0, [0.0, 1.0, 2.0], [0.0, 0.5, 0.0])
    convex = ContinuousMixture(2.0, [0.0, 1.0, 2.0], [0.0, -0.5, 0.5])
    assert is_log_concave_weights(concave)
    assert not is_log_concave_weights(convex)
    # a single -inf knot zeroes both adjacent segments, so the support of
    # [0, -inf, 0, 0] is still one interval and the mixing is log-concave
    one_sided = ContinuousMixture(3.0, [0.0, 1.0, 2.0, 3.0], [0.0, NEG_INF, 0.0, 0.0])
    assert is_log_concave_weights(one_sided)
    gap = ContinuousMixture(
        4.0, [0.0, 1.0, 2.0, 3.0, 4.0], [0.0, 0.0, NEG_INF, 0.0, 0.0]
    )
    assert not is_log_concave_weights(gap)
    rng = np.random.default_rng(5)
    for _ in range(20):
        assert is_log_concave_weights(random_concave_mixture(rng))


def test_quadrature_config_validation():
    with pytest.raises(ValueError):
        QuadratureConfig(rule="trapezoid")
    with pytest.raises(ValueError):
        QuadratureConfig(panels_per_unit=0)
    with pytest.raises(ValueError):
        QuadratureConfig(rule="composite-Simpson", nodes_per_panel=4)
    with pytest.raises(ValueError):
        QuadratureConfig(abs_tol=0.0)
    assert QuadratureConfig().refined().panels_per_unit == 16


def test_simpson_rule_agrees_with_gauss():
    mix = ContinuousMixture(3.0, [0.0, 1.2, 3.0], [0.2, 0.7, -0.9])
    simpson = QuadratureConfig(rule="composite-Simpson", panels_per_unit=24, nodes_per_panel=9)
    for x in (0.3, 0.8):
        a = eval_density_continuous(mix, x)
        b = eval_density_continuous(mix, x, quad=simpson)
        assert a == pytest.approx(b, rel=1e-9)


def test_evaluations_order_independent():
    # grid evaluation must be bitwise identical to pointwise evaluation
    mix = ContinuousMixture(3.0, [0.0, 1.5, 3.0], [0.0, 0.4, -0.8])
    ev = ContinuousEvaluator(mix)
    xs = np.linspace(0.1, 0.9, 9)
    batch = ev.density(xs)
    single = np.array([ev.density(np.array([x]))[0] for x in xs])
    np.testing.assert_array_equal(batch, single)
