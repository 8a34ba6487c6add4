import math

import numpy as np
import pytest

from mgraph import theory as T


def dd(pmf):
    return T.DiscreteDistribution.from_dict(pmf)


def test_residual_hand_example():
    mu = T.residual_distribution(dd({1: 0.5, 3: 0.5}))
    assert np.allclose(mu.probabilities, [0.25, 0.0, 0.75])


def test_residual_trivial_cases():
    assert np.allclose(T.residual_distribution(dd({1: 1.0})).probabilities, [1.0])
    assert np.allclose(T.residual_distribution(dd({2: 1.0})).probabilities, [0.0, 1.0])


def test_residual_zero_mean_errors():
    with pytest.raises(ValueError, match="zero mean"):
        T.residual_distribution(dd({0: 1.0}))


def test_extinction_closed_forms():
    # roots of p q^2 - q + (1-p) = 0
    assert math.isclose(T.extinction_probability(dd({0: 0.2, 2: 0.8})),
                        0.25, abs_tol=1e-9)
    assert math.isclose(T.extinction_probability(dd({0: 0.25, 2: 0.75})),
                        1.0 / 3.0, abs_tol=1e-9)


def test_extinction_subcritical():
    assert T.extinction_probability(dd({0: 0.5, 1: 0.3, 2: 0.2})) == 1.0
    assert T.extinction_probability(dd({0: 0.5, 2: 0.5})) == 1.0  # critical


def test_extinction_monotone_in_stochastic_order():
    # more offspring mass at higher counts -> smaller extinction prob
    qs = [T.extinction_probability(dd({0: 1 - p, 2: p}))
          for p in np.linspace(0.55, 0.95, 9)]
    assert all(a >= b - 1e-12 for a, b in zip(qs, qs[1:]))
    # shifting support upward also helps
    q_lo = T.extinction_probability(dd({0: 0.3, 2: 0.7}))
    q_hi = T.extinction_probability(dd({0: 0.3, 3: 0.7}))
    assert q_hi <= q_lo


def test_eta_hand_example():
    eta = T.eta_distribution(dd({0: 0.25, 2: 0.75}))
    assert np.allclose(eta.probabilities, [0.0, 0.5, 0.5], atol=1e-12)


def test_eta_trivial_cases():
    assert np.allclose(T.eta_distribution(dd({1: 1.0})).probabilities, [0.0, 1.0])
    eta = T.eta_distribution(dd({2: 1.0}))
    assert np.allclose(eta.probabilities, [0.0, 0.0, 1.0])


def test_eta_subcritical_errors():
    with pytest.raises(ValueError, match="no giant component"):
        T.eta_distribution(dd({0: 0.9, 2: 0.1}))


def _eta_monte_carlo(mu, trials, seed):
    """Oracle: sample offspring, thin each child by survival, condition
    on at least one survivor."""
    rng = np.random.default_rng(seed)
    q = T.extinction_probability(mu)
    ks = rng.choice(np.arange(mu.probabilities.size), p=mu.probabilities,
                    size=trials)
    js = rng.binomial(ks, 1.0 - q)
    js = js[js > 0]
    return np.bincount(js, minlength=mu.probabilities.size) / js.size


def test_eta_matches_monte_carlo_hand_case():
    mu = dd({0: 0.25, 2: 0.75})
    emp = _eta_monte_carlo(mu, 1_000_000, seed=5)
    eta = T.eta_distribution(mu).probabilities
    assert np.all(np.abs(emp[:eta.size] - eta) <= 0.003)


def test_eta_matches_monte_carlo_random_instances():
    rng = np.random.default_rng(17)
    done = 0
    while done < 5:
        size = int(rng.integers(3, 8))
        raw = rng.random(size) + 0.05
        raw[0] *= 0.6
        p = raw / raw.sum()
        mu = T.DiscreteDistribution(p)
        if mu.mean <= 1.05:
            continue
        eta = T.eta_distribution(mu).probabilities
        emp = _eta_monte_carlo(mu, 400_000, seed=int(rng.integers(1 << 30)))
        assert np.all(np.abs(emp[:eta.size] - eta) <= 0.005)
        done += 1


def test_degree_law_tail():
    lam = T.power_law_degree_distribution(2.5, 100_000)
    p = lam.probabilities
    assert p[0] == 0
    # head mass up to the truncation renormalization (~K^(1-beta))
    assert math.isclose(p[1], 1 - 1.5 ** -1.5, rel_tol=1e-4)
    assert abs(p.sum() - 1) < 1e-9
    # support truncates at the natural maximum degree
    assert lam.support_max == math.ceil(100_000 ** (1 / 1.5))


def test_predict_beta_below_two():
    p = T.predict(1.5, 100_000)
    assert p.t_tilde_fn(400, 0.5) == 1.0  # d >= sqrt(n)
    assert p.t_tilde_fn(3, 0.5) == 2.0
    assert p.d_avg_tilde == 3.0
    assert p.c_exponent == -1.0
    assert p.diameter_pred == 2.0 and p.diameter_pred_alt == 5.0
    assert (p.avg_dist_low, p.avg_dist_high) == (2.0, 3.0)


def test_predict_beta_mid():
    p = T.predict(2.5, 100_000)
    want = 2 * math.log(math.log(100_000)) / math.log(2.0)
    assert math.isclose(p.d_avg_tilde, want, rel_tol=1e-12)
    assert abs(p.d_avg_tilde - 7.05) < 0.1
    assert 0 < p.eta1 < 1 and p.c == p.eta1
    assert p.C == 2 * p.d_avg_tilde / (p.diameter_pred - p.d_avg_tilde)


def test_predict_beta_high_m1_identity():
    n = 100_000
    lam = T.power_law_degree_distribution(3.5, n)
    p = T.predict(3.5, n, lam)
    ident = (lam.moment(2) - lam.mean) / lam.mean
    assert abs(p.m1_mu - ident) < 1e-9
    assert math.isclose(p.d_avg_tilde, math.log(n) / math.log(p.m1_mu),
                        rel_tol=1e-12)


def test_predict_open_cases():
    for beta in (2.0, 3.0):
        with pytest.raises(ValueError, match="open case"):
            T.predict(beta, 1000)
    with pytest.raises(ValueError, match="undefined"):
        T.predict(0.8, 1000)


def test_predict_pure():
    a = T.predict(2.5, 50_000)
    b = T.predict(2.5, 50_000)
    assert a.to_dict() == b.to_dict()
