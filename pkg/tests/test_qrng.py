import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from delayedchoice.models import InterferometerConfig
from delayedchoice.qrng import Predictor, QrngModel, choice_array, estimate_predictability, next_choice

C, O = InterferometerConfig.CLOSED, InterferometerConfig.OPEN


def chain(model, n, rng):
    seq, prev = [], None
    for _ in range(n):
        prev = next_choice(model, prev, rng)
        seq.append(prev)
    return seq


def test_fair_coin_marginal(rng):
    closed = choice_array(QrngModel(0.5, 0.5), 10**6, rng)
    assert abs(closed.mean() - 0.5) <= 0.002


def test_full_persistence_repeats(rng):
    model = QrngModel(0.5, 1.0)
    assert all(next_choice(model, O, rng) is O for _ in range(1000))
    assert all(next_choice(model, C, rng) is C for _ in range(1000))


def test_lag1_agreement_equals_persistence(rng):
    seq = chain(QrngModel(0.5, 0.52), 10**5, rng)
    agree = np.mean([a is b for a, b in zip(seq, seq[1:])])
    assert abs(agree - 0.52) <= 0.005


@pytest.mark.parametrize("persistence", [0.1, 0.5, 0.8])
def test_agreement_within_four_sigma(persistence, rng):
    n = 10**5
    closed = choice_array(QrngModel(0.3, persistence), n, rng)
    agree = np.mean(closed[1:] == closed[:-1])
    assert abs(agree - persistence) <= 4 * math.sqrt(persistence * (1 - persistence) / (n - 1))


def test_vector_chain_equals_scalar_chain():
    model = QrngModel(0.3, 0.7)
    scalar = chain(model, 5000, np.random.default_rng(9))
    vector = choice_array(model, 5000, np.random.default_rng(9))
    assert [c is C for c in scalar] == vector.tolist()


def test_first_choice_follows_p_closed(rng):
    firsts = [next_choice(QrngModel(0.8, 0.5), None, rng) is C for _ in range(20_000)]
    assert abs(np.mean(firsts) - 0.8) <= 4 * math.sqrt(0.16 / 20_000)


@pytest.mark.parametrize(
    "seq,value,best",
    [
        ([C, C, C, C], 1.0, Predictor.CONSTANT_CLOSED),
        ([C, O, C, O], 1.0, Predictor.FLIP_LAST),
        ([O, O, O], 1.0, Predictor.CONSTANT_OPEN),
    ],
)
def test_predictability_small_sequences(seq, value, best):
    est = estimate_predictability(seq)
    assert est.value == value
    assert est.best_predictor is best
    assert est.n == len(seq)


def test_predictability_too_short():
    with pytest.raises(ValueError):
        estimate_predictability([C])


def test_predictability_of_persistent_source(rng):
    seq = chain(QrngModel(0.5, 0.52), 10**5, rng)
    est = estimate_predictability(seq)
    assert abs(est.value - 0.52) <= 0.01
    assert est.best_predictor is Predictor.REPEAT_LAST


@pytest.mark.parametrize("seed", [1, 2, 3, 4, 5])
def test_fair_iid_sequence_is_unpredictable(seed):
    closed = choice_array(QrngModel(0.5, 0.5), 10**5, np.random.default_rng(seed))
    est = estimate_predictability([C if c else O for c in closed])
    assert est.value <= 0.51


@given(st.lists(st.sampled_from([C, O]), min_size=2, max_size=200))
def test_predictability_at_least_half(seq):
    assert 0.5 <= estimate_predictability(seq).value <= 1.0
