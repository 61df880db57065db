import pytest

from nightday.backend.data_layer.cleaning.clean_series import clean_series
from nightday.backend.data_layer.models.clean_models import CleanPolicy
from nightday.system.exceptions import TooShortError
from nightday.tests.conftest import make_series, random_prices


def test_zero_open_removed_by_default_policy(generator):
    prices = random_prices(generator, 101)
    prices[40] = (0.0, prices[40][1])
    series = make_series(prices)

    cleaned, clean_log = clean_series(series, CleanPolicy())

    assert len(cleaned) == 100
    assert len(clean_log.removals) == 1
    assert clean_log.removals[0].reason == "nonpositive price"
    assert clean_log.removals[0].field == "open"
    assert clean_log.removals[0].date == series.bars[40].date
    assert clean_log.counts_per_reason == {"nonpositive price": 1}
    assert clean_log.is_balanced


def test_overnight_crash_retained_by_default(generator):
    prices = random_prices(generator, 60)
    crash_open = prices[29][1] * 0.7
    prices[30] = (crash_open, crash_open * 1.01)
    series = make_series(prices)

    cleaned, clean_log = clean_series(series)

    assert cleaned == series
    assert clean_log.removals == []


def test_threshold_removes_crash_and_is_idempotent(generator):
    prices = random_prices(generator, 60)
    crash_open = prices[29][1] * 0.7
    prices[30] = (crash_open, crash_open * 1.01)
    policy = CleanPolicy(max_abs_logreturn=0.2)

    once, first_log = clean_series(make_series(prices), policy)
    twice, second_log = clean_series(once, policy)

    assert len(once) == 59
    assert first_log.counts_per_reason == {"log-return above threshold": 1}
    assert twice == once
    assert second_log.removals == []


def test_too_short_after_cleaning_names_the_count(generator):
    series = make_series(random_prices(generator, 10))
    with pytest.raises(TooShortError) as error:
        clean_series(series, CleanPolicy(min_length=30))
    assert error.value.count == 10
    assert "10" in str(error.value)


def test_disabled_policy_is_identity():
    series = make_series([(100.0, 101.0), (-1.0, 0.0), (101.0, 250.0)])
    cleaned, clean_log = clean_series(series, CleanPolicy.disabled())
    assert cleaned.bars == series.bars
    assert clean_log.surviving_bars == clean_log.input_bars == 3


def test_policy_rejects_nonpositive_threshold():
    with pytest.raises(ValueError):
        CleanPolicy(max_abs_logreturn=0.0)
