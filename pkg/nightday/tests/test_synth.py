import numpy as np
import pytest
from pydantic import ValidationError

from nightday.backend.analysis.asymmetry.compute_asymmetry import compute_asymmetry
from nightday.backend.analysis.rank_stats.correlations import spearman
from nightday.backend.analysis.returns.compute_returns import compute_returns, reconstruct_prices
from nightday.backend.analysis.synth.generators import (
    copula_pairs,
    coupled_vol_process,
    generate_return_series,
    null_vol_process,
    population_spearman,
)
from nightday.backend.analysis.synth.write_synth_csv import write_synth_csv
from nightday.backend.data_layer.ingest.load_price_file import load_price_file
from nightday.backend.data_layer.models.price_models import ColumnSpec
from nightday.backend.data_layer.models.synth_spec import SynthSpec
from nightday.system.exceptions import InvalidSpecError


def test_population_spearman_of_gaussian_copula():
    assert population_spearman(0.5) == pytest.approx(0.4826, abs=1e-4)
    assert population_spearman(0.0) == 0.0


@pytest.mark.parametrize("rho", [-0.8, -0.4, 0.0, 0.4, 0.8, 0.5])
def test_copula_sample_spearman_converges(rho):
    for seed in range(5):
        x, y = copula_pairs(SynthSpec(kind="copula_pair", n=20000, rho=rho, seed=seed))
        assert spearman(x, y).estimate == pytest.approx(population_spearman(rho), abs=0.02)


def test_independent_copula_within_three_standard_errors():
    n = 5000
    x, y = copula_pairs(SynthSpec(kind="copula_pair", n=n, rho=0.0, seed=9))
    assert abs(spearman(x, y).estimate) < 3 / np.sqrt(n)


def test_near_comonotone_copula():
    x, y = copula_pairs(SynthSpec(kind="copula_pair", n=5000, rho=0.999, seed=0))
    assert spearman(x, y).estimate > 0.99


def test_decoupled_process_has_no_correlation():
    report = compute_asymmetry(coupled_vol_process(SynthSpec(kind="coupled_vol", n=10000, coupling=0.0, seed=4)))
    assert abs(report.c_nd) < 0.05
    assert abs(report.c_dn) < 0.05


def test_coupled_process_shows_asymmetry():
    for seed in range(5):
        report = compute_asymmetry(coupled_vol_process(SynthSpec(kind="coupled_vol", n=5000, coupling=1.0, seed=seed)))
        assert report.delta > 0.1


def test_null_process_has_no_correlation():
    report = compute_asymmetry(null_vol_process(SynthSpec(kind="null_vol", n=10000, seed=2)))
    assert abs(report.c_nd) < 0.05
    assert abs(report.c_dn) < 0.05


@pytest.mark.parametrize("kind", ["coupled_vol", "null_vol"])
def test_generators_are_deterministic(kind):
    spec = SynthSpec(kind=kind, n=300, coupling=1.0, seed=12)
    first = generate_return_series(spec)
    second = generate_return_series(spec)
    assert first == second
    assert first != generate_return_series(spec.copy(update={"seed": 13}))


def test_generated_returns_are_signed_and_dated():
    returns = null_vol_process(SynthSpec(kind="null_vol", n=1000, seed=0))
    assert len(returns.d) == 1000 and len(returns.n) == 999
    assert (returns.d < 0).any() and (returns.d > 0).any()
    assert returns.dates[0].isoformat() == "2000-01-03"
    assert all(day.weekday() < 5 for day in returns.dates)


def test_reconstructed_prices_obey_the_return_definitions():
    returns = coupled_vol_process(SynthSpec(kind="coupled_vol", n=500, coupling=1.0, seed=0))
    round_trip = compute_returns(reconstruct_prices(returns))
    np.testing.assert_allclose(round_trip.d, returns.d, rtol=0, atol=1e-12)
    np.testing.assert_allclose(round_trip.n, returns.n, rtol=0, atol=1e-12)


def test_synthetic_csv_reads_back_with_default_columns(tmp_path):
    returns = null_vol_process(SynthSpec(kind="null_vol", n=200, seed=5))
    path = write_synth_csv(returns, tmp_path / "null.csv")

    assert path.read_text(encoding="utf-8").splitlines()[0] == "Date,Open,Close"
    series, ingest_log = load_price_file(path, ColumnSpec())
    assert ingest_log.rejected_rows == []
    read_back = compute_returns(series)
    np.testing.assert_allclose(read_back.d, returns.d, rtol=0, atol=1e-12)
    np.testing.assert_allclose(read_back.n, returns.n, rtol=0, atol=1e-12)


@pytest.mark.parametrize("fields", [{"n": 1}, {"rho": 1.0}, {"rho": -1.5}, {"coupling": -0.1}, {"seed": -1}])
def test_invalid_spec_is_rejected(fields):
    with pytest.raises(ValidationError):
        SynthSpec(**{"kind": "copula_pair", "n": 100, **fields})


def test_wrong_kind_for_generator():
    with pytest.raises(InvalidSpecError):
        copula_pairs(SynthSpec(kind="null_vol", n=100))
    with pytest.raises(InvalidSpecError):
        coupled_vol_process(SynthSpec(kind="null_vol", n=100))


def test_copula_volatilities_set_c_nd_only():
    returns = generate_return_series(SynthSpec(kind="copula_pair", n=20000, rho=0.5, seed=1))
    report = compute_asymmetry(returns)
    assert report.c_nd == pytest.approx(population_spearman(0.5), abs=0.02)
    assert abs(report.c_dn) < 0.03
    assert returns.symbol == "copula_pair_seed1"
