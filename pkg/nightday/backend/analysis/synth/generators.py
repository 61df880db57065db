from typing import Tuple

import numpy as np
import pandas as pd

from nightday.backend.data_layer.models.return_series import ReturnSeries
from nightday.backend.data_layer.models.synth_spec import SynthKind, SynthSpec
from nightday.system.exceptions import InvalidSpecError

STUDENT_T_DEGREES_OF_FREEDOM = 4


def synth_generator(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed)))


def _require_kind(spec: SynthSpec, kind: SynthKind):
    if spec.kind != kind.value:
        raise InvalidSpecError(f"expected a `{kind.value}` spec, got `{spec.kind}`")


def _business_dates(spec: SynthSpec):
    return [timestamp.date() for timestamp in pd.bdate_range(start=spec.start_date, periods=spec.n)]


def _random_signs(generator: np.random.Generator, size: int) -> np.ndarray:
    return np.where(generator.random(size) < 0.5, -1.0, 1.0)


def population_spearman(rho: float) -> float:
    """Spearman correlation of a bivariate normal with Pearson correlation rho."""
    return 6.0 / np.pi * np.arcsin(rho / 2.0)


def _gaussian_pairs(generator: np.random.Generator, n: int, rho: float) -> Tuple[np.ndarray, np.ndarray]:
    first, second = generator.standard_normal((2, n))
    return first, rho * first + np.sqrt(1.0 - rho ** 2) * second


def copula_pairs(spec: SynthSpec) -> Tuple[np.ndarray, np.ndarray]:
    """n draws from a standard bivariate normal with correlation rho."""
    _require_kind(spec, SynthKind.COPULA_PAIR)
    return _gaussian_pairs(synth_generator(spec.seed), spec.n, spec.rho)


def copula_vol_process(spec: SynthSpec) -> ReturnSeries:
    """
    |n_k| = scale * exp(x_k), |d_k| = scale * exp(y_k) with (x_k, y_k) a copula pair.

    C_nd estimates population_spearman(rho); the following night is independent, so C_dn is 0.
    """
    _require_kind(spec, SynthKind.COPULA_PAIR)
    generator = synth_generator(spec.seed)
    x, y = _gaussian_pairs(generator, spec.n, spec.rho)
    night_signs = _random_signs(generator, spec.n)
    day_signs = _random_signs(generator, spec.n)
    return ReturnSeries(
        symbol=f"copula_pair_seed{spec.seed}",
        dates=_business_dates(spec),
        d=spec.scale * np.exp(y) * day_signs,
        n=(spec.scale * np.exp(x) * night_signs)[1:],
    )


def coupled_vol_process(spec: SynthSpec) -> ReturnSeries:
    """
    n_k = scale * exp(z_k) * eps_k and d_k = scale * exp(coupling * z_k + w_k) * eps'_k.

    |d_k| rises with |n_k| of the night before; the night after day k is drawn
    independently of it. Day 1's latent night is drawn but not observed.
    """
    _require_kind(spec, SynthKind.COUPLED_VOL)
    generator = synth_generator(spec.seed)
    z = generator.standard_normal(spec.n)
    w = generator.standard_normal(spec.n)
    night_signs = _random_signs(generator, spec.n)
    day_signs = _random_signs(generator, spec.n)

    n = spec.scale * np.exp(z) * night_signs
    d = spec.scale * np.exp(spec.coupling * z + w) * day_signs
    return ReturnSeries(
        symbol=f"coupled_vol_seed{spec.seed}",
        dates=_business_dates(spec),
        d=d,
        n=n[1:],
    )


def null_vol_process(spec: SynthSpec) -> ReturnSeries:
    """d and n independent Student-t(4) draws: fat tails, no coupling in either direction."""
    _require_kind(spec, SynthKind.NULL_VOL)
    generator = synth_generator(spec.seed)
    d = spec.scale * generator.standard_t(STUDENT_T_DEGREES_OF_FREEDOM, spec.n)
    n = spec.scale * generator.standard_t(STUDENT_T_DEGREES_OF_FREEDOM, spec.n - 1)
    return ReturnSeries(
        symbol=f"null_vol_seed{spec.seed}",
        dates=_business_dates(spec),
        d=d,
        n=n,
    )


def generate_return_series(spec: SynthSpec) -> ReturnSeries:
    if spec.kind == SynthKind.COPULA_PAIR.value:
        return copula_vol_process(spec)
    if spec.kind == SynthKind.COUPLED_VOL.value:
        return coupled_vol_process(spec)
    if spec.kind == SynthKind.NULL_VOL.value:
        return null_vol_process(spec)
    raise InvalidSpecError(f"unknown synthetic process `{spec.kind}`")
