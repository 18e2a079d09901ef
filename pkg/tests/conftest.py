"""Shared fixtures and random-parameter helpers for the test suite."""

import math
import random

import pytest

from extrobin import (
    BallGeometry,
    PerturbationSpectrum,
    SpectralSolution,
    alpha_star,
    multiplicity,
    solve_lambda,
)


def rel_err(value: float, reference: float) -> float:
    if reference == 0.0:
        return abs(value)
    return abs(value - reference) / abs(reference)


def draw_solution(rng: random.Random, dims: tuple[int, int] = (2, 10)) -> SpectralSolution:
    """Random admissible (geometry, coupling) pair, solved.

    Couplings are sampled so z = R*sqrt(-lambda) stays inside the supported
    window for every dimension: for n = 2 the shape y = -alpha*R is drawn
    directly, for n >= 3 the coupling is a multiple of alpha_star.
    """
    n = rng.randint(*dims)
    R = math.exp(rng.uniform(math.log(0.1), math.log(10.0)))
    geom = BallGeometry(n=n, R=R)
    if n == 2:
        y = math.exp(rng.uniform(math.log(0.07), math.log(600.0)))
        alpha = -y / R
    else:
        m_hi = min(60.0, 600.0 / (n - 2))
        m = math.exp(rng.uniform(math.log(1.001), math.log(m_hi)))
        alpha = m * alpha_star(geom)
    return solve_lambda(geom, alpha)


def draw_spectrum(rng: random.Random, n: int, k_range: tuple[int, int] = (2, 25)) -> PerturbationSpectrum:
    """Random admissible perturbation spectrum with degrees >= 2."""
    entries: list[tuple[int, int, float]] = []
    seen: set[tuple[int, int]] = set()
    for _ in range(rng.randint(1, 5)):
        k = rng.randint(*k_range)
        i = rng.randrange(multiplicity(n, k))
        if (k, i) in seen:
            continue
        seen.add((k, i))
        entries.append((k, i, rng.choice([-1.0, 1.0]) * rng.uniform(0.1, 2.0)))
    return PerturbationSpectrum(entries=tuple(entries))


@pytest.fixture(scope="session")
def ref_solution() -> SpectralSolution:
    """The closed-form reference point: lambda = -4, z = 2, K = -1."""
    return solve_lambda(BallGeometry(n=3, R=1.0), -3.0)


@pytest.fixture(scope="session")
def solution_pool() -> list[SpectralSolution]:
    """Fixed pool of random admissible solutions shared across tests."""
    rng = random.Random(90125)
    return [draw_solution(rng) for _ in range(40)]
