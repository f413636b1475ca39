import numpy as np
import pytest

from chlimit import RealField, Spectrum, inverse_transform, make_grid, make_u0


@pytest.fixture(scope="session")
def grid_small():
    return make_grid(256, 2.0 * np.pi)


@pytest.fixture(scope="session")
def grid_2k():
    return make_grid(2048, 2.0 * np.pi)


@pytest.fixture(scope="session")
def grid_box():
    """Smallest grid admitting the counterexample datum (packets to n=5)."""
    return make_grid(4096, 32.0 * np.pi)


@pytest.fixture(scope="session")
def datum5(grid_box):
    return make_u0(grid_box, 2.0, 5)


@pytest.fixture(scope="session")
def default_grid():
    """The full default experiment grid (2^15 points, box 32 pi)."""
    return make_grid(2**15, 32.0 * np.pi)


@pytest.fixture(scope="session")
def default_datum(default_grid):
    return make_u0(default_grid, 2.0, 8)


def band_limited(grid, n_modes, seed, scale=1.0, decay=0.5):
    """Random real field supported on modes 1..n_modes, unit peak by default."""
    rng = np.random.default_rng(seed)
    n = grid.n_points
    c = np.zeros(n, dtype=complex)
    for m in range(1, n_modes + 1):
        a = (rng.normal() + 1j * rng.normal()) / (1 + m) ** decay
        c[n // 2 + m] = a
        c[n // 2 - m] = np.conj(a)
    f = inverse_transform(Spectrum(grid, c))
    peak = np.abs(f.samples).max()
    return RealField(grid, scale * f.samples / peak)
