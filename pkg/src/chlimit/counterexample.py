"""The pathological initial datum: a lacunary sum of frequency-localized
wave packets, its Littlewood-Paley localization diagnostics, and the
first-order-in-time solution approximant.

The datum is

    u0(x) = sum_{n=0}^{n_terms} 2^{-n s} phi(x) cos(17/12 * 2^n x),

where phi is the inverse transform of an even smooth bump equal to 1 on
``|xi| <= 1/4`` and 0 beyond ``|xi| >= 1/2``.  Packet n occupies the
frequency band ``17/12 * 2^n +- 1/2``, which for n >= 3 sits inside the
plateau of the n-th dyadic cutoff, so block n of u0 reproduces packet n
exactly.

On the periodic box each packet is realized by sampling its exact
continuum spectrum on the grid frequency axis (equivalently: the field is
the periodization of the whole-line packet).  This keeps the packet
spectra compactly supported on-grid; sampling the pointwise product
``phi(x) cos(lambda x)`` instead would leak across blocks at the box-seam
truncation level (~1e-5 at the default box), far above the localization
tolerances this construction is meant to satisfy.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from .filter_ops import validate_alpha
from .grid import (
    Grid,
    RealField,
    Spectrum,
    dealias,
    derivative,
    inverse_transform,
    spectrum_l2_norm,
    transform,
)
from .littlewood_paley import block_multiplier, grid_max_block, smooth_step

#: Carrier frequency of packet n is PACKET_CARRIER * 2^n.
PACKET_CARRIER = 17.0 / 12.0

#: Half-width of each packet's frequency band (support radius of the bump).
PACKET_HALF_WIDTH = 0.5

#: Coarsest admissible frequency spacing; resolves the bump transition band.
MAX_FREQ_SPACING = 1.0 / 16.0

#: Smallest packet index with its band inside the dyadic plateau [4/3, 3/2].
MIN_LOCALIZED_INDEX = 3


def bump_hat(xi: np.ndarray | float) -> np.ndarray:
    """Even smooth bump: 1 for |xi| <= 1/4, 0 for |xi| >= 1/2, smoothstep
    glue between (same glue as the dyadic cutoffs)."""
    a = np.abs(np.asarray(xi, dtype=float))
    return smooth_step((0.5 - a) * 4.0)


def _require_bump_resolved(grid: Grid) -> None:
    spacing = 2.0 * np.pi / grid.box_length
    if spacing > MAX_FREQ_SPACING * (1.0 + 1e-12):
        raise ValueError(
            f"grid frequency spacing {spacing:.4g} too coarse for the bump "
            f"profile; need <= {MAX_FREQ_SPACING} (box_length >= 32*pi)"
        )


def phi_profile(grid: Grid) -> RealField:
    """Physical-space bump profile: the inverse discrete transform of the
    bump sampled on the grid frequency axis (the periodization of the
    whole-line profile)."""
    _require_bump_resolved(grid)
    coeffs = bump_hat(grid.frequencies) / grid.dx
    return inverse_transform(Spectrum(grid, coeffs.astype(complex)))


@dataclass(frozen=True, eq=False)
class BumpProfile:
    """The spectral bump together with its grid realization."""

    hat_phi: object
    phi_field: RealField


def make_bump_profile(grid: Grid) -> BumpProfile:
    return BumpProfile(hat_phi=bump_hat, phi_field=phi_profile(grid))


def max_packet_index(grid: Grid) -> int:
    """Largest packet index whose band survives the 2/3 dealiasing rule."""
    n = -1
    while (
        PACKET_CARRIER * 2.0 ** (n + 1) + PACKET_HALF_WIDTH
        <= grid.dealias_cutoff
    ):
        n += 1
    return n


def _packet_coeffs(grid: Grid, n: int, s: float) -> np.ndarray:
    """Spectral coefficients of packet n: the two shifted bump halves."""
    xi = grid.frequencies
    lam = PACKET_CARRIER * 2.0**n
    profile = 0.5 * (bump_hat(xi - lam) + bump_hat(xi + lam))
    return (2.0 ** (-n * s) * profile / grid.dx).astype(complex)


def packet_field(grid: Grid, n: int, s: float) -> RealField:
    """The single wave packet ``2^{-ns} phi(x) cos(17/12 2^n x)`` realized
    on the grid."""
    return inverse_transform(Spectrum(grid, _packet_coeffs(grid, n, s)))


@dataclass(frozen=True, eq=False)
class CounterexampleDatum:
    """The truncated lacunary datum and its construction parameters."""

    s: float
    n_terms: int
    field: RealField

    @property
    def grid(self) -> Grid:
        return self.field.grid


def make_u0(grid: Grid, s: float, n_terms: int) -> CounterexampleDatum:
    """Build the datum with packets n = 0 .. n_terms.

    Raises if s <= 3/2, if the grid cannot resolve packet ``n_terms``
    under the 2/3 rule (the message names the largest admissible index),
    or if the geometric center-value identity fails.
    """
    s = float(s)
    if not s > 1.5:
        raise ValueError(f"regularity s must exceed 3/2, got {s}")
    if n_terms < 0:
        raise ValueError(f"n_terms must be >= 0, got {n_terms}")
    _require_bump_resolved(grid)
    n_cap = max_packet_index(grid)
    if n_terms > n_cap:
        raise ValueError(
            f"grid resolves packets only up to n = {n_cap} under the 2/3 "
            f"rule; requested n_terms = {n_terms}"
        )

    coeffs = np.zeros(grid.n_points, dtype=complex)
    for n in range(n_terms + 1):
        coeffs += _packet_coeffs(grid, n, s)
    field = inverse_transform(Spectrum(grid, coeffs))

    # geometric partial-sum identity at the origin, u0(0)/phi(0)
    center = grid.n_points // 2
    phi0 = phi_profile(grid).samples[center]
    measured = field.samples[center] / phi0
    expected = (1.0 - 2.0 ** (-s * (n_terms + 1))) / (1.0 - 2.0**-s)
    if abs(measured - expected) > 1e-6 * abs(expected):
        raise AssertionError(
            "datum center value deviates from the geometric sum: "
            f"{measured!r} vs {expected!r}"
        )
    return CounterexampleDatum(s=s, n_terms=n_terms, field=field)


def _require_localized_index(datum: CounterexampleDatum, n: int) -> None:
    if not MIN_LOCALIZED_INDEX <= n <= datum.n_terms:
        raise ValueError(
            f"packet index n must lie in [{MIN_LOCALIZED_INDEX}, "
            f"{datum.n_terms}], got {n}"
        )


def block_identity_error(datum: CounterexampleDatum, n: int) -> float:
    """Relative L2 error of the localization identity
    ``block_n(u0) = 2^{-ns} phi(x) cos(17/12 2^n x)``.

    Exact (to rounding) for n >= 3, where the packet band sits inside the
    cutoff plateau.
    """
    _require_localized_index(datum, n)
    grid = datum.grid
    spec = transform(datum.field)
    m = block_multiplier(grid, n)
    block = inverse_transform(Spectrum(grid, spec.coeffs * m))
    ref = packet_field(grid, n, datum.s)
    diff = RealField(grid, block.samples - ref.samples)
    return spectrum_l2_norm(transform(diff)) / spectrum_l2_norm(transform(ref))


def e0_approximant(v0: RealField, alpha: float) -> RealField:
    """First-order-in-time approximant of the filtered-CH solution map:

        E0(alpha, v0) = -3 v0 dx(v0)
                        - alpha^2 dx^3 (1 - alpha^2 dxx)^{-1} (v0^2)
                        - (alpha^2/2) dx (1 - alpha^2 dxx)^{-1} (dx v0)^2

    with all quadratic products dealiased; reduces to ``-3 v0 dx(v0)``
    at alpha = 0.
    """
    alpha = validate_alpha(alpha)
    grid = v0.grid
    xi = grid.frequencies
    ik = 1j * np.where(grid.wavenumbers == -(grid.n_points // 2), 0.0, xi)
    helm = 1.0 / (1.0 + alpha**2 * xi**2)

    v0x = derivative(v0)
    adv = dealias(transform(RealField(grid, v0.samples * v0x.samples)))
    sq = dealias(transform(RealField(grid, v0.samples * v0.samples)))
    slope_sq = dealias(transform(RealField(grid, v0x.samples * v0x.samples)))

    out = (
        -3.0 * adv.coeffs
        - alpha**2 * ik**3 * helm * sq.coeffs
        - 0.5 * alpha**2 * ik * helm * slope_sq.coeffs
    )
    return inverse_transform(Spectrum(grid, out))


def block_product_lower_bound(datum: CounterexampleDatum, n: int) -> float:
    """The normalized product block ``2^{n(s-1)} ||block_n(u0 dx(u0))||_L2``,
    the quantity whose uniform positive floor drives the non-convergence
    mechanism."""
    _require_localized_index(datum, n)
    grid = datum.grid
    u0x = derivative(datum.field)
    prod = dealias(
        transform(RealField(grid, datum.field.samples * u0x.samples))
    )
    m = block_multiplier(grid, n)
    norm = spectrum_l2_norm(Spectrum(grid, prod.coeffs * m))
    return 2.0 ** (n * (datum.s - 1.0)) * norm


def pointwise_floor(datum: CounterexampleDatum) -> Tuple[float, float]:
    """Search for the largest symmetric interval ``|x| <= delta`` on which
    ``|u0(x)| >= |u0(0)| / 2`` holds at every sample.

    Returns ``(delta, min |u0| on the interval)``.
    """
    grid = datum.grid
    u = datum.field.samples
    center = grid.n_points // 2
    half = 0.5 * abs(u[center])
    offset = 0
    while True:
        left = center - (offset + 1)
        right = center + (offset + 1)
        if left < 0 or right >= grid.n_points:
            break
        if abs(u[left]) < half or abs(u[right]) < half:
            break
        offset += 1
    window = u[center - offset : center + offset + 1]
    return offset * grid.dx, float(np.abs(window).min())
