"""Periodic-box spectral substrate: sampling grids, discrete Fourier
transforms, multiplier operators, norms, and 2/3-rule dealiasing.

Conventions used by every module in this package:

* the physical axis is ``x_j = -L/2 + j*dx``, centered on the origin;
* the frequency axis is ascending, ``xi_k = 2*pi*k/L`` for
  ``k = -N/2 .. N/2-1`` (single unpaired mode at the negative Nyquist);
* the forward transform is unnormalized, ``u_hat(xi) = sum_j u(x_j)
  exp(-i xi x_j)``, and the inverse carries the ``1/N`` factor, so
  Parseval reads ``sum u^2 dx = (dx/N) * sum |u_hat|^2``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

#: Relative tolerance for conjugate-symmetry and realness checks.
SYMMETRY_TOL = 1e-12


def _is_power_of_two(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


@dataclass(frozen=True, eq=False)
class Grid:
    """Uniform periodic sampling of ``[-L/2, L/2)`` and its Fourier dual.

    Attributes
    ----------
    n_points : int
        Number of samples, a power of two >= 8.
    box_length : float
        Period ``L`` of the box.
    dx : float
        Sample spacing ``L / n_points``.
    x : np.ndarray
        Sample positions, ascending, centered at 0.
    wavenumbers : np.ndarray
        Integer mode indices ``k = -N/2 .. N/2-1``.
    frequencies : np.ndarray
        Angular frequencies ``2*pi*k/L``, ascending.
    """

    n_points: int
    box_length: float
    dx: float
    x: np.ndarray
    wavenumbers: np.ndarray
    frequencies: np.ndarray

    @property
    def nyquist(self) -> float:
        """Largest resolvable angular frequency, ``pi/dx``."""
        return np.pi / self.dx

    @property
    def dealias_cutoff(self) -> float:
        """Angular frequency above which quadratic products are zeroed."""
        return (2.0 / 3.0) * self.nyquist

    def matches(self, other: "Grid") -> bool:
        """True when both grids sample the same box at the same rate."""
        return (
            self.n_points == other.n_points
            and self.box_length == other.box_length
        )


def make_grid(n_points: int, box_length: float) -> Grid:
    """Build the periodic grid with ``n_points`` samples on a box of
    length ``box_length``.

    Raises
    ------
    ValueError
        If ``n_points`` is not a power of two >= 8 or the box length is
        not a positive finite real.
    """
    if not isinstance(n_points, (int, np.integer)) or not _is_power_of_two(int(n_points)):
        raise ValueError(f"n_points not a power of two: {n_points}")
    n_points = int(n_points)
    if n_points < 8:
        raise ValueError(f"n_points must be >= 8, got {n_points}")
    box_length = float(box_length)
    if not np.isfinite(box_length) or box_length <= 0.0:
        raise ValueError(f"box_length must be positive, got {box_length}")

    dx = box_length / n_points
    k = np.arange(-(n_points // 2), n_points // 2)
    x = -0.5 * box_length + dx * np.arange(n_points)
    frequencies = 2.0 * np.pi * k / box_length
    return Grid(
        n_points=n_points,
        box_length=box_length,
        dx=dx,
        x=x,
        wavenumbers=k,
        frequencies=frequencies,
    )


@dataclass(frozen=True, eq=False)
class RealField:
    """Real samples of a function on a :class:`Grid`."""

    grid: Grid
    samples: np.ndarray

    def __post_init__(self) -> None:
        samples = np.asarray(self.samples, dtype=float)
        if samples.shape != (self.grid.n_points,):
            raise ValueError(
                f"samples shape {samples.shape} does not match grid "
                f"({self.grid.n_points},)"
            )
        if not np.all(np.isfinite(samples)):
            raise ValueError("field samples contain NaN or Inf")
        object.__setattr__(self, "samples", samples)


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Complex Fourier coefficients on a :class:`Grid`, indexed by the
    grid's ascending frequency axis.

    Conjugate symmetry ``coeff(-xi) = conj(coeff(xi))`` is enforced at
    construction (relative to the largest coefficient), which guarantees
    a real inverse transform.
    """

    grid: Grid
    coeffs: np.ndarray

    def __post_init__(self) -> None:
        coeffs = np.asarray(self.coeffs, dtype=complex)
        if coeffs.shape != (self.grid.n_points,):
            raise ValueError(
                f"coeffs shape {coeffs.shape} does not match grid "
                f"({self.grid.n_points},)"
            )
        if not np.all(np.isfinite(coeffs)):
            raise ValueError("spectral coefficients contain NaN or Inf")
        scale = max(1.0, float(np.abs(coeffs).max()))
        # index 0 is the unpaired Nyquist mode; indices i and N-i pair up
        sym_err = float(np.abs(coeffs[1:] - np.conj(coeffs[1:][::-1])).max())
        nyq_err = abs(float(coeffs[0].imag))
        if max(sym_err, nyq_err) > SYMMETRY_TOL * scale:
            raise ValueError(
                "spectrum violates conjugate symmetry "
                f"(relative error {max(sym_err, nyq_err) / scale:.3e})"
            )
        object.__setattr__(self, "coeffs", coeffs)


def _symmetrize(coeffs: np.ndarray) -> np.ndarray:
    """Project onto exact conjugate symmetry (pairs i <-> N-i, Nyquist at 0
    made real).  For data that is symmetric up to rounding this removes the
    crumbs, so downstream multiplier products stay exactly symmetric."""
    paired = np.conj(np.roll(coeffs[::-1], 1))
    return 0.5 * (coeffs + paired)


def transform(field: RealField) -> Spectrum:
    """Forward discrete Fourier transform onto the ascending frequency axis."""
    coeffs = np.fft.fftshift(np.fft.fft(np.fft.ifftshift(field.samples)))
    return Spectrum(field.grid, _symmetrize(coeffs))


def inverse_transform(spectrum: Spectrum) -> RealField:
    """Inverse transform; validates that the imaginary residue is at
    rounding level before discarding it."""
    z = np.fft.fftshift(np.fft.ifft(np.fft.ifftshift(spectrum.coeffs)))
    scale = max(1.0, float(np.abs(z.real).max()))
    residue = float(np.abs(z.imag).max())
    if residue > SYMMETRY_TOL * scale:
        raise ValueError(
            f"inverse transform is not real (residue {residue / scale:.3e})"
        )
    return RealField(spectrum.grid, z.real)


def apply_multiplier(
    spectrum: Spectrum, m: Callable[[np.ndarray], np.ndarray]
) -> Spectrum:
    """Apply a Fourier multiplier ``m(xi)``.

    ``m`` may be complex-valued but must satisfy ``m(-xi) = conj(m(xi))``
    on the sampled axis, otherwise the output would not invert to a real
    field.  The unpaired Nyquist entry is replaced by its real part,
    which is the only Hermitian-consistent value there (odd multipliers
    such as ``i*xi`` therefore zero the Nyquist mode).
    """
    xi = spectrum.grid.frequencies
    m_vals = np.asarray(m(xi), dtype=complex)
    if m_vals.shape != xi.shape:
        raise ValueError("multiplier must return one value per frequency")
    scale = max(1.0, float(np.abs(m_vals).max()))
    herm_err = float(np.abs(m_vals[1:] - np.conj(m_vals[1:][::-1])).max())
    if herm_err > SYMMETRY_TOL * scale:
        raise ValueError(
            f"multiplier is not Hermitian-symmetric (error {herm_err:.3e}); "
            "this would break realness of the inverse transform"
        )
    return Spectrum(spectrum.grid, spectrum.coeffs * _symmetrize(m_vals))


def l2_norm(field: RealField) -> float:
    """Trapezoid-exact L2 norm on the periodic box, sqrt(sum u^2 dx)."""
    return float(np.sqrt(np.sum(field.samples**2) * field.grid.dx))


def spectrum_l2_norm(spectrum: Spectrum) -> float:
    """L2 norm computed on the spectral side via Parseval."""
    grid = spectrum.grid
    return float(
        np.sqrt(np.sum(np.abs(spectrum.coeffs) ** 2) * grid.dx / grid.n_points)
    )


def dealias(spectrum: Spectrum) -> Spectrum:
    """Zero all modes with ``|k| > n_points/3`` (the 2/3 rule), which keeps
    quadratic products alias-free."""
    grid = spectrum.grid
    keep = np.abs(grid.wavenumbers) <= grid.n_points / 3.0
    return Spectrum(grid, np.where(keep, spectrum.coeffs, 0.0))


def derivative(field: RealField, order: int = 1) -> RealField:
    """Spectral derivative of the given order."""
    if order < 1:
        raise ValueError("derivative order must be >= 1")
    return inverse_transform(
        apply_multiplier(transform(field), lambda xi: (1j * xi) ** order)
    )


def field_mean(field: RealField) -> float:
    """Spatial mean of the samples."""
    return float(np.mean(field.samples))


def edge_tail(field: RealField, fraction: float = 0.1) -> float:
    """Largest |sample| on the outer ``fraction`` of the box.

    Monitors how far a nominally whole-line function is from vanishing at
    the periodic seam; the solvers use it as a contamination guard.
    """
    if not 0.0 < fraction < 1.0:
        raise ValueError("fraction must lie in (0, 1)")
    grid = field.grid
    outer = np.abs(grid.x) >= (0.5 - 0.5 * fraction) * grid.box_length
    return float(np.abs(field.samples[outer]).max())
