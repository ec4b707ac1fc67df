"""Activation and ridgelet profile library.

The workhorse families:

  * tanh with its analytic spectrum −iπ/sinh(πω/2) (singular at ω = 0, only
    ever evaluated on grids that straddle the origin),
  * the Dawson reference ρ₀ with ρ₀♯(ω) = sign(ω)·exp(−ω²/2) and its
    derivatives ρ_k = c_k ρ₀^{(k)},
  * Gaussian derivatives (the smooth activations used by the projector
    machinery),
  * ReLU (real evaluator only; spectral pairings reject it),
  * Hermite functions as the orthonormal system of L²(ℝ),
  * Gram–Schmidt in the |ω|^{-m}-weighted spectral inner product.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from numpy.polynomial import hermite_e
from numpy.polynomial import polynomial as npoly
from scipy.special import dawsn

from .fourier import SobolevOrders, flat, sharp
from .grids import (
    AccuracyError,
    DomainError,
    Grid,
    SampledFunction,
    SpectralFunction,
    UnsupportedProfileError,
    weighted_omega_inner,
    weighted_omega_norm,
)

# Default boxes: every stock profile decays below 1e-10 by |ω| = 12 (Gaussian
# envelopes) and the pairing integrands are resolved at Δω ≈ 0.012. 2048 points
# keep the origin straddled at ±Δω/2.
DEFAULT_OMEGA_GRID = Grid.line(-12.0, 12.0, 2048)
DEFAULT_B_GRID = Grid.line(-12.0, 12.0, 2048)

PARITY_EVEN = "even"
PARITY_ODD = "odd"
PARITY_NONE = "none"


class SingularPointError(DomainError):
    """Spectral evaluator hit a point where it is only a principal value."""


@dataclass(frozen=True)
class Profile1D:
    """A 1-D profile usable as activation σ or ridgelet function ρ.

    Carries a real-domain evaluator and/or an analytic/interpolated spectral
    evaluator ω ↦ profile♯(ω). At least one must be present.
    """

    name: str
    real_eval: Callable[[np.ndarray], np.ndarray] | None = None
    spectral_eval: Callable[[np.ndarray], np.ndarray] | None = None
    parity: str = PARITY_NONE
    orders: SobolevOrders | None = None
    notes: str = ""

    def __post_init__(self):
        if self.real_eval is None and self.spectral_eval is None:
            raise DomainError(f"profile {self.name!r} needs at least one evaluator")
        if self.parity not in (PARITY_EVEN, PARITY_ODD, PARITY_NONE):
            raise DomainError(f"unknown parity {self.parity!r}")

    def real_values(self, grid: Grid) -> np.ndarray:
        if self.real_eval is None:
            raise UnsupportedProfileError(f"profile {self.name!r} has no real-domain evaluator")
        return np.asarray(self.real_eval(grid.axis(0)), dtype=complex)

    def spectral_values(self, grid: Grid) -> np.ndarray:
        if self.spectral_eval is None:
            raise UnsupportedProfileError(f"profile {self.name!r} has no spectral evaluator")
        return np.asarray(self.spectral_eval(grid.axis(0)), dtype=complex)

    def scaled(self, c: complex, name: str | None = None) -> "Profile1D":
        c = complex(c)
        re = None if self.real_eval is None else (lambda b, f=self.real_eval: c * np.asarray(f(b)))
        sp = None if self.spectral_eval is None else (
            lambda w, f=self.spectral_eval: c * np.asarray(f(w)))
        return Profile1D(name or f"{c:g}*{self.name}", re, sp, self.parity, self.orders,
                         self.notes + f" [scaled by {c:.6g}]")


def numerical_parity(values: np.ndarray) -> str:
    """Classify even/odd from samples on a symmetric grid (1e-10 tolerance)."""
    rev = values[::-1]
    scale = np.max(np.abs(values))
    if scale == 0.0:
        return PARITY_EVEN
    if np.max(np.abs(values - rev)) <= 1e-10 * scale:
        return PARITY_EVEN
    if np.max(np.abs(values + rev)) <= 1e-10 * scale:
        return PARITY_ODD
    return PARITY_NONE


def self_test(profile: Profile1D, b_grid: Grid | None = None,
              omega_grid: Grid | None = None, tol: float = 1e-5) -> float:
    """Verify real_eval against the inverse transform of spectral_eval.

    Returns the max pointwise deviation on the comparison window; raises if it
    exceeds tol. Profiles with slowly decaying real tails (the Dawson family
    decays like 1/b) are compared through the spectral→real direction, which
    only requires the spectrum to be integrable on the grid.
    """
    if profile.real_eval is None or profile.spectral_eval is None:
        raise UnsupportedProfileError(f"profile {profile.name!r} lacks one evaluator")
    omega_grid = omega_grid or Grid.line(-12.0, 12.0, 8192)
    b_grid = b_grid or Grid.line(-10.0, 10.0, 801)
    spec = SpectralFunction(omega_grid, profile.spectral_values(omega_grid))
    recon = flat(spec, b_grid).values
    target = profile.real_values(b_grid)
    err = float(np.max(np.abs(recon - target)))
    if err > tol:
        raise AccuracyError(
            f"profile {profile.name!r} round-trip error {err:.3e} exceeds {tol:g}")
    return err


# ---------------------------------------------------------------------------
# Dawson function and the ρ_k ridgelet family


def dawson(x):
    """Dawson integral F(x) = e^{-x²} ∫₀ˣ e^{t²} dt (odd, |err| ≤ 1e-12)."""
    return dawsn(x)


def _dawson_derivative_polys(kmax: int) -> list[tuple[np.ndarray, np.ndarray]]:
    """F^{(k)} = P_k·F + Q_k with P₀ = 1, Q₀ = 0 and
    P_{k+1} = P_k' − 2x·P_k,  Q_{k+1} = P_k + Q_k'."""
    out = [(np.array([1.0]), np.array([0.0]))]
    for _ in range(kmax):
        P, Q = out[-1]
        dP = npoly.polyder(P) if len(P) > 1 else np.array([0.0])
        dQ = npoly.polyder(Q) if len(Q) > 1 else np.array([0.0])
        out.append((npoly.polysub(dP, npoly.polymul(np.array([0.0, 2.0]), P)),
                    npoly.polyadd(P, dQ)))
    return out


def dawson_derivative(x, k: int):
    """k-th derivative of the Dawson function via the polynomial recurrence."""
    P, Q = _dawson_derivative_polys(k)[k]
    x = np.asarray(x, dtype=float)
    return npoly.polyval(x, P) * dawsn(x) + npoly.polyval(x, Q)


# Real-domain constant of the reference profile: the inverse transform of
# sign(ω)e^{-ω²/2} is (i/π)·√2·F(b/√2).
_RHO0_CONST = 1j * np.sqrt(2.0) / np.pi


def rho0_profile() -> Profile1D:
    return Profile1D(
        name="rho0",
        real_eval=lambda b: _RHO0_CONST * dawsn(np.asarray(b, dtype=float) / np.sqrt(2.0)),
        spectral_eval=lambda w: np.sign(w) * np.exp(-np.asarray(w, dtype=float) ** 2 / 2.0)
        + 0.0j,
        parity=PARITY_ODD,
        notes="Hilbert transform of the unit Gaussian; real domain (i/π)·√2·F(b/√2); "
              "not in the weighted space at m=1 (log-divergent norm), carries no c_k",
    )


def _rho_k_unnormalized(k: int, scale: float = 1.0) -> Profile1D:
    """k-th derivative of the (scale-s) Dawson reference: spectrum
    (iω)^k sign(ω) e^{-(sω)²/2}, real domain s^{-(k+1)} ρ₀^{(k)}(b/s)."""

    def spec(w, k=k, s=scale):
        w = np.asarray(w, dtype=float)
        return (1j * w) ** k * np.sign(w) * np.exp(-((s * w) ** 2) / 2.0)

    def real(b, k=k, s=scale):
        b = np.asarray(b, dtype=float)
        return _RHO0_CONST * 2.0 ** (-k / 2.0) * s ** (-(k + 1)) \
            * dawson_derivative(b / (s * np.sqrt(2.0)), k)

    return Profile1D(
        name=f"rho0_d{k}" if scale == 1.0 else f"rho0_d{k}@s={scale:g}",
        real_eval=real, spectral_eval=spec,
        parity=PARITY_EVEN if k % 2 == 1 else PARITY_ODD,
        notes=f"unnormalized k={k} derivative of rho0" + (
            "" if scale == 1.0 else f" at Gaussian scale {scale:g}"),
    )


def tanh_profile() -> Profile1D:
    def spec(w):
        w = np.asarray(w, dtype=float)
        if np.any(w == 0.0):
            raise SingularPointError(
                "tanh spectrum is a principal value at ω = 0; use a straddling grid")
        return -1j * np.pi / np.sinh(np.pi * w / 2.0)

    return Profile1D(
        name="tanh", real_eval=lambda b: np.tanh(np.asarray(b, dtype=float)) + 0.0j,
        spectral_eval=spec, parity=PARITY_ODD,
        notes="spectrum −iπ/sinh(πω/2); not square-integrable under the |ω|^{-m} weight",
    )


def relu_profile() -> Profile1D:
    return Profile1D(
        name="relu",
        real_eval=lambda b: np.maximum(np.asarray(b, dtype=float), 0.0) + 0.0j,
        parity=PARITY_NONE,
        orders=SobolevOrders(t=2.0, s=0.0),
        notes="real evaluator only; spectrum is distributional, pairings must reject it",
    )


def gaussian_profile(width: float = 1.0, center: float = 0.0) -> Profile1D:
    def real(b):
        return np.exp(-((np.asarray(b, dtype=float) - center) ** 2) / (2.0 * width ** 2)) + 0.0j

    def spec(w):
        w = np.asarray(w, dtype=float)
        return width * np.sqrt(2.0 * np.pi) * np.exp(-(width * w) ** 2 / 2.0 - 1j * w * center)

    return Profile1D(name=f"gaussian(w={width:g},c={center:g})", real_eval=real,
                     spectral_eval=spec,
                     parity=PARITY_EVEN if center == 0.0 else PARITY_NONE)


def gaussian_derivative_profile(k: int = 1) -> Profile1D:
    """k-th derivative of the unit Gaussian: d^k/db^k e^{-b²/2} =
    (−1)^k He_k(b) e^{-b²/2}, spectrum (iω)^k √(2π) e^{-ω²/2}."""
    coeffs = np.zeros(k + 1)
    coeffs[k] = 1.0

    def real(b, k=k):
        b = np.asarray(b, dtype=float)
        return (-1.0) ** k * hermite_e.hermeval(b, coeffs) * np.exp(-(b ** 2) / 2.0) + 0.0j

    def spec(w, k=k):
        w = np.asarray(w, dtype=float)
        return (1j * w) ** k * np.sqrt(2.0 * np.pi) * np.exp(-(w ** 2) / 2.0)

    return Profile1D(name=f"gauss_d{k}", real_eval=real, spectral_eval=spec,
                     parity=PARITY_ODD if k % 2 == 1 else PARITY_EVEN,
                     orders=SobolevOrders(t=0.0, s=0.0))


def pairing(sigma: Profile1D, rho: Profile1D, m: int,
            omega_grid: Grid | None = None) -> complex:
    """⟨⟨σ, ρ⟩⟩ = (2π)^{m-1} ∫ σ♯(ω) conj(ρ♯(ω)) |ω|^{-m} dω."""
    omega_grid = omega_grid or DEFAULT_OMEGA_GRID
    su = sigma.spectral_values(omega_grid)
    ru = rho.spectral_values(omega_grid)
    return weighted_omega_inner(su, ru, m, omega_grid)


def make_rho_family(max_k: int, sigma: Profile1D | None = None, m: int = 1,
                    omega_grid: Grid | None = None) -> list[Profile1D]:
    """ρ₀ … ρ_{max_k} with ρ_k = c_k ρ₀^{(k)}.

    c_k makes ⟨⟨σ, ρ_k⟩⟩ = 1 when that pairing is nonzero (admissible k),
    otherwise c_k normalizes the weighted norm to 1. ρ₀ is the unscaled
    reference profile. σ defaults to tanh as in the reconstruction study.
    """
    if max_k > 8:
        raise DomainError("derivative order capped at 8 (series accuracy budget)")
    sigma = sigma or tanh_profile()
    omega_grid = omega_grid or DEFAULT_OMEGA_GRID
    family = [rho0_profile()]
    for k in range(1, max_k + 1):
        raw = _rho_k_unnormalized(k)
        pair_raw = pairing(sigma, raw, m, omega_grid)
        norm_raw = weighted_omega_norm(raw.spectral_values(omega_grid), m, omega_grid)
        scale_of_zero = weighted_omega_inner(
            np.abs(sigma.spectral_values(omega_grid)), np.abs(raw.spectral_values(omega_grid)),
            m, omega_grid).real
        if abs(pair_raw) > 1e-8 * max(1.0, scale_of_zero):
            c_k = 1.0 / np.conj(pair_raw)
            how = f"pairing with {sigma.name} normalized to 1"
        else:
            c_k = 1j / norm_raw
            how = "non-admissible; weighted norm normalized to 1"
        family.append(Profile1D(
            name=f"rho{k}",
            real_eval=lambda b, f=raw.real_eval, c=c_k: c * np.asarray(f(b)),
            spectral_eval=lambda w, f=raw.spectral_eval, c=c_k: c * np.asarray(f(w)),
            parity=raw.parity,
            notes=f"c_{k} = {c_k:.9g} ({how})",
        ))
    return family


# ---------------------------------------------------------------------------
# Orthonormal systems


HERMITE_L2 = "hermite_l2"
DAWSON_DERIVATIVE_L2M = "dawson_derivative_l2m"


@dataclass(frozen=True)
class BasisFamily:
    """Ordered orthonormal system, either {e_i} in L²(ℝ^m) or {ρ_j} in the
    weighted spectral space. Gram products are checked at construction."""

    kind: str
    members: tuple
    gram_tolerance: float = 1e-6
    gram_residual: float = 0.0
    m: int = 1
    evaluators: tuple = ()
    fourier_evaluators: tuple = ()

    def __len__(self):
        return len(self.members)


def hermite_function(n: int, x: np.ndarray, scale: float = 1.0) -> np.ndarray:
    """Orthonormal (scaled) Hermite functions, e_n(x/s)/√s, via the stable
    normalized recurrence."""
    x = np.asarray(x, dtype=float) / scale
    h_prev = np.zeros_like(x)
    h = np.pi ** (-0.25) * np.exp(-(x ** 2) / 2.0)
    for k in range(n):
        h_next = x * np.sqrt(2.0 / (k + 1)) * h - np.sqrt(k / (k + 1.0)) * h_prev
        h_prev, h = h, h_next
    return h / np.sqrt(scale)


def hermite_fourier(n: int, xi: np.ndarray, scale: float = 1.0) -> np.ndarray:
    """ê_n(ξ) = √(2π) (−i)^n e_n(ξ) in this package's transform convention
    (scaled family: √(2πs)(−i)^n e_n(sξ))."""
    return np.sqrt(2.0 * np.pi * scale) * (-1j) ** n * hermite_function(n, xi * scale, 1.0)


def hermite_basis(count: int, grid: Grid, gram_tolerance: float = 1e-6,
                  scale: float = 1.0) -> BasisFamily:
    """First `count` (scaled) Hermite functions sampled on a 1-D grid."""
    if grid.dim != 1:
        raise DomainError("hermite_basis builds 1-D systems")
    x = grid.axis(0)
    half = min(abs(grid.lower[0]), abs(grid.upper[0]))
    if half < scale * np.sqrt(2.0 * count + 1.0) + 2.0:
        raise DomainError(
            f"grid half-width {half:g} too small for {count} Hermite functions")
    members = []
    for n in range(count):
        members.append(SampledFunction(grid, hermite_function(n, x, scale) + 0.0j))
    w = grid.axis_weights(0)
    vals = np.stack([mbr.values for mbr in members])
    gram = (vals * w) @ np.conj(vals.T)
    resid = float(np.max(np.abs(gram - np.eye(count))))
    if resid > gram_tolerance:
        raise DomainError(f"Hermite Gram residual {resid:.2e} exceeds {gram_tolerance:g}")
    return BasisFamily(
        kind=HERMITE_L2, members=tuple(members), gram_tolerance=gram_tolerance,
        gram_residual=resid,
        evaluators=tuple((lambda x, n=n: hermite_function(n, x, scale))
                         for n in range(count)),
        fourier_evaluators=tuple((lambda xi, n=n: hermite_fourier(n, xi, scale))
                                 for n in range(count)),
    )


def _interp_profile(name: str, omega_grid: Grid, spec_vals: np.ndarray,
                    notes: str = "") -> Profile1D:
    """Wrap spectral samples into a Profile1D via a cubic spline (0 outside)."""
    from scipy.interpolate import CubicSpline

    om = omega_grid.axis(0)
    spline = CubicSpline(om, spec_vals)
    lo, hi = om[0], om[-1]

    def spec(w, spline=spline, lo=lo, hi=hi):
        w = np.asarray(w, dtype=float)
        out = np.asarray(spline(np.clip(w, lo, hi)), dtype=complex)
        return np.where((w < lo) | (w > hi), 0.0, out)

    return Profile1D(name=name, spectral_eval=spec, parity=PARITY_NONE, notes=notes)


def gram_schmidt_l2m(candidates: Sequence[Profile1D], m: int,
                     omega_grid: Grid | None = None,
                     gram_tolerance: float = 1e-6) -> BasisFamily:
    """Orthonormalize profiles under the |ω|^{-m}-weighted spectral product.

    Modified Gram–Schmidt with a second orthogonalization pass. A candidate
    whose residual norm collapses (< 1e-10 of its own) is reported by index.
    """
    omega_grid = omega_grid or DEFAULT_OMEGA_GRID
    if not candidates:
        raise DomainError("gram_schmidt_l2m needs at least one candidate")
    basis_vals: list[np.ndarray] = []
    for idx, cand in enumerate(candidates):
        v = cand.spectral_values(omega_grid)
        scale = weighted_omega_norm(v, m, omega_grid)
        if not np.isfinite(scale) or scale == 0.0:
            raise DomainError(f"candidate {idx} ({cand.name!r}) has no finite weighted norm")
        v = v / scale
        for _ in range(2):
            for u in basis_vals:
                v = v - weighted_omega_inner(v, u, m, omega_grid) * u
        resid = weighted_omega_norm(v, m, omega_grid)
        if resid < 1e-10:
            raise DomainError(
                f"candidate {idx} ({cand.name!r}) is numerically dependent on its predecessors")
        basis_vals.append(v / resid)
    count = len(basis_vals)
    gram = np.empty((count, count), dtype=complex)
    for i in range(count):
        for j in range(count):
            gram[i, j] = weighted_omega_inner(basis_vals[i], basis_vals[j], m, omega_grid)
    resid = float(np.max(np.abs(gram - np.eye(count))))
    if resid > gram_tolerance:
        raise DomainError(f"Gram residual {resid:.2e} exceeds {gram_tolerance:g}")
    members = tuple(
        _interp_profile(f"gs_{i}({candidates[i].name if i < len(candidates) else i})",
                        omega_grid, v, notes="Gram-Schmidt output in the weighted product")
        for i, v in enumerate(basis_vals))
    return BasisFamily(kind=DAWSON_DERIVATIVE_L2M, members=members,
                       gram_tolerance=gram_tolerance, gram_residual=resid, m=m)
