"""Admissibility analysis, ghost construction, projection onto the
orthocomplement of the null space, the structure decomposition, the ridgelet
series expansion, and the lazy-learning minimizer.

A pair (σ, ρ) is admissible when ⟨⟨σ,ρ⟩⟩ is neither 0 nor ∞; ridgelet
transforms with non-admissible ρ generate ghosts (null elements of S). With a
unit-norm activation, P = S*∘S projects onto the orthocomplement and I − P
onto the ghosts.

Normalization used throughout analysis/synthesis (recorded constants): with
{e_i} orthonormal in L² and ρ' of unit weighted norm, the fields R[e_i;ρ'_i]
are orthonormal in L²(da db), so

    coefficient  c = √(2π)·⟨γ, R[e;ρ]⟩_{L²},
    synthesis    γ = (1/√(2π)) Σ c·R[e;ρ],
    Parseval     Σ|c|² = 2π‖γ‖².
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .fourier import partial_flat_b, partial_sharp_b
from .grids import (
    DomainError,
    Grid,
    ParamDistribution,
    SampledFunction,
    SpectralFunction,
    UnsupportedProfileError,
    l2_inner,
    l2_norm,
    weighted_omega_inner,
    weighted_omega_norm,
)
from .profiles import (
    DEFAULT_OMEGA_GRID,
    BasisFamily,
    Profile1D,
    _interp_profile,
    gaussian_profile,
)
from .transforms import (
    AdjointMode,
    NetworkOperator,
    PLAIN_L2,
    _default_op_omega_grid,
    forward_s,
    forward_s_via_fourier,
    ridgelet,
    ridgelet_fourier,
)

ANALYTIC_SPECTRA = "analytic_spectra"
GRID_SPECTRA = "grid_spectra"


@dataclass(frozen=True)
class AdmissibilityReport:
    pairing: complex
    method: str
    parity_forced_zero: bool
    error_estimate: float

    @property
    def numerically_zero(self) -> bool:
        return abs(self.pairing) <= max(1e-8, 10.0 * self.error_estimate)


def admissibility(sigma: Profile1D, rho: Profile1D, m: int,
                  omega_grid: Grid | None = None) -> AdmissibilityReport:
    """Evaluate ⟨⟨σ,ρ⟩⟩ on a straddling grid and report how sure the zero is.

    parity_forced_zero is set when the declared parities make the integrand
    odd (the symmetric trapezoid sum then cancels to roundoff).
    """
    omega_grid = omega_grid or DEFAULT_OMEGA_GRID
    if sigma.spectral_eval is None or rho.spectral_eval is None:
        raise UnsupportedProfileError(
            f"admissibility needs spectra for both {sigma.name!r} and {rho.name!r}")
    omega = omega_grid.axis(0)
    w = omega_grid.axis_weights(0)
    su = sigma.spectral_values(omega_grid)
    ru = rho.spectral_values(omega_grid)
    integrand = su * np.conj(ru) * np.abs(omega) ** float(-m)
    pair = complex((2.0 * np.pi) ** (m - 1) * np.sum(integrand * w))
    total_variation = float((2.0 * np.pi) ** (m - 1) * np.sum(np.abs(integrand) * w))
    boundary = float(np.abs(integrand[0]) + np.abs(integrand[-1])) * omega_grid.spacing[0]
    err = 1e-13 * total_variation + boundary
    # integrand parity: σ♯·conj(ρ♯)·even-weight; equal parities give an even
    # integrand, mixed parities an odd one that cancels on the symmetric grid.
    parities = {sigma.parity, rho.parity}
    forced = ("none" not in parities) and (sigma.parity != rho.parity)
    return AdmissibilityReport(pairing=pair, method=ANALYTIC_SPECTRA,
                               parity_forced_zero=forced, error_estimate=err)


@dataclass(frozen=True)
class DisjointSupport:
    """Recipe (i): ρ₀♯ supported where σ♯ has (numerically) no support."""
    center: float | None = None
    width: float | None = None
    support_tol: float = 1e-10


@dataclass(frozen=True)
class NormalizedDifference:
    """Recipe (ii): ρ − ρ' after normalizing both pairings to 1."""
    rho_a: Profile1D = None
    rho_b: Profile1D = None


@dataclass(frozen=True)
class LinearCombination:
    """Recipe (iii): αρ₀ + βρ₀' of two non-admissible profiles."""
    rho_a: Profile1D = None
    rho_b: Profile1D = None
    alpha: complex = 1.0
    beta: complex = 1.0


def make_nonadmissible(sigma: Profile1D, recipe, m: int = 1,
                       omega_grid: Grid | None = None) -> Profile1D:
    """Construct a profile with ⟨⟨σ, out⟩⟩ ≈ 0 by one of the three recipes."""
    omega_grid = omega_grid or DEFAULT_OMEGA_GRID
    omega = omega_grid.axis(0)

    if isinstance(recipe, DisjointSupport):
        spec = np.abs(sigma.spectral_values(omega_grid))
        peak = float(np.max(spec))
        outside = np.abs(spec) <= recipe.support_tol * peak
        usable = outside & (np.abs(omega) > 0.5)
        if recipe.center is None:
            if not np.any(usable):
                raise DomainError(
                    f"{sigma.name!r} spectrum has no numerically free band on this grid")
            lo = float(np.min(np.abs(omega[usable])))
            hi = float(np.max(np.abs(omega)))
            center = 0.5 * (lo + hi)
            width = max((hi - lo) / 8.0, 2.0 * omega_grid.spacing[0])
        else:
            center, width = recipe.center, recipe.width or 0.5
        vals = (np.exp(-((omega - center) ** 2) / (2 * width ** 2))
                + np.exp(-((omega + center) ** 2) / (2 * width ** 2))) + 0.0j
        vals /= weighted_omega_norm(vals, m, omega_grid)
        return _interp_profile(f"disjoint({sigma.name})", omega_grid, vals,
                               notes=f"bump pair at ±{center:g}, width {width:g}, unit weighted norm")

    if isinstance(recipe, NormalizedDifference):
        pa = admissibility(sigma, recipe.rho_a, m, omega_grid).pairing
        pb = admissibility(sigma, recipe.rho_b, m, omega_grid).pairing
        scale = weighted_omega_inner(
            np.abs(sigma.spectral_values(omega_grid)),
            np.abs(recipe.rho_a.spectral_values(omega_grid)), m, omega_grid).real
        if abs(pa) <= 1e-8 * max(1.0, scale) or abs(pb) <= 1e-8 * max(1.0, scale):
            raise DomainError("recipe (ii) needs two admissible inputs with nonzero pairings")
        va = recipe.rho_a.spectral_values(omega_grid) / np.conj(pa)
        vb = recipe.rho_b.spectral_values(omega_grid) / np.conj(pb)
        vals = va - vb
        nrm = weighted_omega_norm(vals, m, omega_grid)
        if nrm > 0:
            vals = vals / nrm
        return _interp_profile(f"diff({recipe.rho_a.name},{recipe.rho_b.name})",
                               omega_grid, vals,
                               notes="difference of unit-pairing profiles, unit weighted norm")

    if isinstance(recipe, LinearCombination):
        va = recipe.rho_a.spectral_values(omega_grid)
        vb = recipe.rho_b.spectral_values(omega_grid)
        vals = recipe.alpha * va + recipe.beta * vb
        nrm = weighted_omega_norm(vals, m, omega_grid)
        if nrm > 1e-14:
            vals = vals / nrm
        return _interp_profile(f"lincomb({recipe.rho_a.name},{recipe.rho_b.name})",
                               omega_grid, vals,
                               notes=f"α={recipe.alpha:g}, β={recipe.beta:g}, normalized "
                                     "when nonzero")

    raise DomainError(f"unknown recipe {type(recipe).__name__}")


def _require_plain_normalized(op: NetworkOperator, mode: AdjointMode):
    if mode.kind != PLAIN_L2:
        raise DomainError("projection machinery runs in plain-L² mode")
    if not op.is_normalized:
        raise DomainError("plain-L² projection requires a unit-norm activation")


def project(op: NetworkOperator, gamma: ParamDistribution,
            mode: AdjointMode = AdjointMode.plain(), use_fourier: bool = True):
    """(P[γ], γ − P[γ]) with P = S*∘S; the ghost part is annihilated by S."""
    _require_plain_normalized(op, mode)
    if use_fourier and op.sigma.spectral_eval is not None:
        f = forward_s_via_fourier(op, gamma)
        principal = ridgelet_fourier(f, op.sigma, op.param_grid)
    else:
        f = forward_s(op, gamma)
        principal = ridgelet(f, op.sigma, op.param_grid, op.scheme)
    return principal, gamma - principal


def lazy_solution(op: NetworkOperator, f: SampledFunction, gamma_init: ParamDistribution,
                  use_fourier: bool = True) -> ParamDistribution:
    """γ_lazy = S*[f] + (γ_init − P[γ_init]): solves S[γ] = f while staying
    closest to the initialization (the ghost part of γ_init is kept)."""
    _require_plain_normalized(op, AdjointMode.plain())
    if use_fourier and op.sigma.spectral_eval is not None:
        principal_f = ridgelet_fourier(f, op.sigma, op.param_grid)
    else:
        principal_f = ridgelet(f, op.sigma, op.param_grid, op.scheme)
    _, ghost_init = project(op, gamma_init, use_fourier=use_fourier)
    return principal_f + ghost_init


def ridgelet_atom(basis_e: BasisFamily, i: int, rho: Profile1D, param_grid: Grid,
                  omega_grid: Grid | None = None) -> ParamDistribution:
    """R[e_i;ρ] built from the basis' analytic Fourier evaluator (fast path
    when available, falls back to the sampled-function slice path)."""
    omega_grid = omega_grid or _default_op_omega_grid(param_grid)
    if basis_e.fourier_evaluators:
        omega = omega_grid.axis(0)
        a = param_grid.axis(0)
        sheared = np.outer(a, omega)
        spec_vals = basis_e.fourier_evaluators[i](sheared) \
            * np.conj(rho.spectral_values(omega_grid))[None, :]
        spec_grid = Grid(param_grid.lower[:-1] + omega_grid.lower,
                         param_grid.upper[:-1] + omega_grid.upper,
                         param_grid.counts[:-1] + omega_grid.counts)
        spec = SpectralFunction(spec_grid, spec_vals)
        b_grid = Grid.line(param_grid.lower[-1], param_grid.upper[-1], param_grid.counts[-1])
        return partial_flat_b(spec, b_grid)
    return ridgelet_fourier(basis_e.members[i], rho, param_grid, omega_grid)


@dataclass(frozen=True)
class StructureDecomposition:
    principal: ParamDistribution
    ghost: ParamDistribution
    coefficients: tuple
    ghost_ridgelets: tuple
    residual_norm: float

    def parseval_gap(self) -> float:
        """|Σ c'² − 2π‖ghost‖²| / (2π‖ghost‖²)."""
        total = 2.0 * np.pi * l2_norm(self.ghost) ** 2
        if total == 0.0:
            return 0.0
        return abs(sum(abs(c) ** 2 for c in self.coefficients) - total) / total


def structure_decompose(op: NetworkOperator, gamma: ParamDistribution,
                        basis_e: BasisFamily, max_terms: int,
                        use_fourier: bool = True) -> StructureDecomposition:
    """γ = S*[f] + (1/√(2π)) Σ c'_i R[e_i;ρ'_i] with f = S[γ].

    The per-index ghost profiles come from projecting the sheared spectrum of
    the ghost part onto ê_i:

        T_i(ω) = |ω|^m ∫ ghost♯(u, ω) conj(ê_i(ωu)) du,
        ρ'_i♯ = conj(T_i)/N_i,   c'_i = √(2π)(2π)^{-m} N_i,  N_i = ‖conj(T_i)‖.

    Each extracted ρ'_i has unit weighted norm and pairs to zero with σ.
    """
    if max_terms > len(basis_e):
        raise DomainError(f"max_terms {max_terms} exceeds basis size {len(basis_e)}")
    if not basis_e.fourier_evaluators:
        raise DomainError("structure_decompose needs a basis with Fourier evaluators")
    m = op.m
    if m != 1:
        raise DomainError("structure extraction implemented for m = 1")
    principal, ghost = project(op, gamma, use_fourier=use_fourier)
    omega_grid = _default_op_omega_grid(op.param_grid)
    omega = omega_grid.axis(0)
    gs = partial_sharp_b(ghost, omega_grid)          # (Na, Nω)
    u_nodes = op.param_grid.axis(0)
    wu = op.param_grid.axis_weights(0)
    ghost_scale = l2_norm(ghost)
    # the exact extraction is σ-orthogonal (S annihilates the ghost part);
    # deflating the residual σ-component removes projection noise so every
    # emitted profile pairs to zero with the activation
    sig_vals = op.sigma.spectral_values(omega_grid)
    sig_vals = sig_vals / weighted_omega_norm(sig_vals, m, omega_grid)
    coeffs = []
    rhos = []
    synth_spec = np.zeros_like(gs.values)
    for i in range(max_terms):
        ehat = basis_e.fourier_evaluators[i](np.outer(u_nodes, omega))   # ê_i(ωu)
        t_vals = np.abs(omega) ** m * np.sum(gs.values * np.conj(ehat) * wu[:, None], axis=0)
        rho_tilde = np.conj(t_vals)
        rho_tilde = rho_tilde - weighted_omega_inner(rho_tilde, sig_vals, m,
                                                     omega_grid) * sig_vals
        n_i = weighted_omega_norm(rho_tilde, m, omega_grid)
        if not np.isfinite(n_i) or n_i <= 1e-12 * max(ghost_scale, 1e-30):
            coeffs.append(0.0 + 0.0j)
            rhos.append(None)
            continue
        rho_vals = rho_tilde / n_i
        c_i = np.sqrt(2.0 * np.pi) * (2.0 * np.pi) ** (-m) * n_i
        coeffs.append(complex(c_i))
        rhos.append(_interp_profile(f"ghost_rho_{i}", omega_grid, rho_vals,
                                    notes="extracted ghost profile, unit weighted norm"))
        synth_spec += (c_i / np.sqrt(2.0 * np.pi)) * ehat * np.conj(rho_vals)[None, :]
    b_grid = Grid.line(op.param_grid.lower[-1], op.param_grid.upper[-1],
                       op.param_grid.counts[-1])
    spec_grid = Grid(op.param_grid.lower[:-1] + omega_grid.lower,
                     op.param_grid.upper[:-1] + omega_grid.upper,
                     op.param_grid.counts[:-1] + omega_grid.counts)
    synth = partial_flat_b(SpectralFunction(spec_grid, synth_spec), b_grid)
    residual = l2_norm(ghost - synth)
    return StructureDecomposition(principal=principal, ghost=ghost,
                                  coefficients=tuple(coeffs),
                                  ghost_ridgelets=tuple(rhos),
                                  residual_norm=residual)


@dataclass(frozen=True)
class ExpansionCoefficients:
    c: np.ndarray                 # (I, J) complex
    truncation: tuple[int, int]

    def partial_parseval(self) -> np.ndarray:
        """Cumulative Σ|c_ij|² over growing rectangles (nondecreasing)."""
        mags = np.abs(self.c) ** 2
        return np.cumsum(np.cumsum(mags, axis=0), axis=1)

    @property
    def total(self) -> float:
        return float(np.sum(np.abs(self.c) ** 2))


def density_expand(gamma: ParamDistribution, basis_e: BasisFamily,
                   basis_rho: BasisFamily, truncation: tuple[int, int],
                   atoms: list | None = None) -> ExpansionCoefficients:
    """c_ij = √(2π)·⟨γ, R[e_i;ρ_j]⟩ for orthonormal systems {e_i}, {ρ_j};
    partial Parseval sums are monotone and bounded by 2π‖γ‖²."""
    I, J = truncation
    if I > len(basis_e) or J > len(basis_rho):
        raise DomainError("truncation exceeds the basis sizes")
    c = np.zeros((I, J), dtype=complex)
    for i in range(I):
        for j in range(J):
            atom = atoms[i][j] if atoms is not None else ridgelet_atom(
                basis_e, i, basis_rho.members[j], gamma.grid)
            c[i, j] = np.sqrt(2.0 * np.pi) * l2_inner(gamma, atom)
    return ExpansionCoefficients(c=c, truncation=(I, J))


def density_synthesize(coeffs: ExpansionCoefficients, basis_e: BasisFamily,
                       basis_rho: BasisFamily, param_grid: Grid,
                       atoms: list | None = None) -> ParamDistribution:
    """(1/√(2π)) Σ c_ij R[e_i;ρ_j] — inverse of density_expand on the span."""
    I, J = coeffs.truncation
    acc = None
    for i in range(I):
        for j in range(J):
            atom = atoms[i][j] if atoms is not None else ridgelet_atom(
                basis_e, i, basis_rho.members[j], param_grid)
            term = (coeffs.c[i, j] / np.sqrt(2.0 * np.pi)) * atom
            acc = term if acc is None else acc + term
    return acc


def build_atoms(basis_e: BasisFamily, basis_rho: BasisFamily, param_grid: Grid,
                truncation: tuple[int, int]) -> list:
    """Precompute the R[e_i;ρ_j] table shared by expansion and synthesis."""
    I, J = truncation
    return [[ridgelet_atom(basis_e, i, basis_rho.members[j], param_grid)
             for j in range(J)] for i in range(I)]
