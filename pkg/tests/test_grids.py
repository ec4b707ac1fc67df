import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from ghostlet import (
    DataError,
    DomainError,
    Grid,
    ParamDistribution,
    QuadratureScheme,
    SampledFunction,
    integrate,
    l2_inner,
    l2_norm,
    sample,
    weighted_omega_inner,
)
from ghostlet.profiles import hermite_function


def test_grid_invariants():
    g = Grid.line(0.0, 1.0, 11)
    assert g.dim == 1
    assert_allclose(g.spacing[0], 0.1)
    assert g.total_points == 11
    with pytest.raises(DomainError):
        Grid.line(1.0, 0.0, 11)          # lower >= upper
    with pytest.raises(DomainError):
        Grid.line(0.0, 1.0, 1)           # needs 2+ points per axis


def test_integrate_constant_is_exact():
    g = Grid.line(0.0, 1.0, 64)
    assert_allclose(integrate(sample(g, lambda x: np.ones_like(x))).real, 1.0, atol=1e-14)


def test_integrate_zero():
    g = Grid.line(-3.0, 5.0, 33)
    assert integrate(sample(g, lambda x: 0.0 * x)) == 0.0


def test_integrate_x_squared_vs_antiderivative_oracle():
    # closed form: x^3/3 on [0,1] -> 1/3
    g = Grid.line(0.0, 1.0, 101)
    assert_allclose(integrate(sample(g, lambda x: x ** 2)).real, 1.0 / 3.0, atol=1e-4)


def test_integrate_monte_carlo_reproducible():
    g = Grid.line(-1.0, 1.0, 201)
    f = sample(g, lambda x: np.cos(3 * x))
    scheme = QuadratureScheme.monte_carlo(4096, seed=42)
    a = integrate(f, scheme)
    b = integrate(f, scheme)
    assert a == b
    assert abs(a - integrate(f)) < 0.05


def test_integrate_refinement_is_second_order():
    exact = 2.0 * np.sin(2.0)  # ∫_{-2}^{2} cos x dx
    errs = []
    for n in (33, 65, 129):
        g = Grid.line(-2.0, 2.0, n)
        errs.append(abs(integrate(sample(g, np.cos)).real - exact))
    assert errs[0] / errs[1] == pytest.approx(4.0, rel=0.2)
    assert errs[1] / errs[2] == pytest.approx(4.0, rel=0.2)


def test_nan_rejected():
    g = Grid.line(0.0, 1.0, 4)
    with pytest.raises(DataError):
        SampledFunction(g, np.array([0.0, np.nan, 1.0, 2.0]))


def test_grid_mismatch_rejected():
    u = sample(Grid.line(0, 1, 8), lambda x: x)
    v = sample(Grid.line(0, 1, 9), lambda x: x)
    with pytest.raises(DomainError):
        l2_inner(u, v)


def test_trapezoid_linearity_machine_precision():
    g = Grid.line(-2.0, 3.0, 57)
    u = sample(g, lambda x: np.exp(-x ** 2) * (1 + 0.3j))
    v = sample(g, lambda x: np.sin(x))
    lhs = integrate(2.5 * u + (-1.0 + 0.5j) * v)
    rhs = 2.5 * integrate(u) + (-1.0 + 0.5j) * integrate(v)
    assert abs(lhs - rhs) < 1e-13 * max(1.0, abs(lhs))


def test_l2_inner_zero_and_hermitian():
    g = Grid.line(-4.0, 4.0, 65)
    z = sample(g, lambda x: 0.0 * x)
    assert l2_inner(z, z) == 0.0
    rng = np.random.default_rng(7)
    u = SampledFunction(g, rng.normal(size=65) + 1j * rng.normal(size=65))
    v = SampledFunction(g, rng.normal(size=65) + 1j * rng.normal(size=65))
    assert l2_inner(u, v) == pytest.approx(np.conj(l2_inner(v, u)), abs=1e-12)


def test_hermite_orthogonality_oracle():
    g = Grid.line(-12.0, 12.0, 1024)
    e0 = SampledFunction(g, hermite_function(0, g.axis(0)) + 0j)
    e1 = SampledFunction(g, hermite_function(1, g.axis(0)) + 0j)
    assert abs(l2_inner(e0, e1)) < 1e-8


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=0, max_value=10_000))
def test_l2_norm_triangle_inequality(seed):
    g = Grid.line(-3.0, 3.0, 41)
    rng = np.random.default_rng(seed)
    u = SampledFunction(g, rng.normal(size=41) + 1j * rng.normal(size=41))
    v = SampledFunction(g, rng.normal(size=41) + 1j * rng.normal(size=41))
    assert l2_norm(u + v) <= l2_norm(u) + l2_norm(v) + 1e-12


def test_weighted_inner_zero_and_symmetry():
    g = Grid.line(-12.0, 12.0, 1024)
    z = np.zeros(1024, dtype=complex)
    rng = np.random.default_rng(3)
    u = rng.normal(size=1024) * np.exp(-g.axis(0) ** 2 / 2)
    v = rng.normal(size=1024) * np.exp(-g.axis(0) ** 2 / 2)
    assert weighted_omega_inner(u, z, 1, g) == 0.0
    assert weighted_omega_inner(u, v, 1, g) == pytest.approx(
        np.conj(weighted_omega_inner(v, u, 1, g)), abs=1e-12)


def test_weighted_inner_gaussian_derivative_oracle():
    # ∫ ω² e^{-ω²} / |ω| dω = ∫ |ω| e^{-ω²} dω = 1 (closed form)
    g = Grid.line(-12.0, 12.0, 2048)
    u = g.axis(0) * np.exp(-g.axis(0) ** 2 / 2.0)
    assert weighted_omega_inner(u, u, 1, g).real == pytest.approx(1.0, abs=1e-6)


def test_weighted_inner_parity_cancellation():
    g = Grid.line(-12.0, 12.0, 2048)
    omega = g.axis(0)
    even = np.exp(-omega ** 2 / 2.0)
    odd = omega * np.exp(-omega ** 2 / 2.0)
    val = weighted_omega_inner(even, odd, 1, g)
    assert abs(val.real) < 1e-10


def test_weighted_inner_rejects_node_at_zero():
    g = Grid.line(-1.0, 1.0, 21)  # odd count -> node at 0
    with pytest.raises(DomainError):
        weighted_omega_inner(np.ones(21), np.ones(21), 1, g)


def test_param_distribution_needs_two_axes():
    with pytest.raises(DomainError):
        ParamDistribution(Grid.line(0, 1, 4), np.zeros(4))
