import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from modburgers.grid import (
    DegenerateSlopeError,
    GridSpec,
    SingularInterfaceError,
    ghost_values,
    interface_derivatives,
    interface_velocity_discrete,
)
from modburgers.model import (
    ShockParams,
    build_initial_profile,
    eval_initial_data,
    shock_derivatives,
    shock_profile,
)

vals = st.floats(-10, 10)
steps = st.floats(1e-3, 0.1)
xis = st.floats(0.05, 5.0)


def test_gridspec_from_step():
    g = GridSpec.from_step(0.02, 10.0)
    assert (g.n_inner, g.m_total) == (50, 500)
    assert g.step == 0.02 and g.domain_length == 10.0
    assert g.y[g.n_inner] == 1.0 and g.y[-1] == 10.0


@pytest.mark.parametrize("h, L", [(0.3, 10.0), (0.02, 10.01)])
def test_gridspec_rejects_inconsistent_step(h, L):
    with pytest.raises(ValueError):
        GridSpec.from_step(h, L)


def test_gridspec_rejects_too_coarse():
    with pytest.raises(ValueError):
        GridSpec(3, 10)
    with pytest.raises(ValueError):
        GridSpec(10, 10)


def test_ghost_examples():
    assert ghost_values(0.0, 0.0, 0.02, 1.0) == (0.0, 0.0)
    g = ghost_values(0.7, 0.7, 0.02, 1.3)
    assert g.v_left == pytest.approx(0.7) and g.v_right == pytest.approx(0.7)
    g = ghost_values(1.0, -1.0, 0.02, 1.0)
    assert g.v_right == pytest.approx(-2.02 / 1.98, rel=1e-15)
    assert g.v_left == pytest.approx(2.02 / 1.98, rel=1e-15)


def _ghost_equations(ul, ur, h, xi, g):
    eq1 = (g.v_right - ul) / (2 * h) - (ur - g.v_left) / (2 * h)
    eq2 = (ur + g.v_left) / h**2 - (g.v_right + ul) / h**2 + 2 * xi * (g.v_right - ul) / (2 * h)
    return eq1, eq2


@given(vals, vals, steps, xis)
def test_ghost_values_solve_interface_equations(ul, ur, h, xi):
    g = ghost_values(ul, ur, h, xi)
    eq1, eq2 = _ghost_equations(ul, ur, h, xi, g)
    scale = 1 + abs(ul) + abs(ur)
    assert abs(eq1) <= 1e-12 * scale / h
    assert abs(eq2) <= 1e-12 * scale / h**2


def test_singular_interface():
    for fn in (ghost_values, interface_derivatives, interface_velocity_discrete):
        with pytest.raises(SingularInterfaceError):
            fn(-0.1, 0.1, 0.5, 4.0)


def test_interface_derivative_examples():
    assert interface_derivatives(0.0, 0.0, 0.02, 1.0) == (0.0, 0.0)
    d, h, xi = 0.013, 0.02, 0.8
    ux, _ = interface_derivatives(-d, d, h, xi)
    assert ux == pytest.approx(2 * d / (h * xi * (2 - h * xi)), rel=1e-15)


def _observed_orders(errors):
    e = np.abs(np.asarray(errors))
    return np.log2(e[:-1] / e[1:])


def test_interface_derivatives_on_exact_shock():
    p = ShockParams(2.0, -1.0, 1.3)
    d1, d2l = shock_derivatives(p, p.xi0, side="left")
    ux_err, uxx_err = [], []
    for h in (0.02, 0.01, 0.005):
        ul = shock_profile(p, p.xi0 * (1 - h))
        ur = shock_profile(p, p.xi0 * (1 + h))
        ux, uxx = interface_derivatives(ul, ur, h, p.xi0)
        ux_err.append(ux - d1)
        uxx_err.append(uxx - d2l)
    assert np.all(_observed_orders(ux_err) > 1.9)
    # U''' jumps at the interface, which limits u_xx to first order
    assert np.all(_observed_orders(uxx_err) > 0.9)


def _piecewise_quartic(xi):
    # u_y continuous, [u_yy] = -2 xi u_y, u_yyy continuous at y = 1
    A, B, C = 0.9, -0.4, 0.3
    Bp = B - xi * A

    def u(y):
        s = y - 1
        return np.where(s < 0, A * s + B * s**2 + C * s**3 + 0.2 * s**4,
                        A * s + Bp * s**2 + C * s**3 - 0.5 * s**4)
    return u, A / xi, 2 * B / xi**2


def test_interface_derivatives_second_order_for_smooth_branches():
    xi = 0.7
    u, ux_true, uxx_true = _piecewise_quartic(xi)
    errs = []
    for h in (0.04, 0.02, 0.01, 0.005):
        ux, uxx = interface_derivatives(u(1 - h), u(1 + h), h, xi)
        errs.append((ux - ux_true, uxx - uxx_true))
    errs = np.array(errs)
    assert np.all(_observed_orders(errs[:, 0]) > 1.8)
    assert np.all(_observed_orders(errs[:, 1]) > 1.8)


def test_interface_velocity_examples():
    assert interface_velocity_discrete(-0.3, 0.3, 0.02, 1.0) == 0.0
    assert interface_velocity_discrete(-0.01, 0.03, 0.02, 1.0) == pytest.approx(-49.5, rel=1e-12)


def test_interface_velocity_degenerate_slope():
    with pytest.raises(DegenerateSlopeError):
        interface_velocity_discrete(1e-14, 1e-14, 0.02, 1.0)
    with pytest.raises(DegenerateSlopeError):
        interface_velocity_discrete(0.1, 0.1 + 1e-6, 0.02, 1.0, slope_floor=1e-5)


@given(vals, vals, steps, xis)
def test_interface_velocity_matches_both_one_sided_forms(ul, ur, h, xi):
    if abs(ur - ul) < 1e-3:
        return
    g = ghost_values(ul, ur, h, xi)
    uy = (g.v_right - ul) / (2 * h)
    uyy_right = (ur + g.v_left) / h**2
    uyy_left = (g.v_right + ul) / h**2
    from_right = -1 - uyy_right / (xi * uy)
    from_left = 1 - uyy_left / (xi * uy)
    v = interface_velocity_discrete(ul, ur, h, xi)
    tol = 1e-9 * (1 + abs(v)) * (1 + abs(ul) + abs(ur)) / abs(ur - ul)
    assert from_left == pytest.approx(v, abs=tol)
    assert from_right == pytest.approx(v, abs=tol)


@pytest.mark.parametrize("alpha", [0.1, 0.5, 1.5])
def test_interface_velocity_of_initial_data(alpha):
    p = build_initial_profile(alpha)
    errs = []
    for h in (0.02, 0.01, 0.005):
        v = interface_velocity_discrete(eval_initial_data(p, 1 - h), eval_initial_data(p, 1 + h), h, 1.0)
        errs.append(v - 2 * (alpha - 1))
    # leading error is -h (2 alpha + 3)(7 alpha - 3) / 21 (third-derivative jump at x = 1)
    lead = -(2 * alpha + 3) * (7 * alpha - 3) / 21
    for h, e in zip((0.02, 0.01, 0.005), errs):
        assert e == pytest.approx(lead * h, rel=0.1)
    assert abs(errs[-1]) < abs(errs[0])
