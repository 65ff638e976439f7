import numpy as np
import pytest

from modburgers.grid import GridSpec, SingularInterfaceError, ghost_values
from modburgers.solver import (
    ConfigError,
    SimConfig,
    assemble_cn_system,
    initial_state,
    operator_diagonals,
    run,
    step,
)
from modburgers.state import SimState


def _bump(grid, t=0.0):
    # exact solution of u_t = u_y + u_yy on [1, L], zero at both ends
    y, ell = grid.y, grid.domain_length - 1
    k = np.pi / ell
    return np.where(y >= 1, np.exp(-(y - 1) / 2 - t / 4 - k * k * t) * np.sin(k * (y - 1)), 0.0)


def _cn_dirichlet(grid, u, dt, nsteps):
    for n in range(nsteps):
        u = assemble_cn_system(SimState(n * dt, u, 1.0, 0.0), 1.0, 0.0, dt, grid, neumann=False).solve()
        u[grid.n_inner] = u[-1] = 0.0
    return u


def test_config_defaults_and_validation():
    cfg = SimConfig(alpha=0.5)
    assert (cfg.domain_length, cfg.step, cfg.dt, cfg.xi_stop, cfg.output_every) == (10.0, 0.02, 1e-4, 0.3, 10)
    assert cfg.end_time == pytest.approx(1.80092, abs=1e-5)
    for bad in (dict(alpha=0), dict(alpha=1, dt=0), dict(alpha=1, step=0.03),
                dict(alpha=1, output_every=0), dict(alpha=1, step=2.5, domain_length=5.0),
                dict(alpha=1, coupling="euler"), dict(alpha=1, t_end=-1)):
        with pytest.raises(ConfigError):
            SimConfig(**bad)


def test_operator_rows():
    g = GridSpec(10, 30)
    lo, main, up = operator_diagonals(0.8, -1.2, g)
    for k in (0, g.n_inner):
        assert lo[k] == main[k] == up[k] == 0.0
    assert lo[-1] == -main[-1] and up[-1] == 0.0
    # row sums vanish away from the boundaries: constants are in the kernel
    interior = [k for k in range(1, g.m_total) if k != g.n_inner]
    assert np.allclose((lo + main + up)[interior], 0.0)
    # inner advection coefficient is (xi' y - 1)/xi
    k = 3
    h = g.step
    assert (up[k] - lo[k]) * h == pytest.approx((-1.2 * g.y[k] - 1) / 0.8)


def test_zero_state_stays_zero():
    g = GridSpec(10, 30)
    sys_ = assemble_cn_system(SimState(0.0, np.zeros(31), 1.0, 0.0), 1.0, 0.3, 1e-3, g)
    assert not sys_.rhs.any()
    assert not sys_.solve().any()


def test_singular_frozen_interface():
    g = GridSpec(10, 30)
    with pytest.raises(SingularInterfaceError):
        assemble_cn_system(SimState(0.0, np.zeros(31), 1.0, 0.0), 25.0, 0.0, 1e-3, g)


def test_cn_matches_exact_solution():
    g = GridSpec(40, 80)
    dt, n = 1e-3, 100
    u = _cn_dirichlet(g, _bump(g), dt, n)
    assert np.max(np.abs(u - _bump(g, n * dt))) < 2e-4


def test_cn_step_halving_local_error_is_third_order():
    g = GridSpec(20, 40)
    u0 = _bump(g)
    diffs = []
    for dt in (4e-3, 2e-3, 1e-3):
        one = _cn_dirichlet(g, u0, dt, 1)
        two = _cn_dirichlet(g, u0, dt / 2, 2)
        diffs.append(np.max(np.abs(one - two)))
    orders = np.log2(np.array(diffs[:-1]) / np.array(diffs[1:]))
    assert np.all(orders > 2.7)


def test_initial_state():
    cfg = SimConfig(alpha=1.5)
    s = initial_state(cfg)
    g = cfg.grid()
    assert s.t == 0.0 and s.xi == 1.0
    assert s.u[0] == 0.0 and s.u[g.n_inner] == 0.0
    assert s.xi_prime == pytest.approx(1.0, rel=0.05)


def test_zero_speed_data_moves_interface_only_at_second_order():
    cfg = SimConfig(alpha=1.0)
    g = cfg.grid()
    s0 = initial_state(cfg, g)
    u = s0.u.copy()
    u[g.n_inner - 1] = -u[g.n_inner + 1]
    s0 = SimState(0.0, u, 1.0, 0.0)
    moves = []
    for dt in (1e-4, 5e-5):
        s1 = step(s0, SimConfig(alpha=1.0, dt=dt), g)
        moves.append(abs(s1.xi - 1.0))
    assert moves[1] < moves[0] / 3.5


@pytest.mark.parametrize("alpha, sign", [(1.5, 1), (0.5, -1)])
def test_first_steps_follow_initial_speed(alpha, sign):
    cfg = SimConfig(alpha=alpha)
    g = cfg.grid()
    s = initial_state(cfg, g)
    xs = [s.xi]
    for _ in range(20):
        s = step(s, cfg, g)
        xs.append(s.xi)
        assert s.u[0] == 0.0 and s.u[g.n_inner] == 0.0
    assert np.all(sign * np.diff(xs) > 0)


def test_run_alpha_01_reaches_stop_before_extinction(runs):
    records, _ = runs(0.1)
    last = records[-1]
    assert last.stop == "xi_stop"
    assert last.xi <= 0.3
    assert last.t < 0.1738
    assert all(r.stop is None for r in records[:-1])
    assert all(np.isfinite(r.values()).all() for r in records)


def test_run_output_cadence_and_t_end():
    recs = run(SimConfig(alpha=0.5, t_end=0.0105, output_every=10))
    ts = [r.t for r in recs]
    assert ts[:3] == pytest.approx([0.0, 1e-3, 2e-3], abs=1e-15)
    assert recs[-1].stop == "t_end"
    assert recs[-1].t == pytest.approx(0.0105, abs=1e-12)


def test_run_degenerate_slope_is_a_clean_stop():
    recs = run(SimConfig(alpha=0.5, slope_floor=0.035))
    assert recs[-1].stop == "degenerate_slope"
    assert len(recs) > 1


def test_run_unusable_initial_data_is_config_error():
    with pytest.raises(ConfigError):
        run(SimConfig(alpha=0.5, slope_floor=1.0))


def test_heun_coupling_agrees_early():
    implicit = run(SimConfig(alpha=0.5, t_end=0.02))
    heun = run(SimConfig(alpha=0.5, t_end=0.02, coupling="heun"))
    assert heun[-1].xi == pytest.approx(implicit[-1].xi, abs=5e-5)


def test_ghost_relations_hold_along_run(runs):
    records, states = runs(0.5)
    cfg = SimConfig(alpha=0.5)
    g = cfg.grid()
    h = g.step
    for s in states:
        ul, ur = g.neighbors(s.u)
        gh = ghost_values(ul, ur, h, s.xi)
        eq1 = (gh.v_right - ul) - (ur - gh.v_left)
        eq2 = (ur + gh.v_left) - (gh.v_right + ul) + s.xi * h * (gh.v_right - ul)
        assert abs(eq1) < 1e-15 and abs(eq2) < 1e-15
        assert s.u[0] == 0.0 and s.u[g.n_inner] == 0.0


def test_dt_refinement_is_second_order():
    xi = {}
    for dt in (4e-4, 2e-4, 1e-4):
        recs = run(SimConfig(alpha=0.5, dt=dt, t_end=0.1, output_every=int(round(0.01 / dt))))
        assert recs[-1].t == pytest.approx(0.1, abs=1e-12)
        xi[dt] = recs[-1].xi
    order = np.log2((xi[4e-4] - xi[2e-4]) / (xi[2e-4] - xi[1e-4]))
    assert order > 1.8
