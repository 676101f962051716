"""Acceptance criteria, one test per criterion, each printing a PASS line
with the observed worst-case discrepancy next to its tolerance.

Grids and tolerances are pinned here; nothing is deferred to calibration.
Criterion 2 is the heavyweight (twelve density-matrix evolutions at dim 40);
the whole module runs in a few minutes on a laptop.
"""

import math
from fractions import Fraction

import numpy as np

from fockchannel import (BathSpec, ChannelParams, IntegratorCtrl, bessel_i0_scaled,
                         cat01_state, chi_cat01, chi_number, evolve, fock_state,
                         laguerre, legendre, lindblad_rhs, propagate, purity_2d,
                         purity_asymptotic, purity_cat01, purity_of,
                         purity_squeezed, purity_thermal, squeezed_thermal_state)

THERMAL_NS = (0.1, 0.5, 1.0)
ORDERS = (0, 1, 2, 3)
GRID_GT = (0.1, 0.5, 1.0, 2.0)
SQUEEZED_RS = (0.5, 1.0)

# Oracle controls for strongly squeezed baths: the stationary state's top-10%
# tail saturates near 1e-4 at any practical dimension when r = 1, while the
# purity itself is dimension-converged to better than 1e-7 (certified by the
# d -> d+10 check in criterion 7), so the tail gate is relaxed there.
R1_DIM = 90
R1_TAIL_TOL = 1e-4


def oracle_purities(state, N, M, times, dim, dt=1e-3, tail_tol=1e-8):
    ctrl = IntegratorCtrl(dt=dt, t_final=max(times), tail_tol=tail_tol)
    snaps = evolve(state, N, M, ctrl, snapshot_times=list(times))
    return {t: purity_of(s) for t, s in snaps}


def test_criterion_1_pure_start():
    """Purity at gamma_t = 0 equals 1 on every path for every initial state."""
    worst_closed = worst_oracle = 0.0
    for n in ORDERS:
        worst_closed = max(worst_closed, abs(purity_thermal(n, 0.5, 0.0) - 1.0))
        worst_closed = max(worst_closed, abs(purity_squeezed(n, 1.0, 0.8, 0.0) - 1.0))
        worst_closed = max(worst_closed, abs(purity_2d(chi_number(n)) - 1.0))
        worst_oracle = max(worst_oracle, abs(purity_of(fock_state(n, 40)) - 1.0))
    for theta in (0.0, 1.0, 2.5):
        bath = BathSpec(mu_inf=0.5, r=0.3, phi=0.2)
        worst_closed = max(worst_closed, abs(purity_cat01(bath, theta, 0.0) - 1.0))
        worst_closed = max(worst_closed, abs(purity_2d(chi_cat01(theta)) - 1.0))
        worst_oracle = max(worst_oracle, abs(purity_of(cat01_state(theta, 40)) - 1.0))
    snaps = evolve(fock_state(1, 30), 0.5, 0j, IntegratorCtrl(dt=1e-3, t_final=0.0),
                   snapshot_times=[0.0])
    worst_oracle = max(worst_oracle, abs(purity_of(snaps[0][1]) - 1.0))
    assert worst_closed <= 1e-9
    assert worst_oracle <= 1e-6
    print(f"ACCEPTANCE 1 pure start: PASS  closed/quad {worst_closed:.2e} <= 1e-9, "
          f"oracle {worst_oracle:.2e} <= 1e-6")


def test_criterion_2_three_way_thermal():
    """closed form vs 1d (1e-8), 2d (1e-6) and oracle d=40 dt=1e-3 (1e-4)."""
    worst_1d = worst_2d = worst_oracle = 0.0
    for n in ORDERS:
        for N in THERMAL_NS:
            ch = ChannelParams(gamma=1.0, N=N, M=0j)
            oracle = oracle_purities(fock_state(n, 40), N, 0j, GRID_GT, dim=40)
            for gt in GRID_GT:
                cf = purity_thermal(n, N, gt)
                worst_1d = max(worst_1d, abs(cf - purity_squeezed(n, N, 0.0, gt)))
                q2 = purity_2d(propagate(chi_number(n), ch, gt))
                worst_2d = max(worst_2d, abs(cf - q2))
                worst_oracle = max(worst_oracle, abs(cf - oracle[gt]))
    assert worst_1d <= 1e-8
    assert worst_2d <= 1e-6
    assert worst_oracle <= 1e-4
    print(f"ACCEPTANCE 2 thermal three-way: PASS  |cf-1d| {worst_1d:.2e} <= 1e-8, "
          f"|cf-2d| {worst_2d:.2e} <= 1e-6, |cf-oracle| {worst_oracle:.2e} <= 1e-4")


def test_criterion_3_squeezed_agreement():
    """Phase-sensitive purity integral vs oracle (1e-4); |M|=0 reduction (1e-10)."""
    worst_oracle = 0.0
    for r in SQUEEZED_RS:
        bath = BathSpec(mu_inf=0.5, r=r, phi=0.0)
        ch = bath.to_channel()
        dim = R1_DIM if r >= 0.8 else 60
        tail = R1_TAIL_TOL if r >= 0.8 else 1e-8
        for n in (0, 1, 2):
            oracle = oracle_purities(fock_state(n, dim), ch.N, ch.M, GRID_GT,
                                     dim=dim, tail_tol=tail)
            for gt in GRID_GT:
                v = purity_squeezed(n, ch.N, abs(ch.M), gt)
                worst_oracle = max(worst_oracle, abs(v - oracle[gt]))
    worst_reduction = 0.0
    for n in (0, 1, 2):
        for gt in GRID_GT:
            worst_reduction = max(worst_reduction, abs(
                purity_squeezed(n, 0.5, 0.0, gt) - purity_thermal(n, 0.5, gt)))
    assert worst_oracle <= 1e-4
    assert worst_reduction <= 1e-10
    print(f"ACCEPTANCE 3 squeezed agreement: PASS  |1d-oracle| {worst_oracle:.2e}"
          f" <= 1e-4, |M|=0 reduction {worst_reduction:.2e} <= 1e-10")


def test_criterion_4_asymptotics():
    """At gamma_t = 20 every available path sits within 1e-3 of the
    asymptotic purity 1/sqrt((2N+1)^2 - 4|M|^2)."""
    gt = 20.0
    worst = 0.0

    def track(value, target):
        nonlocal worst
        worst = max(worst, abs(value - target))

    for N in THERMAL_NS:
        target = purity_asymptotic(N, 0.0)
        ch = ChannelParams(gamma=1.0, N=N, M=0j)
        track(purity_thermal(1, N, gt), target)
        track(purity_squeezed(1, N, 0.0, gt), target)
        track(purity_2d(propagate(chi_number(1), ch, gt)), target)
        oracle = oracle_purities(fock_state(1, 40), N, 0j, (gt,), dim=40, dt=1e-2)
        track(oracle[gt], target)
    for r in SQUEEZED_RS:
        bath = BathSpec(mu_inf=0.5, r=r, phi=0.0)
        ch = bath.to_channel()
        track(purity_squeezed(1, ch.N, abs(ch.M), gt), 0.5)
        track(purity_2d(propagate(chi_number(1), ch, gt)), 0.5)
        # the late-time truncation bias follows the bath tail: 9e-4 at dim 60
        # for r = 1 but 7e-5 at dim 80, so the strong-squeezing run gets the
        # larger space
        dim = 80 if r >= 0.8 else 60
        oracle = oracle_purities(fock_state(1, dim), ch.N, ch.M, (gt,),
                                 dim=dim, dt=1e-3, tail_tol=2e-3)
        track(oracle[gt], 0.5)
    cat_bath = BathSpec(mu_inf=0.5, r=0.28, phi=0.0)
    track(purity_cat01(cat_bath, 0.0, gt), 0.5)
    track(purity_2d(propagate(chi_cat01(0.0), cat_bath.to_channel(), gt)), 0.5)
    assert worst <= 1e-3
    print(f"ACCEPTANCE 4 asymptotics: PASS  worst path deviation {worst:.2e} <= 1e-3")


def test_criterion_5_fig1_reproduction(tmp_path):
    """Pointwise orderings and purity revivals of the number-state figure."""
    from fockchannel.cli import main
    out = tmp_path / "fig1.csv"
    assert main(["fig1", "--points", "201", "--out", str(out)]) == 0
    import csv
    series = {}
    times = []
    with open(out, newline="") as fh:
        for row in csv.DictReader(fh):
            key = (int(row["n"]), float(row["r"]))
            series.setdefault(key, []).append(float(row["purity"]))
            if key == (1, 0.0):
                times.append(float(row["gamma_t"]))
    times = np.asarray(times)
    i_half = int(np.argmin(np.abs(times - 0.5)))
    assert abs(times[i_half] - 0.5) < 1e-12
    margin = 1e-4
    gaps = (
        series[(1, 0.0)][i_half] - series[(1, 1.0)][i_half],
        series[(2, 0.0)][i_half] - series[(2, 1.0)][i_half],
        series[(1, 0.0)][i_half] - series[(2, 0.0)][i_half],
        series[(1, 1.0)][i_half] - series[(2, 1.0)][i_half],
    )
    assert all(g >= margin for g in gaps)
    revivals = []
    for n in (1, 2):
        for r in (0.0, 1.0):
            vals = np.asarray(series[(n, r)])
            i_min = int(np.argmin(vals))
            assert 0 < i_min < len(vals) - 1, f"no interior minimum for n={n} r={r}"
            assert vals[i_min] < 0.5
            recovery = vals[-1] - vals[i_min]
            assert recovery > 5e-5, f"no recovery for n={n} r={r}"
            revivals.append(recovery)
    print(f"ACCEPTANCE 5 fig1: PASS  orderings at gt=0.5 with margins "
          f">= {min(gaps):.2e} (tol 1e-4), revivals with recovery "
          f">= {min(revivals):.2e}")


def fig2_gain_rows(tmp_path):
    from fockchannel.cli import main
    import csv
    out = tmp_path / "fig2.csv"
    assert main(["fig2", "--points", "200", "--out", str(out)]) == 0
    with open(out, newline="") as fh:
        return list(csv.DictReader(fh))


def test_criterion_6_fig2_reproduction(tmp_path):
    """Optimal squeezing near 0.28, oracle-locked phase convention, closed
    form vs oracle, and the purity gain where it genuinely exists."""
    rows = fig2_gain_rows(tmp_path)
    assert {float(r["r"]) for r in rows} == {0.1, 0.28, 0.4}

    rs = np.arange(0.0, 0.6001, 0.01)
    vals = [purity_cat01(BathSpec(0.5, float(r), 0.0), 0.0, 0.5) for r in rs]
    r_best = float(rs[int(np.argmax(vals))])
    assert 0.26 <= r_best <= 0.30

    # phase locking arbitration and closed-form vs oracle agreement; the
    # optimum sits at theta = phi (pi/2 offset from naive expectation, fixed
    # once by the oracle).
    bath = BathSpec(mu_inf=0.5, r=0.28, phi=0.0)
    ch = bath.to_channel()
    ctrl = IntegratorCtrl(dt=1e-3, t_final=0.5)
    mu_locked = purity_of(evolve(cat01_state(bath.phi, 60), ch.N, ch.M, ctrl,
                                 [0.5])[0][1])
    mu_crossed = purity_of(evolve(cat01_state(bath.phi + math.pi / 2, 60),
                                  ch.N, ch.M, ctrl, [0.5])[0][1])
    assert mu_locked > mu_crossed
    disc = abs(purity_cat01(bath, bath.phi, 0.5) - mu_locked)
    assert disc <= 1e-4, "closed form disagrees with oracle: discrepancy report"

    # positive gain over the whole window for the two sub-threshold
    # squeezings, and beyond the early transient for r = 0.4
    min_small = min(float(r["delta_mu_over_mu"]) for r in rows
                    if float(r["r"]) in (0.1, 0.28))
    assert min_small > 0.0
    min_late = min(float(r["delta_mu_over_mu"]) for r in rows
                   if float(r["r"]) == 0.4 and float(r["gamma_t"]) >= 0.05)
    assert min_late > 0.0
    print(f"ACCEPTANCE 6 fig2: PASS  argmax r = {r_best:.2f} in [0.26, 0.30], "
          f"|closed-oracle| {disc:.2e} <= 1e-4, gain > 0 on (0, 1] for "
          f"r in {{0.1, 0.28}} (min {min_small:.2e}) and past the r=0.4 "
          f"transient (min {min_late:.2e})")


def test_criterion_6_gain_positive_as_stated(tmp_path):
    """Literal clause: gain > 0 for all of r in {0.1, 0.28, 0.4} on (0, 1].

    This fails, and the failure is genuine: at fixed asymptotic purity the
    initial purity-decay slope of the optimally locked cat is
    -(3 cosh 2r - sinh 2r)/(2 mu) + 1, so the gain over r = 0 starts positive
    only for tanh(r) < 1/3 (r < 0.347).  At r = 0.4 the gain is negative for
    gamma_t < 0.039 (minimum -1.0e-3 near 0.018), confirmed by the
    density-matrix oracle to six digits.  See the decisions ledger.
    """
    rows = fig2_gain_rows(tmp_path)
    min_gain = min(float(r["delta_mu_over_mu"]) for r in rows)
    worst = min(rows, key=lambda r: float(r["delta_mu_over_mu"]))
    print(f"ACCEPTANCE 6 (literal positivity clause): min gain {min_gain:.2e} "
          f"at r={worst['r']}, gamma_t={float(worst['gamma_t']):.3f}")
    assert min_gain > 0.0, (
        f"gain is {min_gain:.2e} at r={worst['r']}, "
        f"gamma_t={float(worst['gamma_t']):.3f}: the r=0.4 curve is genuinely "
        "negative below gamma_t = 0.039 (oracle-confirmed); see ledger")


def test_criterion_7_oracle_integrity():
    """Trace drift, positivity, step-halving, dimension stability and
    stationarity of the constructed bath state (sign certification)."""
    snaps = evolve(fock_state(1, 40), 0.5, 0j,
                   IntegratorCtrl(dt=1e-3, t_final=10.0),
                   snapshot_times=[2.0, 6.0, 10.0])
    trace_drift = max(abs(s.trace() - 1.0) for _, s in snaps)
    min_eig = min(s.min_eigenvalue() for _, s in snaps)
    assert trace_drift <= 1e-8
    assert min_eig >= -1e-8

    halved = {}
    for dt in (1e-3, 5e-4):
        s = evolve(fock_state(2, 40), 1.0, 0j, IntegratorCtrl(dt=dt, t_final=1.0),
                   [1.0])[0][1]
        halved[dt] = purity_of(s)
    halving_delta = abs(halved[1e-3] - halved[5e-4])
    assert halving_delta <= 1e-8

    bump = {}
    for dim in (40, 50):
        s = evolve(fock_state(3, dim), 1.0, 0j,
                   IntegratorCtrl(dt=1e-3, t_final=2.0), [2.0])[0][1]
        bump[dim] = purity_of(s)
    bump_delta = abs(bump[40] - bump[50])
    ch = BathSpec(mu_inf=0.5, r=1.0, phi=0.0).to_channel()
    sq_bump = {}
    for dim in (R1_DIM, R1_DIM + 10):
        s = evolve(fock_state(1, dim), ch.N, ch.M,
                   IntegratorCtrl(dt=1e-3, t_final=2.0, tail_tol=R1_TAIL_TOL),
                   [2.0])[0][1]
        sq_bump[dim] = purity_of(s)
    sq_bump_delta = abs(sq_bump[R1_DIM] - sq_bump[R1_DIM + 10])
    assert bump_delta <= 1e-7
    assert sq_bump_delta <= 1e-7

    bath = BathSpec(mu_inf=0.5, r=0.5, phi=0.9)
    chs = bath.to_channel()
    stationary = squeezed_thermal_state(chs.N, chs.M, 60)
    residual = float(np.max(np.abs(lindblad_rhs(stationary, chs.N, chs.M))))
    assert residual <= 1e-6
    print(f"ACCEPTANCE 7 oracle integrity: PASS  trace {trace_drift:.2e} <= 1e-8, "
          f"min eig {min_eig:.2e} >= -1e-8, halving {halving_delta:.2e} <= 1e-8, "
          f"dim bump {max(bump_delta, sq_bump_delta):.2e} <= 1e-7, "
          f"stationarity {residual:.2e} <= 1e-6")


def test_criterion_8_special_functions():
    """Recurrences vs exact rational arithmetic, endpoint identities,
    scaled-Bessel bounds."""
    def laguerre_exact(n, x):
        x = Fraction(x)
        return sum((-x) ** m * Fraction(math.comb(n, m), math.factorial(m))
                   for m in range(n + 1))

    worst_rel = 0.0
    for n in range(21):
        for j in range(0, 101, 10):
            x = Fraction(j, 2)
            exact = float(laguerre_exact(n, x))
            got = laguerre(n, float(x))
            if exact != 0.0:
                worst_rel = max(worst_rel, abs(got - exact) / abs(exact))
    assert worst_rel <= 1e-10

    worst_end = 0.0
    for n in range(65):
        worst_end = max(worst_end, abs(laguerre(n, 0.0) - 1.0))
        worst_end = max(worst_end, abs(legendre(n, 1.0) - 1.0))
    assert worst_end <= 1e-14

    z = np.linspace(0.0, 100.0, 500)
    vals = bessel_i0_scaled(z)
    assert np.all(vals > 0.0) and np.all(vals <= 1.0)
    assert np.all(np.diff(vals) < 0.0)
    print(f"ACCEPTANCE 8 special functions: PASS  recurrence rel err "
          f"{worst_rel:.2e} <= 1e-10, endpoint dev {worst_end:.2e} <= 1e-14, "
          f"scaled I0 within (0, 1] and monotone")
