"""Brute-force ground truth: master-equation integration in a truncated
Fock basis, with purity read directly off the density matrix.

The generator (time measured in gamma*t) is

    drho = (1/2) [ N L[ad] rho + (N+1) L[a] rho + M* D[a] rho + M D[ad] rho ]

with L[O]rho = 2 O rho O^dag - O^dag O rho - rho O^dag O and
D[O]rho = 2 O rho O - O O rho - rho O O.  The relative sign of the two
phase-sensitive terms is fixed by Hermiticity preservation (the opposite
choice maps Hermitian states to non-Hermitian ones) and certified by the
stationarity of the squeezed thermal bath state, which this module checks.

Integration is classical fixed-step fourth order: the generator is
time-independent and only mildly stiff in the regimes of interest, and a
fixed step keeps runs exactly reproducible.
"""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .channel import channel_to_bath, _check_channel
from .errors import (IntegrationFailureError, TruncationError,
                     ValidationError)

HERMITICITY_TOL = 1e-10
TRACE_TOL = 1e-8
PSD_TOL = 1e-8


def ladder_ops(dim):
    """Truncated annihilation/creation pair (a, a_dag) of size dim >= 2.

    [a, a_dag] equals the identity except for the (dim-1, dim-1) entry, whose
    value 1 - dim is the unavoidable truncation artifact.
    """
    if not isinstance(dim, (int, np.integer)) or dim < 2:
        raise ValidationError(f"dim must be an integer >= 2, got {dim}")
    a = np.zeros((dim, dim), dtype=np.complex128)
    idx = np.arange(dim - 1)
    a[idx, idx + 1] = np.sqrt(idx + 1.0)
    return a, a.conj().T


@lru_cache(maxsize=8)
def _generator(dim, N, M):
    a, ad = ladder_ops(dim)
    ops = {
        "a": a, "ad": ad,
        "g": 0.5 * (N * (a @ ad) + (N + 1.0) * (ad @ a)
                    + np.conj(M) * (a @ a) + M * (ad @ ad)),
    }
    return ops


def lindblad_rhs(rho, N, M=0j):
    """Right-hand side of the master equation in gamma*t units.

    Accepts a FockDensity or a plain complex matrix; returns a matrix of the
    same shape with exactly zero trace up to rounding.
    """
    mat = rho.matrix if isinstance(rho, FockDensity) else np.asarray(rho)
    M = complex(M)
    _check_channel(N, M)
    ops = _generator(mat.shape[0], float(N), M)
    a, ad, g = ops["a"], ops["ad"], ops["g"]
    out = N * (ad @ mat @ a) + (N + 1.0) * (a @ mat @ ad)
    if M != 0:
        out += np.conj(M) * (a @ mat @ a) + M * (ad @ mat @ ad)
    out -= g @ mat + mat @ g
    return out


@dataclass
class FockDensity:
    """Density matrix on a truncated Fock space.

    Hermiticity (1e-10) and unit trace (1e-8) are enforced at construction;
    positive semidefiniteness is checked at integrator checkpoints rather
    than every step.
    """

    dim: int
    matrix: np.ndarray

    def __post_init__(self):
        self.matrix = np.asarray(self.matrix, dtype=np.complex128)
        if self.matrix.shape != (self.dim, self.dim):
            raise ValidationError(
                f"matrix shape {self.matrix.shape} does not match dim {self.dim}")
        herm = float(np.max(np.abs(self.matrix - self.matrix.conj().T)))
        if herm > HERMITICITY_TOL:
            raise ValidationError(f"matrix is not Hermitian (deviation {herm:g})")
        tr = complex(np.trace(self.matrix))
        if abs(tr - 1.0) > TRACE_TOL:
            raise ValidationError(f"trace {tr:g} deviates from 1 beyond {TRACE_TOL:g}")

    def purity(self):
        return purity_of(self)

    def trace(self):
        return float(np.trace(self.matrix).real)

    def min_eigenvalue(self):
        return float(np.linalg.eigvalsh(self.matrix)[0])

    def tail_mass(self, fraction=0.1):
        """Population in the top ``fraction`` of Fock levels."""
        n_top = max(1, int(math.ceil(fraction * self.dim)))
        return float(np.sum(np.diag(self.matrix).real[self.dim - n_top:]))


@dataclass
class IntegratorCtrl:
    """Fixed-step integration controls (all times in gamma*t units)."""

    dt: float = 1e-3
    t_final: float = 1.0
    checkpoint_every: int = 100
    tail_tol: float = 1e-8
    debug_csv: str = None

    def __post_init__(self):
        if not math.isfinite(self.dt) or self.dt <= 0:
            raise ValidationError(f"dt must be > 0, got {self.dt}")
        if not math.isfinite(self.t_final) or self.t_final < 0:
            raise ValidationError(f"t_final must be >= 0, got {self.t_final}")
        if self.checkpoint_every < 1:
            raise ValidationError("checkpoint_every must be >= 1")


def purity_of(rho):
    """Tr(rho^2) = sum of |rho_ij|^2 for Hermitian rho."""
    mat = rho.matrix if isinstance(rho, FockDensity) else np.asarray(rho)
    return float(np.sum(mat.real ** 2 + mat.imag ** 2))


def fock_state(n, dim):
    """|n><n| on a dim-level truncation."""
    if not isinstance(n, (int, np.integer)) or n < 0:
        raise ValidationError(f"n must be a non-negative integer, got {n}")
    if n >= dim:
        raise ValidationError(f"n = {n} does not fit in dim = {dim}")
    if n >= 0.9 * dim:
        raise TruncationError(
            f"n = {n} sits in the top 10% of a dim = {dim} truncation; "
            "increase dim")
    mat = np.zeros((dim, dim), dtype=np.complex128)
    mat[n, n] = 1.0
    return FockDensity(dim, mat)


def cat01_state(theta, dim):
    """Projector onto (|0> + e^{i theta} |1>)/sqrt(2)."""
    from .charfun import CatPhase
    if isinstance(theta, CatPhase):
        theta = theta.theta
    psi = np.zeros(dim, dtype=np.complex128)
    psi[0] = 1.0 / math.sqrt(2.0)
    psi[1] = np.exp(1j * theta) / math.sqrt(2.0)
    return FockDensity(dim, np.outer(psi, psi.conj()))


def squeezed_thermal_state(N, M, dim, tail_tol=None):
    """Fock-basis squeezed thermal state with moments <n> = N, <a a> = -M.

    Built as S rho_thermal(N0) S^dag with S = exp[(z* a^2 - z a^dag^2)/2],
    z = r e^{i Arg M}, and (N0, r) from the bath parametrization; this is the
    stationary state of the channel.  The exponential is taken by exact
    unitary diagonalization, so truncation shows up only as tail mass.
    """
    M = complex(M)
    bath = channel_to_bath(N, M)
    N0 = 0.5 * (1.0 / bath.mu_inf - 1.0)
    a, ad = ladder_ops(dim)
    levels = np.arange(dim)
    if N0 > 0:
        logp = levels * math.log(N0 / (N0 + 1.0)) - math.log(N0 + 1.0)
        p = np.exp(logp)
    else:
        p = np.zeros(dim)
        p[0] = 1.0
    rho = np.diag(p.astype(np.complex128))
    if bath.r > 0:
        z = bath.r * np.exp(2j * bath.phi)
        herm = -1j * 0.5 * (np.conj(z) * (a @ a) - z * (ad @ ad))
        w, v = np.linalg.eigh(herm)
        squeeze = (v * np.exp(1j * w)) @ v.conj().T
        rho = squeeze @ rho @ squeeze.conj().T
    rho = 0.5 * (rho + rho.conj().T)
    state = FockDensity(dim, rho / np.trace(rho).real)
    if tail_tol is not None and state.tail_mass() > tail_tol:
        raise TruncationError(
            f"squeezed thermal tail mass {state.tail_mass():g} exceeds "
            f"{tail_tol:g} at dim = {dim}; increase dim")
    return state


def default_dim(n=0, r=0.0):
    """Truncation size that keeps tail mass manageable on the standard grid.

    40 levels cover n <= 3 with N <= 1; squeezing spreads population up the
    ladder, so the base grows with r.  The tail check in ``evolve`` remains
    the enforcing mechanism regardless.
    """
    base = 40
    if r >= 0.8:
        base = 90
    elif r >= 0.4:
        base = 60
    return max(base, 3 * n + 16)


def _checkpoint(rho, t, ctrl, debug_rows):
    drift = float(np.max(np.abs(rho - rho.conj().T)))
    if drift > HERMITICITY_TOL:
        raise IntegrationFailureError(
            f"hermiticity drift {drift:g} at gamma_t = {t:g}", time=t)
    rho = 0.5 * (rho + rho.conj().T)
    tr = float(np.trace(rho).real)
    if abs(tr - 1.0) > TRACE_TOL:
        raise IntegrationFailureError(
            f"trace drifted to {tr:.12g} at gamma_t = {t:g}", time=t)
    min_eig = float(np.linalg.eigvalsh(rho)[0])
    if min_eig < -PSD_TOL:
        raise IntegrationFailureError(
            f"negative eigenvalue {min_eig:g} at gamma_t = {t:g}", time=t)
    dim = rho.shape[0]
    n_top = max(1, int(math.ceil(0.1 * dim)))
    tail = float(np.sum(np.diag(rho).real[dim - n_top:]))
    if tail > ctrl.tail_tol:
        raise TruncationError(
            f"tail mass {tail:g} exceeds {ctrl.tail_tol:g} at gamma_t = {t:g}; "
            f"increase dim beyond {dim}")
    if debug_rows is not None:
        debug_rows.append((t, float(np.sum(rho.real**2 + rho.imag**2)),
                           tr, min_eig, tail))
    return rho


def evolve(rho0, N, M, ctrl=None, snapshot_times=None):
    """Integrate the master equation, returning [(gamma_t, FockDensity), ...].

    Snapshots are taken exactly at the requested times (the step is shortened
    at segment boundaries, never lengthened beyond ctrl.dt).  State invariants
    are checked every ``checkpoint_every`` steps; violations raise
    IntegrationFailureError or TruncationError with the offending time.
    """
    ctrl = ctrl or IntegratorCtrl()
    M = complex(M)
    _check_channel(N, M)
    if not isinstance(rho0, FockDensity):
        raise ValidationError("rho0 must be a FockDensity")
    if snapshot_times is None:
        snapshot_times = [ctrl.t_final]
    snapshot_times = sorted(float(t) for t in snapshot_times)
    if snapshot_times and snapshot_times[0] < 0:
        raise ValidationError("snapshot times must be >= 0")

    if rho0.tail_mass() > ctrl.tail_tol:
        raise TruncationError(
            f"initial tail mass {rho0.tail_mass():g} exceeds {ctrl.tail_tol:g}; "
            f"increase dim beyond {rho0.dim}")

    ops = _generator(rho0.dim, float(N), M)
    a, ad, g = ops["a"], ops["ad"], ops["g"]
    has_m = M != 0
    mc = np.conj(M)

    def rhs(mat):
        out = N * (ad @ mat @ a) + (N + 1.0) * (a @ mat @ ad)
        if has_m:
            out += mc * (a @ mat @ a) + M * (ad @ mat @ ad)
        out -= g @ mat + mat @ g
        return out

    rho = rho0.matrix.copy()
    debug_rows = [] if ctrl.debug_csv else None
    snapshots = []
    t = 0.0
    steps_since_check = 0
    for target in snapshot_times:
        span = target - t
        if span > 1e-15:
            n_steps = max(1, int(math.ceil(span / ctrl.dt - 1e-12)))
            h = span / n_steps
            for _ in range(n_steps):
                k1 = rhs(rho)
                k2 = rhs(rho + (0.5 * h) * k1)
                k3 = rhs(rho + (0.5 * h) * k2)
                k4 = rhs(rho + h * k3)
                rho += (h / 6.0) * (k1 + 2.0 * (k2 + k3) + k4)
                t += h
                steps_since_check += 1
                if steps_since_check >= ctrl.checkpoint_every:
                    rho = _checkpoint(rho, t, ctrl, debug_rows)
                    steps_since_check = 0
            t = target
        rho = _checkpoint(rho, t, ctrl, debug_rows)
        steps_since_check = 0
        snapshots.append((target, FockDensity(rho0.dim, rho.copy())))

    if ctrl.debug_csv:
        with open(ctrl.debug_csv, "w", encoding="utf-8") as fh:
            fh.write("gamma_t,purity,trace,min_eigenvalue,tail_mass\n")
            for row in debug_rows:
                fh.write(",".join(f"{v:.17g}" for v in row) + "\n")
    return snapshots
