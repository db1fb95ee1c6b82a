"""Time evolution: driving-field models, the real-tensor ODE integration, and
an independent complex density-matrix oracle propagator.

All times are dimensionless (tau = omega t); fields and exchange constants are
expressed in units of the drive frequency omega.
"""

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from . import _kernels, pauli
from .errors import AccuracyError, ValidationError

BLOCH_DRIFT_TOL = 1e-8

FIELD_KINDS = ("R", "NR", "ConstantZ", "Custom")
_KIND_CODES = {"R": 0, "NR": 1, "ConstantZ": 2}


@dataclass(frozen=True)
class CouplingConstants:
    """Isotropic exchange constants for the three qubit pairs."""
    j_ep: float = -0.2
    j_en: float = -0.1
    j_pn: float = -0.3

    def __post_init__(self):
        for v in (self.j_ep, self.j_en, self.j_pn):
            if not math.isfinite(v):
                raise ValueError("exchange constants must be finite")


@dataclass(frozen=True)
class FieldSpec:
    """Driving-field model.

    R          circularly polarized, co-rotating with the e-qubit precession:
               H = -(w1 cos tau, -w1 sin tau, w0)
    NR         counter-rotating partner: H = -(w1 cos tau, w1 sin tau, w0)
    ConstantZ  static longitudinal field H = (0, 0, w0)
    Custom     caller-supplied map tau -> base 3-vector H(tau)

    Each qubit sees its multiplier times the base field (defaults 1, 2, 4
    for e, p, n).
    """
    kind: str = "R"
    omega0: float = 1.0
    omega1: float = 0.3
    multipliers: tuple = (1.0, 2.0, 4.0)
    custom: Optional[Callable[[float], Sequence[float]]] = None

    def __post_init__(self):
        if self.kind not in FIELD_KINDS:
            raise ValueError(f"unknown field kind {self.kind!r}")
        if self.kind == "Custom" and self.custom is None:
            raise ValueError("Custom field requires a callable")
        if len(self.multipliers) != 3:
            raise ValueError("need exactly three per-qubit multipliers")

    def base(self, tau):
        if self.kind == "Custom":
            return np.asarray(self.custom(tau), dtype=float)
        return _kernels.field_base_numpy(
            _KIND_CODES[self.kind], self.omega0, self.omega1, tau)


def field_at(spec, tau):
    """Fields (h_e, h_p, h_n) seen by the three qubits at time tau."""
    h = spec.base(tau)
    m = spec.multipliers
    return m[0] * h, m[1] * h, m[2] * h


@dataclass(frozen=True)
class IntegratorConfig:
    tau_max: float = 30.0
    dt: float = 1e-3
    sample_every: int = 10
    method: str = "RK4"

    def __post_init__(self):
        if self.dt <= 0 or self.tau_max <= 0:
            raise ValueError("dt and tau_max must be positive")
        if self.sample_every < 1:
            raise ValueError("sample_every must be >= 1")
        if self.method not in ("RK4", "RK45"):
            raise ValueError(f"unknown method {self.method!r}")

    def grid(self):
        """(n_steps, sampled tau grid); tau_max is rounded to a whole number
        of sample intervals."""
        stride = self.dt * self.sample_every
        n_samp = max(1, round(self.tau_max / stride))
        taus = np.arange(n_samp + 1) * stride
        return n_samp * self.sample_every, taus


@dataclass
class TimeSeries:
    """Sampled trajectory: R tensors plus named derived channels."""
    taus: np.ndarray
    states: np.ndarray  # (n, 4, 4, 4)
    channels: dict = field(default_factory=dict)

    def __post_init__(self):
        if np.any(np.diff(self.taus) <= 0):
            raise ValueError("time grid must be strictly increasing")
        for name, vals in self.channels.items():
            if len(vals) != len(self.taus):
                raise ValueError(f"channel {name!r} length mismatch")


def rhs_three(r, h_e, h_p, h_n, coupling):
    """dR/dtau of the 63-equation system (the r[0,0,0] slot stays zero)."""
    return _kernels.rhs_three(r, h_e, h_p, h_n,
                              coupling.j_ep, coupling.j_en, coupling.j_pn)


def rhs_two(r2, h_e, h_p, j_ep):
    """dR/dtau of the 15-equation two-qubit reduction."""
    return _kernels.rhs_two(r2, h_e, h_p, j_ep)


def _bloch_lengths(states):
    flat = states.reshape(len(states), -1)
    return np.sqrt(np.einsum('ij,ij->i', flat, flat) - flat[:, 0] ** 2)


def _check_drift(b, context):
    drift = float(np.abs(b - b[0]).max())
    if drift > BLOCH_DRIFT_TOL:
        raise AccuracyError(
            f"generalized Bloch length drifted by {drift:.3e} "
            f"(tolerance {BLOCH_DRIFT_TOL:.0e}) in {context}", drift)
    return drift


def _integrate_custom(r0, spec, coupling, dt, n_steps, sample_every):
    """Python RK4 loop for Custom fields (kernel RHS, arbitrary h(tau))."""
    n_samp = n_steps // sample_every + 1
    out = np.empty((n_samp, 4, 4, 4))
    r = r0.copy()
    out[0] = r
    si = 1
    for step in range(n_steps):
        tau = step * dt
        f0 = field_at(spec, tau)
        fh = field_at(spec, tau + 0.5 * dt)
        f1 = field_at(spec, tau + dt)
        k1 = rhs_three(r, *f0, coupling)
        k2 = rhs_three(r + 0.5 * dt * k1, *fh, coupling)
        k3 = rhs_three(r + 0.5 * dt * k2, *fh, coupling)
        k4 = rhs_three(r + dt * k3, *f1, coupling)
        r = r + (dt / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
        if (step + 1) % sample_every == 0:
            out[si] = r
            si += 1
    return out


def integrate(r0, spec, coupling, cfg=IntegratorConfig()):
    """Integrate the 63-equation system; returns a TimeSeries with a 'b'
    channel.  Raises AccuracyError if the Bloch length drifts beyond 1e-8."""
    r0 = np.asarray(r0, dtype=float)
    if abs(r0[0, 0, 0] - 1.0) > 1e-12:
        raise ValidationError("initial tensor must have r[0,0,0] = 1")
    n_steps, taus = cfg.grid()

    if cfg.method == "RK45":
        states = _integrate_rk45(r0, spec, coupling, taus)
    elif spec.kind == "Custom":
        states = _integrate_custom(r0, spec, coupling, cfg.dt, n_steps,
                                   cfg.sample_every)
    else:
        states = _kernels.rk4_three(
            r0, cfg.dt, n_steps, cfg.sample_every, _KIND_CODES[spec.kind],
            spec.omega0, spec.omega1, spec.multipliers,
            coupling.j_ep, coupling.j_en, coupling.j_pn)

    b = _bloch_lengths(states)
    _check_drift(b, "three-qubit integration")
    return TimeSeries(taus=taus, states=states, channels={"b": b})


def _integrate_rk45(r0, spec, coupling, taus):
    from scipy.integrate import solve_ivp

    def f(tau, y):
        return rhs_three(y.reshape(4, 4, 4), *field_at(spec, tau),
                         coupling).ravel()

    sol = solve_ivp(f, (taus[0], taus[-1]), r0.ravel(), method="RK45",
                    t_eval=taus, rtol=1e-12, atol=1e-12)
    if not sol.success:  # pragma: no cover
        raise AccuracyError(f"RK45 failed: {sol.message}")
    return sol.y.T.reshape(-1, 4, 4, 4)


def integrate_two(r2_0, spec, j_ep, cfg=IntegratorConfig()):
    """Integrate the two-qubit reduction for the (e, p) pair."""
    r2_0 = np.asarray(r2_0, dtype=float)
    if abs(r2_0[0, 0] - 1.0) > 1e-12:
        raise ValidationError("initial tensor must have r[0,0] = 1")
    n_steps, taus = cfg.grid()
    if spec.kind == "Custom":
        raise ValueError("Custom fields not supported for the two-qubit path")
    states = _kernels.rk4_two(
        r2_0, cfg.dt, n_steps, cfg.sample_every, _KIND_CODES[spec.kind],
        spec.omega0, spec.omega1, spec.multipliers[0], spec.multipliers[1],
        j_ep)
    flat = states.reshape(len(states), -1)
    b = np.sqrt(np.einsum('ij,ij->i', flat, flat) - flat[:, 0] ** 2)
    _check_drift(b, "two-qubit integration")
    return taus, states


# ---------------------------------------------------------------------------
# oracle propagator (independent of the real-tensor path)
# ---------------------------------------------------------------------------

def propagate_direct(rho0, spec, coupling, taus, dt=1e-3, substep_factor=10,
                     chunk=20000):
    """Propagate the 8x8 density matrix directly.

    Piecewise-constant stepping: each substep (length <= dt/substep_factor)
    applies the exact unitary of the Hamiltonian frozen at the substep
    midpoint, computed by Hermitian eigendecomposition.  Returns the density
    matrix at every requested tau.
    """
    rho0 = np.asarray(rho0, dtype=complex)
    pauli.validate_density(rho0)
    taus = np.asarray(taus, dtype=float)
    out = np.empty((len(taus), 8, 8), dtype=complex)
    out[0] = rho0
    if len(taus) == 1:
        return out

    h_max = dt / substep_factor
    # substep midpoints and lengths for every inter-sample segment
    mids = []
    lens = []
    seg_ends = []
    total = 0
    for a, bnd in zip(taus[:-1], taus[1:]):
        n_sub = max(1, math.ceil((bnd - a) / h_max - 1e-12))
        h = (bnd - a) / n_sub
        mids.append(a + (np.arange(n_sub) + 0.5) * h)
        lens.append(np.full(n_sub, h))
        total += n_sub
        seg_ends.append(total)
    mids = np.concatenate(mids)
    lens = np.concatenate(lens)

    x_const = (coupling.j_ep * pauli.EXCHANGE_EP
               + coupling.j_en * pauli.EXCHANGE_EN
               + coupling.j_pn * pauli.EXCHANGE_PN)
    spin_ops = np.concatenate([pauli.SPIN_E, pauli.SPIN_P, pauli.SPIN_N])
    m = spec.multipliers

    rho = rho0.copy()
    seg_idx = 0
    for start in range(0, len(mids), chunk):
        tm = mids[start:start + chunk]
        hh = lens[start:start + chunk]
        base = np.array([spec.base(t) for t in tm])  # (c, 3)
        coeff = np.concatenate([m[0] * base, m[1] * base, m[2] * base], axis=1)
        ham = np.einsum('ci,iab->cab', coeff, spin_ops) + x_const
        w, v = np.linalg.eigh(ham)
        phase = np.exp(-1j * w * hh[:, None])
        u = np.einsum('cab,cb,cdb->cad', v, phase, v.conj())
        for k in range(len(tm)):
            rho = u[k] @ rho @ u[k].conj().T
            while seg_idx < len(seg_ends) and start + k + 1 == seg_ends[seg_idx]:
                out[seg_idx + 1] = rho
                seg_idx += 1
    return out


def oracle_deviation(ts, rho0, spec, coupling, dt=1e-3, substep_factor=10):
    """Max abs difference between the integrated R tensors and the oracle
    propagation converted to R form, over the whole trajectory."""
    rhos = propagate_direct(rho0, spec, coupling, ts.taus, dt=dt,
                            substep_factor=substep_factor)
    r_oracle = np.einsum('kab,vba->kv', rhos, pauli.BASIS_FLAT).real
    r_ode = ts.states.reshape(len(ts.states), 64)
    return float(np.abs(r_ode - r_oracle).max())
