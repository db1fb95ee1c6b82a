"""Pauli-product kernel for the three-qubit system.

Everything here is basis bookkeeping: the 64 operators sigma_a x sigma_b x
sigma_c, conversion between an 8x8 density matrix and its real expansion
coefficients r[a, b, c] (the "R tensor"), canonical initial states, and the
generalized Bloch length.

Conventions (fixed throughout the package):
  * qubit order e, p, n; the leftmost Kronecker factor acts on e;
  * |0> is the sigma_3 eigenvector with eigenvalue +1, |1> with -1, so the
    computational basis is ordered |000>, |001>, ..., |111> and rho[0, 0]
    is the |000> population;
  * r[0, 0, 0] = 1 mirrors unit trace.
"""

import numpy as np

from .errors import ValidationError

SIGMA = np.array([
    [[1, 0], [0, 1]],
    [[0, 1], [1, 0]],
    [[0, -1j], [1j, 0]],
    [[1, 0], [0, -1]],
], dtype=complex)

# Levi-Civita symbol, Latin indices 1..3 live at positions 1..3 of a 4-array
# so it can be indexed directly with tensor indices.
EPS = np.zeros((4, 4, 4))
for _i, _j, _k in [(1, 2, 3), (2, 3, 1), (3, 1, 2)]:
    EPS[_i, _j, _k] = 1.0
    EPS[_i, _k, _j] = -1.0


def pauli_basis_element(alpha, beta, gamma):
    """sigma_alpha x sigma_beta x sigma_gamma as an 8x8 complex matrix."""
    for idx in (alpha, beta, gamma):
        if idx not in (0, 1, 2, 3):
            raise ValueError(f"Pauli index must be in 0..3, got {idx}")
    return np.kron(np.kron(SIGMA[alpha], SIGMA[beta]), SIGMA[gamma])


# All 64 basis operators, shape (4, 4, 4, 8, 8); BASIS_FLAT groups the first
# three axes row-major (alpha slowest), matching the CSV serialization order.
BASIS = np.array([[[pauli_basis_element(a, b, c)
                    for c in range(4)] for b in range(4)] for a in range(4)])
BASIS_FLAT = BASIS.reshape(64, 8, 8)

# Spin operators s^e_i, s^p_i, s^n_i (i = 1..3) and the exchange operators
# 2 sum_i s^x_i s^y_i for the three pairs.
SPIN_E = 0.5 * BASIS[1:, 0, 0]
SPIN_P = 0.5 * BASIS[0, 1:, 0]
SPIN_N = 0.5 * BASIS[0, 0, 1:]
EXCHANGE_EP = 0.5 * sum(BASIS[i, i, 0] for i in range(1, 4))
EXCHANGE_EN = 0.5 * sum(BASIS[i, 0, i] for i in range(1, 4))
EXCHANGE_PN = 0.5 * sum(BASIS[0, i, i] for i in range(1, 4))

PSD_TOL = 1e-10


def build_hamiltonian(h_e, h_p, h_n, coupling):
    """Hamiltonian of three exchange-coupled qubits in fields h_e, h_p, h_n.

    `coupling` is any object with j_ep, j_en, j_pn attributes (in units of
    the reference frequency).
    """
    h_e = np.asarray(h_e, dtype=float)
    h_p = np.asarray(h_p, dtype=float)
    h_n = np.asarray(h_n, dtype=float)
    for v in (h_e, h_p, h_n):
        if not np.all(np.isfinite(v)):
            raise ValueError("non-finite field component")
    H = (np.tensordot(h_e, SPIN_E, axes=1)
         + np.tensordot(h_p, SPIN_P, axes=1)
         + np.tensordot(h_n, SPIN_N, axes=1)
         + coupling.j_ep * EXCHANGE_EP
         + coupling.j_en * EXCHANGE_EN
         + coupling.j_pn * EXCHANGE_PN)
    return H


def validate_density(rho, psd_tol=PSD_TOL, strict=True):
    """Check Hermiticity, unit trace and (within psd_tol) positivity."""
    rho = np.asarray(rho)
    if rho.shape != (8, 8):
        raise ValidationError(f"density matrix must be 8x8, got {rho.shape}")
    herm = np.abs(rho - rho.conj().T).max()
    if herm > 1e-10:
        raise ValidationError(f"density matrix not Hermitian (dev {herm:.2e})")
    tr = np.trace(rho)
    if abs(tr - 1.0) > 1e-10:
        raise ValidationError(f"trace is {tr}, expected 1")
    if strict:
        lo = np.linalg.eigvalsh(rho).min()
        if lo < -psd_tol:
            raise ValidationError(f"negative eigenvalue {lo:.3e}")
    return rho


def rho_to_r(rho, validate=True):
    """Expansion coefficients r[a, b, c] = Tr(rho sigma_a x sigma_b x sigma_c)."""
    rho = np.asarray(rho, dtype=complex)
    if validate:
        validate_density(rho, strict=False)
    traces = np.einsum('abcij,ji->abc', BASIS, rho)
    imag = np.abs(traces.imag).max()
    if validate and imag > 1e-12:
        raise ValidationError(f"imaginary trace component {imag:.2e}")
    return np.ascontiguousarray(traces.real)


def r_to_rho(r, validate=True):
    """Inverse of rho_to_r: rho = (1/8) sum r[a,b,c] sigma_a x sigma_b x sigma_c."""
    r = np.asarray(r, dtype=float)
    if r.shape != (4, 4, 4):
        raise ValidationError(f"R tensor must be 4x4x4, got {r.shape}")
    if validate and abs(r[0, 0, 0] - 1.0) > 1e-12:
        raise ValidationError(f"r[0,0,0] is {r[0, 0, 0]}, expected 1")
    return np.einsum('abc,abcij->ij', r, BASIS) / 8.0


def bloch_length(r):
    """Length of the generalized Bloch vector: sqrt(sum of r^2 over the 63
    non-identity components).  Equals sqrt(8 Tr rho^2 - 1); conserved under
    unitary evolution."""
    r = np.asarray(r, dtype=float)
    return float(np.sqrt(np.sum(r * r) - r[0, 0, 0] ** 2))


def _ket(bits):
    v = np.zeros(8, dtype=complex)
    v[int(bits, 2)] = 1.0
    return v


def _projector(psi):
    psi = psi / np.linalg.norm(psi)
    return np.outer(psi, psi.conj())


STATE_NAMES = ("S", "BS", "GHZ", "W", "V", "Mix", "Up")


def initial_state(name, x=None):
    """Canonical initial state -> (rho, r).

    S    fully separable |111>
    BS   biseparable (|001> + |010>)/sqrt(2)
    GHZ  (|000> + |111>)/sqrt(2)
    W    (|001> + |010> + |100>)/sqrt(3)
    V    bit-flipped W, (|110> + |101> + |011>)/sqrt(3)
    Mix  x |GHZ><GHZ| + (1-x)/2 (|W><W| + |V><V|), 1/3 < x <= 1
    Up   fully polarized |000> (all qubits in the sigma_3 = +1 eigenstate;
         used by the fluctuator and fixed-point scenarios)
    """
    if name == "Mix":
        if x is None:
            raise ValueError("Mix state requires the weight x")
        if not 1 / 3 < x <= 1:
            raise ValueError(f"Mix weight must satisfy 1/3 < x <= 1, got {x}")
    elif x is not None:
        raise ValueError(f"weight x only applies to the Mix state, not {name}")

    if name == "S":
        rho = _projector(_ket("111"))
    elif name == "BS":
        rho = _projector(_ket("001") + _ket("010"))
    elif name == "GHZ":
        rho = _projector(_ket("000") + _ket("111"))
    elif name == "W":
        rho = _projector(_ket("001") + _ket("010") + _ket("100"))
    elif name == "V":
        rho = _projector(_ket("110") + _ket("101") + _ket("011"))
    elif name == "Up":
        rho = _projector(_ket("000"))
    elif name == "Mix":
        ghz = _projector(_ket("000") + _ket("111"))
        w = _projector(_ket("001") + _ket("010") + _ket("100"))
        v = _projector(_ket("110") + _ket("101") + _ket("011"))
        rho = x * ghz + 0.5 * (1 - x) * (w + v)
    else:
        raise ValueError(f"unknown initial state {name!r}; "
                         f"choose one of {STATE_NAMES}")
    return rho, rho_to_r(rho)
