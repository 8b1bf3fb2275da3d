"""Dense-matrix ground truth for the rotated XY chain.

Builds the full 2^N spin Hamiltonian, extracts low eigenpairs, and computes
discrete loop phases as the argument of the closed product of successive
state overlaps.  That product is gauge invariant once the endpoint state is
identified with the start state, so no phase smoothing of eigenvectors is
ever needed.

Two structural facts are exploited throughout:

* The chain Hamiltonian commutes with the spin-flip parity prod_l sigma^z_l
  for every rotation angle, so it is block diagonal in the parity basis.
  The paired-mode closed-form solution describes the lowest EVEN-parity
  state; at small N there are parameter pockets (inside lam^2 + gamma^2 < 1)
  where an odd-parity level dips below it, so oracle comparisons are made
  sector-resolved.  ``lowest_states`` still reports the plain global
  spectrum.
* H(phi) decomposes exactly as M0 + cos(2 phi) Mc + sin(2 phi) Ms, so loop
  sweeps reuse three precomputed matrices instead of reassembling Kronecker
  products at every grid angle.

Dense matrices are capped at N = 10 sites by default; the environment
variable XYBERRY_MAX_N overrides the cap.
"""

from __future__ import annotations

import math
import os
import warnings
from dataclasses import dataclass, field

import numpy as np
from numpy.linalg import LinAlgError
from scipy.linalg import eigh

from .errors import (
    DegenerateLevelWarning,
    DiscretizationError,
    ResourceLimitError,
    TrackingError,
)
from .model import XYParams
from .phases import PhaseResult

__all__ = [
    "PAULI_X",
    "PAULI_Y",
    "PAULI_Z",
    "DEFAULT_MAX_SITES",
    "PANCHARATNAM_SIGN",
    "DenseOperator",
    "EigenPair",
    "LoopDiscretization",
    "LoopTrace",
    "max_sites",
    "site_operator",
    "bond_operator",
    "xy_dense_hamiltonian",
    "hamiltonian_phi_parts",
    "build_hamiltonian",
    "parity_diagonal",
    "parity_indices",
    "total_sz_diagonal",
    "lowest_states",
    "sector_ground",
    "ed_ground_energy",
    "magnetization_ed",
    "pancharatnam_phase",
    "loop_states",
    "discrete_loop_phase",
    "spin_half_loop_phase",
    "write_loop_trace_csv",
]

PAULI_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
PAULI_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
PAULI_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
_ID2 = np.eye(2, dtype=complex)

DEFAULT_MAX_SITES = 10

# Sign of the overlap-product phase, fixed once: with +1 the tracked lower
# spin-1/2 level acquires +pi on the equatorial loop and the chain's ground
# level reproduces its closed-form phase (mod 2 pi).
PANCHARATNAM_SIGN = +1

# Eigenvalue distance below which two tracked levels are treated as one
# degenerate cluster (flagged, then tracked by subspace projection).
DEGENERACY_TOL = 1e-8


def _lowest_eigh(mat: np.ndarray, count: int):
    """Lowest ``count`` eigenpairs, ascending.

    The subset LAPACK driver occasionally reports an internal error on
    small matrices with tightly clustered eigenvalues; fall back to the
    full decomposition in that case (and use it outright when the subset
    saves nothing).
    """
    dim = mat.shape[0]
    if count < dim // 2 and dim > 64:
        try:
            return eigh(mat, subset_by_index=[0, count - 1])
        except LinAlgError:
            pass
    vals, vecs = eigh(mat)
    return vals[:count], vecs[:, :count]


def max_sites() -> int:
    """Dense-matrix site cap; XYBERRY_MAX_N overrides the default of 10."""
    raw = os.environ.get("XYBERRY_MAX_N")
    if raw is None:
        return DEFAULT_MAX_SITES
    try:
        cap = int(raw)
    except ValueError as exc:
        raise ValueError(f"XYBERRY_MAX_N must be an integer, got {raw!r}") from exc
    if cap < 2:
        raise ValueError(f"XYBERRY_MAX_N must be >= 2, got {cap}")
    return cap


def _check_sites(n_sites: int):
    if n_sites < 2 or n_sites % 2 != 0:
        raise ValueError(f"n_sites must be an even integer >= 2, got {n_sites}")
    cap = max_sites()
    if n_sites > cap:
        raise ResourceLimitError(
            f"n_sites={n_sites} exceeds the dense-matrix cap of {cap} "
            "(set XYBERRY_MAX_N to raise it)"
        )


def site_operator(op: np.ndarray, site: int, n_sites: int) -> np.ndarray:
    """Kronecker placement of a single-site operator at ``site``."""
    out = np.array([[1.0 + 0.0j]])
    for l in range(n_sites):
        out = np.kron(out, op if l == site else _ID2)
    return out


def bond_operator(op_a: np.ndarray, op_b: np.ndarray, site: int, n_sites: int) -> np.ndarray:
    """op_a at ``site`` times op_b at the (periodic) next site."""
    nxt = (site + 1) % n_sites
    out = np.array([[1.0 + 0.0j]])
    for l in range(n_sites):
        if l == site:
            out = np.kron(out, op_a)
        elif l == nxt:
            out = np.kron(out, op_b)
        else:
            out = np.kron(out, _ID2)
    return out


@dataclass(frozen=True)
class DenseOperator:
    """A 2^N x 2^N Hermitian matrix with its site count."""

    matrix: np.ndarray
    n_sites: int

    def __post_init__(self):
        d = 2**self.n_sites
        if self.matrix.shape != (d, d):
            raise ValueError(
                f"matrix shape {self.matrix.shape} does not match 2^{self.n_sites}"
            )
        dev = np.max(np.abs(self.matrix - self.matrix.conj().T))
        if dev > 1e-13 * max(1.0, np.max(np.abs(self.matrix))):
            raise ValueError(f"matrix is not Hermitian (max deviation {dev:.3e})")

    @property
    def dim(self) -> int:
        return 2**self.n_sites


def hamiltonian_phi_parts(n_sites: int, lam: float, gamma: float):
    """Matrices (M0, Mc, Ms) with H(phi) = M0 + cos(2 phi) Mc + sin(2 phi) Ms.

    Per-site rotation by phi maps the bond couplings onto themselves with
    doubled angle, which is also why H(phi) is pi-periodic.  For N = 2 the
    periodic bond sum visits the single pair twice and the doubled bond is
    kept as written.
    """
    _check_sites(n_sites)
    d = 2**n_sites
    m0 = np.zeros((d, d), dtype=complex)
    mc = np.zeros((d, d), dtype=complex)
    ms = np.zeros((d, d), dtype=complex)
    for l in range(n_sites):
        xx = bond_operator(PAULI_X, PAULI_X, l, n_sites)
        yy = bond_operator(PAULI_Y, PAULI_Y, l, n_sites)
        xy = bond_operator(PAULI_X, PAULI_Y, l, n_sites)
        yx = bond_operator(PAULI_Y, PAULI_X, l, n_sites)
        m0 -= 0.5 * (xx + yy)
        mc -= 0.5 * gamma * (xx - yy)
        ms += 0.5 * gamma * (xy + yx)
        m0 -= lam * site_operator(PAULI_Z, l, n_sites)
    return m0, mc, ms


def _rotation_diagonal(n_sites: int, phi: float) -> np.ndarray:
    """Diagonal of U(phi) = prod_l exp(i sigma^z_l phi / 2)."""
    return np.exp(0.5j * phi * total_sz_diagonal(n_sites))


def xy_dense_hamiltonian(
    n_sites: int,
    lam: float,
    gamma: float,
    phi: float = 0.0,
    method: str = "rotated-couplings",
) -> np.ndarray:
    """Dense Hamiltonian of the rotated chain.

    The field term carries coefficient lam per site, matching the momentum
    modes' epsilon_k = cos q - lam (the tests pin this normalization against
    the closed-form solution).  ``method`` selects between conjugating the
    unrotated matrix with U(phi) and assembling the rotated couplings
    directly; the two agree entrywise.
    """
    if method == "rotated-couplings":
        m0, mc, ms = hamiltonian_phi_parts(n_sites, lam, gamma)
        return m0 + math.cos(2.0 * phi) * mc + math.sin(2.0 * phi) * ms
    if method == "conjugation":
        h0 = xy_dense_hamiltonian(n_sites, lam, gamma, 0.0, "rotated-couplings")
        u = _rotation_diagonal(n_sites, phi)
        return (u[:, None] * h0) * u.conj()[None, :]
    raise ValueError(f"unknown method {method!r}")


def build_hamiltonian(params: XYParams, method: str = "rotated-couplings") -> DenseOperator:
    """DenseOperator for the given control point, rotation included."""
    return DenseOperator(
        xy_dense_hamiltonian(params.n_sites, params.lam, params.gamma, params.phi, method),
        params.n_sites,
    )


def parity_diagonal(n_sites: int) -> np.ndarray:
    """Diagonal of the spin-flip parity prod_l sigma^z_l (+/-1 entries)."""
    bits = np.arange(2**n_sites)
    pop = np.zeros(2**n_sites, dtype=np.int64)
    for b in range(n_sites):
        pop += (bits >> b) & 1
    return 1 - 2 * (pop % 2)


def parity_indices(n_sites: int):
    """Basis indices of the even (+1) and odd (-1) parity sectors."""
    p = parity_diagonal(n_sites)
    return np.nonzero(p == 1)[0], np.nonzero(p == -1)[0]


def total_sz_diagonal(n_sites: int) -> np.ndarray:
    """Diagonal of sum_l sigma^z_l in the computational basis."""
    bits = np.arange(2**n_sites)
    pop = np.zeros(2**n_sites, dtype=np.int64)
    for b in range(n_sites):
        pop += (bits >> b) & 1
    return (n_sites - 2 * pop).astype(float)


@dataclass(frozen=True)
class EigenPair:
    value: float
    vector: np.ndarray


def _gauge_fix(vec: np.ndarray) -> np.ndarray:
    """Rotate the largest-magnitude component to the positive real axis.

    Cosmetic only: every reported phase is gauge invariant by construction
    (enforced by a property test), this just makes vectors reproducible.
    """
    k = int(np.argmax(np.abs(vec)))
    z = vec[k]
    if z == 0:
        return vec
    return vec * (abs(z) / z)


def lowest_states(H, count: int) -> list[EigenPair]:
    """The ``count`` lowest eigenpairs of a dense Hermitian matrix.

    Eigenvalues ascend; vectors are orthonormal and gauge fixed.  Adjacent
    returned eigenvalues closer than 1e-12 (relative) trigger a
    DegenerateLevelWarning.  A residual check guards against a silently
    failed factorization.
    """
    mat = H.matrix if isinstance(H, DenseOperator) else np.asarray(H)
    dim = mat.shape[0]
    if not 1 <= count <= dim:
        raise ValueError(f"count must be in [1, {dim}], got {count}")
    vals, vecs = _lowest_eigh(mat, count)
    scale = max(1.0, float(np.max(np.abs(vals))))
    pairs = []
    for i in range(count):
        v = _gauge_fix(vecs[:, i])
        residual = np.linalg.norm(mat @ v - vals[i] * v)
        if residual > 1e-9 * max(1.0, np.linalg.norm(mat, ord=np.inf)):
            raise ArithmeticError(
                f"eigenpair residual {residual:.3e} too large at level {i}"
            )
        pairs.append(EigenPair(float(vals[i]), v))
    for i in range(count - 1):
        if vals[i + 1] - vals[i] < 1e-12 * scale:
            warnings.warn(
                f"levels {i} and {i + 1} are degenerate within 1e-12",
                DegenerateLevelWarning,
                stacklevel=2,
            )
    return pairs


def _sector_block(n_sites, lam, gamma, parity):
    m0, mc, ms = hamiltonian_phi_parts(n_sites, lam, gamma)
    even, odd = parity_indices(n_sites)
    idx = even if parity == +1 else odd
    sub = np.ix_(idx, idx)
    return (m0[sub], mc[sub], ms[sub]), idx


def sector_ground(params: XYParams, parity: int = +1) -> EigenPair:
    """Lowest eigenpair within one spin-flip parity sector.

    parity=+1 is the sector of the paired-mode closed forms.  The vector is
    returned embedded in the full 2^N basis.
    """
    if parity not in (+1, -1):
        raise ValueError("parity must be +1 or -1")
    (b0, bc, bs), idx = _sector_block(params.n_sites, params.lam, params.gamma, parity)
    h = b0 + math.cos(2.0 * params.phi) * bc + math.sin(2.0 * params.phi) * bs
    vals, vecs = _lowest_eigh(h, 1)
    full = np.zeros(2**params.n_sites, dtype=complex)
    full[idx] = vecs[:, 0]
    return EigenPair(float(vals[0]), _gauge_fix(full))


def ed_ground_energy(params: XYParams) -> float:
    """Energy of the even-sector ground state (the paired-mode vacuum)."""
    return sector_ground(params, +1).value


def magnetization_ed(params: XYParams) -> float:
    """<sum_l sigma^z_l> on the even-sector ground vector.

    Warns if that level is degenerate within its sector, in which case the
    expectation value is basis dependent.
    """
    (b0, bc, bs), idx = _sector_block(params.n_sites, params.lam, params.gamma, +1)
    h = b0 + math.cos(2.0 * params.phi) * bc + math.sin(2.0 * params.phi) * bs
    vals, vecs = _lowest_eigh(h, 2)
    if vals[1] - vals[0] < DEGENERACY_TOL:
        warnings.warn(
            f"even-sector ground state degenerate (splitting {vals[1] - vals[0]:.3e})",
            DegenerateLevelWarning,
            stacklevel=2,
        )
    sz = total_sz_diagonal(params.n_sites)[idx]
    return float(np.real(np.sum(sz * np.abs(vecs[:, 0]) ** 2)))


@dataclass(frozen=True)
class LoopDiscretization:
    """Uniform grid phi_j = j pi / steps, j = 0..steps, endpoint identified.

    The closing overlap reuses the j = 0 state; the endpoint is never
    re-diagonalized, which is what makes the product gauge invariant.
    """

    steps: int

    def __post_init__(self):
        if self.steps < 8:
            raise ValueError(f"steps must be >= 8, got {self.steps}")

    @property
    def phis(self) -> np.ndarray:
        return np.pi * np.arange(self.steps + 1) / self.steps


@dataclass
class LoopTrace:
    """Tracked eigenvectors along a closed loop (block coordinates)."""

    params: XYParams
    level: str
    phis: np.ndarray
    vectors: list = field(repr=False)
    energies: np.ndarray
    gaps: np.ndarray
    degenerate: bool


def pancharatnam_phase(vectors) -> float:
    """Phase of the closed overlap product, in (-pi, pi].

    Each factor is normalized to unit modulus before accumulating, so long
    loops cannot underflow; only the argument matters.
    """
    prod = 1.0 + 0.0j
    m = len(vectors)
    for j in range(m):
        ov = np.vdot(vectors[j], vectors[(j + 1) % m])
        a = abs(ov)
        if a == 0.0:
            raise DiscretizationError(f"orthogonal consecutive states at segment {j}")
        prod *= ov / a
    return PANCHARATNAM_SIGN * float(np.angle(prod))


def loop_states(
    params: XYParams,
    level: str,
    loop: LoopDiscretization,
    windings: int = 1,
    gap_tol: float = 1e-9,
    track_window: int = 6,
) -> LoopTrace:
    """Track one level of H(phi) around ``windings`` closed circuits.

    level='ground' follows the lowest even-parity state, level='excited'
    the lowest odd-parity state (the minimum-gap single excitation).  Since
    parity commutes with H(phi), tracking runs inside one parity block;
    cross-parity crossings cannot confuse it.  At each step the tracked
    state is the maximal-overlap member of the block's lowest
    ``track_window`` levels; exact degeneracies are flagged and resolved by
    projecting the previous vector onto the degenerate subspace.
    """
    if level not in ("ground", "excited"):
        raise ValueError(f"level must be 'ground' or 'excited', got {level!r}")
    if windings < 1:
        raise ValueError(f"windings must be >= 1, got {windings}")
    parity = +1 if level == "ground" else -1
    (b0, bc, bs), _ = _sector_block(params.n_sites, params.lam, params.gamma, parity)
    dim = b0.shape[0]
    window = min(track_window, dim)

    m = loop.steps * windings
    phis = params.phi + np.pi * windings * np.arange(m) / m
    vectors = []
    energies = np.empty(m)
    gaps = np.empty(m)
    degenerate = False
    prev = None
    for j, phi in enumerate(phis):
        h = b0 + math.cos(2.0 * phi) * bc + math.sin(2.0 * phi) * bs
        vals, vecs = _lowest_eigh(h, window)
        if prev is None:
            k = 0
            vec = vecs[:, 0]
        else:
            overlaps = vecs.conj().T @ prev
            k = int(np.argmax(np.abs(overlaps)))
            cluster = np.nonzero(np.abs(vals - vals[k]) < DEGENERACY_TOL)[0]
            if cluster.size > 1:
                if not degenerate:
                    warnings.warn(
                        f"tracked level degenerate at phi={phi:.6f} "
                        f"(splitting < {DEGENERACY_TOL:.0e}); loop phase is "
                        "a best-effort subspace projection",
                        DegenerateLevelWarning,
                        stacklevel=2,
                    )
                degenerate = True
                sub = vecs[:, cluster]
                proj = sub @ (sub.conj().T @ prev)
                norm = np.linalg.norm(proj)
                if norm == 0.0:
                    raise DiscretizationError(
                        f"lost the tracked subspace at phi={phi:.6f}"
                    )
                vec = proj / norm
            else:
                vec = vecs[:, k]
            if abs(np.vdot(prev, vec)) < 0.5:
                raise DiscretizationError(
                    f"overlap below 0.5 between steps {j - 1} and {j} "
                    f"(phi={phi:.6f}); refine the loop grid"
                )
        # Gap from the tracked level's degenerate cluster to the rest of the
        # window; below tolerance the adiabatic level is ill-defined.
        cluster = np.abs(vals - vals[k]) < DEGENERACY_TOL
        rest = vals[~cluster]
        gap = float(np.min(np.abs(rest - vals[k]))) if rest.size else math.inf
        if gap < gap_tol:
            raise TrackingError(
                f"spectral gap {gap:.3e} below tolerance {gap_tol:.1e} at "
                f"phi={phi:.6f} (step {j})"
            )
        energies[j] = vals[k]
        gaps[j] = gap
        vectors.append(vec)
        prev = vec
    return LoopTrace(params, level, phis, vectors, energies, gaps, degenerate)


def discrete_loop_phase(
    params: XYParams,
    level: str,
    loop: LoopDiscretization,
    windings: int = 1,
    gap_tol: float = 1e-9,
) -> PhaseResult:
    """Loop phase of one tracked level, fixed modulo 2 pi.

    The discrete product determines the phase only up to whole turns, so
    ``value`` and ``wrapped`` coincide here; compare against closed forms
    with a circular distance.
    """
    trace = loop_states(params, level, loop, windings=windings, gap_tol=gap_tol)
    angle = pancharatnam_phase(trace.vectors)
    return PhaseResult.from_value(angle, winding=windings)


def spin_half_loop_phase(theta: float, steps: int, branch: str = "lower") -> PhaseResult:
    """Discrete loop phase of a single spin-1/2 in a precessing unit field.

    The field sits at polar angle theta while its azimuth sweeps 0 -> 2 pi
    over ``steps`` segments.  Serves as the two-level reference case for the
    overlap-product machinery.
    """
    if not 0.0 <= theta <= math.pi:
        raise ValueError(f"theta must lie in [0, pi], got {theta}")
    if steps < 8:
        raise ValueError(f"steps must be >= 8, got {steps}")
    if branch not in ("lower", "upper"):
        raise ValueError(f"branch must be 'lower' or 'upper', got {branch!r}")
    idx = 0 if branch == "lower" else 1
    sin_t, cos_t = math.sin(theta), math.cos(theta)
    vectors = []
    for j in range(steps):
        az = 2.0 * math.pi * j / steps
        h = (
            sin_t * math.cos(az) * PAULI_X
            + sin_t * math.sin(az) * PAULI_Y
            + cos_t * PAULI_Z
        )
        _, vecs = eigh(h)
        vectors.append(vecs[:, idx])
    return PhaseResult.from_value(pancharatnam_phase(vectors))


def write_loop_trace_csv(trace: LoopTrace, path):
    """Debug dump: per-segment overlap and cumulative phase."""
    vecs = trace.vectors
    m = len(vecs)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("phi,overlap_re,overlap_im,cumulative_phase\n")
        cum = 1.0 + 0.0j
        for j in range(m):
            ov = np.vdot(vecs[j], vecs[(j + 1) % m])
            cum *= ov / abs(ov)
            fh.write(
                f"{trace.phis[j]:.12g},{ov.real:.12g},{ov.imag:.12g},"
                f"{PANCHARATNAM_SIGN * np.angle(cum):.12g}\n"
            )
