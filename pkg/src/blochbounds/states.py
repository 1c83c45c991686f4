"""States on up to four equal-dimension parties: construction, validation, marginals.

Index convention: party 1 is the most significant tensor factor, so the
amplitude of ``|a_1 a_2 ... a_n>`` sits at flat index
``a_1 d^(n-1) + a_2 d^(n-2) + ... + a_n``. Party labels are 1-based
throughout. All state objects are immutable after validated construction.
"""

from __future__ import annotations

from operator import index as _as_index

import numpy as np

__all__ = [
    "DEFAULT_ATOL",
    "MAX_PARTIES",
    "PureState",
    "DensityMatrix",
    "Ensemble",
    "from_pure",
    "from_ensemble",
    "ghz",
    "isotropic_ghz4",
    "product_max_entangled",
    "product_state",
    "partial_trace",
    "purity",
    "as_pure",
]

DEFAULT_ATOL = 1e-9

MAX_PARTIES = 4


def _check_dims(local_dim, num_parties):
    d = _as_index(local_dim)
    n = _as_index(num_parties)
    if d < 2:
        raise ValueError(f"local dimension must be at least 2, got {d}")
    if not 1 <= n <= MAX_PARTIES:
        raise ValueError(f"party count must lie in 1..{MAX_PARTIES}, got {n}")
    return d, n


class PureState:
    """A normalized state vector on ``num_parties`` qudits of dimension ``local_dim``."""

    def __init__(self, amplitudes, local_dim, num_parties, atol=DEFAULT_ATOL):
        d, n = _check_dims(local_dim, num_parties)
        amp = np.array(amplitudes, dtype=complex).reshape(-1)
        if amp.size != d**n:
            raise ValueError(
                f"expected {d**n} amplitudes for d={d}, n={n}, got {amp.size}"
            )
        norm = np.linalg.norm(amp)
        if abs(norm - 1.0) > atol:
            raise ValueError(f"state vector norm {norm!r} is not 1 within {atol}")
        amp.setflags(write=False)
        self.local_dim = d
        self.num_parties = n
        self.amplitudes = amp

    @property
    def dim(self):
        return self.local_dim**self.num_parties

    def density(self) -> "DensityMatrix":
        """The rank-one density matrix of this vector."""
        return from_pure(self)

    def overlap(self, other: "PureState") -> complex:
        """Inner product of this vector with another."""
        return complex(np.vdot(self.amplitudes, other.amplitudes))


class DensityMatrix:
    """A validated density matrix on ``num_parties`` qudits of dimension ``local_dim``.

    Construction checks Hermiticity, unit trace, positive semidefiniteness
    (smallest eigenvalue of the Hermitian part at least ``-atol``) and that
    the purity lies in [1/d^n, 1], each within ``atol``. The stored matrix
    is read-only.
    """

    def __init__(self, matrix, local_dim, num_parties, atol=DEFAULT_ATOL):
        d, n = _check_dims(local_dim, num_parties)
        mat = np.array(matrix, dtype=complex)
        dim = d**n
        if mat.shape != (dim, dim):
            raise ValueError(
                f"expected a {dim} x {dim} matrix for d={d}, n={n}, got shape {mat.shape}"
            )
        herm_dev = np.abs(mat - mat.conj().T).max()
        if herm_dev > atol:
            raise ValueError(f"matrix deviates from Hermitian by {herm_dev:.3e}")
        trace = mat.trace()
        if abs(trace - 1.0) > atol:
            raise ValueError(f"trace {trace!r} is not 1 within {atol}")
        smallest = np.linalg.eigvalsh(0.5 * (mat + mat.conj().T))[0]
        if smallest < -atol:
            raise ValueError(
                f"matrix is not positive semidefinite: smallest eigenvalue {smallest:.3e}"
            )
        pur = float(np.einsum("ij,ji->", mat, mat).real)
        if not (1.0 / dim - atol) <= pur <= 1.0 + atol:
            raise ValueError(f"purity {pur!r} lies outside [1/{dim}, 1]")
        mat.setflags(write=False)
        self.local_dim = d
        self.num_parties = n
        self.matrix = mat

    @property
    def dim(self):
        return self.local_dim**self.num_parties


class Ensemble:
    """A finite mixture of pure states with convex weights summing to one."""

    def __init__(self, members, atol=DEFAULT_ATOL):
        members = tuple((float(w), psi) for w, psi in members)
        if not members:
            raise ValueError("ensemble needs at least one member")
        for weight, psi in members:
            if not isinstance(psi, PureState):
                raise ValueError("ensemble members must be PureState instances")
            if weight < -atol or weight > 1.0 + atol:
                raise ValueError(f"weight {weight} lies outside [0, 1]")
        total = sum(w for w, _ in members)
        if abs(total - 1.0) > atol:
            raise ValueError(f"weights sum to {total!r}, not 1 within {atol}")
        d = members[0][1].local_dim
        n = members[0][1].num_parties
        for _, psi in members[1:]:
            if (psi.local_dim, psi.num_parties) != (d, n):
                raise ValueError(
                    "ensemble members must share local dimension and party count"
                )
        self.members = members
        self.local_dim = d
        self.num_parties = n


def from_pure(psi: PureState) -> DensityMatrix:
    """Outer product of a pure state with itself."""
    mat = np.outer(psi.amplitudes, psi.amplitudes.conj())
    return DensityMatrix(mat, psi.local_dim, psi.num_parties)


def from_ensemble(ensemble: Ensemble) -> DensityMatrix:
    """Convex combination of the ensemble's rank-one projectors."""
    dim = ensemble.local_dim**ensemble.num_parties
    mat = np.zeros((dim, dim), dtype=complex)
    for weight, psi in ensemble.members:
        mat += weight * np.outer(psi.amplitudes, psi.amplitudes.conj())
    return DensityMatrix(mat, ensemble.local_dim, ensemble.num_parties)


def ghz(d, n) -> PureState:
    """The n-party qudit state with equal amplitude on every ``|i i ... i>``."""
    d = _as_index(d)
    n = _as_index(n)
    if d < 2:
        raise ValueError(f"local dimension must be at least 2, got {d}")
    if not 2 <= n <= MAX_PARTIES:
        raise ValueError(f"party count must lie in 2..{MAX_PARTIES}, got {n}")
    amp = np.zeros(d**n, dtype=complex)
    stride = (d**n - 1) // (d - 1)
    amp[np.arange(d) * stride] = 1.0 / np.sqrt(d)
    return PureState(amp, d, n)


def isotropic_ghz4(x, d) -> DensityMatrix:
    """Four-party GHZ projector mixed with white noise: ``x P + (1-x) I/d^4``."""
    x = float(x)
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"mixing weight must lie in [0, 1], got {x}")
    g = ghz(d, 4).amplitudes
    dim = g.size
    mat = x * np.outer(g, g.conj()) + ((1.0 - x) / dim) * np.eye(dim)
    return DensityMatrix(mat, d, 4)


def product_max_entangled(d) -> PureState:
    """Two maximally entangled pairs side by side, on parties (1,2) and (3,4)."""
    d = _as_index(d)
    if d < 2:
        raise ValueError(f"local dimension must be at least 2, got {d}")
    pair = np.zeros(d * d, dtype=complex)
    pair[np.arange(d) * (d + 1)] = 1.0 / np.sqrt(d)
    return PureState(np.kron(pair, pair), d, 4)


def product_state(factors, local_dim) -> PureState:
    """Assemble a pure product state from factors on disjoint party slots.

    Parameters
    ----------
    factors : sequence of (parties, amplitudes)
        Each entry places a normalized vector on the given 1-based parties;
        the party tuples must partition {1, ..., n}. Factor order is free.
    local_dim : int
        Common local dimension of every party.
    """
    d = _as_index(local_dim)
    party_order = []
    tensors = []
    for parties, amp in factors:
        parties = tuple(_as_index(p) for p in parties)
        vec = np.asarray(amp, dtype=complex).reshape(-1)
        if vec.size != d ** len(parties):
            raise ValueError(
                f"factor on parties {parties} has {vec.size} amplitudes, expected {d ** len(parties)}"
            )
        party_order.extend(parties)
        tensors.append(vec.reshape((d,) * len(parties)))
    n = len(party_order)
    if sorted(party_order) != list(range(1, n + 1)):
        raise ValueError(f"factor parties must partition 1..{n}, got {party_order}")
    full = tensors[0]
    for t in tensors[1:]:
        full = np.tensordot(full, t, axes=0)
    full = np.transpose(full, np.argsort(party_order))
    return PureState(full.reshape(-1), d, n)


def partial_trace(rho: DensityMatrix, keep) -> DensityMatrix:
    """Reduced state on the given parties (1-based), tracing out the rest.

    The result's parties are relabeled 1..k following the ascending order
    of ``keep``. The trace is preserved exactly up to rounding.
    """
    d, n = rho.local_dim, rho.num_parties
    kept = sorted({_as_index(p) for p in keep})
    if not kept:
        raise ValueError("keep set must be non-empty")
    if kept[0] < 1 or kept[-1] > n:
        raise ValueError(f"keep parties must lie in 1..{n}, got {kept}")
    k = len(kept)
    if k == n:
        return DensityMatrix(rho.matrix, d, n)
    cur = rho.matrix.reshape((d,) * (2 * n))
    remaining = n
    for p in reversed(range(n)):
        if p + 1 in kept:
            continue
        cur = np.trace(cur, axis1=p, axis2=p + remaining)
        remaining -= 1
    return DensityMatrix(cur.reshape(d**k, d**k), d, k)


def purity(rho: DensityMatrix) -> float:
    """Trace of the squared density matrix."""
    m = rho.matrix
    return float(np.einsum("ij,ji->", m, m).real)


def as_pure(rho: DensityMatrix, atol=DEFAULT_ATOL) -> PureState:
    """Extract the state vector of a rank-one density matrix.

    Raises ValueError when the purity deviates from 1 by more than ``atol``.
    """
    pur = purity(rho)
    if abs(pur - 1.0) > atol:
        raise ValueError(f"state is mixed (purity {pur!r}); expected a pure state")
    _, vecs = np.linalg.eigh(0.5 * (rho.matrix + rho.matrix.conj().T))
    vec = vecs[:, -1]
    return PureState(vec / np.linalg.norm(vec), rho.local_dim, rho.num_parties)
