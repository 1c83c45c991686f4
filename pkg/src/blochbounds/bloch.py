"""Correlation tensors over the generator basis: extraction, norms, reconstruction.

A tensor for party subset S holds the real coefficients
``Tr(rho * Op(i_1, ..., i_k))`` where ``Op`` carries generator ``i_m`` on the
m-th party of S (ascending) and the identity elsewhere. Coefficients are
stored flat in row-major order over the generator indices. Any state
decomposes as

    rho = I/d^n + sum_S  Op-sum(S) / (2^|S| d^(n-|S|)),

which makes the full map of 2^n - 1 tensors an exact, invertible encoding.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache, reduce

import numpy as np

from .basis import generate_basis
from .states import DensityMatrix, partial_trace

__all__ = [
    "IMAG_RESIDUE_TOL",
    "BlochTensor",
    "BlochDecomposition",
    "all_subsets",
    "bloch_tensor",
    "full_decomposition",
    "reconstruct",
    "tensor_norm_sq",
    "purity_from_decomposition",
    "norms_by_order",
    "embed_operator",
    "pure_pair_sum_residual",
    "pure_triple_sum_residual",
]

IMAG_RESIDUE_TOL = 1e-10

# einsum programs per subset size: the reduced state is reshaped to row
# digits then column digits, and each generator enters as G[col, row].
_CONTRACTIONS = {
    1: "ab,iba->i",
    2: "abcd,ica,jdb->ij",
    3: "abcdef,ida,jeb,kfc->ijk",
    4: "abcdefgh,iea,jfb,kgc,lhd->ijkl",
}

# mirror programs used when rebuilding operators from coefficients,
# with each generator entering as G[row, col].
_EXPANSIONS = {
    1: "i,iab->ab",
    2: "ij,iac,jbd->abcd",
    3: "ijk,iad,jbe,kcf->abcdef",
    4: "ijkl,iae,jbf,kcg,ldh->abcdefgh",
}


@lru_cache(maxsize=None)
def _generator_stack(d: int) -> np.ndarray:
    return generate_basis(d).stacked()


@dataclass
class BlochTensor:
    """Flat real coefficient array for one party subset."""

    subset: tuple
    local_dim: int
    coefficients: np.ndarray

    def __post_init__(self):
        self.subset = tuple(int(p) for p in self.subset)
        if not self.subset or list(self.subset) != sorted(set(self.subset)):
            raise ValueError(
                f"subset must be non-empty, ascending and duplicate-free, got {self.subset}"
            )
        m = self.local_dim**2 - 1
        coeffs = np.array(self.coefficients, dtype=float).reshape(-1)
        if coeffs.size != m ** len(self.subset):
            raise ValueError(
                f"expected {m ** len(self.subset)} coefficients for subset "
                f"{self.subset} at d={self.local_dim}, got {coeffs.size}"
            )
        coeffs.setflags(write=False)
        self.coefficients = coeffs

    @property
    def shape(self):
        m = self.local_dim**2 - 1
        return (m,) * len(self.subset)

    def as_array(self) -> np.ndarray:
        """Coefficients reshaped to one axis per subset party."""
        return self.coefficients.reshape(self.shape)


@dataclass
class BlochDecomposition:
    """Complete map from every non-empty party subset to its tensor."""

    local_dim: int
    num_parties: int
    tensors: dict

    def __post_init__(self):
        expected = set(all_subsets(self.num_parties))
        got = set(self.tensors)
        if got != expected:
            missing = sorted(expected - got)
            extra = sorted(got - expected)
            raise ValueError(
                f"decomposition must cover all non-empty subsets; missing {missing}, extra {extra}"
            )
        for subset, tensor in self.tensors.items():
            if tensor.subset != subset or tensor.local_dim != self.local_dim:
                raise ValueError(f"tensor stored under {subset} is inconsistent")

    def tensor(self, subset) -> BlochTensor:
        return self.tensors[tuple(sorted(int(p) for p in subset))]

    def subsets(self):
        return sorted(self.tensors, key=lambda s: (len(s), s))


def all_subsets(num_parties):
    """Every non-empty subset of parties 1..n, ordered by size then lexicographically."""
    out = []
    for k in range(1, num_parties + 1):
        out.extend(itertools.combinations(range(1, num_parties + 1), k))
    return out


def _validated_subset(subset, num_parties):
    raw = tuple(subset)
    parts = tuple(sorted({int(p) for p in raw}))
    if not parts:
        raise ValueError("subset must be non-empty")
    if len(parts) != len(raw):
        raise ValueError(f"subset has duplicate parties: {raw}")
    if parts[0] < 1 or parts[-1] > num_parties:
        raise ValueError(f"subset {parts} is not contained in 1..{num_parties}")
    return parts


def bloch_tensor(rho: DensityMatrix, subset, method: str = "contract") -> BlochTensor:
    """Correlation tensor of ``rho`` on the given parties.

    ``method="contract"`` reduces to the subset marginal and contracts it
    with the stacked generators; ``method="kron"`` builds every full-space
    operator explicitly and takes plain traces. The two agree to near
    machine precision; the second exists as the slow reference path.

    Raises ValueError if the subset is invalid or if any coefficient carries
    an imaginary residue above ``IMAG_RESIDUE_TOL`` (a non-Hermitian input).
    """
    parts = _validated_subset(subset, rho.num_parties)
    if method == "contract":
        raw = _contract_tensor(rho, parts)
    elif method == "kron":
        raw = _kron_tensor(rho, parts)
    else:
        raise ValueError(f"unknown method {method!r}; use 'contract' or 'kron'")
    residue = float(np.abs(raw.imag).max())
    if residue > IMAG_RESIDUE_TOL:
        raise ValueError(
            f"coefficients carry imaginary residue {residue:.3e}; input is not Hermitian enough"
        )
    return BlochTensor(parts, rho.local_dim, raw.real.reshape(-1))


def _contract_tensor(rho, parts):
    d, n = rho.local_dim, rho.num_parties
    k = len(parts)
    reduced = rho.matrix if k == n else partial_trace(rho, parts).matrix
    stack = _generator_stack(d)
    operands = [reduced.reshape((d,) * (2 * k))] + [stack] * k
    return np.einsum(_CONTRACTIONS[k], *operands, optimize=True)


def _kron_tensor(rho, parts):
    d, n = rho.local_dim, rho.num_parties
    stack = _generator_stack(d)
    m = d * d - 1
    eye = np.eye(d, dtype=complex)
    out = np.empty((m,) * len(parts), dtype=complex)
    for idx in itertools.product(range(m), repeat=len(parts)):
        ops = []
        slot = 0
        for p in range(1, n + 1):
            if slot < len(parts) and parts[slot] == p:
                ops.append(stack[idx[slot]])
                slot += 1
            else:
                ops.append(eye)
        op = reduce(np.kron, ops)
        out[idx] = np.einsum("ij,ji->", rho.matrix, op)
    return out


def full_decomposition(rho: DensityMatrix, method: str = "contract") -> BlochDecomposition:
    """Tensors for all 2^n - 1 non-empty party subsets of ``rho``."""
    tensors = {
        s: bloch_tensor(rho, s, method=method) for s in all_subsets(rho.num_parties)
    }
    return BlochDecomposition(rho.local_dim, rho.num_parties, tensors)


def tensor_norm_sq(tensor: BlochTensor) -> float:
    """Squared Frobenius norm: the sum of squared coefficients."""
    c = tensor.coefficients
    return float(np.dot(c, c))


def embed_operator(op, subset, local_dim, num_parties) -> np.ndarray:
    """Place an operator on the subset parties into the full space, identity elsewhere."""
    d, n = int(local_dim), int(num_parties)
    parts = _validated_subset(subset, n)
    k = len(parts)
    op = np.asarray(op, dtype=complex)
    if op.shape != (d**k, d**k):
        raise ValueError(f"operator shape {op.shape} does not match subset {parts}")
    if k == n:
        return op.copy()
    rest = [p for p in range(1, n + 1) if p not in parts]
    full = np.kron(op, np.eye(d ** (n - k), dtype=complex))
    order = np.argsort(list(parts) + rest)
    axes = list(order) + [int(a) + n for a in order]
    return full.reshape((d,) * (2 * n)).transpose(axes).reshape(d**n, d**n)


def _subset_operator(tensor: BlochTensor) -> np.ndarray:
    d = tensor.local_dim
    k = len(tensor.subset)
    stack = _generator_stack(d)
    out = np.einsum(_EXPANSIONS[k], tensor.as_array(), *([stack] * k), optimize=True)
    return out.reshape(d**k, d**k)


def reconstruct(decomp: BlochDecomposition) -> DensityMatrix:
    """Rebuild the density matrix encoded by a complete decomposition.

    Inverts ``full_decomposition`` exactly up to rounding. Coefficient maps
    that do not come from a valid state fail the density-matrix validation.
    """
    d, n = decomp.local_dim, decomp.num_parties
    dim = d**n
    mat = np.eye(dim, dtype=complex) / dim
    for subset in decomp.subsets():
        tensor = decomp.tensors[subset]
        k = len(subset)
        weight = 1.0 / (2**k * d ** (n - k))
        mat += weight * embed_operator(_subset_operator(tensor), subset, d, n)
    return DensityMatrix(mat, d, n)


def purity_from_decomposition(decomp: BlochDecomposition) -> float:
    """Trace of the squared state evaluated from tensor norms alone.

    Orthogonality of the expansion basis gives
    ``Tr(rho^2) = 1/d^n + sum_S ||T_S||^2 / (2^|S| d^(n-|S|))``.
    """
    d, n = decomp.local_dim, decomp.num_parties
    total = 1.0 / d**n
    for subset, tensor in decomp.tensors.items():
        k = len(subset)
        total += tensor_norm_sq(tensor) / (2**k * d ** (n - k))
    return total


def norms_by_order(decomp: BlochDecomposition) -> dict:
    """Sum of squared tensor norms grouped by subset size."""
    out = {k: 0.0 for k in range(1, decomp.num_parties + 1)}
    for subset, tensor in decomp.tensors.items():
        out[len(subset)] += tensor_norm_sq(tensor)
    return out


def pure_pair_sum_residual(decomp: BlochDecomposition) -> float:
    """Residual of the three-party pure-state sum rule.

    For every pure three-party state, B/4 = (1/2 - 1/d) A + 3/d - 3/d^2
    where A and B sum the squared norms of the one- and two-party tensors.
    Returns the signed deviation of the left side from the right.
    """
    if decomp.num_parties != 3:
        raise ValueError("the pair sum rule applies to three-party states")
    d = decomp.local_dim
    sums = norms_by_order(decomp)
    return sums[2] / 4.0 - ((0.5 - 1.0 / d) * sums[1] + 3.0 / d - 3.0 / d**2)


def pure_triple_sum_residual(decomp: BlochDecomposition) -> float:
    """Residual of the four-party pure-state sum rule.

    For every pure four-party state,
    B/(4 d^2) = (2 d^2 - 2)/d^4 + (d^2 - 3)/(4 d^3) A - C/(16 d)
    with A, B, C the summed squared norms of the one-, two- and three-party
    tensors. Returns the signed deviation of the left side from the right.
    """
    if decomp.num_parties != 4:
        raise ValueError("the triple sum rule applies to four-party states")
    d = decomp.local_dim
    sums = norms_by_order(decomp)
    rhs = (
        (2.0 * d * d - 2.0) / d**4
        + (d * d - 3.0) / (4.0 * d**3) * sums[1]
        - sums[3] / (16.0 * d)
    )
    return sums[2] / (4.0 * d * d) - rhs
