"""Deterministic random state generation.

Every draw keys a Philox counter-based bit generator with a 64-bit seed,
per-sample seeds derive from a base seed through a splitmix64-style hash,
and normal variates come from an explicit Box-Muller transform on the
generator's uniforms. Identical seeds therefore reproduce identical states
bit for bit, independent of how calls are scheduled.
"""

from __future__ import annotations

import numpy as np

from .states import DensityMatrix, Ensemble, PureState, from_ensemble, product_state

__all__ = [
    "splitmix64",
    "sample_seed",
    "haar_random_pure",
    "random_mixed",
    "haar_random_unitary",
    "random_separable",
    "SEPARABLE_SPLITS",
]

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15

#: Partitions of the four parties allowed within each separability class.
SEPARABLE_SPLITS = {
    "1-3": (
        ((1,), (2, 3, 4)),
        ((2,), (1, 3, 4)),
        ((3,), (1, 2, 4)),
        ((4,), (1, 2, 3)),
    ),
    "2-2": (
        ((1, 2), (3, 4)),
        ((1, 3), (2, 4)),
        ((1, 4), (2, 3)),
    ),
    "1-1-2": (
        ((1,), (2,), (3, 4)),
        ((1,), (3,), (2, 4)),
        ((1,), (4,), (2, 3)),
        ((2,), (3,), (1, 4)),
        ((2,), (4,), (1, 3)),
        ((3,), (4,), (1, 2)),
    ),
    "1-1-1-1": (((1,), (2,), (3,), (4,)),),
}


def splitmix64(value: int) -> int:
    """One splitmix64 finalization round of a 64-bit value."""
    z = (int(value) + _GOLDEN) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return (z ^ (z >> 31)) & _MASK64


def sample_seed(base_seed: int, index: int) -> int:
    """Per-sample seed: hash of the base seed advanced by the sample index."""
    return splitmix64((int(base_seed) + (int(index) + 1) * _GOLDEN) & _MASK64)


def _generator(seed) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=int(seed) & _MASK64))


def _standard_normal(rng, count):
    """Box-Muller normals; odd counts drop the spare draw."""
    pairs = (count + 1) // 2
    u1 = 1.0 - rng.random(pairs)  # in (0, 1], keeps the log finite
    u2 = rng.random(pairs)
    radius = np.sqrt(-2.0 * np.log(u1))
    angle = 2.0 * np.pi * u2
    return np.concatenate([radius * np.cos(angle), radius * np.sin(angle)])[:count]


def _complex_normal(rng, count):
    flat = _standard_normal(rng, 2 * count)
    return flat[:count] + 1j * flat[count:]


def haar_random_pure(d, n, seed) -> PureState:
    """Haar-distributed pure state: normalized i.i.d. complex Gaussian amplitudes."""
    rng = _generator(seed)
    amp = _complex_normal(rng, int(d) ** int(n))
    return PureState(amp / np.linalg.norm(amp), d, n)


def random_mixed(d, n, rank, seed) -> DensityMatrix:
    """Random density matrix G G^dagger / Tr(G G^dagger) with Gaussian G.

    ``rank`` columns of G cap the numerical rank of the result; rank 1 gives
    pure states, rank d^n the unconstrained ensemble.
    """
    dim = int(d) ** int(n)
    rank = int(rank)
    if not 1 <= rank <= dim:
        raise ValueError(f"rank must lie in 1..{dim}, got {rank}")
    rng = _generator(seed)
    g = _complex_normal(rng, dim * rank).reshape(dim, rank)
    mat = g @ g.conj().T
    mat /= mat.trace().real
    return DensityMatrix(mat, d, n)


def haar_random_unitary(dim, seed) -> np.ndarray:
    """Haar-distributed unitary: QR of a Gaussian matrix with phases fixed."""
    rng = _generator(seed)
    g = _complex_normal(rng, dim * dim).reshape(dim, dim)
    q, r = np.linalg.qr(g)
    phases = np.diagonal(r).copy()
    phases /= np.abs(phases)
    return q * phases


def _simplex_weights(rng, count):
    """Uniform point on the probability simplex via sorted uniform cuts."""
    cuts = np.sort(rng.random(count - 1))
    return np.diff(np.concatenate([[0.0], cuts, [1.0]]))


def random_separable(d, label, seed, members: int = 8) -> DensityMatrix:
    """Random four-party mixture of product states from one separability class.

    Each of the ``members`` pure members picks one partition allowed by the
    class (see ``SEPARABLE_SPLITS``) and independent Haar factors on its
    blocks; the mixture weights are uniform on the simplex. The result is a
    genuinely mixed member of the class, not just a pure product state.
    """
    try:
        splits = SEPARABLE_SPLITS[label]
    except KeyError:
        raise ValueError(f"unknown separability class {label!r}") from None
    if members < 1:
        raise ValueError("members must be at least 1")
    rng = _generator(seed)
    weights = _simplex_weights(rng, members)
    pures = []
    for _ in range(members):
        split = splits[int(rng.integers(len(splits)))]
        factors = []
        for parties in split:
            vec = _complex_normal(rng, int(d) ** len(parties))
            factors.append((parties, vec / np.linalg.norm(vec)))
        pures.append(product_state(factors, d))
    return from_ensemble(Ensemble(list(zip(weights, pures))))
