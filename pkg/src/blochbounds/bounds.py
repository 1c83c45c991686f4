"""Closed-form norm bounds, separability thresholds, classification, and the
tensor-norm entanglement measure.

All bounds refer to the squared Frobenius norm of correlation tensors in the
generator normalization Tr(G_i G_j) = 2 delta_ij. The thresholds give
necessary conditions only: a state whose norm exceeds a class threshold
cannot belong to that class, but staying below every threshold proves
nothing.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from operator import index as _as_index
from typing import NamedTuple

from .bloch import bloch_tensor, tensor_norm_sq
from .states import DensityMatrix, PureState, from_pure

__all__ = [
    "COMPARISON_TOL",
    "CLASS_LABELS",
    "NECESSARY_ONLY_NOTE",
    "ball_radii",
    "bipartite_norm_bound",
    "tripartite_norm_bound",
    "fourpartite_norm_bound",
    "triple_sum_bound",
    "BoundTable",
    "bound_table",
    "SeparabilityThresholds",
    "separability_thresholds",
    "ClassificationReport",
    "classify",
    "et_measure",
    "et_upper_bound",
    "et_upper_bound_via_norm_bound",
    "et_bound_audit",
    "TradeoffResult",
    "tradeoff_check",
]

COMPARISON_TOL = 1e-9

#: Separability class labels in ascending threshold order.
CLASS_LABELS = ("1-1-1-1", "1-1-2", "1-3", "2-2")

NECESSARY_ONLY_NOTE = (
    "Norm thresholds are necessary conditions only: exceeding a class bound "
    "excludes that class, but staying below it never certifies separability."
)


def _check_dim(d):
    d = _as_index(d)
    if d < 2:
        raise ValueError(f"local dimension must be at least 2, got {d}")
    return d


def ball_radii(d):
    """Inner and outer radii (r, R) of the single-qudit Bloch body.

    Every valid Bloch vector has norm at most R = sqrt(2(1 - 1/d)), and
    every vector of norm at most r = sqrt(2/(d(d-1))) yields a valid state.
    """
    d = _check_dim(d)
    return math.sqrt(2.0 / (d * (d - 1))), math.sqrt(2.0 * (1.0 - 1.0 / d))


def bipartite_norm_bound(d) -> float:
    """Largest possible squared norm of a two-party tensor: 4(d^2 - 1)/d^2."""
    d = _check_dim(d)
    return 4.0 * (d * d - 1) / (d * d)


def tripartite_norm_bound(d) -> float:
    """Largest possible squared norm of a three-party tensor: (8d^3 - 24d + 16)/d^3."""
    d = _check_dim(d)
    return (8.0 * d**3 - 24.0 * d + 16.0) / d**3


def fourpartite_norm_bound(d) -> float:
    """Largest possible squared norm of a four-party tensor: 16(d^2 - 1)^2/d^4."""
    d = _check_dim(d)
    return 16.0 * (d * d - 1) ** 2 / d**4


def triple_sum_bound(d) -> float:
    """Joint cap on the four three-party squared norms of a four-party state.

    The sum over all triples is at most 8(d^2 - 1)^3 / (d^3 (d^2 - 2)), which
    is strictly tighter than four times the single-triple bound; at d = 2 it
    forbids all four triple norms from peaking simultaneously.
    """
    d = _check_dim(d)
    return 8.0 * (d * d - 1) ** 3 / (d**3 * (d * d - 2))


@dataclass(frozen=True)
class BoundTable:
    """All closed-form bounds for one local dimension."""

    local_dim: int
    bipartite_bound: float
    tripartite_bound: float
    fourpartite_bound: float
    tradeoff_bound: float
    ball_radii: tuple


def bound_table(d) -> BoundTable:
    d = _check_dim(d)
    return BoundTable(
        local_dim=d,
        bipartite_bound=bipartite_norm_bound(d),
        tripartite_bound=tripartite_norm_bound(d),
        fourpartite_bound=fourpartite_norm_bound(d),
        tradeoff_bound=triple_sum_bound(d),
        ball_radii=ball_radii(d),
    )


@dataclass(frozen=True)
class SeparabilityThresholds:
    """Per-class caps on the four-party squared norm for separable states.

    ``t13``, ``t22``, ``t112`` and ``t1111`` bound the 1-3, 2-2, 1-1-2 and
    1-1-1-1 separable classes; they nest as t1111 <= t112 <= t13 <= t22.
    """

    local_dim: int
    t13: float
    t22: float
    t112: float
    t1111: float

    def as_dict(self) -> dict:
        return {
            "1-3": self.t13,
            "2-2": self.t22,
            "1-1-2": self.t112,
            "1-1-1-1": self.t1111,
        }

    def for_class(self, label: str) -> float:
        try:
            return self.as_dict()[label]
        except KeyError:
            raise ValueError(f"unknown separability class {label!r}") from None


def separability_thresholds(d) -> SeparabilityThresholds:
    d = _check_dim(d)
    scale = 16.0 / d**4
    return SeparabilityThresholds(
        local_dim=d,
        t13=scale * (d - 1) * (d**3 - 3 * d + 2),
        # the 2-2 cap coincides with the unconditional four-party bound;
        # evaluate it identically so the equality is exact
        t22=fourpartite_norm_bound(d),
        t112=scale * (d * d - 1) * (d - 1) ** 2,
        t1111=scale * (d - 1) ** 4,
    )


@dataclass(frozen=True)
class ClassificationReport:
    """Outcome of the four-party norm classification.

    ``margins`` holds the unclipped difference norm - threshold per class;
    ``excluded`` contains exactly the classes whose margin exceeds the
    comparison tolerance.
    """

    local_dim: int
    norm_sq_1234: float
    thresholds: SeparabilityThresholds
    margins: dict
    excluded: frozenset
    verdict_note: str = field(default=NECESSARY_ONLY_NOTE)


def classify(rho: DensityMatrix, tol: float = COMPARISON_TOL) -> ClassificationReport:
    """Rule out every separability class whose threshold the norm exceeds.

    Raises ValueError unless ``rho`` has exactly four parties. Nothing is
    ever reported as separable; see ``NECESSARY_ONLY_NOTE``.
    """
    if rho.num_parties != 4:
        raise ValueError(
            f"classification needs a four-party state, got n={rho.num_parties}"
        )
    norm_sq = tensor_norm_sq(bloch_tensor(rho, (1, 2, 3, 4)))
    thresholds = separability_thresholds(rho.local_dim)
    table = thresholds.as_dict()
    margins = {label: norm_sq - table[label] for label in CLASS_LABELS}
    excluded = frozenset(label for label in CLASS_LABELS if margins[label] > tol)
    return ClassificationReport(rho.local_dim, norm_sq, thresholds, margins, excluded)


def et_measure(psi: PureState) -> float:
    """Tensor-norm entanglement measure of a pure n-party state.

    Evaluates ``(d^n / 2^n) ||T|| - (d(d-1)/2)^(n/2)`` with T the full
    n-party tensor. The raw value is returned; it can be negative for weakly
    correlated states, and callers wanting a floor should clamp at zero.

    Raises TypeError for density-matrix input (the measure is defined for
    pure states) and ValueError for single-party states.
    """
    if isinstance(psi, DensityMatrix):
        raise TypeError("mixed states are not supported; pass a PureState")
    if not isinstance(psi, PureState):
        raise TypeError(f"expected a PureState, got {type(psi).__name__}")
    n = psi.num_parties
    if n < 2:
        raise ValueError("the measure needs at least two parties")
    d = psi.local_dim
    full = tuple(range(1, n + 1))
    norm = math.sqrt(tensor_norm_sq(bloch_tensor(from_pure(psi), full)))
    return (d**n / 2**n) * norm - (d * (d - 1) / 2.0) ** (n / 2.0)


def et_upper_bound(d, n) -> float:
    """Largest measure value attainable by a pure state, in closed form.

    Defined for n = 3 and n = 4:
    ``sqrt(d^3 (d-1)^2 / 8) (sqrt(d+2) - sqrt(d-1))`` and ``d^2 (d-1)/2``.
    """
    d = _check_dim(d)
    if n == 3:
        return math.sqrt(d**3 * (d - 1) ** 2 / 8.0) * (
            math.sqrt(d + 2) - math.sqrt(d - 1)
        )
    if n == 4:
        return d * d * (d - 1) / 2.0
    raise ValueError(f"the measure bound is defined for n in (3, 4), got {n}")


def et_upper_bound_via_norm_bound(d, n) -> float:
    """The same bound obtained by feeding the norm cap through the measure.

    Evaluates ``(d^n / 2^n) sqrt(cap) - (d(d-1)/2)^(n/2)`` with the three-
    or four-party norm cap. Algebraically identical to ``et_upper_bound``
    for every d; both routes are kept so reports can show the agreement
    instead of asserting it silently.
    """
    d = _check_dim(d)
    if n == 3:
        cap = tripartite_norm_bound(d)
    elif n == 4:
        cap = fourpartite_norm_bound(d)
    else:
        raise ValueError(f"the measure bound is defined for n in (3, 4), got {n}")
    return (d**n / 2**n) * math.sqrt(cap) - (d * (d - 1) / 2.0) ** (n / 2.0)


def et_bound_audit(d) -> dict:
    """Both evaluation routes of the measure bounds, with their differences.

    Keys are the party counts 3 and 4; each value reports the closed form,
    the norm-cap route and their (tiny) difference.
    """
    d = _check_dim(d)
    audit = {}
    for n in (3, 4):
        closed = et_upper_bound(d, n)
        via = et_upper_bound_via_norm_bound(d, n)
        audit[n] = {
            "closed_form": closed,
            "via_norm_bound": via,
            "difference": closed - via,
        }
    return audit


class TradeoffResult(NamedTuple):
    sum_sq: float
    bound: float
    satisfied: bool


def tradeoff_check(rho: DensityMatrix, tol: float = COMPARISON_TOL) -> TradeoffResult:
    """Sum of the four three-party squared norms against their joint cap."""
    if rho.num_parties != 4:
        raise ValueError(
            f"the trade-off applies to four-party states, got n={rho.num_parties}"
        )
    total = 0.0
    for triple in itertools.combinations((1, 2, 3, 4), 3):
        total += tensor_norm_sq(bloch_tensor(rho, triple))
    bound = triple_sum_bound(rho.local_dim)
    return TradeoffResult(total, bound, total <= bound + tol)
