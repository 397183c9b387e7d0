"""Exact information measures over a JointDist.

Everything is computed in bits (log base 2) by direct summation over the
dense joint table.  Zero-probability cells never enter a log; per-term values
that dip below zero by at most 1e-10 are treated as roundoff and clamped,
anything more negative raises, since a genuinely negative conditional mutual
information indicates a bug rather than accumulation error.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

from .errors import NumericalIntegrityError, UnsupportedConfigurationError
from .trajectory import Coord, JointDist, Role

IDENTITY_ATOL = 1e-10
ZERO_ATOL = 1e-12


class Arrow(Enum):
    """Interleaving convention: does the source symbol at step i precede (FORWARD)
    or follow (DELAYED) the target symbol at step i?"""

    FORWARD = "forward"
    DELAYED = "delayed"


@dataclass(frozen=True)
class Interval:
    """Inclusive 1-based integer interval."""

    lo: int
    hi: int

    def __post_init__(self) -> None:
        if not 1 <= self.lo <= self.hi:
            raise ValueError(f"invalid interval [{self.lo}:{self.hi}]")

    def __len__(self) -> int:
        return self.hi - self.lo + 1

    def __str__(self) -> str:
        return f"[{self.lo}:{self.hi}]"


@dataclass(frozen=True)
class MeasureQuery:
    """Source interval, target interval, and arrow for one directed measure."""

    source_role: Role
    source: Interval
    target_role: Role
    target: Interval
    arrow: Arrow = Arrow.FORWARD

    def __post_init__(self) -> None:
        if self.source_role is self.target_role:
            raise ValueError("source and target must live on opposite roles")

    def validate_for(self, horizon: int) -> None:
        for iv in (self.source, self.target):
            if iv.hi > horizon:
                raise ValueError(f"interval {iv} exceeds horizon {horizon}")

    def reversed(self, arrow: Arrow) -> "MeasureQuery":
        """The opposite-direction query over the same intervals."""
        return MeasureQuery(self.target_role, self.target, self.source_role, self.source, arrow)


@dataclass(frozen=True)
class MeasureReport:
    """A measure value plus its per-timestep term breakdown."""

    value: float
    terms: tuple[tuple[int, float], ...]

    @classmethod
    def from_terms(cls, terms: Sequence[tuple[int, float]]) -> "MeasureReport":
        return cls(float(sum(t for _, t in terms)), tuple(terms))

    def to_text(self) -> str:
        lines = [f"value_bits={self.value:.17g}"]
        lines += [f"term i={i} bits={t:.17g}" for i, t in self.terms]
        return "\n".join(lines) + "\n"


def span(role: Role, lo: int, hi: int) -> list[Coord]:
    """Coordinates (role, lo), ..., (role, hi); empty when hi < lo."""
    return [(role, t) for t in range(lo, hi + 1)]


def entropy(dist: JointDist, coords: Sequence[Coord]) -> float:
    """Shannon entropy of the marginal over ``coords``, in bits."""
    p = dist.marginal(coords).reshape(-1)
    nz = p[p > 0]
    return float(-(nz * np.log2(nz)).sum())


def conditional_entropy(dist: JointDist, v: Sequence[Coord], w: Sequence[Coord]) -> float:
    """H(V | W) = H(V, W) - H(W)."""
    return entropy(dist, list(v) + list(w)) - entropy(dist, w)


def _clamp(value: float, what: str) -> float:
    if value < -IDENTITY_ATOL:
        raise NumericalIntegrityError(f"{what} = {value!r} is negative beyond tolerance")
    return max(value, 0.0)


def cmi(dist: JointDist, u: Sequence[Coord], v: Sequence[Coord], w: Sequence[Coord]) -> float:
    """Conditional mutual information I(U; V | W) in bits by direct summation."""
    p = dist.grouped_marginal(u, v, w)
    p_uw = p.sum(axis=1, keepdims=True)
    p_vw = p.sum(axis=0, keepdims=True)
    p_w = p.sum(axis=(0, 1), keepdims=True)
    mask = p > 0
    logs = (
        np.log2(p, where=mask, out=np.zeros_like(p))
        + np.log2(p_w, where=p_w > 0, out=np.zeros_like(p_w))
        - np.log2(p_uw, where=p_uw > 0, out=np.zeros_like(p_uw))
        - np.log2(p_vw, where=p_vw > 0, out=np.zeros_like(p_vw))
    )
    value = float((p * logs)[mask].sum())
    return _clamp(value, "conditional mutual information")


def gdi(dist: JointDist, query: MeasureQuery) -> MeasureReport:
    """Directed information from the source interval to the target interval.

    FORWARD sums, for i in [max(a, c) : d], the terms
    I(X[a : min(b, i)]; Y_i | X[1 : a-1], Y[1 : i-1]); DELAYED shifts the source
    cutoff to min(b, i-1) and starts at max(a+1, c).  Empty summation ranges and
    empty source blocks contribute exactly zero.
    """
    query.validate_for(dist.horizon)
    x, y = query.source_role, query.target_role
    a, b = query.source.lo, query.source.hi
    c, d = query.target.lo, query.target.hi
    terms: list[tuple[int, float]] = []
    start = max(a, c) if query.arrow is Arrow.FORWARD else max(a + 1, c)
    lag = 0 if query.arrow is Arrow.FORWARD else 1
    for i in range(start, d + 1):
        block_hi = min(b, i - lag)
        if block_hi < a:
            terms.append((i, 0.0))
            continue
        u = span(x, a, block_hi)
        v = [(y, i)]
        w = span(x, 1, a - 1) + span(y, 1, i - 1)
        terms.append((i, cmi(dist, u, v, w)))
    return MeasureReport.from_terms(terms)


def directed_information(dist: JointDist, x_role: Role, arrow: Arrow = Arrow.FORWARD) -> MeasureReport:
    """Full-interval directed information between the two symbol streams."""
    full = Interval(1, dist.horizon)
    return gdi(dist, MeasureQuery(x_role, full, x_role.other, full, arrow))


def causal_entropy(
    dist: JointDist,
    target_role: Role,
    target: Interval,
    source_role: Role,
    source: Interval,
) -> float:
    """Causally conditioned entropy of the target stream given the source stream.

    Sums H(Y_i | Y[1 : i-1], X[1 : min(b, i)]) for i in [max(a, c) : d]; for full
    intervals this is the classical causal entropy sum H(Y_i | Y[1:i-1], X[1:i]).
    """
    if target_role is source_role:
        raise ValueError("target and source must live on opposite roles")
    for iv in (target, source):
        if iv.hi > dist.horizon:
            raise ValueError(f"interval {iv} exceeds horizon {dist.horizon}")
    a, b = source.lo, source.hi
    c, d = target.lo, target.hi
    total = 0.0
    for i in range(max(a, c), d + 1):
        v = [(target_role, i)]
        w = span(target_role, 1, i - 1) + span(source_role, 1, min(b, i))
        total += conditional_entropy(dist, v, w)
    return _clamp(total, "causal entropy")


def kramer_decompose(dist: JointDist, query: MeasureQuery) -> tuple[float, float]:
    """Split a FORWARD measure into an entropy term minus a causal-entropy term.

    Returns (H(Y[max(a,c) : d] | X[1 : a-1], Y[1 : max(a,c)-1]), causal entropy);
    their difference equals ``gdi(dist, query).value`` up to roundoff.
    """
    if query.arrow is not Arrow.FORWARD:
        raise UnsupportedConfigurationError(
            "kramer decomposition is defined for the FORWARD arrow only"
        )
    query.validate_for(dist.horizon)
    x, y = query.source_role, query.target_role
    a = query.source.lo
    c, d = query.target.lo, query.target.hi
    k = max(a, c)
    ent = conditional_entropy(dist, span(y, k, d), span(x, 1, a - 1) + span(y, 1, k - 1))
    ce = causal_entropy(dist, y, query.target, x, query.source)
    return ent, ce
