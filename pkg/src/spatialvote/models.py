"""The three preference models: who votes for which outcome.

Distances are compared exactly on the lattice, so a voter that sits exactly
on a decision boundary is reported as degenerate instead of being assigned
by floating-point noise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import (
    AmbiguityError,
    DegenerateOutcomeError,
    IndifferenceError,
    WitnessError,
)
from .geometry import CoalitionMask, Lattice, Line2, as_points


@dataclass(frozen=True)
class OutcomeSpec:
    """Outcome locations ``p``, ``q`` with their strengths (outcome-sphere radii)."""

    p: tuple[float, float]
    q: tuple[float, float]
    s_p: float = 0.0
    s_q: float = 0.0

    def __post_init__(self):
        for s in (self.s_p, self.s_q):
            if not (math.isfinite(s) and s >= 0):
                raise ValueError(f"strengths must be finite and nonnegative, got {s}")

    def to_dict(self) -> dict:
        return {"p": list(self.p), "q": list(self.q), "s_p": self.s_p, "s_q": self.s_q}

    @classmethod
    def from_dict(cls, data: dict) -> OutcomeSpec:
        return cls(tuple(data["p"]), tuple(data["q"]), data["s_p"], data["s_q"])


@dataclass(frozen=True)
class VoteOutcome:
    p_voters: CoalitionMask
    q_voters: CoalitionMask

    def to_dict(self, labels: Sequence[str]) -> dict:
        return {
            "p_voters": self.p_voters.labels(labels),
            "q_voters": self.q_voters.labels(labels),
        }


def _labels(config) -> Sequence[str]:
    return getattr(config, "labels", None) or [f"v{i + 1}" for i in range(len(as_points(config)))]


def _exact(config, *extra):
    """Snap voters and extra points/values onto one lattice."""
    pts = as_points(config)
    lat = Lattice.fitting(pts, *extra)
    return lat, lat.snap(pts)


def _d2(P, c):
    return [(x - c[0]) ** 2 + (y - c[1]) ** 2 for x, y in P]


def edp_vote(config, p, q) -> VoteOutcome:
    """Each voter picks the nearer outcome."""
    lat, P = _exact(config, p, q)
    sp, sq = lat.snap([p, q])
    if sp == sq:
        raise DegenerateOutcomeError("outcomes p and q coincide", "edp_vote")
    dp, dq = _d2(P, sp), _d2(P, sq)
    labels = _labels(config)
    for i, (a, b) in enumerate(zip(dp, dq)):
        if a == b:
            raise DegenerateOutcomeError(
                f"voter {labels[i]!r} is equidistant from p and q", "edp_vote"
            )
    mask = CoalitionMask.from_indices(len(P), (i for i in range(len(P)) if dp[i] < dq[i]))
    return VoteOutcome(mask, mask.complement())


def soi_vote(config, spec: OutcomeSpec) -> VoteOutcome:
    """Each voter picks the outcome whose closed disc contains it.

    Every voter must lie in exactly one of the two discs.
    """
    lat, P = _exact(config, spec.p, spec.q, [spec.s_p, spec.s_q])
    sp, sq = lat.snap([spec.p, spec.q])
    rp, rq = lat.value(spec.s_p) ** 2, lat.value(spec.s_q) ** 2
    labels = _labels(config)
    in_p = []
    for i, (a, b) in enumerate(zip(_d2(P, sp), _d2(P, sq))):
        hit_p, hit_q = a <= rp, b <= rq
        if hit_p and hit_q:
            raise AmbiguityError(f"voter {labels[i]!r} lies in both outcome spheres")
        if not (hit_p or hit_q):
            raise IndifferenceError(f"voter {labels[i]!r} lies in neither outcome sphere")
        if hit_p:
            in_p.append(i)
    mask = CoalitionMask.from_indices(len(P), in_p)
    return VoteOutcome(mask, mask.complement())


def tioli_vote(config, p, s_p: float) -> VoteOutcome:
    """Voters strictly inside the disc around ``p`` take it; everyone else leaves it."""
    if not (math.isfinite(s_p) and s_p >= 0):
        raise ValueError(f"strength must be finite and nonnegative, got {s_p}")
    lat, P = _exact(config, p, [s_p])
    sp = lat.snap([p])[0]
    r2 = lat.value(s_p) ** 2
    labels = _labels(config)
    inside = []
    for i, d in enumerate(_d2(P, sp)):
        if d == r2 and s_p > 0:
            raise DegenerateOutcomeError(
                f"voter {labels[i]!r} lies on the outcome sphere boundary", "tioli_vote"
            )
        if d < r2:
            inside.append(i)
    mask = CoalitionMask.from_indices(len(P), inside)
    return VoteOutcome(mask, mask.complement())


def nearest_outcome_partition(config, outcomes) -> dict[int, CoalitionMask]:
    """Assign each voter to its nearest outcome (Voronoi assignment)."""
    outs = as_points(outcomes)
    if len(outs) < 2:
        raise ValueError("need at least two outcomes")
    lat, P = _exact(config, outs)
    O = lat.snap(outs)
    if len(set(O)) != len(O):
        raise DegenerateOutcomeError("outcome locations must be distinct", "nearest_outcome_partition")
    labels = _labels(config)
    members: dict[int, list[int]] = {k: [] for k in range(len(O))}
    for i, (x, y) in enumerate(P):
        d = [(x - ox) ** 2 + (y - oy) ** 2 for ox, oy in O]
        ranked = sorted(range(len(O)), key=d.__getitem__)
        if d[ranked[0]] == d[ranked[1]]:
            raise DegenerateOutcomeError(
                f"voter {labels[i]!r} is equidistant from outcomes {ranked[0]} and {ranked[1]}",
                "nearest_outcome_partition",
            )
        members[ranked[0]].append(i)
    return {k: CoalitionMask.from_indices(len(P), v) for k, v in members.items()}


def soi_witness_from_line(
    config, mask: CoalitionMask, line: Line2, max_doublings: int = 64
) -> OutcomeSpec:
    """Two equal discs tangent to ``line`` from either side that reproduce ``mask``.

    The discs touch the line at the midpoint of the voters' projection onto
    it.  As the radius grows the discs flatten onto the line near the voters,
    so doubling from half the configuration diameter terminates; each
    candidate is checked with ``soi_vote``.
    """
    pts = as_points(config)
    sides = [line.side(v) for v in pts]
    want = {line.side(pts[i]) for i in mask.indices()}
    other = {line.side(pts[j]) for j in mask.complement().indices()}
    if 0 in sides or len(want) > 1 or len(other) > 1 or (want & other):
        raise WitnessError("line does not strictly separate the coalition from its complement")
    sigma = next(iter(want or {-s for s in other} or {1}))

    a, b, c = line.real_coefficients()
    normal = np.array([a, b])
    tangent = np.array([-b, a])
    along = pts @ tangent
    foot = c * normal + 0.5 * (along.min() + along.max()) * tangent

    diam = float(np.max(np.linalg.norm(pts[:, None] - pts[None], axis=2))) if len(pts) > 1 else 0.0
    r = 0.5 * diam if diam > 0 else 1.0
    for _ in range(max_doublings):
        p = foot + sigma * r * normal
        q = foot - sigma * r * normal
        spec = OutcomeSpec(tuple(map(float, p)), tuple(map(float, q)), r, r)
        try:
            if soi_vote(config, spec).p_voters == mask:
                return spec
        except (AmbiguityError, IndifferenceError):
            pass
        r *= 2.0
    raise WitnessError(f"no reproducing radius within {max_doublings} doublings")
