"""Which coalitions each model allows, with witnesses."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .geometry import (
    CoalitionMask,
    Line2,
    all_masks,
    as_points,
    linearly_separable,
    nearest_k_region_feasible,
    pairline_ksets,
)


class ModelKind(enum.Enum):
    EDP = "edp"
    SOI = "soi"
    TIOLI = "tioli"


def edp_allowed(points, mask: CoalitionMask) -> tuple[bool, Line2 | None]:
    """Allowed under nearest-outcome voting iff a line separates the coalition."""
    return linearly_separable(points, mask)


def soi_allowed(points, mask: CoalitionMask):
    """Allowed under the sphere-of-influence model.

    Needs a disc holding exactly the coalition and another holding exactly
    its complement, i.e. both nearest-k regions nonempty.  Returns the two
    disc centers as witnesses.  This never consults separability, so
    agreement with ``edp_allowed`` is a checkable fact, not an assumption.
    """
    if not mask.is_proper():
        return True, None
    ok_in, w_in = nearest_k_region_feasible(points, mask)
    if not ok_in:
        return False, None
    ok_out, w_out = nearest_k_region_feasible(points, mask.complement())
    if not ok_out:
        return False, None
    return True, (w_in, w_out)


def tioli_allowed(points, mask: CoalitionMask):
    """Allowed under take-it-or-leave-it: one disc holds exactly the coalition or its complement.

    The witness is ``(center, side)`` with side ``"mask"`` or ``"complement"``
    naming the voters inside the disc.
    """
    if not mask.is_proper():
        return True, None
    ok, w = nearest_k_region_feasible(points, mask)
    if ok:
        return True, (w, "mask")
    ok, w = nearest_k_region_feasible(points, mask.complement())
    if ok:
        return True, (w, "complement")
    return False, None


def enumerate_allowed(points, model: ModelKind | str, k: int) -> set[CoalitionMask]:
    """All allowed coalitions of size ``k``.

    EDP and SOI use the pair-line sweep (the two models allow the same
    coalitions); TIOLI checks every size-``k`` mask exactly.
    """
    model = ModelKind(model)
    pts = as_points(points)
    n = len(pts)
    if not 1 <= k <= n - 1:
        raise ValueError(f"k must be in [1, {n - 1}], got {k}")
    if model in (ModelKind.EDP, ModelKind.SOI):
        return pairline_ksets(pts, k)
    return {m for m in all_masks(n, k) if tioli_allowed(pts, m)[0]}


@dataclass(frozen=True)
class Verdict:
    allowed: bool
    witness: object = None


@dataclass(frozen=True)
class ClassificationReport:
    mask: CoalitionMask
    edp: Verdict
    soi: Verdict
    tioli: Verdict

    def consistent(self) -> bool:
        return self.soi.allowed == self.edp.allowed and (
            self.tioli.allowed or not self.edp.allowed
        )

    def to_dict(self, labels: Sequence[str]) -> dict:
        def pt(w):
            return [float(w[0]), float(w[1])]

        edp = {"allowed": self.edp.allowed}
        if isinstance(self.edp.witness, Line2):
            edp["line"] = self.edp.witness.to_dict()
        soi = {"allowed": self.soi.allowed}
        if self.soi.witness:
            soi["mask_center"] = pt(self.soi.witness[0])
            soi["complement_center"] = pt(self.soi.witness[1])
        tioli = {"allowed": self.tioli.allowed}
        if self.tioli.witness:
            tioli["center"] = pt(self.tioli.witness[0])
            tioli["side"] = self.tioli.witness[1]
        return {
            "coalition": self.mask.labels(labels),
            "complement": self.mask.complement().labels(labels),
            "edp": edp,
            "soi": soi,
            "tioli": tioli,
        }


def classify_case(points, mask: CoalitionMask) -> ClassificationReport:
    return ClassificationReport(
        mask,
        Verdict(*edp_allowed(points, mask)),
        Verdict(*soi_allowed(points, mask)),
        Verdict(*tioli_allowed(points, mask)),
    )


# ---------------------------------------------------------------------------
# one dimension


def _ranks(xs) -> list[int]:
    """Rank of each voter in ascending coordinate order."""
    vals = [Fraction(float(x)) for x in np.asarray(xs, dtype=float).ravel()]
    if len(set(vals)) != len(vals):
        raise ValueError("one-dimensional ideal points must be distinct")
    order = sorted(range(len(vals)), key=vals.__getitem__)
    ranks = [0] * len(vals)
    for r, i in enumerate(order):
        ranks[i] = r
    return ranks


def _contiguous(ranks: Sequence[int], mask: CoalitionMask) -> bool:
    pos = sorted(ranks[i] for i in mask.indices())
    return not pos or pos[-1] - pos[0] + 1 == len(pos)


def edp_allowed_1d(xs, mask: CoalitionMask) -> bool:
    """A threshold separates the coalition: it is a prefix or suffix of the order."""
    ranks = _ranks(xs)
    pos = {ranks[i] for i in mask.indices()}
    k = len(pos)
    return pos == set(range(k)) or pos == set(range(len(ranks) - k, len(ranks)))


def tioli_allowed_1d(xs, mask: CoalitionMask) -> bool:
    """An interval holds exactly the coalition or exactly its complement."""
    ranks = _ranks(xs)
    return _contiguous(ranks, mask) or _contiguous(ranks, mask.complement())
