"""Ideal points from dissimilarities by classical (Torgerson) scaling."""

from __future__ import annotations

import csv
import io
import itertools
import json
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import AnchorError, InputError, PerturbationError
from .geometry import Lattice, general_position_violation, match_label

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class IdealPointConfig:
    """``N`` labeled ideal points in ``R^dim``."""

    dim: int
    points: np.ndarray
    labels: tuple[str, ...] = field(default=())

    def __post_init__(self):
        pts = np.array(self.points, dtype=float)
        if pts.ndim == 1:
            pts = pts[:, None]
        object.__setattr__(self, "points", pts)
        labels = tuple(self.labels) or tuple(f"v{i + 1}" for i in range(len(pts)))
        object.__setattr__(self, "labels", labels)
        if pts.shape[1] != self.dim:
            raise ValueError(f"points have {pts.shape[1]} columns, dim is {self.dim}")
        if len(labels) != len(pts):
            raise ValueError(f"{len(labels)} labels for {len(pts)} points")
        if not np.all(np.isfinite(pts)):
            raise ValueError("ideal points must be finite")

    def __len__(self):
        return len(self.points)

    def index(self, label: str) -> int:
        return match_label(self.labels, label)

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "dim": self.dim,
            "labels": list(self.labels),
            "points": self.points.tolist(),
        }

    @classmethod
    def from_dict(cls, data: dict) -> IdealPointConfig:
        return cls(int(data["dim"]), np.array(data["points"], dtype=float), data["labels"])

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["label", "x", "y"][: self.dim + 1])
        for label, row in zip(self.labels, self.points):
            writer.writerow([label, *(repr(float(v)) for v in row)])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> IdealPointConfig:
        rows = list(csv.reader(io.StringIO(text)))
        header, body = rows[0], [r for r in rows[1:] if r]
        dim = len(header) - 1
        return cls(dim, [[float(v) for v in r[1:]] for r in body], [r[0] for r in body])


def load_config(path) -> IdealPointConfig:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    if text.lstrip().startswith("{"):
        return IdealPointConfig.from_dict(json.loads(text))
    return IdealPointConfig.from_csv(text)


def _as_matrix(D):
    mat = np.array(getattr(D, "matrix", D), dtype=float)
    labels = tuple(getattr(D, "labels", ()) or ())
    return mat, labels


# ---------------------------------------------------------------------------
# eigen-decomposition


def jacobi_eigh(A, tol: float = 1e-12, max_sweeps: int = 100):
    """Eigenpairs of a symmetric matrix by cyclic Jacobi rotations.

    Returns ``(values, vectors)`` with eigenvalues descending and each
    eigenvector's largest-magnitude component positive.  Sweeps stop once
    every off-diagonal entry is at most ``tol`` times the matrix scale.
    """
    a = np.array(A, dtype=float)
    n = len(a)
    v = np.eye(n)
    scale = float(np.abs(a).max()) if n else 0.0
    scale = scale if scale > 0 else 1.0
    for _ in range(max_sweeps):
        off = np.abs(a - np.diag(np.diag(a))).max() if n > 1 else 0.0
        if off <= tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = np.sign(theta) / (abs(theta) + np.sqrt(theta * theta + 1.0))
                if theta == 0.0:
                    t = 1.0
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                rot = np.eye(n)
                rot[p, p] = rot[q, q] = c
                rot[p, q], rot[q, p] = s, -s
                a = rot.T @ a @ rot
                a[p, q] = a[q, p] = 0.0
                v = v @ rot
    else:
        raise InputError("Jacobi iteration did not converge", "classical_mds")
    values = np.diag(a).copy()
    idx = np.argsort(-values, kind="stable")
    values, v = values[idx], v[:, idx]
    for j in range(n):
        big = int(np.argmax(np.abs(v[:, j])))
        if v[big, j] < 0:
            v[:, j] = -v[:, j]
    return values, v


# ---------------------------------------------------------------------------
# scaling


def classical_mds(D, d: int, labels: Sequence[str] | None = None) -> IdealPointConfig:
    """Embed a dissimilarity matrix in ``R^d``.

    Double-centers the squared dissimilarities, ``B = -1/2 J (D*D) J``, and
    uses the top ``d`` eigenpairs of ``B`` scaled by the root eigenvalue.
    Axes whose eigenvalue is not positive (including axes beyond ``n - 1``)
    are filled with zeros.
    """
    mat, own_labels = _as_matrix(D)
    n = len(mat)
    if mat.shape != (n, n):
        raise InputError(f"dissimilarity matrix must be square, got {mat.shape}")
    if not np.all(np.isfinite(mat)):
        raise InputError("dissimilarity matrix has non-finite entries")
    if not np.allclose(mat, mat.T, rtol=0, atol=1e-12):
        raise InputError("dissimilarity matrix is not symmetric")
    if np.any(mat < 0):
        raise InputError("dissimilarity matrix has negative entries")
    if d < 1:
        raise InputError(f"dimension must be positive, got {d}")

    J = np.eye(n) - np.full((n, n), 1.0 / n)
    B = -0.5 * J @ (mat * mat) @ J
    B = 0.5 * (B + B.T)
    values, vectors = jacobi_eigh(B)
    coords = np.zeros((n, d))
    for axis in range(min(d, n)):
        if values[axis] > 0:
            coords[:, axis] = vectors[:, axis] * np.sqrt(values[axis])
    return IdealPointConfig(d, coords, tuple(labels or own_labels))


@dataclass(frozen=True)
class OrientationSpec:
    """Per-axis anchors ``(left, right)``: left's coordinate must not exceed right's."""

    anchors: tuple = ()


def orient(config: IdealPointConfig, spec: OrientationSpec) -> IdealPointConfig:
    """Reflect axes so every anchor pair reads left-to-right."""
    pts = config.points.copy()
    for axis, anchor in enumerate(spec.anchors):
        if anchor is None:
            continue
        if axis >= config.dim:
            raise AnchorError(f"anchor given for axis {axis} of a {config.dim}-D config")
        try:
            left, right = (config.index(name) for name in anchor)
        except KeyError as exc:
            raise AnchorError(str(exc)) from None
        if pts[left, axis] > pts[right, axis]:
            pts[:, axis] = -pts[:, axis]
    return IdealPointConfig(config.dim, pts, config.labels)


def stress(D, config: IdealPointConfig) -> float:
    """Normalized raw stress; 0 iff embedded distances equal the dissimilarities."""
    mat, _ = _as_matrix(D)
    pts = config.points
    if len(mat) != len(pts):
        raise ValueError(f"matrix is {len(mat)}x{len(mat)} but config has {len(pts)} points")
    iu = np.triu_indices(len(pts), k=1)
    dist = np.linalg.norm(pts[:, None, :] - pts[None, :, :], axis=2)[iu]
    target = mat[iu]
    den = float((target**2).sum())
    if den == 0.0:
        return 0.0 if np.allclose(dist, 0.0) else float("inf")
    return float(np.sqrt(((target - dist) ** 2).sum() / den))


def _offenders(snapped) -> set[int]:
    bad = set()
    n = len(snapped)
    for i, j in itertools.combinations(range(n), 2):
        if snapped[i] == snapped[j]:
            bad.update((i, j))
    for i, j, k in itertools.combinations(range(n), 3):
        a, b, c = snapped[i], snapped[j], snapped[k]
        if (b[0] - a[0]) * (c[1] - a[1]) == (b[1] - a[1]) * (c[0] - a[0]):
            bad.update((i, j, k))
    return bad


def perturb_to_general_position(
    config: IdealPointConfig, eps: float, seed: int = 0, max_rounds: int = 64
) -> IdealPointConfig:
    """Nudge points off collinear triples and coincident pairs.

    Only points involved in some degeneracy move, each by a seeded random
    offset of length at most ``eps`` from its original position.
    Configurations already in general position come back unchanged.
    """
    if config.dim != 2:
        raise PerturbationError(f"general position repair needs dim 2, got {config.dim}")
    if not eps > 0:
        raise PerturbationError(f"eps must be positive, got {eps}")
    orig = config.points
    if general_position_violation(Lattice.fitting(orig).snap(orig)) is None:
        return config

    rng = np.random.default_rng(seed)
    pts = orig.copy()
    for _ in range(max_rounds):
        snapped = Lattice.fitting(pts).snap(pts)
        movers = sorted(_offenders(snapped))
        if not movers:
            return IdealPointConfig(2, pts, config.labels)
        theta = rng.uniform(0.0, 2.0 * np.pi, len(movers))
        radius = eps * rng.uniform(0.25, 0.5, len(movers))
        pts[movers] = orig[movers] + np.column_stack(
            [radius * np.cos(theta), radius * np.sin(theta)]
        )
    raise PerturbationError(
        f"no general position within eps={eps} after {max_rounds} rounds"
    )
