"""Exact planar geometry for coalition analysis.

All predicates run on integers.  Float coordinates are mapped onto a lattice
of spacing ``2**-bits``; since every float is a dyadic rational, choosing
``bits`` large enough makes the mapping lossless, so side-of-line tests and
distance comparisons are exact no matter how degenerate the input.
"""

from __future__ import annotations

import functools
import itertools
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import GeneralPositionError, GridError

SNAP_BITS = 20
MAX_VOTERS = 15


# ---------------------------------------------------------------------------
# coalition masks


@dataclass(frozen=True, order=True)
class CoalitionMask:
    """A subset of voters ``{0, ..., n-1}`` stored as a bit mask."""

    n: int
    bits: int

    def __post_init__(self):
        if not 0 <= self.n <= MAX_VOTERS:
            raise ValueError(f"mask width must be in [0, {MAX_VOTERS}], got {self.n}")
        if not 0 <= self.bits < (1 << self.n):
            raise ValueError(f"bits {self.bits:#x} out of range for n={self.n}")

    @classmethod
    def from_indices(cls, n: int, indices: Iterable[int]) -> CoalitionMask:
        bits = 0
        for i in indices:
            if not 0 <= i < n:
                raise ValueError(f"voter index {i} out of range for n={n}")
            bits |= 1 << i
        return cls(n, bits)

    @classmethod
    def from_labels(cls, labels: Sequence[str], names: Iterable[str]) -> CoalitionMask:
        return cls.from_indices(len(labels), (match_label(labels, name) for name in names))

    @classmethod
    def full(cls, n: int) -> CoalitionMask:
        return cls(n, (1 << n) - 1)

    @classmethod
    def empty(cls, n: int) -> CoalitionMask:
        return cls(n, 0)

    def indices(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.n) if self.bits >> i & 1)

    def complement(self) -> CoalitionMask:
        return CoalitionMask(self.n, ((1 << self.n) - 1) ^ self.bits)

    def is_proper(self) -> bool:
        return 0 < self.bits < (1 << self.n) - 1

    def canonical(self) -> CoalitionMask:
        """Representative of ``{self, complement}``: the one without the last voter."""
        if self.n and self.bits >> (self.n - 1) & 1:
            return self.complement()
        return self

    def labels(self, labels: Sequence[str]) -> list[str]:
        return sorted(labels[i] for i in self.indices())

    def __contains__(self, i: int) -> bool:
        return 0 <= i < self.n and bool(self.bits >> i & 1)

    def __iter__(self) -> Iterator[int]:
        return iter(self.indices())

    def __len__(self) -> int:
        return bin(self.bits).count("1")

    def __repr__(self):
        return f"CoalitionMask(n={self.n}, {set(self.indices()) or '{}'})"


def all_masks(n: int, k: int | None = None) -> Iterator[CoalitionMask]:
    """Every mask on ``n`` voters, or every mask of size ``k``."""
    if k is None:
        for bits in range(1 << n):
            yield CoalitionMask(n, bits)
    else:
        for combo in itertools.combinations(range(n), k):
            yield CoalitionMask.from_indices(n, combo)


def match_label(labels: Sequence[str], name: str) -> int:
    """Index of ``name`` in ``labels``, case-insensitive.

    Falls back to a unique case-insensitive suffix match so that ``Black``
    finds the database spelling ``HLBlack`` (and ``Harlan`` finds ``JHarlan2``), then to surname-first spellings
    so that ``WhiteB`` finds ``BRWhite``.
    """
    key = name.strip().casefold()
    folded = [lab.casefold() for lab in labels]
    if key in folded:
        return folded.index(key)
    for rule in (
        lambda i: folded[i].rstrip("0123456789").endswith(key) or folded[i].endswith(key),
        lambda i: key in _surname_first(labels[i]),
    ):
        hits = [i for i in range(len(labels)) if key and rule(i)]
        if len(hits) == 1:
            return hits[0]
        if hits:
            raise KeyError(f"label {name!r} is ambiguous: {[labels[i] for i in hits]}")
    raise KeyError(f"unknown label {name!r}; known: {list(labels)}")


_INITIALS_SURNAME = re.compile(r"^([A-Z]+)([A-Z][a-z][A-Za-z'-]*)(\d*)$")


def _surname_first(label: str) -> set[str]:
    """``BRWhite`` -> {"whiteb", "whitebr"}; empty for labels not in that shape."""
    m = _INITIALS_SURNAME.match(label.strip())
    if not m:
        return set()
    initials, surname = m.group(1), m.group(2)
    return {(surname + initials[:j]).casefold() for j in range(1, len(initials) + 1)}


# ---------------------------------------------------------------------------
# exact lattice


def as_points(points) -> np.ndarray:
    """Coerce a config or array-like to a float ``(N, 2)`` array."""
    arr = np.asarray(getattr(points, "points", points), dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ValueError(f"expected planar points of shape (N, 2), got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("coordinates must be finite")
    return arr


def _dyadic_bits(value: float) -> int:
    den = float(value).as_integer_ratio()[1]
    return den.bit_length() - 1


@dataclass(frozen=True)
class Lattice:
    """Integer lattice ``2**-bits * Z^2`` fine enough to hold given floats exactly."""

    bits: int = SNAP_BITS

    @classmethod
    def fitting(cls, *arrays) -> Lattice:
        bits = SNAP_BITS
        for arr in arrays:
            for v in np.asarray(arr, dtype=float).ravel():
                if not math.isfinite(v):
                    raise ValueError("coordinates must be finite")
                bits = max(bits, _dyadic_bits(v))
        return cls(bits)

    def value(self, v: float) -> int:
        num, den = float(v).as_integer_ratio()
        shift = self.bits - (den.bit_length() - 1)
        if shift < 0:
            raise ValueError(f"{v!r} is not representable at 2**-{self.bits}")
        return num << shift

    def snap(self, points) -> list[tuple[int, int]]:
        return [(self.value(x), self.value(y)) for x, y in np.asarray(points, dtype=float)]

    def real(self, n) -> Fraction:
        return Fraction(n) / (1 << self.bits)


@functools.lru_cache(maxsize=256)
def _snapped_cached(raw: bytes, shape: tuple) -> tuple[Lattice, tuple]:
    pts = np.frombuffer(raw, dtype=float).reshape(shape)
    lat = Lattice.fitting(pts)
    return lat, tuple(lat.snap(pts))


def snapped(pts: np.ndarray) -> tuple[Lattice, tuple]:
    """``(lattice, integer points)`` for a float array, cached on its bytes."""
    pts = np.ascontiguousarray(pts, dtype=float)
    return _snapped_cached(pts.tobytes(), pts.shape)


def _orient(a, b, c) -> int:
    det = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    return (det > 0) - (det < 0)


def orientation(a, b, c) -> int:
    """Sign of ``(b - a) x (c - a)``: +1 counterclockwise, -1 clockwise, 0 collinear."""
    pts = np.array([a, b, c], dtype=float)
    return _orient(*Lattice.fitting(pts).snap(pts))


def general_position_violation(P: Sequence[tuple[int, int]]):
    """First coincident pair or collinear triple, or ``None``."""
    for i, j in itertools.combinations(range(len(P)), 2):
        if P[i] == P[j]:
            return (i, j)
    for i, j, k in itertools.combinations(range(len(P)), 3):
        if _orient(P[i], P[j], P[k]) == 0:
            return (i, j, k)
    return None


def in_general_position(points) -> bool:
    return general_position_violation(snapped(as_points(points))[1]) is None


def check_general_position(points, operation="general_position"):
    bad = general_position_violation(snapped(as_points(points))[1])
    if bad is not None:
        what = "coincident points" if len(bad) == 2 else "collinear points"
        raise GeneralPositionError(
            f"{what} {bad}; perturb the configuration first "
            "(perturb_to_general_position)",
            operation,
        )


# ---------------------------------------------------------------------------
# lines


@dataclass(frozen=True)
class Line2:
    """The line ``a*X + b*Y = c`` in lattice units ``X = x * 2**bits``.

    Coefficients are integers divided by their gcd, with ``a > 0`` or
    ``a == 0 and b > 0``.
    """

    a: int
    b: int
    c: int
    bits: int = SNAP_BITS

    @classmethod
    def normalized(cls, a: int, b: int, c: int, bits: int = SNAP_BITS) -> Line2:
        if a == 0 and b == 0:
            raise ValueError("degenerate line: a and b both zero")
        g = math.gcd(math.gcd(a, b), c)
        a, b, c = a // g, b // g, c // g
        if a < 0 or (a == 0 and b < 0):
            a, b, c = -a, -b, -c
        return cls(a, b, c, bits)

    @classmethod
    def from_real(cls, a: float, b: float, c: float) -> Line2:
        """Line ``a*x + b*y = c`` with float coefficients, held exactly."""
        fa, fb, fc = (Fraction(float(v)) for v in (a, b, c))
        lat = Lattice.fitting([c])
        fc = fc * (1 << lat.bits)
        den = math.lcm(fa.denominator, fb.denominator, fc.denominator)
        return cls.normalized(
            int(fa * den), int(fb * den), int(fc * den), lat.bits
        )

    def side(self, point) -> int:
        """Sign of ``a*x + b*y - c`` at a real point, evaluated exactly."""
        x, y = (Fraction(float(v)) for v in point)
        val = (self.a * x + self.b * y) * (1 << self.bits) - self.c
        return (val > 0) - (val < 0)

    def real_coefficients(self) -> tuple[float, float, float]:
        """``(a, b, c)`` of ``a*x + b*y = c`` in real units, unit normal."""
        norm = math.hypot(self.a, self.b)
        return (
            self.a / norm,
            self.b / norm,
            float(Fraction(self.c, 1 << self.bits) / Fraction(norm)),
        )

    def to_dict(self) -> dict:
        a, b, c = self.real_coefficients()
        return {"a": a, "b": b, "c": c}


# ---------------------------------------------------------------------------
# linear separability


def _primitive(dx: int, dy: int) -> tuple[int, int]:
    g = math.gcd(dx, dy)
    dx, dy = dx // g, dy // g
    if dx < 0 or (dx == 0 and dy < 0):
        dx, dy = -dx, -dy
    return dx, dy


def linearly_separable(points, mask: CoalitionMask) -> tuple[bool, Line2 | None]:
    """Whether a line strictly separates the mask voters from the rest.

    Two finite sets are strictly separable iff their convex hulls are
    disjoint, and then the segment joining the closest pair of hull points
    gives a separating direction.  That direction is either perpendicular to
    a hull edge (an edge between two points of the same class) or parallel to
    a vertex-vertex difference (two points of opposite classes), so trying
    those O(N^2) directions decides separability exactly.  No general
    position assumption is needed.

    The witness line has every mask voter strictly on one side; use
    ``Line2.side`` to see which.
    """
    pts = as_points(points)
    if len(pts) != mask.n:
        raise ValueError(f"mask width {mask.n} != number of points {len(pts)}")
    lat, P = snapped(pts)
    inside = mask.indices()
    outside = mask.complement().indices()

    if not inside or not outside:
        # all points strictly left of a vertical line
        return True, Line2.normalized(1, 0, max(x for x, _ in P) + 1, lat.bits)

    axes = set()
    for i, j in itertools.combinations(range(len(P)), 2):
        dx, dy = P[j][0] - P[i][0], P[j][1] - P[i][1]
        if dx == 0 and dy == 0:
            if (i in mask) != (j in mask):
                return False, None
            continue
        if (i in mask) == (j in mask):
            axes.add(_primitive(-dy, dx))
        else:
            axes.add(_primitive(dx, dy))

    for nx, ny in sorted(axes):
        proj_in = [nx * P[i][0] + ny * P[i][1] for i in inside]
        proj_out = [nx * P[j][0] + ny * P[j][1] for j in outside]
        lo_in, hi_in = min(proj_in), max(proj_in)
        lo_out, hi_out = min(proj_out), max(proj_out)
        if hi_in < lo_out:
            return True, Line2.normalized(2 * nx, 2 * ny, hi_in + lo_out, lat.bits)
        if hi_out < lo_in:
            return True, Line2.normalized(2 * nx, 2 * ny, hi_out + lo_in, lat.bits)
    return False, None


# ---------------------------------------------------------------------------
# nearest-k regions as half-plane intersections
#
# A half-plane (a, b, c) is {X : a*X + b*Y < c}.  Polygon vertices are kept in
# homogeneous integer coordinates (X, Y, W), W > 0, each the meet of two input
# lines, so coordinates never grow beyond a fixed multiple of the input size.


def bisector_halfplanes(P, inside, outside) -> list[tuple[int, int, int]]:
    """Half-planes where every ``inside`` voter is strictly nearer than every ``outside`` one."""
    planes = set()
    for i in inside:
        xi, yi = P[i]
        for j in outside:
            xj, yj = P[j]
            a, b = 2 * (xj - xi), 2 * (yj - yi)
            c = xj * xj + yj * yj - xi * xi - yi * yi
            g = math.gcd(math.gcd(a, b), c) or 1
            planes.add((a // g, b // g, c // g))
    return sorted(planes)


def _meet(l1, l2):
    a1, b1, c1 = l1
    a2, b2, c2 = l2
    X = c1 * b2 - c2 * b1
    Y = a1 * c2 - a2 * c1
    W = a1 * b2 - a2 * b1
    if W < 0:
        return -X, -Y, -W
    return X, Y, W


def _box_polygon(xmin, ymin, xmax, ymax):
    """CCW box; each entry is (X, Y, W, line of the edge leaving this vertex)."""
    right, top = (1, 0, xmax), (0, 1, ymax)
    left, bottom = (-1, 0, -xmin), (0, -1, -ymin)
    return [
        (xmax, ymin, 1, right),
        (xmax, ymax, 1, top),
        (xmin, ymax, 1, left),
        (xmin, ymin, 1, bottom),
    ]


def _clip(poly, plane):
    a, b, c = plane
    sides = [a * X + b * Y - c * W for X, Y, W, _ in poly]
    if all(s <= 0 for s in sides):
        return poly
    if all(s >= 0 for s in sides):
        return []
    out = []
    n = len(poly)
    for i in range(n):
        X, Y, W, edge = poly[i]
        s, s_next = sides[i], sides[(i + 1) % n]
        if s <= 0:
            if s_next <= 0:
                out.append(poly[i])
            elif s < 0:
                out.append(poly[i])
                out.append(_meet(edge, plane) + (plane,))
            else:
                out.append((X, Y, W, plane))
        elif s_next < 0:
            out.append(_meet(edge, plane) + (edge,))
    return out if len(out) >= 3 else []


def _interior_point(poly, planes):
    """Vertex centroid if it lies strictly inside every plane, else ``None``.

    The centroid is a strictly positive combination of the vertices, so it is
    interior exactly when the polygon has positive area.
    """
    if not poly:
        return None
    den = math.lcm(*(W for _, _, W, _ in poly))
    sx = sum(X * (den // W) for X, _, W, _ in poly)
    sy = sum(Y * (den // W) for _, Y, W, _ in poly)
    den *= len(poly)
    for a, b, c in planes:
        if not a * sx + b * sy < c * den:
            return None
    return Fraction(sx, den), Fraction(sy, den)


def _bounding_extent(planes, P) -> int:
    """Half-width of a box holding every pairwise meet of ``planes`` and every voter."""
    big_ab = max((max(abs(a), abs(b)) for a, b, _ in planes), default=1)
    big_c = max((abs(c) for _, _, c in planes), default=1)
    big_p = max((max(abs(x), abs(y)) for x, y in P), default=0)
    return 2 * big_ab * big_c + big_p + 1


@dataclass(frozen=True)
class _Region:
    lattice: Lattice
    planes: list
    polygon: list  # clipped homogeneous vertices
    interior: tuple | None  # exact lattice-unit interior point


def _nearest_k_region(pts: np.ndarray, mask: CoalitionMask, box=None) -> _Region:
    if box is None:
        lat, P = snapped(pts)
    else:
        lat = Lattice.fitting(pts, box)
        P = lat.snap(pts)
    planes = bisector_halfplanes(P, mask.indices(), mask.complement().indices())
    for a, b, c in planes:
        if a == 0 and b == 0 and c <= 0:
            return _Region(lat, planes, [], None)
    if box is None:
        m = _bounding_extent(planes, P)
        poly = _box_polygon(-m, -m, m, m)
    else:
        xmin, ymin, xmax, ymax = (lat.value(v) for v in box)
        poly = _box_polygon(xmin, ymin, xmax, ymax)
    for plane in planes:
        if plane[0] == 0 and plane[1] == 0:
            continue
        poly = _clip(poly, plane)
        if not poly:
            break
    return _Region(lat, planes, poly, _interior_point(poly, planes))


def nearest_k_region_feasible(points, mask: CoalitionMask):
    """Whether some center has exactly the mask voters as its ``|mask|`` nearest.

    That region is the open intersection of the ``|I| * (N - |I|)``
    perpendicular-bisector half-planes.  Returns ``(feasible, witness)``;
    the witness is a point (as a pair of ``Fraction``) that satisfies every
    strict inequality exactly.
    """
    pts = as_points(points)
    if len(pts) != mask.n:
        raise ValueError(f"mask width {mask.n} != number of points {len(pts)}")
    if not mask.is_proper():
        raise ValueError("nearest-k region needs a proper nonempty mask")
    region = _nearest_k_region(pts, mask)
    if region.interior is None:
        return False, None
    lat = region.lattice
    return True, (lat.real(region.interior[0]), lat.real(region.interior[1]))


def nearest_set_is(points, center, mask: CoalitionMask) -> bool:
    """Exact check: every mask voter strictly nearer ``center`` than every other voter."""
    pts = as_points(points)
    cx, cy = (Fraction(v) if isinstance(v, Fraction) else Fraction(float(v)) for v in center)
    d2 = [
        (Fraction(float(x)) - cx) ** 2 + (Fraction(float(y)) - cy) ** 2 for x, y in pts
    ]
    inside = [d2[i] for i in mask.indices()]
    outside = [d2[j] for j in mask.complement().indices()]
    if not inside or not outside:
        return True
    return max(inside) < min(outside)


# ---------------------------------------------------------------------------
# k-sets by pair lines


def pair_line_splits(points) -> list[tuple[int, int, CoalitionMask, CoalitionMask]]:
    """For each voter pair ``(a, b)``: the voters strictly left and right of line ``ab``."""
    pts = as_points(points)
    check_general_position(pts, "pairline_ksets")
    _, P = snapped(pts)
    n = len(P)
    splits = []
    for a, b in itertools.combinations(range(n), 2):
        left = right = 0
        for i in range(n):
            if i == a or i == b:
                continue
            s = _orient(P[a], P[b], P[i])
            if s > 0:
                left |= 1 << i
            else:
                right |= 1 << i
        splits.append((a, b, CoalitionMask(n, left), CoalitionMask(n, right)))
    return splits


def pairline_ksets(points, k: int) -> set[CoalitionMask]:
    """All size-``k`` subsets separable from the rest by a line.

    Any separating line can be slid and rotated until it passes through two
    voters ``a`` and ``b`` without crossing any other voter, so each k-set is
    one open side of some pair line plus a subset of ``{a, b}``; and every
    such union is separable by nudging the pair line.
    """
    pts = as_points(points)
    n = len(pts)
    if not 1 <= k <= n - 1:
        raise ValueError(f"k must be in [1, {n - 1}], got {k}")
    found = set()
    for a, b, left, right in pair_line_splits(pts):
        for side in (left, right):
            size = len(side)
            for extra in (0, 1 << a, 1 << b, (1 << a) | (1 << b)):
                if size + bin(extra).count("1") == k:
                    found.add(CoalitionMask(n, side.bits | extra))
    return found


# ---------------------------------------------------------------------------
# grids


@dataclass(frozen=True)
class Grid:
    """A ``resolution x resolution`` lattice of sample points over a box.

    Coordinates are ``xmin + (xmax - xmin) * (i / (resolution - 1))``; two
    grids over the same box whose resolutions satisfy
    ``(r_fine - 1) % (r_coarse - 1) == 0`` are exactly nested.
    """

    xmin: float
    ymin: float
    xmax: float
    ymax: float
    resolution: int = 201
    level: int = 0

    def __post_init__(self):
        if self.resolution < 2:
            raise GridError(f"resolution must be >= 2, got {self.resolution}")
        if not (self.xmin < self.xmax and self.ymin < self.ymax):
            raise GridError(f"empty grid box {self.box}")

    @classmethod
    def around(cls, points, resolution: int = 201, inflate: float = 1.0) -> Grid:
        """Tight bounding box inflated on every side by ``inflate`` half-diagonals."""
        pts = as_points(points)
        lo, hi = pts.min(axis=0), pts.max(axis=0)
        half_diag = 0.5 * float(np.hypot(*(hi - lo)))
        margin = inflate * (half_diag if half_diag > 0 else 1.0)
        return cls(
            float(lo[0] - margin),
            float(lo[1] - margin),
            float(hi[0] + margin),
            float(hi[1] + margin),
            resolution,
        )

    @property
    def box(self) -> tuple[float, float, float, float]:
        return (self.xmin, self.ymin, self.xmax, self.ymax)

    def refine(self) -> Grid:
        return Grid(*self.box, 2 * (self.resolution - 1) + 1, self.level + 1)

    def with_resolution(self, resolution: int) -> Grid:
        return Grid(*self.box, resolution, self.level)

    def axes(self) -> tuple[np.ndarray, np.ndarray]:
        t = np.arange(self.resolution) / (self.resolution - 1)
        return (
            self.xmin + (self.xmax - self.xmin) * t,
            self.ymin + (self.ymax - self.ymin) * t,
        )

    def points(self) -> np.ndarray:
        """All grid points, x varying fastest."""
        xs, ys = self.axes()
        gx, gy = np.meshgrid(xs, ys)
        return np.column_stack([gx.ravel(), gy.ravel()])

    def contains(self, points) -> bool:
        pts = as_points(points)
        return bool(
            np.all(pts[:, 0] > self.xmin)
            and np.all(pts[:, 0] < self.xmax)
            and np.all(pts[:, 1] > self.ymin)
            and np.all(pts[:, 1] < self.ymax)
        )

    def to_dict(self) -> dict:
        return {
            "box": list(self.box),
            "resolution": self.resolution,
            "level": self.level,
        }


@dataclass(frozen=True)
class GridScan:
    """Voter distance orders at every grid point.

    ``order[g]`` lists voters by ascending exact distance from grid point
    ``g`` (ties by index); ``strict[g, k-1]`` says whether the k-th and
    (k+1)-th nearest are strictly different distances, i.e. whether the
    nearest-k set at ``g`` is unambiguous.
    """

    grid: Grid
    voters: np.ndarray
    points: np.ndarray
    order: np.ndarray
    strict: np.ndarray


def grid_scan(points, grid: Grid) -> GridScan:
    pts = as_points(points)
    if not grid.contains(pts):
        raise GridError(f"grid box {grid.box} does not contain all voter ideal points")
    G = grid.points()
    d2 = ((G[:, None, :] - pts[None, :, :]) ** 2).sum(axis=2)
    order = np.argsort(d2, axis=1, kind="stable")
    sorted_d2 = np.take_along_axis(d2, order, axis=1)
    gaps = np.diff(sorted_d2, axis=1)
    extent = max(float(np.abs(G).max()), float(np.abs(pts).max()), 1.0)
    # float gaps above tol are certainly positive; anything below is redone exactly
    tol = 1e-9 * extent * extent
    strict = gaps > tol
    suspect = np.flatnonzero(~strict.all(axis=1))
    if len(suspect):
        lat = Lattice.fitting(pts, G[suspect])
        V = lat.snap(pts)
        for g in suspect:
            gx, gy = lat.snap(G[g : g + 1])[0]
            exact = [(gx - x) ** 2 + (gy - y) ** 2 for x, y in V]
            idx = sorted(range(len(V)), key=lambda i: (exact[i], i))
            order[g] = idx
            strict[g] = [exact[idx[r]] < exact[idx[r + 1]] for r in range(len(V) - 1)]
    return GridScan(grid, pts, G, order, strict)


def _prefix_bits(order: np.ndarray, k: int) -> np.ndarray:
    return np.bitwise_or.reduce(
        np.left_shift(np.int64(1), order[:, :k].astype(np.int64)), axis=1
    )


def grid_coalition_labels(
    scan: GridScan, k: int, strict: bool = False
) -> dict[CoalitionMask, np.ndarray]:
    """Group grid points by their nearest-``k`` voter set.

    With ``strict=False`` every grid point is assigned (ties by voter index),
    so the lists partition the grid.  With ``strict=True`` grid points where
    the k-th and (k+1)-th distances tie are dropped, leaving only points that
    lie in the open order-k region of their label.
    """
    n = scan.order.shape[1]
    if not 1 <= k <= n - 1:
        raise ValueError(f"k must be in [1, {n - 1}], got {k}")
    bits = _prefix_bits(scan.order, k)
    pts = scan.points
    if strict:
        keep = scan.strict[:, k - 1]
        bits, pts = bits[keep], pts[keep]
    values, inverse = np.unique(bits, return_inverse=True)
    return {
        CoalitionMask(n, int(v)): pts[inverse == i] for i, v in enumerate(values)
    }
