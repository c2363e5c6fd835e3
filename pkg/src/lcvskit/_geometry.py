import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Optional, Tuple, Iterable

import numpy as np

from lcvskit._core import InvalidFoV, GridTooLarge

__all__ = [
    'TOLERANCE', 'MIN_UNION_AREA', 'DEFAULT_SEGMENT_ANGLE', 'ORACLE_SEGMENT_ANGLE', 'GRID_CELL_BUDGET',
    'normalize_bearing', 'angular_difference', 'bearing_of',
    'FoV', 'ApproxKind', 'ApproxMethod', 'ConvexPolygon',
    'sector_contains', 'view_polygon', 'polygon_area', 'convex_intersection', 'convex_intersection_area',
    'cvw', 'cvw_grid_oracle',
]

TOLERANCE: float = 1e-9
MIN_UNION_AREA: float = 1e-12
DEFAULT_SEGMENT_ANGLE: float = 5.0
ORACLE_SEGMENT_ANGLE: float = 0.5
GRID_CELL_BUDGET: int = 10 ** 7

Point = Tuple[float, float]


def normalize_bearing(angle: float) -> float:
    value = angle % 360.0
    # -1e-17 % 360 == 360.0
    return 0.0 if value >= 360.0 else value


def angular_difference(a: float, b: float) -> float:
    return abs((a - b + 180.0) % 360.0 - 180.0)


def bearing_of(dx: float, dy: float) -> float:
    """Compass bearing (degrees clockwise from north) of the vector (dx, dy)."""
    return normalize_bearing(math.degrees(math.atan2(dx, dy)))


def _direction(bearing: float) -> Point:
    rad = math.radians(bearing)
    return math.sin(rad), math.cos(rad)


@dataclass(frozen=True)
class FoV:
    """
    Spatial footprint of one video frame: a circular sector with apex (x, y), viewable radius r, view
    direction theta (degrees clockwise from north) and full lens angle delta, covering the bearings
    [theta - delta/2, theta + delta/2] up to range r.
    """
    x: float
    y: float
    r: float
    theta: float
    delta: float
    t: int = 0

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise InvalidFoV(f'Position must be finite: ({self.x}, {self.y})')
        if not (math.isfinite(self.r) and self.r > 0):
            raise InvalidFoV(f'Viewable radius must be positive: {self.r}')
        if not 0 < self.delta < 180:
            raise InvalidFoV(f'Lens angle must be in (0, 180): {self.delta}')
        if not 0 <= self.theta < 360:
            raise InvalidFoV(f'View direction must be in [0, 360): {self.theta}')
        if self.t < 0:
            raise InvalidFoV(f'Frame index must be non-negative: {self.t}')

    @property
    def position(self) -> Point:
        return self.x, self.y

    def key(self) -> Tuple[float, float, float, float, float, int]:
        return self.x, self.y, self.r, self.theta, self.delta, self.t


class ApproxKind(Enum):
    MBS = 'mbs'
    MBT = 'mbt'
    MBR = 'mbr'
    ORACLE = 'oracle'


@dataclass(frozen=True)
class ApproxMethod:
    kind: ApproxKind
    segment_angle: Optional[float] = None

    def __post_init__(self):
        if self.kind is ApproxKind.MBS:
            angle = DEFAULT_SEGMENT_ANGLE if self.segment_angle is None else float(self.segment_angle)
            if not 0 < angle <= 45:
                raise ValueError(f'MBS segment angle must be in (0, 45]: {angle}')
            object.__setattr__(self, 'segment_angle', angle)
        elif self.kind is ApproxKind.ORACLE:
            object.__setattr__(self, 'segment_angle', ORACLE_SEGMENT_ANGLE)
        else:
            object.__setattr__(self, 'segment_angle', None)

    @classmethod
    def mbs(cls, segment_angle: float = DEFAULT_SEGMENT_ANGLE) -> 'ApproxMethod':
        return cls(ApproxKind.MBS, segment_angle)

    @classmethod
    def mbt(cls) -> 'ApproxMethod':
        return cls(ApproxKind.MBT)

    @classmethod
    def mbr(cls) -> 'ApproxMethod':
        return cls(ApproxKind.MBR)

    @classmethod
    def oracle(cls) -> 'ApproxMethod':
        return cls(ApproxKind.ORACLE)

    @property
    def name(self) -> str:
        return self.kind.value

    def __str__(self) -> str:
        if self.kind is ApproxKind.MBS:
            return f'mbs({self.segment_angle:g})'
        return self.name


def _shoelace(vertices: np.ndarray) -> float:
    if len(vertices) < 3:
        return 0.0
    x, y = vertices[:, 0], vertices[:, 1]
    return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(np.roll(x, -1), y))


class ConvexPolygon:
    """
    Counter-clockwise convex polygon, either empty or with at least 3 vertices. The constructor trusts its
    input; use from_points() to validate arbitrary vertex lists.
    """

    def __init__(self, vertices: Iterable[Point] = ()):
        array = np.asarray(vertices, dtype=float).reshape(-1, 2)
        if 0 < len(array) < 3:
            raise ValueError(f'A polygon needs at least 3 vertices, got {len(array)}')
        array.setflags(write=False)
        self._vertices: np.ndarray = array
        self._area: Optional[float] = None

    @classmethod
    def empty(cls) -> 'ConvexPolygon':
        return cls()

    @classmethod
    def from_points(cls, points: Iterable[Point]) -> 'ConvexPolygon':
        array = _dedupe(np.asarray(list(points), dtype=float).reshape(-1, 2))
        if len(array) == 0:
            return cls.empty()
        if len(array) < 3:
            raise ValueError(f'A polygon needs at least 3 distinct vertices, got {len(array)}')
        if _shoelace(array) < 0:
            array = array[::-1]

        edges = np.roll(array, -1, axis=0) - array
        following = np.roll(edges, -1, axis=0)
        cross = edges[:, 0] * following[:, 1] - edges[:, 1] * following[:, 0]
        lengths = np.hypot(edges[:, 0], edges[:, 1]) * np.hypot(following[:, 0], following[:, 1])
        if np.any(cross < -TOLERANCE * np.maximum(lengths, 1.0)):
            raise ValueError('Vertices do not describe a convex polygon')

        return cls(array)

    @property
    def vertices(self) -> np.ndarray:
        return self._vertices

    @property
    def is_empty(self) -> bool:
        return len(self._vertices) == 0

    @property
    def area(self) -> float:
        if self._area is None:
            self._area = max(0.0, _shoelace(self._vertices))
        return self._area

    @property
    def bounds(self) -> Tuple[float, float, float, float]:
        if self.is_empty:
            raise ValueError('Empty polygon has no bounds')
        xmin, ymin = self._vertices.min(axis=0)
        xmax, ymax = self._vertices.max(axis=0)
        return float(xmin), float(ymin), float(xmax), float(ymax)

    def contains(self, point: Point, tolerance: float = TOLERANCE) -> bool:
        if self.is_empty:
            return False
        normals, offsets = _edge_halfplanes(self._vertices)
        return bool(np.all(normals @ np.asarray(point, dtype=float) - offsets >= -tolerance))

    def __len__(self) -> int:
        return len(self._vertices)

    def __repr__(self) -> str:
        return f'ConvexPolygon({self._vertices.tolist()})'


def sector_contains(fov: FoV, point: Point) -> bool:
    dx, dy = point[0] - fov.x, point[1] - fov.y
    distance = math.hypot(dx, dy)
    if distance <= TOLERANCE:
        return True
    if distance > fov.r + TOLERANCE:
        return False
    bearing = math.degrees(math.atan2(dx, dy))
    return angular_difference(bearing, fov.theta) <= fov.delta / 2 + TOLERANCE


def _sector_mask(fov: FoV, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    dx, dy = xs - fov.x, ys - fov.y
    distance2 = dx * dx + dy * dy
    bearing = np.degrees(np.arctan2(dx, dy))
    difference = np.abs((bearing - fov.theta + 180.0) % 360.0 - 180.0)
    return (distance2 <= fov.r * fov.r) & ((difference <= fov.delta / 2) | (distance2 == 0))


def _fan(fov: FoV, segment_angle: float) -> np.ndarray:
    k = max(1, math.ceil(fov.delta / segment_angle - TOLERANCE))
    # decreasing bearings walk the arc counter-clockwise
    bearings = np.radians(np.linspace(fov.theta + fov.delta / 2, fov.theta - fov.delta / 2, k + 1))
    arc = np.column_stack((fov.x + fov.r * np.sin(bearings), fov.y + fov.r * np.cos(bearings)))
    return np.vstack(([fov.x, fov.y], arc))


def _triangle(fov: FoV) -> np.ndarray:
    length = fov.r / math.cos(math.radians(fov.delta / 2))
    left = _direction(fov.theta + fov.delta / 2)
    right = _direction(fov.theta - fov.delta / 2)
    return np.array([
        [fov.x, fov.y],
        [fov.x + length * left[0], fov.y + length * left[1]],
        [fov.x + length * right[0], fov.y + length * right[1]],
    ])


def _rectangle(fov: FoV) -> np.ndarray:
    points = [(fov.x, fov.y)]
    for bearing in (fov.theta - fov.delta / 2, fov.theta + fov.delta / 2):
        sin, cos = _direction(bearing)
        points.append((fov.x + fov.r * sin, fov.y + fov.r * cos))

    extremes = {0.0: (fov.x, fov.y + fov.r), 90.0: (fov.x + fov.r, fov.y),
                180.0: (fov.x, fov.y - fov.r), 270.0: (fov.x - fov.r, fov.y)}
    for bearing, point in extremes.items():
        if angular_difference(bearing, fov.theta) <= fov.delta / 2:
            points.append(point)

    xs, ys = zip(*points)
    xmin, xmax, ymin, ymax = min(xs), max(xs), min(ys), max(ys)
    return np.array([[xmin, ymin], [xmax, ymin], [xmax, ymax], [xmin, ymax]])


@lru_cache(maxsize=1 << 16)
def view_polygon(fov: FoV, method: ApproxMethod) -> ConvexPolygon:
    if method.kind is ApproxKind.MBT:
        return ConvexPolygon(_triangle(fov))
    if method.kind is ApproxKind.MBR:
        return ConvexPolygon(_rectangle(fov))
    return ConvexPolygon(_fan(fov, method.segment_angle))


def polygon_area(polygon: ConvexPolygon) -> float:
    return polygon.area


def _edge_halfplanes(vertices: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    edges = np.roll(vertices, -1, axis=0) - vertices
    lengths = np.hypot(edges[:, 0], edges[:, 1])
    keep = lengths > TOLERANCE
    edges, lengths, origins = edges[keep], lengths[keep], vertices[keep]
    # left normals point inside a counter-clockwise polygon
    normals = np.column_stack((-edges[:, 1], edges[:, 0])) / lengths[:, None]
    offsets = np.einsum('ij,ij->i', normals, origins)
    return normals, offsets


def _clip_halfplane(subject: np.ndarray, normal: np.ndarray, offset: float) -> np.ndarray:
    distance = subject @ normal - offset
    inside = distance >= -TOLERANCE
    if inside.all():
        return subject
    if not inside.any():
        return subject[:0]

    following = np.roll(subject, -1, axis=0)
    following_distance = np.roll(distance, -1)
    crossing = inside != np.roll(inside, -1)

    denominator = np.where(crossing, distance - following_distance, 1.0)
    ratio = np.clip(np.where(crossing, distance / denominator, 0.0), 0.0, 1.0)
    crossings = subject + ratio[:, None] * (following - subject)

    candidates = np.stack((subject, crossings), axis=1).reshape(-1, 2)
    mask = np.stack((inside, crossing), axis=1).reshape(-1)
    return candidates[mask]


def _dedupe(vertices: np.ndarray) -> np.ndarray:
    if len(vertices) < 2:
        return vertices
    gaps = np.hypot(*(vertices - np.roll(vertices, 1, axis=0)).T)
    unique = vertices[gaps > TOLERANCE]
    if len(unique) == 0:
        return vertices[:1]
    return unique


def _bounds_disjoint(p: Tuple[float, float, float, float], q: Tuple[float, float, float, float]) -> bool:
    return p[2] < q[0] or q[2] < p[0] or p[3] < q[1] or q[3] < p[1]


def _canonical(p: ConvexPolygon, q: ConvexPolygon) -> Tuple[ConvexPolygon, ConvexPolygon]:
    if q.vertices.tobytes() < p.vertices.tobytes():
        return q, p
    return p, q


def convex_intersection(p: ConvexPolygon, q: ConvexPolygon) -> ConvexPolygon:
    """Clips p against every edge of q (Sutherland-Hodgman restricted to convex clip regions)."""
    if p.is_empty or q.is_empty or _bounds_disjoint(p.bounds, q.bounds):
        return ConvexPolygon.empty()

    p, q = _canonical(p, q)
    subject = p.vertices
    normals, offsets = _edge_halfplanes(q.vertices)
    for normal, offset in zip(normals, offsets):
        subject = _clip_halfplane(subject, normal, offset)
        if len(subject) < 3:
            return ConvexPolygon.empty()

    subject = _dedupe(subject)
    if len(subject) < 3:
        return ConvexPolygon.empty()
    return ConvexPolygon(subject)


def convex_intersection_area(p: ConvexPolygon, q: ConvexPolygon) -> float:
    return convex_intersection(p, q).area


def cvw(a: FoV, b: FoV, method: ApproxMethod) -> float:
    """Common view weight: intersection over union of the two approximated view regions."""
    if a == b:
        return 1.0
    if b.key() < a.key():
        a, b = b, a

    pa, pb = view_polygon(a, method), view_polygon(b, method)
    intersection = convex_intersection_area(pa, pb)
    union = pa.area + pb.area - intersection
    if union < MIN_UNION_AREA:
        return 0.0
    return min(1.0, max(0.0, intersection / union))


def cvw_grid_oracle(a: FoV, b: FoV, cell: float, *, budget: int = GRID_CELL_BUDGET,
                    cells_per_chunk: int = 1 << 20) -> float:
    """
    Rasterized IoU of the exact sectors: cell centers of the joint bounding box are classified with the
    sector membership test. Grids larger than the budget are rejected with GridTooLarge, never split.
    """
    if not cell > 0:
        raise ValueError(f'Cell size must be positive: {cell}')

    boxes = [view_polygon(fov, ApproxMethod.mbr()).bounds for fov in (a, b)]
    xmin, ymin = min(box[0] for box in boxes), min(box[1] for box in boxes)
    xmax, ymax = max(box[2] for box in boxes), max(box[3] for box in boxes)

    nx = max(1, math.ceil((xmax - xmin) / cell))
    ny = max(1, math.ceil((ymax - ymin) / cell))
    if nx * ny > budget:
        raise GridTooLarge(nx * ny, budget)

    xs = xmin + (np.arange(nx) + 0.5) * cell
    ys = ymin + (np.arange(ny) + 0.5) * cell

    rows = max(1, cells_per_chunk // nx)
    both, either = 0, 0
    for begin in range(0, ny, rows):
        grid_x, grid_y = np.meshgrid(xs, ys[begin:begin + rows])
        in_a, in_b = _sector_mask(a, grid_x, grid_y), _sector_mask(b, grid_x, grid_y)
        both += int(np.count_nonzero(in_a & in_b))
        either += int(np.count_nonzero(in_a | in_b))

    return both / either if either > 0 else 0.0
