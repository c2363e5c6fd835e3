import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Tuple, Iterator, Any, Sequence

import numpy as np

from lcvskit._core import InputTooLarge
from lcvskit._geometry import FoV, ApproxMethod, cvw

__all__ = [
    'REFERENCE_LIMIT', 'DEFAULT_SIGMA', 'TRIANGLE_TOLERANCE',
    'GeoVideo', 'LcvsParams', 'TriangleViolation', 'MetricAudit',
    'lcvs_score', 'lcvs_score_matrix', 'lcvs_reference', 'lcvs_reference_matrix',
    'lcvs_similarity', 'lcvs_distance', 'normalized_distance', 'metric_audit',
    'subsequence_score', 'subsequence_reference',
]

REFERENCE_LIMIT: int = 12
DEFAULT_SIGMA: int = 1
TRIANGLE_TOLERANCE: float = 1e-9

WeightFn = Callable[[int, int], float]


@dataclass(frozen=True)
class GeoVideo:
    """An identified, time-ordered sequence of FoVs; frame indices must be strictly increasing."""
    id: str
    fovs: Tuple[FoV, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, 'fovs', tuple(self.fovs))
        for previous, current in zip(self.fovs, self.fovs[1:]):
            if current.t <= previous.t:
                raise ValueError(f'Video "{self.id}": frame indices must be strictly increasing '
                                 f'({previous.t} followed by {current.t})')

    @classmethod
    def from_json(cls, json_data: Dict[str, Any]) -> 'GeoVideo':
        return cls(id=json_data['id'], fovs=tuple(
            FoV(x=frame['x'], y=frame['y'], r=frame['r'], theta=frame['theta'], delta=frame['delta'], t=frame['t'])
            for frame in json_data['frames']))

    def to_json(self) -> Dict[str, Any]:
        return {
            'id': self.id,
            'frames': [{'t': fov.t, 'x': fov.x, 'y': fov.y, 'theta': fov.theta, 'r': fov.r, 'delta': fov.delta}
                       for fov in self.fovs]
        }

    @property
    def positions(self) -> np.ndarray:
        return np.array([fov.position for fov in self.fovs], dtype=float).reshape(-1, 2)

    def __len__(self) -> int:
        return len(self.fovs)

    def __iter__(self) -> Iterator[FoV]:
        return iter(self.fovs)

    def __getitem__(self, index: int) -> FoV:
        return self.fovs[index]

    def __str__(self) -> str:
        return f'GeoVideo({self.id}, {len(self)} frames)'


@dataclass(frozen=True)
class LcvsParams:
    sigma: int = DEFAULT_SIGMA
    method: ApproxMethod = field(default_factory=ApproxMethod.mbs)

    def __post_init__(self):
        if self.sigma < 0:
            raise ValueError(f'sigma must be non-negative: {self.sigma}')


def _subsequence_table(m: int, n: int, weight: WeightFn, sigma: int) -> np.ndarray:
    # weight(i, j) is called at most once per pair and only inside the band |i - j| <= sigma
    table = np.zeros((m + 1, n + 1))
    for i in range(1, m + 1):
        for j in range(1, n + 1):
            if abs(i - j) <= sigma:
                w = weight(i - 1, j - 1)
                if w > 0:
                    table[i, j] = w + table[i - 1, j - 1]
                    continue
            table[i, j] = max(table[i - 1, j], table[i, j - 1])
    return table


def _subsequence_recursion(m: int, n: int, weight: WeightFn, sigma: int) -> float:
    if m == 0 or n == 0:
        return 0.0
    if abs(m - n) <= sigma:
        w = weight(m - 1, n - 1)
        if w > 0:
            return w + _subsequence_recursion(m - 1, n - 1, weight, sigma)
    return max(_subsequence_recursion(m - 1, n, weight, sigma), _subsequence_recursion(m, n - 1, weight, sigma))


def _cached(weight: WeightFn) -> WeightFn:
    cache: Dict[Tuple[int, int], float] = {}

    def _weight(i: int, j: int) -> float:
        if (i, j) not in cache:
            cache[(i, j)] = weight(i, j)
        return cache[(i, j)]

    return _weight


def _as_weights(weights: np.ndarray) -> np.ndarray:
    array = np.asarray(weights, dtype=float)
    if array.ndim != 2:
        raise ValueError(f'Weights must be a 2-dimensional matrix, got shape {array.shape}')
    return array


def _check_reference_size(m: int, n: int) -> None:
    if m > REFERENCE_LIMIT or n > REFERENCE_LIMIT:
        raise InputTooLarge(m, n, REFERENCE_LIMIT)


def subsequence_score(m: int, n: int, weight: WeightFn, sigma: int) -> float:
    """Banded subsequence score over any frame weight; weight(i, j) takes 0-based frame indices."""
    if m == 0 or n == 0:
        return 0.0
    return float(_subsequence_table(m, n, weight, sigma)[m, n])


def subsequence_reference(m: int, n: int, weight: WeightFn, sigma: int) -> float:
    _check_reference_size(m, n)
    return _subsequence_recursion(m, n, _cached(weight), sigma)


def lcvs_score_matrix(weights: np.ndarray, sigma: int = DEFAULT_SIGMA) -> float:
    """Score of the subsequence recursion over a precomputed (m, n) weight matrix."""
    weights = _as_weights(weights)
    m, n = weights.shape
    return subsequence_score(m, n, lambda i, j: float(weights[i, j]), sigma)


def lcvs_reference_matrix(weights: np.ndarray, sigma: int = DEFAULT_SIGMA) -> float:
    weights = _as_weights(weights)
    m, n = weights.shape
    return subsequence_reference(m, n, lambda i, j: float(weights[i, j]), sigma)


def lcvs_score(a: GeoVideo, b: GeoVideo, params: LcvsParams = LcvsParams()) -> float:
    """
    Largest common view subsequence score: the accumulated common view weight of the best alignment of
    frames whose prefix lengths differ by at most sigma. Runs in O(m * n) table steps.
    """
    return subsequence_score(len(a), len(b), lambda i, j: cvw(a[i], b[j], params.method), params.sigma)


def lcvs_reference(a: GeoVideo, b: GeoVideo, params: LcvsParams = LcvsParams()) -> float:
    """Literal exponential recursion, kept as an oracle for lcvs_score."""
    return subsequence_reference(len(a), len(b), lambda i, j: cvw(a[i], b[j], params.method), params.sigma)


def normalized_distance(score: float, m: int, n: int) -> float:
    # empty inputs are maximally distant, including (empty, empty)
    shortest = min(m, n)
    if shortest == 0:
        return 1.0
    return 1.0 - min(1.0, score / shortest)


def lcvs_similarity(a: GeoVideo, b: GeoVideo, params: LcvsParams = LcvsParams()) -> float:
    shortest = min(len(a), len(b))
    if shortest == 0:
        return 0.0
    return min(1.0, lcvs_score(a, b, params) / shortest)


def lcvs_distance(a: GeoVideo, b: GeoVideo, params: LcvsParams = LcvsParams()) -> float:
    return 1.0 - lcvs_similarity(a, b, params)


@dataclass(frozen=True)
class TriangleViolation:
    a: str
    b: str
    c: str
    slack: float

    def to_json(self) -> Dict[str, Any]:
        return {'a': self.a, 'b': self.b, 'c': self.c, 'slack': self.slack}


@dataclass
class MetricAudit:
    videos: int
    pairs: int
    triples: int
    negative: int
    asymmetric: int
    triangle_violations: List[TriangleViolation] = field(default_factory=list)

    @property
    def is_metric(self) -> bool:
        return self.negative == 0 and self.asymmetric == 0 and not self.triangle_violations

    def to_json(self) -> Dict[str, Any]:
        return {
            'videos': self.videos, 'pairs': self.pairs, 'triples': self.triples,
            'negative': self.negative, 'asymmetric': self.asymmetric,
            'triangle_violation_count': len(self.triangle_violations),
            'triangle_violations': [violation.to_json() for violation in self.triangle_violations],
        }


def metric_audit(videos: Sequence[GeoVideo], params: LcvsParams = LcvsParams()) -> MetricAudit:
    """
    Checks non-negativity and symmetry over every pair and the triangle inequality over every ordered triple
    of distinct videos. Violations are reported, never raised.
    """
    if len(videos) < 3:
        raise ValueError(f'The metric audit needs at least 3 videos, got {len(videos)}')

    logger = logging.getLogger('lcvskit.audit')
    count = len(videos)

    distances = np.empty((count, count))
    for i, a in enumerate(videos):
        for j, b in enumerate(videos):
            distances[i, j] = lcvs_distance(a, b, params)

    upper = np.triu_indices(count, k=1)
    negative = int(np.count_nonzero(distances < 0))
    asymmetric = int(np.count_nonzero(distances[upper] != distances.T[upper]))

    # slack[i, j, k] = d(i, j) + d(j, k) - d(i, k)
    slack = distances[:, :, None] + distances[None, :, :] - distances[:, None, :]
    index = np.arange(count)
    distinct = ((index[:, None, None] != index[None, :, None]) &
                (index[None, :, None] != index[None, None, :]) &
                (index[:, None, None] != index[None, None, :]))
    violating = np.argwhere(distinct & (slack < -TRIANGLE_TOLERANCE))

    violations = [TriangleViolation(videos[i].id, videos[j].id, videos[k].id, float(slack[i, j, k]))
                  for i, j, k in violating]

    audit = MetricAudit(videos=count, pairs=count * (count - 1) // 2, triples=int(np.count_nonzero(distinct)),
                        negative=negative, asymmetric=asymmetric, triangle_violations=violations)
    logger.info('Metric audit over %d videos: %d negative, %d asymmetric, %d triangle violations in %d triples',
                audit.videos, audit.negative, audit.asymmetric, len(violations), audit.triples)
    return audit
