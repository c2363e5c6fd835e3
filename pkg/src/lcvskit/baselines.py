import math
from dataclasses import dataclass

from scipy.spatial.distance import cdist

from lcvskit._core import EmptyInput
from lcvskit._lcvs import GeoVideo, DEFAULT_SIGMA, normalized_distance, subsequence_score, subsequence_reference

__all__ = ['DEFAULT_EPSILON', 'LcssParams', 'lcss_score', 'lcss_reference', 'lcss_distance', 'hausdorff_distance']

DEFAULT_EPSILON: float = 10.0


@dataclass(frozen=True)
class LcssParams:
    epsilon: float = DEFAULT_EPSILON
    sigma: int = DEFAULT_SIGMA

    def __post_init__(self):
        if not self.epsilon > 0:
            raise ValueError(f'epsilon must be positive: {self.epsilon}')
        if self.sigma < 0:
            raise ValueError(f'sigma must be non-negative: {self.sigma}')


def _point_match(a: GeoVideo, b: GeoVideo, epsilon: float):
    def weight(i: int, j: int) -> float:
        return 1.0 if math.hypot(a[i].x - b[j].x, a[i].y - b[j].y) <= epsilon else 0.0

    return weight


def lcss_score(a: GeoVideo, b: GeoVideo, params: LcssParams = LcssParams()) -> int:
    """
    Classic longest common subsequence over frame positions: two frames match when their positions are within
    epsilon meters and their prefix lengths differ by at most sigma. View direction, radius and lens angle are
    ignored.
    """
    return int(round(subsequence_score(len(a), len(b), _point_match(a, b, params.epsilon), params.sigma)))


def lcss_reference(a: GeoVideo, b: GeoVideo, params: LcssParams = LcssParams()) -> int:
    return int(round(subsequence_reference(len(a), len(b), _point_match(a, b, params.epsilon), params.sigma)))


def lcss_distance(a: GeoVideo, b: GeoVideo, params: LcssParams = LcssParams()) -> float:
    return normalized_distance(lcss_score(a, b, params), len(a), len(b))


def hausdorff_distance(a: GeoVideo, b: GeoVideo) -> float:
    """Symmetric Hausdorff distance, in meters, between the two sets of frame positions."""
    if len(a) == 0 or len(b) == 0:
        raise EmptyInput(f'Hausdorff distance is undefined for empty videos ({a.id}: {len(a)}, {b.id}: {len(b)})')

    distances = cdist(a.positions, b.positions)
    return float(max(distances.min(axis=1).max(), distances.min(axis=0).max()))
