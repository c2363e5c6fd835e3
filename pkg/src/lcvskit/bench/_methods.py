from dataclasses import dataclass
from typing import Optional, Union

from lcvskit import GeoVideo, ApproxMethod, LcvsParams, DEFAULT_SIGMA, DEFAULT_SEGMENT_ANGLE, lcvs_distance
from lcvskit.baselines import LcssParams, DEFAULT_EPSILON, lcss_distance, hausdorff_distance

LCVS_MBS = 'lcvs-mbs'
LCVS_MBT = 'lcvs-mbt'
LCVS_MBR = 'lcvs-mbr'
LCVS_ORACLE = 'lcvs-oracle'
LCSS = 'lcss'
HAUSDORFF = 'hausdorff'

METHOD_NAMES = (LCVS_MBS, LCVS_MBT, LCVS_MBR, LCVS_ORACLE, LCSS, HAUSDORFF)


@dataclass(frozen=True)
class MethodSpec:
    """A distance method with its parameters: one of the LCVS approximations, LCSS or Hausdorff."""
    name: str
    sigma: int = DEFAULT_SIGMA
    segment_angle: float = DEFAULT_SEGMENT_ANGLE
    epsilon: float = DEFAULT_EPSILON

    def __post_init__(self):
        if self.name not in METHOD_NAMES:
            raise ValueError(f'Unknown method "{self.name}", expected one of {", ".join(METHOD_NAMES)}')
        # builds the parameter objects once to validate their ranges
        _ = self.params

    @property
    def approx(self) -> Optional[ApproxMethod]:
        if self.name == LCVS_MBS:
            return ApproxMethod.mbs(self.segment_angle)
        if self.name == LCVS_MBT:
            return ApproxMethod.mbt()
        if self.name == LCVS_MBR:
            return ApproxMethod.mbr()
        if self.name == LCVS_ORACLE:
            return ApproxMethod.oracle()
        return None

    @property
    def params(self) -> Union[LcvsParams, LcssParams, None]:
        if self.name == LCSS:
            return LcssParams(epsilon=self.epsilon, sigma=self.sigma)
        if self.name == HAUSDORFF:
            return None
        return LcvsParams(sigma=self.sigma, method=self.approx)

    @property
    def normalized(self) -> bool:
        return self.name != HAUSDORFF

    def distance(self, a: GeoVideo, b: GeoVideo) -> float:
        if self.name == HAUSDORFF:
            return hausdorff_distance(a, b)
        if self.name == LCSS:
            return lcss_distance(a, b, self.params)
        return lcvs_distance(a, b, self.params)

    def __str__(self) -> str:
        if self.name == LCSS:
            return f'{self.name}(epsilon={self.epsilon:g}, sigma={self.sigma})'
        if self.name == HAUSDORFF:
            return self.name
        return f'{self.name}({self.approx}, sigma={self.sigma})'
