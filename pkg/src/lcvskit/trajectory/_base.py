import logging
import math
import os
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Optional, List, Tuple, Generator, Iterable, Sequence, Dict, Any, Callable, Iterator

from lcvskit import FoV, GeoVideo, DegenerateStep, EmptyFile, UnknownId, bearing_of, normalize_bearing

METERS_PER_DEGREE_LAT: float = 110540.0
METERS_PER_DEGREE_LON: float = 111320.0

DEFAULT_RADIUS: float = 30.0
DEFAULT_LENS_ANGLE: float = 60.0

Point = Tuple[float, float]


@dataclass(frozen=True)
class GeoSample:
    t_epoch: float
    lat: float
    lon: float
    course: Optional[float] = None

    def __post_init__(self):
        if not (math.isfinite(self.lat) and abs(self.lat) <= 90):
            raise ValueError(f'Latitude out of range: {self.lat}')
        if not (math.isfinite(self.lon) and abs(self.lon) <= 180):
            raise ValueError(f'Longitude out of range: {self.lon}')
        if self.course is not None and not math.isfinite(self.course):
            raise ValueError(f'Course must be finite: {self.course}')


@dataclass(frozen=True)
class ProjectionContext:
    """Equirectangular projection to local planar meters about (lat0, lon0)."""
    lat0: float
    lon0: float

    def __post_init__(self):
        if not (math.isfinite(self.lat0) and math.isfinite(self.lon0)):
            raise ValueError(f'Projection origin must be finite: ({self.lat0}, {self.lon0})')

    @classmethod
    def from_samples(cls, samples: Iterable[GeoSample]) -> 'ProjectionContext':
        samples = list(samples)
        if not samples:
            raise ValueError('Cannot compute the centroid of an empty sample set')
        return cls(lat0=math.fsum(s.lat for s in samples) / len(samples),
                   lon0=math.fsum(s.lon for s in samples) / len(samples))

    @classmethod
    def from_json(cls, json_data: Dict[str, Any]) -> 'ProjectionContext':
        return cls(lat0=json_data['lat0'], lon0=json_data['lon0'])

    def to_json(self) -> Dict[str, float]:
        return {'lat0': self.lat0, 'lon0': self.lon0}

    @property
    def _lon_scale(self) -> float:
        return math.cos(math.radians(self.lat0)) * METERS_PER_DEGREE_LON

    def project(self, lat: float, lon: float) -> Point:
        return (lon - self.lon0) * self._lon_scale, (lat - self.lat0) * METERS_PER_DEGREE_LAT

    def unproject(self, x: float, y: float) -> Tuple[float, float]:
        return self.lat0 + y / METERS_PER_DEGREE_LAT, self.lon0 + x / self._lon_scale


def project(samples: Iterable[GeoSample], ctx: ProjectionContext) -> List[Point]:
    return [ctx.project(sample.lat, sample.lon) for sample in samples]


def derive_heading(p_prev: Point, p_next: Point) -> float:
    dx, dy = p_next[0] - p_prev[0], p_next[1] - p_prev[1]
    if math.hypot(dx, dy) == 0:
        raise DegenerateStep(f'Cannot derive a heading from coincident points {p_prev} and {p_next}')
    return bearing_of(dx, dy)


def derive_headings(points: Sequence[Point]) -> List[float]:
    """
    Heading of every frame from the step that reaches it. The first frame copies the second, a degenerate
    step reuses the previous heading, and frames before the first usable step take that step's heading.
    A trajectory without any usable step faces north.
    """
    headings: List[Optional[float]] = [None] * len(points)
    for i in range(1, len(points)):
        try:
            headings[i] = derive_heading(points[i - 1], points[i])
        except DegenerateStep:
            headings[i] = headings[i - 1]

    first = next((heading for heading in headings if heading is not None), 0.0)
    return [first if heading is None else heading for heading in headings]


def build_video(video_id: str, samples: Sequence[GeoSample], ctx: ProjectionContext, *,
                r: float = DEFAULT_RADIUS, delta: float = DEFAULT_LENS_ANGLE) -> GeoVideo:
    points = project(samples, ctx)
    derived = derive_headings(points)

    fovs = []
    for t, (sample, (x, y), heading) in enumerate(zip(samples, points, derived)):
        theta = heading if sample.course is None else normalize_bearing(sample.course)
        fovs.append(FoV(x=x, y=y, r=r, theta=theta, delta=delta, t=t))

    return GeoVideo(id=video_id, fovs=tuple(fovs))


def video_id_of(path: str) -> str:
    return os.path.splitext(os.path.basename(path))[0]


class GeoSampleReader(ABC):
    @abstractmethod
    def __enter__(self) -> 'GeoSampleReader':
        pass

    @abstractmethod
    def __iter__(self) -> Generator[GeoSample, None, None]:
        pass

    @abstractmethod
    def __exit__(self, exc_type, exc_value, traceback):
        pass


@dataclass
class TrajectoryDataset:
    videos: List[GeoVideo] = field(default_factory=list)
    projection: Optional[ProjectionContext] = None

    @property
    def ids(self) -> List[str]:
        return [video.id for video in self.videos]

    def get(self, video_id: str) -> GeoVideo:
        for video in self.videos:
            if video.id == video_id:
                return video
        raise UnknownId(video_id)

    def __len__(self) -> int:
        return len(self.videos)

    def __iter__(self) -> Iterator[GeoVideo]:
        return iter(self.videos)


def ingest(paths: Sequence[str], reader: Callable[[str], GeoSampleReader], *,
           r: float = DEFAULT_RADIUS, delta: float = DEFAULT_LENS_ANGLE) -> TrajectoryDataset:
    """Reads several GPS files into one dataset projected about the centroid of all their samples."""
    logger = logging.getLogger('lcvskit.ingest')

    samples_by_path = []
    for path in paths:
        with reader(path) as source:
            samples = list(source)
        if not samples:
            raise EmptyFile(path)
        samples_by_path.append((path, samples))
        logger.info('Read %d samples from %s', len(samples), path)

    ctx = ProjectionContext.from_samples(s for _, samples in samples_by_path for s in samples)
    videos = [build_video(video_id_of(path), samples, ctx, r=r, delta=delta) for path, samples in samples_by_path]
    return TrajectoryDataset(videos=videos, projection=ctx)
