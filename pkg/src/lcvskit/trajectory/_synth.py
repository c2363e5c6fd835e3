import math
from dataclasses import dataclass, asdict, fields
from typing import List, Dict, Any

from lcvskit import FoV, GeoVideo, normalize_bearing
from lcvskit.math import SplitMix64

STRAIGHT = 'straight'
RANDOM = 'random'
DIRECTION_MODES = (STRAIGHT, RANDOM)


@dataclass(frozen=True)
class SynthConfig:
    """
    Random-walk dataset: each video starts uniformly inside an extent x extent square with a uniform heading,
    perturbs the heading by a uniform +/- heading_jitter per step and advances step meters. In straight mode the
    camera faces the motion heading; in random mode every frame faces a uniform random direction.
    """
    n_videos: int = 40
    frames_per_video: int = 25
    r: float = 30.0
    delta: float = 60.0
    direction_mode: str = RANDOM
    extent: float = 300.0
    step: float = 5.0
    heading_jitter: float = 5.0
    seed: int = 42

    def __post_init__(self):
        if self.n_videos < 1 or self.frames_per_video < 1:
            raise ValueError(f'Video and frame counts must be at least 1: {self.n_videos}, {self.frames_per_video}')
        if not self.r > 0:
            raise ValueError(f'Viewable radius must be positive: {self.r}')
        if not 0 < self.delta < 180:
            raise ValueError(f'Lens angle must be in (0, 180): {self.delta}')
        if self.direction_mode not in DIRECTION_MODES:
            raise ValueError(f'Direction mode must be one of {", ".join(DIRECTION_MODES)}: {self.direction_mode}')
        if not (self.extent > 0 and self.step > 0):
            raise ValueError(f'Extent and step must be positive: {self.extent}, {self.step}')
        if not 0 <= self.heading_jitter <= 180:
            raise ValueError(f'Heading jitter must be in [0, 180]: {self.heading_jitter}')

    @classmethod
    def from_json(cls, json_data: Dict[str, Any]) -> 'SynthConfig':
        known = {f.name for f in fields(cls)}
        unknown = set(json_data) - known
        if unknown:
            raise ValueError(f'Unknown configuration keys: {", ".join(sorted(unknown))}')
        return cls(**json_data)

    def to_json(self) -> Dict[str, Any]:
        return asdict(self)

    @property
    def total_fovs(self) -> int:
        return self.n_videos * self.frames_per_video


def _walk(rng: SplitMix64, cfg: SynthConfig, index: int) -> GeoVideo:
    x, y = rng.uniform(0., cfg.extent), rng.uniform(0., cfg.extent)
    heading = rng.uniform(0., 360.)

    points = [(x, y)]
    headings = [heading]
    for _ in range(1, cfg.frames_per_video):
        heading = normalize_bearing(heading + rng.uniform(-cfg.heading_jitter, cfg.heading_jitter))
        rad = math.radians(heading)
        x, y = x + cfg.step * math.sin(rad), y + cfg.step * math.cos(rad)
        points.append((x, y))
        headings.append(heading)

    if cfg.direction_mode == STRAIGHT:
        # frame i faces the step that reached it; the first frame copies the second
        thetas = headings[1:2] + headings[1:] if len(headings) > 1 else headings
    else:
        thetas = [normalize_bearing(rng.uniform(0., 360.)) for _ in points]

    fovs = tuple(FoV(x=px, y=py, r=cfg.r, theta=theta, delta=cfg.delta, t=t)
                 for t, ((px, py), theta) in enumerate(zip(points, thetas)))
    return GeoVideo(id=f'v{index:04d}', fovs=fovs)


def synthesize(cfg: SynthConfig) -> List[GeoVideo]:
    rng = SplitMix64(cfg.seed)
    return [_walk(rng, cfg, index) for index in range(cfg.n_videos)]
