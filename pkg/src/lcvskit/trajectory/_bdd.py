import json
import logging
from typing import Optional, Generator, List, Dict, Any

from lcvskit import GeoVideo, SchemaError, EmptyFile
from lcvskit.trajectory._base import GeoSample, GeoSampleReader, ProjectionContext, build_video, video_id_of, \
    DEFAULT_RADIUS, DEFAULT_LENS_ANGLE


class BddInfoReader(GeoSampleReader):
    """
    Best-effort reader for BDD100K per-video info files: the "locations" list provides latitude, longitude and
    timestamp (milliseconds), plus an optional course; every other field is ignored. Negative courses mean
    "unknown" and fall back to derived headings.
    """

    def __init__(self, path: str):
        self._path: str = path
        self._data: Optional[Dict[str, Any]] = None
        self._logger = logging.getLogger('lcvskit.ingest')

    def __enter__(self) -> 'BddInfoReader':
        with open(self._path, 'r', encoding='utf-8') as f_input:
            try:
                self._data = json.load(f_input)
            except json.JSONDecodeError as e:
                raise SchemaError(self._path, '<document>', f'malformed JSON: {e}') from e
        if not isinstance(self._data, dict):
            raise SchemaError(self._path, '<document>', 'expected a JSON object')
        return self

    def __exit__(self, exc_type, exc_value, traceback):
        self._data = None

    def _parse(self, index: int, location: Any) -> GeoSample:
        if not isinstance(location, dict):
            raise SchemaError(self._path, f'locations[{index}]', 'expected an object')

        values = {}
        for key in ('latitude', 'longitude', 'timestamp'):
            value = location.get(key)
            if not isinstance(value, (int, float)) or isinstance(value, bool):
                raise SchemaError(self._path, f'locations[{index}].{key}')
            values[key] = float(value)

        course = location.get('course')
        if not isinstance(course, (int, float)) or isinstance(course, bool) or course < 0:
            course = None

        try:
            return GeoSample(t_epoch=values['timestamp'] / 1000., lat=values['latitude'],
                             lon=values['longitude'], course=None if course is None else float(course))
        except ValueError as e:
            raise SchemaError(self._path, f'locations[{index}]', str(e)) from e

    def __iter__(self) -> Generator[GeoSample, None, None]:
        if self._data is None:
            raise IOError("Reader is not open.")

        locations = self._data.get('locations')
        if not isinstance(locations, list):
            raise SchemaError(self._path, 'locations')

        samples = sorted((self._parse(i, location) for i, location in enumerate(locations)),
                         key=lambda s: s.t_epoch)

        previous: Optional[GeoSample] = None
        for sample in samples:
            if previous is not None and sample.t_epoch == previous.t_epoch:
                self._logger.warning('%s: dropping duplicate location at t=%s', self._path, sample.t_epoch)
                continue
            previous = sample
            yield sample


def read_bdd100k_info(path: str) -> List[GeoSample]:
    with BddInfoReader(path) as reader:
        samples = list(reader)
    if not samples:
        raise EmptyFile(path)
    return samples


def ingest_bdd100k_info(path: str, r: float = DEFAULT_RADIUS, delta: float = DEFAULT_LENS_ANGLE,
                        ctx: Optional[ProjectionContext] = None) -> GeoVideo:
    samples = read_bdd100k_info(path)
    ctx = ctx or ProjectionContext.from_samples(samples)
    return build_video(video_id_of(path), samples, ctx, r=r, delta=delta)
