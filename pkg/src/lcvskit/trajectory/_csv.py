import csv
from typing import Optional, TextIO, Generator, List

from lcvskit import GeoVideo, ParseError, EmptyFile
from lcvskit.trajectory._base import GeoSample, GeoSampleReader, ProjectionContext, build_video, video_id_of, \
    DEFAULT_RADIUS, DEFAULT_LENS_ANGLE


class GpsCsvReader(GeoSampleReader):
    HEADERS = (['t', 'lat', 'lon'], ['t', 'lat', 'lon', 'course'])

    def __init__(self, path: str):
        self._path: str = path
        self._file: Optional[TextIO] = None

    def __enter__(self) -> 'GpsCsvReader':
        self._file = open(self._path, 'r', encoding='utf-8', newline='')
        return self

    def __exit__(self, exc_type, exc_value, traceback):
        if self._file:
            self._file.close()

    def _parse(self, row: List[str], line: int, has_course: bool) -> GeoSample:
        if len(row) != (4 if has_course else 3):
            raise ParseError(self._path, line, f'expected {4 if has_course else 3} columns, got {len(row)}')
        try:
            course = float(row[3]) if has_course and row[3].strip() else None
            return GeoSample(t_epoch=float(row[0]), lat=float(row[1]), lon=float(row[2]), course=course)
        except ValueError as e:
            raise ParseError(self._path, line, str(e)) from e

    def __iter__(self) -> Generator[GeoSample, None, None]:
        if self._file is None:
            raise IOError("Reader is not open.")

        rows = csv.reader(self._file)
        header = next(rows, None)
        if header is None:
            raise EmptyFile(self._path)
        if header not in self.HEADERS:
            raise ParseError(self._path, 1, f'header must be "t,lat,lon" or "t,lat,lon,course", got {",".join(header)}')
        has_course = len(header) == 4

        previous: Optional[GeoSample] = None
        for line, row in enumerate(rows, start=2):
            if not row:
                continue
            sample = self._parse(row, line, has_course)
            if previous is not None and sample.t_epoch <= previous.t_epoch:
                raise ParseError(self._path, line, f'rows are not time-sorted ({sample.t_epoch} after '
                                                   f'{previous.t_epoch})')
            previous = sample
            yield sample


def read_gps_csv(path: str) -> List[GeoSample]:
    with GpsCsvReader(path) as reader:
        samples = list(reader)
    if not samples:
        raise EmptyFile(path)
    return samples


def ingest_csv(path: str, r: float = DEFAULT_RADIUS, delta: float = DEFAULT_LENS_ANGLE,
               ctx: Optional[ProjectionContext] = None) -> GeoVideo:
    samples = read_gps_csv(path)
    ctx = ctx or ProjectionContext.from_samples(samples)
    return build_video(video_id_of(path), samples, ctx, r=r, delta=delta)
