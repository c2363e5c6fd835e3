import json
from typing import Optional, List, Generator, Dict, Any, Iterable

from lcvskit import GeoVideo, ParseError, SchemaError, InvalidFoV
from lcvskit.shell import open_output
from lcvskit.trajectory._base import ProjectionContext, TrajectoryDataset


class TrajectoryReader:
    """
    Reads the trajectory JSON document:
    {"projection": {"lat0": .., "lon0": ..}, "videos": [{"id": str, "frames": [{"t", "x", "y", "theta", "r", "delta"}]}]}
    where "projection" is present only for datasets ingested from GPS.
    """

    def __init__(self, path: str):
        self._path: str = path
        self._data: Optional[Dict[str, Any]] = None

    def __enter__(self) -> 'TrajectoryReader':
        with open(self._path, 'r', encoding='utf-8') as f_input:
            try:
                self._data = json.load(f_input)
            except json.JSONDecodeError as e:
                raise ParseError(self._path, e.lineno, e.msg) from e
        if not isinstance(self._data, dict) or not isinstance(self._data.get('videos'), list):
            raise SchemaError(self._path, 'videos')
        return self

    def __exit__(self, exc_type, exc_value, traceback):
        self._data = None

    @property
    def projection(self) -> Optional[ProjectionContext]:
        if self._data is None:
            raise IOError("Reader is not open.")

        projection = self._data.get('projection')
        if projection is None:
            return None
        try:
            return ProjectionContext.from_json(projection)
        except (KeyError, TypeError, ValueError) as e:
            raise SchemaError(self._path, 'projection', str(e)) from e

    def _parse(self, index: int, video: Any) -> GeoVideo:
        if not isinstance(video, dict) or not isinstance(video.get('id'), str):
            raise SchemaError(self._path, f'videos[{index}].id')
        if not isinstance(video.get('frames'), list):
            raise SchemaError(self._path, f'videos[{index}].frames')
        try:
            return GeoVideo.from_json(video)
        except KeyError as e:
            raise SchemaError(self._path, f'videos[{index}].frames.{e.args[0]}') from e
        except (TypeError, ValueError, InvalidFoV) as e:
            raise SchemaError(self._path, f'videos[{index}]', str(e)) from e

    def __iter__(self) -> Generator[GeoVideo, None, None]:
        if self._data is None:
            raise IOError("Reader is not open.")

        for index, video in enumerate(self._data['videos']):
            yield self._parse(index, video)


class TrajectoryWriter:
    def __init__(self, path: str, projection: Optional[ProjectionContext] = None):
        self._path: str = path
        self._projection: Optional[ProjectionContext] = projection
        self._videos: Optional[List[Dict[str, Any]]] = None

    def __enter__(self) -> 'TrajectoryWriter':
        self._videos = []
        return self

    def __exit__(self, exc_type, exc_value, traceback):
        if exc_type is None:
            document: Dict[str, Any] = {}
            if self._projection is not None:
                document['projection'] = self._projection.to_json()
            document['videos'] = self._videos

            with open_output(self._path) as f_output:
                json.dump(document, f_output, separators=(',', ':'))
        self._videos = None

    def write(self, video: GeoVideo):
        self._videos.append(video.to_json())


def save_trajectories(path: str, videos: Iterable[GeoVideo], projection: Optional[ProjectionContext] = None) -> None:
    with TrajectoryWriter(path, projection) as writer:
        for video in videos:
            writer.write(video)


def load_trajectories(path: str) -> TrajectoryDataset:
    with TrajectoryReader(path) as reader:
        return TrajectoryDataset(videos=list(reader), projection=reader.projection)
