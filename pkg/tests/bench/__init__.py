import os
import tempfile
import unittest
from typing import List

import numpy as np

from lcvskit import FoV, GeoVideo
from lcvskit.bench import DistanceMatrix
from lcvskit.trajectory import SynthConfig, synthesize

SMALL = SynthConfig(n_videos=8, frames_per_video=5, extent=60., seed=9)


def line_video(video_id: str, x: float, frames: int = 4) -> GeoVideo:
    return GeoVideo(video_id, [FoV(x=x, y=5. * t, r=20., theta=0., delta=60., t=t) for t in range(frames)])


def matrix_of(ids: List[str], values) -> DistanceMatrix:
    return DistanceMatrix(ids=list(ids), values=np.asarray(values, dtype=float))


class TestBench(unittest.TestCase):
    def setUp(self):
        self.temp_dir: tempfile.TemporaryDirectory = tempfile.TemporaryDirectory()
        self.videos: List[GeoVideo] = synthesize(SMALL)

    def tearDown(self):
        self.temp_dir.cleanup()

    def _path(self, filename: str) -> str:
        return os.path.join(self.temp_dir.name, filename)

    def _read(self, path: str) -> str:
        with open(path, 'r', encoding='utf-8') as f_input:
            return f_input.read()
