import json
import os
import tempfile
import unittest
from typing import Any, List

from lcvskit.trajectory import GeoSample

NORTHBOUND = [GeoSample(t_epoch=0., lat=45., lon=9.), GeoSample(t_epoch=1., lat=45.0001, lon=9.)]


class TestTrajectory(unittest.TestCase):
    def setUp(self):
        self.temp_dir: tempfile.TemporaryDirectory = tempfile.TemporaryDirectory()

    def tearDown(self):
        self.temp_dir.cleanup()

    def _path(self, filename: str) -> str:
        return os.path.join(self.temp_dir.name, filename)

    def _write_text(self, filename: str, content: str) -> str:
        path = self._path(filename)
        with open(path, 'w', encoding='utf-8') as f_output:
            f_output.write(content)
        return path

    def _write_json(self, filename: str, data: Any) -> str:
        return self._write_text(filename, json.dumps(data))

    def _write_csv(self, filename: str, rows: List[str]) -> str:
        return self._write_text(filename, '\n'.join(rows) + '\n')

    def _write_bdd(self, filename: str, locations: List[dict]) -> str:
        return self._write_json(filename, {'startTime': 0, 'endTime': 40000, 'locations': locations})
