from trajectory import TestTrajectory

from lcvskit import SchemaError, EmptyFile
from lcvskit.trajectory import BddInfoReader, read_bdd100k_info, ingest_bdd100k_info, ingest


def _location(timestamp: int, lat: float, lon: float, **kwargs) -> dict:
    location = {'timestamp': timestamp, 'latitude': lat, 'longitude': lon, 'speed': 3.2, 'accuracy': 10.}
    location.update(kwargs)
    return location


class TestBddInfo(TestTrajectory):
    def test_three_locations(self):
        path = self._write_bdd('b1c66a42-6f7d68ca.json', [
            _location(1000, 40.7, -74.0, course=10.),
            _location(2000, 40.7001, -74.0, course=20.),
            _location(3000, 40.7002, -74.0, course=30.),
        ])
        video = ingest_bdd100k_info(path)

        self.assertEqual(video.id, 'b1c66a42-6f7d68ca')
        self.assertEqual(len(video), 3)
        self.assertEqual([fov.theta for fov in video], [10., 20., 30.])
        self.assertEqual([fov.t for fov in video], [0, 1, 2])

    def test_timestamps_are_milliseconds(self):
        path = self._write_bdd('ms.json', [_location(1500, 40.7, -74.0), _location(2500, 40.7001, -74.0)])
        self.assertEqual([sample.t_epoch for sample in read_bdd100k_info(path)], [1.5, 2.5])

    def test_missing_course_is_derived(self):
        path = self._write_bdd('derived.json', [_location(0, 40.7, -74.0), _location(1000, 40.7, -73.9999),
                                                _location(2000, 40.7, -73.9998, course=-1)])
        video = ingest_bdd100k_info(path)
        for fov in video:
            self.assertAlmostEqual(fov.theta, 90.)

    def test_unsorted_and_duplicate_locations(self):
        path = self._write_bdd('dup.json', [_location(2000, 40.7001, -74.0), _location(1000, 40.7, -74.0),
                                            _location(2000, 40.7002, -74.0)])
        with self.assertLogs('lcvskit.ingest', level='WARNING'):
            samples = read_bdd100k_info(path)
        self.assertEqual([sample.t_epoch for sample in samples], [1., 2.])

    def test_malformed_json(self):
        path = self._write_text('broken.json', '{"locations": [')
        with self.assertRaises(SchemaError):
            read_bdd100k_info(path)

    def test_missing_locations(self):
        with self.assertRaises(SchemaError) as context:
            read_bdd100k_info(self._write_json('nolocations.json', {'startTime': 0}))
        self.assertEqual(context.exception.field, 'locations')

    def test_missing_field(self):
        path = self._write_bdd('nofield.json', [_location(0, 40.7, -74.0), {'timestamp': 1000, 'longitude': -74.0}])
        with self.assertRaises(SchemaError) as context:
            read_bdd100k_info(path)
        self.assertEqual(context.exception.field, 'locations[1].latitude')

    def test_empty_locations(self):
        with self.assertRaises(EmptyFile):
            read_bdd100k_info(self._write_bdd('empty.json', []))

    def test_ingest(self):
        first = self._write_bdd('a.json', [_location(0, 40.7, -74.0), _location(1000, 40.7001, -74.0)])
        second = self._write_bdd('b.json', [_location(0, 40.7, -74.0001), _location(1000, 40.7001, -74.0001)])
        dataset = ingest([first, second], BddInfoReader, r=20., delta=90.)

        self.assertEqual(dataset.ids, ['a', 'b'])
        self.assertEqual(dataset.get('a')[0].r, 20.)
        self.assertLess(dataset.get('b')[0].x, dataset.get('a')[0].x)
