from dataclasses import replace

from bench import TestBench, SMALL

from lcvskit.bench import MethodSpec, ExperimentReport, ExperimentRow, LCVS_MBS, LCVS_MBT, LCVS_MBR, LCVS_ORACLE, \
    LCSS, DEFAULT_METHODS, REPORT_COLUMNS, FOV_COUNT, VIEW_DISTANCE, run_experiment_fov_count, \
    run_experiment_view_distance, emit_report, load_report
from lcvskit.trajectory import STRAIGHT, RANDOM

BASE = replace(SMALL, frames_per_video=4, n_videos=6)


def _without_timing(report: ExperimentReport):
    return [replace(row, wall_time_s=0.) for row in report.rows]


class TestExperiments(TestBench):
    def test_fov_count_rows(self):
        report = run_experiment_fov_count(BASE, [24, 32], k=2)

        self.assertEqual(report.sweep, FOV_COUNT)
        self.assertEqual(len(report), 2 * len(DEFAULT_METHODS) * 2)
        self.assertEqual({row.method for row in report.rows}, set(DEFAULT_METHODS))
        self.assertEqual({row.mode for row in report.rows}, {STRAIGHT, RANDOM})
        self.assertEqual({(row.sweep_value, row.n_videos) for row in report.rows}, {(24, 6), (32, 8)})
        for row in report.rows:
            self.assertEqual(row.frames_per_video, 4)
            self.assertGreater(row.wall_time_s, 0.)
            self.assertTrue(0. <= row.accuracy <= 1.)

    def test_rows_are_sorted(self):
        report = run_experiment_fov_count(BASE, [32, 24], [MethodSpec(LCSS), MethodSpec(LCVS_MBR)], k=2)
        keys = [row.sort_key() for row in report.rows]
        self.assertEqual(keys, sorted(keys))

    def test_oracle_rows_are_exact(self):
        methods = [MethodSpec(LCVS_MBT), MethodSpec(LCVS_ORACLE)]
        report = run_experiment_fov_count(BASE, [24, 28], methods, k=2, modes=(RANDOM,))
        for row in report.select(method=LCVS_ORACLE):
            self.assertEqual(row.accuracy, 1.)
        self.assertEqual(len(report.select(mode=RANDOM)), 4)

    def test_view_distance(self):
        methods = [MethodSpec(LCVS_MBS), MethodSpec(LCVS_MBR)]
        report = run_experiment_view_distance(BASE, [10., 60.], methods, k=2)

        self.assertEqual(report.sweep, VIEW_DISTANCE)
        self.assertEqual(len(report), 2 * 2 * 2)
        self.assertEqual({row.sweep_value for row in report.rows}, {10., 60.})
        self.assertEqual({row.n_videos for row in report.rows}, {6})

    def test_deterministic(self):
        methods = [MethodSpec(LCSS), MethodSpec(LCVS_MBR)]
        first = run_experiment_view_distance(BASE, [10., 30.], methods, k=2)
        second = run_experiment_view_distance(BASE, [10., 30.], methods, k=2, threads=2)
        self.assertEqual(_without_timing(first), _without_timing(second))

    def test_invalid_sweeps(self):
        with self.assertRaises(ValueError):
            run_experiment_view_distance(BASE, [10.], k=2)
        with self.assertRaises(ValueError):
            run_experiment_fov_count(BASE, [8, 12], k=2)


class TestReport(TestBench):
    def setUp(self):
        super().setUp()
        self.report = ExperimentReport(sweep=VIEW_DISTANCE, rows=[
            ExperimentRow(20., LCVS_MBS, RANDOM, .5, .125, 40, 25, 42),
            ExperimentRow(10., LCVS_MBS, RANDOM, .75, .25, 40, 25, 42),
            ExperimentRow(10., LCSS, STRAIGHT, .25, .0625, 40, 25, 42),
        ])

    def test_sorted_on_creation(self):
        self.assertEqual([(row.sweep_value, row.method) for row in self.report.rows],
                         [(10., LCSS), (10., LCVS_MBS), (20., LCVS_MBS)])

    def test_empty_csv(self):
        path = self._path('empty.csv')
        emit_report(ExperimentReport(sweep=FOV_COUNT), path)
        self.assertEqual(self._read(path), ','.join(REPORT_COLUMNS) + '\n')

    def test_csv(self):
        path = self._path('reports/viewdist.csv')
        emit_report(self.report, path, 'csv')
        lines = self._read(path).splitlines()

        self.assertEqual(lines[0], 'sweep_value,method,mode,accuracy,wall_time_s,n_videos,frames_per_video,seed')
        self.assertEqual(lines[1], '10,lcss,straight,0.25,0.062500,40,25,42')
        self.assertEqual(len(lines), 4)

    def test_json_round_trip(self):
        path = self._path('viewdist.json')
        emit_report(self.report, path, 'json')
        self.assertEqual(load_report(path), self.report)

    def test_unknown_format(self):
        with self.assertRaises(ValueError):
            emit_report(self.report, self._path('report.xml'), 'xml')
