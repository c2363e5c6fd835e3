import csv
import json
import logging
import time
from dataclasses import dataclass, field, replace, asdict
from typing import List, Sequence, Dict, Any, Callable, Optional

from lcvskit.bench._matrix import DistanceMatrix, distance_matrix, accuracy_eval
from lcvskit.bench._methods import MethodSpec, LCSS, LCVS_MBS, LCVS_MBT, LCVS_MBR, LCVS_ORACLE
from lcvskit.pipeline import format_elapsed
from lcvskit.shell import open_output
from lcvskit.trajectory import SynthConfig, synthesize, DIRECTION_MODES

FOV_COUNT = 'fov_count'
VIEW_DISTANCE = 'view_distance'

DEFAULT_K = 5
DEFAULT_METHODS = (LCSS, LCVS_MBS, LCVS_MBT, LCVS_MBR)
DEFAULT_FOV_COUNT_LEVELS = (250, 500, 750, 1000)
DEFAULT_VIEW_DISTANCE_LEVELS = (10., 20., 30., 40., 50., 60.)

REPORT_COLUMNS = ('sweep_value', 'method', 'mode', 'accuracy', 'wall_time_s', 'n_videos', 'frames_per_video', 'seed')
REPORT_FORMATS = ('csv', 'json')


@dataclass(frozen=True)
class ExperimentRow:
    sweep_value: float
    method: str
    mode: str
    accuracy: float
    wall_time_s: float
    n_videos: int
    frames_per_video: int
    seed: int

    @classmethod
    def from_json(cls, json_data: Dict[str, Any]) -> 'ExperimentRow':
        return cls(**{column: json_data[column] for column in REPORT_COLUMNS})

    def to_json(self) -> Dict[str, Any]:
        return asdict(self)

    def sort_key(self):
        return self.sweep_value, self.method, self.mode


@dataclass
class ExperimentReport:
    sweep: str
    rows: List[ExperimentRow] = field(default_factory=list)

    def __post_init__(self):
        self.rows = sorted(self.rows, key=ExperimentRow.sort_key)

    def add(self, row: ExperimentRow) -> None:
        self.rows.append(row)
        self.rows.sort(key=ExperimentRow.sort_key)

    def select(self, *, method: Optional[str] = None, mode: Optional[str] = None) -> List[ExperimentRow]:
        return [row for row in self.rows
                if (method is None or row.method == method) and (mode is None or row.mode == mode)]

    @classmethod
    def from_json(cls, json_data: Dict[str, Any]) -> 'ExperimentReport':
        return cls(sweep=json_data['sweep'], rows=[ExperimentRow.from_json(row) for row in json_data['rows']])

    def to_json(self) -> Dict[str, Any]:
        return {'sweep': self.sweep, 'rows': [row.to_json() for row in self.rows]}

    def __len__(self) -> int:
        return len(self.rows)


def _run_sweep(sweep: str, base: SynthConfig, levels: Sequence[float],
               configure: Callable[[SynthConfig, float], SynthConfig], methods: Sequence[MethodSpec], k: int, *,
               oracle: Optional[MethodSpec] = None, modes: Sequence[str] = DIRECTION_MODES,
               threads: int = 1) -> ExperimentReport:
    if len(levels) < 2:
        raise ValueError(f'A sweep needs at least 2 levels, got {len(levels)}')

    logger = logging.getLogger('lcvskit.bench')
    oracle = oracle or MethodSpec(LCVS_ORACLE)
    report = ExperimentReport(sweep=sweep)

    for mode in modes:
        for level in levels:
            cfg = configure(replace(base, direction_mode=mode), level)
            videos = synthesize(cfg)
            if cfg.n_videos <= k:
                raise ValueError(f'{sweep}={level:g}: {cfg.n_videos} videos are too few for k={k}')

            matrices: Dict[MethodSpec, DistanceMatrix] = {}
            timings: Dict[MethodSpec, float] = {}
            for spec in methods:
                # timing mode: one worker, synthesis and I/O excluded
                begin = time.perf_counter()
                matrices[spec] = distance_matrix(videos, spec, threads=1)
                timings[spec] = max(time.perf_counter() - begin, 1e-9)

            oracle_matrix = matrices.get(oracle) or distance_matrix(videos, oracle, threads=threads)

            for spec in methods:
                accuracy = accuracy_eval(matrices[spec], oracle_matrix, k)
                report.add(ExperimentRow(sweep_value=level, method=spec.name, mode=mode, accuracy=accuracy,
                                         wall_time_s=timings[spec], n_videos=cfg.n_videos,
                                         frames_per_video=cfg.frames_per_video, seed=cfg.seed))
                logger.info('%s=%g mode=%s method=%s accuracy=%.4f time=%s', sweep, level, mode, spec.name,
                            accuracy, format_elapsed(timings[spec]))

    return report


def run_experiment_fov_count(base: SynthConfig, levels: Sequence[int] = DEFAULT_FOV_COUNT_LEVELS,
                             methods: Sequence[MethodSpec] = (), k: int = DEFAULT_K, **kwargs) -> ExperimentReport:
    """Sweeps the total number of FoVs; frames per video stay fixed and the video count follows the level."""

    def configure(cfg: SynthConfig, level: float) -> SynthConfig:
        return replace(cfg, n_videos=max(1, int(level) // cfg.frames_per_video))

    methods = methods or [MethodSpec(name) for name in DEFAULT_METHODS]
    return _run_sweep(FOV_COUNT, base, levels, configure, methods, k, **kwargs)


def run_experiment_view_distance(base: SynthConfig, levels: Sequence[float] = DEFAULT_VIEW_DISTANCE_LEVELS,
                                 methods: Sequence[MethodSpec] = (), k: int = DEFAULT_K,
                                 **kwargs) -> ExperimentReport:
    """Sweeps the viewable radius of every FoV."""

    def configure(cfg: SynthConfig, level: float) -> SynthConfig:
        return replace(cfg, r=float(level))

    methods = methods or [MethodSpec(name) for name in DEFAULT_METHODS]
    return _run_sweep(VIEW_DISTANCE, base, levels, configure, methods, k, **kwargs)


def emit_report(report: ExperimentReport, path: str, fmt: str = 'csv') -> None:
    if fmt not in REPORT_FORMATS:
        raise ValueError(f'Unknown report format "{fmt}", expected one of {", ".join(REPORT_FORMATS)}')

    with open_output(path, newline='') as f_output:
        if fmt == 'json':
            f_output.write(json.dumps(report.to_json(), indent=2, sort_keys=True) + '\n')
            return

        writer = csv.writer(f_output, lineterminator='\n')
        writer.writerow(REPORT_COLUMNS)
        for row in report.rows:
            writer.writerow([format(row.sweep_value, 'g'), row.method, row.mode, repr(row.accuracy),
                             f'{row.wall_time_s:.6f}', row.n_videos, row.frames_per_video, row.seed])


def load_report(path: str) -> ExperimentReport:
    with open(path, 'r', encoding='utf-8') as f_input:
        return ExperimentReport.from_json(json.load(f_input))
