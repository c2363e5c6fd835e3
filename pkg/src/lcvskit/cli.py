import argparse
import json
import logging
import sys
from typing import List, Optional, Dict, Any

from lcvskit import LcvsError, LcvsParams, metric_audit, DEFAULT_SIGMA, DEFAULT_SEGMENT_ANGLE
from lcvskit.baselines import DEFAULT_EPSILON
from lcvskit.bench import MethodSpec, METHOD_NAMES, LCVS_MBS, LCVS_ORACLE, LCSS, HAUSDORFF, DEFAULT_K, \
    DEFAULT_METHODS, DEFAULT_FOV_COUNT_LEVELS, DEFAULT_VIEW_DISTANCE_LEVELS, REPORT_FORMATS, DistanceMatrix, \
    distance_matrix, knn, run_experiment_fov_count, run_experiment_view_distance, emit_report
from lcvskit.shell import open_output, STDOUT
from lcvskit.trajectory import SynthConfig, DIRECTION_MODES, DEFAULT_RADIUS, DEFAULT_LENS_ANGLE, GpsCsvReader, \
    BddInfoReader, ingest, synthesize, save_trajectories, load_trajectories

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DATA = 3

_SYNTH_FLAGS = {'n_videos': 'n_videos', 'frames': 'frames_per_video', 'r': 'r', 'delta': 'delta', 'mode': 'direction_mode',
                'extent': 'extent', 'step': 'step', 'jitter': 'heading_jitter', 'seed': 'seed'}


def _method_flags() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument('--method', choices=METHOD_NAMES, default=LCVS_MBS, help='distance method (default: %(default)s)')
    parser.add_argument('--sigma', type=int, default=DEFAULT_SIGMA,
                        help='maximum index offset between matched frames (default: %(default)s)')
    parser.add_argument('--segment-angle', type=float, default=DEFAULT_SEGMENT_ANGLE,
                        help='MBS segment angle in degrees (default: %(default)s)')
    parser.add_argument('--epsilon', type=float, default=DEFAULT_EPSILON,
                        help='LCSS distance threshold in meters (default: %(default)s)')
    return parser


def _synth_flags() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument('--config', default=None, help='JSON file with synthetic dataset settings')
    parser.add_argument('--n-videos', type=int, default=None)
    parser.add_argument('--frames', type=int, default=None, help='frames per video')
    parser.add_argument('--r', type=float, default=None, help='viewable radius in meters')
    parser.add_argument('--delta', type=float, default=None, help='lens angle in degrees')
    parser.add_argument('--mode', choices=DIRECTION_MODES, default=None, help='camera direction model')
    parser.add_argument('--extent', type=float, default=None, help='side of the start square in meters')
    parser.add_argument('--step', type=float, default=None, help='meters per frame')
    parser.add_argument('--jitter', type=float, default=None, help='heading jitter half-width in degrees')
    parser.add_argument('--seed', type=int, default=None)
    return parser


def _output_flags(formats) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument('--out', default=STDOUT, help='output file, "-" for stdout (default)')
    parser.add_argument('--format', choices=formats, default=formats[0], help='output format (default: %(default)s)')
    return parser


def _threads_flag() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument('--threads', type=int, default=1, help='worker processes (default: %(default)s)')
    return parser


def _ingest_flags() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument('paths', nargs='+', help='input files, one video each')
    parser.add_argument('--r', type=float, default=DEFAULT_RADIUS,
                        help='viewable radius in meters (default: %(default)s)')
    parser.add_argument('--delta', type=float, default=DEFAULT_LENS_ANGLE,
                        help='lens angle in degrees (default: %(default)s)')
    parser.add_argument('--out', default=STDOUT, help='trajectory JSON output, "-" for stdout (default)')
    return parser


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='lcvskit',
                                     description='Similarity of geo-tagged videos by common field of view.')
    parser.add_argument('-v', '--verbose', action='store_true', help='log progress at INFO level')
    parser.add_argument('--log-file', default=None, help='write logs to this file instead of stderr')
    commands = parser.add_subparsers(dest='command', required=True)

    method, synth, threads, ingest_ = _method_flags(), _synth_flags(), _threads_flag(), _ingest_flags()

    commands.add_parser('synth', parents=[synth], help='generate a synthetic trajectory dataset') \
        .add_argument('--out', default=STDOUT, help='trajectory JSON output, "-" for stdout (default)')
    commands.add_parser('ingest', parents=[ingest_], help='ingest GPS CSV files (t,lat,lon[,course])')
    commands.add_parser('ingest-bdd', parents=[ingest_], help='ingest BDD100K per-video info JSON files')

    dist = commands.add_parser('dist', parents=[method], help='distance between two videos of a dataset')
    dist.add_argument('dataset', help='trajectory JSON file')
    dist.add_argument('a', help='first video id')
    dist.add_argument('b', help='second video id')

    matrix = commands.add_parser('matrix', parents=[method, threads, _output_flags(('csv', 'json'))],
                                 help='pairwise distance matrix of a dataset')
    matrix.add_argument('dataset', help='trajectory JSON file')

    knn_ = commands.add_parser('knn', help='nearest neighbours of a video in a matrix CSV')
    knn_.add_argument('matrix', help='matrix CSV as written by the matrix command')
    knn_.add_argument('query', help='query video id')
    knn_.add_argument('--k', type=int, default=DEFAULT_K, help='number of neighbours (default: %(default)s)')

    for name, levels, help_ in (('bench-fovs', DEFAULT_FOV_COUNT_LEVELS, 'accuracy and runtime vs. number of FoVs'),
                                ('bench-viewdist', DEFAULT_VIEW_DISTANCE_LEVELS, 'accuracy vs. viewable distance')):
        bench = commands.add_parser(name, parents=[synth, threads, _output_flags(REPORT_FORMATS)], help=help_)
        bench.add_argument('--levels', type=float, nargs='+', default=list(levels),
                           help='sweep levels (default: %(default)s)')
        bench.add_argument('--methods', choices=METHOD_NAMES, nargs='+', default=list(DEFAULT_METHODS),
                           help='methods to compare (default: %(default)s)')
        bench.add_argument('--k', type=int, default=DEFAULT_K, help='precision@k (default: %(default)s)')
        bench.add_argument('--sigma', type=int, default=DEFAULT_SIGMA)
        bench.add_argument('--segment-angle', type=float, default=DEFAULT_SEGMENT_ANGLE)
        bench.add_argument('--epsilon', type=float, default=DEFAULT_EPSILON)

    audit = commands.add_parser('audit-metric', parents=[method], help='check the metric properties of LCVS distance')
    audit.add_argument('dataset', help='trajectory JSON file')
    audit.add_argument('--out', default=STDOUT, help='audit JSON output, "-" for stdout (default)')

    return parser


def _synth_config(args: argparse.Namespace) -> SynthConfig:
    settings: Dict[str, Any] = {}
    if args.config is not None:
        with open(args.config, 'r', encoding='utf-8') as f_input:
            settings.update(json.load(f_input))
    for flag, key in _SYNTH_FLAGS.items():
        value = getattr(args, flag)
        if value is not None:
            settings[key] = value
    return SynthConfig.from_json(settings)


def _method_spec(args: argparse.Namespace, name: Optional[str] = None) -> MethodSpec:
    return MethodSpec(name or args.method, sigma=args.sigma, segment_angle=args.segment_angle, epsilon=args.epsilon)


def _write_json(path: str, data: Any) -> None:
    with open_output(path) as f_output:
        f_output.write(json.dumps(data, indent=2, sort_keys=True) + '\n')


def _synth(args: argparse.Namespace) -> None:
    cfg = _synth_config(args)
    save_trajectories(args.out, synthesize(cfg))


def _ingest(args: argparse.Namespace) -> None:
    reader = BddInfoReader if args.command == 'ingest-bdd' else GpsCsvReader
    dataset = ingest(args.paths, reader, r=args.r, delta=args.delta)
    save_trajectories(args.out, dataset.videos, dataset.projection)


def _dist(args: argparse.Namespace) -> None:
    dataset = load_trajectories(args.dataset)
    print(repr(_method_spec(args).distance(dataset.get(args.a), dataset.get(args.b))))


def _matrix(args: argparse.Namespace) -> None:
    dataset = load_trajectories(args.dataset)
    matrix = distance_matrix(dataset.videos, _method_spec(args), threads=args.threads)
    if args.format == 'json':
        _write_json(args.out, matrix.to_json())
    else:
        matrix.to_csv(args.out)


def _knn(args: argparse.Namespace) -> None:
    matrix = DistanceMatrix.from_csv(args.matrix)
    for video_id in knn(matrix, args.query, args.k):
        print(video_id)


def _bench(args: argparse.Namespace) -> None:
    base = _synth_config(args)
    methods = [_method_spec(args, name) for name in dict.fromkeys(args.methods)]
    oracle = _method_spec(args, LCVS_ORACLE)

    if args.command == 'bench-fovs':
        report = run_experiment_fov_count(base, [int(level) for level in args.levels], methods, args.k,
                                          oracle=oracle, threads=args.threads)
    else:
        report = run_experiment_view_distance(base, args.levels, methods, args.k, oracle=oracle,
                                              threads=args.threads)
    emit_report(report, args.out, args.format)


def _audit(args: argparse.Namespace) -> None:
    spec = _method_spec(args)
    if spec.name in (LCSS, HAUSDORFF):
        raise ValueError(f'The metric audit applies to LCVS methods, not {spec.name}')

    dataset = load_trajectories(args.dataset)
    audit = metric_audit(dataset.videos, LcvsParams(sigma=spec.sigma, method=spec.approx))
    _write_json(args.out, audit.to_json())


_COMMANDS = {
    'synth': _synth, 'ingest': _ingest, 'ingest-bdd': _ingest, 'dist': _dist, 'matrix': _matrix, 'knn': _knn,
    'bench-fovs': _bench, 'bench-viewdist': _bench, 'audit-metric': _audit,
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE

    logging.basicConfig(format='%(asctime)-15s [%(levelname)s] - %(message)s',
                        level=logging.INFO if args.verbose else logging.WARNING, filename=args.log_file)
    logger = logging.getLogger('lcvskit')

    try:
        _COMMANDS[args.command](args)
    except (LcvsError, ValueError, OSError) as e:
        logger.error('%s failed: %s', args.command, e)
        return EXIT_DATA

    return EXIT_OK


if __name__ == '__main__':
    sys.exit(main())
