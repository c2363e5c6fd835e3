import csv
import logging
import time
from dataclasses import dataclass
from typing import List, Sequence, Dict, Any, Tuple

import numpy as np

from lcvskit import GeoVideo, UnknownId, IdMismatch, ParseError
from lcvskit.bench._methods import MethodSpec
from lcvskit.math import Summary
from lcvskit.pipeline import mp_apply, format_elapsed
from lcvskit.shell import open_output


@dataclass
class DistanceMatrix:
    """Dense symmetric matrix of pairwise distances; Hausdorff matrices are in meters and not normalized."""
    ids: List[str]
    values: np.ndarray
    normalized: bool = True

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        if self.values.shape != (len(self.ids), len(self.ids)):
            raise ValueError(f'Matrix shape {self.values.shape} does not match {len(self.ids)} ids')
        if len(set(self.ids)) != len(self.ids):
            raise ValueError('Video ids must be unique')

    def index(self, video_id: str) -> int:
        try:
            return self.ids.index(video_id)
        except ValueError:
            raise UnknownId(video_id) from None

    def distance(self, a: str, b: str) -> float:
        return float(self.values[self.index(a), self.index(b)])

    def to_csv(self, path: str) -> None:
        with open_output(path, newline='') as f_output:
            writer = csv.writer(f_output, lineterminator='\n')
            writer.writerow(['id'] + self.ids)
            for video_id, row in zip(self.ids, self.values):
                writer.writerow([video_id] + [repr(float(value)) for value in row])

    @classmethod
    def from_csv(cls, path: str, normalized: bool = True) -> 'DistanceMatrix':
        with open(path, 'r', encoding='utf-8', newline='') as f_input:
            rows = list(csv.reader(f_input))
        if not rows:
            raise ParseError(path, None, 'empty matrix file')

        ids = rows[0][1:]
        if len(rows) - 1 != len(ids):
            raise ParseError(path, None, f'expected {len(ids)} rows, got {len(rows) - 1}')

        values = np.empty((len(ids), len(ids)))
        for i, (expected, row) in enumerate(zip(ids, rows[1:])):
            line = i + 2
            if len(row) != len(ids) + 1 or row[0] != expected:
                raise ParseError(path, line, f'expected a row for "{expected}" with {len(ids)} values')
            try:
                values[i] = [float(value) for value in row[1:]]
            except ValueError as e:
                raise ParseError(path, line, str(e)) from e

        return cls(ids=ids, values=values, normalized=normalized)

    def to_json(self) -> Dict[str, Any]:
        return {'ids': self.ids, 'values': self.values.tolist(), 'normalized': self.normalized}


_worker_state: Dict[str, Any] = {}


def _init_worker(videos: Sequence[GeoVideo], spec: MethodSpec) -> None:
    _worker_state['videos'] = videos
    _worker_state['spec'] = spec


def _pair_distance(pair: Tuple[int, int]) -> float:
    videos, spec = _worker_state['videos'], _worker_state['spec']
    i, j = pair
    return spec.distance(videos[i], videos[j])


def distance_matrix(videos: Sequence[GeoVideo], spec: MethodSpec, threads: int = 1) -> DistanceMatrix:
    """
    Computes every unordered pair once and mirrors it. Results are gathered by pair index, so the matrix does
    not depend on the number of workers.
    """
    if len(videos) < 2:
        raise ValueError(f'A distance matrix needs at least 2 videos, got {len(videos)}')

    logger = logging.getLogger('lcvskit.matrix')
    begin = time.perf_counter()

    count = len(videos)
    pairs = [(i, j) for i in range(count) for j in range(i + 1, count)]
    batch_size = max(1, len(pairs) // (max(1, threads) * 16))

    values = np.zeros((count, count))
    results = mp_apply(pairs, _pair_distance, pool_init=_init_worker, pool_init_args=(list(videos), spec),
                       batch_size=batch_size, ordered=True, threads=threads)
    try:
        for distance, (i, j) in zip(results, pairs):
            values[i, j] = values[j, i] = distance
    finally:
        # the inline path initializes this process, drop the dataset it holds
        _worker_state.clear()

    logger.info('Computed %d pairs with %s in %s', len(pairs), spec, format_elapsed(time.perf_counter() - begin))
    return DistanceMatrix(ids=[video.id for video in videos], values=values, normalized=spec.normalized)


def knn(matrix: DistanceMatrix, query_id: str, k: int) -> List[str]:
    """The k nearest videos to query_id, closest first; ties go to the lexicographically smaller id."""
    query = matrix.index(query_id)
    if not 1 <= k < len(matrix.ids):
        raise ValueError(f'k must be in [1, {len(matrix.ids) - 1}]: {k}')

    neighbours = sorted((float(matrix.values[query, j]), video_id)
                        for j, video_id in enumerate(matrix.ids) if j != query)
    return [video_id for _, video_id in neighbours[:k]]


def accuracy_eval(method_matrix: DistanceMatrix, oracle_matrix: DistanceMatrix, k: int) -> float:
    """Mean precision@k of the method's neighbourhoods against the oracle's, over every video."""
    if len(method_matrix.ids) != len(oracle_matrix.ids) or set(method_matrix.ids) != set(oracle_matrix.ids):
        raise IdMismatch('Method and oracle matrices cover different videos')

    precision = Summary.of(len(set(knn(method_matrix, video_id, k)) & set(knn(oracle_matrix, video_id, k))) / k
                           for video_id in oracle_matrix.ids)

    logging.getLogger('lcvskit.matrix').debug('precision@%d over %d queries: mean=%.4f stddev=%.4f min=%.4f',
                                              k, precision.count, precision.mean, precision.stddev, precision.low)
    return precision.mean
