import unittest

import numpy as np

from bench import matrix_of

from lcvskit import UnknownId, IdMismatch
from lcvskit.bench import knn, accuracy_eval


class TestKnn(unittest.TestCase):
    def test_duplicate_of_query(self):
        matrix = matrix_of(['q', 'dup', 'other'], [[0., 0., .7], [0., 0., .7], [.7, .7, 0.]])
        self.assertEqual(knn(matrix, 'q', 1), ['dup'])

    def test_ties_break_on_id(self):
        ids = ['q', 'e', 'c', 'd', 'a', 'b']
        values = np.full((6, 6), .5)
        np.fill_diagonal(values, 0.)
        self.assertEqual(knn(matrix_of(ids, values), 'q', 3), ['a', 'b', 'c'])

    def test_all_neighbours(self):
        matrix = matrix_of(['a', 'b', 'c', 'd'], [[0., .3, .1, .2], [.3, 0., .4, .5], [.1, .4, 0., .6],
                                                  [.2, .5, .6, 0.]])
        self.assertEqual(knn(matrix, 'a', 3), ['c', 'd', 'b'])

    def test_invalid_k(self):
        matrix = matrix_of(['a', 'b', 'c'], np.zeros((3, 3)))
        with self.assertRaises(ValueError):
            knn(matrix, 'a', 0)
        with self.assertRaises(ValueError):
            knn(matrix, 'a', 3)

    def test_unknown_query(self):
        with self.assertRaises(UnknownId):
            knn(matrix_of(['a', 'b'], np.zeros((2, 2))), 'z', 1)


def _random_matrix(rng: np.random.Generator, n: int) -> np.ndarray:
    values = rng.random((n, n))
    values = (values + values.T) / 2
    np.fill_diagonal(values, 0.)
    return values


class TestAccuracy(unittest.TestCase):
    def test_oracle_against_itself(self):
        ids = [f'v{i}' for i in range(6)]
        matrix = matrix_of(ids, _random_matrix(np.random.default_rng(1), 6))
        self.assertEqual(accuracy_eval(matrix, matrix, 2), 1.)

    def test_reversed_ranking(self):
        ids = [f'v{i}' for i in range(5)]
        oracle = _random_matrix(np.random.default_rng(2), 5)
        method = 1. - oracle
        np.fill_diagonal(method, 0.)
        self.assertEqual(accuracy_eval(matrix_of(ids, method), matrix_of(ids, oracle), 2), 0.)

    def test_hand_computed_precision(self):
        rng = np.random.default_rng(3)
        ids = [f'v{i}' for i in range(10)]
        method, oracle = _random_matrix(rng, 10), _random_matrix(rng, 10)

        expected = 0.
        for i in range(10):
            others = [j for j in range(10) if j != i]
            found = set(sorted(others, key=lambda j: method[i, j])[:3])
            wanted = set(sorted(others, key=lambda j: oracle[i, j])[:3])
            expected += len(found & wanted) / 3
        expected /= 10

        self.assertAlmostEqual(accuracy_eval(matrix_of(ids, method), matrix_of(ids, oracle), 3), expected, places=12)

    def test_same_ids_in_other_order(self):
        ids = ['a', 'b', 'c', 'd']
        values = _random_matrix(np.random.default_rng(4), 4)
        order = [2, 0, 3, 1]
        shuffled = matrix_of([ids[i] for i in order], values[np.ix_(order, order)])
        self.assertEqual(accuracy_eval(shuffled, matrix_of(ids, values), 1), 1.)

    def test_id_mismatch(self):
        with self.assertRaises(IdMismatch):
            accuracy_eval(matrix_of(['a', 'b', 'c'], np.zeros((3, 3))), matrix_of(['a', 'b', 'd'], np.zeros((3, 3))), 1)
