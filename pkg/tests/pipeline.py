import unittest

from lcvskit.pipeline import mp_apply, format_elapsed

_offset = {'value': 0}


def _init(offset: int) -> None:
    _offset['value'] = offset


def _shift(value: int) -> int:
    return value + _offset['value']


class TestMpApply(unittest.TestCase):
    def test_inline(self):
        results = list(mp_apply(range(10), _shift, pool_init=_init, pool_init_args=(100,), threads=1))
        self.assertEqual(results, list(range(100, 110)))

    def test_pool_is_ordered(self):
        results = list(mp_apply(range(50), _shift, pool_init=_init, pool_init_args=(7,), batch_size=3, threads=2))
        self.assertEqual(results, [value + 7 for value in range(50)])

    def test_empty(self):
        self.assertEqual(list(mp_apply([], _shift, threads=2)), [])


class TestFormatElapsed(unittest.TestCase):
    def test_seconds(self):
        self.assertEqual(format_elapsed(5.123), '5.12s')

    def test_minutes(self):
        self.assertEqual(format_elapsed(125), '2m 5s')

    def test_hours(self):
        self.assertEqual(format_elapsed(3661), '1h 1m 1s')

    def test_days(self):
        self.assertEqual(format_elapsed(2 * 86400 + 7200 + 120 + 1), '2d 2h 2m 1s')
