import unittest

from bench import line_video

from lcvskit import ApproxMethod, LcvsParams, lcvs_distance
from lcvskit.baselines import LcssParams, lcss_distance, hausdorff_distance
from lcvskit.bench import MethodSpec, METHOD_NAMES, LCVS_MBS, LCVS_MBT, LCVS_MBR, LCVS_ORACLE, LCSS, HAUSDORFF


class TestMethodSpec(unittest.TestCase):
    def setUp(self):
        self.a = line_video('a', 0.)
        self.b = line_video('b', 6.)

    def test_names(self):
        self.assertEqual(METHOD_NAMES, ('lcvs-mbs', 'lcvs-mbt', 'lcvs-mbr', 'lcvs-oracle', 'lcss', 'hausdorff'))

    def test_unknown_method(self):
        with self.assertRaises(ValueError):
            MethodSpec('dtw')

    def test_invalid_parameters(self):
        with self.assertRaises(ValueError):
            MethodSpec(LCVS_MBS, segment_angle=90.)
        with self.assertRaises(ValueError):
            MethodSpec(LCSS, epsilon=0.)
        with self.assertRaises(ValueError):
            MethodSpec(LCVS_MBT, sigma=-1)

    def test_approx(self):
        self.assertEqual(MethodSpec(LCVS_MBS, segment_angle=10.).approx, ApproxMethod.mbs(10.))
        self.assertEqual(MethodSpec(LCVS_MBT).approx, ApproxMethod.mbt())
        self.assertEqual(MethodSpec(LCVS_MBR).approx, ApproxMethod.mbr())
        self.assertEqual(MethodSpec(LCVS_ORACLE).approx, ApproxMethod.oracle())
        self.assertIsNone(MethodSpec(LCSS).approx)

    def test_normalized(self):
        self.assertTrue(MethodSpec(LCSS).normalized)
        self.assertFalse(MethodSpec(HAUSDORFF).normalized)

    def test_distance(self):
        self.assertEqual(MethodSpec(LCVS_MBT, sigma=2).distance(self.a, self.b),
                         lcvs_distance(self.a, self.b, LcvsParams(sigma=2, method=ApproxMethod.mbt())))
        self.assertEqual(MethodSpec(LCSS, epsilon=5.).distance(self.a, self.b),
                         lcss_distance(self.a, self.b, LcssParams(epsilon=5.)))
        self.assertEqual(MethodSpec(HAUSDORFF).distance(self.a, self.b), hausdorff_distance(self.a, self.b))

    def test_str(self):
        self.assertEqual(str(MethodSpec(LCVS_MBS)), 'lcvs-mbs(mbs(5), sigma=1)')
        self.assertEqual(str(MethodSpec(LCSS)), 'lcss(epsilon=10, sigma=1)')
        self.assertEqual(str(MethodSpec(HAUSDORFF)), 'hausdorff')
