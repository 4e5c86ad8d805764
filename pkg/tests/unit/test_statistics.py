import math
import unittest

import numpy as np
from hypothesis import given, settings, strategies as st
from scipy.optimize import brentq

from london_states.exceptions import (
    BracketError,
    InvalidArgument,
    InvalidDistribution,
    InvalidState,
    UndefinedStatistic,
)
from london_states.fock import FockVector
from london_states.states import Family, StateSpec, build, rotate_phase
from london_states.statistics import (
    mandel_q,
    mandel_q_at,
    mandel_q_curve,
    moments,
    photon_distribution,
    statistics_report,
    subpoissonian_crossover,
)

from .oracles import geometric_distribution, modified_mandel_q, poisson_distribution


def interior_maxima(p, floor=0.0):
    middle = p[1:-1]
    return int(np.sum((middle > p[:-2]) & (middle > p[2:]) & (middle > floor)))


class PhotonDistributionTestCase(unittest.TestCase):

    def test_vacuum(self):
        p = photon_distribution(FockVector.vacuum(32))
        self.assertEqual(p[0], 1.0)
        self.assertEqual(float(p[1:].sum()), 0.0)

    def test_rejects_unnormalised_state(self):
        with self.assertRaises(InvalidState):
            photon_distribution(FockVector([1.0, 1.0]))

    def test_modified_state_oscillates(self):
        counts = {}
        for x in (10.0, 20.0):
            counts[x] = interior_maxima(photon_distribution(build(StateSpec(Family.MODIFIED, x))), 1e-4)
            with self.subTest(x=x):
                self.assertGreaterEqual(counts[x], 3)
        self.assertGreater(counts[20.0], counts[10.0])

    def test_phase_does_not_change_distribution(self):
        v = build(StateSpec(Family.LONDON, 7.0))
        np.testing.assert_allclose(photon_distribution(rotate_phase(v, 2.3)), photon_distribution(v),
                                   rtol=0, atol=1e-15)


class MomentsTestCase(unittest.TestCase):

    def test_number_states(self):
        self.assertEqual(moments(photon_distribution(FockVector.vacuum(8))), (0.0, 0.0))
        self.assertEqual(moments(photon_distribution(FockVector.number_state(3, 8))), (3.0, 9.0))

    def test_invalid_distributions(self):
        for p in ([], [0.5, 0.4], [1.5, -0.5], [float('nan'), 1.0]):
            with self.subTest(p=p):
                with self.assertRaises(InvalidDistribution):
                    moments(p)

    def test_mean_increases_with_amplitude(self):
        xs = np.arange(0.5, 20.0 + 1e-9, 0.25)
        means = np.array([report.mean for _, report in mandel_q_curve(Family.MODIFIED, xs)])
        self.assertTrue(np.all(np.diff(means) > 0))

    def test_mean_is_nearly_linear_at_large_amplitude(self):
        xs = np.arange(4.0, 20.0 + 1e-9, 0.5)
        means = np.array([report.mean for _, report in mandel_q_curve(Family.MODIFIED, xs)])
        slopes = np.diff(means) / np.diff(xs)
        median = float(np.median(slopes))
        self.assertLess(float(np.max(np.abs(slopes - median))) / median, 0.25)


class MandelQTestCase(unittest.TestCase):

    def test_number_state(self):
        for k in (1, 2, 7):
            with self.subTest(k=k):
                self.assertEqual(mandel_q(photon_distribution(FockVector.number_state(k, 16))), -1.0)

    def test_geometric(self):
        for mean in (0.5, 2.0, 5.0):
            with self.subTest(mean=mean):
                self.assertAlmostEqual(mandel_q(geometric_distribution(mean, 600)), mean, delta=1e-9)

    def test_poisson(self):
        self.assertAlmostEqual(mandel_q(poisson_distribution(6.0, 120)), 0.0, delta=1e-9)

    def test_vacuum_is_undefined(self):
        with self.assertRaises(UndefinedStatistic):
            mandel_q(photon_distribution(FockVector.vacuum(8)))
        self.assertIsNone(statistics_report(FockVector.vacuum(8)).mandel_q)
        self.assertIsNone(statistics_report(FockVector.vacuum(8)).mandel_q_plus_one)

    def test_modified_state_is_subpoissonian_at_small_amplitude(self):
        self.assertLess(mandel_q_at(Family.MODIFIED, 3.0), 0.0)

    def test_report(self):
        v = build(StateSpec(Family.MODIFIED, 4.0))
        report = statistics_report(v)
        p = photon_distribution(v)
        self.assertEqual((report.mean, report.second_moment), moments(p))
        self.assertAlmostEqual(report.variance, report.second_moment - report.mean ** 2)
        self.assertAlmostEqual(report.mandel_q_plus_one, mandel_q(p) + 1.0)
        self.assertEqual(report.tail_mass_dropped, v.truncation_loss)

    @settings(max_examples=200, deadline=None)
    @given(
        st.sampled_from(list(Family)),
        st.floats(min_value=0.1, max_value=15.0, allow_nan=False, allow_infinity=False),
        st.floats(min_value=-math.pi, max_value=math.pi, allow_nan=False, allow_infinity=False),
    )
    def test_phase_invariance(self, family, x, theta):
        plain = statistics_report(build(StateSpec(family, x)))
        rotated = statistics_report(build(StateSpec(family, x, theta)))
        self.assertAlmostEqual(rotated.mean, plain.mean, delta=1e-12 * max(1.0, plain.mean))
        self.assertAlmostEqual(rotated.mandel_q, plain.mandel_q, delta=1e-10)


class CrossoverTestCase(unittest.TestCase):

    def test_modified_crossover(self):
        expected = brentq(modified_mandel_q, 4.0, 8.0, xtol=1e-12)
        self.assertAlmostEqual(expected, 7.0593, delta=1e-4)
        x = subpoissonian_crossover(Family.MODIFIED, 4.0, 8.0)
        self.assertAlmostEqual(x, expected, delta=1e-4)
        self.assertLessEqual(abs(mandel_q_at(Family.MODIFIED, x)), 1e-4)

    def test_accepts_family_name(self):
        self.assertAlmostEqual(subpoissonian_crossover('modified', 4.0, 8.0, xtol=1e-3),
                               subpoissonian_crossover(Family.MODIFIED, 4.0, 8.0, xtol=1e-3))

    def test_bracket_without_sign_change(self):
        with self.assertRaises(BracketError) as ctx:
            subpoissonian_crossover(Family.MODIFIED, 1.0, 3.0)
        self.assertLess(ctx.exception.lo_value, 0.0)
        self.assertLess(ctx.exception.hi_value, 0.0)

    def test_invalid_bracket(self):
        for lo, hi in ((0.0, 3.0), (5.0, 4.0), (1.0, float('inf'))):
            with self.subTest(lo=lo, hi=hi):
                with self.assertRaises(InvalidArgument):
                    subpoissonian_crossover(Family.MODIFIED, lo, hi)
