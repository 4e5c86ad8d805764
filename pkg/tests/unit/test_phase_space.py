import cmath
import math
import unittest
from unittest import mock

import numpy as np
from hypothesis import given, settings, strategies as st

from london_states.exceptions import InvalidGrid, InvalidState
from london_states.fock import FockVector
from london_states.phase_space import (
    GridSpec,
    coherent_overlap,
    husimi_grid,
    husimi_point,
)
from london_states.states import Family, StateSpec, build, rotate_phase

from .oracles import glauber_amplitudes, husimi_value


class CoherentOverlapTestCase(unittest.TestCase):

    def test_vacuum_at_origin(self):
        overlap = coherent_overlap(0j, FockVector.vacuum(32))
        self.assertEqual(overlap.amplitude, 1.0)
        self.assertFalse(overlap.underflow)

    def test_number_state_at_origin(self):
        for k in (1, 4):
            with self.subTest(k=k):
                self.assertEqual(coherent_overlap(0j, FockVector.number_state(k, 32)).amplitude, 0.0)

    def test_glauber_state(self):
        beta = 1.5 + 0.5j
        v = FockVector(glauber_amplitudes(beta, 60))
        for alpha in (0j, 1.0, -0.3 + 2.0j, beta, 2.5 - 1.0j):
            with self.subTest(alpha=alpha):
                overlap = coherent_overlap(alpha, v).amplitude
                self.assertAlmostEqual(abs(overlap) ** 2, math.exp(-abs(alpha - beta) ** 2), delta=1e-12)

    def test_underflow_is_flagged(self):
        with self.assertLogs('london_states.phase_space', 'WARNING'):
            overlap = coherent_overlap(40.0, FockVector.vacuum(32))
        self.assertTrue(overlap.underflow)
        self.assertEqual(overlap.amplitude, 0j)


class HusimiPointTestCase(unittest.TestCase):

    def test_vacuum(self):
        v = FockVector.vacuum(32)
        self.assertAlmostEqual(husimi_point(0j, v), 1 / math.pi, delta=1e-15)
        self.assertAlmostEqual(husimi_point(2.0, v), math.exp(-4.0) / math.pi, delta=1e-15)

    @settings(max_examples=200, deadline=None)
    @given(
        st.floats(min_value=-6.0, max_value=6.0, allow_nan=False, allow_infinity=False),
        st.floats(min_value=-6.0, max_value=6.0, allow_nan=False, allow_infinity=False),
        st.floats(min_value=-math.pi, max_value=math.pi, allow_nan=False, allow_infinity=False),
    )
    def test_phase_covariance(self, re, im, theta):
        v = build(StateSpec(Family.MODIFIED, 3.0))
        w = rotate_phase(v, theta)
        alpha = complex(re, im)
        self.assertAlmostEqual(husimi_point(alpha, w), husimi_point(alpha * cmath.exp(1j * theta), v), delta=1e-12)

    @settings(max_examples=200, deadline=None)
    @given(
        st.sampled_from(list(Family)),
        st.floats(min_value=0.0, max_value=10.0, allow_nan=False, allow_infinity=False),
        st.floats(min_value=-8.0, max_value=8.0, allow_nan=False, allow_infinity=False),
        st.floats(min_value=-8.0, max_value=8.0, allow_nan=False, allow_infinity=False),
    )
    def test_bounds_and_reflection(self, family, x, re, im):
        v = build(StateSpec(family, x))
        q = husimi_point(complex(re, im), v)
        self.assertGreaterEqual(q, 0.0)
        self.assertLessEqual(q, 1 / math.pi + 1e-15)
        self.assertAlmostEqual(husimi_point(complex(re, -im), v), q, delta=1e-12)


class GridSpecTestCase(unittest.TestCase):

    def test_square(self):
        spec = GridSpec.square(3.0, 61)
        self.assertEqual(spec.x_range, (-3.0, 3.0))
        self.assertEqual(spec.xs[30], 0.0)
        self.assertAlmostEqual(spec.cell_area, 0.01)

    def test_default_for_vacuum(self):
        spec = GridSpec.default_for(FockVector.vacuum(32))
        self.assertEqual(spec.x_range, (-5.0, 5.0))
        self.assertEqual((spec.nx, spec.ny), (201, 201))

    def test_invalid(self):
        with self.assertRaises(InvalidGrid):
            GridSpec((1.0, 1.0), (0.0, 1.0))
        with self.assertRaises(InvalidGrid):
            GridSpec((0.0, 1.0), (0.0, float('nan')))
        with self.assertRaises(InvalidGrid):
            GridSpec((0.0, 1.0), (0.0, 1.0), nx=1)


class HusimiGridTestCase(unittest.TestCase):

    def test_vacuum_peaks_at_origin(self):
        grid = husimi_grid(FockVector.vacuum(32), GridSpec.square(3.0, 61))
        self.assertEqual(grid.argmax, (30, 30))
        self.assertEqual(grid.argmax_alpha, 0j)
        self.assertAlmostEqual(grid.max_value, 1 / math.pi, delta=1e-15)

    def test_orientation(self):
        v = FockVector(glauber_amplitudes(2.0 + 1.0j, 40))
        grid = husimi_grid(v, GridSpec((-4.0, 4.0), (-4.0, 4.0), 81, 41))
        self.assertEqual(grid.values.shape, (81, 41))
        self.assertAlmostEqual(grid.argmax_alpha.real, 2.0, delta=1e-12)
        self.assertAlmostEqual(grid.argmax_alpha.imag, 1.0, delta=1e-12)

    def test_modified_state_maximum(self):
        # |<alpha|psi>|^2 / pi of the unit vector; a 241 x 241 scipy scan gives 0.0913 and 0.0637
        for x, expected in ((10.0, 0.0910), (20.0, 0.0637)):
            with self.subTest(x=x):
                v = build(StateSpec(Family.MODIFIED, x))
                grid = husimi_grid(v)
                self.assertAlmostEqual(grid.max_value, expected, delta=0.002)
                self.assertAlmostEqual(grid.max_value, husimi_value(grid.argmax_alpha, v.amplitudes), delta=1e-12)

    def test_mass_and_bounds(self):
        grid = husimi_grid(build(StateSpec(Family.MODIFIED, 10.0)))
        self.assertAlmostEqual(grid.mass(), 1.0, delta=0.02)
        self.assertGreaterEqual(float(grid.values.min()), 0.0)
        self.assertLessEqual(grid.max_value, 1 / math.pi + 1e-15)
        self.assertEqual(grid.underflow_cells, 0)

    def test_values_are_read_only(self):
        grid = husimi_grid(FockVector.vacuum(32), GridSpec.square(1.0, 5))
        with self.assertRaises(ValueError):
            grid.values[0, 0] = 1.0

    def test_backends_agree(self):
        v = build(StateSpec(Family.LONDON, 4.0, 0.3))
        spec = GridSpec.square(6.0, 41)
        with mock.patch('london_states.conf.settings.BACKEND', 'london_states.backends.standard'):
            serial = husimi_grid(v, spec)
        with mock.patch('london_states.conf.settings.BACKEND', 'london_states.backends.threaded'):
            threaded = husimi_grid(v, spec)
        np.testing.assert_array_equal(serial.values, threaded.values)

    def test_rejects_unnormalised_state(self):
        with self.assertRaises(InvalidState):
            husimi_grid(FockVector([1.0, 1.0]))
