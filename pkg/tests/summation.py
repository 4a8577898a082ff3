#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""Tests for the compensated summation."""

import math
import unittest

import numpy

from gwpkit import summation

from tests import test_lib


class AccumulatorTest(test_lib.BaseTestCase):
  """Tests for the accumulator."""

  def testTwoSum(self):
    """Tests the TwoSum function."""
    rounded_sum, error = summation.Accumulator.TwoSum(1.0, 1e-17)
    self.assertEqual(rounded_sum, 1.0)
    self.assertEqual(error, 1e-17)

    rounded_sum, error = summation.Accumulator.TwoSum(2.0, 3.0)
    self.assertEqual(rounded_sum, 5.0)
    self.assertEqual(error, 0.0)

  def testAddAndSum(self):
    """Tests the Add and Sum functions."""
    accumulator = summation.Accumulator()
    for value in [1.0, 1e-16, 1e-16, 1e-16, 1e-16, -1.0]:
      accumulator.Add(value)

    self.assertAlmostEqual(accumulator.Sum(), 4e-16, delta=1e-20)

    accumulator = summation.Accumulator(value=2.5)
    self.assertEqual(accumulator.Sum(), 2.5)


class CumulativeSumTest(test_lib.BaseTestCase):
  """Tests for the CumulativeSum function."""

  def testCumulativeSum(self):
    """Tests the CumulativeSum function."""
    accumulator = summation.Accumulator()
    running_sums = summation.CumulativeSum(
        numpy.array([1.0, 2.0, 3.0, 4.0]), accumulator, chunk_size=3)

    self.assertEqual(running_sums.tolist(), [1.0, 3.0, 6.0, 10.0])
    self.assertEqual(accumulator.Sum(), 10.0)

    running_sums = summation.CumulativeSum(
        numpy.array([5.0]), accumulator)
    self.assertEqual(running_sums.tolist(), [15.0])

  def testCumulativeSumHarmonic(self):
    """Tests the CumulativeSum function on a long harmonic sum."""
    values = 1.0 / numpy.arange(1, 100001, dtype=numpy.float64)
    running_sums = summation.CumulativeSum(values, summation.Accumulator())

    self.assertAlmostEqual(running_sums[-1], math.fsum(values), delta=1e-12)
    self.assertEqual(running_sums[0], 1.0)

    running_sums = summation.CumulativeSum(
        numpy.array([]), summation.Accumulator())
    self.assertEqual(running_sums.shape, (0, ))


if __name__ == '__main__':
  unittest.main()
