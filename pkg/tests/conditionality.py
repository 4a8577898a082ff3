#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""Tests for the finite dimensional bases and conditionality gauges."""

import math
import unittest

import numpy

from gwpkit import conditionality
from gwpkit import errors
from gwpkit import norms
from gwpkit import sequences
from gwpkit import weights

from tests import test_lib


class FiniteBasisTest(test_lib.BaseTestCase):
  """Tests for the finite basis."""

  def testInitialize(self):
    """Tests the __init__ function."""
    ambient = norms.SpaceNorm('sup')

    basis = conditionality.FiniteBasis(numpy.eye(3), ambient, 'test')
    self.assertEqual(basis.dimension, 3)
    self.assertAlmostEqual(basis.condition_number, 1.0)

    with self.assertRaises(errors.ShapeMismatchError):
      conditionality.FiniteBasis(numpy.ones((2, 3)), ambient, 'test')

    with self.assertRaises(errors.ShapeMismatchError):
      conditionality.FiniteBasis(
          numpy.eye(3), norms.SpaceNorm('mixed', p=1.0, block_sizes=[2]),
          'test')

    with self.assertRaises(errors.PreconditionError):
      conditionality.FiniteBasis(numpy.ones((2, 2)), ambient, 'test')

    with self.assertRaises(errors.PreconditionError):
      conditionality.FiniteBasis(
          numpy.array([[1.0, 0.0], [1.0, 1.0]]), ambient, 'test',
          span_prefix=2)

  def testCoordinates(self):
    """Tests the Coordinates and CoefficientsOf functions."""
    basis = conditionality.SummingBasis(3)

    coordinates = basis.Coordinates(numpy.array([1.0, 2.0, 3.0]))
    self.assertEqual(coordinates.tolist(), [6.0, 5.0, 3.0])

    coefficients = basis.CoefficientsOf(coordinates)
    self.assertTrue(numpy.allclose(coefficients, [1.0, 2.0, 3.0]))

    coordinates = basis.Coordinates(numpy.eye(3))
    self.assertEqual(coordinates.shape, (3, 3))

  def testNorm(self):
    """Tests the Norm function."""
    basis = conditionality.SummingBasis(2)
    self.assertEqual(basis.Norm(numpy.array([2.0, -1.0])), 1.0)
    self.assertEqual(basis.Norm(numpy.array([2.0, 0.0])), 2.0)

    basis = conditionality.BesovSumBasis(2, 1.0)
    self.assertEqual(basis.dimension, 6)
    self.assertEqual(basis.Norm(numpy.ones(6)), 6.0)

  def testAsDict(self):
    """Tests the AsDict function."""
    basis = conditionality.SummingBasis(2)
    basis_values = basis.AsDict()
    self.assertEqual(basis_values['dimension'], 2)
    self.assertEqual(basis_values['label'], 'summing(2)')
    self.assertEqual(basis_values['ambient'], {'kind': 'sup'})
    self.assertEqual(basis_values['span_prefix'], 2)


class BasisBuildersTest(test_lib.BaseTestCase):
  """Tests for the basis builders."""

  def testSummingBasis(self):
    """Tests the SummingBasis function."""
    basis = conditionality.SummingBasis(2)
    self.assertEqual(basis.matrix.tolist(), [[1.0, 1.0], [0.0, 1.0]])
    self.assertFalse(basis.is_lattice)

    with self.assertRaises(errors.InvalidParameterError):
      conditionality.SummingBasis(0)

  def testBesovSumBasis(self):
    """Tests the BesovSumBasis function."""
    for levels in (1, 2, 3):
      basis = conditionality.BesovSumBasis(levels, 2.0)
      self.assertEqual(basis.dimension, 2 ** (levels + 1) - 2)
      self.assertEqual(basis.span_prefix, basis.dimension)

    with self.assertRaises(errors.InvalidParameterError):
      conditionality.BesovSumBasis(0, 1.0)

  def testUnitVectorBasis(self):
    """Tests the UnitVectorBasis function."""
    ambient = norms.SpaceNorm(
        'garling', p=2.0, weight=weights.Weight('power', alpha=1.0))
    basis = conditionality.UnitVectorBasis(5, ambient)
    self.assertTrue(basis.is_lattice)
    self.assertTrue(basis.spreading_invariant)

    ambient = norms.SpaceNorm('mixed', p=1.0, block_sizes=[2, 2])
    basis = conditionality.UnitVectorBasis(4, ambient)
    self.assertFalse(basis.spreading_invariant)

    with self.assertRaises(errors.InvalidParameterError):
      conditionality.UnitVectorBasis(0, ambient)

  def testDirectSumBasis(self):
    """Tests the DirectSumBasis function."""
    basis = conditionality.DirectSumBasis([
        conditionality.SummingBasis(2), conditionality.SummingBasis(3)], 1.0)
    self.assertEqual(basis.dimension, 5)
    self.assertEqual(basis.span_prefix, 5)
    self.assertFalse(basis.is_lattice)
    self.assertEqual(basis.Norm(numpy.array([1.0, 1.0, 1.0, 1.0, 1.0])), 5.0)


class GreedySetTest(test_lib.BaseTestCase):
  """Tests for the GreedySet function."""

  def testGreedySet(self):
    """Tests the GreedySet function."""
    self.assertEqual(
        conditionality.GreedySet([3.0, -5.0, 2.0], 1).tolist(), [2])
    self.assertEqual(conditionality.GreedySet([2.0, 2.0], 1).tolist(), [1])
    self.assertEqual(
        conditionality.GreedySet([1.0, -4.0, 4.0, 0.5], 3).tolist(), [1, 2, 3])
    self.assertEqual(conditionality.GreedySet([1.0], 0).tolist(), [])

    with self.assertRaises(errors.InvalidParameterError):
      conditionality.GreedySet([1.0], 2)


class CoordinateProjectionTest(test_lib.BaseTestCase):
  """Tests for the CoordinateProjection function."""

  def testCoordinateProjection(self):
    """Tests the CoordinateProjection function."""
    basis = conditionality.SummingBasis(3)

    projected = conditionality.CoordinateProjection(
        basis, [1, 3], [1.0, 2.0, 3.0])
    self.assertEqual(projected.tolist(), [1.0, 0.0, 3.0])

    projected = conditionality.CoordinateProjection(basis, [], [1.0, 2.0, 3.0])
    self.assertEqual(projected.tolist(), [0.0, 0.0, 0.0])

    with self.assertRaises(errors.IndexOutOfRangeError):
      conditionality.CoordinateProjection(basis, [4], [1.0, 2.0, 3.0])


class ComputeGaugeTest(test_lib.BaseTestCase):
  """Tests for the ComputeGauge function."""

  def testComputeGaugeSummingBasis(self):
    """Tests the ComputeGauge function on the summing basis."""
    basis = conditionality.SummingBasis(2)

    entry = conditionality.ComputeGauge(basis, 'L', 1, mode='exact')
    self.assertAlmostEqual(entry.value, 1.0)

    entry = conditionality.ComputeGauge(basis, 'L', 2, mode='exact')
    self.assertAlmostEqual(entry.value, 2.0)
    self.assertEqual(entry.method, 'exact-enumeration')
    self.assertTrue(numpy.allclose(entry.coefficients, [2.0, -1.0]))
    self.assertEqual(entry.subset, (1, ))
    self.assertAlmostEqual(entry.Reevaluate(basis), 2.0)

    entry_values = entry.AsDict()
    self.assertEqual(entry_values['witness']['subset'], [1])
    self.assertEqual(entry_values['kind'], 'L')

  def testComputeGaugeLowerBound(self):
    """Tests that L_m of the summing basis is at least floor(m / 2)."""
    for m in (3, 4, 6):
      basis = conditionality.SummingBasis(m)
      entry = conditionality.ComputeGauge(basis, 'L', m, mode='exact')
      self.assertGreaterEqual(entry.value, m // 2)
      self.assertAlmostEqual(entry.Reevaluate(basis), entry.value)

  def testComputeGaugeGrowth(self):
    """Tests that L_m of the summing basis grows linearly up to m = 12."""
    basis = conditionality.SummingBasis(12)

    values = []
    for m in range(1, 13):
      entry = conditionality.ComputeGauge(basis, 'L', m, mode='exact')
      self.assertEqual(entry.method, 'exact-enumeration')
      self.assertGreaterEqual(entry.value, m // 2 - 1e-12, msg=f'm: {m:d}')
      self.assertAlmostEqual(
          entry.Reevaluate(basis), entry.value, delta=1e-9)
      values.append(entry.value)

    self.assertAlmostEqual(values[0], 1.0)
    self.assertAlmostEqual(values[1], 2.0)
    for m in range(2, 13):
      self.assertGreaterEqual(
          values[m - 1], values[m - 2] - 1e-12, msg=f'm: {m:d}')

  def testComputeGaugeConditionality(self):
    """Tests the ComputeGauge function of k_m."""
    basis = conditionality.SummingBasis(4)

    quasi_greedy_entry = conditionality.ComputeGauge(
        basis, 'L', 2, mode='exact')
    entry = conditionality.ComputeGauge(basis, 'k', 2, mode='exact')
    self.assertEqual(entry.method, 'exact-enumeration')
    self.assertLessEqual(len(entry.subset), 2)
    self.assertGreaterEqual(entry.value, quasi_greedy_entry.value - 1e-12)

  def testComputeGaugeProbe(self):
    """Tests the ComputeGauge function in probe mode."""
    basis = conditionality.SummingBasis(4)

    exact_entry = conditionality.ComputeGauge(basis, 'L', 4, mode='exact')
    entry = conditionality.ComputeGauge(
        basis, 'L', 4, mode='probe', seed=5, starts=8, rounds=3)
    self.assertEqual(entry.method, 'probe-lower-bound')
    self.assertGreaterEqual(entry.value, 1.0)
    self.assertLessEqual(entry.value, exact_entry.value + 1e-9)
    self.assertAlmostEqual(entry.Reevaluate(basis), entry.value)

    second_entry = conditionality.ComputeGauge(
        basis, 'L', 4, mode='probe', seed=5, starts=8, rounds=3)
    self.assertEqual(second_entry.value, entry.value)

  def testComputeGaugeLattice(self):
    """Tests the ComputeGauge function on lattice bases."""
    ambient = norms.SpaceNorm(
        'garling', p=2.0, weight=weights.Weight('power', alpha=0.5))
    basis = conditionality.UnitVectorBasis(6, ambient)

    for kind in ('L', 'k'):
      entry = conditionality.ComputeGauge(basis, kind, 4)
      self.assertEqual(entry.value, 1.0)
      self.assertEqual(entry.method, 'exact-lattice')
      self.assertEqual(entry.subset, (1, ))

  def testComputeGaugeModes(self):
    """Tests the ComputeGauge function mode selection."""
    basis = conditionality.FiniteBasis(
        numpy.triu(numpy.ones((3, 3))), norms.SpaceNorm('ellp', p=2.0),
        'test', span_prefix=3)

    with self.assertRaises(errors.ModeUnsupportedError):
      conditionality.ComputeGauge(basis, 'L', 2, mode='exact')

    entry = conditionality.ComputeGauge(
        basis, 'L', 2, mode='auto', starts=4, rounds=2)
    self.assertEqual(entry.method, 'probe-lower-bound')

    basis = conditionality.SummingBasis(13)
    with self.assertRaises(errors.ModeUnsupportedError):
      conditionality.ComputeGauge(basis, 'k', 2, mode='exact')

  def testComputeGaugeErrors(self):
    """Tests the ComputeGauge function errors."""
    basis = conditionality.SummingBasis(2)

    with self.assertRaises(errors.InvalidParameterError):
      conditionality.ComputeGauge(basis, 'bogus', 1)

    with self.assertRaises(errors.InvalidParameterError):
      conditionality.ComputeGauge(basis, 'L', 1, mode='bogus')

    with self.assertRaises(errors.InvalidParameterError):
      conditionality.ComputeGauge(basis, 'L', 3)

    with self.assertRaises(errors.InvalidParameterError):
      conditionality.ComputeGauge(basis, 'L', 0)


class ComputeGaugeReportTest(test_lib.BaseTestCase):
  """Tests for the ComputeGaugeReport function."""

  def testComputeGaugeReport(self):
    """Tests the ComputeGaugeReport function."""
    basis = conditionality.SummingBasis(5)

    report = conditionality.ComputeGaugeReport(
        basis, 'L', [4, 1, 2, 3, 3], mode='exact')
    self.assertEqual([entry.m for entry in report.entries], [1, 2, 3, 4])
    self.assertTrue(report.is_monotone)

    report_values = report.AsDict()
    self.assertEqual(report_values['basis'], 'summing(5)')
    self.assertTrue(report_values['monotone'])
    self.assertEqual(len(report_values['entries']), 4)

  def testComputeGaugeReportProbe(self):
    """Tests the ComputeGaugeReport function in probe mode."""
    basis = conditionality.BesovSumBasis(2, 2.0)

    report = conditionality.ComputeGaugeReport(
        basis, 'k', [1, 2, 3], mode='probe', starts=4, rounds=2)
    self.assertTrue(report.is_monotone)
    for entry in report.entries:
      self.assertEqual(entry.method, 'probe-lower-bound')


class FundamentalFunctionTest(test_lib.BaseTestCase):
  """Tests for the FundamentalFunction function."""

  def testFundamentalFunction(self):
    """Tests the FundamentalFunction function."""
    basis = conditionality.SummingBasis(5)
    for m in range(0, 6):
      self.assertEqual(conditionality.FundamentalFunction(basis, m), float(m))

    with self.assertRaises(errors.InvalidParameterError):
      conditionality.FundamentalFunction(basis, 6)

  def testFundamentalFunctionUnitVectorBasis(self):
    """Tests the FundamentalFunction function on a Garling space."""
    weight = weights.Weight('power', alpha=1.0)
    ambient = norms.SpaceNorm('garling', p=2.0, weight=weight)
    basis = conditionality.UnitVectorBasis(6, ambient)

    for m in (1, 3, 6):
      self.assertAlmostEqual(
          conditionality.FundamentalFunction(basis, m),
          math.sqrt(weight.PrefixSum(m)))

  def testFundamentalFunctionGarlingSpace(self):
    """Tests the fundamental function of Garling spaces up to m = 10^4."""
    for weight in (weights.Weight('power', alpha=1.0),
                   weights.Weight('power', alpha=0.5),
                   weights.Weight('log')):
      for p in (1.0, 2.0):
        ambient = norms.SpaceNorm('garling', p=p, weight=weight)
        basis = conditionality.UnitVectorBasis(64, ambient)
        expected_values = weight.PrefixSums(10000) ** (1.0 / p)

        for m in range(1, 65):
          self.assertAlmostEqual(
              conditionality.FundamentalFunction(basis, m),
              expected_values[m], delta=1e-12 * expected_values[m])

        # Beyond the basis dimension phi_m is the norm of the indicator of
        # [1, m].
        for m in range(65, 10001):
          value, _ = norms.ComputeGarlingNorm(
              sequences.FinSeq(numpy.ones(m)), weight, p)
          self.assertAlmostEqual(
              value, expected_values[m], delta=1e-12 * expected_values[m])

  def testFundamentalFunctionSampled(self):
    """Tests the FundamentalFunction function with sampled index sets."""
    basis = conditionality.SummingBasis(6)
    value = conditionality.FundamentalFunction(
        basis, 3, samples=10, subset_limit=4)
    self.assertEqual(value, 3.0)


class DemocracyRatioTest(test_lib.BaseTestCase):
  """Tests for the DemocracyRatio function."""

  def testDemocracyRatio(self):
    """Tests the DemocracyRatio function."""
    basis = conditionality.SummingBasis(2)
    self.assertEqual(conditionality.DemocracyRatio(basis, 2), 1.0)

    basis = conditionality.SummingBasis(3)
    self.assertEqual(conditionality.DemocracyRatio(basis, 1), 1.0)
    self.assertEqual(conditionality.DemocracyRatio(basis, 2), 1.0)

    value = conditionality.DemocracyRatio(basis, 2, signed=True)
    self.assertEqual(value, 2.0)

    with self.assertRaises(errors.InvalidParameterError):
      conditionality.DemocracyRatio(basis, 4)

    with self.assertRaises(errors.TooLargeError):
      conditionality.DemocracyRatio(basis, 2, signed=True, sign_limit=1)

  def testDemocracyRatioUnitVectorBasis(self):
    """Tests the DemocracyRatio function on a Garling space."""
    ambient = norms.SpaceNorm(
        'garling', p=1.0, weight=weights.Weight('power', alpha=0.5))
    basis = conditionality.UnitVectorBasis(5, ambient)

    self.assertEqual(conditionality.DemocracyRatio(basis, 3), 1.0)
    self.assertAlmostEqual(
        conditionality.DemocracyRatio(basis, 2, signed=True), 1.0)


class AlmostGreedyRatioTest(test_lib.BaseTestCase):
  """Tests for the AlmostGreedyRatio function."""

  def testAlmostGreedyRatio(self):
    """Tests the AlmostGreedyRatio function."""
    basis = conditionality.UnitVectorBasis(4, norms.SpaceNorm('ellp', p=1.0))
    estimate, witness = conditionality.AlmostGreedyRatio(basis, 3)
    self.assertEqual(estimate, 1.0)
    self.assertIsNone(witness)

    basis = conditionality.SummingBasis(4)
    estimate, witness = conditionality.AlmostGreedyRatio(basis, 5, seed=2)
    self.assertGreaterEqual(estimate, 1.0)
    if witness:
      self.assertEqual(len(witness['greedy_set']), witness['m'])
      self.assertEqual(len(witness['subset']), witness['m'])

    second_estimate, _ = conditionality.AlmostGreedyRatio(basis, 5, seed=2)
    self.assertEqual(second_estimate, estimate)

    estimate, _ = conditionality.AlmostGreedyRatio(
        basis, 3, seed=2, subset_limit=2)
    self.assertGreaterEqual(estimate, 1.0)


class LogConditionalityCheckTest(test_lib.BaseTestCase):
  """Tests for the LogConditionalityCheck function."""

  def testLogConditionalityCheck(self):
    """Tests the LogConditionalityCheck function."""
    table = conditionality.LogConditionalityCheck(
        conditionality.SummingBasis, [2, 4, 8], kind='L')
    self.assertEqual([row['m'] for row in table.rows], [2, 4, 8])
    self.assertTrue(table.linear_bounded_below)
    self.assertAlmostEqual(table.rows[0]['gauge'], 2.0)
    self.assertAlmostEqual(table.rows[0]['linear_ratio'], 1.0)
    self.assertAlmostEqual(table.rows[0]['log_ratio'], 2.0 / math.log(2.0))

    table_values = table.AsDict()
    self.assertIn('log_bounded', table_values)

  def testLogConditionalityCheckLattice(self):
    """Tests the LogConditionalityCheck function on lattice bases."""
    ambient = norms.SpaceNorm('sup')
    table = conditionality.LogConditionalityCheck(
        lambda m: conditionality.UnitVectorBasis(m, ambient), [1, 2, 4, 8])
    self.assertIsNone(table.rows[0]['log_ratio'])
    self.assertTrue(table.log_bounded)
    self.assertFalse(table.linear_bounded_below)


if __name__ == '__main__':
  unittest.main()
