#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""Tests for the constant block constructions."""

import unittest

import numpy

from gwpkit import construction
from gwpkit import errors
from gwpkit import norms
from gwpkit import sequences
from gwpkit import weights

from tests import test_lib


class MakeVTest(test_lib.BaseTestCase):
  """Tests for the normalized constant blocks."""

  def testMakeV(self):
    """Tests the MakeV function."""
    weight = weights.Weight('power', alpha=1.0)

    block = construction.MakeV(2, weight, 1.0)
    self.assertEqual(len(block), 2)
    self.assertAlmostEqual(block.coefficients[0], 2.0 / 3.0)

    for p in (1.0, 2.0, 3.0):
      block = construction.MakeV(7, weight, p)
      value, _ = norms.ComputeGarlingNorm(block, weight, p)
      self.assertAlmostEqual(value, 1.0, delta=1e-12)

    with self.assertRaises(errors.InvalidParameterError):
      construction.MakeV(0, weight, 1.0)

  def testMakeVNormalized(self):
    """Tests that MakeV has Garling norm 1 for every k up to 10^4."""
    test_weights = [
        weights.Weight('power', alpha=1.0),
        weights.Weight('power', alpha=0.5),
        weights.Weight('log'),
        self._GetTestWeight('stepped')]

    for weight in test_weights:
      for p in (1.0, 2.0):
        values = [
            norms.ComputeGarlingValue(
                construction.MakeV(k, weight, p), weight, p)
            for k in range(1, 10001)]
        deviations = numpy.abs(numpy.array(values) - 1.0)
        self.assertLessEqual(
            float(deviations.max()), 1e-12, msg=f'{weight!r} p: {p:g}')

  def testKappaVector(self):
    """Tests the KappaVector function."""
    weight = weights.Weight('power', alpha=1.0)

    sequence = construction.KappaVector([2, 1], weight, 1.0)
    self.assertEqual(len(sequence), 3)
    self.assertAlmostEqual(sequence.coefficients[0], 2.0 / 3.0)
    self.assertAlmostEqual(sequence.coefficients[1], 2.0 / 3.0)
    self.assertAlmostEqual(sequence.coefficients[2], 1.0)

    sequence = construction.KappaVector([], weight, 1.0)
    self.assertEqual(len(sequence), 0)

  def testPrependNormPower(self):
    """Tests the PrependNormPower function."""
    weight = weights.Weight('power', alpha=1.0)
    sequence = sequences.FinSeq([1.0])

    profile = norms.ComputeShiftProfile(sequence, weight, 2.0, 4)
    value = construction.PrependNormPower(4, profile, weight)
    self.assertAlmostEqual(value, 1.2)

    expected_value = norms.ComputeGarlingValue(
        sequences.Concatenate(construction.MakeV(4, weight, 2.0), sequence),
        weight, 2.0)
    self.assertAlmostEqual(value, expected_value, delta=1e-12)

    value = construction.PrependNormPower(3, numpy.zeros(4), weight)
    self.assertAlmostEqual(value, 1.0)


class Lemma2PrependTest(test_lib.BaseTestCase):
  """Tests for the Lemma2Prepend function."""

  def testLemma2Prepend(self):
    """Tests the Lemma2Prepend function."""
    weight = weights.Weight('power', alpha=1.0)

    k = construction.Lemma2Prepend(sequences.FinSeq(), 1.1, weight, 2.0)
    self.assertEqual(k, 1)

    k = construction.Lemma2Prepend(
        sequences.FinSeq([1.0]), 1.1, weight, 2.0)
    self.assertEqual(k, 4)

    k = construction.Lemma2Prepend(
        sequences.FinSeq([1.0]), 1.15, weight, 1.0)
    self.assertEqual(k, 6)

    k = construction.Lemma2Prepend(
        sequences.FinSeq([1.0]), 1.1, weight, 2.0, k_min=6)
    self.assertEqual(k, 6)

  def testLemma2PrependExtraPredicate(self):
    """Tests the Lemma2Prepend function with an additional predicate."""
    weight = weights.Weight('power', alpha=1.0)

    k = construction.Lemma2Prepend(
        sequences.FinSeq([1.0]), 1.1, weight, 2.0,
        extra=lambda k_values: k_values % 3 == 0)
    self.assertEqual(k, 6)

  def testLemma2PrependErrors(self):
    """Tests the Lemma2Prepend function errors."""
    weight = weights.Weight('power', alpha=1.0)

    with self.assertRaises(errors.PreconditionError):
      construction.Lemma2Prepend(sequences.FinSeq([2.0]), 1.1, weight, 2.0)

    with self.assertRaises(errors.CapExceededError) as context_manager:
      construction.Lemma2Prepend(
          sequences.FinSeq([1.0]), 1.1, weight, 2.0, k_cap=3)
    self.assertEqual(context_manager.exception.cap, 3)

    with self.assertRaises(errors.InvalidParameterError):
      construction.Lemma2Prepend(sequences.FinSeq(), 1.0, weight, 2.0)

    with self.assertRaises(errors.InvalidParameterError):
      construction.Lemma2Prepend(sequences.FinSeq(), 1.1, weight, 0.5)


class BuildKappaTest(test_lib.BaseTestCase):
  """Tests for the BuildKappa function."""

  def _CheckKappa(self, kappa, weight, p):
    """Checks the norm bound and the minimality of every block length.

    Args:
      kappa (Kappa): block lengths.
      weight (Weight): weight.
      p (float): exponent.
    """
    chain = sequences.FinSeq()
    for step, k in enumerate(reversed(kappa.entries)):
      if k > 1:
        smaller_chain = sequences.Concatenate(
            construction.MakeV(k - 1, weight, p), chain)
        self.assertGreaterEqual(
            norms.ComputeGarlingValue(smaller_chain, weight, p),
            kappa.t ** p * (1.0 - 1e-12))

      chain = sequences.Concatenate(construction.MakeV(k, weight, p), chain)
      self.assertLess(kappa.step_norms[step], kappa.t)

    value, _ = norms.ComputeGarlingNorm(chain, weight, p)
    self.assertAlmostEqual(value, kappa.norm, delta=1e-12)
    self.assertLess(value, kappa.t)

  def testBuildKappa(self):
    """Tests the BuildKappa function."""
    weight = weights.Weight('power', alpha=1.0)

    kappa = construction.BuildKappa(8, 1.1, weight, 2.0)
    self.assertEqual(len(kappa), 8)
    self.assertEqual(kappa.entries[-2:], (4, 1))
    self.assertEqual(len(kappa.step_norms), 8)
    self._CheckKappa(kappa, weight, 2.0)

    kappa = construction.BuildKappa(4, 1.15, weight, 1.0)
    self.assertEqual(kappa.entries[-2:], (6, 1))
    self._CheckKappa(kappa, weight, 1.0)

    entries = list(kappa.entries)
    self.assertEqual(entries, sorted(entries, reverse=True))
    self.assertEqual(kappa.total_length, sum(entries))

  def testBuildKappaSquareRootWeight(self):
    """Tests the BuildKappa function with the square root weight."""
    weight = weights.Weight('power', alpha=0.5)

    kappa = construction.BuildKappa(3, 1.1, weight, 2.0)
    self.assertEqual(len(kappa), 3)
    self._CheckKappa(kappa, weight, 2.0)

  def testBuildKappaKFloor(self):
    """Tests the BuildKappa function with a smallest block length."""
    weight = weights.Weight('power', alpha=1.0)

    kappa = construction.BuildKappa(2, 1.1, weight, 2.0, k_floor=5)
    self.assertEqual(kappa.entries[-1], 5)
    self.assertTrue(all(entry >= 5 for entry in kappa.entries))

  def testBuildKappaErrors(self):
    """Tests the BuildKappa function errors."""
    weight = weights.Weight('power', alpha=1.0)

    with self.assertRaises(errors.InvalidParameterError):
      construction.BuildKappa(0, 1.1, weight, 2.0)

    with self.assertRaises(errors.CapExceededError):
      construction.BuildKappa(3, 1.1, weight, 2.0, k_cap=3)

  def testAsDict(self):
    """Tests the AsDict function."""
    kappa = construction.Kappa([4, 1], 1.1, norm=1.05, step_norms=[1.0, 1.05])
    self.assertEqual(kappa.AsDict(), {
        'entries': [4, 1],
        'norm': 1.05,
        'step_norms': [1.0, 1.05],
        't': 1.1,
        'total_length': 5})


class Lemma1SearchTest(test_lib.BaseTestCase):
  """Tests for the Lemma1Search function."""

  def testLemma1Search(self):
    """Tests the Lemma1Search function."""
    weight = weights.Weight('power', alpha=1.0)

    block, certificate = construction.Lemma1Search(
        sequences.FinSeq(), sequences.FinSeq(), 1.1, weight, 1.0)
    self.assertEqual(len(block), 1)
    self.assertEqual(certificate.k, 1)
    self.assertAlmostEqual(certificate.s, 1.05)
    self.assertAlmostEqual(certificate.alpha_k, 1.05)
    self.assertEqual(certificate.conditions, {'i': True, 'ii': True})

  def testLemma1SearchAfterBlock(self):
    """Tests the Lemma1Search function after a normalized block."""
    weight = weights.Weight('power', alpha=0.5)
    f2 = construction.MakeV(10, weight, 1.0)

    block, certificate = construction.Lemma1Search(
        sequences.FinSeq(), f2, 1.5, weight, 1.0)
    self.assertEqual(len(block), certificate.k)
    self.assertGreater(certificate.k, 1)
    self.assertLess(certificate.concatenation_norm, 1.5)
    self.assertGreaterEqual(
        certificate.extension_gain, 1.0 - norms.COMPOSED_TOLERANCE)

    certificate_values = certificate.AsDict()
    self.assertEqual(certificate_values['k'], certificate.k)

  def testLemma1SearchErrors(self):
    """Tests the Lemma1Search function errors."""
    weight = weights.Weight('power', alpha=1.0)

    with self.assertRaises(errors.PreconditionError):
      construction.Lemma1Search(
          sequences.FinSeq([2.0]), sequences.FinSeq(), 1.1, weight, 1.0)


if __name__ == '__main__':
  unittest.main()
