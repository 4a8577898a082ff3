# -*- coding: utf-8 -*-
"""Compensated summation."""

import math

import numpy


class Accumulator(object):
  """Running sum that carries the rounding error of every addition.

  The sum is held as an unevaluated pair (sum, error) where the error term
  holds what rounding dropped from sum.
  """

  def __init__(self, value=0.0):
    """Initializes an accumulator.

    Args:
      value (Optional[float]): initial value.
    """
    super(Accumulator, self).__init__()
    self._error = 0.0
    self._sum = float(value)

  @staticmethod
  def TwoSum(first, second):
    """Error free transformation of a sum.

    Args:
      first (float): first term.
      second (float): second term.

    Returns:
      tuple[float, float]: rounded sum and the rounding error, where
          first + second equals sum + error exactly.
    """
    rounded_sum = first + second
    first_part = rounded_sum - second
    second_part = rounded_sum - first_part
    first_part -= first
    second_part -= second
    return rounded_sum, -(first_part + second_part)

  def Add(self, value):
    """Adds a value.

    Args:
      value (float): value to add.
    """
    value, remainder = self.TwoSum(value, self._error)
    self._sum, self._error = self.TwoSum(value, self._sum)

    if self._sum == 0.0:
      self._sum = remainder
    else:
      self._error += remainder

  def Sum(self):
    """Retrieves the compensated sum.

    Returns:
      float: sum.
    """
    return self._sum + self._error


def CumulativeSum(values, accumulator, chunk_size=1024):
  """Computes compensated running sums of values.

  Every chunk is summed with numpy.cumsum relative to the exact running
  total in the accumulator, so the rounding error stays bounded by the
  chunk size instead of growing with the number of values.

  Args:
    values (numpy.ndarray): values to sum.
    accumulator (Accumulator): running total preceding the values, updated
        in place.
    chunk_size (Optional[int]): number of values summed per chunk.

  Returns:
    numpy.ndarray: running sums, where element i holds the accumulator
        total plus values[0] up to and including values[i].
  """
  values = numpy.asarray(values, dtype=numpy.float64)
  running_sums = numpy.empty(values.shape[0], dtype=numpy.float64)

  for chunk_start in range(0, values.shape[0], chunk_size):
    chunk_end = chunk_start + chunk_size
    chunk = values[chunk_start:chunk_end]

    partial_sums = numpy.cumsum(chunk)
    running_sums[chunk_start:chunk_end] = accumulator.Sum() + partial_sums

    accumulator.Add(math.fsum(chunk))

  return running_sums
