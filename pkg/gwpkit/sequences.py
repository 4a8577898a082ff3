# -*- coding: utf-8 -*-
"""Finitely supported sequences."""

import numpy

from gwpkit import errors


class FinSeq(object):
  """Finitely supported real sequence.

  The sequence is (0, ..., 0, coefficients..., 0, 0, ...) with offset
  leading zeros, so coordinate j (1-based) holds coefficients[j - offset - 1].

  Attributes:
    coefficients (numpy.ndarray): stored coefficients.
    offset (int): number of leading zeros.
  """

  def __init__(self, coefficients=None, offset=0):
    """Initializes a finitely supported sequence.

    Args:
      coefficients (Optional[list[float]|numpy.ndarray]): stored coefficients.
      offset (Optional[int]): number of leading zeros.

    Raises:
      ShapeMismatchError: if the coefficients are not a flat list of finite
          reals or the offset is negative.
    """
    if coefficients is None:
      coefficients = []

    coefficients = numpy.array(coefficients, dtype=numpy.float64)
    if coefficients.ndim != 1:
      raise errors.ShapeMismatchError('Coefficients must be a flat list.')

    if not numpy.all(numpy.isfinite(coefficients)):
      raise errors.ShapeMismatchError('Coefficients must be finite.')

    if offset < 0:
      raise errors.ShapeMismatchError(f'Unsupported offset: {offset:d}')

    super(FinSeq, self).__init__()
    self.coefficients = coefficients
    self.offset = int(offset)

  def __len__(self):
    """Retrieves the length including the leading zeros."""
    return self.offset + self.coefficients.shape[0]

  def __repr__(self):
    """Retrieves a textual representation of the sequence."""
    return f'FinSeq(offset={self.offset:d}, size={len(self.coefficients):d})'

  @property
  def support(self):
    """numpy.ndarray: 1-based coordinates of the nonzero coefficients."""
    (indexes, ) = numpy.nonzero(self.coefficients)
    return indexes + self.offset + 1

  def AsDict(self):
    """Retrieves the sequence in the format read by the definitions file.

    Returns:
      dict[str, object]: offset and coefficients.
    """
    return {
        'coeffs': [float(value) for value in self.coefficients],
        'offset': self.offset}

  def Canonicalize(self):
    """Retrieves the sequence with trailing zeros trimmed.

    Returns:
      FinSeq: canonical sequence.
    """
    (indexes, ) = numpy.nonzero(self.coefficients)
    if not indexes.shape[0]:
      return FinSeq(offset=self.offset)

    return FinSeq(self.coefficients[:indexes[-1] + 1], offset=self.offset)

  def ToDense(self, length=None):
    """Retrieves the leading coordinates as a dense array.

    Args:
      length (Optional[int]): number of coordinates, where None represents
          the length of the sequence.

    Returns:
      numpy.ndarray: coordinates 1 up to length.

    Raises:
      SupportOutOfRangeError: if a nonzero coefficient lies beyond length.
    """
    if length is None:
      length = len(self)

    dense = numpy.zeros(length, dtype=numpy.float64)
    number_of_stored = max(min(length - self.offset, len(self.coefficients)), 0)
    dense[self.offset:self.offset + number_of_stored] = (
        self.coefficients[:number_of_stored])

    if numpy.any(self.coefficients[number_of_stored:]):
      raise errors.SupportOutOfRangeError(
          f'Sequence is supported beyond coordinate {length:d}.')

    return dense


def Concatenate(first, second):
  """Concatenates two sequences.

  The second sequence, including its leading zeros, is placed immediately
  after the last stored coordinate of the first one.

  Args:
    first (FinSeq): first sequence.
    second (FinSeq): second sequence.

  Returns:
    FinSeq: concatenation (first, second).
  """
  coefficients = numpy.concatenate([
      first.coefficients, numpy.zeros(second.offset, dtype=numpy.float64),
      second.coefficients])
  return FinSeq(coefficients, offset=first.offset)


def RestrictCompress(sequence, coordinates):
  """Keeps the coordinates in a set and closes the gaps.

  Args:
    sequence (FinSeq): sequence.
    coordinates (iterable[int]): 1-based coordinates to keep.

  Returns:
    FinSeq: values of the sequence at the sorted coordinates.
  """
  coordinates = numpy.unique(
      numpy.asarray(list(coordinates), dtype=numpy.int64))
  if coordinates.shape[0] and coordinates[0] < 1:
    raise errors.ShapeMismatchError('Coordinates must be 1-based.')

  positions = coordinates - sequence.offset - 1
  stored = (positions >= 0) & (positions < len(sequence.coefficients))

  coefficients = numpy.zeros(coordinates.shape[0], dtype=numpy.float64)
  coefficients[stored] = sequence.coefficients[positions[stored]]
  return FinSeq(coefficients)


def Shift(sequence, m):
  """Shifts a sequence to the right.

  Args:
    sequence (FinSeq): sequence.
    m (int): number of zeros to prepend.

  Returns:
    FinSeq: shifted sequence.
  """
  return FinSeq(sequence.coefficients, offset=sequence.offset + m)


def Spread(sequence, positions):
  """Places the stored coefficients at the given coordinates.

  Args:
    sequence (FinSeq): sequence.
    positions (list[int]): strictly increasing 1-based coordinates, one per
        stored coefficient.

  Returns:
    FinSeq: spread sequence, zero outside the positions.

  Raises:
    ShapeMismatchError: if the number of positions differs from the number
        of stored coefficients or the positions are not strictly increasing.
  """
  positions = numpy.asarray(positions, dtype=numpy.int64)
  if positions.ndim != 1 or positions.shape[0] != len(sequence.coefficients):
    raise errors.ShapeMismatchError(
        f'Expected {len(sequence.coefficients):d} positions.')

  if not positions.shape[0]:
    return FinSeq()

  if positions[0] < 1 or numpy.any(numpy.diff(positions) <= 0):
    raise errors.ShapeMismatchError(
        'Positions must be strictly increasing and 1-based.')

  coefficients = numpy.zeros(positions[-1] - positions[0] + 1)
  coefficients[positions - positions[0]] = sequence.coefficients
  return FinSeq(coefficients, offset=int(positions[0]) - 1)
