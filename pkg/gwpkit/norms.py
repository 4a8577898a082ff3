# -*- coding: utf-8 -*-
"""Sequence space norms of finitely supported sequences.

The Garling norm of a sequence (a_j) with weight w and exponent p is the
supremum over strictly increasing selections s_1 < s_2 < ... of

  (|a_s1|^p w_1 + |a_s2|^p w_2 + ...)^(1/p)

It is evaluated by a dynamic program over the support where consecutive
coefficients of equal magnitude are merged into runs. With best_b(r) the
largest weighted sum that selects r coordinates from the first b runs and
a run of L coordinates with value u = |a|^p:

  best_b(r) = u S(r) + max over r - L <= r' <= r of (best_b-1(r') - u S(r'))

where S(r) = w_1+shift + ... + w_r+shift. The maximum over the window is a
sliding window maximum, so a constant block costs a single pass.
"""

import math

import numpy

from gwpkit import errors
from gwpkit import sequences


BRUTE_FORCE_LIMIT = 20

# Relative tolerance of oracle comparisons.
ORACLE_TOLERANCE = 1e-12

# Absolute tolerance of composed computations on unit-normalized inputs.
COMPOSED_TOLERANCE = 1e-9

_BRUTE_FORCE_CHUNK_SIZE = 16384


class SelectionWitness(object):
  """Strictly increasing selection of coordinates that attains a norm.

  Attributes:
    indices (tuple[int]): strictly increasing 1-based coordinates.
  """

  def __init__(self, indices):
    """Initializes a selection witness.

    Args:
      indices (list[int]): strictly increasing 1-based coordinates.

    Raises:
      ShapeMismatchError: if the coordinates are not strictly increasing.
    """
    indices = tuple(int(index) for index in indices)
    if any(first >= second for first, second in zip(indices, indices[1:])):
      raise errors.ShapeMismatchError(
          'Selection coordinates must be strictly increasing.')

    if indices and indices[0] < 1:
      raise errors.ShapeMismatchError('Selection coordinates must be 1-based.')

    super(SelectionWitness, self).__init__()
    self.indices = indices

  def Evaluate(self, sequence, weight, p, shift=0):
    """Evaluates the weighted sum along the selection.

    Args:
      sequence (FinSeq): sequence.
      weight (Weight): weight.
      p (float): exponent.
      shift (Optional[int]): shift of the weight row.

    Returns:
      float: |a_s1|^p w_1+shift + |a_s2|^p w_2+shift + ...
    """
    if not self.indices:
      return 0.0

    selected = sequences.RestrictCompress(sequence, self.indices)
    weight_values = weight.Values(shift + 1, shift + len(self.indices) + 1)
    return float(numpy.sum(
        numpy.abs(selected.coefficients) ** p * weight_values))


class SpaceNorm(object):
  """Sequence space norm descriptor.

  Attributes:
    block_sizes (tuple[int]): block sizes of the mixed norm.
    components (list[tuple[SpaceNorm, int]]): component norms and their
        dimensions of the direct sum norm.
    kind (str): kind of norm.
    p (float): exponent.
    weight (Weight): weight of the Garling and Lorentz norms.
  """

  KIND_DIRECT_SUM = 'direct_sum'
  KIND_ELLP = 'ellp'
  KIND_GARLING = 'garling'
  KIND_LORENTZ = 'lorentz'
  KIND_MIXED = 'mixed'
  KIND_SUP = 'sup'

  KINDS = frozenset([
      KIND_DIRECT_SUM, KIND_ELLP, KIND_GARLING, KIND_LORENTZ, KIND_MIXED,
      KIND_SUP])

  _SPREADING_INVARIANT_KINDS = frozenset([
      KIND_ELLP, KIND_GARLING, KIND_LORENTZ, KIND_SUP])

  def __init__(
      self, kind, p=None, weight=None, block_sizes=None, components=None):
    """Initializes a sequence space norm descriptor.

    Args:
      kind (str): kind of norm.
      p (Optional[float]): exponent, not used by the sup norm.
      weight (Optional[Weight]): weight of the Garling and Lorentz norms.
      block_sizes (Optional[list[int]]): block sizes of the mixed norm.
      components (Optional[list[tuple[SpaceNorm, int]]]): component norms
          and their dimensions of the direct sum norm.

    Raises:
      InvalidParameterError: if the kind is not supported, p is smaller
          than 1 or a required parameter is missing.
    """
    if kind not in self.KINDS:
      raise errors.InvalidParameterError(f'Unsupported norm kind: {kind!s}')

    if kind != self.KIND_SUP:
      CheckExponent(p)

    if kind in (self.KIND_GARLING, self.KIND_LORENTZ) and weight is None:
      raise errors.InvalidParameterError(f'Missing weight of {kind:s} norm.')

    if kind == self.KIND_MIXED:
      if not block_sizes or any(size < 1 for size in block_sizes):
        raise errors.InvalidParameterError(
            'Mixed norm requires positive block sizes.')
      block_sizes = tuple(int(size) for size in block_sizes)

    if kind == self.KIND_DIRECT_SUM:
      if not components or any(size < 1 for _, size in components):
        raise errors.InvalidParameterError(
            'Direct sum norm requires components with positive dimensions.')
      components = list(components)

    super(SpaceNorm, self).__init__()
    self.block_sizes = block_sizes
    self.components = components
    self.kind = kind
    self.p = None if kind == self.KIND_SUP else float(p)
    self.weight = weight

  def __repr__(self):
    """Retrieves a textual representation of the norm."""
    if self.kind == self.KIND_SUP:
      return 'sup'
    if self.kind in (self.KIND_GARLING, self.KIND_LORENTZ):
      return f'{self.kind:s}({self.weight!r}, p={self.p:g})'
    if self.kind == self.KIND_MIXED:
      return f'mixed(p={self.p:g}, blocks={list(self.block_sizes)!s})'
    if self.kind == self.KIND_DIRECT_SUM:
      component_names = ', '.join(
          f'{component!r}^{size:d}' for component, size in self.components)
      return f'direct_sum(p={self.p:g}, {component_names:s})'
    return f'ellp(p={self.p:g})'

  @property
  def dimension(self):
    """int: dimension of block structured norms or None."""
    if self.kind == self.KIND_MIXED:
      return sum(self.block_sizes)
    if self.kind == self.KIND_DIRECT_SUM:
      return sum(size for _, size in self.components)
    return None

  @property
  def is_sign_extreme(self):
    """bool: True if the extreme points of the unit ball are known.

    These are the sup norm, whose extreme points are the sign vectors, and
    the mixed norm with p = 1, whose extreme points are sign vectors on a
    single block.
    """
    return self.kind == self.KIND_SUP or (
        self.kind == self.KIND_MIXED and self.p == 1.0)

  @property
  def is_spreading_invariant(self):
    """bool: True if the norm is invariant under spreading coefficients."""
    return self.kind in self._SPREADING_INVARIANT_KINDS

  def AsDict(self):
    """Retrieves the norm definition.

    Returns:
      dict[str, object]: norm definition.
    """
    definition = {'kind': self.kind}
    if self.p is not None:
      definition['p'] = self.p
    if self.weight is not None:
      definition['weight'] = self.weight.AsDict()
    if self.block_sizes is not None:
      definition['block_sizes'] = list(self.block_sizes)
    if self.components is not None:
      definition['components'] = [
          {'dimension': size, 'norm': component.AsDict()}
          for component, size in self.components]
    return definition

  def Norm(self, value):
    """Evaluates the norm.

    Args:
      value (FinSeq|numpy.ndarray|list): sequence, flat coordinates or, for
          the mixed norm, a list of blocks.

    Returns:
      float: norm.
    """
    return EvaluateNorm(value, self)

  def Norms(self, values):
    """Evaluates the norm of every row of a matrix.

    Args:
      values (numpy.ndarray): matrix with one vector per row.

    Returns:
      numpy.ndarray: norm per row.
    """
    return EvaluateNorms(values, self)


def _GetRuns(sequence, p):
  """Retrieves the runs of equal magnitude of a sequence.

  Args:
    sequence (FinSeq): sequence.
    p (float): exponent.

  Returns:
    tuple[numpy.ndarray, numpy.ndarray, numpy.ndarray]: value |a|^p per run,
        length per run and the 1-based coordinates of the support.
  """
  (positions, ) = numpy.nonzero(sequence.coefficients)
  magnitudes = numpy.abs(sequence.coefficients[positions])
  if not positions.shape[0]:
    empty = numpy.zeros(0, dtype=numpy.int64)
    return numpy.zeros(0, dtype=numpy.float64), empty, empty

  (changes, ) = numpy.nonzero(magnitudes[1:] != magnitudes[:-1])
  run_starts = numpy.concatenate([[0], changes + 1])
  run_lengths = numpy.diff(numpy.append(run_starts, magnitudes.shape[0]))

  run_values = magnitudes[run_starts] ** p
  return run_values, run_lengths, positions + sequence.offset + 1


def _LeadingWindowMaximum(values, width):
  """Computes maxima over the windows values[i], ..., values[i + width].

  Args:
    values (numpy.ndarray): values.
    width (int): number of values following i in the window.

  Returns:
    numpy.ndarray: window maxima, truncated at the end of the values.
  """
  return _TrailingWindowMaximum(values[::-1], width)[::-1]


def _TrailingWindowMaximum(values, width):
  """Computes maxima over the windows values[i - width], ..., values[i].

  Uses the van Herk/Gil-Werman scheme: blocks of width + 1 values with
  running maxima from both block ends, so every window maximum combines one
  suffix and one prefix maximum.

  Args:
    values (numpy.ndarray): values.
    width (int): number of values preceding i in the window.

  Returns:
    numpy.ndarray: window maxima, truncated at the start of the values.
  """
  number_of_values = values.shape[0]
  if width == 0:
    return values.copy()

  if width == 1:
    maximums = values.copy()
    numpy.maximum(values[1:], values[:-1], out=maximums[1:])
    return maximums

  if width >= number_of_values - 1:
    return numpy.maximum.accumulate(values)

  block_size = width + 1
  number_of_blocks = -(-(number_of_values + width) // block_size)
  padded = numpy.full(number_of_blocks * block_size, -numpy.inf)
  padded[width:width + number_of_values] = values

  blocks = padded.reshape(number_of_blocks, block_size)
  prefix_maximums = numpy.maximum.accumulate(blocks, axis=1).ravel()
  suffix_maximums = numpy.maximum.accumulate(
      blocks[:, ::-1], axis=1)[:, ::-1].ravel()

  return numpy.maximum(
      suffix_maximums[:number_of_values],
      prefix_maximums[width:width + number_of_values])


def _RunForwardProgram(run_values, run_lengths, row_sums, keep_rows=False):
  """Runs the forward dynamic program over runs.

  Args:
    run_values (numpy.ndarray): value |a|^p per run.
    run_lengths (numpy.ndarray): length per run.
    row_sums (numpy.ndarray): running sums S(0) = 0, S(1), ... of the
        weight row.
    keep_rows (Optional[bool]): True to keep the row preceding every run.

  Returns:
    tuple[numpy.ndarray, list[numpy.ndarray]]: final row, where element r
        holds the best sum selecting r coordinates, and the preceding rows.
  """
  best = numpy.zeros(1, dtype=numpy.float64)
  rows = []
  number_selectable = 0

  for run_value, run_length in zip(run_values, run_lengths):
    if keep_rows:
      rows.append(best)

    number_selectable += int(run_length)
    scaled_sums = run_value * row_sums[:number_selectable + 1]

    extended = numpy.full(number_selectable + 1, -numpy.inf)
    extended[:best.shape[0]] = best

    best = scaled_sums + _TrailingWindowMaximum(
        extended - scaled_sums, int(run_length))

  return best, rows


def _GetRowSums(weight, shift, number_of_values):
  """Retrieves the running sums of a shifted weight row.

  Args:
    weight (Weight): weight.
    shift (int): shift.
    number_of_values (int): number of running sums after S(0).

  Returns:
    numpy.ndarray: S(r) = W_shift+r - W_shift for 0 <= r <= number_of_values.
  """
  prefix_sums = weight.PrefixSums(shift + number_of_values)
  return prefix_sums[shift:shift + number_of_values + 1] - prefix_sums[shift]


def BruteForceGarling(
    sequence, weight, p, support_limit=BRUTE_FORCE_LIMIT):
  """Computes the Garling norm by enumerating every selection.

  Args:
    sequence (FinSeq): sequence.
    weight (Weight): weight.
    p (float): exponent, where p >= 1.
    support_limit (Optional[int]): largest support size enumerated.

  Returns:
    float: Garling norm.

  Raises:
    InvalidParameterError: if p is smaller than 1.
    TooLargeError: if the support exceeds the limit.
  """
  CheckExponent(p)

  (positions, ) = numpy.nonzero(sequence.coefficients)
  number_of_values = positions.shape[0]
  if number_of_values > support_limit:
    raise errors.TooLargeError(
        f'Support size: {number_of_values:d} exceeds the brute force limit: '
        f'{support_limit:d}')

  if not number_of_values:
    return 0.0

  values = numpy.abs(sequence.coefficients[positions]) ** p
  weight_values = weight.Values(1, number_of_values + 1)
  bit_shifts = numpy.arange(number_of_values)

  maximum = 0.0
  number_of_masks = 1 << number_of_values
  for chunk_start in range(0, number_of_masks, _BRUTE_FORCE_CHUNK_SIZE):
    chunk_end = min(chunk_start + _BRUTE_FORCE_CHUNK_SIZE, number_of_masks)
    masks = numpy.arange(chunk_start, chunk_end)
    selected = ((masks[:, None] >> bit_shifts[None, :]) & 1).astype(bool)

    ranks = numpy.cumsum(selected, axis=1)
    terms = numpy.where(
        selected, values[None, :] * weight_values[numpy.maximum(ranks - 1, 0)],
        0.0)
    maximum = max(maximum, float(terms.sum(axis=1).max()))

  return maximum ** (1.0 / p)


def CheckExponent(p):
  """Checks an exponent.

  Args:
    p (float): exponent.

  Raises:
    InvalidParameterError: if p is not a finite real with p >= 1.
  """
  if p is None or not math.isfinite(p) or p < 1.0:
    raise errors.InvalidParameterError(
        f'Unsupported exponent: {p!s}, expected 1 <= p < infinity')


def ComputeGarlingNorm(sequence, weight, p):
  """Computes the Garling norm and a maximizing selection.

  Ties prefer fewer selected coordinates.

  Args:
    sequence (FinSeq): sequence.
    weight (Weight): weight.
    p (float): exponent, where p >= 1.

  Returns:
    tuple[float, SelectionWitness]: norm and maximizing selection.

  Raises:
    InvalidParameterError: if p is smaller than 1.
  """
  CheckExponent(p)

  run_values, run_lengths, coordinates = _GetRuns(sequence, p)
  if not run_values.shape[0]:
    return 0.0, SelectionWitness([])

  row_sums = _GetRowSums(weight, 0, coordinates.shape[0])
  best, rows = _RunForwardProgram(
      run_values, run_lengths, row_sums, keep_rows=True)

  number_selected = int(numpy.argmax(best))
  value = float(best[number_selected])

  run_ends = numpy.cumsum(run_lengths)
  selections = []
  for run_index in range(run_values.shape[0] - 1, -1, -1):
    previous = rows[run_index]
    run_value = run_values[run_index]

    lowest = max(number_selected - int(run_lengths[run_index]), 0)
    highest = min(number_selected, previous.shape[0] - 1)
    candidates = previous[lowest:highest + 1] - (
        run_value * row_sums[lowest:highest + 1])

    # Largest previous count, so the run contributes as few as possible.
    previous_selected = highest - int(numpy.argmax(candidates[::-1]))

    number_in_run = number_selected - previous_selected
    if number_in_run:
      run_start = int(run_ends[run_index] - run_lengths[run_index])
      selections.append(coordinates[run_start:run_start + number_in_run])

    number_selected = previous_selected

  indices = numpy.concatenate(selections[::-1]) if selections else []
  return value ** (1.0 / p), SelectionWitness(indices)


def ComputeGarlingValue(sequence, weight, p, shift=0):
  """Computes the p-th power of the Garling norm with a shifted weight row.

  Args:
    sequence (FinSeq): sequence.
    weight (Weight): weight.
    p (float): exponent, where p >= 1.
    shift (Optional[int]): shift of the weight row.

  Returns:
    float: supremum over selections of |a_s1|^p w_1+shift + ...

  Raises:
    InvalidParameterError: if p is smaller than 1.
  """
  CheckExponent(p)

  run_values, run_lengths, coordinates = _GetRuns(sequence, p)
  if not run_values.shape[0]:
    return 0.0

  row_sums = _GetRowSums(weight, shift, coordinates.shape[0])
  best, _ = _RunForwardProgram(run_values, run_lengths, row_sums)
  return float(best.max())


def ComputeLorentzNorm(sequence, weight, p):
  """Computes the Lorentz norm.

  The decreasing rearrangement paired with the weights realizes the
  supremum over permutations.

  Args:
    sequence (FinSeq|numpy.ndarray): sequence or coordinates.
    weight (Weight): weight.
    p (float): exponent, where p >= 1.

  Returns:
    float: Lorentz norm.

  Raises:
    InvalidParameterError: if p is smaller than 1.
  """
  CheckExponent(p)

  coefficients = _GetCoefficients(sequence)
  magnitudes = numpy.sort(numpy.abs(coefficients[coefficients != 0.0]))[::-1]
  weight_values = weight.Values(1, magnitudes.shape[0] + 1)
  return float(numpy.sum(magnitudes ** p * weight_values) ** (1.0 / p))


def ComputeShiftedGarling(sequence, weight, p, shift):
  """Computes the shifted Garling sum v_shift.

  Args:
    sequence (FinSeq): sequence.
    weight (Weight): weight.
    p (float): exponent, where p >= 1.
    shift (int): shift of the weight row.

  Returns:
    float: supremum over selections of |a_s1|^p w_1+shift + ..., without
        taking the p-th root.
  """
  return ComputeGarlingValue(sequence, weight, p, shift=shift)


def ComputeShiftProfile(sequence, weight, p, horizon):
  """Computes the shifted Garling sums for every shift up to a horizon.

  Runs the dynamic program backwards over the runs: with G(s) the best sum
  of the remaining runs when s weights are already used,

    G(s) = -u W_s + max over s <= s' <= s + L of (u W_s' + G_next(s'))

  Args:
    sequence (FinSeq): sequence.
    weight (Weight): weight.
    p (float): exponent, where p >= 1.
    horizon (int): largest shift.

  Returns:
    numpy.ndarray: v_0, ..., v_horizon, where v_0 is the p-th power of the
        Garling norm.
  """
  CheckExponent(p)

  run_values, run_lengths, coordinates = _GetRuns(sequence, p)
  if not run_values.shape[0]:
    return numpy.zeros(horizon + 1, dtype=numpy.float64)

  number_of_shifts = horizon + coordinates.shape[0] + 1
  prefix_sums = weight.PrefixSums(number_of_shifts - 1)[:number_of_shifts]

  profile = numpy.zeros(number_of_shifts, dtype=numpy.float64)
  for run_value, run_length in zip(run_values[::-1], run_lengths[::-1]):
    scaled_sums = run_value * prefix_sums
    profile = _LeadingWindowMaximum(
        scaled_sums + profile, int(run_length)) - scaled_sums

  return numpy.maximum(profile[:horizon + 1], 0.0)


def ComputeEllpNorm(values, p):
  """Computes the l_p norm.

  Args:
    values (FinSeq|numpy.ndarray): sequence or coordinates.
    p (float): exponent, where p >= 1.

  Returns:
    float: l_p norm.
  """
  CheckExponent(p)

  coefficients = numpy.abs(_GetCoefficients(values))
  if not coefficients.shape[0]:
    return 0.0
  return float(numpy.sum(coefficients ** p) ** (1.0 / p))


def ComputeMixedNorm(values, p, block_sizes):
  """Computes the l_p sum of sup norms over consecutive blocks.

  Args:
    values (numpy.ndarray): coordinates, one block after the other.
    p (float): exponent, where p >= 1.
    block_sizes (list[int]): block sizes.

  Returns:
    float: mixed norm.

  Raises:
    ShapeMismatchError: if the number of coordinates does not match the
        block sizes.
  """
  return float(EvaluateNorms(
      numpy.asarray(values, dtype=numpy.float64)[None, :],
      SpaceNorm(SpaceNorm.KIND_MIXED, p=p, block_sizes=block_sizes))[0])


def ComputeSupNorm(values):
  """Computes the sup norm.

  Args:
    values (FinSeq|numpy.ndarray): sequence or coordinates.

  Returns:
    float: sup norm.
  """
  coefficients = _GetCoefficients(values)
  return float(numpy.max(numpy.abs(coefficients), initial=0.0))


def _GetCoefficients(values):
  """Retrieves the stored coefficients of a sequence or coordinate list.

  Args:
    values (FinSeq|numpy.ndarray|list[float]): sequence or coordinates.

  Returns:
    numpy.ndarray: coefficients.
  """
  if isinstance(values, sequences.FinSeq):
    return values.coefficients
  return numpy.asarray(values, dtype=numpy.float64).ravel()


def _GetDenseCoordinates(value, space_norm):
  """Retrieves the coordinates of a block structured input.

  Args:
    value (FinSeq|numpy.ndarray|list): sequence, flat coordinates or a list
        of blocks.
    space_norm (SpaceNorm): mixed or direct sum norm.

  Returns:
    numpy.ndarray: coordinates.

  Raises:
    ShapeMismatchError: if the input does not match the block structure.
  """
  dimension = space_norm.dimension

  if isinstance(value, sequences.FinSeq):
    try:
      return value.ToDense(dimension)
    except errors.SupportOutOfRangeError as exception:
      raise errors.ShapeMismatchError(
          f'Sequence does not fit dimension: {dimension:d}') from exception

  if (space_norm.kind == SpaceNorm.KIND_MIXED and isinstance(value, list) and
      value and all(isinstance(block, (list, tuple, numpy.ndarray))
                    for block in value)):
    block_lengths = tuple(len(block) for block in value)
    if block_lengths != space_norm.block_sizes:
      raise errors.ShapeMismatchError(
          f'Block lengths: {list(block_lengths)!s} do not match block sizes: '
          f'{list(space_norm.block_sizes)!s}')
    return numpy.concatenate([
        numpy.asarray(block, dtype=numpy.float64) for block in value])

  coordinates = numpy.asarray(value, dtype=numpy.float64).ravel()
  if coordinates.shape[0] != dimension:
    raise errors.ShapeMismatchError(
        f'Number of coordinates: {coordinates.shape[0]:d} does not match '
        f'dimension: {dimension:d}')
  return coordinates


def EvaluateNorm(value, space_norm):
  """Evaluates a sequence space norm.

  Args:
    value (FinSeq|numpy.ndarray|list): sequence, flat coordinates or, for
        the mixed norm, a list of blocks.
    space_norm (SpaceNorm): norm.

  Returns:
    float: norm.

  Raises:
    ShapeMismatchError: if a block structured input does not match the
        block structure of the norm.
  """
  kind = space_norm.kind

  if kind in (SpaceNorm.KIND_MIXED, SpaceNorm.KIND_DIRECT_SUM):
    coordinates = _GetDenseCoordinates(value, space_norm)
    return float(EvaluateNorms(coordinates[None, :], space_norm)[0])

  if kind == SpaceNorm.KIND_SUP:
    return ComputeSupNorm(value)

  if kind == SpaceNorm.KIND_ELLP:
    return ComputeEllpNorm(value, space_norm.p)

  if kind == SpaceNorm.KIND_LORENTZ:
    return ComputeLorentzNorm(value, space_norm.weight, space_norm.p)

  if not isinstance(value, sequences.FinSeq):
    value = sequences.FinSeq(_GetCoefficients(value))

  return ComputeGarlingValue(
      value, space_norm.weight, space_norm.p) ** (1.0 / space_norm.p)


def EvaluateNorms(values, space_norm):
  """Evaluates a sequence space norm of every row of a matrix.

  Args:
    values (numpy.ndarray): matrix with one vector of coordinates per row.
    space_norm (SpaceNorm): norm.

  Returns:
    numpy.ndarray: norm per row.

  Raises:
    ShapeMismatchError: if the number of columns does not match the
        dimension of a block structured norm.
  """
  values = numpy.asarray(values, dtype=numpy.float64)
  if values.ndim != 2:
    raise errors.ShapeMismatchError(
        'Expected a matrix with one vector per row.')

  number_of_rows, number_of_columns = values.shape
  kind = space_norm.kind

  dimension = space_norm.dimension
  if dimension is not None and number_of_columns != dimension:
    raise errors.ShapeMismatchError(
        f'Number of coordinates: {number_of_columns:d} does not match '
        f'dimension: {dimension:d}')

  magnitudes = numpy.abs(values)
  if number_of_columns == 0:
    return numpy.zeros(number_of_rows, dtype=numpy.float64)

  if kind == SpaceNorm.KIND_SUP:
    return magnitudes.max(axis=1)

  p = space_norm.p

  if kind == SpaceNorm.KIND_ELLP:
    return numpy.sum(magnitudes ** p, axis=1) ** (1.0 / p)

  if kind == SpaceNorm.KIND_MIXED:
    block_starts = numpy.concatenate([[0], numpy.cumsum(
        space_norm.block_sizes)[:-1]])
    block_maximums = numpy.maximum.reduceat(magnitudes, block_starts, axis=1)
    return numpy.sum(block_maximums ** p, axis=1) ** (1.0 / p)

  if kind == SpaceNorm.KIND_DIRECT_SUM:
    component_norms = []
    column = 0
    for component, size in space_norm.components:
      component_norms.append(
          EvaluateNorms(values[:, column:column + size], component))
      column += size
    component_norms = numpy.stack(component_norms, axis=1)
    return numpy.sum(component_norms ** p, axis=1) ** (1.0 / p)

  weight_values = space_norm.weight.Values(1, number_of_columns + 1)

  if kind == SpaceNorm.KIND_LORENTZ:
    rearranged = -numpy.sort(-magnitudes, axis=1)
    return numpy.sum(rearranged ** p * weight_values, axis=1) ** (1.0 / p)

  # The Garling program runs on all rows at once, coordinate by coordinate.
  powers = magnitudes ** p
  best = numpy.full((number_of_rows, number_of_columns + 1), -numpy.inf)
  best[:, 0] = 0.0
  for column in range(number_of_columns):
    candidates = best[:, :column + 1] + (
        powers[:, column:column + 1] * weight_values[None, :column + 1])
    numpy.maximum(
        best[:, 1:column + 2], candidates, out=best[:, 1:column + 2])

  return best.max(axis=1) ** (1.0 / p)
