# -*- coding: utf-8 -*-
"""Finite dimensional bases and their conditionality gauges.

For a basis (x_j) with coefficients f = sum a_j x_j the coordinate
projection S_A keeps the coefficients in A. The gauges are

  L_m = sup ||S_A f|| / ||f|| over f supported in [1, m] and any A
  k_m = sup ||S_A f|| / ||f|| over any f and |A| <= m

Exact values are enumerated over the extreme points of the unit ball where
these are sign vectors. Other ambient norms are probed, which yields lower
bounds attained by a stored witness.
"""

import logging
import math

import numpy

from gwpkit import errors
from gwpkit import norms


DEFAULT_DENOMINATOR_FLOOR = 1e-12

DEFAULT_LINEAR_FLOOR = 0.25

DEFAULT_PROBE_ROUNDS = 6

DEFAULT_PROBE_STARTS = 24

DEFAULT_SEED = 1729

# Largest dimension of an exact k_m enumeration.
EXACT_DIMENSION_LIMIT = 12

# Largest m of an exact L_m enumeration.
EXACT_PREFIX_LIMIT = 14

# Largest dimension of subset enumerations of the fundamental function and
# the democracy ratio.
SUBSET_DIMENSION_LIMIT = 20

# Largest dimension of the subset search of the almost greedy ratio.
ALMOST_GREEDY_DIMENSION_LIMIT = 16

GAUGE_CONDITIONALITY = 'k'
GAUGE_QUASI_GREEDY = 'L'

METHOD_EXACT_ENUMERATION = 'exact-enumeration'
METHOD_EXACT_LATTICE = 'exact-lattice'
METHOD_PROBE_LOWER_BOUND = 'probe-lower-bound'

MODE_AUTO = 'auto'
MODE_EXACT = 'exact'
MODE_PROBE = 'probe'

MODES = frozenset([MODE_AUTO, MODE_EXACT, MODE_PROBE])

_CHUNK_SIZE = 65536

# Factors tried per coefficient during coordinate ascent.
_ASCENT_FACTORS = numpy.array([-1.0, 0.0, 0.5, 2.0, -0.5, -2.0])


class FiniteBasis(object):
  """Basis of a finite dimensional coordinate space.

  Attributes:
    ambient (SpaceNorm): norm of the coordinate space.
    condition_number (float): 2-norm condition estimate of the change of
        basis matrix.
    is_lattice (bool): True if the basis is the coordinate basis of a
        lattice norm, so every coordinate projection has norm 1.
    label (str): label.
    matrix (numpy.ndarray): change of basis matrix, column j holds x_j.
    span_prefix (int): number s such that the first m <= s vectors span the
        first m coordinates, or None.
    spreading_invariant (bool): True if the norm of a combination depends
        only on the ordered coefficients and not on the indexes used.
  """

  def __init__(
      self, matrix, ambient, label, span_prefix=None,
      spreading_invariant=False, is_lattice=False):
    """Initializes a finite basis.

    Args:
      matrix (numpy.ndarray): change of basis matrix, column j holds x_j.
      ambient (SpaceNorm): norm of the coordinate space.
      label (str): label.
      span_prefix (Optional[int]): declared span prefix.
      spreading_invariant (Optional[bool]): True if the basis is spreading
          invariant.
      is_lattice (Optional[bool]): True if the basis is the coordinate basis
          of a lattice norm.

    Raises:
      PreconditionError: if the vectors are linearly dependent or do not
          satisfy the declared span prefix.
      ShapeMismatchError: if the matrix is not square or does not match the
          dimension of the ambient norm.
    """
    matrix = numpy.asarray(matrix, dtype=numpy.float64)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
      raise errors.ShapeMismatchError('Change of basis matrix must be square.')

    dimension = matrix.shape[0]
    if ambient.dimension is not None and ambient.dimension != dimension:
      raise errors.ShapeMismatchError(
          f'Ambient dimension: {ambient.dimension:d} does not match basis '
          f'dimension: {dimension:d}')

    condition_number = float(numpy.linalg.cond(matrix)) if dimension else 1.0
    if not condition_number < 1.0 / numpy.finfo(numpy.float64).eps:
      raise errors.PreconditionError(
          f'Vectors of basis: {label:s} are linearly dependent.')

    if span_prefix is not None:
      leading = matrix[:, :span_prefix]
      if (numpy.any(numpy.tril(leading, -1)) or
          not numpy.all(numpy.diagonal(leading))):
        raise errors.PreconditionError(
            f'First vectors of basis: {label:s} do not span the first '
            f'{span_prefix:d} coordinates.')

    super(FiniteBasis, self).__init__()
    self.ambient = ambient
    self.condition_number = condition_number
    self.is_lattice = is_lattice
    self.label = label
    self.matrix = matrix
    self.span_prefix = span_prefix
    self.spreading_invariant = spreading_invariant

  @property
  def dimension(self):
    """int: number of vectors."""
    return self.matrix.shape[0]

  def AsDict(self):
    """Retrieves the basis description.

    Returns:
      dict[str, object]: basis description.
    """
    return {
        'ambient': self.ambient.AsDict(),
        'condition_number': self.condition_number,
        'dimension': self.dimension,
        'label': self.label,
        'span_prefix': self.span_prefix}

  def CoefficientsOf(self, coordinates):
    """Expands coordinates in the basis.

    Args:
      coordinates (numpy.ndarray): coordinates.

    Returns:
      numpy.ndarray: coefficients.
    """
    return numpy.linalg.solve(self.matrix, coordinates)

  def Coordinates(self, coefficients):
    """Computes the coordinates of combinations.

    Args:
      coefficients (numpy.ndarray): coefficients, or a matrix with one
          coefficient vector per row.

    Returns:
      numpy.ndarray: coordinates, one vector per row for a matrix.
    """
    return numpy.asarray(coefficients, dtype=numpy.float64) @ self.matrix.T

  def Norm(self, coefficients):
    """Computes the norm of a combination.

    Args:
      coefficients (numpy.ndarray): coefficients.

    Returns:
      float: norm of sum a_j x_j.
    """
    return float(self.Norms(numpy.asarray(coefficients)[None, :])[0])

  def Norms(self, coefficients):
    """Computes the norms of combinations.

    Args:
      coefficients (numpy.ndarray): matrix with one coefficient vector per
          row.

    Returns:
      numpy.ndarray: norm per row.
    """
    return norms.EvaluateNorms(self.Coordinates(coefficients), self.ambient)


class GaugeEntry(object):
  """Value of a conditionality gauge at one m.

  Attributes:
    coefficients (numpy.ndarray): coefficients of the witness f.
    kind (str): gauge kind, "L" or "k".
    m (int): m.
    method (str): "exact-enumeration", "exact-lattice" or
        "probe-lower-bound".
    subset (tuple[int]): 1-based indexes of the witness set A.
    value (float): ||S_A f|| / ||f|| of the witness.
  """

  def __init__(self, kind, m, value, method, coefficients, subset):
    """Initializes a gauge entry.

    Args:
      kind (str): gauge kind, "L" or "k".
      m (int): m.
      value (float): gauge value.
      method (str): method used.
      coefficients (numpy.ndarray): coefficients of the witness f.
      subset (list[int]): 1-based indexes of the witness set A.
    """
    super(GaugeEntry, self).__init__()
    self.coefficients = numpy.asarray(coefficients, dtype=numpy.float64)
    self.kind = kind
    self.m = m
    self.method = method
    self.subset = tuple(int(index) for index in subset)
    self.value = float(value)

  def AsDict(self):
    """Retrieves the entry values.

    Returns:
      dict[str, object]: entry values.
    """
    return {
        'kind': self.kind,
        'm': self.m,
        'method': self.method,
        'value': self.value,
        'witness': {
            'coefficients': [float(value) for value in self.coefficients],
            'subset': list(self.subset)}}

  def Reevaluate(self, basis):
    """Recomputes the ratio of the witness.

    Args:
      basis (FiniteBasis): basis.

    Returns:
      float: ||S_A f|| / ||f||.
    """
    projected = CoordinateProjection(basis, self.subset, self.coefficients)
    return basis.Norm(projected) / basis.Norm(self.coefficients)


class GaugeReport(object):
  """Gauge values of a basis over a range of m.

  Attributes:
    basis_label (str): label of the basis.
    entries (list[GaugeEntry]): entries in increasing m.
    kind (str): gauge kind, "L" or "k".
  """

  def __init__(self, basis_label, kind, entries):
    """Initializes a gauge report.

    Args:
      basis_label (str): label of the basis.
      kind (str): gauge kind.
      entries (list[GaugeEntry]): entries.
    """
    super(GaugeReport, self).__init__()
    self.basis_label = basis_label
    self.entries = sorted(entries, key=lambda entry: entry.m)
    self.kind = kind

  @property
  def is_monotone(self):
    """bool: True if the values are non-decreasing in m."""
    values = [entry.value for entry in self.entries]
    return all(first <= second for first, second in zip(values, values[1:]))

  def AsDict(self):
    """Retrieves the report values.

    Returns:
      dict[str, object]: report values.
    """
    return {
        'basis': self.basis_label,
        'entries': [entry.AsDict() for entry in self.entries],
        'kind': self.kind,
        'monotone': self.is_monotone}


class LogConditionalityTable(object):
  """Growth table of a gauge against log m and m.

  Attributes:
    linear_bounded_below (bool): True if gauge / m stays above the linear
        floor.
    log_bounded (bool): True if gauge / log m does not grow over the upper
        half of the range.
    rows (list[dict[str, object]]): m, gauge, gauge / log m and gauge / m.
  """

  def __init__(self, rows, log_bounded, linear_bounded_below):
    """Initializes a growth table.

    Args:
      rows (list[dict[str, object]]): rows.
      log_bounded (bool): log bound flag.
      linear_bounded_below (bool): linear lower bound flag.
    """
    super(LogConditionalityTable, self).__init__()
    self.linear_bounded_below = linear_bounded_below
    self.log_bounded = log_bounded
    self.rows = rows

  def AsDict(self):
    """Retrieves the table values.

    Returns:
      dict[str, object]: table values.
    """
    return {
        'linear_bounded_below': self.linear_bounded_below,
        'log_bounded': self.log_bounded,
        'rows': [dict(row) for row in self.rows]}


def _BlockDiagonal(matrices):
  """Assembles a block diagonal matrix.

  Args:
    matrices (list[numpy.ndarray]): square blocks.

  Returns:
    numpy.ndarray: block diagonal matrix.
  """
  dimension = sum(matrix.shape[0] for matrix in matrices)
  result = numpy.zeros((dimension, dimension), dtype=numpy.float64)
  start = 0
  for matrix in matrices:
    end = start + matrix.shape[0]
    result[start:end, start:end] = matrix
    start = end
  return result


def _GetGenerator(seed, *tags):
  """Creates a random generator for a seed and a tuple of integer tags."""
  return numpy.random.default_rng(numpy.random.SeedSequence([seed, *tags]))


def _GetExtremePoints(ambient, dimension, prefix):
  """Retrieves the extreme points of the unit ball on a coordinate prefix.

  Of every pair x, -x only the point with a positive first nonzero
  coordinate is kept.

  Args:
    ambient (SpaceNorm): sup norm or mixed norm with p = 1.
    dimension (int): number of coordinates.
    prefix (int): number of leading coordinates that can be nonzero.

  Returns:
    numpy.ndarray: one extreme point per row.
  """
  if ambient.kind == norms.SpaceNorm.KIND_SUP:
    segments = [(0, prefix)]
  else:
    segments = []
    start = 0
    for size in ambient.block_sizes:
      end = min(start + size, prefix)
      if end > start:
        segments.append((start, end))
      start += size

  points = []
  for start, end in segments:
    signs = _GetSignPatterns(end - start)
    segment_points = numpy.zeros((signs.shape[0], dimension))
    segment_points[:, start:end] = signs
    points.append(segment_points)

  return numpy.concatenate(points, axis=0)


def _GetSignPatterns(size):
  """Retrieves the sign vectors of a size with a positive first sign.

  Args:
    size (int): number of signs.

  Returns:
    numpy.ndarray: one sign vector per row.
  """
  if size < 1:
    return numpy.zeros((1, 0))

  masks = numpy.arange(1 << (size - 1))[:, None]
  bits = (masks >> numpy.arange(size - 1)[None, :]) & 1
  signs = numpy.ones((masks.shape[0], size))
  signs[:, 1:] = 1.0 - 2.0 * bits
  return signs


def _IterateSubsetMasks(size, maximum_count=None, exact_count=None):
  """Iterates over the subsets of [0, size) in chunks.

  Args:
    size (int): size of the ground set.
    maximum_count (Optional[int]): largest subset size.
    exact_count (Optional[int]): only subsets of this size.

  Yields:
    numpy.ndarray: boolean matrix with one subset per row.
  """
  bit_shifts = numpy.arange(size)
  number_of_masks = 1 << size
  for chunk_start in range(0, number_of_masks, _CHUNK_SIZE):
    masks = numpy.arange(
        chunk_start, min(chunk_start + _CHUNK_SIZE, number_of_masks))
    subsets = ((masks[:, None] >> bit_shifts[None, :]) & 1).astype(bool)

    counts = subsets.sum(axis=1)
    keep = numpy.ones(counts.shape[0], dtype=bool)
    if maximum_count is not None:
      keep &= counts <= maximum_count
    if exact_count is not None:
      keep &= counts == exact_count

    if numpy.any(keep):
      yield subsets[keep]


def _CountSubsets(size, maximum_count):
  """Counts the subsets of [0, size) with at most maximum_count elements."""
  return sum(math.comb(size, count) for count in range(
      min(maximum_count, size) + 1))


def _SubsetIndexes(mask):
  """Converts a boolean mask into 1-based indexes."""
  (indexes, ) = numpy.nonzero(mask)
  return [int(index) + 1 for index in indexes]


def AlmostGreedyRatio(
    basis, samples, seed=DEFAULT_SEED,
    denominator_floor=DEFAULT_DENOMINATOR_FLOOR,
    subset_limit=ALMOST_GREEDY_DIMENSION_LIMIT):
  """Estimates the almost greedy constant of a basis.

  For sampled f, every m and the greedy set G of size m, the ratio
  ||f - S_G f|| / ||f - S_A f|| is maximized over A with |A| = m.

  Args:
    basis (FiniteBasis): basis.
    samples (int): number of sampled coefficient vectors.
    seed (Optional[int]): seed.
    denominator_floor (Optional[float]): denominators below this value are
        skipped.
    subset_limit (Optional[int]): largest dimension with an exhaustive
        search of A, larger dimensions sample A.

  Returns:
    tuple[float, dict[str, object]]: estimate and its witness, or 1.0 and
        None if no ratio was evaluated.
  """
  dimension = basis.dimension
  generator = _GetGenerator(seed, 0)

  subsets_by_size = {}
  if dimension <= subset_limit:
    for m in range(1, dimension):
      subsets_by_size[m] = numpy.concatenate(list(_IterateSubsetMasks(
          dimension, exact_count=m)))

  estimate = 1.0
  witness = None
  for sample in range(samples):
    coefficients = generator.standard_normal(dimension)
    for m in range(1, dimension):
      greedy_mask = numpy.zeros(dimension, dtype=bool)
      greedy_mask[GreedySet(coefficients, m) - 1] = True
      numerator = basis.Norm(numpy.where(greedy_mask, 0.0, coefficients))

      subsets = subsets_by_size.get(m, None)
      if subsets is None:
        subsets = numpy.zeros((samples, dimension), dtype=bool)
        for row in range(samples):
          subsets[row, generator.choice(dimension, m, replace=False)] = True

      denominators = basis.Norms(numpy.where(subsets, 0.0, coefficients))
      valid = denominators >= denominator_floor
      if not numpy.any(valid):
        continue

      valid_indexes = numpy.nonzero(valid)[0]
      best = valid_indexes[int(numpy.argmin(denominators[valid]))]
      ratio = numerator / float(denominators[best])
      if ratio > estimate:
        estimate = ratio
        witness = {
            'coefficients': [float(value) for value in coefficients],
            'greedy_set': _SubsetIndexes(greedy_mask),
            'm': m,
            'sample': sample,
            'subset': _SubsetIndexes(subsets[best])}

  logging.debug(
      f'Basis: {basis.label:s} almost greedy estimate: {estimate:.17g}')
  return estimate, witness


def BesovSumBasis(levels, p):
  """Creates the direct sum of summing bases of sizes 2, 4, ..., 2^levels.

  Args:
    levels (int): number of levels.
    p (float): exponent of the mixed ambient norm.

  Returns:
    FiniteBasis: basis of dimension 2^(levels + 1) - 2.

  Raises:
    InvalidParameterError: if the number of levels is smaller than 1.
  """
  if levels < 1:
    raise errors.InvalidParameterError(
        f'Unsupported number of levels: {levels!s}')

  block_sizes = [2 ** level for level in range(1, levels + 1)]
  matrix = _BlockDiagonal([
      numpy.triu(numpy.ones((size, size))) for size in block_sizes])
  ambient = norms.SpaceNorm(
      norms.SpaceNorm.KIND_MIXED, p=p, block_sizes=block_sizes)
  return FiniteBasis(
      matrix, ambient, f'besov_sum({levels:d}, p={p:g})',
      span_prefix=matrix.shape[0])


def ComputeGauge(
    basis, kind, m, mode=MODE_AUTO, seed=DEFAULT_SEED,
    starts=DEFAULT_PROBE_STARTS, rounds=DEFAULT_PROBE_ROUNDS,
    exact_prefix=EXACT_PREFIX_LIMIT, exact_dimension=EXACT_DIMENSION_LIMIT):
  """Computes L_m or k_m of a basis.

  Args:
    basis (FiniteBasis): basis.
    kind (str): gauge kind, "L" or "k".
    m (int): m, where 1 <= m <= dimension.
    mode (Optional[str]): "exact", "probe" or "auto", which uses exact
        enumeration when supported.
    seed (Optional[int]): seed of the probe search.
    starts (Optional[int]): number of probe starting points.
    rounds (Optional[int]): number of coordinate ascent rounds per start.
    exact_prefix (Optional[int]): largest m of an exact L_m.
    exact_dimension (Optional[int]): largest dimension of an exact k_m.

  Returns:
    GaugeEntry: gauge value and witness.

  Raises:
    InvalidParameterError: if the kind, mode or m is not supported.
    ModeUnsupportedError: if exact mode is requested and its preconditions
        do not hold.
  """
  if kind not in (GAUGE_CONDITIONALITY, GAUGE_QUASI_GREEDY):
    raise errors.InvalidParameterError(f'Unsupported gauge kind: {kind!s}')

  if mode not in MODES:
    raise errors.InvalidParameterError(f'Unsupported mode: {mode!s}')

  dimension = basis.dimension
  if not 1 <= m <= dimension:
    raise errors.InvalidParameterError(
        f'Unsupported m: {m!s}, expected 1 <= m <= {dimension:d}')

  if basis.is_lattice and mode != MODE_PROBE:
    coefficients = numpy.zeros(dimension)
    coefficients[0] = 1.0
    return GaugeEntry(kind, m, 1.0, METHOD_EXACT_LATTICE, coefficients, [1])

  unsupported_reason = _GetExactUnsupportedReason(
      basis, kind, m, exact_prefix, exact_dimension)

  if mode == MODE_EXACT and unsupported_reason:
    raise errors.ModeUnsupportedError(unsupported_reason)

  if mode == MODE_AUTO and unsupported_reason:
    logging.debug(f'Probing {kind:s}_{m:d}: {unsupported_reason:s}')
    mode = MODE_PROBE

  if mode == MODE_PROBE:
    return _ProbeGauge(basis, kind, m, seed, starts, rounds)

  return _EnumerateGauge(basis, kind, m)


def ComputeGaugeReport(basis, kind, m_values, mode=MODE_AUTO, **kwargs):
  """Computes a gauge over a range of m.

  Probe values are raised to the value at the previous m when smaller,
  since the feasible sets grow with m.

  Args:
    basis (FiniteBasis): basis.
    kind (str): gauge kind, "L" or "k".
    m_values (list[int]): values of m.
    mode (Optional[str]): "exact", "probe" or "auto".
    kwargs (dict[str, object]): keyword arguments of ComputeGauge.

  Returns:
    GaugeReport: gauge report.
  """
  entries = []
  previous_entry = None
  for m in sorted(set(m_values)):
    entry = ComputeGauge(basis, kind, m, mode=mode, **kwargs)
    if previous_entry and previous_entry.value > entry.value:
      entry = GaugeEntry(
          kind, m, previous_entry.value, entry.method,
          previous_entry.coefficients, previous_entry.subset)

    entries.append(entry)
    previous_entry = entry

  return GaugeReport(basis.label, kind, entries)


def CoordinateProjection(basis, subset, coefficients):
  """Applies the coordinate projection S_A.

  Args:
    basis (FiniteBasis): basis.
    subset (iterable[int]): 1-based indexes A.
    coefficients (numpy.ndarray): coefficients.

  Returns:
    numpy.ndarray: coefficients with the entries outside A set to 0.

  Raises:
    IndexOutOfRangeError: if an index lies outside [1, dimension].
  """
  coefficients = numpy.asarray(coefficients, dtype=numpy.float64)
  indexes = numpy.asarray(list(subset), dtype=numpy.int64)
  if indexes.shape[0] and (
      indexes.min() < 1 or indexes.max() > basis.dimension):
    raise errors.IndexOutOfRangeError(
        f'Index set outside [1, {basis.dimension:d}]')

  projected = numpy.zeros_like(coefficients)
  projected[indexes - 1] = coefficients[indexes - 1]
  return projected


def DemocracyRatio(
    basis, m, signed=False, seed=DEFAULT_SEED, samples=1000,
    subset_limit=SUBSET_DIMENSION_LIMIT, sign_limit=EXACT_PREFIX_LIMIT):
  """Computes the democracy ratio at m.

  The ratio is sup ||sum_A e_j x_j|| / inf ||sum_B e_j x_j|| over |A| =
  |B| = m, with e_j = 1 or, when signed, every choice of signs.

  Args:
    basis (FiniteBasis): basis.
    m (int): size of the index sets, where 1 <= m <= dimension.
    signed (Optional[bool]): True to include every sign choice.
    seed (Optional[int]): seed of sampled index sets.
    samples (Optional[int]): number of sampled index sets when the
        dimension exceeds the subset limit.
    subset_limit (Optional[int]): largest dimension enumerated.
    sign_limit (Optional[int]): largest m of a signed enumeration.

  Returns:
    float: democracy ratio, or an estimate from sampled index sets.

  Raises:
    InvalidParameterError: if m is not supported.
    TooLargeError: if signs are requested for m above the sign limit.
  """
  dimension = basis.dimension
  if not 1 <= m <= dimension:
    raise errors.InvalidParameterError(
        f'Unsupported m: {m!s}, expected 1 <= m <= {dimension:d}')

  if signed and m > sign_limit:
    raise errors.TooLargeError(
        f'Signed democracy at m: {m:d} exceeds the sign limit: '
        f'{sign_limit:d}')

  if basis.spreading_invariant and not signed:
    return 1.0

  if dimension <= subset_limit:
    subset_chunks = _IterateSubsetMasks(dimension, exact_count=m)
  else:
    generator = _GetGenerator(seed, m)
    subsets = numpy.zeros((samples, dimension), dtype=bool)
    for row in range(samples):
      subsets[row, generator.choice(dimension, m, replace=False)] = True
    subset_chunks = [subsets]

  signs = numpy.ones((1, m))
  if signed:
    signs = numpy.concatenate([_GetSignPatterns(m), -_GetSignPatterns(m)])

  largest = 0.0
  smallest = math.inf
  for subsets in subset_chunks:
    (rows, columns) = numpy.nonzero(subsets)
    columns = columns.reshape(subsets.shape[0], m)
    for sign_row in signs:
      coefficients = numpy.zeros(subsets.shape, dtype=numpy.float64)
      coefficients[rows.reshape(-1, m), columns] = sign_row[None, :]
      values = basis.Norms(coefficients)
      largest = max(largest, float(values.max()))
      smallest = min(smallest, float(values.min()))

  return largest / smallest


def DirectSumBasis(bases, p):
  """Creates the l_p direct sum of bases.

  Args:
    bases (list[FiniteBasis]): bases.
    p (float): exponent of the direct sum norm.

  Returns:
    FiniteBasis: direct sum basis.
  """
  components = [(basis.ambient, basis.dimension) for basis in bases]
  ambient = norms.SpaceNorm(
      norms.SpaceNorm.KIND_DIRECT_SUM, p=p, components=components)
  matrix = _BlockDiagonal([basis.matrix for basis in bases])

  span_prefix = None
  if bases[0].span_prefix is not None:
    span_prefix = bases[0].span_prefix
    if all(basis.span_prefix == basis.dimension for basis in bases):
      span_prefix = matrix.shape[0]

  label = ' + '.join(basis.label for basis in bases)
  return FiniteBasis(
      matrix, ambient, f'direct_sum(p={p:g}, {label:s})',
      span_prefix=span_prefix,
      is_lattice=all(basis.is_lattice for basis in bases))


def _EnumerateGauge(basis, kind, m):
  """Computes a gauge by enumerating extreme points and index sets.

  Args:
    basis (FiniteBasis): basis.
    kind (str): gauge kind, "L" or "k".
    m (int): m.

  Returns:
    GaugeEntry: gauge value and witness.
  """
  dimension = basis.dimension
  if kind == GAUGE_QUASI_GREEDY:
    points = _GetExtremePoints(basis.ambient, dimension, m)
    subsets = numpy.zeros((1 << m, dimension), dtype=bool)
    subsets[:, :m] = numpy.concatenate(list(_IterateSubsetMasks(m)))
  else:
    points = _GetExtremePoints(basis.ambient, dimension, dimension)
    subsets = numpy.concatenate(list(_IterateSubsetMasks(
        dimension, maximum_count=m)))

  coefficient_points = numpy.linalg.solve(basis.matrix, points.T).T
  point_norms = basis.Norms(coefficient_points)

  best_value = -math.inf
  best_point = 0
  best_subset = 0
  points_per_chunk = max(1, _CHUNK_SIZE // subsets.shape[0])
  for chunk_start in range(0, points.shape[0], points_per_chunk):
    chunk = coefficient_points[chunk_start:chunk_start + points_per_chunk]
    projected = numpy.where(
        subsets[None, :, :], chunk[:, None, :], 0.0).reshape(-1, dimension)
    ratios = basis.Norms(projected).reshape(chunk.shape[0], -1) / (
        point_norms[chunk_start:chunk_start + chunk.shape[0], None])

    point_index, subset_index = numpy.unravel_index(
        int(numpy.argmax(ratios)), ratios.shape)
    if ratios[point_index, subset_index] > best_value:
      best_value = float(ratios[point_index, subset_index])
      best_point = chunk_start + point_index
      best_subset = subset_index

  logging.debug(
      f'Basis: {basis.label:s} {kind:s}_{m:d} = {best_value:.17g} from '
      f'{points.shape[0]:d} extreme points and {subsets.shape[0]:d} sets')

  return GaugeEntry(
      kind, m, best_value, METHOD_EXACT_ENUMERATION,
      coefficient_points[best_point], _SubsetIndexes(subsets[best_subset]))


def FundamentalFunction(
    basis, m, seed=DEFAULT_SEED, samples=1000,
    subset_limit=SUBSET_DIMENSION_LIMIT):
  """Computes the fundamental function at m.

  Args:
    basis (FiniteBasis): basis.
    m (int): largest size of the index sets, where 0 <= m <= dimension.
    seed (Optional[int]): seed of sampled index sets.
    samples (Optional[int]): number of sampled index sets when the
        dimension exceeds the subset limit.
    subset_limit (Optional[int]): largest dimension enumerated.

  Returns:
    float: sup ||sum_A x_j|| over |A| <= m, a lower bound from sampled index
        sets when the dimension exceeds the subset limit.

  Raises:
    InvalidParameterError: if m is not supported.
  """
  dimension = basis.dimension
  if not 0 <= m <= dimension:
    raise errors.InvalidParameterError(
        f'Unsupported m: {m!s}, expected 0 <= m <= {dimension:d}')

  if m == 0:
    return 0.0

  if basis.spreading_invariant:
    coefficients = numpy.zeros(dimension)
    coefficients[:m] = 1.0
    return basis.Norm(coefficients)

  if dimension <= subset_limit:
    return max(
        float(basis.Norms(subsets.astype(numpy.float64)).max())
        for subsets in _IterateSubsetMasks(dimension, maximum_count=m))

  generator = _GetGenerator(seed, m)
  subsets = numpy.zeros((samples + 1, dimension), dtype=bool)
  subsets[0, :m] = True
  for row in range(1, samples + 1):
    size = int(generator.integers(1, m + 1))
    subsets[row, generator.choice(dimension, size, replace=False)] = True
  return float(basis.Norms(subsets.astype(numpy.float64)).max())


def _GetExactUnsupportedReason(basis, kind, m, exact_prefix, exact_dimension):
  """Determines why exact enumeration does not apply.

  Args:
    basis (FiniteBasis): basis.
    kind (str): gauge kind, "L" or "k".
    m (int): m.
    exact_prefix (int): largest m of an exact L_m.
    exact_dimension (int): largest dimension of an exact k_m.

  Returns:
    str: reason or None if exact enumeration applies.
  """
  if not basis.ambient.is_sign_extreme:
    return (
        f'extreme points of ambient norm: {basis.ambient!r} are not '
        f'enumerable')

  if kind == GAUGE_QUASI_GREEDY:
    if basis.span_prefix is None or basis.span_prefix < m:
      return f'first {m:d} vectors do not span the first {m:d} coordinates'
    if m > exact_prefix:
      return f'm: {m:d} exceeds the exact prefix limit: {exact_prefix:d}'

  elif basis.dimension > exact_dimension:
    return (
        f'dimension: {basis.dimension:d} exceeds the exact dimension limit: '
        f'{exact_dimension:d}')

  return None


def GreedySet(coefficients, m):
  """Determines a greedy set.

  Args:
    coefficients (numpy.ndarray): coefficients.
    m (int): size, where 0 <= m <= number of coefficients.

  Returns:
    numpy.ndarray: sorted 1-based indexes of the m largest magnitudes, ties
        broken by the smallest index.

  Raises:
    InvalidParameterError: if m is not supported.
  """
  coefficients = numpy.asarray(coefficients, dtype=numpy.float64)
  if not 0 <= m <= coefficients.shape[0]:
    raise errors.InvalidParameterError(
        f'Unsupported greedy set size: {m!s}')

  order = numpy.argsort(-numpy.abs(coefficients), kind='stable')
  return numpy.sort(order[:m]) + 1


def LogConditionalityCheck(
    basis_family, m_values, kind=GAUGE_QUASI_GREEDY, mode=MODE_AUTO,
    linear_floor=DEFAULT_LINEAR_FLOOR, trend_epsilon=0.05, **kwargs):
  """Tabulates the growth of a gauge against log m and m.

  Args:
    basis_family (function): returns the basis used at m.
    m_values (list[int]): values of m.
    kind (Optional[str]): gauge kind, "L" or "k".
    mode (Optional[str]): "exact", "probe" or "auto".
    linear_floor (Optional[float]): lower bound of gauge / m.
    trend_epsilon (Optional[float]): relative growth of gauge / log m over
        the upper half of the range that still counts as bounded.
    kwargs (dict[str, object]): keyword arguments of ComputeGauge.

  Returns:
    LogConditionalityTable: growth table.
  """
  rows = []
  for m in sorted(set(m_values)):
    entry = ComputeGauge(basis_family(m), kind, m, mode=mode, **kwargs)
    rows.append({
        'gauge': entry.value,
        'log_ratio': entry.value / math.log(m) if m > 1 else None,
        'linear_ratio': entry.value / m,
        'm': m,
        'method': entry.method})

  log_ratios = [
      row['log_ratio'] for row in rows if row['log_ratio'] is not None]
  half = len(log_ratios) // 2
  log_bounded = True
  if half:
    log_bounded = max(log_ratios[half:]) <= (
        (1.0 + trend_epsilon) * max(log_ratios[:half]))

  linear_bounded_below = all(
      row['linear_ratio'] >= linear_floor for row in rows)

  return LogConditionalityTable(rows, log_bounded, linear_bounded_below)


def _ProbeGauge(basis, kind, m, seed, starts, rounds):
  """Searches for a large ratio ||S_A f|| / ||f|| by coordinate ascent.

  Starting points are structured sign patterns in coordinate space followed
  by random coefficient vectors. For every candidate f the best index set is
  enumerated when there are few, otherwise it is improved by toggling single
  indexes.

  Args:
    basis (FiniteBasis): basis.
    kind (str): gauge kind, "L" or "k".
    m (int): m.
    seed (int): seed.
    starts (int): number of starting points.
    rounds (int): number of ascent rounds per starting point.

  Returns:
    GaugeEntry: lower bound and its witness.
  """
  dimension = basis.dimension
  support_size = m if kind == GAUGE_QUASI_GREEDY else dimension
  maximum_count = None if kind == GAUGE_QUASI_GREEDY else m

  subsets = None
  if _CountSubsets(support_size, maximum_count or support_size) <= _CHUNK_SIZE:
    subsets = numpy.zeros((0, dimension), dtype=bool)
    for chunk in _IterateSubsetMasks(support_size, maximum_count=maximum_count):
      padded = numpy.zeros((chunk.shape[0], dimension), dtype=bool)
      padded[:, :support_size] = chunk
      subsets = numpy.concatenate([subsets, padded])

  generator = _GetGenerator(seed, ord(kind), m)

  def _BestRatios(candidates, subset):
    """Computes the ratio of every candidate with the best or a given set."""
    candidate_norms = basis.Norms(candidates)
    if subsets is None:
      ratios = basis.Norms(numpy.where(subset, candidates, 0.0))
      return ratios / candidate_norms, [subset] * candidates.shape[0]

    best_ratios = numpy.empty(candidates.shape[0])
    best_subsets = []
    for row, candidate in enumerate(candidates):
      ratios = basis.Norms(numpy.where(subsets, candidate[None, :], 0.0))
      index = int(numpy.argmax(ratios))
      best_ratios[row] = ratios[index] / candidate_norms[row]
      best_subsets.append(subsets[index])
    return best_ratios, best_subsets

  start_points = []
  alternating = numpy.where(numpy.arange(support_size) % 2 == 0, 1.0, -1.0)
  for pattern in (alternating, numpy.ones(support_size)):
    coordinates = numpy.zeros(dimension)
    coordinates[:support_size] = pattern
    if basis.span_prefix is not None and basis.span_prefix >= support_size:
      start_points.append(basis.CoefficientsOf(coordinates))

  while len(start_points) < starts:
    coefficients = numpy.zeros(dimension)
    coefficients[:support_size] = generator.standard_normal(support_size)
    start_points.append(coefficients)

  best_value = -math.inf
  best_coefficients = None
  best_subset = None
  for coefficients in start_points:
    if not numpy.any(coefficients):
      continue

    subset = numpy.zeros(dimension, dtype=bool)
    subset[generator.choice(support_size, min(
        maximum_count or support_size, support_size), replace=False)] = True
    (value, ), (subset, ) = _BestRatios(coefficients[None, :], subset)

    for _ in range(rounds):
      improved = False
      for index in range(support_size):
        candidates = numpy.repeat(
            coefficients[None, :], _ASCENT_FACTORS.shape[0], axis=0)
        candidates[:, index] *= _ASCENT_FACTORS
        nonzero = numpy.any(candidates, axis=1)
        candidates = candidates[nonzero]
        if not candidates.shape[0]:
          continue

        ratios, candidate_subsets = _BestRatios(candidates, subset)
        row = int(numpy.nanargmax(ratios))
        if ratios[row] > value * (1.0 + 1e-12):
          value = float(ratios[row])
          coefficients = candidates[row]
          subset = candidate_subsets[row]
          improved = True

      if subsets is None:
        for index in range(support_size):
          toggled = subset.copy()
          toggled[index] = not toggled[index]
          if maximum_count is not None and toggled.sum() > maximum_count:
            continue
          (ratio, ), _ = _BestRatios(coefficients[None, :], toggled)
          if ratio > value * (1.0 + 1e-12):
            value = float(ratio)
            subset = toggled
            improved = True

      if not improved:
        break

    if value > best_value:
      best_value = value
      best_coefficients = coefficients
      best_subset = subset

  entry = GaugeEntry(
      kind, m, best_value, METHOD_PROBE_LOWER_BOUND, best_coefficients,
      _SubsetIndexes(best_subset))

  # Report the value its witness reproduces.
  entry.value = entry.Reevaluate(basis)
  logging.debug(
      f'Basis: {basis.label:s} {kind:s}_{m:d} >= {entry.value:.17g} from '
      f'{len(start_points):d} probe starts')
  return entry


def SummingBasis(n):
  """Creates the summing basis s_j = e_1 + ... + e_j of the sup norm.

  Args:
    n (int): dimension.

  Returns:
    FiniteBasis: summing basis.

  Raises:
    InvalidParameterError: if the dimension is smaller than 1.
  """
  if n < 1:
    raise errors.InvalidParameterError(f'Unsupported dimension: {n!s}')

  return FiniteBasis(
      numpy.triu(numpy.ones((n, n))), norms.SpaceNorm(norms.SpaceNorm.KIND_SUP),
      f'summing({n:d})', span_prefix=n)


def UnitVectorBasis(dimension, ambient):
  """Creates the unit vector basis of a lattice norm.

  Args:
    dimension (int): dimension.
    ambient (SpaceNorm): norm of the coordinate space.

  Returns:
    FiniteBasis: unit vector basis.

  Raises:
    InvalidParameterError: if the dimension is smaller than 1.
  """
  if dimension < 1:
    raise errors.InvalidParameterError(
        f'Unsupported dimension: {dimension!s}')

  return FiniteBasis(
      numpy.eye(dimension), ambient, f'unit_vector({ambient!r}, {dimension:d})',
      span_prefix=dimension,
      spreading_invariant=ambient.is_spreading_invariant, is_lattice=True)
