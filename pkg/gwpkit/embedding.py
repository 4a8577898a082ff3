# -*- coding: utf-8 -*-
"""Complemented embedding of the mixed space into a Garling space.

Level n of a plan holds n consecutive blocks J_1,n, ..., J_n,n with lengths
from a kappa tuple built at tolerance t = sqrt(1 + epsilon). The vectors
y_i,n are the normalized indicators of the blocks and the functionals
y*_i,n their weighted averages, so S maps a triangular array to the span of
the vectors and P maps a sequence back to triangular arrays with
P(S(x)) = x.
"""

import itertools
import logging
import math

import numpy

from gwpkit import construction
from gwpkit import errors
from gwpkit import norms
from gwpkit import sequences


DEFAULT_DENSE_LIMIT = 4096

DEFAULT_SEED = 1729

DEFAULT_TRIALS = 1000

# Number of levels up to which every path is enumerated.
EXHAUSTIVE_PATH_LEVELS = 8

RANDOM_DISTRIBUTION = (
    'independent coefficients with uniform random sign and magnitude '
    '10^U(-4, 0)')


class HumpPredicate(object):
  """Block length predicate: the block keeps mass theta at a shift.

  Attributes:
    m (int): shift.
    theta (float): ratio bound.
  """

  def __init__(self, weight, m, theta):
    """Initializes a hump predicate.

    Args:
      weight (Weight): weight.
      m (int): shift.
      theta (float): ratio bound.
    """
    super(HumpPredicate, self).__init__()
    self._weight = weight
    self.m = m
    self.theta = theta

  def __call__(self, k_values):
    """Evaluates the predicate.

    Args:
      k_values (numpy.ndarray): block lengths.

    Returns:
      numpy.ndarray: True for block lengths k with
          (W_m+k - W_m) / W_k >= theta.
    """
    return self._weight.HumpRatios(self.m, k_values) >= self.theta


class TriangularArray(object):
  """Triangular array (x_i,n) with 1 <= i <= n <= N.

  Attributes:
    rows (list[numpy.ndarray]): row n - 1 holds x_1,n, ..., x_n,n.
  """

  def __init__(self, rows):
    """Initializes a triangular array.

    Args:
      rows (list[list[float]]): row n - 1 holds n values.

    Raises:
      ShapeMismatchError: if a row does not hold as many values as its
          level.
    """
    rows = [numpy.asarray(row, dtype=numpy.float64) for row in rows]
    for level, row in enumerate(rows, start=1):
      if row.shape != (level, ):
        raise errors.ShapeMismatchError(
            f'Row of level: {level:d} holds {row.size:d} values.')

    super(TriangularArray, self).__init__()
    self.rows = rows

  @property
  def levels(self):
    """int: number of levels."""
    return len(self.rows)

  @classmethod
  def FromFlat(cls, values, levels):
    """Creates a triangular array from values in (n, i) order.

    Args:
      values (numpy.ndarray): values.
      levels (int): number of levels.

    Returns:
      TriangularArray: triangular array.

    Raises:
      ShapeMismatchError: if the number of values does not match.
    """
    values = numpy.asarray(values, dtype=numpy.float64).ravel()
    if values.shape[0] != levels * (levels + 1) // 2:
      raise errors.ShapeMismatchError(
          f'Expected {levels * (levels + 1) // 2:d} values for {levels:d} '
          f'levels.')

    rows = []
    for level in range(1, levels + 1):
      start = (level - 1) * level // 2
      rows.append(values[start:start + level])
    return cls(rows)

  @classmethod
  def Unit(cls, levels, i, n):
    """Creates the unit array at (i, n).

    Args:
      levels (int): number of levels.
      i (int): block index.
      n (int): level.

    Returns:
      TriangularArray: unit array.
    """
    values = numpy.zeros(levels * (levels + 1) // 2)
    values[(n - 1) * n // 2 + i - 1] = 1.0
    return cls.FromFlat(values, levels)

  def Flatten(self):
    """Retrieves the values in (n, i) order.

    Returns:
      numpy.ndarray: values.
    """
    if not self.rows:
      return numpy.zeros(0, dtype=numpy.float64)
    return numpy.concatenate(self.rows)


class GammaSpec(object):
  """Partition of the coordinates into consecutive blocks with a ratio bound.

  Attributes:
    block_lengths (tuple[int]): block lengths k_n.
    partial_sums (numpy.ndarray): q_0 = 0, q_1, ..., block ends.
    theta (float): certified lower bound of the block ratios.
  """

  def __init__(self, block_lengths, theta):
    """Initializes a block partition.

    Args:
      block_lengths (list[int]): block lengths.
      theta (float): ratio bound.

    Raises:
      InvalidParameterError: if a block length is not positive or theta is
          not positive.
    """
    block_lengths = tuple(int(length) for length in block_lengths)
    if not block_lengths or min(block_lengths) < 1:
      raise errors.InvalidParameterError('Block lengths must be positive.')

    if not theta > 0.0:
      raise errors.InvalidParameterError(
          f'Unsupported ratio bound: {theta!s}')

    super(GammaSpec, self).__init__()
    self.block_lengths = block_lengths
    self.partial_sums = numpy.concatenate([[0], numpy.cumsum(block_lengths)])
    self.theta = theta

  def Ratios(self, weight):
    """Computes the block ratios.

    Args:
      weight (Weight): weight.

    Returns:
      numpy.ndarray: (W_q_n - W_q_n-1) / W_k_n per block.
    """
    prefix_sums = weight.PrefixSums(int(self.partial_sums[-1]))
    lengths = numpy.asarray(self.block_lengths)
    return (prefix_sums[self.partial_sums[1:]] -
            prefix_sums[self.partial_sums[:-1]]) / prefix_sums[lengths]


class YFunctional(object):
  """Weighted average functional supported on one block.

  Attributes:
    factors (numpy.ndarray): factor per coordinate of the block.
    start (int): first 1-based coordinate of the block.
  """

  def __init__(self, start, factors):
    """Initializes a functional.

    Args:
      start (int): first 1-based coordinate of the block.
      factors (numpy.ndarray): factor per coordinate of the block.
    """
    super(YFunctional, self).__init__()
    self.factors = factors
    self.start = start

  def Apply(self, sequence):
    """Applies the functional.

    Args:
      sequence (FinSeq): sequence.

    Returns:
      float: sum of factor times coefficient over the block.
    """
    block = sequences.RestrictCompress(
        sequence, range(self.start, self.start + self.factors.shape[0]))
    return float(numpy.dot(self.factors, block.coefficients))

  def AsDict(self):
    """Retrieves the coefficient table.

    Returns:
      dict[int, float]: factor per 1-based coordinate.
    """
    return {
        self.start + offset: float(factor)
        for offset, factor in enumerate(self.factors)}


class EmbeddingPlan(object):
  """Blocks, shifts and intervals of the embedding at finite depth.

  Attributes:
    epsilon (float): tolerance.
    intervals (dict[tuple[int, int], tuple[int, int]]): first and last
        1-based coordinate of J_i,n per (i, n).
    kappas (list[tuple[int]]): block lengths (k_1,n, ..., k_n,n) per level.
    level_shifts (list[int]): m_n per level.
    p (float): exponent.
    t (float): sqrt(1 + epsilon).
    weight (Weight): weight.
  """

  def __init__(
      self, epsilon, kappas, weight, p, intervals=None, level_shifts=None):
    """Initializes an embedding plan.

    Args:
      epsilon (float): tolerance, where epsilon > 0.
      kappas (list[list[int]]): block lengths per level, level n holding n.
      weight (Weight): weight.
      p (float): exponent.
      intervals (Optional[dict[tuple[int, int], tuple[int, int]]]): stored
          intervals, where None derives them from the block lengths.
      level_shifts (Optional[list[int]]): stored level shifts, where None
          derives them from the block lengths.

    Raises:
      InvalidParameterError: if epsilon is not positive or the block
          lengths do not form levels 1 up to N.
    """
    if not epsilon > 0.0:
      raise errors.InvalidParameterError(
          f'Unsupported tolerance: {epsilon!s}, expected epsilon > 0')

    norms.CheckExponent(p)

    kappas = [tuple(int(entry) for entry in kappa) for kappa in kappas]
    for level, kappa in enumerate(kappas, start=1):
      if len(kappa) != level or min(kappa) < 1:
        raise errors.InvalidParameterError(
            f'Level: {level:d} requires {level:d} positive block lengths.')

    super(EmbeddingPlan, self).__init__()
    self.epsilon = float(epsilon)
    self.kappas = kappas
    self.p = float(p)
    self.t = math.sqrt(1.0 + epsilon)
    self.weight = weight

    self.intervals = intervals or self._DeriveIntervals()
    self.level_shifts = level_shifts or self.DeriveLevelShifts()

  @property
  def block_indexes(self):
    """list[tuple[int, int]]: (i, n) in lexicographic (n, i) order."""
    return [
        (i, n) for n in range(1, self.levels + 1) for i in range(1, n + 1)]

  @property
  def length(self):
    """int: last coordinate of the last block."""
    return self.intervals[(self.levels, self.levels)][1] if self.levels else 0

  @property
  def levels(self):
    """int: number of levels N."""
    return len(self.kappas)

  def _DeriveIntervals(self):
    """Derives the intervals from the block lengths.

    Returns:
      dict[tuple[int, int], tuple[int, int]]: intervals.
    """
    intervals = {}
    block_end = 0
    for n, kappa in enumerate(self.kappas, start=1):
      for i, block_length in enumerate(kappa, start=1):
        intervals[(i, n)] = (block_end + 1, block_end + block_length)
        block_end += block_length
    return intervals

  def DeriveLevelShifts(self):
    """Derives the level shifts from the block lengths.

    Returns:
      list[int]: m_n, the sum of the largest block lengths of the levels
          before n.
    """
    level_shifts = []
    level_shift = 0
    for kappa in self.kappas:
      level_shifts.append(level_shift)
      level_shift += max(kappa)
    return level_shifts

  def GetBlockArrays(self):
    """Retrieves the blocks in (n, i) order as arrays.

    Returns:
      tuple[numpy.ndarray, numpy.ndarray, numpy.ndarray]: first coordinate,
          last coordinate and block length k_i,n per block.
    """
    blocks = self.block_indexes
    starts = numpy.array([self.intervals[block][0] for block in blocks])
    ends = numpy.array([self.intervals[block][1] for block in blocks])
    lengths = numpy.array([
        self.kappas[n - 1][i - 1] for i, n in blocks], dtype=numpy.int64)
    return starts, ends, lengths

  def AsDict(self):
    """Retrieves the plan in the format read by the definitions file.

    Returns:
      dict[str, object]: plan values.
    """
    block_ends = []
    for n in range(1, self.levels + 1):
      block_ends.append([self.intervals[(i, n)][1] for i in range(1, n + 1)])

    return {
        'block_ends': block_ends,
        'epsilon': self.epsilon,
        'intervals': [
            {'i': i, 'n': n, 'first': self.intervals[(i, n)][0],
             'last': self.intervals[(i, n)][1]}
            for i, n in self.block_indexes],
        'kappas': [list(kappa) for kappa in self.kappas],
        'level_shifts': list(self.level_shifts),
        'p': self.p,
        't': self.t,
        'weight': self.weight.AsDict()}

  def BlockLength(self, i, n):
    """Retrieves a block length.

    Args:
      i (int): block index.
      n (int): level.

    Returns:
      int: k_i,n.
    """
    self._CheckBlockIndex(i, n)
    return self.kappas[n - 1][i - 1]

  def _CheckBlockIndex(self, i, n):
    """Checks a block index.

    Args:
      i (int): block index.
      n (int): level.

    Raises:
      IndexOutOfRangeError: if not 1 <= i <= n <= N.
    """
    if not 1 <= i <= n <= self.levels:
      raise errors.IndexOutOfRangeError(
          f'Block: ({i!s}, {n!s}) outside levels 1 to {self.levels:d}.')

  def LevelVector(self, n):
    """Retrieves y_n, the sum of the vectors of a level.

    Args:
      n (int): level.

    Returns:
      FinSeq: y_1,n + ... + y_n,n.
    """
    self._CheckBlockIndex(1, n)
    first = self.intervals[(1, n)][0]
    return sequences.FinSeq(
        construction.KappaVector(self.kappas[n - 1], self.weight, self.p)
        .coefficients, offset=first - 1)

  def PathOffsets(self, path):
    """Computes the block ends q_n(alpha) along a path.

    Args:
      path (tuple[int]): block index i_n per level n.

    Returns:
      numpy.ndarray: q_0 = 0, q_1, ... where q_n sums k_i_r,r over r <= n.
    """
    lengths = [self.kappas[n][i - 1] for n, i in enumerate(path)]
    return numpy.concatenate([[0], numpy.cumsum(lengths)])

  def YFunctional(self, i, n):
    """Retrieves the functional y*_i,n.

    Args:
      i (int): block index.
      n (int): level.

    Returns:
      YFunctional: functional with factors W_k^(1/p) w_j / sum of w over J.

    Raises:
      IndexOutOfRangeError: if not 1 <= i <= n <= N.
    """
    self._CheckBlockIndex(i, n)
    first, last = self.intervals[(i, n)]
    block_length = self.kappas[n - 1][i - 1]

    weight_values = self.weight.Values(first, last + 1)
    factors = (self.weight.PrefixSum(block_length) ** (1.0 / self.p) *
               weight_values / numpy.sum(weight_values))
    return YFunctional(first, factors)

  def YVector(self, i, n):
    """Retrieves the vector y_i,n.

    Args:
      i (int): block index.
      n (int): level.

    Returns:
      FinSeq: W_k^(-1/p) times the indicator of J_i,n.

    Raises:
      IndexOutOfRangeError: if not 1 <= i <= n <= N.
    """
    self._CheckBlockIndex(i, n)
    first, _ = self.intervals[(i, n)]
    block_length = self.kappas[n - 1][i - 1]
    return sequences.Shift(construction.MakeV(
        block_length, self.weight, self.p), first - 1)


class CheckResult(object):
  """Result of one family of verification checks.

  Attributes:
    check (str): name of the check.
    details (dict[str, object]): check specific details.
    passed (bool): True if every instance passed.
    trials (int): number of instances checked.
    worst_slack (float): largest violation amount, where values up to the
        tolerance pass, or None if no instance was checked.
  """

  def __init__(self, check):
    """Initializes a check result.

    Args:
      check (str): name of the check.
    """
    super(CheckResult, self).__init__()
    self.check = check
    self.details = {}
    self.passed = True
    self.trials = 0
    self.worst_slack = None

  def AddSlack(self, slack, tolerance):
    """Records the slack of one instance.

    Args:
      slack (float): violation amount, negative when the bound holds with
          room to spare.
      tolerance (float): largest slack that passes.
    """
    self.trials += 1
    slack = float(slack)
    if self.worst_slack is None or slack > self.worst_slack:
      self.worst_slack = slack
    if not slack <= tolerance:
      self.passed = False

  def AsDict(self):
    """Retrieves the result values.

    Returns:
      dict[str, object]: result values.
    """
    return {
        'check': self.check,
        'details': dict(self.details),
        'pass': self.passed,
        'trials': self.trials,
        'worst_slack': self.worst_slack}


class VerificationReport(object):
  """Verification report of an embedding plan.

  Attributes:
    checks (list[CheckResult]): check results sorted by name.
    metadata (dict[str, object]): seed, trials, tolerance and the random
        input distribution.
  """

  def __init__(self, checks, metadata):
    """Initializes a verification report.

    Args:
      checks (list[CheckResult]): check results.
      metadata (dict[str, object]): report metadata.
    """
    super(VerificationReport, self).__init__()
    self.checks = sorted(checks, key=lambda result: result.check)
    self.metadata = metadata

  @property
  def passed(self):
    """bool: True if every check passed."""
    return all(result.passed for result in self.checks)

  def AsDict(self):
    """Retrieves the report values.

    Returns:
      dict[str, object]: report values.
    """
    return {
        'checks': [result.AsDict() for result in self.checks],
        'metadata': dict(self.metadata),
        'pass': self.passed}

  def GetCheck(self, check):
    """Retrieves a check result by name.

    Args:
      check (str): name of the check.

    Returns:
      CheckResult: check result or None if not available.
    """
    for result in self.checks:
      if result.check == check:
        return result
    return None


def ApplyP(plan, sequence):
  """Applies P, the map onto triangular arrays of functional values.

  Args:
    plan (EmbeddingPlan): plan.
    sequence (FinSeq): sequence supported on [1, length of the plan].

  Returns:
    TriangularArray: y*_i,n(f) per block.

  Raises:
    SupportOutOfRangeError: if the sequence is supported beyond the plan.
  """
  coordinates = sequence.ToDense(plan.length)
  weight_values = plan.weight.Values(1, plan.length + 1)

  starts, _, lengths = plan.GetBlockArrays()
  if not lengths.shape[0]:
    return TriangularArray([])

  prefix_sums = plan.weight.PrefixSums(int(lengths.max()))

  # The blocks cover [1, length] so every reduction segment is one block.
  averages = numpy.add.reduceat(weight_values * coordinates, starts - 1) / (
      numpy.add.reduceat(weight_values, starts - 1))
  values = prefix_sums[lengths] ** (1.0 / plan.p) * averages
  return TriangularArray.FromFlat(values, plan.levels)


def ApplyS(plan, array):
  """Applies S, the map from triangular arrays onto block sequences.

  Args:
    plan (EmbeddingPlan): plan.
    array (TriangularArray): array with as many levels as the plan.

  Returns:
    FinSeq: sum of x_i,n y_i,n.

  Raises:
    ShapeMismatchError: if the number of levels differs from the plan.
  """
  if array.levels != plan.levels:
    raise errors.ShapeMismatchError(
        f'Array with {array.levels:d} levels does not match plan with '
        f'{plan.levels:d} levels.')

  starts, ends, lengths = plan.GetBlockArrays()
  if not lengths.shape[0]:
    return sequences.FinSeq()

  prefix_sums = plan.weight.PrefixSums(int(lengths.max()))
  block_values = array.Flatten() * prefix_sums[lengths] ** (-1.0 / plan.p)

  coefficients = numpy.zeros(plan.length, dtype=numpy.float64)
  sizes = ends - starts + 1
  coefficients[numpy.repeat(starts - 1, sizes) + _RangesWithin(sizes)] = (
      numpy.repeat(block_values, sizes))
  return sequences.FinSeq(coefficients)


def BlockDominationCheck(blocks, t, coefficients, weight, p):
  """Checks that a block sequence is t-dominated by the l_p basis.

  Args:
    blocks (list[FinSeq]): blocks with successive supports.
    t (float): bound of the block norms.
    coefficients (list[float]): coefficient per block.
    weight (Weight): weight.
    p (float): exponent.

  Returns:
    tuple[float, float]: Garling norm of the combination and t times the
        l_p norm of the coefficients.

  Raises:
    PreconditionError: if a block norm exceeds t or the supports are not
        successive.
    ShapeMismatchError: if the number of coefficients differs from the
        number of blocks.
  """
  if len(blocks) != len(coefficients):
    raise errors.ShapeMismatchError(
        f'Expected {len(blocks):d} coefficients.')

  previous_last = 0
  for index, block in enumerate(blocks):
    support = block.support
    if support.shape[0]:
      if support[0] <= previous_last:
        raise errors.PreconditionError(
            f'Block: {index:d} does not follow the previous block.')
      previous_last = int(support[-1])

    block_norm = norms.ComputeGarlingValue(block, weight, p) ** (1.0 / p)
    if block_norm > t + norms.COMPOSED_TOLERANCE:
      raise errors.PreconditionError(
          f'Norm of block: {index:d} is {block_norm:.17g} above {t:.17g}')

  combination = numpy.zeros(previous_last, dtype=numpy.float64)
  for block, coefficient in zip(blocks, coefficients):
    if block.support.shape[0]:
      combination += coefficient * block.ToDense(previous_last)

  combination_norm = norms.ComputeGarlingValue(
      sequences.FinSeq(combination), weight, p) ** (1.0 / p)
  return combination_norm, t * norms.ComputeEllpNorm(coefficients, p)


def BuildEmbeddingPlan(
    epsilon, levels, weight, p, k_floor=1,
    k_cap=construction.DEFAULT_K_CAP):
  """Builds an embedding plan level by level.

  Level n uses the shift m_n, the sum of the largest block lengths of the
  previous levels, and accepts only block lengths that keep the share
  t^(-p) of their weight mass when moved to that shift.

  Args:
    epsilon (float): tolerance, where epsilon > 0.
    levels (int): number of levels N.
    weight (Weight): weight.
    p (float): exponent.
    k_floor (Optional[int]): smallest block length.
    k_cap (Optional[int]): largest block length considered per search.

  Returns:
    EmbeddingPlan: plan.

  Raises:
    CapExceededError: if a search finds no block length up to the cap.
    InvalidParameterError: if epsilon or the number of levels is not
        supported.
  """
  if not epsilon > 0.0:
    raise errors.InvalidParameterError(
        f'Unsupported tolerance: {epsilon!s}, expected epsilon > 0')

  if levels < 1:
    raise errors.InvalidParameterError(
        f'Unsupported number of levels: {levels!s}')

  t = math.sqrt(1.0 + epsilon)
  theta = t ** -p

  kappas = []
  level_shift = 0
  for level in range(1, levels + 1):
    predicate = HumpPredicate(weight, level_shift, theta)
    kappa = construction.BuildKappa(
        level, t, weight, p, k_floor=k_floor, extra=predicate, k_cap=k_cap)

    logging.info(
        f'Level: {level:d} shift: {level_shift:d} blocks: '
        f'{list(kappa.entries)!s} norm: {kappa.norm:.17g}')

    kappas.append(kappa.entries)
    level_shift += max(kappa.entries)

  return EmbeddingPlan(epsilon, kappas, weight, p)


def CertifyGamma(block_lengths, weight):
  """Creates a block partition certified with its smallest block ratio.

  Args:
    block_lengths (list[int]): block lengths.
    weight (Weight): weight.

  Returns:
    GammaSpec: block partition.
  """
  gamma = GammaSpec(block_lengths, 1.0)
  gamma.theta = float(gamma.Ratios(weight).min())
  return gamma


def CompressPath(plan, sequence, path):
  """Keeps the coordinates of the blocks along a path and closes the gaps.

  Args:
    plan (EmbeddingPlan): plan.
    sequence (FinSeq): sequence.
    path (tuple[int]): block index i_n per level n.

  Returns:
    FinSeq: sequence restricted to the union of J_i_n,n.
  """
  coordinates = []
  for n, i in enumerate(path, start=1):
    first, last = plan.intervals[(i, n)]
    coordinates.extend(range(first, last + 1))
  return sequences.RestrictCompress(sequence, coordinates)


def MixedNormOfArray(array, p):
  """Computes the l_p sum of the row maxima of a triangular array.

  Args:
    array (TriangularArray): array.
    p (float): exponent.

  Returns:
    float: mixed norm.
  """
  if not array.levels:
    return 0.0
  maximums = numpy.array([numpy.max(numpy.abs(row)) for row in array.rows])
  return float(numpy.sum(maximums ** p) ** (1.0 / p))


def PGamma(gamma, weight, p, sequence):
  """Applies P_gamma, the map onto l_p of weighted block averages.

  Args:
    gamma (GammaSpec): block partition.
    weight (Weight): weight.
    p (float): exponent.
    sequence (FinSeq): sequence, coordinates beyond the last block are
        ignored.

  Returns:
    FinSeq: W_k_n^(1/p) times the weighted average over block n, per block.

  Raises:
    UncertifiedGammaError: if a block ratio is below theta.
  """
  ratios = gamma.Ratios(weight)
  (failing, ) = numpy.nonzero(
      ratios < gamma.theta * (1.0 - norms.ORACLE_TOLERANCE))
  if failing.shape[0]:
    raise errors.UncertifiedGammaError(
        f'Block: {failing[0] + 1:d} has ratio: {ratios[failing[0]]:.17g} '
        f'below: {gamma.theta:.17g}')

  length = int(gamma.partial_sums[-1])
  coordinates = numpy.zeros(length, dtype=numpy.float64)
  stored = min(max(length - sequence.offset, 0), len(sequence.coefficients))
  coordinates[sequence.offset:sequence.offset + stored] = (
      sequence.coefficients[:stored])

  weight_values = weight.Values(1, length + 1)
  starts = gamma.partial_sums[:-1]
  lengths = numpy.asarray(gamma.block_lengths)
  prefix_sums = weight.PrefixSums(int(lengths.max()))

  averages = numpy.add.reduceat(weight_values * coordinates, starts) / (
      numpy.add.reduceat(weight_values, starts))
  return sequences.FinSeq(prefix_sums[lengths] ** (1.0 / p) * averages)


def _RangesWithin(sizes):
  """Concatenates the ranges 0, ..., size - 1 of every size.

  Args:
    sizes (numpy.ndarray): sizes.

  Returns:
    numpy.ndarray: concatenated ranges.
  """
  offsets = numpy.repeat(numpy.cumsum(sizes) - sizes, sizes)
  return numpy.arange(int(numpy.sum(sizes))) - offsets


class _EmbeddingVerifier(object):
  """Runs the verification checks of an embedding plan."""

  def __init__(self, plan, trials, seed, tolerance, dense_limit):
    """Initializes an embedding verifier.

    Args:
      plan (EmbeddingPlan): plan.
      trials (int): number of random inputs per randomized check.
      seed (int): seed of the random inputs.
      tolerance (float): largest slack that passes.
      dense_limit (int): largest number of consecutive coordinates of a
          random input.
    """
    super(_EmbeddingVerifier, self).__init__()
    self._dense_limit = dense_limit
    self._plan = plan
    self._seed = seed
    self._tolerance = tolerance
    self._trials = trials

  def _GarlingNorm(self, sequence):
    """Computes a Garling norm with the plan weight and exponent."""
    return norms.ComputeGarlingValue(
        sequence, self._plan.weight, self._plan.p) ** (1.0 / self._plan.p)

  def _GetGenerators(self, names):
    """Creates one independent random generator per check name.

    Args:
      names (list[str]): check names.

    Returns:
      dict[str, numpy.random.Generator]: generator per check name.
    """
    children = numpy.random.SeedSequence(self._seed).spawn(len(names))
    return {
        name: numpy.random.default_rng(child)
        for name, child in zip(sorted(names), children)}

  def _GetPaths(self, generator, number_of_paths):
    """Retrieves paths alpha = (i_1, ..., i_N).

    Args:
      generator (numpy.random.Generator): random generator.
      number_of_paths (int): number of sampled paths when the levels exceed
          the exhaustive limit.

    Returns:
      list[tuple[int]]: paths.
    """
    levels = self._plan.levels
    if levels <= EXHAUSTIVE_PATH_LEVELS:
      return list(itertools.product(*[
          range(1, n + 1) for n in range(1, levels + 1)]))

    return [
        tuple(int(generator.integers(1, n + 1)) for n in range(1, levels + 1))
        for _ in range(number_of_paths)]

  def _RandomArray(self, generator):
    """Draws a random triangular array with mixed norm 1."""
    levels = self._plan.levels
    values = self._RandomValues(generator, levels * (levels + 1) // 2)
    array = TriangularArray.FromFlat(values, levels)
    return TriangularArray.FromFlat(
        values / MixedNormOfArray(array, self._plan.p), levels)

  def _RandomSequence(self, generator):
    """Draws a random sequence on the plan coordinates.

    Returns:
      FinSeq: sequence on at most dense_limit consecutive coordinates.
    """
    length = self._plan.length
    window = min(length, self._dense_limit)
    offset = int(generator.integers(0, length - window + 1))
    return sequences.FinSeq(
        self._RandomValues(generator, window), offset=offset)

  def _RandomValues(self, generator, size):
    """Draws random signs with log-uniform magnitudes over 4 decades."""
    signs = generator.choice(numpy.array([-1.0, 1.0]), size=size)
    return signs * 10.0 ** generator.uniform(-4.0, 0.0, size=size)

  def _StructuredSequences(self, generator):
    """Builds adversarial sequences.

    These are the vectors y_i,n, the level vectors y_n, constant blocks with
    alternating signs and sums along single paths.

    Yields:
      FinSeq: sequence.
    """
    plan = self._plan
    for i, n in plan.block_indexes:
      yield plan.YVector(i, n)

    for n in range(1, plan.levels + 1):
      level_vector = plan.LevelVector(n)
      yield level_vector

      signs = numpy.where(numpy.arange(n) % 2 == 0, 1.0, -1.0)
      yield ApplyS(plan, TriangularArray([
          signs[:level] if level == n else numpy.zeros(level)
          for level in range(1, plan.levels + 1)]))

    alternating = numpy.where(numpy.arange(plan.length) % 2 == 0, 1.0, -1.0)
    yield sequences.FinSeq(alternating)

    for path in self._GetPaths(generator, self._trials)[:self._trials]:
      rows = [numpy.zeros(level) for level in range(1, plan.levels + 1)]
      for n, i in enumerate(path):
        rows[n][i - 1] = generator.choice(numpy.array([-1.0, 1.0]))
      yield ApplyS(plan, TriangularArray(rows))

  def CheckBiorthogonality(self):
    """Checks y*_i,n(y_i',n') against the identity over the full grid."""
    result = CheckResult('biorthogonality')
    plan = self._plan
    identity = numpy.eye(len(plan.block_indexes))
    for row, (i, n) in enumerate(plan.block_indexes):
      values = ApplyP(plan, plan.YVector(i, n)).Flatten()
      result.AddSlack(
          float(numpy.max(numpy.abs(values - identity[row]))),
          norms.ORACLE_TOLERANCE)
    return result

  def CheckBlockDomination(self, generator):
    """Checks that the level vectors are t-dominated by the l_p basis."""
    result = CheckResult('block_domination')
    plan = self._plan
    blocks = [plan.LevelVector(n) for n in range(1, plan.levels + 1)]
    for _ in range(self._trials):
      coefficients = self._RandomValues(generator, plan.levels)
      coefficients /= norms.ComputeEllpNorm(coefficients, plan.p)
      try:
        left, right = BlockDominationCheck(
            blocks, plan.t, coefficients, plan.weight, plan.p)
      except errors.PreconditionError as exception:
        result.passed = False
        result.details['precondition'] = f'{exception!s}'
        break

      result.AddSlack(left - right, self._tolerance)
    return result

  def CheckCompressedPaths(self, generator):
    """Checks path compressions and the P_gamma bound along paths.

    Returns:
      tuple[CheckResult, CheckResult]: compression and P_gamma results.
    """
    compression_result = CheckResult('path_compression')
    gamma_result = CheckResult('p_gamma_bound')
    plan = self._plan
    paths = self._GetPaths(generator, self._trials)
    theta = plan.t ** -plan.p

    for _ in range(self._trials):
      path = paths[int(generator.integers(0, len(paths)))]
      sequence = self._RandomSequence(generator)

      compressed = CompressPath(plan, sequence, path)
      compressed_norm = self._GarlingNorm(compressed)
      compression_result.AddSlack(
          compressed_norm - self._GarlingNorm(sequence), self._tolerance)

      gamma = GammaSpec(
          [plan.kappas[n][i - 1] for n, i in enumerate(path)], theta)
      try:
        averages = PGamma(gamma, plan.weight, plan.p, compressed)
      except errors.UncertifiedGammaError as exception:
        gamma_result.passed = False
        gamma_result.details['uncertified_path'] = list(path)
        logging.warning(
            f'Path: {path!s} not certified with error: {exception!s}')
        break

      gamma_result.AddSlack(
          norms.ComputeEllpNorm(averages.coefficients, plan.p) -
          gamma.theta ** (-1.0 / plan.p) * compressed_norm, self._tolerance)

    return compression_result, gamma_result

  def CheckHumpCondition(self):
    """Checks the hump ratio of every block at its level shift."""
    result = CheckResult('hump_condition')
    plan = self._plan
    theta = plan.t ** -plan.p
    for n, kappa in enumerate(plan.kappas, start=1):
      ratios = plan.weight.HumpRatios(plan.level_shifts[n - 1], kappa)
      for ratio in ratios:
        result.AddSlack(theta - ratio, norms.ORACLE_TOLERANCE)
    return result

  def CheckKappaNorms(self):
    """Checks ||v[kappa_n]|| <= t for every level."""
    result = CheckResult('kappa_norms')
    plan = self._plan
    for kappa in plan.kappas:
      kappa_vector = construction.KappaVector(kappa, plan.weight, plan.p)
      result.AddSlack(
          self._GarlingNorm(kappa_vector) - plan.t, norms.ORACLE_TOLERANCE)
    return result

  def CheckPBound(self, generator):
    """Checks ||P f|| <= t ||f|| on random and structured sequences."""
    result = CheckResult('p_bound')
    plan = self._plan
    structured = list(self._StructuredSequences(generator))
    random_sequences = (
        self._RandomSequence(generator) for _ in range(self._trials))

    for sequence in itertools.chain(structured, random_sequences):
      sequence_norm = self._GarlingNorm(sequence)
      if sequence_norm == 0.0:
        continue
      array = ApplyP(plan, sequence)
      result.AddSlack(
          MixedNormOfArray(array, plan.p) / sequence_norm - plan.t,
          self._tolerance)

    result.details['structured_inputs'] = len(structured)
    return result

  def CheckPartition(self):
    """Checks that the intervals partition [1, length] in (n, i) order."""
    result = CheckResult('partition')
    plan = self._plan
    expected_first = 1
    for i, n in plan.block_indexes:
      first, last = plan.intervals.get((i, n), (0, -1))
      mismatch = abs(first - expected_first) + abs(
          last - first + 1 - plan.kappas[n - 1][i - 1])
      result.AddSlack(float(mismatch), 0.0)
      expected_first = last + 1
    return result

  def CheckPSIdentity(self, generator):
    """Checks P(S(x)) = x on random arrays."""
    result = CheckResult('p_s_identity')
    for _ in range(self._trials):
      array = self._RandomArray(generator)
      image = ApplyP(self._plan, ApplyS(self._plan, array))
      result.AddSlack(
          float(numpy.max(numpy.abs(image.Flatten() - array.Flatten()))),
          self._tolerance)
    return result

  def CheckSBounds(self, generator):
    """Checks ||x|| / t <= ||S x|| <= t ||x|| on random arrays.

    Returns:
      tuple[CheckResult, CheckResult]: upper and lower bound results.
    """
    upper_result = CheckResult('s_bound')
    lower_result = CheckResult('s_lower_bound')
    plan = self._plan
    for _ in range(self._trials):
      array = self._RandomArray(generator)
      image_norm = self._GarlingNorm(ApplyS(plan, array))
      upper_result.AddSlack(image_norm - plan.t, self._tolerance)
      lower_result.AddSlack(1.0 / plan.t - image_norm, self._tolerance)
    return upper_result, lower_result

  def CheckShifts(self, generator):
    """Checks increasing block ends and m_n >= q_n-1(alpha) along paths."""
    result = CheckResult('shifts')
    plan = self._plan

    block_ends = [plan.intervals[block][1] for block in plan.block_indexes]
    increasing = all(
        first < second for first, second in zip(block_ends, block_ends[1:]))
    result.AddSlack(0.0 if increasing else 1.0, 0.0)

    derived_shifts = numpy.array(plan.DeriveLevelShifts())
    result.AddSlack(float(numpy.max(numpy.abs(
        derived_shifts - numpy.array(plan.level_shifts)), initial=0.0)), 0.0)

    paths = self._GetPaths(generator, self._trials)
    for path in paths:
      offsets = plan.PathOffsets(path)
      slacks = offsets[:-1] - numpy.array(plan.level_shifts)
      result.AddSlack(float(slacks.max()), 0.0)

    result.details['paths'] = len(paths)
    result.details['exhaustive'] = plan.levels <= EXHAUSTIVE_PATH_LEVELS
    return result

  def Verify(self):
    """Runs every check.

    Returns:
      VerificationReport: report.
    """
    generators = self._GetGenerators([
        'block_domination', 'compressed_paths', 'p_bound', 'p_s_identity',
        's_bound', 'shifts'])

    if self._plan.length > self._dense_limit:
      logging.info(
          f'Random inputs are drawn on windows of {self._dense_limit:d} of '
          f'{self._plan.length:d} plan coordinates.')

    partition = self.CheckPartition()
    checks = [
        partition,
        self.CheckKappaNorms(),
        self.CheckHumpCondition()]

    # The operators are only defined on a partition of consecutive blocks.
    skipped_checks = []
    if partition.passed:
      checks.extend([
          self.CheckShifts(generators['shifts']),
          self.CheckBiorthogonality(),
          self.CheckPBound(generators['p_bound']),
          self.CheckPSIdentity(generators['p_s_identity']),
          self.CheckBlockDomination(generators['block_domination'])])
      checks.extend(self.CheckCompressedPaths(generators['compressed_paths']))
      checks.extend(self.CheckSBounds(generators['s_bound']))
    else:
      skipped_checks = [
          'biorthogonality', 'block_domination', 'p_bound', 'p_gamma_bound',
          'p_s_identity', 'path_compression', 's_bound', 's_lower_bound',
          'shifts']
      logging.warning('Intervals do not partition the plan coordinates.')

    for result in checks:
      logging.debug(
          f'Check: {result.check:s} trials: {result.trials:d} worst slack: '
          f'{result.worst_slack!s} pass: {result.passed!s}')

    metadata = {
        'dense_window': min(self._plan.length, self._dense_limit),
        'distribution': RANDOM_DISTRIBUTION,
        'seed': self._seed,
        'skipped_checks': skipped_checks,
        'tolerance': self._tolerance,
        'trials': self._trials}
    return VerificationReport(checks, metadata)


def VerifyEmbedding(
    plan, trials=DEFAULT_TRIALS, seed=DEFAULT_SEED,
    tolerance=norms.COMPOSED_TOLERANCE, dense_limit=DEFAULT_DENSE_LIMIT):
  """Verifies the bounds of an embedding plan on finite inputs.

  Args:
    plan (EmbeddingPlan): plan.
    trials (Optional[int]): number of random inputs per randomized check.
    seed (Optional[int]): seed of the random inputs.
    tolerance (Optional[float]): largest slack that passes on
        unit-normalized inputs.
    dense_limit (Optional[int]): largest number of consecutive coordinates
        of a random input.

  Returns:
    VerificationReport: report, failures are recorded as check results.
  """
  verifier = _EmbeddingVerifier(plan, trials, seed, tolerance, dense_limit)
  return verifier.Verify()
