# -*- coding: utf-8 -*-
"""Weights and gauge sequences with their regularity classifiers."""

import logging
import math
import threading

import numpy

from gwpkit import errors
from gwpkit import summation


DEFAULT_K_CAP = 1000000

DEFAULT_TREND_EPSILON = 0.05

# Relative tolerance of the doubling conditions, which hold with equality
# for power gauges.
REGULARITY_PROPERTY_TOLERANCE = 1e-12


class Weight(object):
  """Non-increasing positive weight with w_1 = 1, in c0 but not in l1.

  Attributes:
    alpha (float): exponent of the power family or of the power tail.
    family (str): weight family, one of "power", "log" or "explicit".
    prefix (numpy.ndarray): normalized explicit prefix values, or None.
  """

  FAMILY_EXPLICIT = 'explicit'
  FAMILY_LOG = 'log'
  FAMILY_POWER = 'power'

  _CACHE_GROWTH_SIZE = 65536

  def __init__(self, family, alpha=None, prefix=None):
    """Initializes a weight.

    Args:
      family (str): weight family, one of "power", "log" or "explicit".
      alpha (Optional[float]): exponent of the power family or, for the
          explicit family, of the power tail.
      prefix (Optional[list[float]]): explicit leading values, rescaled so
          that the first value is 1.

    Raises:
      InvalidParameterError: if the family or its parameters do not define
          a weight that is non-increasing, tends to 0 and is not summable.
    """
    if family not in (self.FAMILY_EXPLICIT, self.FAMILY_LOG,
                      self.FAMILY_POWER):
      raise errors.InvalidParameterError(f'Unsupported family: {family!s}')

    if family != self.FAMILY_LOG:
      if alpha is None or not 0.0 < alpha <= 1.0:
        raise errors.InvalidParameterError(
            f'Unsupported power exponent: {alpha!s}, expected 0 < alpha <= 1')

    if family == self.FAMILY_EXPLICIT:
      if prefix is None:
        prefix = []
      prefix = numpy.asarray(prefix, dtype=numpy.float64)
      if prefix.ndim != 1 or prefix.shape[0] == 0:
        raise errors.InvalidParameterError('Missing explicit prefix values.')

      if not numpy.all(numpy.isfinite(prefix)) or numpy.any(prefix <= 0.0):
        raise errors.InvalidParameterError(
            'Explicit prefix values must be positive.')

      if numpy.any(numpy.diff(prefix) > 0.0):
        raise errors.InvalidParameterError(
            'Explicit prefix values must be non-increasing.')

      prefix = prefix / prefix[0]
      prefix[0] = 1.0

    else:
      prefix = None

    super(Weight, self).__init__()
    self._accumulator = summation.Accumulator()
    self._lock = threading.Lock()
    self._prefix_sums = numpy.zeros(1, dtype=numpy.float64)
    self.alpha = None if family == self.FAMILY_LOG else float(alpha)
    self.family = family
    self.prefix = prefix

  def __repr__(self):
    """Retrieves a textual representation of the weight."""
    if self.family == self.FAMILY_POWER:
      return f'power({self.alpha:g})'
    if self.family == self.FAMILY_LOG:
      return 'logweight'
    return f'explicit({len(self.prefix):d} values, power({self.alpha:g}))'

  def _GrowPrefixSums(self, maximum_index):
    """Grows the prefix sum cache to contain W_0 up to W_maximum_index.

    Args:
      maximum_index (int): largest index needed.
    """
    with self._lock:
      number_of_sums = self._prefix_sums.shape[0]
      if maximum_index < number_of_sums:
        return

      new_number_of_sums = max(
          maximum_index + 1, 2 * number_of_sums, self._CACHE_GROWTH_SIZE)
      values = self.Values(number_of_sums, new_number_of_sums)
      running_sums = summation.CumulativeSum(values, self._accumulator)

      prefix_sums = numpy.empty(new_number_of_sums, dtype=numpy.float64)
      prefix_sums[:number_of_sums] = self._prefix_sums
      prefix_sums[number_of_sums:] = running_sums
      prefix_sums.flags.writeable = False

      logging.debug(
          f'{self!r}: grew prefix sums to W_{new_number_of_sums - 1:d}')
      self._prefix_sums = prefix_sums

  def AsDict(self):
    """Retrieves the weight definition.

    Returns:
      dict[str, object]: weight definition in the format read by the
          definitions file.
    """
    if self.family == self.FAMILY_POWER:
      return {'family': self.family, 'alpha': self.alpha}
    if self.family == self.FAMILY_LOG:
      return {'family': self.family}
    return {
        'family': self.family,
        'prefix': [float(value) for value in self.prefix],
        'tail': {'family': self.FAMILY_POWER, 'alpha': self.alpha}}

  def FindHumpIndex(self, m, theta, k_min=1, k_cap=DEFAULT_K_CAP):
    """Finds the smallest block length whose shifted block keeps its mass.

    Args:
      m (int): shift of the block.
      theta (float): ratio bound, where 0 < theta < 1.
      k_min (Optional[int]): smallest block length considered.
      k_cap (Optional[int]): largest block length considered.

    Returns:
      int: smallest k with k_min <= k <= k_cap and HumpRatio(m, k) >= theta.

    Raises:
      CapExceededError: if no block length up to k_cap qualifies.
      InvalidParameterError: if theta is not in (0, 1).
    """
    if not 0.0 < theta < 1.0:
      raise errors.InvalidParameterError(
          f'Unsupported ratio bound: {theta!s}, expected 0 < theta < 1')

    k_min = max(k_min, 1)
    window_start = k_min
    window_size = 1024
    while window_start <= k_cap:
      window_end = min(window_start + window_size, k_cap + 1)
      k_values = numpy.arange(window_start, window_end)
      ratios = self.HumpRatios(m, k_values)

      (indexes, ) = numpy.nonzero(ratios >= theta)
      if indexes.shape[0]:
        return int(k_values[indexes[0]])

      window_start = window_end
      window_size *= 2

    raise errors.CapExceededError(
        f'No block length up to {k_cap:d} has hump ratio {theta:g} at '
        f'shift {m:d}.', cap=k_cap)

  def HumpRatio(self, m, k):
    """Computes the ratio of a shifted block sum to the initial block sum.

    Args:
      m (int): shift.
      k (int): block length.

    Returns:
      float: (W_{m+k} - W_m) / W_k.
    """
    if m == 0:
      return 1.0

    return float(self.HumpRatios(m, numpy.array([k]))[0])

  def HumpRatios(self, m, k_values):
    """Computes hump ratios for many block lengths.

    Args:
      m (int): shift.
      k_values (numpy.ndarray): block lengths.

    Returns:
      numpy.ndarray: ratios (W_{m+k} - W_m) / W_k.
    """
    k_values = numpy.asarray(k_values, dtype=numpy.int64)
    if m == 0:
      return numpy.ones(k_values.shape[0], dtype=numpy.float64)

    prefix_sums = self.PrefixSums(m + int(k_values.max(initial=0)))
    return (prefix_sums[m + k_values] - prefix_sums[m]) / prefix_sums[k_values]

  def PrefixSum(self, m):
    """Retrieves a prefix sum.

    Args:
      m (int): number of leading weight values to sum, where W_0 = 0.

    Returns:
      float: W_m.
    """
    return float(self.PrefixSums(m)[m])

  def PrefixSums(self, m):
    """Retrieves the prefix sums W_0 up to at least W_m.

    Args:
      m (int): largest index needed.

    Returns:
      numpy.ndarray: read-only array where element i holds W_i.
    """
    prefix_sums = self._prefix_sums
    if m >= prefix_sums.shape[0]:
      self._GrowPrefixSums(m)
      prefix_sums = self._prefix_sums

    return prefix_sums

  def ValueAt(self, j):
    """Retrieves a weight value.

    Args:
      j (int): index, where j >= 1.

    Returns:
      float: w_j.

    Raises:
      InvalidParameterError: if the index is smaller than 1.
    """
    if j < 1:
      raise errors.InvalidParameterError(f'Unsupported index: {j:d}')

    return float(self.ValuesAt(numpy.array([j]))[0])

  def Values(self, start, stop):
    """Retrieves weight values over a range of indexes.

    Args:
      start (int): first index.
      stop (int): index following the last one.

    Returns:
      numpy.ndarray: w_j for start <= j < stop, where w_0 is reported as 0.
    """
    return self.ValuesAt(numpy.arange(start, stop))

  def ValuesAt(self, indexes):
    """Retrieves weight values.

    Args:
      indexes (numpy.ndarray): indexes, where index 0 is reported as 0.

    Returns:
      numpy.ndarray: w_j for every index j.
    """
    indexes = numpy.asarray(indexes, dtype=numpy.float64)
    values = numpy.zeros(indexes.shape, dtype=numpy.float64)
    positive = indexes >= 1.0

    if self.family == self.FAMILY_POWER:
      values[positive] = indexes[positive] ** -self.alpha

    elif self.family == self.FAMILY_LOG:
      values[positive] = math.log(2.0) / numpy.log1p(indexes[positive])

    else:
      # The tail continues from the last prefix value so the splice point
      # is non-increasing.
      prefix_size = self.prefix.shape[0]
      in_prefix = positive & (indexes <= prefix_size)
      in_tail = indexes > prefix_size

      values[in_prefix] = self.prefix[indexes[in_prefix].astype(int) - 1]
      values[in_tail] = self.prefix[-1] * (
          indexes[in_tail] / prefix_size) ** -self.alpha

    values[indexes == 1.0] = 1.0

    return values


class GaugeSequence(object):
  """Positive sequence evaluable at any index up to a horizon.

  Attributes:
    label (str): description of the sequence.
  """

  def __init__(self, function, label):
    """Initializes a gauge sequence.

    Args:
      function (function): vectorized function that maps an integer array of
          indexes m >= 1 to the values lambda_m.
      label (str): description of the sequence.
    """
    super(GaugeSequence, self).__init__()
    self._function = function
    self.label = label

  def ValueAt(self, m):
    """Retrieves a value.

    Args:
      m (int): index, where m >= 1.

    Returns:
      float: lambda_m.
    """
    return float(self.Values(numpy.array([m]))[0])

  def Values(self, indexes):
    """Retrieves values.

    Args:
      indexes (numpy.ndarray): indexes, where every index >= 1.

    Returns:
      numpy.ndarray: lambda_m for every index m.
    """
    indexes = numpy.asarray(indexes, dtype=numpy.int64)
    return numpy.asarray(self._function(indexes), dtype=numpy.float64)


class RegularityReport(object):
  """Finite horizon regularity heuristic.

  Attributes:
    argmax (int): smallest index attaining the supremum.
    half_horizon_value (float): running maximum at half the horizon.
    horizon (int): horizon.
    label (str): description of the examined sequence.
    sup_value (float): maximum of the regularity quotient up to the horizon.
    trend (str): "growing" or "bounded-looking".
  """

  TREND_BOUNDED = 'bounded-looking'
  TREND_GROWING = 'growing'

  def __init__(self, label, horizon):
    """Initializes a regularity report.

    Args:
      label (str): description of the examined sequence.
      horizon (int): horizon.
    """
    super(RegularityReport, self).__init__()
    self.argmax = None
    self.half_horizon_value = None
    self.horizon = horizon
    self.label = label
    self.sup_value = None
    self.trend = None

  def AsDict(self):
    """Retrieves the report values.

    Returns:
      dict[str, object]: report values.
    """
    return {
        'argmax': self.argmax,
        'half_horizon_value': self.half_horizon_value,
        'horizon': self.horizon,
        'label': self.label,
        'sup_value': self.sup_value,
        'trend': self.trend}


class RegularityVerdict(object):
  """Verdict of a doubling condition checked up to a horizon.

  Attributes:
    b (int): dilation factor.
    horizon (int): horizon.
    property_name (str): "LRP" or "URP".
    violated_at (int): first index violating the condition or None.
  """

  def __init__(self, property_name, b, horizon, violated_at=None):
    """Initializes a regularity verdict.

    Args:
      property_name (str): "LRP" or "URP".
      b (int): dilation factor.
      horizon (int): horizon.
      violated_at (Optional[int]): first index violating the condition.
    """
    super(RegularityVerdict, self).__init__()
    self.b = b
    self.horizon = horizon
    self.property_name = property_name
    self.violated_at = violated_at

  @property
  def holds(self):
    """bool: True if the condition holds up to the horizon."""
    return self.violated_at is None

  def __str__(self):
    """Retrieves a textual representation of the verdict."""
    if self.holds:
      return 'holds-up-to-horizon'
    return f'violated-at({self.violated_at:d})'

  def AsDict(self):
    """Retrieves the verdict values.

    Returns:
      dict[str, object]: verdict values.
    """
    return {
        'b': self.b,
        'horizon': self.horizon,
        'property': self.property_name,
        'verdict': str(self)}


def _BuildRegularityReport(
    label, quotients, horizon, trend_epsilon=DEFAULT_TREND_EPSILON):
  """Builds a regularity report from regularity quotients.

  Args:
    label (str): description of the examined sequence.
    quotients (numpy.ndarray): quotient at m = 1 up to the horizon.
    horizon (int): horizon.
    trend_epsilon (Optional[float]): relative growth of the running maximum
        between half the horizon and the horizon that counts as growing.

  Returns:
    RegularityReport: regularity report.
  """
  running_maximums = numpy.maximum.accumulate(quotients)

  report = RegularityReport(label, horizon)
  report.argmax = int(numpy.argmax(quotients)) + 1
  report.sup_value = float(running_maximums[-1])
  report.half_horizon_value = float(running_maximums[max(horizon // 2, 1) - 1])

  if report.sup_value > report.half_horizon_value * (1.0 + trend_epsilon):
    report.trend = report.TREND_GROWING
  else:
    report.trend = report.TREND_BOUNDED

  return report


def BiregularityReport(weight, horizon, trend_epsilon=DEFAULT_TREND_EPSILON):
  """Runs the regularity heuristic on a weight and its conjugate weight.

  Args:
    weight (Weight): weight.
    horizon (int): horizon.
    trend_epsilon (Optional[float]): relative growth that counts as growing.

  Returns:
    dict[str, object]: regularity reports of the weight and the conjugate
        weight and whether both look bounded.
  """
  weight_report = GetRegularityReport(
      weight, horizon, trend_epsilon=trend_epsilon)
  conjugate_report = GetGaugeRegularityReport(
      ConjugateWeight(weight), horizon, trend_epsilon=trend_epsilon)

  bi_regular_looking = (
      weight_report.trend == RegularityReport.TREND_BOUNDED and
      conjugate_report.trend == RegularityReport.TREND_BOUNDED)

  return {
      'bi_regular_looking': bi_regular_looking,
      'conjugate': conjugate_report,
      'weight': weight_report}


def ConjugateWeight(weight):
  """Retrieves the conjugate weight m -> 1 / (m w_m).

  Args:
    weight (Weight): weight.

  Returns:
    GaugeSequence: conjugate weight.
  """
  def _Function(indexes):
    return 1.0 / (indexes * weight.ValuesAt(indexes))

  return GaugeSequence(_Function, f'conjugate of {weight!r}')


def GetGaugeRegularityReport(
    gauge, horizon, trend_epsilon=DEFAULT_TREND_EPSILON):
  """Runs the regularity heuristic on a gauge sequence.

  The quotient at m is (1 / (m lambda_m)) (lambda_1 + ... + lambda_m).

  Args:
    gauge (GaugeSequence): gauge sequence.
    horizon (int): horizon, where horizon >= 1.
    trend_epsilon (Optional[float]): relative growth that counts as growing.

  Returns:
    RegularityReport: regularity report.

  Raises:
    InvalidParameterError: if the horizon is smaller than 1.
  """
  if horizon < 1:
    raise errors.InvalidParameterError(f'Unsupported horizon: {horizon:d}')

  indexes = numpy.arange(1, horizon + 1)
  values = gauge.Values(indexes)
  running_sums = summation.CumulativeSum(values, summation.Accumulator())

  quotients = running_sums / (indexes * values)
  return _BuildRegularityReport(
      gauge.label, quotients, horizon, trend_epsilon=trend_epsilon)


def GetRegularityReport(weight, horizon, trend_epsilon=DEFAULT_TREND_EPSILON):
  """Runs the regularity heuristic on a weight.

  The report is a finite horizon heuristic: it neither proves nor refutes
  regularity.

  Args:
    weight (Weight): weight.
    horizon (int): horizon, where horizon >= 1.
    trend_epsilon (Optional[float]): relative growth of the running maximum
        between half the horizon and the horizon that counts as growing.

  Returns:
    RegularityReport: regularity report of sup_m W_m / (m w_m).

  Raises:
    InvalidParameterError: if the horizon is smaller than 1.
  """
  if horizon < 1:
    raise errors.InvalidParameterError(f'Unsupported horizon: {horizon:d}')

  prefix_sums = weight.PrefixSums(horizon)[1:horizon + 1]
  indexes = numpy.arange(1, horizon + 1, dtype=numpy.float64)

  quotients = prefix_sums / (indexes * weight.Values(1, horizon + 1))
  return _BuildRegularityReport(
      repr(weight), quotients, horizon, trend_epsilon=trend_epsilon)


def HasLRP(gauge, b, horizon, tolerance=REGULARITY_PROPERTY_TOLERANCE):
  """Checks the lower regularity property 2 lambda_m <= lambda_bm.

  Args:
    gauge (GaugeSequence): gauge sequence.
    b (int): dilation factor, where b >= 2.
    horizon (int): largest m checked.
    tolerance (Optional[float]): relative tolerance of the comparison.

  Returns:
    RegularityVerdict: verdict.

  Raises:
    InvalidParameterError: if b is smaller than 2.
  """
  if b < 2:
    raise errors.InvalidParameterError(
        f'Unsupported dilation factor: {b:d}, expected b >= 2')

  indexes = numpy.arange(1, horizon + 1)
  values = gauge.Values(indexes)
  dilated_values = gauge.Values(b * indexes)

  violations = 2.0 * values > dilated_values * (1.0 + tolerance)
  return _BuildVerdict('LRP', b, horizon, violations)


def HasURP(gauge, b, horizon, tolerance=REGULARITY_PROPERTY_TOLERANCE):
  """Checks the upper regularity property lambda_bm <= (b / 2) lambda_m.

  Args:
    gauge (GaugeSequence): gauge sequence.
    b (int): dilation factor, where b >= 3.
    horizon (int): largest m checked.
    tolerance (Optional[float]): relative tolerance of the comparison.

  Returns:
    RegularityVerdict: verdict.

  Raises:
    InvalidParameterError: if b is smaller than 3.
  """
  if b < 3:
    raise errors.InvalidParameterError(
        f'Unsupported dilation factor: {b:d}, expected b >= 3')

  indexes = numpy.arange(1, horizon + 1)
  values = gauge.Values(indexes)
  dilated_values = gauge.Values(b * indexes)

  violations = dilated_values > 0.5 * b * values * (1.0 + tolerance)
  return _BuildVerdict('URP', b, horizon, violations)


def _BuildVerdict(property_name, b, horizon, violations):
  """Builds a verdict from a violation mask.

  Args:
    property_name (str): "LRP" or "URP".
    b (int): dilation factor.
    horizon (int): horizon.
    violations (numpy.ndarray): violation flag per m = 1 up to the horizon.

  Returns:
    RegularityVerdict: verdict.
  """
  (indexes, ) = numpy.nonzero(violations)
  violated_at = int(indexes[0]) + 1 if indexes.shape[0] else None
  return RegularityVerdict(property_name, b, horizon, violated_at=violated_at)


def PowerGauge(exponent):
  """Retrieves the gauge sequence m -> m^exponent.

  Args:
    exponent (float): exponent.

  Returns:
    GaugeSequence: gauge sequence.
  """
  return GaugeSequence(
      lambda indexes: indexes.astype(numpy.float64) ** exponent,
      f'm^{exponent:g}')


def PrimitiveGauge(weight, p):
  """Retrieves the primitive weight m -> (w_1 + ... + w_m)^(1/p).

  Args:
    weight (Weight): weight.
    p (float): exponent, where p >= 1.

  Returns:
    GaugeSequence: gauge sequence.
  """
  def _Function(indexes):
    prefix_sums = weight.PrefixSums(int(indexes.max(initial=0)))
    return prefix_sums[indexes] ** (1.0 / p)

  return GaugeSequence(_Function, f'primitive weight of {weight!r}, p={p:g}')
