# -*- coding: utf-8 -*-
"""Constant block constructions with controlled Garling norm.

Prepending the normalized constant block v[k] to a sequence f gives

  ||(v[k], f)||^p = max over 0 <= i <= k of (W_i / W_k + v_i(f))

where v_i(f) is the Garling sum of f against the weight row shifted by i.
With T = t^p this is below T if and only if W_k > W_i / (T - v_i(f)) for
every i <= k, so one running maximum over the shift profile of f decides
acceptance for every k at once.
"""

import logging

import numpy

from gwpkit import errors
from gwpkit import norms
from gwpkit import sequences
from gwpkit import weights


DEFAULT_K_CAP = weights.DEFAULT_K_CAP

_INITIAL_HORIZON = 1024


class HumpCertificate(object):
  """Certificate of a constant block found by the hump search.

  Attributes:
    alpha_k (float): p-th power of the block coefficient.
    concatenation_norm (float): Garling norm of (h, f1).
    conditions (dict[str, bool]): whether the mass condition "i" and the
        running minimum condition "ii" hold.
    extension_gain (float): ||(f2, h)||^p - ||f2||^p.
    k (int): block length.
    s (float): intermediate bound, between max(1, ||f1||^p) and t^p.
    v_values (numpy.ndarray): shifted Garling sums v_1, ..., v_k of f1.
  """

  def __init__(self, k, alpha_k, s, v_values):
    """Initializes a hump certificate.

    Args:
      k (int): block length.
      alpha_k (float): p-th power of the block coefficient.
      s (float): intermediate bound.
      v_values (numpy.ndarray): shifted Garling sums v_1, ..., v_k.
    """
    super(HumpCertificate, self).__init__()
    self.alpha_k = alpha_k
    self.concatenation_norm = None
    self.conditions = {'i': False, 'ii': False}
    self.extension_gain = None
    self.k = k
    self.s = s
    self.v_values = v_values

  def AsDict(self):
    """Retrieves the certificate values.

    Returns:
      dict[str, object]: certificate values.
    """
    return {
        'alpha_k': self.alpha_k,
        'concatenation_norm': self.concatenation_norm,
        'conditions': dict(self.conditions),
        'extension_gain': self.extension_gain,
        'k': self.k,
        's': self.s}


class Kappa(object):
  """Tuple of block lengths whose normalized blocks stay below t.

  Attributes:
    entries (tuple[int]): block lengths (k_1, ..., k_n), in the order the
        blocks are concatenated.
    norm (float): Garling norm of v[entries].
    step_norms (list[float]): Garling norm after every prepend step, first
        step first.
    t (float): norm bound.
  """

  def __init__(self, entries, t, norm=None, step_norms=None):
    """Initializes a kappa tuple.

    Args:
      entries (list[int]): block lengths.
      t (float): norm bound.
      norm (Optional[float]): Garling norm of v[entries].
      step_norms (Optional[list[float]]): Garling norm after every step.
    """
    super(Kappa, self).__init__()
    self.entries = tuple(int(entry) for entry in entries)
    self.norm = norm
    self.step_norms = list(step_norms or [])
    self.t = t

  def __len__(self):
    """Retrieves the number of blocks."""
    return len(self.entries)

  @property
  def total_length(self):
    """int: sum of the block lengths."""
    return sum(self.entries)

  def AsDict(self):
    """Retrieves the kappa values.

    Returns:
      dict[str, object]: kappa values.
    """
    return {
        'entries': list(self.entries),
        'norm': self.norm,
        'step_norms': list(self.step_norms),
        't': self.t,
        'total_length': self.total_length}


def _CheckBound(t):
  """Checks a norm bound.

  Args:
    t (float): norm bound.

  Raises:
    InvalidParameterError: if t is not larger than 1.
  """
  if not t > 1.0:
    raise errors.InvalidParameterError(
        f'Unsupported norm bound: {t!s}, expected t > 1')


def BuildKappa(
    n, t, weight, p, k_floor=1, extra=None, k_cap=DEFAULT_K_CAP):
  """Builds block lengths by repeated prepending.

  q_1 is the first accepted length for the empty sequence and q_i+1 the
  first accepted length for v[q_i, ..., q_1].

  Args:
    n (int): number of blocks.
    t (float): norm bound, where t > 1.
    weight (Weight): weight.
    p (float): exponent, where p >= 1.
    k_floor (Optional[int]): smallest block length.
    extra (Optional[function]): additional vectorized predicate every block
        length must satisfy.
    k_cap (Optional[int]): largest block length considered per step.

  Returns:
    Kappa: block lengths (q_n, ..., q_1).

  Raises:
    CapExceededError: if a step finds no block length up to the cap.
    InvalidParameterError: if n, t or p are not supported.
  """
  _CheckBound(t)
  norms.CheckExponent(p)
  if n < 1:
    raise errors.InvalidParameterError(f'Unsupported number of blocks: {n!s}')

  chain = sequences.FinSeq()
  entries = []
  step_norms = []
  for step in range(n):
    k = Lemma2Prepend(
        chain, t, weight, p, k_min=k_floor, k_cap=k_cap, extra=extra)

    chain = sequences.Concatenate(MakeV(k, weight, p), chain)
    entries.insert(0, k)
    step_norms.append(
        norms.ComputeGarlingValue(chain, weight, p) ** (1.0 / p))

    logging.debug(
        f'Step: {step + 1:d} block length: {k:d} norm: {step_norms[-1]:.17g}')

  return Kappa(entries, t, norm=step_norms[-1], step_norms=step_norms)


def KappaVector(entries, weight, p):
  """Concatenates normalized constant blocks.

  Args:
    entries (list[int]): block lengths.
    weight (Weight): weight.
    p (float): exponent.

  Returns:
    FinSeq: v[entries].
  """
  entries = numpy.asarray(entries, dtype=numpy.int64)
  if not entries.shape[0]:
    return sequences.FinSeq()

  prefix_sums = weight.PrefixSums(int(entries.max()))
  return sequences.FinSeq(numpy.repeat(
      prefix_sums[entries] ** (-1.0 / p), entries))


def Lemma1Search(
    f1, f2, t, weight, p, k_min=1, k_cap=DEFAULT_K_CAP):
  """Searches a constant block that is small before f1 and large after f2.

  With s halfway between max(1, ||f1||^p) and t^p, alpha_i = (s - v_i) / W_i
  and m the length of f2, the first k >= k_min is accepted where
  alpha_k (W_m+k - W_m) >= 1 and alpha_k is the running minimum of alpha.

  Args:
    f1 (FinSeq): sequence the block is prepended to, with ||f1|| < t.
    f2 (FinSeq): sequence the block is appended to.
    t (float): norm bound, where t > 1.
    weight (Weight): weight.
    p (float): exponent, where p >= 1.
    k_min (Optional[int]): smallest block length.
    k_cap (Optional[int]): largest block length considered.

  Returns:
    tuple[FinSeq, HumpCertificate]: constant block h with entries
        alpha_k^(1/p) and its certificate.

  Raises:
    CapExceededError: if no block length up to the cap is accepted.
    PreconditionError: if ||f1|| >= t.
  """
  _CheckBound(t)
  norms.CheckExponent(p)

  bound = t ** p
  f1_norm_power = norms.ComputeGarlingValue(f1, weight, p)
  if f1_norm_power >= bound:
    raise errors.PreconditionError(
        f'Norm of the first sequence: {f1_norm_power ** (1.0 / p):.17g} is '
        f'not below: {t:.17g}')

  f2_norm_power = norms.ComputeGarlingValue(f2, weight, p)
  f2_length = len(f2)
  s = (max(1.0, f1_norm_power) + bound) / 2.0

  k_min = max(k_min, 1)
  window_start = k_min
  horizon = min(max(4 * k_min, _INITIAL_HORIZON), k_cap)
  while window_start <= k_cap:
    profile = norms.ComputeShiftProfile(f1, weight, p, horizon)
    prefix_sums = weight.PrefixSums(f2_length + horizon)

    k_values = numpy.arange(1, horizon + 1)
    alphas = (s - profile[1:]) / prefix_sums[1:horizon + 1]
    running_minimums = numpy.minimum.accumulate(alphas)
    gains = alphas * (
        prefix_sums[f2_length + k_values] - prefix_sums[f2_length])

    accepted = (k_values >= window_start) & (gains >= 1.0) & (
        alphas <= running_minimums)

    for index in numpy.nonzero(accepted)[0]:
      k = int(k_values[index])
      certificate = HumpCertificate(
          k, float(alphas[index]), s, profile[1:k + 1].copy())
      certificate.conditions = {'i': True, 'ii': True}

      block = sequences.FinSeq(numpy.full(k, alphas[index] ** (1.0 / p)))
      left_power = norms.ComputeGarlingValue(
          sequences.Concatenate(block, f1), weight, p)
      right_power = norms.ComputeGarlingValue(
          sequences.Concatenate(f2, block), weight, p)

      certificate.concatenation_norm = left_power ** (1.0 / p)
      certificate.extension_gain = right_power - f2_norm_power

      if (certificate.concatenation_norm < t and
          certificate.extension_gain >= 1.0 - norms.COMPOSED_TOLERANCE):
        logging.debug(f'Accepted block length: {k:d} alpha: {alphas[index]:g}')
        return block, certificate

      logging.warning(
          f'Block length: {k:d} passed the scan but failed the re-check.')

    if horizon >= k_cap:
      break
    window_start = horizon + 1
    horizon = min(4 * horizon, k_cap)

  raise errors.CapExceededError(
      f'No block length up to {k_cap:d} satisfies the hump conditions.',
      cap=k_cap)


def Lemma2Prepend(
    f, t, weight, p, k_min=1, k_cap=DEFAULT_K_CAP, extra=None):
  """Searches the smallest normalized constant block that can be prepended.

  Args:
    f (FinSeq): sequence, with ||f|| < t.
    t (float): norm bound, where t > 1.
    weight (Weight): weight.
    p (float): exponent, where p >= 1.
    k_min (Optional[int]): smallest block length.
    k_cap (Optional[int]): largest block length considered.
    extra (Optional[function]): additional predicate, called with an integer
        array of block lengths and returning a boolean array.

  Returns:
    int: smallest k in [k_min, k_cap] with ||(v[k], f)|| < t that satisfies
        the additional predicate.

  Raises:
    CapExceededError: if no block length up to the cap is accepted.
    PreconditionError: if ||f|| >= t.
  """
  _CheckBound(t)
  norms.CheckExponent(p)

  bound = t ** p
  norm_power = norms.ComputeGarlingValue(f, weight, p)
  if norm_power >= bound:
    raise errors.PreconditionError(
        f'Norm of the sequence: {norm_power ** (1.0 / p):.17g} is not below: '
        f'{t:.17g}')

  k_min = max(k_min, 1)
  window_start = k_min
  horizon = min(max(4 * k_min, _INITIAL_HORIZON), k_cap)
  while window_start <= k_cap:
    profile = norms.ComputeShiftProfile(f, weight, p, horizon)
    prefix_sums = weight.PrefixSums(horizon)[:horizon + 1]

    thresholds = numpy.maximum.accumulate(prefix_sums / (bound - profile))

    k_values = numpy.arange(window_start, horizon + 1)
    accepted = prefix_sums[k_values] > thresholds[k_values]
    if extra is not None:
      accepted &= numpy.asarray(extra(k_values), dtype=bool)

    for index in numpy.nonzero(accepted)[0]:
      k = int(k_values[index])
      concatenation = sequences.Concatenate(MakeV(k, weight, p), f)
      if norms.ComputeGarlingValue(concatenation, weight, p) < bound:
        logging.debug(f'Accepted block length: {k:d}')
        return k

      logging.warning(
          f'Block length: {k:d} passed the threshold scan but failed the '
          f're-check.')

    if horizon >= k_cap:
      break

    logging.debug(f'No block length up to {horizon:d}, widening the scan.')
    window_start = horizon + 1
    horizon = min(4 * horizon, k_cap)

  raise errors.CapExceededError(
      f'No block length in [{k_min:d}, {k_cap:d}] can be prepended.',
      cap=k_cap)


def MakeV(k, weight, p):
  """Creates the normalized constant block v[k].

  Args:
    k (int): block length, where k >= 1.
    weight (Weight): weight.
    p (float): exponent.

  Returns:
    FinSeq: k-tuple with every entry W_k^(-1/p), whose Garling norm is 1.

  Raises:
    InvalidParameterError: if k is smaller than 1.
  """
  if k < 1:
    raise errors.InvalidParameterError(f'Unsupported block length: {k!s}')

  return sequences.FinSeq(numpy.full(k, weight.PrefixSum(k) ** (-1.0 / p)))


def PrependNormPower(k, profile, weight):
  """Computes ||(v[k], f)||^p from the shift profile of f.

  Args:
    k (int): block length.
    profile (numpy.ndarray): shifted Garling sums v_0, ..., v_k of f.
    weight (Weight): weight.

  Returns:
    float: maximum over 0 <= i <= k of W_i / W_k + v_i.
  """
  prefix_sums = weight.PrefixSums(k)
  return float(numpy.max(
      prefix_sums[:k + 1] / prefix_sums[k] + profile[:k + 1]))
