# -*- coding: utf-8 -*-
"""Run configuration."""

from gwpkit import conditionality
from gwpkit import embedding
from gwpkit import norms
from gwpkit import weights


class RunConfiguration(object):
  """Run configuration.

  Attributes:
    brute_force_limit (int): largest support of the brute force oracle.
    composed_tolerance (float): tolerance of composed computations.
    dense_limit (int): largest window of random verification inputs.
    denominator_floor (float): smallest denominator of greedy ratios.
    exact_dimension (int): largest dimension of an exact k_m.
    exact_prefix (int): largest m of an exact L_m.
    k_cap (int): largest block length considered by searches.
    oracle_tolerance (float): tolerance of oracle comparisons.
    output_format (str): output format, "json" or "csv".
    output_path (str): path of the output file or None for stdout.
    p (float): exponent.
    probe_starts (int): number of starting points of gauge probes.
    seed (int): seed of randomized computations.
    subcommand (str): subcommand.
    trend_epsilon (float): relative growth threshold of the regularity
        heuristic.
    trials (int): number of random inputs per verification check.
    weight (Weight): weight.
  """

  FORMAT_CSV = 'csv'
  FORMAT_JSON = 'json'

  # Values that can be set by a run configuration file.
  FILE_KEYS = frozenset([
      'brute_force_limit',
      'composed_tolerance',
      'dense_limit',
      'denominator_floor',
      'exact_dimension',
      'exact_prefix',
      'k_cap',
      'oracle_tolerance',
      'probe_starts',
      'seed',
      'trend_epsilon',
      'trials'])

  def __init__(self):
    """Initializes a run configuration with the default values."""
    super(RunConfiguration, self).__init__()
    self.brute_force_limit = norms.BRUTE_FORCE_LIMIT
    self.composed_tolerance = norms.COMPOSED_TOLERANCE
    self.dense_limit = embedding.DEFAULT_DENSE_LIMIT
    self.denominator_floor = conditionality.DEFAULT_DENOMINATOR_FLOOR
    self.exact_dimension = conditionality.EXACT_DIMENSION_LIMIT
    self.exact_prefix = conditionality.EXACT_PREFIX_LIMIT
    self.k_cap = weights.DEFAULT_K_CAP
    self.oracle_tolerance = norms.ORACLE_TOLERANCE
    self.output_format = self.FORMAT_JSON
    self.output_path = None
    self.p = None
    self.probe_starts = conditionality.DEFAULT_PROBE_STARTS
    self.seed = embedding.DEFAULT_SEED
    self.subcommand = None
    self.trend_epsilon = weights.DEFAULT_TREND_EPSILON
    self.trials = embedding.DEFAULT_TRIALS
    self.weight = None

  def AsDict(self):
    """Retrieves the resolved configuration.

    Returns:
      dict[str, object]: configuration values.
    """
    values = {key: getattr(self, key) for key in sorted(self.FILE_KEYS)}
    values.update({
        'output_format': self.output_format,
        'output_path': self.output_path,
        'p': self.p,
        'subcommand': self.subcommand,
        'weight': self.weight.AsDict() if self.weight else None})
    return values

  def Update(self, values):
    """Updates the configuration.

    Args:
      values (dict[str, object]): values to set, where None values are
          ignored.
    """
    for key, value in values.items():
      if value is not None:
        setattr(self, key, value)
