# -*- coding: utf-8 -*-
"""YAML-based definitions files.

JSON is a subset of YAML so the readers also accept the JSON written by the
tool, such as embedding plans.
"""

import yaml

from gwpkit import configuration
from gwpkit import embedding
from gwpkit import errors
from gwpkit import sequences
from gwpkit import weights


def _LoadYAML(text):
  """Parses a single YAML document.

  Args:
    text (str): YAML or JSON text.

  Returns:
    object: parsed value.

  Raises:
    ParseError: if the text cannot be parsed.
  """
  try:
    return yaml.safe_load(text)
  except yaml.YAMLError as exception:
    raise errors.ParseError(
        f'Unable to parse definition with error: {exception!s}') from exception


def _ReadFile(path):
  """Reads the contents of a text file.

  Args:
    path (str): path of the file.

  Returns:
    str: contents.

  Raises:
    ParseError: if the file cannot be read.
  """
  try:
    with open(path, 'r', encoding='utf-8') as file_object:
      return file_object.read()
  except (IOError, OSError, UnicodeDecodeError) as exception:
    raise errors.ParseError(
        f'Unable to read file: {path:s} with error: {exception!s}'
    ) from exception


def _CheckKeys(definition, supported_keys, description):
  """Checks the keys of a definition.

  Args:
    definition (dict[str, object]): definition values.
    supported_keys (frozenset[str]): supported keys.
    description (str): description of the definition.

  Raises:
    ParseError: if the definition is not a mapping or has unsupported keys.
  """
  if not isinstance(definition, dict):
    raise errors.ParseError(f'Invalid {description:s} expected a mapping.')

  different_keys = set(definition) - supported_keys
  if different_keys:
    different_keys = ', '.join(sorted(different_keys))
    raise errors.ParseError(
        f'Undefined keys in {description:s}: {different_keys:s}')


class YAMLWeightDefinitionsFile(object):
  """YAML-based weight definitions file.

  A YAML-based weight definitions file contains one or more weight
  definitions. A weight definition consists of:

  name: harmonic
  family: power
  alpha: 1.0

  Where:
  * alpha, exponent of the power family;
  * family, weight family: power, log or explicit;
  * name, optional name that identifies the weight;
  * prefix, leading values of the explicit family;
  * tail, power weight that continues an explicit prefix.
  """

  _SUPPORTED_KEYS = frozenset([
      'alpha',
      'family',
      'name',
      'prefix',
      'tail'])

  _SUPPORTED_TAIL_KEYS = frozenset([
      'alpha',
      'family'])

  def _ReadWeightDefinition(self, yaml_weight_definition):
    """Reads a weight definition from a dictionary.

    Args:
      yaml_weight_definition (dict[str, object]): YAML weight definition
          values.

    Returns:
      tuple[str, Weight]: name, or None if not set, and weight.

    Raises:
      InvalidParameterError: if the weight parameters are not supported.
      ParseError: if the definition is missing values, has unsupported
          keys or has malformed values.
    """
    if not yaml_weight_definition:
      raise errors.ParseError('Missing weight definition values.')

    _CheckKeys(yaml_weight_definition, self._SUPPORTED_KEYS, 'weight')

    family = yaml_weight_definition.get('family', None)
    if not family:
      raise errors.ParseError('Invalid weight definition missing family.')

    if family == 'logweight':
      family = weights.Weight.FAMILY_LOG

    alpha = yaml_weight_definition.get('alpha', None)
    prefix = yaml_weight_definition.get('prefix', None)

    if family == weights.Weight.FAMILY_EXPLICIT:
      tail = yaml_weight_definition.get('tail', None)
      if tail is not None:
        _CheckKeys(tail, self._SUPPORTED_TAIL_KEYS, 'weight tail')
        if tail.get('family', None) != weights.Weight.FAMILY_POWER:
          raise errors.ParseError(
              'Explicit weight tail must be a power weight.')
        alpha = tail.get('alpha', None)

    try:
      alpha = None if alpha is None else float(alpha)
    except (TypeError, ValueError) as exception:
      raise errors.ParseError(f'Invalid alpha: {alpha!s}') from exception

    if prefix is not None:
      if not isinstance(prefix, list) or not all(
          isinstance(value, (float, int)) and not isinstance(value, bool)
          for value in prefix):
        raise errors.ParseError(
            f'Invalid prefix: {prefix!s} expected a list of numbers.')

    try:
      weight = weights.Weight(family, alpha=alpha, prefix=prefix)
    except (TypeError, ValueError) as exception:
      raise errors.ParseError(
          f'Invalid weight definition with error: {exception!s}') from exception

    return yaml_weight_definition.get('name', None), weight

  def _ReadFromFileObject(self, file_object):
    """Reads the weight definitions from a file-like object.

    Args:
      file_object (file): weight definitions file-like object.

    Yields:
      tuple[str, Weight]: name and weight.

    Raises:
      ParseError: if the file cannot be parsed.
    """
    try:
      yaml_generator = yaml.safe_load_all(file_object)
      for yaml_weight_definition in yaml_generator:
        yield self._ReadWeightDefinition(yaml_weight_definition)

    except yaml.YAMLError as exception:
      raise errors.ParseError(
          f'Unable to parse weight definitions with error: {exception!s}'
      ) from exception

  def ReadFromFile(self, path):
    """Reads the weight definitions from a YAML file.

    Args:
      path (str): path to a weight definitions file.

    Yields:
      tuple[str, Weight]: name and weight.
    """
    with open(path, 'r', encoding='utf-8') as file_object:
      yield from self._ReadFromFileObject(file_object)

  def ReadFromDict(self, yaml_weight_definition):
    """Reads a single weight definition from a dictionary.

    Args:
      yaml_weight_definition (dict[str, object]): YAML weight definition
          values.

    Returns:
      Weight: weight.
    """
    _, weight = self._ReadWeightDefinition(yaml_weight_definition)
    return weight

  def ReadFromString(self, text):
    """Reads a single weight definition from a YAML or JSON string.

    Args:
      text (str): weight definition.

    Returns:
      Weight: weight.
    """
    return self.ReadFromDict(_LoadYAML(text))


class YAMLSequenceDefinition(object):
  """YAML-based sequence definition.

  A sequence definition is either a flat list of coefficients or:

  offset: 3
  coeffs: [0.5, 1.0]
  """

  _SUPPORTED_KEYS = frozenset([
      'coeffs',
      'offset'])

  def ReadFromString(self, text):
    """Reads a sequence from a YAML or JSON string.

    Args:
      text (str): sequence definition.

    Returns:
      FinSeq: sequence.

    Raises:
      ParseError: if the definition is not a list or sequence mapping.
    """
    yaml_sequence_definition = _LoadYAML(text)

    offset = 0
    if isinstance(yaml_sequence_definition, dict):
      _CheckKeys(yaml_sequence_definition, self._SUPPORTED_KEYS, 'sequence')
      offset = yaml_sequence_definition.get('offset', 0)
      yaml_sequence_definition = yaml_sequence_definition.get('coeffs', [])

    if yaml_sequence_definition is None:
      yaml_sequence_definition = []

    if not isinstance(yaml_sequence_definition, list) or not isinstance(
        offset, int):
      raise errors.ParseError('Invalid sequence definition.')

    try:
      coefficients = [float(value) for value in yaml_sequence_definition]
    except (TypeError, ValueError) as exception:
      raise errors.ParseError(
          f'Invalid sequence coefficients with error: {exception!s}'
      ) from exception

    try:
      return sequences.FinSeq(coefficients, offset=offset)
    except errors.ShapeMismatchError as exception:
      raise errors.ParseError(f'{exception!s}') from exception

  def ReadBlocksFromString(self, text):
    """Reads a block structured sequence from a YAML or JSON string.

    A block structured sequence is a list of blocks, such as [[3], [1, -2]].

    Args:
      text (str): sequence definition.

    Returns:
      list[list[float]]: coefficients per block or None if the definition
          is not a list of blocks.

    Raises:
      ParseError: if a block contains values that are not numbers.
    """
    yaml_sequence_definition = _LoadYAML(text)

    if not isinstance(yaml_sequence_definition, list) or not (
        yaml_sequence_definition) or not all(
            isinstance(block, list) for block in yaml_sequence_definition):
      return None

    try:
      return [[float(value) for value in block]
              for block in yaml_sequence_definition]
    except (TypeError, ValueError) as exception:
      raise errors.ParseError(
          f'Invalid block coefficients with error: {exception!s}'
      ) from exception


class JSONPlanFile(object):
  """JSON-based embedding plan file.

  The plan file holds the values written by the embed subcommand, either at
  the top level or under the "result" and "plan" keys of a report.
  """

  _SUPPORTED_KEYS = frozenset([
      'block_ends',
      'epsilon',
      'intervals',
      'kappas',
      'level_shifts',
      'p',
      't',
      'weight'])

  _SUPPORTED_INTERVAL_KEYS = frozenset([
      'first',
      'i',
      'last',
      'n'])

  def _ReadIntervals(self, yaml_intervals, levels):
    """Reads the stored intervals.

    Args:
      yaml_intervals (list[dict[str, int]]): interval values.
      levels (int): number of levels.

    Returns:
      dict[tuple[int, int], tuple[int, int]]: intervals.

    Raises:
      ParseError: if an interval is malformed or missing.
    """
    if not isinstance(yaml_intervals, list):
      raise errors.ParseError('Invalid intervals expected a list.')

    intervals = {}
    for yaml_interval in yaml_intervals:
      _CheckKeys(yaml_interval, self._SUPPORTED_INTERVAL_KEYS, 'interval')
      try:
        key = (int(yaml_interval['i']), int(yaml_interval['n']))
        intervals[key] = (
            int(yaml_interval['first']), int(yaml_interval['last']))
      except (KeyError, TypeError, ValueError) as exception:
        raise errors.ParseError(
            f'Invalid interval: {yaml_interval!s}') from exception

    expected_keys = set(
        (i, n) for n in range(1, levels + 1) for i in range(1, n + 1))
    if set(intervals) != expected_keys:
      raise errors.ParseError('Intervals do not cover every block.')

    return intervals

  def ReadFromString(self, text):
    """Reads a plan from a YAML or JSON string.

    Args:
      text (str): plan definition.

    Returns:
      EmbeddingPlan: plan.

    Raises:
      ParseError: if the plan definition is malformed.
    """
    yaml_plan_definition = _LoadYAML(text)
    for key in ('result', 'plan'):
      if isinstance(yaml_plan_definition, dict) and key in yaml_plan_definition:
        yaml_plan_definition = yaml_plan_definition[key]

    _CheckKeys(yaml_plan_definition, self._SUPPORTED_KEYS, 'plan')

    for key in ('epsilon', 'kappas', 'p', 'weight'):
      if yaml_plan_definition.get(key, None) is None:
        raise errors.ParseError(f'Invalid plan definition missing {key:s}.')

    weight_definitions_file = YAMLWeightDefinitionsFile()
    weight = weight_definitions_file.ReadFromDict(
        yaml_plan_definition['weight'])

    kappas = yaml_plan_definition['kappas']
    if not isinstance(kappas, list) or not all(
        isinstance(kappa, list) for kappa in kappas):
      raise errors.ParseError('Invalid kappas expected a list of lists.')

    intervals = None
    yaml_intervals = yaml_plan_definition.get('intervals', None)
    if yaml_intervals is not None:
      intervals = self._ReadIntervals(yaml_intervals, len(kappas))

    level_shifts = yaml_plan_definition.get('level_shifts', None)
    if level_shifts is not None and (
        not isinstance(level_shifts, list) or len(level_shifts) != len(kappas)):
      raise errors.ParseError('Invalid level shifts.')

    try:
      return embedding.EmbeddingPlan(
          float(yaml_plan_definition['epsilon']), kappas, weight,
          float(yaml_plan_definition['p']), intervals=intervals,
          level_shifts=level_shifts)
    except (TypeError, ValueError) as exception:
      raise errors.ParseError(
          f'Invalid plan definition with error: {exception!s}') from exception

  def ReadFromFile(self, path):
    """Reads a plan from a file.

    Args:
      path (str): path of the plan file.

    Returns:
      EmbeddingPlan: plan.
    """
    return self.ReadFromString(_ReadFile(path))


class YAMLRunConfigurationFile(object):
  """YAML-based run configuration file.

  A run configuration file overrides the default tolerances, caps and seed,
  for example:

  k_cap: 100000
  seed: 7
  trials: 200
  """

  _FLOAT_KEYS = frozenset([
      'composed_tolerance',
      'denominator_floor',
      'oracle_tolerance',
      'trend_epsilon'])

  def ReadFromFile(self, path, run_configuration=None):
    """Reads a run configuration from a YAML file.

    Args:
      path (str): path of the run configuration file.
      run_configuration (Optional[RunConfiguration]): configuration to
          update, where None creates one with the default values.

    Returns:
      RunConfiguration: run configuration.

    Raises:
      ParseError: if the file is malformed or has unsupported keys.
    """
    yaml_run_configuration = _LoadYAML(_ReadFile(path)) or {}
    _CheckKeys(
        yaml_run_configuration, configuration.RunConfiguration.FILE_KEYS,
        'run configuration')

    values = {}
    for key, value in yaml_run_configuration.items():
      expected_type = float if key in self._FLOAT_KEYS else int
      if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise errors.ParseError(f'Invalid value of {key:s}: {value!s}')
      if expected_type is int and value != int(value):
        raise errors.ParseError(f'Invalid integer value of {key:s}: {value!s}')
      values[key] = expected_type(value)

    if run_configuration is None:
      run_configuration = configuration.RunConfiguration()

    run_configuration.Update(values)
    return run_configuration
