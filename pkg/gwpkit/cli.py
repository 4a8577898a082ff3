# -*- coding: utf-8 -*-
"""Command line tool of the Garling sequence space toolkit."""

import argparse
import logging
import os

import gwpkit

from gwpkit import conditionality
from gwpkit import configuration
from gwpkit import construction
from gwpkit import definitions_file
from gwpkit import embedding
from gwpkit import errors
from gwpkit import norms
from gwpkit import reports
from gwpkit import weights


EXIT_SUCCESS = 0
EXIT_PARSE_ERROR = 2
EXIT_PRECONDITION_ERROR = 3
EXIT_CAP_EXCEEDED = 4
EXIT_VERIFICATION_FAILED = 5

BASIS_BESOV = 'besov'
BASIS_SUMMING = 'summing'
BASIS_UNIT = 'unit'

BASES = [BASIS_BESOV, BASIS_SUMMING, BASIS_UNIT]

SPACES = [
    norms.SpaceNorm.KIND_ELLP, norms.SpaceNorm.KIND_GARLING,
    norms.SpaceNorm.KIND_LORENTZ, norms.SpaceNorm.KIND_MIXED,
    norms.SpaceNorm.KIND_SUP]

GAUGE_CSV_HEADER = [
    'basis', 'm', 'gauge_kind', 'value', 'method', 'witness_json']

VERIFICATION_CSV_HEADER = ['check', 'trials', 'worst_slack', 'pass']


def _ReadText(value):
  """Reads an inline definition or the contents of the file it names.

  Args:
    value (str): inline YAML or JSON, or path of a file.

  Returns:
    str: definition text.

  Raises:
    ParseError: if a named file cannot be read.
  """
  if os.path.isfile(value):
    try:
      with open(value, 'r', encoding='utf-8') as file_object:
        return file_object.read()
    except (IOError, OSError, UnicodeDecodeError) as exception:
      raise errors.ParseError(
          f'Unable to read: {value:s} with error: {exception!s}'
      ) from exception

  return value


def _ReadWeight(value):
  """Reads a weight definition.

  Args:
    value (str): inline weight definition or path of a definitions file,
        where the first definition is used.

  Returns:
    Weight: weight.

  Raises:
    ParseError: if the weight definition is missing or malformed.
  """
  if not value:
    raise errors.ParseError('Missing weight definition.')

  definitions_file_object = definitions_file.YAMLWeightDefinitionsFile()
  if os.path.isfile(value):
    for _, weight in definitions_file_object.ReadFromFile(value):
      return weight
    raise errors.ParseError(f'No weight definitions in: {value:s}')

  return definitions_file_object.ReadFromString(value)


def _BuildSpaceNorm(space, weight, p, block_sizes=None):
  """Builds a space norm from command line values.

  Args:
    space (str): kind of norm.
    weight (Weight): weight or None.
    p (float): exponent or None.
    block_sizes (Optional[list[int]]): block sizes of the mixed norm.

  Returns:
    SpaceNorm: space norm.

  Raises:
    ParseError: if the Garling or Lorentz norm is missing its weight.
  """
  if space in (norms.SpaceNorm.KIND_GARLING, norms.SpaceNorm.KIND_LORENTZ):
    if weight is None:
      raise errors.ParseError(f'Missing weight definition of {space:s} norm.')

  return norms.SpaceNorm(
      space, p=p, weight=weight, block_sizes=block_sizes)


def _BuildBasis(options, run_configuration):
  """Builds a finite basis from command line values.

  Args:
    options (argparse.Namespace): command line arguments.
    run_configuration (RunConfiguration): run configuration.

  Returns:
    FiniteBasis: basis.

  Raises:
    ParseError: if required values are missing.
  """
  if options.dimension is None:
    raise errors.ParseError('Missing dimension.')

  if options.basis == BASIS_SUMMING:
    return conditionality.SummingBasis(options.dimension)

  if options.basis == BASIS_BESOV:
    return conditionality.BesovSumBasis(
        options.dimension, run_configuration.p or 1.0)

  if options.space == norms.SpaceNorm.KIND_MIXED:
    raise errors.ParseError('Unit vector basis requires a lattice space.')

  ambient = _BuildSpaceNorm(
      options.space, run_configuration.weight, run_configuration.p)
  return conditionality.UnitVectorBasis(options.dimension, ambient)


def RunCondCommand(options, run_configuration):
  """Runs the cond subcommand.

  Args:
    options (argparse.Namespace): command line arguments.
    run_configuration (RunConfiguration): run configuration.

  Returns:
    tuple[Report, int]: report and exit code.
  """
  basis = _BuildBasis(options, run_configuration)
  m_values = list(range(1, min(options.m_max, basis.dimension) + 1))

  gauge_arguments = {
      'exact_dimension': run_configuration.exact_dimension,
      'exact_prefix': run_configuration.exact_prefix,
      'seed': run_configuration.seed,
      'starts': run_configuration.probe_starts}

  gauge_report = conditionality.ComputeGaugeReport(
      basis, options.gauge, m_values, mode=options.mode, **gauge_arguments)

  result = {
      'basis': basis.AsDict(),
      'gauges': gauge_report.AsDict()}

  if options.table:
    table = conditionality.LogConditionalityCheck(
        lambda _: basis, m_values, kind=options.gauge, mode=options.mode,
        trend_epsilon=run_configuration.trend_epsilon, **gauge_arguments)
    result['growth'] = table.AsDict()

  csv_rows = [
      [basis.label, entry.m, entry.kind, entry.value, entry.method,
       entry.AsDict()['witness']]
      for entry in gauge_report.entries]

  report = reports.Report(
      options.subcommand, gwpkit.__version__, run_configuration.AsDict(),
      result, csv_header=GAUGE_CSV_HEADER, csv_rows=csv_rows)
  return report, EXIT_SUCCESS


def RunEmbedCommand(options, run_configuration):
  """Runs the embed subcommand.

  Args:
    options (argparse.Namespace): command line arguments.
    run_configuration (RunConfiguration): run configuration.

  Returns:
    tuple[Report, int]: report and exit code.
  """
  plan = embedding.BuildEmbeddingPlan(
      options.epsilon, options.levels, run_configuration.weight,
      run_configuration.p, k_floor=options.k_floor,
      k_cap=run_configuration.k_cap)

  csv_rows = [
      [n, i, plan.BlockLength(i, n), plan.intervals[(i, n)][0],
       plan.intervals[(i, n)][1], plan.level_shifts[n - 1]]
      for i, n in plan.block_indexes]

  report = reports.Report(
      options.subcommand, gwpkit.__version__, run_configuration.AsDict(),
      {'plan': plan.AsDict()},
      csv_header=['n', 'i', 'k', 'first', 'last', 'level_shift'],
      csv_rows=csv_rows)
  return report, EXIT_SUCCESS


def RunGreedyCommand(options, run_configuration):
  """Runs the greedy subcommand.

  Args:
    options (argparse.Namespace): command line arguments.
    run_configuration (RunConfiguration): run configuration.

  Returns:
    tuple[Report, int]: report and exit code.

  Raises:
    ParseError: if neither a vector nor a basis is given.
  """
  if not options.vector and not options.basis:
    raise errors.ParseError('Missing vector or basis.')

  result = {}
  csv_rows = []

  if options.vector:
    sequence_definition = definitions_file.YAMLSequenceDefinition()
    sequence = sequence_definition.ReadFromString(_ReadText(options.vector))
    coefficients = sequence.ToDense()

    m = len(coefficients) if options.m is None else options.m
    greedy_set = [
        int(index) for index in conditionality.GreedySet(coefficients, m)]
    result['greedy_set'] = greedy_set
    csv_rows.append(['greedy_set', greedy_set])

  if options.basis:
    basis = _BuildBasis(options, run_configuration)
    estimate, witness = conditionality.AlmostGreedyRatio(
        basis, options.samples, seed=run_configuration.seed,
        denominator_floor=run_configuration.denominator_floor)

    m = min(options.m or 1, basis.dimension)
    democracy_ratio = conditionality.DemocracyRatio(
        basis, m, signed=options.signed, seed=run_configuration.seed)
    fundamental_function = conditionality.FundamentalFunction(
        basis, m, seed=run_configuration.seed)

    result.update({
        'almost_greedy': {'estimate': estimate, 'witness': witness},
        'basis': basis.AsDict(),
        'democracy_ratio': democracy_ratio,
        'fundamental_function': fundamental_function,
        'm': m})
    csv_rows.extend([
        ['almost_greedy_estimate', estimate],
        ['democracy_ratio', democracy_ratio],
        ['fundamental_function', fundamental_function]])

  report = reports.Report(
      options.subcommand, gwpkit.__version__, run_configuration.AsDict(),
      result, csv_rows=csv_rows)
  return report, EXIT_SUCCESS


def RunKappaCommand(options, run_configuration):
  """Runs the kappa subcommand.

  Args:
    options (argparse.Namespace): command line arguments.
    run_configuration (RunConfiguration): run configuration.

  Returns:
    tuple[Report, int]: report and exit code.
  """
  kappa = construction.BuildKappa(
      options.levels, options.t, run_configuration.weight,
      run_configuration.p, k_floor=options.k_floor,
      k_cap=run_configuration.k_cap)

  csv_rows = [
      [index, entry, step_norm]
      for index, (entry, step_norm) in enumerate(
          zip(kappa.entries, kappa.step_norms), start=1)]

  report = reports.Report(
      options.subcommand, gwpkit.__version__, run_configuration.AsDict(),
      {'kappa': kappa.AsDict()},
      csv_header=['position', 'k', 'norm_after_prepend'], csv_rows=csv_rows)
  return report, EXIT_SUCCESS


def RunNormCommand(options, run_configuration):
  """Runs the norm subcommand.

  Args:
    options (argparse.Namespace): command line arguments.
    run_configuration (RunConfiguration): run configuration.

  Returns:
    tuple[Report, int]: report and exit code.
  """
  text = _ReadText(options.vector)
  sequence_definition = definitions_file.YAMLSequenceDefinition()

  blocks = None
  if options.space == norms.SpaceNorm.KIND_MIXED:
    blocks = sequence_definition.ReadBlocksFromString(text)

  block_sizes = options.blocks
  if blocks is None:
    sequence = sequence_definition.ReadFromString(text)
  else:
    sequence = blocks
    if block_sizes is None:
      block_sizes = [len(block) for block in blocks]

  space_norm = _BuildSpaceNorm(
      options.space, run_configuration.weight, run_configuration.p,
      block_sizes=block_sizes)

  result = {'norm_kind': space_norm.AsDict(), 'witness': None}

  if space_norm.kind == norms.SpaceNorm.KIND_GARLING:
    if options.shift:
      value = norms.ComputeShiftedGarling(
          sequence, space_norm.weight, space_norm.p, options.shift)
    else:
      value, witness = norms.ComputeGarlingNorm(
          sequence, space_norm.weight, space_norm.p)
      result['witness'] = list(witness.indices)

    if options.oracle and not options.shift:
      result['oracle_value'] = norms.BruteForceGarling(
          sequence, space_norm.weight, space_norm.p,
          support_limit=run_configuration.brute_force_limit)

  else:
    value = space_norm.Norm(sequence)

  result['value'] = value

  report = reports.Report(
      options.subcommand, gwpkit.__version__, run_configuration.AsDict(),
      result, csv_header=['norm_kind', 'value', 'witness_json'],
      csv_rows=[[space_norm.kind, value, result['witness']]])
  return report, EXIT_SUCCESS


def RunVerifyEmbedCommand(options, run_configuration):
  """Runs the verify-embed subcommand.

  Args:
    options (argparse.Namespace): command line arguments.
    run_configuration (RunConfiguration): run configuration.

  Returns:
    tuple[Report, int]: report and exit code, which indicates a failed
        verification when any check fails.

  Raises:
    ParseError: if the plan is missing.
  """
  if not options.plan:
    raise errors.ParseError('Missing plan.')

  plan_file = definitions_file.JSONPlanFile()
  plan = plan_file.ReadFromString(_ReadText(options.plan))

  verification_report = embedding.VerifyEmbedding(
      plan, trials=run_configuration.trials, seed=run_configuration.seed,
      tolerance=run_configuration.composed_tolerance,
      dense_limit=run_configuration.dense_limit)

  csv_rows = [
      [result.check, result.trials, result.worst_slack, result.passed]
      for result in verification_report.checks]

  report = reports.Report(
      options.subcommand, gwpkit.__version__, run_configuration.AsDict(),
      verification_report.AsDict(), csv_header=VERIFICATION_CSV_HEADER,
      csv_rows=csv_rows)

  if not verification_report.passed:
    failed_checks = ', '.join(
        result.check for result in verification_report.checks
        if not result.passed)
    logging.error(f'Verification failed: {failed_checks:s}')
    return report, EXIT_VERIFICATION_FAILED

  return report, EXIT_SUCCESS


def RunWeightReportCommand(options, run_configuration):
  """Runs the weight-report subcommand.

  Args:
    options (argparse.Namespace): command line arguments.
    run_configuration (RunConfiguration): run configuration.

  Returns:
    tuple[Report, int]: report and exit code.
  """
  weight = run_configuration.weight
  regularity_report = weights.GetRegularityReport(
      weight, options.horizon, trend_epsilon=run_configuration.trend_epsilon)

  result = {'regularity': regularity_report.AsDict()}
  csv_rows = [
      ['trend', regularity_report.trend],
      ['sup_value', regularity_report.sup_value],
      ['argmax', regularity_report.argmax]]

  if options.biregular:
    biregularity = weights.BiregularityReport(
        weight, options.horizon, trend_epsilon=run_configuration.trend_epsilon)
    result['biregularity'] = {
        'bi_regular_looking': biregularity['bi_regular_looking'],
        'conjugate': biregularity['conjugate'].AsDict(),
        'weight': biregularity['weight'].AsDict()}
    csv_rows.append(['bi_regular_looking', biregularity['bi_regular_looking']])

  if options.lrp_b is not None or options.urp_b is not None:
    gauge = weights.PrimitiveGauge(weight, run_configuration.p or 1.0)
    primitive_gauge = {'label': gauge.label}
    if options.lrp_b is not None:
      verdict = weights.HasLRP(gauge, options.lrp_b, options.horizon)
      primitive_gauge['lrp'] = verdict.AsDict()
      csv_rows.append(['lrp', f'{verdict!s}'])
    if options.urp_b is not None:
      verdict = weights.HasURP(gauge, options.urp_b, options.horizon)
      primitive_gauge['urp'] = verdict.AsDict()
      csv_rows.append(['urp', f'{verdict!s}'])
    result['primitive_gauge'] = primitive_gauge

  report = reports.Report(
      options.subcommand, gwpkit.__version__, run_configuration.AsDict(),
      result, csv_rows=csv_rows)
  return report, EXIT_SUCCESS


_COMMANDS = {
    'cond': RunCondCommand,
    'embed': RunEmbedCommand,
    'greedy': RunGreedyCommand,
    'kappa': RunKappaCommand,
    'norm': RunNormCommand,
    'verify-embed': RunVerifyEmbedCommand,
    'weight-report': RunWeightReportCommand}

# Commands that require a weight.
_WEIGHTED_COMMANDS = frozenset(['embed', 'kappa', 'weight-report'])


def _AddCommonArguments(argument_parser):
  """Adds the arguments shared by every subcommand.

  Args:
    argument_parser (argparse.ArgumentParser): argument parser.
  """
  argument_parser.add_argument(
      '-d', '--debug', dest='debug', action='store_true', default=False,
      help='enable debug output.')

  argument_parser.add_argument(
      '--config', dest='config', action='store', metavar='PATH',
      default=None, help='path of a YAML run configuration file.')

  argument_parser.add_argument(
      '--format', dest='output_format', action='store',
      choices=['csv', 'json'], default=None, help='output format.')

  argument_parser.add_argument(
      '--k-cap', '--k_cap', dest='k_cap', action='store', type=int,
      metavar='CAP', default=None, help='largest block length searched.')

  argument_parser.add_argument(
      '--out', dest='output_path', action='store', metavar='PATH',
      default=None, help='path of the output file, default is stdout.')

  argument_parser.add_argument(
      '--p', dest='p', action='store', type=float, metavar='P', default=None,
      help='exponent p >= 1.')

  argument_parser.add_argument(
      '--seed', dest='seed', action='store', type=int, metavar='SEED',
      default=None, help='seed of randomized computations.')

  argument_parser.add_argument(
      '--weight', dest='weight', action='store', metavar='WEIGHT',
      default=None, help=(
          'weight definition as inline JSON or YAML, or path of a weight '
          'definitions file.'))


def _AddBasisArguments(argument_parser, required=True):
  """Adds the arguments that select a finite basis.

  Args:
    argument_parser (argparse.ArgumentParser): argument parser.
    required (Optional[bool]): True if the basis is required.
  """
  argument_parser.add_argument(
      '--basis', dest='basis', action='store', choices=BASES,
      required=required, default=None, help='basis family.')

  argument_parser.add_argument(
      '--n', dest='dimension', action='store', type=int, metavar='N',
      default=None, help=(
          'dimension of the summing and unit vector bases or number of '
          'levels of the besov sum basis.'))

  argument_parser.add_argument(
      '--space', dest='space', action='store', choices=SPACES,
      default=norms.SpaceNorm.KIND_GARLING,
      help='ambient norm of the unit vector basis.')


def GetArgumentParser():
  """Creates the argument parser.

  Returns:
    argparse.ArgumentParser: argument parser.
  """
  argument_parser = argparse.ArgumentParser(description=(
      'Computes Garling sequence space norms, embeddings and '
      'conditionality gauges.'))

  subparsers = argument_parser.add_subparsers(
      dest='subcommand', metavar='SUBCOMMAND')
  subparsers.required = True

  norm_parser = subparsers.add_parser('norm', help='evaluate a norm.')
  _AddCommonArguments(norm_parser)
  norm_parser.add_argument(
      '--space', dest='space', action='store', choices=SPACES,
      required=True, help='kind of norm.')
  norm_parser.add_argument(
      '--vec', dest='vector', action='store', metavar='VECTOR', required=True,
      help='sequence as inline JSON or YAML, or path of a file.')
  norm_parser.add_argument(
      '--blocks', dest='blocks', action='store', type=int, nargs='+',
      metavar='SIZE', default=None, help='block sizes of the mixed norm.')
  norm_parser.add_argument(
      '--shift', dest='shift', action='store', type=int, metavar='M',
      default=0, help='shift of the Garling weight row.')
  norm_parser.add_argument(
      '--oracle', dest='oracle', action='store_true', default=False,
      help='also compute the Garling norm by brute force enumeration.')

  kappa_parser = subparsers.add_parser(
      'kappa', help='build a block length tuple.')
  _AddCommonArguments(kappa_parser)
  kappa_parser.add_argument(
      '--n', dest='levels', action='store', type=int, metavar='N',
      required=True, help='number of block lengths.')
  kappa_parser.add_argument(
      '--t', dest='t', action='store', type=float, metavar='T', required=True,
      help='norm bound t > 1.')
  kappa_parser.add_argument(
      '--k-floor', '--k_floor', dest='k_floor', action='store', type=int,
      metavar='K', default=1, help='smallest block length.')

  embed_parser = subparsers.add_parser('embed', help='build an embedding plan.')
  _AddCommonArguments(embed_parser)
  embed_parser.add_argument(
      '--eps', dest='epsilon', action='store', type=float, metavar='EPSILON',
      required=True, help='tolerance epsilon > 0.')
  embed_parser.add_argument(
      '--n', dest='levels', action='store', type=int, metavar='N',
      required=True, help='number of levels.')
  embed_parser.add_argument(
      '--k-floor', '--k_floor', dest='k_floor', action='store', type=int,
      metavar='K', default=1, help='smallest block length.')

  verify_parser = subparsers.add_parser(
      'verify-embed', help='verify an embedding plan.')
  _AddCommonArguments(verify_parser)
  verify_parser.add_argument(
      '--plan', dest='plan', action='store', metavar='PATH', required=True,
      help='path of a plan file written by embed.')
  verify_parser.add_argument(
      '--trials', dest='trials', action='store', type=int, metavar='TRIALS',
      default=None, help='number of random inputs per check.')

  weight_parser = subparsers.add_parser(
      'weight-report', help='report regularity properties of a weight.')
  _AddCommonArguments(weight_parser)
  weight_parser.add_argument(
      '--horizon', dest='horizon', action='store', type=int, metavar='M',
      default=1000000, help='horizon of the regularity heuristic.')
  weight_parser.add_argument(
      '--biregular', dest='biregular', action='store_true', default=False,
      help='also report the conjugate weight.')
  weight_parser.add_argument(
      '--lrp-b', '--lrp_b', dest='lrp_b', action='store', type=int,
      metavar='B', default=None,
      help='check the lower regularity property of the primitive gauge.')
  weight_parser.add_argument(
      '--urp-b', '--urp_b', dest='urp_b', action='store', type=int,
      metavar='B', default=None,
      help='check the upper regularity property of the primitive gauge.')

  cond_parser = subparsers.add_parser(
      'cond', help='compute conditionality gauges of a basis.')
  _AddCommonArguments(cond_parser)
  _AddBasisArguments(cond_parser)
  cond_parser.add_argument(
      '--gauge', dest='gauge', action='store',
      choices=[conditionality.GAUGE_CONDITIONALITY,
               conditionality.GAUGE_QUASI_GREEDY],
      default=conditionality.GAUGE_QUASI_GREEDY, help='gauge kind.')
  cond_parser.add_argument(
      '--m-max', '--m_max', dest='m_max', action='store', type=int,
      metavar='M', default=8, help='largest m.')
  cond_parser.add_argument(
      '--mode', dest='mode', action='store',
      choices=sorted(conditionality.MODES), default=conditionality.MODE_AUTO,
      help='evaluation mode.')
  cond_parser.add_argument(
      '--table', dest='table', action='store_true', default=False,
      help='also emit the growth table against log m and m.')

  greedy_parser = subparsers.add_parser(
      'greedy', help='compute greedy sets and greedy constants.')
  _AddCommonArguments(greedy_parser)
  _AddBasisArguments(greedy_parser, required=False)
  greedy_parser.add_argument(
      '--vec', dest='vector', action='store', metavar='VECTOR', default=None,
      help='coefficients as inline JSON or YAML, or path of a file.')
  greedy_parser.add_argument(
      '--m', dest='m', action='store', type=int, metavar='M', default=None,
      help='size of the greedy set and of the democracy index sets.')
  greedy_parser.add_argument(
      '--samples', dest='samples', action='store', type=int, metavar='S',
      default=100, help='number of sampled coefficient vectors.')
  greedy_parser.add_argument(
      '--signed', dest='signed', action='store_true', default=False,
      help='use signed democracy.')

  return argument_parser


def GetRunConfiguration(options):
  """Resolves the run configuration.

  Defaults are overridden by the run configuration file and then by
  explicit command line values.

  Args:
    options (argparse.Namespace): command line arguments.

  Returns:
    RunConfiguration: run configuration.

  Raises:
    ParseError: if the run configuration file or the weight cannot be read.
  """
  run_configuration = configuration.RunConfiguration()

  if options.config:
    run_configuration_file = definitions_file.YAMLRunConfigurationFile()
    run_configuration_file.ReadFromFile(options.config, run_configuration)

  run_configuration.Update({
      'k_cap': options.k_cap,
      'output_format': options.output_format,
      'output_path': options.output_path,
      'p': options.p,
      'seed': options.seed,
      'subcommand': options.subcommand,
      'trials': getattr(options, 'trials', None)})

  if options.weight or options.subcommand in _WEIGHTED_COMMANDS:
    run_configuration.weight = _ReadWeight(options.weight)

  return run_configuration


def Main(arguments=None):
  """Entry point of the console script.

  Args:
    arguments (Optional[list[str]]): command line arguments, where None
        represents sys.argv.

  Returns:
    int: exit code that is provided to sys.exit().
  """
  argument_parser = GetArgumentParser()
  options = argument_parser.parse_args(arguments)

  logging.basicConfig(
      level=logging.DEBUG if options.debug else logging.INFO,
      format='[%(levelname)s] %(message)s')

  try:
    run_configuration = GetRunConfiguration(options)
    report, exit_code = _COMMANDS[options.subcommand](
        options, run_configuration)

  except errors.ParseError as exception:
    logging.error(f'Unable to parse input with error: {exception!s}')
    return EXIT_PARSE_ERROR

  except errors.CapExceededError as exception:
    logging.error(f'{exception!s}')
    return EXIT_CAP_EXCEEDED

  except errors.Error as exception:
    logging.error(f'{exception!s}')
    return EXIT_PRECONDITION_ERROR

  output_format = run_configuration.output_format
  if output_format == configuration.RunConfiguration.FORMAT_CSV:
    output_writer = reports.CSVOutputWriter(run_configuration.output_path)
  else:
    output_writer = reports.JSONOutputWriter(run_configuration.output_path)

  with output_writer:
    output_writer.WriteReport(report)

  return exit_code
