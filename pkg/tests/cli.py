#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""Tests for the command line tool."""

import io
import json
import logging
import os
import unittest

from gwpkit import cli
from gwpkit import embedding
from gwpkit import reports
from gwpkit import weights

from tests import test_lib


class CLITest(test_lib.BaseTestCase):
  """Tests for the command line tool."""

  _HARMONIC_WEIGHT = '{"family": "power", "alpha": 1}'

  _SQUARE_ROOT_WEIGHT = '{"family": "power", "alpha": 0.5}'

  def setUp(self):
    """Sets up the needed objects used throughout the test."""
    logging.disable(logging.CRITICAL)

  def tearDown(self):
    """Cleans up after the test."""
    logging.disable(logging.NOTSET)

  def _RunMain(self, arguments, output_path):
    """Runs the tool and reads its JSON output.

    Args:
      arguments (list[str]): command line arguments without the output path.
      output_path (str): path of the output file.

    Returns:
      tuple[int, dict[str, object]]: exit code and report, or None if no
          report was written.
    """
    exit_code = cli.Main(arguments + ['--out', output_path])

    report = None
    if os.path.exists(output_path):
      with io.open(output_path, 'r', encoding='utf-8') as file_object:
        report = json.load(file_object)

    return exit_code, report

  def testNormCommand(self):
    """Tests the norm subcommand."""
    with test_lib.TempDirectory() as temporary_directory:
      output_path = os.path.join(temporary_directory, 'norm.json')

      exit_code, report = self._RunMain([
          'norm', '--space', 'garling', '--weight', self._HARMONIC_WEIGHT,
          '--p', '1', '--vec', '[0.5, 1]', '--oracle'], output_path)

    self.assertEqual(exit_code, cli.EXIT_SUCCESS)
    self.assertEqual(report['subcommand'], 'norm')
    self.assertAlmostEqual(report['result']['value'], 1.0)
    self.assertAlmostEqual(report['result']['oracle_value'], 1.0)
    self.assertEqual(report['result']['witness'], [2])
    self.assertEqual(report['config']['p'], 1)

    with test_lib.TempDirectory() as temporary_directory:
      output_path = os.path.join(temporary_directory, 'norm.json')

      exit_code, report = self._RunMain([
          'norm', '--space', 'lorentz', '--weight', self._HARMONIC_WEIGHT,
          '--p', '1', '--vec', '[0.5, 1]'], output_path)

    self.assertEqual(exit_code, cli.EXIT_SUCCESS)
    self.assertAlmostEqual(report['result']['value'], 1.25)

  def testNormCommandMixedBlocks(self):
    """Tests the norm subcommand with a block structured sequence."""
    with test_lib.TempDirectory() as temporary_directory:
      output_path = os.path.join(temporary_directory, 'norm.json')

      exit_code, report = self._RunMain([
          'norm', '--space', 'mixed', '--p', '1', '--vec', '[[3], [1, -2]]'],
          output_path)

      self.assertEqual(exit_code, cli.EXIT_SUCCESS)
      self.assertAlmostEqual(report['result']['value'], 5.0)
      self.assertEqual(report['result']['norm_kind']['block_sizes'], [1, 2])

      exit_code, report = self._RunMain([
          'norm', '--space', 'mixed', '--p', '2', '--vec', '[3, 1, -2]',
          '--blocks', '1', '2'], output_path)

      self.assertEqual(exit_code, cli.EXIT_SUCCESS)
      self.assertAlmostEqual(report['result']['value'], 13.0 ** 0.5)

      exit_code, report = self._RunMain([
          'norm', '--space', 'mixed', '--p', '1', '--vec', '[[3], [1, "a"]]'],
          output_path)

      self.assertEqual(exit_code, cli.EXIT_PARSE_ERROR)

  def testNormCommandErrors(self):
    """Tests the norm subcommand with invalid input."""
    with test_lib.TempDirectory() as temporary_directory:
      output_path = os.path.join(temporary_directory, 'norm.json')

      exit_code, report = self._RunMain([
          'norm', '--space', 'ellp', '--p', '1', '--vec', '[0.5'],
          output_path)
      self.assertEqual(exit_code, cli.EXIT_PARSE_ERROR)
      self.assertIsNone(report)

      exit_code, report = self._RunMain([
          'norm', '--space', 'ellp', '--p', '0.5', '--vec', '[0.5, 1]'],
          output_path)
      self.assertEqual(exit_code, cli.EXIT_PRECONDITION_ERROR)
      self.assertIsNone(report)

      exit_code, report = self._RunMain([
          'norm', '--space', 'garling', '--p', '1', '--vec', '[0.5, 1]'],
          output_path)
      self.assertEqual(exit_code, cli.EXIT_PARSE_ERROR)
      self.assertIsNone(report)

      exit_code, report = self._RunMain([
          'norm', '--space', 'lorentz', '--p', '1', '--vec', '[0.5, 1]'],
          output_path)
      self.assertEqual(exit_code, cli.EXIT_PARSE_ERROR)
      self.assertIsNone(report)

      exit_code, report = self._RunMain([
          'norm', '--space', 'garling', '--p', '1', '--vec', '[0.5, 1]',
          '--weight', ('{"family": "explicit", "prefix": ["a"], '
                       '"tail": {"family": "power", "alpha": 1}}')],
          output_path)
      self.assertEqual(exit_code, cli.EXIT_PARSE_ERROR)
      self.assertIsNone(report)

  def testKappaCommand(self):
    """Tests the kappa subcommand."""
    with test_lib.TempDirectory() as temporary_directory:
      output_path = os.path.join(temporary_directory, 'kappa.csv')

      exit_code = cli.Main([
          'kappa', '--n', '2', '--t', '1.1', '--weight', self._HARMONIC_WEIGHT,
          '--p', '2', '--format', 'csv', '--out', output_path])

      with io.open(output_path, 'r', encoding='utf-8') as file_object:
        lines = file_object.read().split('\n')

    self.assertEqual(exit_code, cli.EXIT_SUCCESS)
    self.assertTrue(lines[0].startswith('# gwpkit '))
    self.assertTrue(lines[0].endswith(' kappa'))
    self.assertTrue(lines[1].startswith('# config: {'))
    self.assertEqual(lines[2], 'position,k,norm_after_prepend')
    self.assertTrue(lines[3].startswith('1,4,'))
    self.assertTrue(lines[4].startswith('2,1,'))

    with test_lib.TempDirectory() as temporary_directory:
      output_path = os.path.join(temporary_directory, 'kappa.json')

      exit_code, report = self._RunMain([
          'kappa', '--n', '2', '--t', '1.1', '--weight', self._HARMONIC_WEIGHT,
          '--p', '2', '--k-cap', '3'], output_path)

    self.assertEqual(exit_code, cli.EXIT_CAP_EXCEEDED)
    self.assertIsNone(report)

  def testEmbedAndVerifyEmbedCommands(self):
    """Tests the embed and verify-embed subcommands."""
    with test_lib.TempDirectory() as temporary_directory:
      plan_path = os.path.join(temporary_directory, 'plan.json')
      output_path = os.path.join(temporary_directory, 'verify.json')

      exit_code, report = self._RunMain([
          'embed', '--eps', '3', '--n', '3', '--weight',
          self._SQUARE_ROOT_WEIGHT, '--p', '2'], plan_path)

      self.assertEqual(exit_code, cli.EXIT_SUCCESS)
      self.assertEqual(
          report['result']['plan']['kappas'], [[1], [1, 1], [1, 1, 1]])
      self.assertEqual(report['result']['plan']['level_shifts'], [0, 1, 2])

      exit_code, report = self._RunMain([
          'verify-embed', '--plan', plan_path, '--trials', '5'], output_path)

    self.assertEqual(exit_code, cli.EXIT_SUCCESS)
    self.assertTrue(report['result']['pass'])
    self.assertEqual(report['config']['trials'], 5)

    checks = [check['check'] for check in report['result']['checks']]
    self.assertEqual(checks, sorted(checks))
    self.assertIn('p_s_identity', checks)

  def testVerifyEmbedCommandFailure(self):
    """Tests the verify-embed subcommand with a corrupted plan."""
    weight = weights.Weight(weights.Weight.FAMILY_POWER, alpha=0.5)
    plan = embedding.BuildEmbeddingPlan(3.0, 3, weight, 2.0)
    plan_values = plan.AsDict()
    plan_values['level_shifts'] = [0, 10, 20]

    with test_lib.TempDirectory() as temporary_directory:
      plan_path = os.path.join(temporary_directory, 'plan.json')
      output_path = os.path.join(temporary_directory, 'verify.json')

      with io.open(plan_path, 'w', encoding='utf-8') as file_object:
        file_object.write(reports.EncodeJSON(plan_values))

      exit_code, report = self._RunMain([
          'verify-embed', '--plan', plan_path, '--trials', '5'], output_path)

    self.assertEqual(exit_code, cli.EXIT_VERIFICATION_FAILED)
    self.assertFalse(report['result']['pass'])

    failed_checks = [
        check['check'] for check in report['result']['checks']
        if not check['pass']]
    self.assertIn('shifts', failed_checks)

  def testWeightReportCommand(self):
    """Tests the weight-report subcommand."""
    with test_lib.TempDirectory() as temporary_directory:
      output_path = os.path.join(temporary_directory, 'weight.json')

      exit_code, report = self._RunMain([
          'weight-report', '--weight', self._SQUARE_ROOT_WEIGHT,
          '--horizon', '1000', '--biregular', '--lrp-b', '2'], output_path)

      self.assertEqual(exit_code, cli.EXIT_SUCCESS)
      self.assertIn('regularity', report['result'])
      self.assertIn('biregularity', report['result'])
      self.assertIn('trend', report['result']['biregularity']['conjugate'])
      self.assertIn('lrp', report['result']['primitive_gauge'])

      exit_code, report = self._RunMain(['weight-report'], output_path)
      self.assertEqual(exit_code, cli.EXIT_PARSE_ERROR)

      for weight_definition in (
          '{"family": "explicit", "prefix": ["a"], '
          '"tail": {"family": "power", "alpha": 1}}',
          '{"family": "explicit", "prefix": "1, 0.5", '
          '"tail": {"family": "power", "alpha": 1}}'):
        exit_code, report = self._RunMain([
            'weight-report', '--weight', weight_definition, '--horizon', '10'],
            output_path)
        self.assertEqual(exit_code, cli.EXIT_PARSE_ERROR)

  def testCondCommand(self):
    """Tests the cond subcommand."""
    with test_lib.TempDirectory() as temporary_directory:
      output_path = os.path.join(temporary_directory, 'cond.json')

      exit_code, report = self._RunMain([
          'cond', '--basis', 'summing', '--n', '2', '--gauge', 'L',
          '--m-max', '2', '--table'], output_path)

      self.assertEqual(exit_code, cli.EXIT_SUCCESS)

      entries = report['result']['gauges']['entries']
      self.assertEqual([entry['m'] for entry in entries], [1, 2])
      self.assertAlmostEqual(entries[1]['value'], 2.0)
      self.assertIn('growth', report['result'])

      exit_code, report = self._RunMain([
          'cond', '--basis', 'unit', '--n', '3', '--space', 'mixed'],
          output_path)
      self.assertEqual(exit_code, cli.EXIT_PARSE_ERROR)

  def testGreedyCommand(self):
    """Tests the greedy subcommand."""
    with test_lib.TempDirectory() as temporary_directory:
      output_path = os.path.join(temporary_directory, 'greedy.json')

      exit_code, report = self._RunMain([
          'greedy', '--vec', '[3, -5, 2]', '--m', '1'], output_path)

      self.assertEqual(exit_code, cli.EXIT_SUCCESS)
      self.assertEqual(report['result']['greedy_set'], [2])

      exit_code, report = self._RunMain([
          'greedy', '--basis', 'summing', '--n', '3', '--m', '2', '--signed',
          '--samples', '10'], output_path)

      self.assertEqual(exit_code, cli.EXIT_SUCCESS)
      self.assertAlmostEqual(report['result']['democracy_ratio'], 2.0)
      self.assertAlmostEqual(report['result']['fundamental_function'], 2.0)

  def testReproducibleOutput(self):
    """Tests that a run of every step writes identical output twice."""
    with test_lib.TempDirectory() as temporary_directory:
      norm_path = os.path.join(temporary_directory, 'norm.json')
      kappa_path = os.path.join(temporary_directory, 'kappa.csv')
      plan_path = os.path.join(temporary_directory, 'plan.json')
      verify_path = os.path.join(temporary_directory, 'verify.json')
      cond_path = os.path.join(temporary_directory, 'cond.csv')

      steps = [
          (['norm', '--space', 'garling', '--weight', self._SQUARE_ROOT_WEIGHT,
            '--p', '2', '--vec', '[0.5, 1, -0.25]', '--oracle'], norm_path),
          (['kappa', '--n', '3', '--t', '1.1', '--weight',
            self._SQUARE_ROOT_WEIGHT, '--p', '2', '--format', 'csv'],
           kappa_path),
          (['embed', '--eps', '3', '--n', '3', '--weight',
            self._SQUARE_ROOT_WEIGHT, '--p', '2'], plan_path),
          (['verify-embed', '--plan', plan_path, '--trials', '10'],
           verify_path),
          (['cond', '--basis', 'summing', '--n', '4', '--gauge', 'L',
            '--m-max', '4', '--mode', 'probe', '--format', 'csv'],
           cond_path)]

      outputs = []
      for _ in range(2):
        run_outputs = []
        for arguments, output_path in steps:
          exit_code = cli.Main(
              arguments + ['--seed', '7', '--out', output_path])
          self.assertEqual(exit_code, cli.EXIT_SUCCESS, msg=arguments[0])

          with io.open(output_path, 'rb') as file_object:
            run_outputs.append(file_object.read())

        for _, output_path in steps:
          os.remove(output_path)

        outputs.append(run_outputs)

    for step_index, (arguments, _) in enumerate(steps):
      self.assertTrue(outputs[0][step_index], msg=arguments[0])
      self.assertEqual(
          outputs[0][step_index], outputs[1][step_index], msg=arguments[0])

  def testConfigurationFile(self):
    """Tests reading a run configuration file."""
    test_file_path = self._GetTestFilePath(['run_config.yaml'])
    self._SkipIfPathNotExists(test_file_path)

    with test_lib.TempDirectory() as temporary_directory:
      output_path = os.path.join(temporary_directory, 'norm.json')

      exit_code, report = self._RunMain([
          'norm', '--space', 'sup', '--vec', '[0.5, -2]', '--config',
          test_file_path, '--seed', '3'], output_path)

    self.assertEqual(exit_code, cli.EXIT_SUCCESS)
    self.assertAlmostEqual(report['result']['value'], 2.0)
    self.assertEqual(report['config']['k_cap'], 5000)
    self.assertEqual(report['config']['seed'], 3)

  def testWeightDefinitionsFile(self):
    """Tests reading the weight from a definitions file."""
    test_file_path = self._GetTestFilePath(['weights.yaml'])
    self._SkipIfPathNotExists(test_file_path)

    with test_lib.TempDirectory() as temporary_directory:
      output_path = os.path.join(temporary_directory, 'norm.json')

      exit_code, report = self._RunMain([
          'norm', '--space', 'garling', '--weight', test_file_path,
          '--p', '1', '--vec', '[0.5, 1]'], output_path)

    self.assertEqual(exit_code, cli.EXIT_SUCCESS)
    weight = self._GetTestWeight('harmonic')
    self.assertEqual(report['config']['weight'], weight.AsDict())
    self.assertAlmostEqual(report['result']['value'], 1.0)


if __name__ == '__main__':
  unittest.main()
