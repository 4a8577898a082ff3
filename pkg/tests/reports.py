#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""Tests for the report output writers."""

import io
import os
import unittest

import numpy

from gwpkit import reports

from tests import test_lib


class FormattingTest(test_lib.BaseTestCase):
  """Tests for the value formatting functions."""

  def testFormatFloat(self):
    """Tests the FormatFloat function."""
    self.assertEqual(reports.FormatFloat(1.0), '1')
    self.assertEqual(reports.FormatFloat(0.1), '0.10000000000000001')
    self.assertEqual(reports.FormatFloat(float('nan')), 'nan')
    self.assertEqual(reports.FormatFloat(float('inf')), 'inf')
    self.assertEqual(reports.FormatFloat(float('-inf')), '-inf')

  def testEncodeJSON(self):
    """Tests the EncodeJSON function."""
    value = {'b': 1, 'a': [1.5, None, True]}

    expected_text = (
        '{\n'
        '  "a": [\n'
        '    1.5,\n'
        '    null,\n'
        '    true\n'
        '  ],\n'
        '  "b": 1\n'
        '}')
    self.assertEqual(reports.EncodeJSON(value), expected_text)

    self.assertEqual(
        reports.EncodeJSON(value, compact=True),
        '{"a": [1.5, null, true], "b": 1}')

    self.assertEqual(reports.EncodeJSON({}), '{}')
    self.assertEqual(reports.EncodeJSON(()), '[]')
    self.assertEqual(reports.EncodeJSON(float('inf')), '"inf"')
    self.assertEqual(
        reports.EncodeJSON(numpy.array([1, 2]), compact=True), '[1, 2]')
    self.assertEqual(reports.EncodeJSON(numpy.float64(0.5)), '0.5')
    self.assertEqual(reports.EncodeJSON({2: 'x'}, compact=True), '{"2": "x"}')


class ReportTest(test_lib.BaseTestCase):
  """Tests for the report."""

  def testAsDict(self):
    """Tests the AsDict function."""
    report = reports.Report('kappa', '20261019', {'seed': 0}, {'k': [4, 1]})

    expected_dict = {
        'config': {'seed': 0},
        'result': {'k': [4, 1]},
        'subcommand': 'kappa',
        'version': '20261019'}
    self.assertEqual(report.AsDict(), expected_dict)
    self.assertEqual(report.csv_header, ['key', 'value'])


class CSVOutputWriterTest(test_lib.BaseTestCase):
  """Tests for the CSV output writer."""

  def _WriteReport(self, report):
    """Writes a report to a temporary file.

    Args:
      report (Report): report.

    Returns:
      str: contents of the written file.
    """
    with test_lib.TempDirectory() as temporary_directory:
      path = os.path.join(temporary_directory, 'report.csv')
      with reports.CSVOutputWriter(path) as output_writer:
        output_writer.WriteReport(report)

      with io.open(path, 'r', encoding='utf-8', newline='') as file_object:
        return file_object.read()

  def testWriteReport(self):
    """Tests the WriteReport function."""
    report = reports.Report(
        'norm', '20261019', {'p': 1.0}, {'value': 2.0},
        csv_header=['norm_kind', 'value', 'witness_json'],
        csv_rows=[['garling', 2.0, [2]], ['lorentz', 1.25, [1, 2]]])

    expected_text = (
        '# gwpkit 20261019 norm\n'
        '# config: {"p": 1}\n'
        'norm_kind,value,witness_json\n'
        'garling,2,[2]\n'
        'lorentz,1.25,"[1, 2]"\n')
    self.assertEqual(self._WriteReport(report), expected_text)

  def testWriteReportWithoutRows(self):
    """Tests the WriteReport function without CSV rows."""
    report = reports.Report(
        'greedy', '20261019', {}, {'b': True, 'a': None})

    expected_text = (
        '# gwpkit 20261019 greedy\n'
        '# config: {}\n'
        'key,value\n'
        'a,null\n'
        'b,true\n')
    self.assertEqual(self._WriteReport(report), expected_text)


class JSONOutputWriterTest(test_lib.BaseTestCase):
  """Tests for the JSON output writer."""

  def testWriteReport(self):
    """Tests the WriteReport function."""
    report = reports.Report(
        'weight-report', '20261019', {'seed': 0}, {'trend': 'bounded'})

    with test_lib.TempDirectory() as temporary_directory:
      path = os.path.join(temporary_directory, 'report.json')
      with reports.JSONOutputWriter(path) as output_writer:
        output_writer.WriteReport(report)

      with io.open(path, 'r', encoding='utf-8') as file_object:
        text = file_object.read()

    self.assertEqual(text, reports.EncodeJSON(report.AsDict()) + '\n')
    self.assertTrue(text.startswith('{\n  "config": {\n    "seed": 0\n  },'))


if __name__ == '__main__':
  unittest.main()
