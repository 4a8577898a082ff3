# -*- coding: utf-8 -*-
"""Report output writers.

Floating point values are written with 17 significant digits, so a report
is reproduced byte for byte from the same configuration and seed.
"""

import csv
import io
import json
import math
import sys

import numpy


def FormatFloat(value):
  """Formats a floating point value with 17 significant digits.

  Args:
    value (float): value.

  Returns:
    str: formatted value, where non-finite values are "nan", "inf" and
        "-inf".
  """
  value = float(value)
  if math.isnan(value):
    return 'nan'
  if math.isinf(value):
    return 'inf' if value > 0 else '-inf'
  return f'{value:.17g}'


def EncodeJSON(value, indent=0, compact=False):
  """Encodes a value as JSON with sorted keys and fixed float rendering.

  Args:
    value (object): value built from dictionaries, lists, tuples, strings,
        booleans, integers, floats and None.
    indent (Optional[int]): current indentation level.
    compact (Optional[bool]): True to write a single line.

  Returns:
    str: JSON text, non-finite floats are encoded as strings.
  """
  if isinstance(value, numpy.ndarray):
    value = value.tolist()
  elif isinstance(value, numpy.generic):
    value = value.item()

  if compact:
    padding = ''
    closing_padding = ''
    separator = ', '
    newline = ''
  else:
    padding = '  ' * (indent + 1)
    closing_padding = '  ' * indent
    separator = ',\n'
    newline = '\n'

  if isinstance(value, dict):
    if not value:
      return '{}'
    items = [
        f'{padding:s}{json.dumps(str(key)):s}: '
        f'{EncodeJSON(value[key], indent + 1, compact):s}'
        for key in sorted(value, key=str)]
    items_text = separator.join(items)
    return f'{{{newline:s}{items_text:s}{newline:s}{closing_padding:s}}}'

  if isinstance(value, (list, tuple)):
    if not value:
      return '[]'
    items = [
        f'{padding:s}{EncodeJSON(item, indent + 1, compact):s}'
        for item in value]
    items_text = separator.join(items)
    return f'[{newline:s}{items_text:s}{newline:s}{closing_padding:s}]'

  if isinstance(value, bool) or value is None:
    return json.dumps(value)

  if isinstance(value, int):
    return f'{value:d}'

  if isinstance(value, float):
    if not math.isfinite(value):
      return json.dumps(FormatFloat(value))
    return FormatFloat(value)

  return json.dumps(str(value))


class Report(object):
  """Report of a subcommand.

  Attributes:
    configuration (dict[str, object]): resolved run configuration.
    csv_header (list[str]): column names of the CSV projection.
    csv_rows (list[list[object]]): rows of the CSV projection.
    result (dict[str, object]): result values.
    subcommand (str): subcommand.
    version (str): version of the tool.
  """

  def __init__(
      self, subcommand, version, configuration, result, csv_header=None,
      csv_rows=None):
    """Initializes a report.

    Args:
      subcommand (str): subcommand.
      version (str): version of the tool.
      configuration (dict[str, object]): resolved run configuration.
      result (dict[str, object]): result values.
      csv_header (Optional[list[str]]): column names of the CSV projection.
      csv_rows (Optional[list[list[object]]]): rows of the CSV projection.
    """
    super(Report, self).__init__()
    self.configuration = configuration
    self.csv_header = csv_header or ['key', 'value']
    self.csv_rows = csv_rows
    self.result = result
    self.subcommand = subcommand
    self.version = version

  def AsDict(self):
    """Retrieves the report values.

    Returns:
      dict[str, object]: report values.
    """
    return {
        'config': self.configuration,
        'result': self.result,
        'subcommand': self.subcommand,
        'version': self.version}


class OutputWriter(object):
  """Output writer interface."""

  def __init__(self, path=None):
    """Initializes an output writer.

    Args:
      path (Optional[str]): path of the output file, where None represents
          stdout.
    """
    super(OutputWriter, self).__init__()
    self._file_object = None
    self._path = path

  def __enter__(self):
    """Make this work with the 'with' statement."""
    if self._path:
      self._file_object = open(
          self._path, 'w', encoding='utf-8', newline='')
    else:
      self._file_object = sys.stdout
    return self

  def __exit__(self, exception_type, value, traceback):
    """Make this work with the 'with' statement."""
    if self._path:
      self._file_object.close()
    self._file_object = None

  def WriteReport(self, report):
    """Writes a report.

    Args:
      report (Report): report.
    """
    raise NotImplementedError()


class CSVOutputWriter(OutputWriter):
  """CSV output writer.

  The version and the resolved configuration are written as leading comment
  lines.
  """

  def _FormatValue(self, value):
    """Formats a CSV cell value.

    Args:
      value (object): value.

    Returns:
      str: formatted value.
    """
    if isinstance(value, (numpy.ndarray, numpy.generic)):
      value = value.tolist()

    if isinstance(value, bool) or value is None:
      return json.dumps(value)
    if isinstance(value, float):
      return FormatFloat(value)
    if isinstance(value, (dict, list, tuple)):
      return EncodeJSON(value, compact=True)
    return f'{value!s}'

  def WriteReport(self, report):
    """Writes a report as CSV.

    Args:
      report (Report): report.
    """
    configuration_text = EncodeJSON(report.configuration, compact=True)
    self._file_object.write(
        f'# gwpkit {report.version:s} {report.subcommand:s}\n')
    self._file_object.write(f'# config: {configuration_text:s}\n')

    rows = report.csv_rows
    if rows is None:
      rows = [[key, report.result[key]] for key in sorted(report.result)]

    string_io = io.StringIO(newline='')
    csv_writer = csv.writer(string_io, lineterminator='\n')
    csv_writer.writerow(report.csv_header)
    for row in rows:
      csv_writer.writerow([self._FormatValue(value) for value in row])

    self._file_object.write(string_io.getvalue())


class JSONOutputWriter(OutputWriter):
  """JSON output writer."""

  def WriteReport(self, report):
    """Writes a report as JSON.

    Args:
      report (Report): report.
    """
    self._file_object.write(EncodeJSON(report.AsDict()))
    self._file_object.write('\n')
