# -*- coding: utf-8 -*-
"""Helper to check for availability and version of dependencies."""

import configparser
import os
import re


class DependencyDefinition(object):
  """Dependency definition.

  Attributes:
    dpkg_name (str): name of the dpkg package that provides the dependency.
    is_optional (bool): True if the dependency is optional.
    minimum_version (str): minimum supported version, a lesser version is
        not supported.
    name (str): name of (the Python module that provides) the dependency.
    pypi_name (str): name of the PyPI package that provides the dependency.
    rpm_name (str): name of the rpm package that provides the dependency.
    skip_check (bool): True if the dependency should be skipped by the
        CheckDependencies or CheckTestDependencies methods of DependencyHelper.
    version_property (str): name of the version attribute or function.
  """

  def __init__(self, name):
    """Initializes a dependency definition.

    Args:
      name (str): name of the dependency.
    """
    super(DependencyDefinition, self).__init__()
    self.dpkg_name = None
    self.is_optional = False
    self.minimum_version = None
    self.name = name
    self.pypi_name = None
    self.rpm_name = None
    self.skip_check = False
    self.version_property = None


class DependencyDefinitionReader(object):
  """Dependency definition reader."""

  _BOOLEAN_VALUE_NAMES = frozenset([
      'is_optional',
      'skip_check'])

  _VALUE_NAMES = frozenset([
      'dpkg_name',
      'is_optional',
      'minimum_version',
      'pypi_name',
      'rpm_name',
      'skip_check',
      'version_property'])

  def Read(self, file_object):
    """Reads dependency definitions.

    Args:
      file_object (file): file-like object to read from.

    Yields:
      DependencyDefinition: dependency definition.
    """
    config_parser = configparser.ConfigParser(interpolation=None)
    config_parser.read_file(file_object)

    for section_name in config_parser.sections():
      dependency_definition = DependencyDefinition(section_name)
      for value_name in self._VALUE_NAMES:
        if not config_parser.has_option(section_name, value_name):
          continue

        if value_name in self._BOOLEAN_VALUE_NAMES:
          value = config_parser.getboolean(section_name, value_name)
        else:
          value = config_parser.get(section_name, value_name)
        setattr(dependency_definition, value_name, value)

      yield dependency_definition


class DependencyHelper(object):
  """Dependency helper.

  Attributes:
    dependencies (dict[str, DependencyDefinition]): dependencies.
  """

  _VERSION_NUMBERS_REGEX = re.compile(r'[0-9.]+')
  _VERSION_SPLIT_REGEX = re.compile(r'\.|\-')

  def __init__(
      self, dependencies_file='dependencies.ini',
      test_dependencies_file='test_dependencies.ini'):
    """Initializes a dependency helper.

    Args:
      dependencies_file (Optional[str]): path to the dependencies configuration
          file.
      test_dependencies_file (Optional[str]): path to the test dependencies
          configuration file.
    """
    super(DependencyHelper, self).__init__()
    self._test_dependencies = self._ReadDefinitions(test_dependencies_file)
    self.dependencies = self._ReadDefinitions(dependencies_file)

  def _ReadDefinitions(self, path):
    """Reads dependency definitions from a configuration file.

    Args:
      path (str): path of the configuration file.

    Returns:
      dict[str, DependencyDefinition]: dependencies per name, empty if the
          file does not exist.
    """
    dependencies = {}
    if os.path.exists(path):
      dependency_reader = DependencyDefinitionReader()
      with open(path, 'r', encoding='utf-8') as file_object:
        for dependency in dependency_reader.Read(file_object):
          dependencies[dependency.name] = dependency

    return dependencies

  def _ParseVersion(self, version):
    """Splits a version string into integers.

    Semantic suffixes such as a1, b1, pre, post, rc and dev are ignored.

    Args:
      version (str): version string.

    Returns:
      list[int]: version numbers or None if the version cannot be parsed.
    """
    version_numbers = self._VERSION_NUMBERS_REGEX.findall(version)
    if not version_numbers:
      return None

    version = version_numbers[0].rstrip('.')
    try:
      return [int(value) for value in self._VERSION_SPLIT_REGEX.split(version)]
    except ValueError:
      return None

  def _CheckPythonModule(self, dependency):
    """Checks the availability and version of a Python module.

    Args:
      dependency (DependencyDefinition): dependency definition.

    Returns:
      tuple: containing:

        bool: True if the Python module is available and conforms to
            the minimum required version, False otherwise.
        str: status message.
    """
    try:
      module_object = __import__(dependency.name)
    except ImportError:
      return False, f'missing: {dependency.name:s}'

    if not dependency.version_property:
      return True, dependency.name

    version_property = dependency.version_property
    if version_property.endswith('()'):
      version_method = getattr(module_object, version_property[:-2], None)
      module_version = version_method() if version_method else None
    else:
      module_version = getattr(module_object, version_property, None)

    if not module_version:
      return False, (
          f'unable to determine version information for: '
          f'{dependency.name:s}')

    module_version = f'{module_version!s}'
    module_version_map = self._ParseVersion(module_version)
    if module_version_map is None:
      return False, (
          f'unable to parse module version: {dependency.name:s} '
          f'{module_version:s}')

    if dependency.minimum_version:
      minimum_version_map = self._ParseVersion(dependency.minimum_version)
      if minimum_version_map is None:
        return False, (
            f'unable to parse minimum version: {dependency.name:s} '
            f'{dependency.minimum_version:s}')

      if module_version_map < minimum_version_map:
        return False, (
            f'{dependency.name:s} version: {module_version:s} is too old, '
            f'{dependency.minimum_version:s} or later required')

    return True, f'{dependency.name:s} version: {module_version:s}'

  def _CheckDependencyDefinitions(self, dependencies, verbose_output):
    """Checks dependency definitions and prints their status.

    Args:
      dependencies (dict[str, DependencyDefinition]): dependencies.
      verbose_output (bool): True if output should be verbose.

    Returns:
      bool: True if the required dependencies are available, False otherwise.
    """
    check_result = True

    for _, dependency in sorted(dependencies.items()):
      if dependency.skip_check:
        continue

      result, status_message = self._CheckPythonModule(dependency)
      if not result and not dependency.is_optional:
        check_result = False

      if not result or dependency.is_optional:
        status_indicator = '[OPTIONAL]' if dependency.is_optional else (
            '[FAILURE]')
        print(f'{status_indicator:s}\t{status_message:s}')

      elif verbose_output:
        print(f'[OK]\t\t{status_message:s}')

    if check_result and not verbose_output:
      print('[OK]')

    print('')
    return check_result

  def CheckDependencies(self, verbose_output=True):
    """Checks the availability of the dependencies.

    Args:
      verbose_output (Optional[bool]): True if output should be verbose.

    Returns:
      bool: True if the dependencies are available, False otherwise.
    """
    print('Checking availability and versions of dependencies.')
    return self._CheckDependencyDefinitions(self.dependencies, verbose_output)

  def CheckTestDependencies(self, verbose_output=True):
    """Checks the availability of the dependencies when running tests.

    Args:
      verbose_output (Optional[bool]): True if output should be verbose.

    Returns:
      bool: True if the dependencies are available, False otherwise.
    """
    if not self.CheckDependencies(verbose_output=verbose_output):
      return False

    print('Checking availability and versions of test dependencies.')
    return self._CheckDependencyDefinitions(
        self._test_dependencies, verbose_output)
