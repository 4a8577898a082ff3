# -*- coding: utf-8 -*-
"""Errors."""


class Error(Exception):
  """Base error."""


class CapExceededError(Error):
  """Error that is raised when a search exhausts its configured cap.

  Attributes:
    cap (int): cap that was exhausted.
  """

  def __init__(self, message, cap=None):
    """Initializes a cap exceeded error.

    Args:
      message (str): error message.
      cap (Optional[int]): cap that was exhausted.
    """
    super(CapExceededError, self).__init__(message)
    self.cap = cap


class IndexOutOfRangeError(Error):
  """Error that is raised when a block index lies outside a plan."""


class InvalidParameterError(Error):
  """Error that is raised when a parameter value is not supported."""


class ModeUnsupportedError(Error):
  """Error that is raised when an evaluation mode cannot be used."""


class ParseError(Error):
  """Error that is raised when data cannot be parsed."""


class PreconditionError(Error):
  """Error that is raised when an operation precondition is violated."""


class ShapeMismatchError(Error):
  """Error that is raised when an input does not have the expected shape."""


class SupportOutOfRangeError(Error):
  """Error that is raised when a sequence is supported outside a plan."""


class TooLargeError(Error):
  """Error that is raised when an exhaustive enumeration is too large."""


class UncertifiedGammaError(Error):
  """Error that is raised when a block partition fails its ratio bound."""
