"""Exceptions raised by hvlab."""


class HvlabError(Exception):
  """Base class for every hvlab error."""


class InvalidSpec(HvlabError, ValueError):
  """A function recipe or config is malformed or not analytic on the disk."""


class OrderOverflow(HvlabError, ValueError):
  """A truncation order exceeds `Config.MAX_ORDER`."""


class RadiusOutOfRange(HvlabError, ValueError):
  """A radius or disk point lies outside where it can be used."""


class PoleHit(HvlabError, ZeroDivisionError):
  """A Mobius denominator vanished."""


class ConstantSymbol(HvlabError, ValueError):
  """An optimal-domain norm was requested for a constant symbol."""


class IllConditioned(HvlabError, ArithmeticError):
  """A Gram matrix condition estimate exceeded the configured threshold."""

  def __init__(self, condition, threshold):
    self.condition = condition
    self.threshold = threshold
    super().__init__(
      f'condition estimate {condition:.3e} exceeds {threshold:.1e}'
    )


class ExpectationFailed(HvlabError):
  """A registered expectation did not hold."""


class NumericalValidityError(HvlabError):
  """A result cannot be certified at the requested radius or depth."""
