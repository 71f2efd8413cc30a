from beartype.typing import Optional


class JcmError(ValueError):
  """ Base class for all errors raised by collective_jcm. """


class SpaceError(JcmError):
  """ Invalid factor list, factor kind or mismatched descriptors between operands. """


class TruncationError(SpaceError):
  """ A Fock/Dicke truncation is too small for the requested state or protocol. """


class ConvergenceError(JcmError):
  """ Numerical failure: non-finite values or a problem too large for the chosen method. """

  def __init__(self, message:str, step:Optional[int] = None):
    if step is not None:
      message = f"{message} (step {step})"
    super().__init__(message)
    self.step = step


class ConfigError(JcmError):
  """ Scenario configuration failed validation, key names the offending entry. """

  def __init__(self, key:str, message:str):
    super().__init__(f"{key}: {message}")
    self.key = key


class ParameterError(JcmError):
  """ Physical parameters outside the domain of a builder (zero detuning, negative rates). """
