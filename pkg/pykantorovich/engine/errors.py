class KantorovichError(ValueError):
  pass

class ZeroG1(KantorovichError):
  pass

class NotPositive(KantorovichError):
  pass

class InvalidEpsilon(KantorovichError):
  pass

class InvalidScale(KantorovichError):
  pass

class GrowthOverflow(KantorovichError):
  pass

class NonFiniteSample(KantorovichError):
  pass

class GridTooCoarse(KantorovichError):
  pass

class DerivativesUnknown(KantorovichError):
  pass

class NotInLipClass(KantorovichError):
  pass

class XNonPositive(KantorovichError):
  pass

class TailUnbounded(KantorovichError):
  pass

class NotInCRhoK(KantorovichError):
  pass

class ConfigError(KantorovichError):
  pass
