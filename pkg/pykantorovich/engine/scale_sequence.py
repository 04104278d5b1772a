import math

from pykantorovich.engine.kantorovich_constants import KantorovichConstants as Const


class ScaleSequence:
  """The cell-width family b_n, kept as a rule in n rather than a stored array."""

  def __init__(self, kind, theta=None, c=None, description=None):
    if kind not in self.__kinds:
      raise ValueError('scale kind must be one of %s (got "%s")' % (self.__kinds, kind))
    if kind == Const.ScaleKind.POWER and theta is None:
      raise ValueError("power scale needs theta")
    if kind == Const.ScaleKind.CONSTANT and c is None:
      raise ValueError("constant scale needs c")
    if kind == Const.ScaleKind.CONSTANT and not (math.isfinite(c) and c > 0):
      raise ValueError("constant scale needs a finite c > 0 (got %s)" % c)
    self.kind = kind
    self.theta = None if theta is None else float(theta)
    self.c = None if c is None else float(c)
    self.description = description if description else self.__describe()

  @classmethod
  def power(self, theta):
    return self(Const.ScaleKind.POWER, theta=theta)

  @classmethod
  def log(self):
    return self(Const.ScaleKind.LOG)

  @classmethod
  def constant(self, c):
    return self(Const.ScaleKind.CONSTANT, c=c)

  def value(self, n):
    if self.kind == Const.ScaleKind.POWER:
      return float(n) ** self.theta
    if self.kind == Const.ScaleKind.LOG:
      return math.log(n + 1.0)
    return self.c

  def __eq__(self, other):
    return isinstance(other, ScaleSequence) and self.serialize() == other.serialize()

  def __str__(self):
    return self.description

  # serialize format : {"kind": ..., "theta": ...} or {"kind": ..., "c": ...}
  def serialize(self):
    serial = { "kind": self.kind }
    if self.kind == Const.ScaleKind.POWER:
      serial["theta"] = self.theta
    if self.kind == Const.ScaleKind.CONSTANT:
      serial["c"] = self.c
    return serial

  @classmethod
  def deserialize(self, serial):
    if "kind" not in serial:
      raise ValueError('scale entry needs "kind" (got %s)' % serial)
    return self(serial["kind"], theta=serial.get("theta"), c=serial.get("c"))

  def __describe(self):
    if self.kind == Const.ScaleKind.POWER:
      return "n^%g" % self.theta
    if self.kind == Const.ScaleKind.LOG:
      return "ln(n+1)"
    return "constant %g" % self.c

  __kinds = [Const.ScaleKind.POWER, Const.ScaleKind.LOG, Const.ScaleKind.CONSTANT]


class ScaleChecker:

  @classmethod
  def scale_validate(self, scale):
    reasons = []
    if scale.kind == Const.ScaleKind.POWER:
      reasons += self.__power_reasons(scale.theta)
    elif scale.kind == Const.ScaleKind.CONSTANT:
      reasons.append("b_n -> %g, not -> infinity" % scale.c)
    return { "valid": len(reasons) == 0, "reasons": reasons }

  @classmethod
  def is_valid(self, scale):
    return self.scale_validate(scale)["valid"]

  @classmethod
  def __power_reasons(self, theta):
    if theta <= 0:
      return ["b_n = n^%g is not increasing to infinity" % theta]
    if theta == 1:
      return ["b_n/n -> 1 ≠ 0"]
    if theta > 1:
      return ["b_n/n -> infinity ≠ 0"]
    return []
