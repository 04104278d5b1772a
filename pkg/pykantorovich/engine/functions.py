import math

import numpy as np

from pykantorovich.engine.errors import DerivativesUnknown
from pykantorovich.engine.kantorovich_constants import KantorovichConstants as Const

Kind = Const.FunctionKind


class TestFunction:
  """Descriptor of a function on [0, inf) fed to the operators.

  Every descriptor carries a scalar coefficient, its exponential growth class
  (alpha, beta) with |f(x)| <= beta * e^{alpha x}, and flags telling whether
  an exact antiderivative and closed sup norms of f, f', f'' are available.
  """

  __test__ = False

  def __init__(self, kind, params=None, coef=1.0, terms=None, base=None):
    if kind not in self.__kinds:
      raise ValueError('function kind must be one of %s (got "%s")' % (self.__kinds, kind))
    self.kind = kind
    self.params = dict(params) if params else {}
    self.coef = float(coef)
    self.terms = tuple(terms) if terms else ()
    self.base = base
    self.__check_params()
    self.growth = self.__growth()
    self.antiderivative_known = self.__antiderivative_known()
    self.derivatives_known = self.__derivatives_known()
    self.smooth = self.__smooth()

  @classmethod
  def monomial(self, j, coef=1.0):
    return self(Kind.MONOMIAL, { "j": int(j) }, coef)

  @classmethod
  def constant(self, c):
    return self.monomial(0, coef=c)

  @classmethod
  def exp(self, c, coef=1.0):
    return self(Kind.EXP, { "c": float(c) }, coef)

  @classmethod
  def abs_shift(self, c, coef=1.0):
    return self(Kind.ABS_SHIFT, { "c": float(c) }, coef)

  @classmethod
  def sin(self, c, coef=1.0):
    return self(Kind.SIN, { "c": float(c) }, coef)

  @classmethod
  def tabulated(self, xs, ys, coef=1.0):
    return self(Kind.TABULATED, { "xs": [float(x) for x in xs], "ys": [float(y) for y in ys] }, coef)

  @classmethod
  def exp_monomial(self, j, c, coef=1.0):
    return self(Kind.EXP_MONOMIAL, { "j": int(j), "c": float(c) }, coef)

  @classmethod
  def clamp(self, base, A, coef=1.0):
    return self(Kind.CLAMP, { "A": float(A) }, coef, base=base)

  @classmethod
  def combine(self, terms, coef=1.0):
    return self(Kind.SUM, coef=coef, terms=terms)

  @classmethod
  def rho(self):
    return self.combine([self.monomial(0), self.monomial(2)])

  def scaled(self, factor):
    return TestFunction(self.kind, self.params, self.coef * factor, self.terms, self.base)

  def __add__(self, other):
    return TestFunction.combine([self, other])

  def __mul__(self, factor):
    return self.scaled(factor)

  __rmul__ = __mul__

  def __eq__(self, other):
    return isinstance(other, TestFunction) and self.serialize() == other.serialize()

  def __str__(self):
    return self.label()

  def evaluate(self, x):
    x = np.asarray(x, dtype=float)
    p = self.params
    if self.kind == Kind.MONOMIAL:
      value = x ** p["j"] if p["j"] > 0 else np.ones_like(x)
    elif self.kind == Kind.EXP:
      value = np.exp(p["c"] * x)
    elif self.kind == Kind.ABS_SHIFT:
      value = np.abs(x - p["c"])
    elif self.kind == Kind.SIN:
      value = np.sin(p["c"] * x)
    elif self.kind == Kind.TABULATED:
      value = np.interp(x, p["xs"], p["ys"])
    elif self.kind == Kind.EXP_MONOMIAL:
      value = x ** p["j"] * np.exp(p["c"] * x)
    elif self.kind == Kind.CLAMP:
      value = self.base.evaluate(np.minimum(x, p["A"]))
    else:
      value = sum(term.evaluate(x) for term in self.terms)
    value = self.coef * value
    return float(value) if np.ndim(value) == 0 else value

  def integrate(self, lo, hi):
    """Exact integral over [lo, hi] (elementwise for arrays)."""
    if not self.antiderivative_known:
      raise ValueError("%s has no closed antiderivative" % self.label())
    lo, hi = np.asarray(lo, dtype=float), np.asarray(hi, dtype=float)
    p = self.params
    if self.kind == Kind.MONOMIAL:
      value = self.__monomial_integral(p["j"], lo, hi)
    elif self.kind == Kind.EXP:
      value = self.__exp_integral(p["c"], lo, hi)
    elif self.kind == Kind.ABS_SHIFT:
      primitive = lambda t: 0.5 * (t - p["c"]) * np.abs(t - p["c"])
      value = primitive(hi) - primitive(lo)
    elif self.kind == Kind.SIN:
      c = p["c"]
      value = np.zeros_like(hi - lo) if c == 0 else \
          2.0 * np.sin(0.5 * c * (lo + hi)) * np.sin(0.5 * c * (hi - lo)) / c
    elif self.kind == Kind.EXP_MONOMIAL:
      value = self.__exp_monomial_integral(p["j"], p["c"], lo, hi)
    elif self.kind == Kind.CLAMP:
      A = p["A"]
      value = self.base.integrate(np.minimum(lo, A), np.minimum(hi, A)) + \
          self.base.evaluate(A) * (np.maximum(hi, A) - np.maximum(lo, A))
    else:
      value = sum(term.integrate(lo, hi) for term in self.terms)
    value = self.coef * value
    return float(value) if np.ndim(value) == 0 else value

  def sup_norms(self):
    """(||f||, ||f'||, ||f''||) over [0, inf), closed form or upper bound."""
    if not self.derivatives_known:
      raise DerivativesUnknown("sup norms of %s and its derivatives are not known" % self.label())
    scale = abs(self.coef)
    if self.kind == Kind.MONOMIAL:
      return (scale, 0.0, 0.0)
    if self.kind in [Kind.EXP, Kind.SIN]:
      c = abs(self.params["c"])
      if self.kind == Kind.SIN and c == 0:
        return (0.0, 0.0, 0.0)
      return (scale, scale * c, scale * c * c)
    norms = [term.sup_norms() for term in self.terms]
    return tuple(scale * math.fsum(n[i] for n in norms) for i in range(3))

  def bound(self):
    """sup |f| over [0, inf), or None when f is unbounded."""
    p = self.params
    scale = abs(self.coef)
    if self.derivatives_known:
      return self.sup_norms()[0]
    if self.kind == Kind.TABULATED:
      return scale * max(abs(y) for y in p["ys"])
    if self.kind == Kind.EXP_MONOMIAL and p["c"] < 0:
      j, c = p["j"], p["c"]
      return scale if j == 0 else scale * (j / abs(c)) ** j * math.exp(-j)
    if self.kind == Kind.CLAMP:
      grid = np.linspace(0.0, p["A"], 4097)
      return scale * float(np.max(np.abs(self.base.evaluate(grid))))
    if self.kind == Kind.SUM:
      bounds = [term.bound() for term in self.terms]
      return None if None in bounds else scale * math.fsum(bounds)
    return None

  def polynomial_coefficients(self):
    """Ascending coefficients when f is a polynomial, otherwise None."""
    if self.kind == Kind.MONOMIAL:
      coeffs = [0.0] * (self.params["j"] + 1)
      coeffs[-1] = self.coef
      return coeffs
    if self.kind != Kind.SUM:
      return None
    parts = [term.polynomial_coefficients() for term in self.terms]
    if None in parts:
      return None
    coeffs = [0.0] * max(len(part) for part in parts)
    for part in parts:
      for i, c in enumerate(part):
        coeffs[i] += self.coef * c
    return coeffs

  def label(self):
    p = self.params
    if self.kind == Kind.MONOMIAL:
      body = "1" if p["j"] == 0 else ("x" if p["j"] == 1 else "x^%d" % p["j"])
    elif self.kind == Kind.EXP:
      body = "exp(%gx)" % p["c"]
    elif self.kind == Kind.ABS_SHIFT:
      body = "|x-%g|" % p["c"]
    elif self.kind == Kind.SIN:
      body = "sin(%gx)" % p["c"]
    elif self.kind == Kind.TABULATED:
      body = "tabulated[%d]" % len(p["xs"])
    elif self.kind == Kind.EXP_MONOMIAL:
      body = "x^%d*exp(%gx)" % (p["j"], p["c"])
    elif self.kind == Kind.CLAMP:
      body = "clamp(%s,%g)" % (self.base.label(), p["A"])
    else:
      body = "(%s)" % " + ".join(term.label() for term in self.terms)
    return body if self.coef == 1 else "%g*%s" % (self.coef, body)

  # serialize format : {"kind": ..., <params>, "coef": c} with "terms" / "base" for composites
  def serialize(self):
    serial = { "kind": self.kind, "coef": self.coef }
    serial.update(self.params)
    if self.kind == Kind.SUM:
      serial["terms"] = [term.serialize() for term in self.terms]
    if self.kind == Kind.CLAMP:
      serial["base"] = self.base.serialize()
    return serial

  @classmethod
  def deserialize(self, serial):
    serial = dict(serial)
    kind = serial.pop("kind", None)
    coef = serial.pop("coef", 1.0)
    terms = [self.deserialize(t) for t in serial.pop("terms", [])]
    base = serial.pop("base", None)
    base = self.deserialize(base) if base is not None else None
    if kind == Kind.MONOMIAL:
      return self.monomial(serial["j"], coef)
    if kind in [Kind.EXP, Kind.ABS_SHIFT, Kind.SIN]:
      return self(kind, { "c": float(serial["c"]) }, coef)
    if kind == Kind.TABULATED:
      return self.tabulated(serial["xs"], serial["ys"], coef)
    if kind == Kind.EXP_MONOMIAL:
      return self.exp_monomial(serial["j"], serial["c"], coef)
    if kind == Kind.CLAMP:
      return self.clamp(base, serial["A"], coef)
    return self(kind, coef=coef, terms=terms)

  def __check_params(self):
    p = self.params
    if self.kind in [Kind.MONOMIAL, Kind.EXP_MONOMIAL] and p.get("j", -1) < 0:
      raise ValueError("monomial degree must be >= 0 (got %s)" % p.get("j"))
    if self.kind == Kind.TABULATED:
      if len(p["xs"]) < 2 or len(p["xs"]) != len(p["ys"]):
        raise ValueError("tabulated samples need >= 2 matching xs/ys entries")
      if any(b <= a for a, b in zip(p["xs"], p["xs"][1:])):
        raise ValueError("tabulated xs must be strictly increasing")
    if self.kind == Kind.CLAMP and (self.base is None or p["A"] <= 0):
      raise ValueError("clamp needs a base function and A > 0")
    if self.kind == Kind.SUM and len(self.terms) == 0:
      raise ValueError("sum needs at least one term")

  def __growth(self):
    p = self.params
    scale = abs(self.coef)
    if self.kind == Kind.MONOMIAL:
      return (0.0, scale) if p["j"] == 0 else (1.0, scale * math.factorial(p["j"]))
    if self.kind == Kind.EXP:
      return (max(p["c"], 0.0), scale)
    if self.kind == Kind.ABS_SHIFT:
      return (1.0, scale * (abs(p["c"]) + 1.0))
    if self.kind == Kind.SIN:
      return (0.0, scale)
    if self.kind == Kind.TABULATED:
      return (0.0, scale * max(abs(y) for y in p["ys"]))
    if self.kind == Kind.EXP_MONOMIAL:
      if p["j"] == 0:
        return (max(p["c"], 0.0), scale)
      return (max(p["c"] + 1.0, 0.0), scale * math.factorial(p["j"]))
    if self.kind == Kind.CLAMP:
      alpha, beta = self.base.growth
      return (0.0, scale * beta * math.exp(alpha * p["A"]))
    growths = [term.growth for term in self.terms]
    return (max(g[0] for g in growths), scale * math.fsum(g[1] for g in growths))

  def __antiderivative_known(self):
    if self.kind == Kind.TABULATED:
      return False
    if self.kind == Kind.CLAMP:
      return self.base.antiderivative_known
    if self.kind == Kind.SUM:
      return all(term.antiderivative_known for term in self.terms)
    return True

  def __derivatives_known(self):
    if self.kind == Kind.MONOMIAL:
      return self.params["j"] == 0
    if self.kind == Kind.EXP:
      return self.params["c"] <= 0
    if self.kind == Kind.SIN:
      return True
    if self.kind == Kind.SUM:
      return all(term.derivatives_known for term in self.terms)
    return False

  # twice continuously differentiable on [0, inf)
  def __smooth(self):
    if self.kind in [Kind.ABS_SHIFT, Kind.TABULATED, Kind.CLAMP]:
      return False
    if self.kind == Kind.SUM:
      return all(term.smooth for term in self.terms)
    return True

  # (hi^{j+1} - lo^{j+1}) / (j+1) factored as (hi - lo) * sum hi^i lo^{j-i}, no cancellation
  @classmethod
  def __monomial_integral(self, j, lo, hi):
    return (hi - lo) * sum(hi ** i * lo ** (j - i) for i in range(j + 1)) / (j + 1)

  @classmethod
  def __exp_integral(self, c, lo, hi):
    if c == 0:
      return hi - lo
    return np.exp(c * lo) * np.expm1(c * (hi - lo)) / c

  @classmethod
  def __exp_monomial_integral(self, j, c, lo, hi):
    if c == 0:
      return self.__monomial_integral(j, lo, hi)
    def primitive(t):
      terms = [(-1) ** i * math.factorial(j) / math.factorial(j - i) * t ** (j - i) / c ** (i + 1)
               for i in range(j + 1)]
      return np.exp(c * t) * sum(terms)
    return primitive(hi) - primitive(lo)

  __kinds = [Kind.MONOMIAL, Kind.EXP, Kind.ABS_SHIFT, Kind.SIN, Kind.TABULATED,
             Kind.EXP_MONOMIAL, Kind.CLAMP, Kind.SUM]
