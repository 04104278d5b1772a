import math
from fractions import Fraction

from pykantorovich.engine.errors import ZeroG1


class GeneratingFunction:
  """Polynomial generating function g(u) = a_0 + a_1 u + ... + a_M u^M.

  g(1), g'(1) and g''(1) are exact finite sums of the coefficients and
  parametrize every moment of the operators built on top of g.
  """

  def __init__(self, coeffs):
    coeffs = tuple(float(a) for a in coeffs)
    if len(coeffs) == 0:
      raise ValueError(self.__empty_msg)
    if not all(math.isfinite(a) for a in coeffs):
      raise ValueError(self.__non_finite_msg % (list(coeffs),))
    self.coeffs = coeffs
    self.g1 = math.fsum(coeffs)
    self.g1p = math.fsum(i * a for i, a in enumerate(coeffs))
    self.g1pp = math.fsum(i * (i - 1) * a for i, a in enumerate(coeffs))
    if self.g1 == 0:
      raise ZeroG1(self.__zero_g1_msg % (list(coeffs),))

  def __eq__(self, other):
    return isinstance(other, GeneratingFunction) and self.coeffs == other.coeffs

  def __hash__(self):
    return hash(self.coeffs)

  def __str__(self):
    return "g%s" % (list(self.coeffs),)

  def degree(self):
    return len(self.coeffs) - 1

  def evaluate(self, u):
    return math.fsum(a * u**i for i, a in enumerate(self.coeffs))

  def ratio_p(self):
    return self.g1p / self.g1

  def ratio_pp(self):
    return self.g1pp / self.g1

  # serialize format : {"coeffs": [a0, a1, ...]}
  def serialize(self):
    return { "coeffs": list(self.coeffs) }

  @classmethod
  def deserialize(self, serial):
    if "coeffs" not in serial:
      raise ValueError('generating function entry needs "coeffs" (got %s)' % serial)
    return self(serial["coeffs"])

  __empty_msg = "coeffs of a generating function must be nonempty"
  __non_finite_msg = "coeffs of a generating function must be finite (got %s)"
  __zero_g1_msg = "g(1) is zero for coeffs %s, the kernel cannot be normalized"


class PositivityReport:

  def __init__(self, is_positive, offending_index, ratios):
    self.is_positive = is_positive
    self.offending_index = offending_index
    self.ratios = tuple(ratios)

  def serialize(self):
    return [self.is_positive, self.offending_index, list(self.ratios)]

  @classmethod
  def deserialize(self, serial):
    return self(serial[0], serial[1], serial[2])


class AppellPolynomials:

  @classmethod
  def appell_eval(self, gf, k, x):
    if k < 0:
      raise ValueError("Appell index must be >= 0 (got %d)" % k)
    powers = self.__scaled_powers(x, k)
    terms = [gf.coeffs[i] * powers[k - i] for i in range(min(k, gf.degree()) + 1)]
    return math.fsum(terms)

  @classmethod
  def appell_coefficients(self, gf, k, exact=False):
    """Ascending power coefficients of p_k: x^m carries a_{k-m} / m!."""
    one = Fraction(1) if exact else 1.0
    coeffs = [0 * one] * (k + 1)
    for i in range(min(k, gf.degree()) + 1):
      m = k - i
      a_i = Fraction(gf.coeffs[i]) if exact else gf.coeffs[i]
      coeffs[m] = a_i * one / math.factorial(m)
    return coeffs

  @classmethod
  def positivity_check(self, gf):
    if gf.g1 == 0:
      raise ZeroG1("g(1) is zero for coeffs %s" % (list(gf.coeffs),))
    ratios = [a / gf.g1 for a in gf.coeffs]
    offending = next((i for i, r in enumerate(ratios) if r < 0), None)
    return PositivityReport(offending is None, offending, ratios)

  @classmethod
  def identity_residual(self, gf, u, x, K):
    lhs = gf.evaluate(u) * math.exp(u * x)
    powers = self.__scaled_powers(x, K)
    terms = []
    for k in range(K + 1):
      for i in range(min(k, gf.degree()) + 1):
        terms.append(gf.coeffs[i] * powers[k - i] * u**k)
    return abs(lhs - math.fsum(terms))

  # x^m / m! for m = 0..size via the running product, no factorial overflow
  @classmethod
  def __scaled_powers(self, x, size):
    powers = [1.0]
    for m in range(1, size + 1):
      powers.append(powers[-1] * x / m)
    return powers
