import math

import numpy as np
from scipy.special import gammaln, xlogy

from pykantorovich.engine.errors import InvalidEpsilon, NotPositive
from pykantorovich.engine.generating_function import AppellPolynomials
from pykantorovich.engine.kantorovich_constants import KantorovichConstants as Const


class WeightTable:
  """Truncated kernel w_k(y) = e^{-y} p_k(y) / g(1), k = 0..K."""

  def __init__(self, y, weights, tail_mass, epsilon):
    self.y = y
    self.weights = np.asarray(weights, dtype=float)
    self.weights.setflags(write=False)
    self.tail_mass = tail_mass
    self.epsilon = epsilon

  def size(self):
    return len(self.weights)

  def last_index(self):
    return len(self.weights) - 1

  def total_mass(self):
    return math.fsum(self.weights) + self.tail_mass

  # serialize format : [y, weights, tail_mass, epsilon]
  def serialize(self):
    return [self.y, self.weights.tolist(), self.tail_mass, self.epsilon]

  @classmethod
  def deserialize(self, serial):
    return self(serial[0], serial[1], serial[2], serial[3])


class WeightBuilder:

  @classmethod
  def weight_table(self, gf, y, epsilon):
    self.__validate_epsilon(epsilon)
    if not (y >= 0 and math.isfinite(y)):
      raise ValueError("scaled argument y must be finite and >= 0 (got %s)" % y)
    report = AppellPolynomials.positivity_check(gf)
    if not report.is_positive:
      raise NotPositive(self.__not_positive_msg % (
        report.offending_index, report.ratios[report.offending_index]))

    cap = self.truncation_cap(y, gf.degree())
    pmf = self.poisson_pmf(y, cap)
    mixture = np.convolve(np.asarray(report.ratios), pmf)[:cap + 1]
    # mass beyond the cap is below 1e-30, renormalizing only absorbs rounding drift
    mixture = mixture / mixture.sum()

    tails_after = np.append(np.cumsum(mixture[::-1])[::-1][1:], 0.0)
    last = int(np.argmax(tails_after <= epsilon))
    return WeightTable(y, mixture[:last + 1], float(tails_after[last]), epsilon)

  @classmethod
  def truncation_cap(self, y, degree):
    return int(math.ceil(y + 12.0 * math.sqrt(y) + 50 + degree))

  @classmethod
  def poisson_pmf(self, y, size):
    """Poisson(k; y) for k = 0..size.

    Below the log-space threshold the pmf is the running product
    Pois(k) = Pois(k-1) * y / k seeded at e^{-y}; above it e^{-y}
    underflows and the same recurrence is summed in log space.
    """
    k = np.arange(size + 1, dtype=float)
    if y > Const.LOG_SPACE_THRESHOLD:
      return np.exp(xlogy(k, y) - y - gammaln(k + 1.0))
    steps = np.empty(size + 1)
    steps[0] = math.exp(-y)
    steps[1:] = y / k[1:]
    return np.cumprod(steps)

  @classmethod
  def __validate_epsilon(self, epsilon):
    if not (0 < epsilon < 1):
      raise InvalidEpsilon("epsilon must be in (0, 1) (got %s)" % epsilon)

  __not_positive_msg = "kernel is not a probability mixture: a_%d / g(1) = %s < 0"
