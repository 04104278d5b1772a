import math

import numpy as np
from numpy.polynomial.legendre import leggauss

from pykantorovich.engine.errors import GrowthOverflow, InvalidEpsilon, InvalidScale, NonFiniteSample
from pykantorovich.engine.generating_function import GeneratingFunction
from pykantorovich.engine.kantorovich_constants import KantorovichConstants as Const
from pykantorovich.engine.scale_sequence import ScaleChecker, ScaleSequence
from pykantorovich.engine.weight_builder import WeightBuilder


class OperatorConfig:

  def __init__(self, gf, n, scale, epsilon=Const.DEFAULT_EPSILON,
      quad_order=Const.DEFAULT_QUAD_ORDER, allow_invalid_scale=False):
    if int(n) != n or n < 1:
      raise ValueError("n must be an integer >= 1 (got %s)" % n)
    if not (0 < epsilon < 1):
      raise InvalidEpsilon("epsilon must be in (0, 1) (got %s)" % epsilon)
    if int(quad_order) != quad_order or quad_order < 2:
      raise ValueError("quad_order must be an integer >= 2 (got %s)" % quad_order)
    self.gf = gf
    self.n = int(n)
    self.scale = scale
    self.epsilon = float(epsilon)
    self.quad_order = int(quad_order)
    self.allow_invalid_scale = allow_invalid_scale

  def b_n(self):
    return self.scale.value(self.n)

  def cell_width(self):
    """h = b_n / n, the width of every Kantorovich cell."""
    return self.b_n() / self.n

  def with_n(self, n):
    return OperatorConfig(self.gf, n, self.scale, self.epsilon, self.quad_order, self.allow_invalid_scale)

  def with_epsilon(self, epsilon):
    return OperatorConfig(self.gf, self.n, self.scale, epsilon, self.quad_order, self.allow_invalid_scale)

  def with_quad_order(self, quad_order):
    return OperatorConfig(self.gf, self.n, self.scale, self.epsilon, quad_order, self.allow_invalid_scale)

  def serialize(self):
    return {
        "gf": self.gf.serialize(),
        "n": self.n,
        "scale": self.scale.serialize(),
        "epsilon": self.epsilon,
        "quad_order": self.quad_order,
        "allow_invalid_scale": self.allow_invalid_scale
    }

  @classmethod
  def deserialize(self, serial):
    return self(
        GeneratingFunction.deserialize(serial["gf"]), serial["n"],
        ScaleSequence.deserialize(serial["scale"]),
        serial.get("epsilon", Const.DEFAULT_EPSILON),
        serial.get("quad_order", Const.DEFAULT_QUAD_ORDER),
        serial.get("allow_invalid_scale", False))


class KantorovichOperator:

  @classmethod
  def eval_P(self, cfg, f, x):
    self.__check_x(x)
    table = WeightBuilder.weight_table(cfg.gf, cfg.n * x, cfg.epsilon)
    nodes = np.arange(table.size()) / cfg.n
    self.__check_growth(f, nodes[-1])
    values = f.evaluate(nodes)
    self.__check_finite(values, f, 0.0, nodes[-1])
    return math.fsum(table.weights * values)

  @classmethod
  def eval_L_star(self, cfg, f, x):
    self.__check_x(x)
    self.__check_scale(cfg)
    h = cfg.cell_width()
    table = WeightBuilder.weight_table(cfg.gf, cfg.n * x / cfg.b_n(), cfg.epsilon)
    k = np.arange(table.size(), dtype=float)
    lo, hi = k * h, (k + 1.0) * h
    self.__check_growth(f, hi[-1])
    integrals = self.kantorovich_cell_integral(f, lo, hi, cfg.quad_order)
    return math.fsum(table.weights * integrals) / h

  @classmethod
  def kantorovich_cell_integral(self, f, lo, hi, quad_order):
    lo, hi = np.asarray(lo, dtype=float), np.asarray(hi, dtype=float)
    if np.any(hi <= lo):
      raise ValueError("cell integral needs lo < hi")
    if f.antiderivative_known:
      value = np.asarray(f.integrate(lo, hi))
      self.__check_finite(value, f, np.min(lo), np.max(hi))
    else:
      nodes, weights = self.gauss_legendre(quad_order)
      mid, half = 0.5 * (lo + hi), 0.5 * (hi - lo)
      samples = np.asarray(f.evaluate(mid[..., None] + half[..., None] * nodes))
      self.__check_finite(samples, f, np.min(lo), np.max(hi))
      value = half * (samples @ weights)
    return float(value) if np.ndim(value) == 0 else value

  @classmethod
  def gauss_legendre(self, quad_order):
    if quad_order not in self.__rule_cache:
      self.__rule_cache[quad_order] = leggauss(quad_order)
    return self.__rule_cache[quad_order]

  @classmethod
  def support_edge(self, cfg, x):
    """Right end of the last retained cell of L_n* at x."""
    table = WeightBuilder.weight_table(cfg.gf, cfg.n * x / cfg.b_n(), cfg.epsilon)
    return table.size() * cfg.cell_width()

  @classmethod
  def szasz_reference(self, f, n, x):
    """Classical Szasz-Mirakjan sum e^{-nx} sum (nx)^k / k! f(k/n), coded directly."""
    y = n * x
    last = int(math.ceil(y + 12.0 * math.sqrt(y) + 50))
    term, terms = math.exp(-y), []
    for k in range(last + 1):
      if k > 0:
        term *= y / k
      terms.append(term * f.evaluate(k / n))
    return math.fsum(terms)

  @classmethod
  def __check_x(self, x):
    if not (x >= 0 and math.isfinite(x)):
      raise ValueError("x must be finite and >= 0 (got %s)" % x)

  @classmethod
  def __check_scale(self, cfg):
    if cfg.allow_invalid_scale:
      return
    verdict = ScaleChecker.scale_validate(cfg.scale)
    if not verdict["valid"]:
      raise InvalidScale("scale %s is invalid: %s" % (cfg.scale, "; ".join(verdict["reasons"])))

  @classmethod
  def __check_growth(self, f, t_max):
    alpha, beta = f.growth
    if beta > 0 and math.log(beta) + alpha * t_max > self.__log_float_max:
      raise GrowthOverflow(self.__overflow_msg % (f.label(), alpha, beta, t_max))

  @classmethod
  def __check_finite(self, values, f, lo, hi):
    if not np.all(np.isfinite(values)):
      raise NonFiniteSample("%s is not finite on [%s, %s]" % (f.label(), lo, hi))

  __rule_cache = {}
  __log_float_max = math.log(np.finfo(float).max)
  __overflow_msg = "majorant of %s (alpha=%s, beta=%s) overflows at t=%s"
