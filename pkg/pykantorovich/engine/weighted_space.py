import math

import numpy as np

from pykantorovich.engine.errors import NotInCRhoK, TailUnbounded
from pykantorovich.engine.functions import TestFunction
from pykantorovich.engine.kantorovich_constants import KantorovichConstants as Const
from pykantorovich.engine.operator import KantorovichOperator
from pykantorovich.utils.regression_utils import loglog_slope

Kind = Const.FunctionKind


class WeightedNormEstimate:
  """sup |f| / (1 + x^2): grid sup on [0, X_max] joined with a tail bound.

  argmax_x is inf when the tail bound beyond X_max dominates the grid.
  """

  def __init__(self, value, argmax_x, domain_cap, tail_bound, grid_sup):
    self.value = value
    self.argmax_x = argmax_x
    self.domain_cap = domain_cap
    self.tail_bound = tail_bound
    self.grid_sup = grid_sup

  def serialize(self):
    return {
        "value": self.value,
        "argmax_x": self.argmax_x,
        "domain_cap": self.domain_cap,
        "tail_bound": self.tail_bound,
        "grid_sup": self.grid_sup
    }


class OperatorImage:
  """x -> L_n* f(x), or x -> L_n* f(x) - f(x) when residual is set."""

  def __init__(self, cfg, f, residual=False):
    self.cfg = cfg
    self.f = f
    self.residual = residual

  def evaluate(self, x):
    x = np.asarray(x, dtype=float)
    values = np.array([KantorovichOperator.eval_L_star(self.cfg, self.f, t) for t in x.ravel()])
    values = values.reshape(x.shape)
    if self.residual:
      values = values - self.f.evaluate(x)
    return float(values) if np.ndim(values) == 0 else values

  def label(self):
    image = "L*[%s]" % self.f.label()
    return "%s - %s" % (image, self.f.label()) if self.residual else image

  def tail_bound(self, X):
    """Bound on sup_{x >= X} |image(x)| / (1 + x^2), None when unknown.

    Quadratics map to quadratics with closed coefficients; bounded f maps
    into functions bounded by the same constant.
    """
    coeffs = self.f.polynomial_coefficients()
    if coeffs is not None and len(coeffs) <= 3:
      return self.__polynomial_tail(X)
    bound = self.f.bound()
    if bound is None:
      return None
    factor = 2.0 if self.residual else 1.0
    return factor * bound / (1.0 + X * X)

  def image_coefficients(self):
    c0, c1, c2 = (list(self.f.polynomial_coefficients()) + [0.0, 0.0])[:3]
    h, gp, gpp = self.cfg.cell_width(), self.cfg.gf.ratio_p(), self.cfg.gf.ratio_pp()
    mu1 = h * (gp + 0.5)
    A = 2.0 + 2.0 * gp
    B = 2.0 * gp + gpp + 1.0 / 3.0
    image = [c0 + c1 * mu1 + c2 * h * h * B, c1 + c2 * h * A, c2]
    if self.residual:
      image = [image[0] - c0, image[1] - c1, image[2] - c2]
    return image, [c0, c1, c2]

  def __polynomial_tail(self, X):
    (p0, p1, p2), source = self.image_coefficients()
    if X >= 1:
      tail = abs(p2) + abs(p1) * X / (1.0 + X * X) + abs(p0 - p2) / (1.0 + X * X)
    else:
      tail = abs(p2) + 0.5 * abs(p1) + abs(p0 - p2)
    eps = self.cfg.epsilon
    slack = eps * abs(source[0]) / (1.0 + X * X) + 2.0 * eps * (abs(source[1]) + abs(source[2]))
    return tail + slack


class WeightedSpace:

  @classmethod
  def rho(self):
    return TestFunction.rho()

  @classmethod
  def weighted_norm(self, f, X_max=Const.DEFAULT_X_MAX, grid_n=5000):
    if not X_max > 0:
      raise ValueError("X_max must be positive (got %s)" % X_max)
    grid = np.linspace(0.0, X_max, int(grid_n) + 1)
    ratios = np.abs(np.asarray(f.evaluate(grid), dtype=float)) / (1.0 + grid * grid)
    index = int(np.argmax(ratios))
    grid_sup = float(ratios[index])
    tail = f.tail_bound(X_max) if isinstance(f, OperatorImage) else self.preset_tail_bound(f, X_max)
    if tail is not None and tail > grid_sup:
      return WeightedNormEstimate(tail, math.inf, X_max, tail, grid_sup)
    return WeightedNormEstimate(grid_sup, float(grid[index]), X_max, tail, grid_sup)

  @classmethod
  def preset_tail_bound(self, f, X):
    """sup_{x >= X} |f(x)| / (1 + x^2) for the preset growth classes."""
    p = f.params
    scale = abs(f.coef)
    weight = 1.0 + X * X
    if f.kind == Kind.MONOMIAL:
      return scale * self.__monomial_tail(p["j"], X, f)
    if f.kind == Kind.EXP:
      if p["c"] > 0:
        raise TailUnbounded("%s grows faster than 1 + x^2" % f.label())
      return scale * math.exp(p["c"] * X) / weight
    if f.kind == Kind.ABS_SHIFT:
      c = abs(p["c"])
      return scale * ((X + c) / weight if X >= 1 else 0.5 + c)
    if f.kind == Kind.SIN:
      return scale / weight
    if f.kind == Kind.TABULATED:
      return scale * max(abs(y) for y in p["ys"]) / weight
    if f.kind == Kind.EXP_MONOMIAL:
      return scale * self.__exp_monomial_tail(p["j"], p["c"], X, f)
    if f.kind == Kind.CLAMP:
      return f.bound() / weight
    return scale * math.fsum(self.preset_tail_bound(term, X) for term in f.terms)

  @classmethod
  def in_c_rho_k(self, f):
    """True when f / (1 + x^2) has a finite limit at infinity."""
    p = f.params
    if f.kind == Kind.MONOMIAL:
      return p["j"] <= 2
    if f.kind == Kind.EXP:
      return p["c"] <= 0
    if f.kind == Kind.EXP_MONOMIAL:
      return p["c"] < 0 or (p["c"] == 0 and p["j"] <= 2)
    if f.kind == Kind.SUM:
      return all(self.in_c_rho_k(term) for term in f.terms)
    return f.kind in [Kind.SIN, Kind.ABS_SHIFT, Kind.TABULATED, Kind.CLAMP]

  @classmethod
  def rho_image_check(self, cfgs, X_max=Const.DEFAULT_X_MAX, grid_n=200, tol=Const.Tolerance.NORMALIZATION):
    cfgs = sorted(cfgs, key=lambda cfg: cfg.n)
    rho = self.rho()
    values = [self.weighted_norm(OperatorImage(cfg, rho), X_max, grid_n).value for cfg in cfgs]
    excess = [(v - 1.0) / cfg.cell_width() for v, cfg in zip(values, cfgs)]
    late = values[len(values) // 2:]
    bounded = all(math.isfinite(v) and v >= 1.0 - tol for v in values) and \
        all(b <= a + tol for a, b in zip(late, late[1:]))
    return {
        "bounded": bounded,
        "sup_value": max(values) if values else None,
        "values": values,
        "excess_ratios": excess
    }

  @classmethod
  def weighted_convergence(self, cfgs, f, X_max=Const.DEFAULT_X_MAX, grid_n=200, include_basis=True):
    """Weighted errors of L_n* on e_0, e_1, e_2 and on f, with log-log slopes per label."""
    if not self.in_c_rho_k(f):
      raise NotInCRhoK("%s has no finite limit of f / (1 + x^2)" % f.label())
    cfgs = sorted(cfgs, key=lambda cfg: cfg.n)
    ns = [cfg.n for cfg in cfgs]
    basis = [("e%d" % v, TestFunction.monomial(v)) for v in range(3)] if include_basis else []
    targets = basis + [(f.label(), f)]
    rows, slopes = [], {}
    for label, g in targets:
      errors = [self.weighted_norm(OperatorImage(cfg, g, residual=True), X_max, grid_n).value
                for cfg in cfgs]
      slopes[label] = loglog_slope(ns, errors)
      rows += [{ "n": n, "label": label, "weighted_error": e, "slope": slopes[label] }
               for n, e in zip(ns, errors)]
    return { "rows": rows, "slopes": slopes }

  @classmethod
  def __monomial_tail(self, j, X, f):
    weight = 1.0 + X * X
    if j == 0:
      return 1.0 / weight
    if j == 1:
      return X / weight if X >= 1 else 0.5
    if j == 2:
      return 1.0
    raise TailUnbounded("%s grows faster than 1 + x^2" % f.label())

  @classmethod
  def __exp_monomial_tail(self, j, c, X, f):
    if c == 0:
      return self.__monomial_tail(j, X, f)
    if c > 0:
      raise TailUnbounded("%s grows faster than 1 + x^2" % f.label())
    weight = 1.0 + X * X
    if X >= j / abs(c):
      return X ** j * math.exp(c * X) / weight
    return TestFunction.exp_monomial(j, c).bound() / weight
