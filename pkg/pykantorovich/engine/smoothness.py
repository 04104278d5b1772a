import math

import numpy as np

from pykantorovich.engine.errors import GridTooCoarse
from pykantorovich.engine.kantorovich_constants import KantorovichConstants as Const


class ModulusEstimate:

  def __init__(self, delta, value, grid_step, domain):
    self.delta = delta
    self.value = value
    self.grid_step = grid_step
    self.domain = domain

  # serialize format : [delta, value, grid_step, [lo, hi]]
  def serialize(self):
    return [self.delta, self.value, self.grid_step, list(self.domain)]

  @classmethod
  def deserialize(self, serial):
    return self(serial[0], serial[1], serial[2], tuple(serial[3]))


class ModulusEstimator:
  """Grid estimates of the first and second moduli of continuity on [0, A].

  Both are sups over grid pairs, so they under-estimate the true modulus by
  at most the grid modulus of f. Grids coarser than delta/10 are refused.
  """

  @classmethod
  def modulus(self, f, delta, A, grid_n):
    step, values, m = self.__sample(f, delta, A, grid_n)
    value = 0.0
    for s in range(1, min(m, len(values) - 1) + 1):
      value = max(value, float(np.max(np.abs(values[s:] - values[:-s]))))
    return ModulusEstimate(delta, value, step, (0.0, A))

  @classmethod
  def second_modulus(self, f, delta, A, grid_n):
    step, values, m = self.__sample(f, delta, A, grid_n)
    N = len(values)
    value = 0.0
    for s in range(1, min(m, (N - 1) // 2) + 1):
      diff = values[2 * s:] - 2.0 * values[s:N - s] + values[:N - 2 * s]
      value = max(value, float(np.max(np.abs(diff))))
    return ModulusEstimate(delta, value, step, (0.0, A))

  @classmethod
  def refined_modulus(self, f, delta, A):
    return self.modulus(f, delta, A, self.refined_grid_n(delta, A))

  @classmethod
  def refined_second_modulus(self, f, delta, A):
    return self.second_modulus(f, delta, A, self.refined_grid_n(delta, A))

  @classmethod
  def refined_grid_n(self, delta, A):
    """Smallest grid size whose step is at most delta / 100."""
    return max(1, int(math.ceil(A * Const.MODULUS_REFINEMENT / delta)))

  @classmethod
  def lip_M_estimate(self, f, alpha, alpha1, alpha2, domain, samples):
    """Lower bound for the Lip constant M of f in the two-parameter space.

    sup over pairs t != x of
      |f(t) - f(x)| * (t + alpha1 x^2 + alpha2 x)^{alpha/2} / |t - x|^alpha.
    samples is a point count (uniform on domain) or an explicit point array.
    """
    if not (0 < alpha <= 1):
      raise ValueError("alpha must be in (0, 1] (got %s)" % alpha)
    if alpha1 <= 0 or alpha2 <= 0:
      raise ValueError("alpha1 and alpha2 must be positive (got %s, %s)" % (alpha1, alpha2))
    points = self.__lip_points(domain, samples)
    values = np.asarray(f.evaluate(points), dtype=float)
    T, X = np.meshgrid(points, points, indexing="ij")
    FT, FX = np.meshgrid(values, values, indexing="ij")
    mask = T != X
    gap = np.abs(T[mask] - X[mask])
    weight = (T[mask] + alpha1 * X[mask] ** 2 + alpha2 * X[mask]) ** (alpha / 2.0)
    ratios = np.abs(FT[mask] - FX[mask]) * weight / gap ** alpha
    return float(np.max(ratios)) if ratios.size else 0.0

  @classmethod
  def __sample(self, f, delta, A, grid_n):
    if not delta > 0:
      raise ValueError("delta must be positive (got %s)" % delta)
    if not A > 0 or int(grid_n) != grid_n or grid_n < 1:
      raise ValueError("need A > 0 and an integer grid_n >= 1 (got A=%s, grid_n=%s)" % (A, grid_n))
    step = A / grid_n
    if step > delta / 10.0 * (1.0 + 1e-12):
      raise GridTooCoarse(self.__coarse_msg % (step, delta / 10.0))
    grid = np.linspace(0.0, A, int(grid_n) + 1)
    values = np.asarray(f.evaluate(grid), dtype=float)
    return step, values, int(math.floor(delta / step + 1e-9))

  @classmethod
  def __lip_points(self, domain, samples):
    if np.ndim(samples) == 0:
      lo, hi = domain
      return np.linspace(lo, hi, int(samples))
    return np.unique(np.asarray(samples, dtype=float))

  __coarse_msg = "grid step %s exceeds delta/10 = %s"
