from pykantorovich.engine.functions import TestFunction
from pykantorovich.engine.kantorovich_constants import KantorovichConstants as Const
from pykantorovich.engine.operator import KantorovichOperator


class MomentReport:
  """Raw and central moments of L_n* at one (n, x).

  raw and central come from the brute-force oracle and are canonical;
  closed_form holds the adopted formulas and paper_claims the formulas as
  originally published, so the discrepancy columns expose every mismatch.
  """

  def __init__(self, n, x, b_n, raw, closed_form, paper_claims):
    self.n = n
    self.x = x
    self.b_n = b_n
    self.raw = list(raw)
    m0, m1, m2 = self.raw
    self.central = [1.0, m1 - x * m0, m2 - 2.0 * x * m1 + x * x * m0]
    self.closed_form = list(closed_form)
    self.paper_claims = dict(paper_claims)
    self.discrepancies = {
        "paper_m1": self.paper_claims["m1"] - m1,
        "paper_m2": self.paper_claims["m2"] - m2,
        "paper_mu1": self.paper_claims["mu1"] - self.central[1],
        "paper_mu2": self.paper_claims["mu2"] - self.central[2],
        "closed_m0": self.closed_form[0] - m0,
        "closed_m1": self.closed_form[1] - m1,
        "closed_m2": self.closed_form[2] - m2
    }

  def mu1(self):
    return self.central[1]

  def mu2(self):
    return self.central[2]

  def theta_n(self):
    return self.paper_claims["mu2"]

  def closed_form_agrees(self, tol=Const.Tolerance.CLOSED_FORM):
    return all(abs(c - o) <= tol * max(1.0, abs(o)) for c, o in zip(self.closed_form, self.raw))


class MomentLab:

  @classmethod
  def moment_oracle(self, cfg, j, x):
    self.__check_order(j)
    oracle_cfg = cfg.with_epsilon(Const.Tolerance.ORACLE_EPSILON)
    return KantorovichOperator.eval_L_star(oracle_cfg, TestFunction.monomial(j), x)

  @classmethod
  def moment_closed_form(self, cfg, j, x):
    self.__check_order(j)
    h, gp, gpp = self.__constants(cfg)
    if j == 0:
      return 1.0
    if j == 1:
      return x + (gp + 0.5) * h
    return x * x + h * x * (2.0 + 2.0 * gp) + h * h * (2.0 * gp + gpp + 1.0 / 3.0)

  @classmethod
  def closed_central(self, cfg, x):
    """(mu1, mu2) from the adopted closed forms."""
    h, gp, gpp = self.__constants(cfg)
    return (gp + 0.5) * h, x * h + h * h * (2.0 * gp + gpp + 1.0 / 3.0)

  @classmethod
  def paper_claims(self, cfg, x):
    """Moment values as originally published (c1 = 1, theta_n for mu2)."""
    h, gp, gpp = self.__constants(cfg)
    theta = self.theta_n(cfg)
    return {
        "m0": 1.0,
        "m1": x + gp * h + h,
        "m2": x * x + h * x * (2.0 + 2.0 * gp) + h * h * (2.0 * gp + gpp + 1.0 / 3.0),
        "mu1": gp * h + h,
        "mu2": theta
    }

  @classmethod
  def theta_n(self, cfg):
    h, gp, gpp = self.__constants(cfg)
    return h * h * (2.0 * gp + gpp + 1.0)

  @classmethod
  def xi_n(self, cfg):
    h, gp, _ = self.__constants(cfg)
    return gp * h + h + self.theta_n(cfg)

  @classmethod
  def oracle_central(self, cfg, x):
    raw = [self.moment_oracle(cfg, j, x) for j in range(3)]
    return raw[1] - x * raw[0], raw[2] - 2.0 * x * raw[1] + x * x * raw[0]

  @classmethod
  def central_moments(self, cfg, x):
    raw = [self.moment_oracle(cfg, j, x) for j in range(3)]
    closed = [self.moment_closed_form(cfg, j, x) for j in range(3)]
    return MomentReport(cfg.n, x, cfg.b_n(), raw, closed, self.paper_claims(cfg, x))

  @classmethod
  def __constants(self, cfg):
    return cfg.cell_width(), cfg.gf.ratio_p(), cfg.gf.ratio_pp()

  @classmethod
  def __check_order(self, j):
    if j not in [0, 1, 2]:
      raise ValueError("moment order must be 0, 1 or 2 (got %s)" % j)
