import math

import numpy as np

from pykantorovich.engine.errors import NotInLipClass, XNonPositive
from pykantorovich.engine.kantorovich_constants import KantorovichConstants as Const
from pykantorovich.engine.moment_lab import MomentLab
from pykantorovich.engine.operator import KantorovichOperator
from pykantorovich.engine.smoothness import ModulusEstimator

Theorem = Const.Theorem


class BoundCertificate:
  """One checked error bound |L_n* f(x) - f(x)| <= rhs.

  rhs_paper instantiates the bound with the constants as published, rhs_oracle
  with the measured central moments. For T4 both rhs columns hold the
  bracket omega_2 + min(1, delta)||f|| and ratio holds lhs / bracket.
  """

  def __init__(self, theorem, n, x, label, lhs, rhs_paper, rhs_oracle, ratio=None):
    self.theorem = theorem
    self.n = n
    self.x = x
    self.label = label
    self.lhs = lhs
    self.rhs_paper = rhs_paper
    self.rhs_oracle = rhs_oracle
    tol = Const.Tolerance.CERTIFICATE
    if ratio is None:
      self.pass_paper = lhs <= rhs_paper + tol
      self.pass_oracle = lhs <= rhs_oracle + tol
    else:
      self.pass_paper = math.isfinite(ratio["paper"])
      self.pass_oracle = math.isfinite(ratio["oracle"])
    self.ratio = ratio

  def serialize(self):
    serial = {
        "theorem": self.theorem,
        "n": self.n,
        "x": self.x,
        "label": self.label,
        "lhs": self.lhs,
        "rhs_paper": self.rhs_paper,
        "rhs_oracle": self.rhs_oracle,
        "pass_paper": self.pass_paper,
        "pass_oracle": self.pass_oracle
    }
    if self.ratio is not None:
      serial["ratio_paper"] = self.ratio["paper"]
      serial["ratio_oracle"] = self.ratio["oracle"]
    return serial


class CertificateBuilder:

  @classmethod
  def general_modulus_bound(self, f, mu2, delta, A):
    """(1 + sqrt(mu2) / delta) * omega(f, delta), modulus on a delta/100 grid."""
    omega = ModulusEstimator.refined_modulus(f, delta, A).value
    return (1.0 + math.sqrt(max(mu2, 0.0)) / delta) * omega

  @classmethod
  def certificate_T2(self, cfg, f, x, A):
    lhs = self.__lhs(cfg, f, x)
    _, mu2 = MomentLab.oracle_central(cfg, x)
    domain = max(A, KantorovichOperator.support_edge(cfg, x))
    delta_oracle = math.sqrt(self.__positive(mu2, cfg))
    delta_paper = math.sqrt(self.__positive(MomentLab.theta_n(cfg), cfg))
    rhs_oracle = self.general_modulus_bound(f, delta_oracle ** 2, delta_oracle, domain)
    rhs_paper = 2.0 * ModulusEstimator.refined_modulus(f, delta_paper, domain).value
    return BoundCertificate(Theorem.T2, cfg.n, x, f.label(), lhs, rhs_paper, rhs_oracle)

  @classmethod
  def certificate_T3(self, cfg, f, x):
    norm, norm1, norm2 = f.sup_norms()
    lhs = self.__lhs(cfg, f, x)
    mu1, mu2 = MomentLab.oracle_central(cfg, x)
    rhs_oracle = norm1 * abs(mu1) + 0.5 * norm2 * mu2
    rhs_paper = MomentLab.xi_n(cfg) * (norm + norm1 + norm2)
    return BoundCertificate(Theorem.T3, cfg.n, x, f.label(), lhs, rhs_paper, rhs_oracle)

  @classmethod
  def certificate_T4(self, cfg, f, x):
    norm = f.bound()
    if norm is None:
      raise ValueError("%s is unbounded, T4 needs a bounded function" % f.label())
    lhs = self.__lhs(cfg, f, x)
    mu1, mu2 = MomentLab.oracle_central(cfg, x)
    edge = KantorovichOperator.support_edge(cfg, x)
    delta_paper = MomentLab.xi_n(cfg) / 2.0
    delta_oracle = (abs(mu1) + 0.5 * mu2) / 2.0
    bracket_paper = self.__t4_bracket(f, norm, delta_paper, edge)
    bracket_oracle = self.__t4_bracket(f, norm, delta_oracle, edge)
    ratio = {
        "paper": self.__ratio(lhs, bracket_paper),
        "oracle": self.__ratio(lhs, bracket_oracle)
    }
    return BoundCertificate(Theorem.T4, cfg.n, x, f.label(), lhs, bracket_paper, bracket_oracle, ratio)

  @classmethod
  def certificate_T5(self, cfg, f, alpha, alpha1, alpha2, M_lip, x, domain=(0.0, 20.0), samples=400):
    if not x > 0:
      raise XNonPositive("T5 holds for x > 0 only (got x=%s)" % x)
    estimate = ModulusEstimator.lip_M_estimate(f, alpha, alpha1, alpha2, domain, samples)
    if estimate > M_lip * (1.0 + 1e-12):
      raise NotInLipClass(self.__lip_msg % (f.label(), estimate, M_lip))
    lhs = self.__lhs(cfg, f, x)
    _, mu2 = MomentLab.oracle_central(cfg, x)
    denominator = alpha1 * x * x + alpha2 * x
    rhs_oracle = self.__lip_rhs(M_lip, mu2, denominator, alpha)
    rhs_paper = self.__lip_rhs(M_lip, MomentLab.theta_n(cfg), denominator, alpha)
    return BoundCertificate(Theorem.T5, cfg.n, x, f.label(), lhs, rhs_paper, rhs_oracle)

  @classmethod
  def t4_ratio_summary(self, certs, key="paper"):
    """Boundedness verdict for T4 ratios over an n sweep.

    bounded when every ratio is finite and sup <= 10 * median, or all are 0.
    """
    ratios = [c.ratio[key] for c in certs if c.theorem == Theorem.T4]
    if len(ratios) == 0:
      return { "sup": None, "median": None, "bounded": True, "count": 0 }
    sup, median = max(ratios), float(np.median(ratios))
    finite = all(math.isfinite(r) for r in ratios)
    bounded = finite and (sup == 0 or sup <= 10.0 * median)
    return { "sup": sup, "median": median, "bounded": bounded, "count": len(ratios) }

  @classmethod
  def __lhs(self, cfg, f, x):
    return abs(KantorovichOperator.eval_L_star(cfg, f, x) - f.evaluate(x))

  @classmethod
  def __t4_bracket(self, f, norm, delta, edge):
    root = math.sqrt(delta)
    omega2 = ModulusEstimator.refined_second_modulus(f, root, edge + 2.0 * root).value
    return omega2 + min(1.0, delta) * norm

  @classmethod
  def __ratio(self, lhs, bracket):
    if bracket > 0:
      return lhs / bracket
    return 0.0 if lhs <= Const.Tolerance.CERTIFICATE else math.inf

  # alpha = 1 takes the square-root branch
  @classmethod
  def __lip_rhs(self, M_lip, mu2, denominator, alpha):
    if alpha == 1:
      return M_lip * math.sqrt(mu2 / denominator)
    return M_lip * (mu2 / denominator) ** (alpha / 2.0)

  @classmethod
  def __positive(self, value, cfg):
    if value > 0:
      return value
    return cfg.cell_width() ** 2

  __lip_msg = "%s is not in the Lip class: estimated M = %s exceeds M_lip = %s"
