import math

from tests.base_unittest import BaseUnitTest
from pykantorovich.engine.certificate import BoundCertificate, CertificateBuilder
from pykantorovich.engine.errors import DerivativesUnknown, NotInLipClass, XNonPositive
from pykantorovich.engine.functions import TestFunction
from pykantorovich.engine.generating_function import GeneratingFunction
from pykantorovich.engine.operator import OperatorConfig
from pykantorovich.engine.scale_sequence import ScaleSequence

def gen_cfg(coeffs, n, theta=0.5):
  return OperatorConfig(GeneratingFunction(coeffs), n, ScaleSequence.power(theta))

class BoundCertificateTest(BaseUnitTest):

  def test_pass_flags(self):
    cert = BoundCertificate("T2", 10, 0.5, "x", 0.1, 0.1 - 1e-11, 0.05)
    self.true(cert.pass_paper)
    self.false(cert.pass_oracle)

  def test_serialize(self):
    cert = BoundCertificate("T4", 10, 0.5, "sin(1x)", 0.1, 0.2, 0.3, { "paper": 0.5, "oracle": 0.25 })
    serial = cert.serialize()
    self.eq("T4", serial["theorem"])
    self.eq(0.5, serial["ratio_paper"])
    self.true(serial["pass_oracle"])


class CertificateBuilderTest(BaseUnitTest):

  def test_t2_identity(self):
    cert = CertificateBuilder.certificate_T2(gen_cfg([1], 1000), TestFunction.monomial(1), 0.5, 1.0)
    self.true(cert.pass_oracle)
    self.true(cert.lhs >= 0)

  def test_t2_constant(self):
    cert = CertificateBuilder.certificate_T2(gen_cfg([1], 100), TestFunction.constant(1.0), 0.5, 1.0)
    self.near(0.0, cert.lhs, 1e-11)
    self.true(cert.pass_paper)
    self.true(cert.pass_oracle)

  def test_t2_absolute_value(self):
    cert = CertificateBuilder.certificate_T2(gen_cfg([1], 100), TestFunction.abs_shift(0.5), 0.5, 1.0)
    self.true(cert.pass_oracle)

  def test_t2_sweep(self):
    for f in [TestFunction.exp(-1.0), TestFunction.sin(1.0), TestFunction.abs_shift(0.5)]:
      for n in [10, 100, 1000]:
        for x in [0.0, 0.25, 1.0]:
          self.true(CertificateBuilder.certificate_T2(gen_cfg([1, 1], n), f, x, 1.0).pass_oracle)

  def test_general_modulus_bound(self):
    bound = CertificateBuilder.general_modulus_bound(TestFunction.monomial(1), 0.01, 0.1, 1.0)
    self.near(2.0 * 0.1, bound, 1e-12)

  def test_t3_sine(self):
    cert = CertificateBuilder.certificate_T3(gen_cfg([1], 1000), TestFunction.sin(1.0), 1.0)
    self.true(cert.pass_oracle)

  def test_t3_sweep(self):
    for n in [100, 1000, 10000]:
      cert = CertificateBuilder.certificate_T3(gen_cfg([1], n), TestFunction.sin(2.0), 1.0)
      self.true(cert.lhs <= cert.rhs_oracle + 1e-10)

  def test_t3_constant(self):
    cert = CertificateBuilder.certificate_T3(gen_cfg([1], 100), TestFunction.constant(2.0), 0.5)
    self.near(0.0, cert.lhs, 1e-11)

  def test_t3_requires_derivatives(self):
    with self.assertRaises(DerivativesUnknown):
      CertificateBuilder.certificate_T3(gen_cfg([1], 100), TestFunction.abs_shift(0.5), 0.5)

  def test_t4_constant(self):
    cert = CertificateBuilder.certificate_T4(gen_cfg([1], 1000), TestFunction.constant(1.0), 0.5)
    self.true(cert.ratio["paper"] < 1e-8)
    self.true(cert.ratio["oracle"] < 1e-8)

  def test_t4_sine_sweep_is_bounded(self):
    certs = [CertificateBuilder.certificate_T4(gen_cfg([1], n), TestFunction.sin(1.0), 1.0)
             for n in [100, 1000, 10000]]
    summary = CertificateBuilder.t4_ratio_summary(certs)
    self.true(summary["bounded"])
    self.eq(3, summary["count"])
    self.true(math.isfinite(summary["sup"]))

  def test_t4_clamped_square(self):
    f = TestFunction.clamp(TestFunction.monomial(2), 1.0)
    certs = [CertificateBuilder.certificate_T4(gen_cfg([1], n), f, 0.5) for n in [100, 1000]]
    self.true(all(math.isfinite(c.ratio["paper"]) for c in certs))

  def test_t4_requires_bounded_function(self):
    with self.assertRaises(ValueError):
      CertificateBuilder.certificate_T4(gen_cfg([1], 100), TestFunction.monomial(1), 0.5)

  def test_t4_ratio_summary(self):
    ratios = [0.2, 0.25, 0.3]
    certs = [BoundCertificate("T4", 10, 0.5, "f", r, 1.0, 1.0, { "paper": r, "oracle": r }) for r in ratios]
    summary = CertificateBuilder.t4_ratio_summary(certs)
    self.eq(0.3, summary["sup"])
    self.eq(0.25, summary["median"])
    self.true(summary["bounded"])
    spike = certs + [BoundCertificate("T4", 10, 0.5, "f", 9.0, 1.0, 1.0, { "paper": 9.0, "oracle": 9.0 })]
    self.false(CertificateBuilder.t4_ratio_summary(spike)["bounded"])
    zeros = [BoundCertificate("T4", 10, 0.5, "f", 0.0, 1.0, 1.0, { "paper": 0.0, "oracle": 0.0 })]
    self.true(CertificateBuilder.t4_ratio_summary(zeros)["bounded"])

  def test_t5_constant(self):
    cert = CertificateBuilder.certificate_T5(gen_cfg([1], 100), TestFunction.constant(1.0), 0.5, 1.0, 1.0, 1.0, 0.5)
    self.near(0.0, cert.lhs, 1e-11)
    self.true(cert.pass_oracle)

  def test_t5_identity(self):
    cert = CertificateBuilder.certificate_T5(gen_cfg([1], 1000), TestFunction.monomial(1), 1.0, 1.0, 1.0, 50.0, 1.0)
    self.true(cert.pass_oracle)

  def test_t5_alpha_branches_are_continuous(self):
    cfg, f = gen_cfg([1], 1000), TestFunction.monomial(1)
    near_one = CertificateBuilder.certificate_T5(cfg, f, 0.999, 1.0, 1.0, 50.0, 1.0)
    one = CertificateBuilder.certificate_T5(cfg, f, 1.0, 1.0, 1.0, 50.0, 1.0)
    self.near(one.rhs_oracle, near_one.rhs_oracle, 1e-2 * one.rhs_oracle)

  def test_t5_exponential_member(self):
    cert = CertificateBuilder.certificate_T5(gen_cfg([1, 1], 1000), TestFunction.exp(-1.0), 0.5, 1.0, 1.0, 2.0, 0.5)
    self.true(cert.pass_oracle)

  def test_t5_errors(self):
    cfg = gen_cfg([1], 100)
    with self.assertRaises(XNonPositive):
      CertificateBuilder.certificate_T5(cfg, TestFunction.constant(1.0), 0.5, 1.0, 1.0, 1.0, 0.0)
    with self.assertRaises(NotInLipClass):
      CertificateBuilder.certificate_T5(cfg, TestFunction.monomial(1), 1.0, 1.0, 1.0, 0.1, 0.5)
