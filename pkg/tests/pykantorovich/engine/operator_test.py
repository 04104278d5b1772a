import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from tests.base_unittest import BaseUnitTest
from pykantorovich.engine.errors import GrowthOverflow, InvalidEpsilon, InvalidScale, NonFiniteSample
from pykantorovich.engine.functions import TestFunction
from pykantorovich.engine.generating_function import GeneratingFunction
from pykantorovich.engine.operator import KantorovichOperator, OperatorConfig
from pykantorovich.engine.scale_sequence import ScaleSequence

def gen_cfg(coeffs=None, n=100, scale=None, epsilon=1e-14, **kwargs):
  gf = GeneratingFunction(coeffs if coeffs else [1])
  return OperatorConfig(gf, n, scale if scale else ScaleSequence.power(0.5), epsilon, **kwargs)

class OperatorConfigTest(BaseUnitTest):

  def test_cell_width(self):
    cfg = gen_cfg(n=100)
    self.eq(10.0, cfg.b_n())
    self.near(0.1, cfg.cell_width(), 1e-15)

  def test_invalid_fields(self):
    with self.assertRaises(ValueError):
      gen_cfg(n=0)
    with self.assertRaises(InvalidEpsilon):
      gen_cfg(epsilon=0.0)
    with self.assertRaises(ValueError):
      gen_cfg(quad_order=1)

  def test_with_copies(self):
    cfg = gen_cfg(n=100)
    self.eq(1000, cfg.with_n(1000).n)
    self.eq(1e-9, cfg.with_epsilon(1e-9).epsilon)
    self.eq(100, cfg.n)

  def test_serialization(self):
    cfg = gen_cfg([1, 2, 1], n=50, scale=ScaleSequence.log())
    restored = OperatorConfig.deserialize(cfg.serialize())
    self.eq(cfg.serialize(), restored.serialize())


class KantorovichOperatorTest(BaseUnitTest):

  def test_normalization(self):
    one = TestFunction.constant(1.0)
    for coeffs in [[1], [1, 1], [1, 2, 1]]:
      for n in [10, 100, 1000]:
        for x in [0.0, 0.5, 1.0, 5.0]:
          value = KantorovichOperator.eval_L_star(gen_cfg(coeffs, n), one, x)
          self.near(1.0, value, 1e-12)

  def test_identity_at_origin(self):
    # only k = 0 carries weight at x = 0 for g = 1, so L*(x; 0) = h / 2
    value = KantorovichOperator.eval_L_star(gen_cfg([1], 100), TestFunction.monomial(1), 0.0)
    self.near(0.05, value, 1e-14)

  def test_first_moment(self):
    cfg = gen_cfg([1, 1], 1000)
    value = KantorovichOperator.eval_L_star(cfg, TestFunction.monomial(1), 1.0)
    self.near(1.0 + cfg.b_n() / 1000.0, value, 1e-12)

  def test_second_moment(self):
    value = KantorovichOperator.eval_L_star(gen_cfg([1], 100), TestFunction.monomial(2), 1.0)
    self.near(1.2033333333333334, value, 1e-12)

  def test_linearity(self):
    cfg = gen_cfg([1, 2, 1], 200)
    f, g = TestFunction.sin(1.0), TestFunction.exp(-1.0)
    combined = KantorovichOperator.eval_L_star(cfg, f + 3.0 * g, 0.7)
    separate = KantorovichOperator.eval_L_star(cfg, f, 0.7) + 3.0 * KantorovichOperator.eval_L_star(cfg, g, 0.7)
    self.near(separate, combined, 1e-13)

  def test_positivity(self):
    cfg = gen_cfg([1, 1], 50)
    f = TestFunction.abs_shift(0.5)
    for x in [0.0, 0.5, 2.0]:
      self.true(KantorovichOperator.eval_L_star(cfg, f, x) >= 0)

  def test_quadrature_path_agrees(self):
    cfg = gen_cfg([1, 1], 100)
    xs = np.linspace(0.0, 5.0, 101)
    tabulated = TestFunction.tabulated(xs, np.sin(xs))
    self.near(KantorovichOperator.eval_L_star(cfg, TestFunction.sin(1.0), 0.5),
              KantorovichOperator.eval_L_star(cfg, tabulated, 0.5), 1e-3)

  def test_invalid_scale(self):
    cfg = gen_cfg(scale=ScaleSequence.power(1.0))
    with self.assertRaises(InvalidScale):
      KantorovichOperator.eval_L_star(cfg, TestFunction.constant(1.0), 0.5)
    allowed = gen_cfg(scale=ScaleSequence.power(1.0), allow_invalid_scale=True)
    self.near(1.0, KantorovichOperator.eval_L_star(allowed, TestFunction.constant(1.0), 0.5), 1e-12)

  def test_growth_overflow(self):
    with self.assertRaises(GrowthOverflow):
      KantorovichOperator.eval_L_star(gen_cfg(n=100), TestFunction.exp(400.0), 5.0)

  def test_non_finite_sample(self):
    xs = [0.0, 1.0, 2.0]
    f = TestFunction.tabulated(xs, [0.0, float("nan"), 0.0])
    with self.assertRaises(NonFiniteSample):
      KantorovichOperator.eval_L_star(gen_cfg(n=100), f, 1.0)

  def test_negative_x(self):
    with self.assertRaises(ValueError):
      KantorovichOperator.eval_L_star(gen_cfg(), TestFunction.constant(1.0), -0.1)

  def test_eval_P_normalization(self):
    for coeffs in [[1], [1, 2, 1]]:
      self.near(1.0, KantorovichOperator.eval_P(gen_cfg(coeffs, 10), TestFunction.constant(1.0), 0.3), 1e-12)

  def test_szasz_reduction(self):
    for n in [1, 10, 100]:
      cfg = gen_cfg([1], n, epsilon=1e-15)
      for x in np.linspace(0.0, 5.0, 33):
        for f in [TestFunction.exp(-1.0), TestFunction.sin(1.0)]:
          self.near(KantorovichOperator.szasz_reference(f, n, x), KantorovichOperator.eval_P(cfg, f, x), 1e-12)

  def test_support_edge(self):
    cfg = gen_cfg([1], 100)
    self.true(KantorovichOperator.support_edge(cfg, 1.0) > 1.0)

  def test_cell_integral_vectorised(self):
    lo, hi = np.array([0.0, 1.0]), np.array([1.0, 2.0])
    values = KantorovichOperator.kantorovich_cell_integral(TestFunction.monomial(1), lo, hi, 8)
    self.eq([0.5, 1.5], values.tolist())
    with self.assertRaises(ValueError):
      KantorovichOperator.kantorovich_cell_integral(TestFunction.monomial(1), 1.0, 1.0, 8)

  @settings(max_examples=40, deadline=None)
  @given(st.sampled_from([[1], [1, 1], [1, 2, 1], [2, 0, 1]]),
         st.sampled_from([10, 100, 1000]), st.floats(min_value=0.0, max_value=10.0))
  def test_normalization_property(self, coeffs, n, x):
    value = KantorovichOperator.eval_L_star(gen_cfg(coeffs, n), TestFunction.constant(1.0), x)
    self.near(1.0, value, 1e-12)
