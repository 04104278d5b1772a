import math
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from tests.base_unittest import BaseUnitTest
from pykantorovich.engine.errors import ZeroG1
from pykantorovich.engine.generating_function import AppellPolynomials, GeneratingFunction, PositivityReport

class GeneratingFunctionTest(BaseUnitTest):

  def test_derivative_sums(self):
    gf = GeneratingFunction([1, 2, 1])
    self.eq(4.0, gf.g1)
    self.eq(4.0, gf.g1p)
    self.eq(2.0, gf.g1pp)
    self.eq(1.0, gf.ratio_p())
    self.eq(0.5, gf.ratio_pp())
    self.eq(2, gf.degree())

  def test_evaluate(self):
    gf = GeneratingFunction([1, 1])
    self.eq(1.5, gf.evaluate(0.5))

  def test_zero_g1(self):
    with self.assertRaises(ZeroG1):
      GeneratingFunction([1, -1])

  def test_invalid_coeffs(self):
    with self.assertRaises(ValueError):
      GeneratingFunction([])
    with self.assertRaises(ValueError):
      GeneratingFunction([1, float("nan")])

  def test_serialization(self):
    gf = GeneratingFunction([1, 2, 1])
    self.eq(gf, GeneratingFunction.deserialize(gf.serialize()))


class AppellPolynomialsTest(BaseUnitTest):

  def test_appell_eval_trivial_generator(self):
    gf = GeneratingFunction([1])
    self.near(4.5, AppellPolynomials.appell_eval(gf, 2, 3.0), 1e-14)

  def test_appell_eval_linear_generator(self):
    # p_1(x) = x + a_1 for g = 1 + a_1 u
    gf = GeneratingFunction([1, 3])
    self.near(5.0, AppellPolynomials.appell_eval(gf, 1, 2.0), 1e-14)
    self.near(1.0, AppellPolynomials.appell_eval(gf, 0, 2.0), 1e-14)

  def test_appell_eval_negative_index(self):
    with self.assertRaises(ValueError):
      AppellPolynomials.appell_eval(GeneratingFunction([1]), -1, 1.0)

  def test_exact_coefficients(self):
    coeffs = AppellPolynomials.appell_coefficients(GeneratingFunction([1, 2, 1]), 3, exact=True)
    self.eq([Fraction(0), Fraction(1), Fraction(1), Fraction(1, 6)], coeffs)

  def test_derivative_presets(self):
    for coeffs in [[1], [1, 1], [1, 2, 1]]:
      gf = GeneratingFunction(coeffs)
      for k in range(1, 11):
        self.eq(AppellPolynomials.appell_coefficients(gf, k - 1, exact=True), self.__derivative(gf, k))

  def test_positivity_check(self):
    report = AppellPolynomials.positivity_check(GeneratingFunction([1, 2, 1]))
    self.true(report.is_positive)
    self.eq(None, report.offending_index)
    self.eq((0.25, 0.5, 0.25), report.ratios)
    bad = AppellPolynomials.positivity_check(GeneratingFunction([1, -0.5, 1]))
    self.false(bad.is_positive)
    self.eq(1, bad.offending_index)

  def test_positivity_report_serialization(self):
    report = PositivityReport(False, 1, [0.5, -0.25])
    restored = PositivityReport.deserialize(report.serialize())
    self.eq(report.is_positive, restored.is_positive)
    self.eq(report.offending_index, restored.offending_index)
    self.eq(report.ratios, restored.ratios)

  def test_identity_residual(self):
    for coeffs in [[1], [1, 1], [1, 2, 1]]:
      gf = GeneratingFunction(coeffs)
      for u in [0.1, 0.5, 0.9]:
        for x in [0.0, 1.0, 10.0]:
          self.true(AppellPolynomials.identity_residual(gf, u, x, 200) < 1e-10)

  @settings(max_examples=30, deadline=None)
  @given(st.lists(st.floats(min_value=0.1, max_value=5.0), min_size=1, max_size=4),
         st.integers(min_value=0, max_value=12), st.floats(min_value=0.0, max_value=5.0))
  def test_eval_matches_coefficients(self, coeffs, k, x):
    gf = GeneratingFunction(coeffs)
    poly = AppellPolynomials.appell_coefficients(gf, k)
    expected = math.fsum(c * x ** m for m, c in enumerate(poly))
    self.near(expected, AppellPolynomials.appell_eval(gf, k, x), 1e-9 * max(1.0, abs(expected)))

  @settings(max_examples=40, deadline=None)
  @given(st.lists(st.floats(min_value=0.1, max_value=5.0), min_size=1, max_size=5),
         st.integers(min_value=1, max_value=15))
  def test_derivative_lowers_index(self, coeffs, k):
    gf = GeneratingFunction(coeffs)
    self.eq(AppellPolynomials.appell_coefficients(gf, k - 1, exact=True), self.__derivative(gf, k))

  # term-by-term derivative of p_k in exact arithmetic
  def __derivative(self, gf, k):
    c = AppellPolynomials.appell_coefficients(gf, k, exact=True)
    return [m * c[m] for m in range(1, k + 1)]
