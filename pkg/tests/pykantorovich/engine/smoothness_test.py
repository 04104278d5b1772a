import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from tests.base_unittest import BaseUnitTest
from pykantorovich.engine.errors import GridTooCoarse
from pykantorovich.engine.functions import TestFunction
from pykantorovich.engine.smoothness import ModulusEstimate, ModulusEstimator

class ModulusEstimatorTest(BaseUnitTest):

  def test_modulus_of_identity(self):
    estimate = ModulusEstimator.modulus(TestFunction.monomial(1), 0.1, 1.0, 100)
    self.near(0.1, estimate.value, 1e-12)
    self.near(0.01, estimate.grid_step, 1e-15)
    self.eq((0.0, 1.0), estimate.domain)

  def test_modulus_of_square(self):
    estimate = ModulusEstimator.modulus(TestFunction.monomial(2), 0.1, 1.0, 100)
    self.near(0.19, estimate.value, 1e-3)

  def test_modulus_of_constant(self):
    self.eq(0.0, ModulusEstimator.modulus(TestFunction.constant(2.0), 0.3, 1.0, 100).value)

  def test_grid_too_coarse(self):
    with self.assertRaises(GridTooCoarse):
      ModulusEstimator.modulus(TestFunction.monomial(1), 0.1, 1.0, 50)
    with self.assertRaises(GridTooCoarse):
      ModulusEstimator.second_modulus(TestFunction.monomial(1), 0.1, 1.0, 50)

  def test_invalid_delta(self):
    with self.assertRaises(ValueError):
      ModulusEstimator.modulus(TestFunction.monomial(1), 0.0, 1.0, 100)

  def test_second_modulus(self):
    self.near(0.0, ModulusEstimator.second_modulus(TestFunction.monomial(1), 0.1, 1.0, 100).value, 1e-14)
    self.near(0.02, ModulusEstimator.second_modulus(TestFunction.monomial(2), 0.1, 1.0, 100).value, 1e-4)
    self.eq(0.0, ModulusEstimator.second_modulus(TestFunction.constant(1.0), 0.1, 1.0, 100).value)

  def test_refined_modulus(self):
    self.eq(1000, ModulusEstimator.refined_grid_n(0.1, 1.0))
    estimate = ModulusEstimator.refined_modulus(TestFunction.sin(1.0), 0.1, 1.0)
    self.true(estimate.grid_step <= 0.001 * (1.0 + 1e-12))
    self.near(np.sin(0.1), estimate.value, 1e-6)

  def test_monotone_in_delta(self):
    f = TestFunction.abs_shift(0.5) + TestFunction.sin(3.0)
    ladder = [0.01, 0.02, 0.05, 0.1, 0.2]
    first = [ModulusEstimator.modulus(f, d, 1.0, 1000).value for d in ladder]
    second = [ModulusEstimator.second_modulus(f, d, 1.0, 1000).value for d in ladder]
    self.eq(first, sorted(first))
    self.eq(second, sorted(second))

  def test_estimate_serialization(self):
    estimate = ModulusEstimate(0.1, 0.19, 0.01, (0.0, 1.0))
    restored = ModulusEstimate.deserialize(estimate.serialize())
    self.eq(estimate.serialize(), restored.serialize())


class LipEstimateTest(BaseUnitTest):

  def test_constant(self):
    self.eq(0.0, ModulusEstimator.lip_M_estimate(TestFunction.constant(3.0), 1.0, 1.0, 1.0, (0.0, 2.0), 100))

  def test_identity_is_finite(self):
    estimate = ModulusEstimator.lip_M_estimate(TestFunction.monomial(1), 1.0, 1.0, 1.0, (0.0, 2.0), 200)
    self.true(0.0 < estimate < 10.0)

  def test_invalid_parameters(self):
    with self.assertRaises(ValueError):
      ModulusEstimator.lip_M_estimate(TestFunction.monomial(1), 1.5, 1.0, 1.0, (0.0, 2.0), 10)
    with self.assertRaises(ValueError):
      ModulusEstimator.lip_M_estimate(TestFunction.monomial(1), 0.5, 0.0, 1.0, (0.0, 2.0), 10)

  def test_monotone_in_samples(self):
    f = TestFunction.sin(2.0)
    coarse = np.linspace(0.0, 2.0, 21)
    fine = np.union1d(coarse, np.linspace(0.0, 2.0, 37))
    self.true(ModulusEstimator.lip_M_estimate(f, 0.5, 1.0, 1.0, None, fine) >=
              ModulusEstimator.lip_M_estimate(f, 0.5, 1.0, 1.0, None, coarse))

  @settings(max_examples=25, deadline=None)
  @given(st.floats(min_value=0.1, max_value=1.0), st.floats(min_value=0.1, max_value=3.0))
  def test_homogeneity(self, alpha, c):
    f = TestFunction.sin(c)
    single = ModulusEstimator.lip_M_estimate(f, alpha, 1.0, 1.0, (0.0, 2.0), 60)
    double = ModulusEstimator.lip_M_estimate(2.0 * f, alpha, 1.0, 1.0, (0.0, 2.0), 60)
    self.near(2.0 * single, double, 1e-12 * max(1.0, double))
