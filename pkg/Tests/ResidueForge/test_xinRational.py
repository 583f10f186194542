import unittest
from fractions import Fraction
from ResidueForge import BoundaryRational, CliffordElement, GaussianRational, IMAG, defaultRing


class BoundaryRationalTests(unittest.TestCase):
    """
    Tests the exact calculus of rational functions in xi_n with poles at +i and -i.
    """

    def setUp(self):
        self.ring = defaultRing
        self.one = CliffordElement.identity(4, self.ring)
        self.pi = self.ring.symbol("pi")
        self.inverseNorm = BoundaryRational.fromPowers({0: self.one}, 1)

    def test_pi_plus(self):
        expected = BoundaryRational.fromPoles([self.one.scale(GaussianRational(0, Fraction(-1, 2)))], {IMAG: 1})
        self.assertEqual(self.inverseNorm.piPlus(), expected)
        self.assertEqual(self.inverseNorm.piPlus().plusOrder, 1)
        self.assertEqual(self.inverseNorm.piPlus().minusOrder, 0)

    def test_projections(self):
        x = CliffordElement.basis(1, 4, self.ring)
        f = BoundaryRational.fromPowers({0: self.one, 1: x, 4: self.one.scale(3)}, 2)
        plus = f.piPlus()
        self.assertEqual(plus.piPlus(), plus)
        self.assertTrue(plus.piMinus().isZero())
        self.assertEqual(f.partialFractions().recombine(), f)

    def test_polynomial_part(self):
        # xi^4/(1+xi^2) = xi^2 - 1 + 1/(1+xi^2)
        f = BoundaryRational.fromPowers({4: self.one}, 1)
        parts = f.partialFractions()
        self.assertEqual(parts.polynomialPart(), BoundaryRational([-self.one, CliffordElement(4), self.one], 0, 0))
        self.assertEqual(parts.plusPart() + parts.minusPart(), self.inverseNorm)

    def test_contour_integral(self):
        f = BoundaryRational.fromPoles([self.one], {IMAG: 5, -IMAG: 2})
        expected = self.one.scale(self.pi.scale(GaussianRational(0, Fraction(-5, 32))))
        self.assertEqual(f.contourIntegralUpper(), expected)

    def test_line_integral(self):
        self.assertEqual(self.inverseNorm.lineIntegral(), self.one.scale(self.pi))
        squared = BoundaryRational.fromPowers({0: self.one}, 2)
        self.assertEqual(squared.lineIntegral(), self.one.scale(self.pi.scale(Fraction(1, 2))))
        # odd integrand
        odd = BoundaryRational.fromPowers({1: self.one}, 2)
        self.assertTrue(odd.lineIntegral().isZero())

    def test_non_integrable(self):
        with self.assertRaises(BoundaryRational.NonIntegrableError):
            BoundaryRational.fromPowers({2: self.one}, 1).lineIntegral()

    def test_real_pole(self):
        with self.assertRaises(BoundaryRational.RealAxisPoleError):
            BoundaryRational.fromPoles([self.one], {0: 1})
        with self.assertRaises(ValueError):
            BoundaryRational([self.one], -1, 0)

    def test_reduce(self):
        # (xi - i)/(1 + xi^2) = 1/(xi + i)
        f = BoundaryRational([self.one.scale(-IMAG), self.one], 1, 1).reduce()
        self.assertEqual(f.plusOrder, 0)
        self.assertEqual(f.minusOrder, 1)
        self.assertEqual(f.numeratorDegree, 0)

    def test_derivative(self):
        expected = BoundaryRational.fromPowers({1: self.one.scale(-2)}, 2)
        self.assertEqual(self.inverseNorm.derivative(), expected)
        self.assertEqual(self.inverseNorm.derivative(2), expected.derivative())
        self.assertEqual(self.inverseNorm.derivative(0), self.inverseNorm)

    def test_trace_pairing(self):
        e1 = CliffordElement.basis(1, 4, self.ring)
        f = BoundaryRational.fromPowers({0: e1}, 1)
        paired = f.tracePairing(f)
        self.assertEqual(paired, BoundaryRational.fromPowers({0: self.one.scale(-4)}, 2))


if __name__ == '__main__':
    unittest.main()
