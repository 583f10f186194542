import math
import unittest
from fractions import Fraction
from ResidueForge import (SphereMoment, defaultRing, integrateSphere, monomialMoment, normalizationBindings,
                          normalizeVolumes, reduceSphereRelation, sphereVolume, volumeSymbol)


class SphereMomentTests(unittest.TestCase):

    def setUp(self):
        self.ring = defaultRing
        self.xi1, self.xi2, self.xi3, self.xi4 = self.ring.symbols("xi1", "xi2", "xi3", "xi4")
        self.omega = self.ring.symbol("Omega3")

    def test_volumes(self):
        self.assertAlmostEqual(sphereVolume(3), 4 * math.pi)
        self.assertAlmostEqual(sphereVolume(4), 2 * math.pi ** 2)
        self.assertEqual(volumeSymbol(3), "Omega3")
        bindings = normalizationBindings()
        self.assertAlmostEqual(bindings["Omega3"], 4 * math.pi)
        self.assertAlmostEqual(bindings["upsilon3"], 2 * math.pi ** 2)

    def test_normalize(self):
        pi = self.ring.symbol("pi")
        value = self.omega.scale(Fraction(1, 3)) + self.ring.symbol("upsilon3")
        self.assertEqual(normalizeVolumes(value), pi.scale(Fraction(4, 3)) + (pi * pi).scale(2))

    def test_monomial_moments(self):
        self.assertEqual(monomialMoment([0, 0, 0], 3), 1)
        self.assertEqual(monomialMoment([2, 0, 0], 3), Fraction(1, 3))
        self.assertEqual(monomialMoment([2, 2, 0], 3), Fraction(1, 15))
        self.assertEqual(monomialMoment([4, 0, 0], 3), Fraction(1, 5))
        self.assertEqual(monomialMoment([1, 1, 0], 3), 0)

    def test_integrate(self):
        self.assertEqual(integrateSphere(self.xi1 ** 2), self.omega.scale(Fraction(1, 3)))
        self.assertEqual(integrateSphere(self.xi1 ** 2 * self.xi2 ** 2), self.omega.scale(Fraction(1, 15)))
        self.assertEqual(integrateSphere(self.xi3 ** 4), self.omega.scale(Fraction(1, 5)))
        self.assertEqual(integrateSphere(self.xi1 * self.xi2), 0)
        # coefficients are carried along
        h = self.ring.symbol("h1")
        self.assertEqual(integrateSphere(h * (self.xi1 ** 2 + self.xi2 ** 2 + self.xi3 ** 2)), h * self.omega)

    def test_sphere_relation(self):
        reduced = reduceSphereRelation(self.xi3 ** 2, 3)
        self.assertEqual(reduced, 1 - self.xi1 ** 2 - self.xi2 ** 2)
        self.assertEqual(reduceSphereRelation(self.xi3 ** 3, 3), self.xi3 - self.xi1 ** 2 * self.xi3 - self.xi2 ** 2 * self.xi3)

    def test_conormal_rejected(self):
        with self.assertRaises(SphereMoment.ConormalVariableError):
            integrateSphere(self.xi4 * self.xi1)

    def test_moment_arithmetic(self):
        first = integrateSphere(self.xi1 ** 2)
        total = first + first.scale(2)
        self.assertEqual(total, self.omega)
        self.assertAlmostEqual(total.substitute({"Omega3": 4 * math.pi}).real, 4 * math.pi)


if __name__ == '__main__':
    unittest.main()
