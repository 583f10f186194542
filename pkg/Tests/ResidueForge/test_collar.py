import unittest
from fractions import Fraction
from ResidueForge import (CliffordElement, DeltaConvention, JetStore, XiPolynomial, buildJets, christoffelContractions,
                          connectionForms, defaultRing, reduceSphereRelation)


class CollarGeometryTests(unittest.TestCase):
    """
    Tests the first jets of the collar metric at the boundary point.
    """

    def setUp(self):
        self.ring = defaultRing
        self.jets = buildJets(4, DeltaConvention.PRINTED, self.ring)
        self.h1 = self.ring.symbol("h1")
        self.e4 = CliffordElement.basis(4, 4, self.ring)

    def test_christoffels(self):
        gamma = christoffelContractions(self.jets)
        self.assertTrue(gamma[1].isZero())
        self.assertTrue(gamma[2].isZero())
        self.assertTrue(gamma[3].isZero())
        self.assertEqual(gamma[4], self.h1.scale(Fraction(3, 2)))

    def test_sigma0(self):
        self.assertEqual(self.jets.sigma0D, self.e4.scale(self.h1.scale(Fraction(-3, 4))))

    def test_connection_forms(self):
        forms = connectionForms(self.jets)
        self.assertTrue(forms)
        for (i, s, t), value in forms.items():
            self.assertEqual(forms[(i, t, s)], -value)

    def test_unsupported_dimension(self):
        with self.assertRaises(JetStore.UnsupportedDimensionError):
            JetStore(3)
        with self.assertRaises(JetStore.UnsupportedDimensionError):
            buildJets(6)

    def test_cache(self):
        self.assertIs(buildJets(4, DeltaConvention.PRINTED, self.ring), self.jets)
        self.assertIsNot(buildJets(4, DeltaConvention.SPIN, self.ring), self.jets)

    def test_normal_derivatives(self):
        tangential = XiPolynomial.cliffordXi(4, self.ring, tangentialOnly=True)
        self.assertEqual(self.jets.dXnCliffordXi(), tangential.scale(self.h1.scale(Fraction(1, 2))))
        normSquared = XiPolynomial.normSquared(4, self.ring, tangentialOnly=True)
        self.assertEqual(self.jets.dXjNormSquared(4), normSquared.scale(self.h1))
        self.assertTrue(self.jets.dXjNormSquared(1).isZero())

    def test_trace_identities(self):
        tangential = XiPolynomial.cliffordXi(4, self.ring, tangentialOnly=True).element
        derivative = self.jets.dXnCliffordXi().element
        self.assertTrue((tangential * tangential * self.e4 * derivative).spinorTrace().isZero())
        value = (self.e4 * tangential * self.e4 * derivative).spinorTrace()
        self.assertEqual(reduceSphereRelation(value, 3, self.ring), self.h1.scale(-2))

    def test_delta_conventions(self):
        spin = buildJets(4, DeltaConvention.SPIN, self.ring)
        difference = self.jets.deltaContraction() - spin.deltaContraction()
        self.assertEqual(difference, CliffordElement.fromScalar(
            (self.ring.symbol("xi4") * self.h1).scale(Fraction(-1, 2)), 4, self.ring))
        self.assertEqual(spin.deltaContraction(), spin.spinContraction())


if __name__ == '__main__':
    unittest.main()
