import unittest
from fractions import Fraction
from ResidueForge import (CliffordElement, InteriorDensity, PsiSpec, anticommutatorTrace, assembleInterior,
                          commutatorTrace, covariantPsi, defaultRing, fieldVector, fTrace, traceE, vectorPairTrace)


class InteriorDensityTests(unittest.TestCase):
    """
    Tests the interior density and the trace identities it is built from.
    """

    def setUp(self):
        self.ring = defaultRing
        s = self.ring.symbol
        self.s = s("s")
        self.pi = s("pi")
        self.x = fieldVector("X")
        self.y = fieldVector("Y")

    def pairing(self, first, second):
        return sum((self.ring.symbol(first + str(k)) * self.ring.symbol(second + str(k)) for k in range(1, 5)),
                   self.ring.zero())

    def test_trace_lemmas(self):
        u = fieldVector("U")
        self.assertTrue(commutatorTrace(self.x * u, self.y).isZero())
        self.assertTrue(commutatorTrace(self.x, self.y).isZero())
        self.assertEqual(anticommutatorTrace(self.x, self.y), self.x.traceProduct(self.y).scale(2))
        components = lambda name: self.ring.symbols(*[name + str(k) for k in range(1, 5)])
        self.assertEqual(vectorPairTrace(components("X"), components("Y")), self.pairing("X", "Y").scale(-4))

    def test_trace_e(self):
        f = self.ring.symbol("f")
        self.assertEqual(traceE(PsiSpec.fromName("f")), self.s - (f * f).scale(12))
        self.assertEqual(traceE(PsiSpec.fromName("vector")), self.s)
        self.assertEqual(traceE(PsiSpec.fromName("zero")), self.s)

    def test_f_term(self):
        vector = fTrace(PsiSpec.fromName("vector"))
        self.assertEqual(vector, self.pairing("X", "nablaYU").scale(-4) + self.pairing("Y", "nablaXU").scale(4))
        self.assertTrue(fTrace(PsiSpec.fromName("f")).isZero())
        self.assertTrue(fTrace(PsiSpec.fromName("bivector")).isZero())

    def test_f_antisymmetry(self):
        swap = {}
        for k in range(1, 5):
            swap["X" + str(k)] = self.ring.symbol("Y" + str(k))
            swap["Y" + str(k)] = self.ring.symbol("X" + str(k))
            for field in "UVW":
                swap["nablaX" + field + str(k)] = self.ring.symbol("nablaY" + field + str(k))
                swap["nablaY" + field + str(k)] = self.ring.symbol("nablaX" + field + str(k))
        for name in ("vector", "trivector"):
            value = fTrace(PsiSpec.fromName(name))
            self.assertEqual(value.replace(swap), -value)

    def test_covariant_psi(self):
        self.assertEqual(covariantPsi(PsiSpec.fromName("f"), "Y"),
                         CliffordElement.fromScalar(self.ring.symbol("nablaYf"), 4))
        bivector = covariantPsi(PsiSpec.fromName("bivector"), "X")
        self.assertIn("nablaXU1", bivector.variables())
        self.assertIn("nablaXV1", bivector.variables())

    def test_density(self):
        interior = InteriorDensity(PsiSpec.fromName("f")).assembleInterior(1)
        self.assertEqual(interior.egCoefficient, (self.pi * self.pi).scale(Fraction(4, 3)))
        f = self.ring.symbol("f")
        expected = (self.pi * self.pi * self.ring.symbol("EG")).scale(Fraction(4, 3)) \
            + ((self.s - (f * f).scale(12)) * self.ring.symbol("gXY")).scale(Fraction(1, 2))
        self.assertEqual(interior.density(), expected)
        self.assertEqual(interior.theorem, 1)
        self.assertIn("psi=scalar", str(interior))

    def test_assemble(self):
        self.assertEqual(assembleInterior(2, PsiSpec.fromName("vector")).theorem, 2)
        with self.assertRaises(ValueError):
            assembleInterior(3, PsiSpec.fromName("vector"))
        with self.assertRaises(InteriorDensity.GenericPsiError):
            InteriorDensity(PsiSpec.fromName("generic"))

    def test_ledger(self):
        interior = InteriorDensity(PsiSpec.fromName("vector")).assembleInterior()
        ledger = interior.ledger()
        self.assertEqual(ledger.keys(), ["interior/F-term vector", "interior/trace E vector"])
        self.assertFalse(ledger["interior/F-term vector"].matches)
        self.assertTrue(ledger["interior/trace E vector"].matches)
        self.assertEqual(len(InteriorDensity(PsiSpec.fromName("f")).ledger()), 0)

    def test_json(self):
        data = InteriorDensity(PsiSpec.fromName("bivector")).toJson()
        self.assertEqual(sorted(data), ["density", "eg_coefficient", "f_trace", "latex", "psi", "trace_E"])
        self.assertEqual(data["psi"], "bivector")
        self.assertEqual(data["f_trace"], [])


if __name__ == '__main__':
    unittest.main()
