import unittest
from fractions import Fraction
from ResidueForge import (BoundaryEngine, CaseEvaluator, CaseSpec, DeltaConvention, DensityExpression, ErroredCase,
                          GaussianRational, PsiSpec, Result, SerialCaseEvaluator, defaultRing, enumerateCases,
                          theoremOperators, OperatorTag)


class FailingEvaluator(CaseEvaluator):

    @property
    def parallelism(self):
        return 1

    def evaluate(self, caselist, tag=""):
        return [ErroredCase(job, "forced failure") for job in caselist]


class BoundaryEngineTests(unittest.TestCase):
    """
    Tests the case enumeration and the exact case densities of the boundary term.
    """

    def setUp(self):
        self.ring = defaultRing
        self.engine = BoundaryEngine(PsiSpec(PsiSpec.Kind.generic), DeltaConvention.PRINTED)
        s = self.ring.symbol
        self.h1, self.pi, self.omega, self.gT = s("h1"), s("pi"), s("Omega3"), s("gXYT")
        self.xnyn = s("X4") * s("Y4")

    def test_enumeration(self):
        cases = enumerateCases(4, 0, -2)
        self.assertEqual([c.label for c in cases], ["(a)(I)", "(a)(II)", "(a)(III)", "(b)", "(c)"])
        self.assertEqual([c.key for c in cases], [(0, -2, 0, 0, 1), (0, -2, 1, 0, 0), (0, -2, 0, 1, 0),
                                                  (0, -3, 0, 0, 0), (-1, -2, 0, 0, 0)])
        for case in cases:
            self.assertTrue(case.satisfiesDegreeConstraint(4))
        self.assertEqual([c.label for c in enumerateCases(4, 1, -3)], ["(1)", "(2)", "(3)", "(4)", "(5)"])
        self.assertEqual(enumerateCases(4, -5, -3), [])
        self.assertEqual(len(enumerateCases(4, 1, -2)), 15)

    def test_theorem_cases(self):
        self.assertEqual(theoremOperators[1], (OperatorTag.NablaNablaDInverseSquared, OperatorTag.DInverseSquared))
        self.assertEqual([c.label for c in self.engine.cases(1)], ["(a)(I)", "(a)(II)", "(a)(III)", "(b)", "(c)"])
        self.assertEqual([c.label for c in self.engine.cases(2)], ["(1)", "(2)", "(3)", "(4)", "(5)"])
        with self.assertRaises(ValueError):
            self.engine.operators(3)

    def test_prefactor(self):
        self.assertEqual(CaseSpec(0, -3, 0, 0, 0).prefactor(), GaussianRational(0, -1))
        self.assertEqual(CaseSpec(0, -2, 1, 0, 0).prefactor(), GaussianRational(Fraction(-1, 2)))
        self.assertEqual(CaseSpec(0, -2, 0, 0, 1).prefactor((1, 0, 0)), GaussianRational(-1))
        self.assertEqual(CaseSpec(0, -2, 0, 0, 2).prefactor((2, 0, 0)), GaussianRational(0, Fraction(1, 2)))
        with self.assertRaises(ValueError):
            CaseSpec(0, -2, -1, 0, 0)

    def test_multi_indices(self):
        self.assertEqual(CaseSpec(0, -2, 0, 0, 1).multiIndices(), [(0, 0, 1), (0, 1, 0), (1, 0, 0)])
        self.assertEqual(len(CaseSpec(0, -2, 0, 0, 2).multiIndices()), 6)
        self.assertEqual(CaseSpec(0, -3, 0, 0, 0).multiIndices(), [(0, 0, 0)])

    def test_case_json(self):
        case = enumerateCases(4, 0, -2)[1]
        data = case.toJson()
        self.assertEqual(data, {"label": "(a)(II)", "r": 0, "l": -2, "j": 1, "k": 0, "alpha": 0})
        self.assertEqual(CaseSpec.fromJson(data), case)

    def test_tangential_case_vanishes(self):
        case = enumerateCases(4, 0, -2)[0]
        self.assertTrue(self.engine.evaluateTheoremCase(1, case).isZero())

    def test_normal_derivative_cases(self):
        cases = enumerateCases(4, 0, -2)
        second = self.engine.evaluateTheoremCase(1, cases[1])
        third = self.engine.evaluateTheoremCase(1, cases[2])
        base = self.h1 * self.pi * self.omega
        self.assertEqual(second, base * (self.gT.scale(Fraction(5, 48)) - self.xnyn.scale(Fraction(1, 16))))
        self.assertEqual(third, base * (self.gT.scale(Fraction(-5, 48)) + self.xnyn.scale(Fraction(5, 16))))

    def test_generic_instantiation(self):
        case = enumerateCases(4, 0, -2)[3]
        vector = PsiSpec(PsiSpec.Kind.vector)
        generic = self.engine.evaluateTheoremCase(1, case)
        concrete = BoundaryEngine(vector, DeltaConvention.PRINTED).evaluateTheoremCase(1, case)
        self.assertEqual(generic.instantiate(vector), concrete)

    def test_case_failure(self):
        evaluator = FailingEvaluator()
        evaluator.reset()
        with self.assertRaises(BoundaryEngine.CaseEvaluationError):
            self.engine.boundaryDensity(1, evaluator)

    def test_boundary_density(self):
        engine = BoundaryEngine(PsiSpec(PsiSpec.Kind.zero), DeltaConvention.PRINTED)
        evaluator = SerialCaseEvaluator()
        evaluator.reset()
        result = Result()
        boundary = engine.boundaryDensity(1, evaluator, result)
        total, ledger = boundary
        summed = DensityExpression.zero()
        for case, density in boundary.cases:
            summed = summed + density
        self.assertEqual(total, summed)
        self.assertEqual(len(result.cases), 5)
        self.assertEqual(boundary.caseDensity("(a)(II)"), result.cases[1]["density"])
        self.assertIn("thm1/total", ledger.keys())
        self.assertIn("thm1/(b)", ledger.keys())
        self.assertNotIn("thm1/corollary vector Tn-term", ledger.keys())
        with self.assertRaises(KeyError):
            boundary.caseDensity("(z)")

    def test_assemble_functional(self):
        engine = BoundaryEngine(PsiSpec(PsiSpec.Kind.zero), DeltaConvention.PRINTED)
        interior, boundary = engine.assembleFunctional(1, SerialCaseEvaluator())
        self.assertEqual(interior.theorem, 1)
        self.assertEqual(interior.traceETerm, defaultRing.symbol("s"))
        self.assertEqual(boundary.theorem, 1)
        self.assertEqual(boundary.total, engine.boundaryDensity(1, SerialCaseEvaluator()).total)

    def test_lemma_ledger(self):
        ledger = self.engine.lemmaLedger()
        self.assertEqual(ledger.keys(), ["symbol/sigma_-3(D_Psi^-2)", "symbol/sigma_2(D_Psi^3)",
                                         "symbol/sigma_1(NablaNabla)",
                                         "symbol/pi+ sigma_0(NablaNabla D_Psi^-2) X_nY_n"])
        spinEngine = BoundaryEngine(PsiSpec(PsiSpec.Kind.generic), DeltaConvention.SPIN)
        self.assertTrue(spinEngine.lemmaLedger()["symbol/sigma_-3(D_Psi^-2)"].matches)


if __name__ == '__main__':
    unittest.main()
