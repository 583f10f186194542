import math
import unittest
import numpy as np
from hypothesis import given, settings, strategies as st
from ResidueForge import (BoundaryEngine, BoundaryRational, CaseOracle, CaseSpec, CliffordElement, CollarFactorModel,
                          DeltaConvention, InteriorDensity, MonteCarloEstimate, OperatorTag, OracleReport, PsiSpec,
                          bladeMatrix, cauchyDerivativeRule, checkCliffordRelations, compensatedSum,
                          conormalQuadrature, defaultRing, enumerateCases, gammaImage, gammaMatrices, gammaTrace,
                          interiorReports, mcSphere, numericPiPlus, quadLine, randomBindings, relativeError,
                          sphereQuadrature)
from ResidueForge.oracle.numericOracle import _rationalValue


class NumericOracleTests(unittest.TestCase):
    """
    Tests the numeric counterparts of the exact operations.
    """

    def setUp(self):
        self.ring = defaultRing
        self.one = CliffordElement.identity(4, self.ring)
        self.e1 = CliffordElement.basis(1, 4, self.ring)

    def test_gamma_matrices(self):
        gammas = gammaMatrices(4)
        checkCliffordRelations(gammas, 4)
        for gamma in gammas:
            self.assertTrue(np.allclose(gamma.conj().T, -gamma))
        with self.assertRaises(ValueError):
            gammaMatrices(3)
        with self.assertRaises(ValueError):
            checkCliffordRelations([np.eye(4)] * 4, 4)

    def test_blade_matrices(self):
        self.assertTrue(np.allclose(bladeMatrix(0), np.eye(4)))
        self.assertTrue(np.allclose(bladeMatrix(0b11), gammaMatrices()[0] @ gammaMatrices()[1]))

    @settings(max_examples=25, deadline=None)
    @given(st.dictionaries(st.integers(0, 15), st.integers(-4, 4), max_size=5),
           st.dictionaries(st.integers(0, 15), st.integers(-4, 4), max_size=5))
    def test_matrix_model(self, first, second):
        a = CliffordElement(4, self.ring, first)
        b = CliffordElement(4, self.ring, second)
        self.assertTrue(np.allclose(gammaImage(a * b, {}), gammaImage(a, {}) @ gammaImage(b, {})))
        self.assertAlmostEqual(gammaTrace(a * b, {}), complex((a * b).spinorTrace().constantValue()))

    def test_symbolic_trace(self):
        u = CliffordElement.vector(self.ring.symbols("U1", "U2", "U3", "U4"), self.ring)
        bindings = {"U1": 0.5, "U2": -1.0, "U3": 2.0, "U4": 0.25}
        self.assertAlmostEqual(gammaTrace(u * u, bindings), (u * u).spinorTrace().substitute(bindings))
        vectorized = {name: np.array([value, 2 * value]) for name, value in bindings.items()}
        self.assertEqual(gammaImage(u, vectorized).shape, (2, 4, 4))

    def test_quad_line(self):
        inverseNorm = BoundaryRational.fromPowers({0: self.one}, 1)
        self.assertAlmostEqual(quadLine(inverseNorm, {}), math.pi, places=7)
        squared = BoundaryRational.fromPowers({0: self.one, 1: self.e1}, 2)
        self.assertAlmostEqual(quadLine(squared, {}), math.pi / 2, places=7)
        with self.assertRaises(BoundaryRational.NonIntegrableError):
            quadLine(BoundaryRational.fromPowers({2: self.one}, 1), {})

    def test_quad_matches_exact(self):
        h = self.ring.symbol("h")
        f = BoundaryRational.fromPowers({0: self.one.scale(h), 2: self.one.scale(3)}, 3)
        exact = f.lineIntegral().grade0().substitute({"h": 0.7, "pi": math.pi})
        self.assertAlmostEqual(quadLine(f, {"h": 0.7}), exact, places=7)

    def test_monte_carlo(self):
        xi1 = self.ring.symbol("xi1")
        estimate = mcSphere(xi1 ** 2, samples=200000, seed=7)
        self.assertIsInstance(estimate, MonteCarloEstimate)
        self.assertTrue(estimate.contains(4 * math.pi / 3, sigmas=5))
        self.assertLess(estimate.standardError, 0.01)
        self.assertEqual(estimate.samples, 200000)

    def test_sphere_quadrature(self):
        points, weights = sphereQuadrature(10, 20)
        self.assertEqual(points.shape, (200, 3))
        self.assertAlmostEqual(weights.sum(), 4 * math.pi)
        self.assertTrue(np.allclose(np.linalg.norm(points, axis=1), 1.0))
        self.assertAlmostEqual(weights @ points[:, 0] ** 2, 4 * math.pi / 3)
        self.assertAlmostEqual(weights @ (points[:, 0] ** 2 * points[:, 1] ** 2), 4 * math.pi / 15)
        self.assertAlmostEqual(weights @ points[:, 2] ** 4, 4 * math.pi / 5)

    def test_conormal_quadrature(self):
        points, weights = conormalQuadrature(64)
        self.assertAlmostEqual(weights @ (1 / (1 + points ** 2)), math.pi)
        self.assertAlmostEqual(weights @ (1 / (1 + points ** 2) ** 2), math.pi / 2)

    def test_numeric_pi_plus(self):
        f = BoundaryRational.fromPowers({0: self.one, 1: self.e1, 2: self.one.scale(2)}, 2)
        points = np.array([0.0, 2.0, -1.5 + 0.3j])
        for order in (0, 1, 2):
            numeric = numericPiPlus(f, {}, points, order)
            exact = _rationalValue(f.piPlus().derivative(order), {}, points)
            self.assertTrue(np.allclose(numeric, exact, atol=1e-12))

    def test_compensated_sum(self):
        self.assertEqual(compensatedSum([1e16, 1.0, -1e16]), 1.0)
        self.assertEqual(compensatedSum([1j, 2, -1j]), 2)

    def test_relative_error(self):
        self.assertAlmostEqual(relativeError(2.0, 2.2), 0.1)
        self.assertAlmostEqual(relativeError(0.0, 1e-12), 1e-12)

    def test_report(self):
        passed = OracleReport("q", 1.0, 1.0 + 1e-9)
        self.assertTrue(passed.passed)
        self.assertIn("PASS", str(passed))
        failed = OracleReport("q", 1.0, 1.1, tolerance=1e-6)
        self.assertFalse(failed.passed)
        self.assertIn("FAIL", str(failed))
        worst = OracleReport.worst("w", [(1.0, 1.0), (2.0, 2.5), (3.0, 3.0)], 1e-6, {"seed": 1})
        self.assertEqual(worst.symbolic, 2.0)
        self.assertEqual(worst.metadata, {"seed": 1, "samples": 3})
        restored = OracleReport.fromJson(worst.toJson())
        self.assertEqual(restored.toJson(), worst.toJson())

    def test_random_bindings(self):
        bindings = randomBindings({"a", "b"}, np.random.default_rng(3), 10)
        self.assertEqual(sorted(bindings), ["a", "b"])
        self.assertEqual(bindings["a"].shape, (10,))
        self.assertTrue(np.all(np.abs(bindings["b"]) <= 9))
        again = randomBindings({"a", "b"}, np.random.default_rng(3), 10)
        self.assertTrue(np.array_equal(bindings["a"], again["a"]))

    def test_interior_reports(self):
        for name in ("f", "vector", "trivector"):
            interior = InteriorDensity(PsiSpec.fromName(name)).assembleInterior()
            reports = interiorReports(interior, seed=11, bindingsCount=10)
            self.assertEqual(len(reports), 2)
            for report in reports:
                self.assertTrue(report.passed, str(report))

    def test_case_oracle(self):
        engine = BoundaryEngine(PsiSpec(PsiSpec.Kind.zero), DeltaConvention.PRINTED)
        oracle = CaseOracle(engine, seed=5, bindingsCount=3)
        cases = enumerateCases(4, 0, -2)
        for case in (cases[2], cases[3]):
            report = oracle.checkCase(1, case)
            self.assertTrue(report.passed, str(report))
            self.assertEqual(report.metadata["bindings"], 3)
        self.assertTrue(report.quantity.startswith("thm1/(b)"))

    def test_normal_derivative_cases(self):
        engine = BoundaryEngine(PsiSpec(PsiSpec.Kind.zero), DeltaConvention.PRINTED)
        oracle = CaseOracle(engine, seed=8, bindingsCount=2)
        for theorem, label in ((1, "(a)(II)"), (2, "(2)"), (2, "(3)")):
            case = [c for c in engine.cases(theorem) if c.label == label][0]
            report = oracle.checkCase(theorem, case)
            self.assertTrue(report.passed, str(report))


class CollarFactorModelTests(unittest.TestCase):
    """
    Tests the numeric case factors against the symbolic derivatives of the engine.
    """

    def setUp(self):
        self.model = CollarFactorModel()
        self.rng = np.random.default_rng(13)

    def test_cauchy_rule(self):
        def f(z):
            return 1 / (1 + z ** 2)

        offsets, weights = cauchyDerivativeRule(2, 0.25, 16)
        second = np.sum(weights * f(0.3 + offsets))
        self.assertAlmostEqual(complex(second), (6 * 0.3 ** 2 - 2) / (1 + 0.3 ** 2) ** 3, places=6)
        offsets, weights = cauchyDerivativeRule(0, 0.25, 16)
        self.assertEqual(len(offsets), 1)

    def test_leading_symbols(self):
        xi = [np.array([0.3]), np.array([-0.4]), np.array([0.5]), np.array([1.5])]
        bindings = {"h1": np.array([0.7])}
        for xn in (0.0, 0.01 + 0.02j):
            dirac = self.model.leadingSymbol(OperatorTag.D, xn, xi, bindings)
            inverse = self.model.leadingSymbol(OperatorTag.DInverse, xn, xi, bindings)
            self.assertTrue(np.allclose(dirac @ inverse, np.eye(4)))
            squared = self.model.leadingSymbol(OperatorTag.DInverseSquared, xn, xi, bindings)
            norm = (1 + 0.7 * xn) * (0.3 ** 2 + 0.4 ** 2 + 0.5 ** 2) + 1.5 ** 2
            self.assertTrue(np.allclose(squared, np.eye(4) / norm))
        with self.assertRaises(CollarFactorModel.UnknownOperatorError):
            self.model.leadingSymbol("Laplacian", 0.0, xi, bindings)

    def test_factors_match_engine(self):
        engine = BoundaryEngine(PsiSpec.fromName("vector"), DeltaConvention.PRINTED)
        oracle = CaseOracle(engine, nTheta=3, nPhi=4, conormalNodes=6, contourNodes=8)
        for theorem in (1, 2):
            for case in engine.cases(theorem):
                if case.alphaOrder:
                    continue
                density = engine.evaluateTheoremCase(theorem, case)
                bindings = randomBindings(oracle.caseSymbols(theorem, case, density), self.rng, 2)
                ours = oracle.factorValues(theorem, case, bindings)
                theirs = oracle.engineFactorValues(theorem, case, (0, 0, 0), bindings)
                for name, mine, reference in zip(("left", "right"), ours, theirs):
                    scale = np.max(np.abs(reference))
                    self.assertTrue(np.allclose(mine, reference, rtol=1e-6, atol=1e-7 * scale),
                                    "thm" + str(theorem) + " " + case.label + " " + name)

    def test_tangential_factors_vanish(self):
        engine = BoundaryEngine(PsiSpec.fromName("vector"), DeltaConvention.PRINTED)
        oracle = CaseOracle(engine, bindingsCount=2)
        for theorem in (1, 2):
            numerator, denominator = engine.operators(theorem)
            case = [c for c in engine.cases(theorem) if c.alphaOrder][0]
            for alpha in case.multiIndices():
                self.assertTrue(engine.caseFactors(case, alpha, numerator, denominator)[1].isZero())
            bindings = randomBindings({"h1"}, self.rng, 2)
            self.assertTrue(np.array_equal(oracle.numericCase(theorem, case, bindings), np.zeros(2)))

    def test_subleading_normal_derivative(self):
        engine = BoundaryEngine(PsiSpec(PsiSpec.Kind.zero), DeltaConvention.PRINTED)
        oracle = CaseOracle(engine, nTheta=3, nPhi=4, conormalNodes=6, contourNodes=8)
        case = CaseSpec(-1, -2, 1, 0, 0)
        with self.assertRaises(CaseOracle.UnsupportedCaseError):
            oracle.factorValues(1, case, randomBindings({"h1", "X1", "Y1"}, self.rng, 1))


if __name__ == '__main__':
    unittest.main()
