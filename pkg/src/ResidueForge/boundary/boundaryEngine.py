import time
from ResidueForge import (PsiSpec, DeltaConvention, OperatorTag, Presets, buildJets, integrateSphere,
                          reduceSphereRelation, defaultRing, setup_logger)
from .caseSpec import enumerateCases
from .densityExpression import DensityExpression
from .printedLedger import DiscrepancyLedger, densityEntries, symbolEntries, vectorCorollaryEntry

engine_logger = setup_logger.logger.getChild("boundaryEngine")

# theorem -> (numerator operator, denominator operator)
theoremOperators = {
    1: (OperatorTag.NablaNablaDInverseSquared, OperatorTag.DInverseSquared),
    2: (OperatorTag.NablaNablaDInverse, OperatorTag.DInverseCubed),
}

_engines = {}


def engineFor(psi, deltaConvention=DeltaConvention.PRINTED):
    """Returns the engine of this process for a perturbation and delta convention.

    :rtype: BoundaryEngine
    """
    key = (psi.kind.name, deltaConvention.name)
    if key not in _engines:
        BoundaryEngine(psi, deltaConvention)
    return _engines[key]


class BoundaryDensity:
    """Outcome of a boundary density run.

    Unpacks as ``density, ledger``.

    :param theorem: 1 or 2
    :type theorem: int
    :param cases: evaluated cases in reporting order
    :type cases: list of (CaseSpec, DensityExpression)
    :param total: sum of all case densities
    :type total: DensityExpression
    :param ledger: comparison against the printed values
    :type ledger: DiscrepancyLedger
    """

    def __init__(self, theorem, psi, cases, total, ledger):
        self.theorem = theorem
        self.psi = psi
        self.cases = cases
        self.total = total
        self.ledger = ledger

    def caseDensity(self, label):
        for case, density in self.cases:
            if case.label == label:
                return density
        raise KeyError(label)

    def __iter__(self):
        return iter((self.total, self.ledger))

    def __str__(self):
        string = "Theorem " + str(self.theorem) + ", psi=" + str(self.psi) + "\n"
        for case, density in self.cases:
            string += "  " + case.label + ": " + str(density) + "\n"
        string += "  total: " + str(self.total)
        return string


class BoundaryEngine:
    """Evaluates the boundary term of the residue case by case.

    Every case is prefactor * int_{|xi'|=1} int trace[left * right] dxi_n sigma(xi')
    where left = d^j_{x_n} d^alpha_{xi'} d^k_{xi_n} pi^+ sigma_r and
    right = d^alpha_{x'} d^{j+1}_{xi_n} d^k_{x_n} sigma_l, all at the boundary point.

    :param psi: the perturbation, generic if None
    :type psi: PsiSpec, optional
    :param deltaConvention: reading of delta^k in sigma_{-3}(D^{-2})
    :type deltaConvention: DeltaConvention
    """

    class CaseEvaluationError(Exception):
        pass

    def __init__(self, psi=None, deltaConvention=DeltaConvention.PRINTED, dimension=4, ring=defaultRing):
        self.psi = psi if psi is not None else PsiSpec(PsiSpec.Kind.generic)
        self.dimension = dimension
        self.ring = ring
        self.jets = buildJets(dimension, deltaConvention, ring)
        self.presets = Presets(self.psi, self.jets)
        _engines.setdefault((self.psi.kind.name, deltaConvention.name), self)

    @property
    def deltaConvention(self):
        return self.jets.deltaConvention

    def operators(self, theorem):
        """Symbol expansions of the numerator and denominator operator.

        :rtype: tuple (SymbolExpansion, SymbolExpansion)
        """
        if theorem not in theoremOperators:
            raise ValueError("Unknown theorem " + str(theorem))
        numerator, denominator = theoremOperators[theorem]
        return self.presets.preset(numerator), self.presets.preset(denominator)

    def cases(self, theorem):
        numerator, denominator = self.operators(theorem)
        return enumerateCases(self.dimension, numerator.leadingOrder, denominator.leadingOrder)

    def caseFactors(self, case, alpha, numerator, denominator):
        """The two symbol factors of a case before restriction to the boundary.

        :return: d^j_{x_n} d^alpha_{xi'} sigma_r and d^alpha_{x'} d^k_{x_n} sigma_l
        :rtype: tuple (SymbolTerm, SymbolTerm)
        """
        n = self.dimension
        left = numerator[case.r]
        for _ in range(case.j):
            left = left.xDerivative(n)
        right = denominator[case.ell]
        for _ in range(case.k):
            right = right.xDerivative(n)
        for slot, count in enumerate(alpha, start=1):
            for _ in range(count):
                left = left.xiDerivative(slot)
                right = right.xDerivative(slot)
        return left, right

    def _onSphere(self, term):
        n = self.dimension
        return term.restrictBoundary().mapCoefficients(lambda c: reduceSphereRelation(c, n - 1, self.ring))

    def evaluateCase(self, case, numerator, denominator):
        """Exact density of one case.

        :param case: the case
        :type case: CaseSpec
        :param numerator: symbol of the numerator operator
        :type numerator: SymbolExpansion
        :param denominator: symbol of the denominator operator
        :type denominator: SymbolExpansion
        :rtype: DensityExpression
        """
        starttime = time.time()
        total = self.ring.zero()
        for alpha in case.multiIndices(self.dimension):
            left, right = self.caseFactors(case, alpha, numerator, denominator)
            if left.isZero() or right.isZero():
                continue
            projected = self._onSphere(left).piPlus().derivative(case.k)
            derived = self._onSphere(right).derivative(case.j + 1)
            line = projected.tracePairing(derived).lineIntegral().grade0()
            moment = integrateSphere(line, self.dimension, self.ring)
            total = total + moment.coefficient * case.prefactor(alpha)
        density = DensityExpression(total, self.dimension)
        engine_logger.debug(f"Evaluated {case} for psi={self.psi} in {time.time() - starttime:.2f}s: {density}")
        return density

    def evaluateTheoremCase(self, theorem, case):
        numerator, denominator = self.operators(theorem)
        return self.evaluateCase(case, numerator, denominator)

    def boundaryDensity(self, theorem, evaluator=None, result=None):
        """Sum of all case densities of a theorem with its ledger.

        :param theorem: 1 or 2
        :type theorem: int
        :param evaluator: case evaluator, constructed from the environment if None
        :type evaluator: CaseEvaluator, optional
        :param result: report object to record the case densities in
        :type result: Result, optional
        :raises BoundaryEngine.CaseEvaluationError: if a case could not be evaluated
        :rtype: BoundaryDensity
        """
        import ResidueForge
        if evaluator is None:
            evaluator = ResidueForge.CaseEvaluator.ConstructEvaluator()
        if result is not None:
            evaluator.setResultObject(result)
        cases = self.cases(theorem)
        engine_logger.info(f"Evaluating {len(cases)} cases of theorem {theorem} for psi={self.psi}")
        jobs = [ResidueForge.CaseJob(theorem, case, self.psi, self.deltaConvention) for case in cases]
        outcomes = evaluator.evaluate(jobs, tag="theorem" + str(theorem))

        failed = [outcome for outcome in outcomes if isinstance(outcome, ResidueForge.ErroredCase)]
        if failed:
            reasons = "; ".join(str(outcome) for outcome in failed)
            engine_logger.error(f"Case evaluation failed: {reasons}")
            raise BoundaryEngine.CaseEvaluationError(reasons)

        total = DensityExpression.zero(self.dimension, self.ring)
        for density in outcomes:
            total = total + density
        caseDensities = {case.label: density for case, density in zip(cases, outcomes)}

        ledger = DiscrepancyLedger()
        ledger.extend(densityEntries(theorem, caseDensities, total, self.psi, self.ring))
        if theorem == 1 and self.psi.isGeneric:
            ledger.add(vectorCorollaryEntry(total, self.ring))
        engine_logger.info(f"Theorem {theorem} boundary density: {total}")
        return BoundaryDensity(theorem, self.psi, list(zip(cases, outcomes)), total, ledger)

    def lemmaLedger(self):
        """Lemma-level comparisons for the symbols of this run.

        :rtype: DiscrepancyLedger
        """
        return DiscrepancyLedger(symbolEntries(self.presets))

    def assembleFunctional(self, theorem, evaluator=None):
        """Interior and boundary density of a theorem at a boundary point.

        The interior density needs concrete Clifford data; for a generic
        perturbation it is None.

        :rtype: tuple (InteriorDensity or None, BoundaryDensity)
        """
        import ResidueForge
        interior = None
        if not self.psi.isGeneric:
            interior = ResidueForge.InteriorDensity(self.psi, self.dimension, self.ring).assembleInterior(theorem)
        return interior, self.boundaryDensity(theorem, evaluator)


def evaluateCase(case, numerator, denominator, psi=None):
    """Module level access to :meth:`BoundaryEngine.evaluateCase`."""
    return engineFor(psi if psi is not None else PsiSpec(PsiSpec.Kind.generic)).evaluateCase(case, numerator, denominator)


def boundaryDensity(theorem, psi=None, evaluator=None):
    """Module level access to :meth:`BoundaryEngine.boundaryDensity`."""
    return engineFor(psi if psi is not None else PsiSpec(PsiSpec.Kind.generic)).boundaryDensity(theorem, evaluator)
