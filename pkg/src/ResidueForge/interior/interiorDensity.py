from fractions import Fraction
from ResidueForge import (CliffordElement, PsiSpec, psiInstantiate, fieldVector, normalizeVolumes, volumeSymbol,
                          spinorDimension, defaultRing, LedgerEntry, DiscrepancyLedger, setup_logger)

interior_logger = setup_logger.logger.getChild("interior")


def commutatorTrace(first, second):
    """trace[[a, b]], which vanishes for all Clifford elements."""
    return (first * second - second * first).spinorTrace()


def anticommutatorTrace(first, second):
    """trace[{a, b}] = 2 trace[ab]."""
    return (first * second + second * first).spinorTrace()


def vectorPairTrace(first, second):
    """trace[c(a)c(b)] for two vectors given by their components, equal to -2^(n/2) g(a, b)."""
    return CliffordElement.vector(first, first[0].ring).traceProduct(CliffordElement.vector(second, second[0].ring))


def covariantField(direction, field, dimension=4, ring=defaultRing):
    """c(nabla_direction field) with placeholder components ``nabla<direction><field><k>``."""
    return CliffordElement.vector(ring.symbols(*["nabla" + direction + field + str(k) for k in range(1, dimension + 1)]),
                                  ring)


def covariantPsi(psi, direction, dimension=4, ring=defaultRing):
    """nabla^{S(TM)}_direction c(Psi) by the Leibniz rule over the field factors.

    A scalar perturbation f differentiates into the placeholder ``nabla<direction>f``.

    :param psi: the perturbation
    :type psi: PsiSpec
    :param direction: ``X`` or ``Y``
    :type direction: string
    :rtype: CliffordElement
    """
    if psi.kind == PsiSpec.Kind.scalar:
        return CliffordElement.fromScalar(ring.symbol("nabla" + direction + "f"), dimension, ring)
    total = CliffordElement(dimension, ring)
    fields = psi.fields
    for position in range(len(fields)):
        term = CliffordElement.identity(dimension, ring)
        for index, name in enumerate(fields):
            if index == position:
                term = term * covariantField(direction, name, dimension, ring)
            else:
                term = term * fieldVector(name, dimension, ring)
        total = total + term
    return total


class InteriorDensity:
    """Interior density of the spectral Einstein functional of the perturbed Dirac operator.

    (4 pi^2/3) EG(X,Y) + (pi^2/2) F(X,Y) + 1/2 trace[E] g(X,Y) for n = 4, with
    EG(X,Y), the scalar curvature s and the covariant derivatives of the
    fields kept as opaque symbols.

    :param psi: a concrete perturbation
    :type psi: PsiSpec
    :raises InteriorDensity.GenericPsiError: for the generic perturbation
    """

    class GenericPsiError(Exception):
        pass

    def __init__(self, psi, dimension=4, ring=defaultRing):
        if psi.isGeneric:
            raise InteriorDensity.GenericPsiError("The interior density needs a concrete perturbation")
        self.psiSpec = psi
        self.dimension = dimension
        self.ring = ring
        self.psi = psiInstantiate(psi, dimension, ring)
        self.theorem = None
        self.egCoefficient = normalizeVolumes(
            ring.symbol(volumeSymbol(dimension - 1)).scale(Fraction(spinorDimension(dimension), 6)), ring)
        self.fTraceTerm = None
        self.traceETerm = None

    def traceE(self):
        """trace[s/4 + sum_j 1/2 c(Psi)c(e_j)c(Psi)c(e_j) + (1 - n/2) c(Psi)^2].

        :rtype: Scalar
        """
        n = self.dimension
        ring = self.ring
        element = CliffordElement.fromScalar(ring.symbol("s").scale(Fraction(1, 4)), n, ring)
        for j in range(1, n + 1):
            basis = CliffordElement.basis(j, n, ring)
            element = element + (self.psi * basis * self.psi * basis).scale(Fraction(1, 2))
        element = element + (self.psi * self.psi).scale(1 - Fraction(n, 2))
        return element.spinorTrace()

    def fTrace(self):
        """F(X,Y) = 1/2 trace[{c(X), nabla_Y c(Psi)}] - 1/2 trace[{c(Y), nabla_X c(Psi)}].

        :rtype: Scalar
        """
        n = self.dimension
        x = fieldVector("X", n, self.ring)
        y = fieldVector("Y", n, self.ring)
        first = anticommutatorTrace(x, covariantPsi(self.psiSpec, "Y", n, self.ring))
        second = anticommutatorTrace(y, covariantPsi(self.psiSpec, "X", n, self.ring))
        return (first - second).scale(Fraction(1, 2))

    def assembleInterior(self, theorem="einstein"):
        """Fills in the three parts of the interior density.

        Both theorems share the interior density of the spectral Einstein functional.

        :param theorem: 1, 2 or ``einstein``
        :type theorem: int or string
        :rtype: InteriorDensity
        """
        if theorem not in (1, 2, "einstein", "interior"):
            raise ValueError("Unknown theorem " + str(theorem))
        self.theorem = theorem
        self.fTraceTerm = self.fTrace()
        self.traceETerm = self.traceE()
        interior_logger.info(f"Interior density for psi={self.psiSpec}: trace E = {self.traceETerm}, F = {self.fTraceTerm}")
        return self

    def density(self):
        """(4 pi^2/3) EG + (pi^2/2) F + 1/2 trace[E] g(X,Y) as one Scalar.

        :rtype: Scalar
        """
        if self.traceETerm is None:
            self.assembleInterior()
        ring = self.ring
        pi = ring.symbol("pi")
        return self.egCoefficient * ring.symbol("EG") \
            + (pi * pi * self.fTraceTerm).scale(Fraction(1, 2)) \
            + (self.traceETerm * ring.symbol("gXY")).scale(Fraction(1, 2))

    def ledger(self):
        """Comparison of the printed F-term and trace term for Psi = c(U).

        :rtype: DiscrepancyLedger
        """
        ledger = DiscrepancyLedger()
        if self.psiSpec.kind != PsiSpec.Kind.vector:
            return ledger
        ring = self.ring
        n = self.dimension
        if self.traceETerm is None:
            self.assembleInterior()
        pi = ring.symbol("pi")
        xNablaYU = sum((ring.symbol("X" + str(k)) * ring.symbol("nablaYU" + str(k)) for k in range(1, n + 1)), ring.zero())
        yNablaXU = sum((ring.symbol("Y" + str(k)) * ring.symbol("nablaXU" + str(k)) for k in range(1, n + 1)), ring.zero())
        printedF = (pi * pi * (xNablaYU + yNablaXU)).scale(-4)
        engineF = (pi * pi * self.fTraceTerm).scale(Fraction(1, 2))
        ledger.add(LedgerEntry("interior/F-term vector",
                               r"\frac{\pi^2}{2}\left[-8g(X,\nabla^{TM}_YU)-8g(Y,\nabla^{TM}_XU)\right]",
                               printedF, engineF, engineF - printedF,
                               "engine value is antisymmetric in X and Y"))
        u = fieldVector("U", n, ring)
        printedElement = CliffordElement.fromScalar(ring.symbol("s").scale(Fraction(1, 4)), n, ring)
        for j in range(1, n + 1):
            basis = CliffordElement.basis(j, n, ring)
            printedElement = printedElement + (u * basis * u * basis).scale(Fraction(1, 2))
        normSquared = sum((ring.symbol("U" + str(k)) ** 2 for k in range(1, n + 1)), ring.zero())
        printedTrace = (printedElement + CliffordElement.fromScalar(normSquared, n, ring)).spinorTrace()
        ledger.add(LedgerEntry("interior/trace E vector",
                               r"\mathrm{tr}\left[\frac{1}{4}s+\sum_j\frac{1}{2}c(U)c(e_j)c(U)c(e_j)+|U|^2\right]",
                               printedTrace, self.traceETerm, self.traceETerm - printedTrace, ""))
        return ledger

    def toJson(self):
        if self.traceETerm is None:
            self.assembleInterior()
        return {
            "psi": str(self.psiSpec),
            "latex": self.toLatex(),
            "eg_coefficient": self.egCoefficient.toJson(),
            "f_trace": self.fTraceTerm.toJson(),
            "trace_E": self.traceETerm.toJson(),
            "density": self.density().toJson(),
        }

    def toLatex(self):
        return self.density().toLatex()

    def __str__(self):
        return "interior density (psi=" + str(self.psiSpec) + "): " + str(self.density())


def traceE(psi, dimension=4, ring=defaultRing):
    return InteriorDensity(psi, dimension, ring).traceE()


def fTrace(psi, dimension=4, ring=defaultRing):
    return InteriorDensity(psi, dimension, ring).fTrace()


def assembleInterior(theorem, psi, dimension=4, ring=defaultRing):
    return InteriorDensity(psi, dimension, ring).assembleInterior(theorem)
