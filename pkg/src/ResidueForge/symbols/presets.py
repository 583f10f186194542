from enum import Enum
from fractions import Fraction
from ResidueForge import (CliffordElement, XiPolynomial, PsiSpec, IMAG, psiInstantiate, fieldVector, xiName,
                          buildJets, setup_logger)
from .symbolTerm import SymbolTerm, SymbolExpansion, compose

presets_logger = setup_logger.logger.getChild("presets")

OperatorTag = Enum("OperatorTag", "D DInverse DInverseSquared DInverseCubed NablaNabla NablaNablaDInverse "
                                  "NablaNablaDInverseSquared DCubed")

# identifiers accepted on top of the enum member names
operatorNames = {
    "D_Psi": OperatorTag.D,
    "D_Psi^-1": OperatorTag.DInverse,
    "D_Psi^-2": OperatorTag.DInverseSquared,
    "D_Psi^-3": OperatorTag.DInverseCubed,
    "D_Psi^3": OperatorTag.DCubed,
    "NablaNabla": OperatorTag.NablaNabla,
    "NablaNabla D_Psi^-1": OperatorTag.NablaNablaDInverse,
    "NablaNabla D_Psi^-2": OperatorTag.NablaNablaDInverseSquared,
}


def operatorTag(name):
    """Resolves an operator id such as ``D_Psi^-2`` or ``DInverseSquared``.

    :raises Presets.UnknownOperatorError: for unknown ids
    :rtype: OperatorTag
    """
    if isinstance(name, OperatorTag):
        return name
    if name in operatorNames:
        return operatorNames[name]
    if name in OperatorTag.__members__:
        return OperatorTag[name]
    raise Presets.UnknownOperatorError("Unknown operator " + str(name))


class Presets:
    """Symbol library of the perturbed Dirac operator family at the boundary point.

    Expansions are built lazily and cached; the composite operators of both
    theorems are assembled from their factors with the Leibniz rule as printed
    in the lemmas, the third power of D_Psi by composition.

    :param psi: the perturbation, generic if None
    :type psi: PsiSpec, optional
    :param jets: the collar jets to wire into the symbols
    :type jets: JetStore, optional
    """

    class UnknownOperatorError(Exception):
        pass

    def __init__(self, psi=None, jets=None):
        self.jets = jets if jets is not None else buildJets()
        self.ring = self.jets.ring
        self.dimension = self.jets.dimension
        self.psiSpec = psi if psi is not None else PsiSpec(PsiSpec.Kind.generic)
        self.psi = psiInstantiate(self.psiSpec, self.dimension, self.ring)
        self._cache = {}
        self._builders = {
            OperatorTag.D: self._dirac,
            OperatorTag.DInverse: self._diracInverse,
            OperatorTag.DInverseSquared: self._diracInverseSquared,
            OperatorTag.DInverseCubed: self._diracInverseCubed,
            OperatorTag.DCubed: self._diracCubed,
            OperatorTag.NablaNabla: self._nablaNabla,
            OperatorTag.NablaNablaDInverse: self._nablaNablaDiracInverse,
            OperatorTag.NablaNablaDInverseSquared: self._nablaNablaDiracInverseSquared,
        }

    def preset(self, tag):
        """Returns the stored symbol expansion of an operator.

        :param tag: operator id
        :type tag: OperatorTag or string
        :raises Presets.UnknownOperatorError: for unknown ids
        :rtype: SymbolExpansion
        """
        tag = operatorTag(tag)
        if tag not in self._cache:
            self._cache[tag] = self._builders[tag]()
            presets_logger.debug(f"Built preset {tag.name} for psi={self.psiSpec}, orders {self._cache[tag].orders()}")
        return self._cache[tag]

    # building blocks

    def _xiPolynomial(self, value):
        return XiPolynomial.fromScalar(value, self.dimension, self.ring)

    def _cliffordXi(self):
        return SymbolTerm.cliffordXiTerm(self.jets)

    def sigma0(self):
        """sigma_0(D_Psi) = sigma_0(D) + c(Psi) at x0."""
        return self.jets.sigma0D + self.psi

    def fieldComponents(self, name):
        return self.ring.symbols(*[name + str(k) for k in range(1, self.dimension + 1)])

    def pairing(self, name):
        """sum_k Z_k xi_k for the field named `name`."""
        total = self.ring.zero()
        for k, component in enumerate(self.fieldComponents(name)):
            total = total + component * self.ring.symbol(xiName(k + 1))
        return total


    def potential(self, name):
        """A(Z) = L(Z) + G(Z, Psi), the zero order part of nabla^Psi_Z.

        G(Z, Psi) = -1/2 (c(Z)c(Psi) + c(Psi)c(Z)).

        :rtype: CliffordElement
        """
        field = fieldVector(name, self.dimension, self.ring)
        anticommutator = field * self.psi + self.psi * field
        return self.jets.spinConnection(self.fieldComponents(name)) + anticommutator.scale(Fraction(-1, 2))

    def _dXjCliffordXi(self, j):
        if j == self.dimension:
            return self.jets.dXnCliffordXi()
        return XiPolynomial.zero(self.dimension, self.ring)

    def _xDerivativeSum(self, left, right):
        """sum_j d_{xi_j} left * D_{x_j} right with D_x = -i d_x."""
        total = SymbolTerm.zero(left.order + right.order - 1, self.dimension, self.ring)
        for j in range(1, self.dimension + 1):
            total = total + left.xiDerivative(j) * right.xDerivative(j).scale(-IMAG)
        return total

    # operators

    def _dirac(self):
        return SymbolExpansion("D_Psi", {
            1: self._cliffordXi().scale(IMAG),
            0: SymbolTerm.constant(self.sigma0()),
        })

    def _diracInverse(self):
        n = self.dimension
        leading = (self._cliffordXi() * SymbolTerm.normPowerTerm(1, self.jets)).scale(IMAG)
        c = XiPolynomial.cliffordXi(n, self.ring)
        norm = XiPolynomial.normSquared(n, self.ring)
        numerator = c * XiPolynomial(self.sigma0()) * c * norm
        for j in range(1, n + 1):
            cotangent = XiPolynomial(CliffordElement.basis(j, n, self.ring))
            numerator = numerator + c * cotangent * (self._dXjCliffordXi(j) * norm - c * self.jets.dXjNormSquared(j))
        return SymbolExpansion("D_Psi^-1", {-1: leading, -2: SymbolTerm(numerator, 3, -2)})

    def _diracInverseSquared(self):
        n = self.dimension
        c = XiPolynomial.cliffordXi(n, self.ring)
        norm = XiPolynomial.normSquared(n, self.ring)
        psi = XiPolynomial(self.psi)
        contraction = self.jets.gammaContraction() - self.jets.deltaContraction().scale(2)
        numerator = (contraction * norm).scale(-IMAG) \
            - self.jets.metricDerivativeContraction().scale(2 * IMAG) \
            - (psi * c + c * psi).scale(IMAG) * norm
        return SymbolExpansion("D_Psi^-2", {
            -2: SymbolTerm.normPowerTerm(1, self.jets),
            -3: SymbolTerm(numerator, 3, -3),
        })

    def _diracCubed(self):
        dirac = self.preset(OperatorTag.D)
        square = compose(dirac, dirac, 1, "D_Psi^2")
        return compose(dirac, square, 2, "D_Psi^3")

    def _diracInverseCubed(self):
        cube = self.preset(OperatorTag.DCubed)
        leading = (self._cliffordXi() * SymbolTerm.normPowerTerm(2, self.jets)).scale(IMAG)
        # one parametrix step: q_{-4} = -q_{-3}(p_2 q_{-3} + sum_j d_{xi_j}p_3 D_{x_j}q_{-3})
        inner = cube[2] * leading + self._xDerivativeSum(cube[3], leading)
        return SymbolExpansion("D_Psi^-3", {-3: leading, -4: -(leading * inner)})

    def _nablaNabla(self):
        n = self.dimension
        xPairing = self.pairing("X")
        yPairing = self.pairing("Y")
        leading = SymbolTerm.frozenPolynomial(self._xiPolynomial(-(xPairing * yPairing)), 2)
        derivative = self.ring.zero()
        for j, xComponent in enumerate(self.fieldComponents("X")):
            for l in range(1, n + 1):
                derivative = derivative + xComponent * self.ring.symbol("dY" + str(j + 1) + str(l)) \
                    * self.ring.symbol(xiName(l))
        subleading = self._xiPolynomial(derivative) \
            + XiPolynomial(self.potential("Y").scale(xPairing)) \
            + XiPolynomial(self.potential("X").scale(yPairing))
        return SymbolExpansion("NablaNabla", {2: leading, 1: SymbolTerm(subleading.scale(IMAG), 0, 1)})

    def _nablaNablaDiracInverse(self):
        nabla = self.preset(OperatorTag.NablaNabla)
        inverse = self.preset(OperatorTag.DInverse)
        return SymbolExpansion("NablaNabla D_Psi^-1", {
            1: nabla[2] * inverse[-1],
            0: nabla[2] * inverse[-2] + nabla[1] * inverse[-1] + self._xDerivativeSum(nabla[2], inverse[-1]),
        })

    def _nablaNablaDiracInverseSquared(self):
        nabla = self.preset(OperatorTag.NablaNabla)
        inverse = self.preset(OperatorTag.DInverseSquared)
        return SymbolExpansion("NablaNabla D_Psi^-2", {
            0: nabla[2] * inverse[-2],
            -1: nabla[2] * inverse[-3] + nabla[1] * inverse[-2] + self._xDerivativeSum(nabla[2], inverse[-2]),
        })


def preset(tag, psi=None, jets=None):
    """Convenience access to a single expansion, see :meth:`Presets.preset`."""
    return Presets(psi, jets).preset(tag)
