import math
import numpy as np
from ResidueForge import OperatorTag, setup_logger
from .numericOracle import gammaMatrices

collarmodel_logger = setup_logger.logger.getChild("collarModel")

# leading symbol of each operator: (carries -(X.xi)(Y.xi), power of sigma_1(D) = i c(xi))
leadingForms = {
    OperatorTag.D: (False, 1),
    OperatorTag.DCubed: (False, 3),
    OperatorTag.DInverse: (False, -1),
    OperatorTag.DInverseSquared: (False, -2),
    OperatorTag.DInverseCubed: (False, -3),
    OperatorTag.NablaNabla: (True, 0),
    OperatorTag.NablaNablaDInverse: (True, -1),
    OperatorTag.NablaNablaDInverseSquared: (True, -2),
}


def cauchyDerivativeRule(order, radius, nodes):
    """Offsets z_q and weights w_q with f^(order)(c) ~ sum_q w_q f(c + z_q) for f analytic near c.

    The periodic trapezoid rule on |z| = radius converges geometrically in the
    ratio of radius to the distance of the nearest singularity.

    :rtype: tuple of numpy arrays
    """
    if order == 0:
        return np.zeros(1, dtype=complex), np.ones(1, dtype=complex)
    offsets = radius * np.exp(2j * np.pi * np.arange(nodes) / nodes)
    weights = math.factorial(order) / nodes * offsets ** (-order)
    return offsets, weights


class CollarFactorModel:
    """Numeric leading symbols on the collar metric g = h(x_n)^-1 |dx'|^2 + dx_n^2 with h = 1 + h1 x_n.

    The leading symbols are matrix powers of i c(xi), with c(dx_a) = sqrt(h) gamma_a
    tangentially and c(dx_n) = gamma_n, times -(X.xi)(Y.xi) for the second order
    operators. Derivatives in x_n and xi_n are taken with Cauchy integrals, so
    nothing of the symbolic jet calculus enters.

    :param xnRadius: radius of the x_n circle, divided by max(1, |h1|)
    :type xnRadius: float
    :param xnNodes: nodes on the x_n circle
    :type xnNodes: int
    :param conormalRadius: radius of the xi_n circle around real points
    :type conormalRadius: float
    :param conormalNodes: nodes on the xi_n circle
    :type conormalNodes: int
    """

    class UnknownOperatorError(Exception):
        pass

    def __init__(self, dimension=4, xnRadius=0.02, xnNodes=8, conormalRadius=0.25, conormalNodes=16):
        self.dimension = dimension
        self.gammas = gammaMatrices(dimension)
        self.xnRadius = xnRadius
        self.xnNodes = xnNodes
        self.conormalRadius = conormalRadius
        self.conormalNodes = conormalNodes
        collarmodel_logger.debug(f"Collar model with {xnNodes} x_n nodes and {conormalNodes} xi_n nodes")

    def cliffordXi(self, xn, xi, h1):
        """c(xi) at the normal coordinate xn; xi is a sequence of n broadcastable arrays."""
        n = self.dimension
        tangential = sum(xi[a][..., None, None] * self.gammas[a] for a in range(n - 1))
        scale = np.sqrt(1 + np.asarray(h1, dtype=complex) * xn)[..., None, None]
        return scale * tangential + xi[n - 1][..., None, None] * self.gammas[n - 1]

    def leadingSymbol(self, tag, xn, xi, bindings):
        """Matrix values of the leading symbol of an operator.

        :param tag: the operator
        :type tag: OperatorTag
        :param xn: normal coordinate, real or complex
        :type xn: complex
        :param xi: components xi_1..xi_n, broadcastable against the bindings
        :type xi: list of numpy arrays
        :param bindings: values of h1 and of the field components, broadcastable against xi
        :type bindings: dict string -> numpy array
        :raises CollarFactorModel.UnknownOperatorError: for operators without a leading form
        :rtype: numpy array of shape (..., 4, 4)
        """
        if tag not in leadingForms:
            raise CollarFactorModel.UnknownOperatorError("No leading symbol known for " + str(tag))
        field, power = leadingForms[tag]
        matrix = np.linalg.matrix_power(1j * self.cliffordXi(xn, xi, bindings.get("h1", 0.0)), power)
        if field:
            n = self.dimension
            xPairing = sum(bindings["X" + str(k + 1)] * xi[k] for k in range(n))
            yPairing = sum(bindings["Y" + str(k + 1)] * xi[k] for k in range(n))
            matrix = -(xPairing * yPairing)[..., None, None] * matrix
        return matrix

    def normalDerivative(self, tag, order, xi, bindings):
        """d^order_{x_n} of the leading symbol at x_n = 0."""
        h1 = np.max(np.abs(bindings.get("h1", 0.0)), initial=0.0)
        offsets, weights = cauchyDerivativeRule(order, self.xnRadius / max(1.0, h1), self.xnNodes)
        total = 0
        for offset, weight in zip(offsets, weights):
            total = total + weight * self.leadingSymbol(tag, offset, xi, bindings)
        return total

    def conormalDerivative(self, values, order, points):
        """d^order_{xi_n} at real points of a function given by its values at shifted points.

        :param values: callable taking complex xi_n points shaped like points
        :type values: callable
        :param points: real xi_n points
        :type points: numpy array
        :rtype: numpy array
        """
        offsets, weights = cauchyDerivativeRule(order, self.conormalRadius, self.conormalNodes)
        points = np.asarray(points, dtype=complex)
        total = 0
        for offset, weight in zip(offsets, weights):
            total = total + weight * values(points + offset)
        return total
