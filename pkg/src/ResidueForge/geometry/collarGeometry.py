from enum import Enum
from fractions import Fraction
import sympy as sp
from ResidueForge import CliffordElement, XiPolynomial, defaultRing, xiName, setup_logger

collar_logger = setup_logger.logger.getChild("collar")

DeltaConvention = Enum("DeltaConvention", "PRINTED SPIN")


class _CollarMetric:
    """Symbolic collar metric g = h(x_n)^-1 (dx_1^2 + ... + dx_{n-1}^2) + dx_n^2.

    The boundary metric is flat to first order at x0 in normal coordinates, so only
    h enters. Everything is evaluated at x_n = 0 with h(0) = 1 and h'(0) = h1.
    """

    def __init__(self, dimension):
        self.dimension = dimension
        self.coordinates = sp.symbols("x1:" + str(dimension + 1))
        self.normal = self.coordinates[-1]
        self.h = sp.Function("h")(self.normal)
        self.h1 = sp.Symbol("h1")
        self.metric = sp.diag(*([1 / self.h] * (dimension - 1) + [1]))
        self.inverse = self.metric.inv()
        # columns are the orthonormal frame e~_a = sqrt(h) d_a, e~_n = d_n
        self.frame = sp.diag(*([sp.sqrt(self.h)] * (dimension - 1) + [1]))
        self.christoffel = self._christoffel()

    def atBoundaryPoint(self, expression):
        expression = sp.sympify(expression).subs(sp.Derivative(self.h, self.normal), self.h1)
        expression = expression.subs(self.h, 1).subs(self.normal, 0)
        return sp.expand(sp.simplify(expression))

    def _christoffel(self):
        n = self.dimension
        x = self.coordinates
        g = self.metric
        gamma = [[[0] * n for _ in range(n)] for _ in range(n)]
        for k in range(n):
            for i in range(n):
                for j in range(n):
                    gamma[k][i][j] = sum(self.inverse[k, l] * (sp.diff(g[j, l], x[i]) + sp.diff(g[i, l], x[j])
                                                               - sp.diff(g[i, j], x[l])) for l in range(n)) / 2
        return gamma

    def contractedChristoffel(self, k):
        n = self.dimension
        return sum(self.inverse[i, j] * self.christoffel[k][i][j] for i in range(n) for j in range(n))

    def connectionForm(self, i, s, t):
        """omega_{s,t}(e~_i) = g(nabla_{e~_i} e~_s, e~_t)."""
        n = self.dimension
        x = self.coordinates
        E = self.frame
        derivative = []
        for nu in range(n):
            total = 0
            for mu in range(n):
                total += E[mu, i] * (sp.diff(E[nu, s], x[mu])
                                     + sum(self.christoffel[nu][mu][rho] * E[rho, s] for rho in range(n)))
            derivative.append(total)
        return sum(self.metric[nu, lam] * derivative[nu] * E[lam, t] for nu in range(n) for lam in range(n))


def _toScalar(expression, symbol, ring):
    """Converts a sympy polynomial in h1 with rational coefficients to a Scalar."""
    result = ring.zero()
    for (degree,), coefficient in sp.Poly(expression, symbol).terms():
        coefficient = sp.Rational(coefficient)
        result = result + (ring.symbol("h1") ** degree).scale(Fraction(int(coefficient.p), int(coefficient.q)))
    return result


class JetStore:
    """First x_n-jets of the collar geometry at the boundary point x0.

    Built once per dimension and convention; read-only afterwards.

    :param dimension: manifold dimension, only 4 is supported
    :type dimension: int
    :param deltaConvention: how the contraction delta^k xi_k in sigma_{-3}(D^{-2}) is resolved
    :type deltaConvention: DeltaConvention
    """

    class UnsupportedDimensionError(Exception):
        pass

    def __init__(self, dimension=4, deltaConvention=DeltaConvention.PRINTED, ring=defaultRing):
        if dimension != 4:
            raise JetStore.UnsupportedDimensionError("Boundary jets are only available for dimension 4, not " + str(dimension))
        self.dimension = dimension
        self.deltaConvention = deltaConvention
        self.ring = ring
        self.h1 = ring.symbol("h1")

        collar = _CollarMetric(dimension)
        n = dimension
        h1 = collar.h1
        self.christoffels = [_toScalar(collar.atBoundaryPoint(collar.contractedChristoffel(k)), h1, ring) for k in range(n)]
        self.connection = {}
        for i in range(n):
            for s in range(n):
                for t in range(n):
                    value = _toScalar(collar.atBoundaryPoint(collar.connectionForm(i, s, t)), h1, ring)
                    if value:
                        self.connection[(i + 1, s + 1, t + 1)] = value
        # c(dx_j) = sqrt(h) c(e~_j), the dual of dx_j being h d_j
        self.cotangentFrameJets = [_toScalar(collar.atBoundaryPoint(sp.diff(collar.frame[j, j], collar.normal)), h1, ring)
                                   for j in range(n)]
        self.inverseMetricJets = [_toScalar(collar.atBoundaryPoint(sp.diff(collar.inverse[j, j], collar.normal)), h1, ring)
                                  for j in range(n)]
        self.sigma0D = self._sigma0FromConnection()
        collar_logger.info(f"Built collar jets for n={n}: Gamma^k={[str(c) for c in self.christoffels]}, "
                           f"sigma0(D)={self.sigma0D}")

    def _basis(self, index):
        return CliffordElement.basis(index, self.dimension, self.ring)

    def _sigma0FromConnection(self):
        total = CliffordElement(self.dimension, self.ring)
        for (i, s, t), value in self.connection.items():
            total = total + (self._basis(i) * self._basis(s) * self._basis(t)).scale(value)
        return total.scale(Fraction(1, 4))

    def dXjNormSquared(self, j):
        """d_{x_j}|xi|^2 at x0: zero tangentially, h1 |xi'|^2 for j = n.

        :rtype: XiPolynomial
        """
        total = self.ring.zero()
        if j == self.dimension:
            for alpha in range(1, self.dimension + 1):
                total = total + self.inverseMetricJets[alpha - 1] * self.ring.symbol(xiName(alpha)) ** 2
        return XiPolynomial.fromScalar(total, self.dimension, self.ring)

    def dXnCliffordXi(self):
        """d_{x_n} c(xi) at x0, which equals (h1/2) c(xi')."""
        components = [self.cotangentFrameJets[j] * self.ring.symbol(xiName(j + 1)) for j in range(self.dimension)]
        return XiPolynomial(CliffordElement.vector(components, self.ring))

    def gammaContraction(self):
        """sum_k Gamma^k xi_k at x0."""
        total = self.ring.zero()
        for k, value in enumerate(self.christoffels):
            total = total + value * self.ring.symbol(xiName(k + 1))
        return XiPolynomial.fromScalar(total, self.dimension, self.ring)

    def spinConnection(self, components):
        """L(Z) = 1/4 sum_{s,t} omega_{s,t}(Z) c(e_s) c(e_t) for Z = sum_k Z_k d_k at x0.

        :param components: the components Z_k, Scalars or XiPolynomial-free numbers
        :type components: list of Scalar
        :rtype: CliffordElement
        """
        total = CliffordElement(self.dimension, self.ring)
        for (i, s, t), value in self.connection.items():
            total = total + (self._basis(s) * self._basis(t)).scale(value * components[i - 1])
        return total.scale(Fraction(1, 4))

    def spinContraction(self):
        """sigma^k xi_k, the spin connection evaluated on the covector xi."""
        components = [self.ring.symbol(xiName(k)) for k in range(1, self.dimension + 1)]
        return XiPolynomial(self.spinConnection(components))

    def deltaContraction(self):
        """delta^k xi_k in sigma_{-3}(D^{-2}) under the configured convention."""
        contraction = self.spinContraction()
        if self.deltaConvention == DeltaConvention.PRINTED:
            contraction = contraction + self.ring.symbol(xiName(self.dimension)).scale(Fraction(-1, 2)) * self.h1
        return contraction

    def metricDerivativeContraction(self):
        """xi^j xi_alpha xi_beta d_{x_j} g^{alpha beta} at x0, only j = n contributes."""
        return self.dXjNormSquared(self.dimension) * self.ring.symbol(xiName(self.dimension))


_jetCache = {}


def buildJets(dimension=4, deltaConvention=DeltaConvention.PRINTED, ring=defaultRing):
    """Returns the (cached) jet store for a dimension and delta convention.

    :raises JetStore.UnsupportedDimensionError: for dimensions other than 4
    :rtype: JetStore
    """
    key = (dimension, deltaConvention, ring.name)
    if key not in _jetCache:
        _jetCache[key] = JetStore(dimension, deltaConvention, ring)
    return _jetCache[key]


def christoffelContractions(jets):
    """Gamma^k at x0, keyed by k = 1..n."""
    return {k + 1: value for k, value in enumerate(jets.christoffels)}


def connectionForms(jets):
    """Nonzero omega_{s,t}(e~_i) at x0, keyed by (i, s, t)."""
    return dict(jets.connection)
