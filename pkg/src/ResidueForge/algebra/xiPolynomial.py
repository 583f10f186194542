from .scalarRing import defaultRing
from .cliffordAlgebra import CliffordElement


def xiName(index):
    return "xi" + str(index)


def xiNames(dimension):
    return [xiName(k) for k in range(1, dimension + 1)]


class XiPolynomial:
    """Polynomial in the cotangent variables xi_1..xi_n with Clifford coefficients.

    Stored as a single :class:`CliffordElement` whose Scalar coefficients carry
    the ``xi<k>`` indeterminates next to all other symbols.

    :param element: the Clifford element holding the polynomial
    :type element: CliffordElement
    """

    def __init__(self, element):
        self.element = element

    @property
    def dimension(self):
        return self.element.dimension

    @property
    def ring(self):
        return self.element.ring

    @classmethod
    def constant(cls, element):
        return cls(element)

    @classmethod
    def zero(cls, dimension=4, ring=defaultRing):
        return cls(CliffordElement(dimension, ring))

    @classmethod
    def one(cls, dimension=4, ring=defaultRing):
        return cls(CliffordElement.identity(dimension, ring))

    @classmethod
    def fromScalar(cls, value, dimension=4, ring=defaultRing):
        return cls(CliffordElement.fromScalar(value, dimension, ring))

    @classmethod
    def xi(cls, index, dimension=4, ring=defaultRing):
        return cls.fromScalar(ring.symbol(xiName(index)), dimension, ring)

    @classmethod
    def cliffordXi(cls, dimension=4, ring=defaultRing, tangentialOnly=False):
        """c(xi) = sum_k xi_k c(e_k), or c(xi') when tangentialOnly is set."""
        last = dimension - 1 if tangentialOnly else dimension
        components = [ring.symbol(xiName(k)) for k in range(1, last + 1)]
        components += [ring.zero()] * (dimension - last)
        return cls(CliffordElement.vector(components, ring))

    @classmethod
    def normSquared(cls, dimension=4, ring=defaultRing, tangentialOnly=False):
        """|xi|^2, or |xi'|^2 when tangentialOnly is set."""
        last = dimension - 1 if tangentialOnly else dimension
        total = ring.zero()
        for k in range(1, last + 1):
            total = total + ring.symbol(xiName(k)) ** 2
        return cls.fromScalar(total, dimension, ring)

    def isZero(self):
        return self.element.isZero()

    def __add__(self, other):
        return XiPolynomial(self.element + _unwrap(other))

    __radd__ = __add__

    def __neg__(self):
        return XiPolynomial(-self.element)

    def __sub__(self, other):
        return XiPolynomial(self.element - _unwrap(other))

    def __mul__(self, other):
        return XiPolynomial(self.element * _unwrap(other))

    def __rmul__(self, other):
        if isinstance(other, CliffordElement):
            return XiPolynomial(other * self.element)
        return XiPolynomial(self.element.scale(other))

    def scale(self, factor):
        return XiPolynomial(self.element.scale(factor))

    def xiDerivative(self, index):
        """Formal partial derivative in xi_index."""
        name = xiName(index)
        return XiPolynomial(self.element.mapCoefficients(lambda c: c.derivative(name)))

    def degrees(self):
        """Set of total xi-degrees of all monomials."""
        names = set(xiNames(self.dimension))
        found = set()
        for coefficient in self.element.terms.values():
            for monomial in coefficient.terms:
                found.add(sum(e for n, e in monomial if n in names))
        return found

    def degree(self):
        found = self.degrees()
        return max(found) if found else -1

    def isHomogeneous(self, degree):
        return self.degrees() <= {degree}

    def replace(self, mapping):
        return XiPolynomial(self.element.mapCoefficients(lambda c: c.replace(mapping)))

    def collectConormal(self):
        """Splits off the powers of xi_n.

        :return: map from power m to the Clifford coefficient of xi_n^m
        :rtype: dict int -> CliffordElement
        """
        name = xiName(self.dimension)
        collected = {}
        for blade, coefficient in self.element.terms.items():
            for power, part in coefficient.collect(name).items():
                collected.setdefault(power, {})[blade] = part
        return {power: CliffordElement(self.dimension, self.ring, terms) for power, terms in collected.items()}

    def __eq__(self, other):
        if isinstance(other, XiPolynomial):
            return self.element == other.element
        return self.element == other

    def __hash__(self):
        return hash(self.element)

    def __str__(self):
        return str(self.element)


def _unwrap(value):
    return value.element if isinstance(value, XiPolynomial) else value
