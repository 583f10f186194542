from math import comb
from ResidueForge import CliffordElement, GaussianRational, IMAG, defaultRing, setup_logger

xin_logger = setup_logger.logger.getChild("xinRational")

MINUS_IMAG = -IMAG


def _trim(poly):
    while poly and poly[-1].isZero():
        poly.pop()
    return poly


def _numericLinearPower(root, power):
    """Coefficients of (x - root)^power, lowest first."""
    coefficients = [GaussianRational(1)]
    for _ in range(power):
        shifted = [GaussianRational(0)] + coefficients
        for k, value in enumerate(coefficients):
            shifted[k] = shifted[k] - root * value
        coefficients = shifted
    return coefficients


def _numericProduct(first, second):
    result = [GaussianRational(0)] * (len(first) + len(second) - 1)
    for i, a in enumerate(first):
        for j, b in enumerate(second):
            result[i + j] = result[i + j] + a * b
    return result


def _mulNumeric(poly, numeric):
    """Clifford polynomial times numeric polynomial."""
    if not poly:
        return []
    result = [None] * (len(poly) + len(numeric) - 1)
    for i, element in enumerate(poly):
        for j, value in enumerate(numeric):
            if not value:
                continue
            term = element.scale(value)
            result[i + j] = term if result[i + j] is None else result[i + j] + term
    dimension, ring = poly[0].dimension, poly[0].ring
    return _trim([CliffordElement(dimension, ring) if r is None else r for r in result])


def _addPolys(first, second):
    length = max(len(first), len(second))
    result = []
    for k in range(length):
        if k < len(first) and k < len(second):
            result.append(first[k] + second[k])
        elif k < len(first):
            result.append(first[k])
        else:
            result.append(second[k])
    return _trim(result)


def _evaluate(poly, point):
    """Horner evaluation of a Clifford polynomial at an exact number."""
    value = None
    for element in reversed(poly):
        value = element if value is None else value.scale(point) + element
    return value


def _divideLinear(poly, root):
    """Quotient of poly by (x - root); the remainder is assumed to vanish."""
    degree = len(poly) - 1
    quotient = [None] * degree
    carry = None
    for k in range(degree, 0, -1):
        carry = poly[k] if carry is None else poly[k] + carry.scale(root)
        quotient[k - 1] = carry
    return _trim(quotient)


def _taylorShift(poly, root):
    """Coefficients of p(root + t) in t."""
    shifted = []
    for k in range(len(poly)):
        total = None
        for m in range(k, len(poly)):
            term = poly[m].scale(root ** (m - k) * comb(m, k))
            total = term if total is None else total + term
        shifted.append(total)
    return shifted


def _inversePowerSeries(center, power, count):
    """First `count` Taylor coefficients of (center + t)^(-power)."""
    if power == 0:
        return [GaussianRational(1)] + [GaussianRational(0)] * (count - 1)
    series = []
    for k in range(count):
        binomial = comb(power + k - 1, k) * (-1) ** k
        series.append(center ** (-power - k) * binomial)
    return series


class PartialFractions:
    """Decomposition polynomial + sum_k A_k/(x-i)^k + sum_k B_k/(x+i)^k.

    :param polynomial: polynomial part, lowest power first
    :type polynomial: list of CliffordElement
    :param plus: A_k for the pole at i
    :type plus: dict int -> CliffordElement
    :param minus: B_k for the pole at -i
    :type minus: dict int -> CliffordElement
    """

    def __init__(self, polynomial, plus, minus, dimension, ring):
        self.polynomial = polynomial
        self.plus = plus
        self.minus = minus
        self.dimension = dimension
        self.ring = ring

    def plusPart(self):
        order = max(self.plus, default=0)
        numerator = []
        for k, coefficient in self.plus.items():
            numerator = _addPolys(numerator, _mulNumeric([coefficient], _numericLinearPower(IMAG, order - k)))
        return BoundaryRational(numerator, order, 0, self.dimension, self.ring).reduce()

    def minusPart(self):
        order = max(self.minus, default=0)
        numerator = []
        for k, coefficient in self.minus.items():
            numerator = _addPolys(numerator, _mulNumeric([coefficient], _numericLinearPower(MINUS_IMAG, order - k)))
        return BoundaryRational(numerator, 0, order, self.dimension, self.ring).reduce()

    def polynomialPart(self):
        return BoundaryRational(list(self.polynomial), 0, 0, self.dimension, self.ring)

    def recombine(self):
        return self.polynomialPart() + self.plusPart() + self.minusPart()


class BoundaryRational:
    """Clifford-valued rational function of xi_n with poles only at +i and -i.

    Represents N(xi_n) / ((xi_n - i)^a (xi_n + i)^b). The numerator is a list
    of Clifford coefficients, lowest power first; its Scalars may still carry
    the tangential xi variables and every other symbol.

    :param numerator: numerator coefficients
    :type numerator: list of CliffordElement
    :param plusOrder: pole order a at xi_n = i
    :type plusOrder: int
    :param minusOrder: pole order b at xi_n = -i
    :type minusOrder: int
    """

    class NonIntegrableError(Exception):
        pass

    class RealAxisPoleError(Exception):
        pass

    def __init__(self, numerator, plusOrder, minusOrder, dimension=4, ring=defaultRing):
        if plusOrder < 0 or minusOrder < 0:
            raise ValueError("Pole orders must be nonnegative")
        self.numerator = _trim(list(numerator))
        self.plusOrder = plusOrder
        self.minusOrder = minusOrder
        self.dimension = dimension
        self.ring = ring
        if not self.numerator:
            self.plusOrder = self.minusOrder = 0

    @classmethod
    def fromPowers(cls, powers, normPower, dimension=4, ring=defaultRing):
        """Builds sum_m N_m xi_n^m / (1 + xi_n^2)^c.

        :param powers: Clifford coefficient per power of xi_n
        :type powers: dict int -> CliffordElement
        :param normPower: c
        :type normPower: int
        :rtype: BoundaryRational
        """
        degree = max(powers, default=-1)
        numerator = [powers.get(m, CliffordElement(dimension, ring)) for m in range(degree + 1)]
        return cls(numerator, normPower, normPower, dimension, ring).reduce()

    @classmethod
    def fromPoles(cls, numerator, poles, dimension=4, ring=defaultRing):
        """Builds numerator / prod (xi_n - p)^k from explicit poles.

        :param poles: pole location and multiplicity
        :type poles: dict GaussianRational -> int
        :raises BoundaryRational.RealAxisPoleError: for a pole on the real line
        """
        plus = minus = 0
        for location, multiplicity in poles.items():
            location = GaussianRational.promote(location)
            if location.im == 0:
                raise BoundaryRational.RealAxisPoleError("Pole at real point " + str(location))
            if location == IMAG:
                plus += multiplicity
            elif location == MINUS_IMAG:
                minus += multiplicity
            else:
                raise ValueError("Only poles at +i and -i are supported, got " + str(location))
        return cls(numerator, plus, minus, dimension, ring).reduce()

    @classmethod
    def constant(cls, element):
        return cls([element], 0, 0, element.dimension, element.ring)

    def _zeroElement(self):
        return CliffordElement(self.dimension, self.ring)

    def isZero(self):
        return not self.numerator

    @property
    def numeratorDegree(self):
        return len(self.numerator) - 1

    def reduce(self):
        """Cancels common factors (xi_n - i), (xi_n + i) of numerator and denominator."""
        numerator = list(self.numerator)
        a, b = self.plusOrder, self.minusOrder
        while a > 0 and numerator and _evaluate(numerator, IMAG).isZero():
            numerator = _divideLinear(numerator, IMAG)
            a -= 1
        while b > 0 and numerator and _evaluate(numerator, MINUS_IMAG).isZero():
            numerator = _divideLinear(numerator, MINUS_IMAG)
            b -= 1
        return BoundaryRational(numerator, a, b, self.dimension, self.ring)

    def _lifted(self, plusOrder, minusOrder):
        """Numerator rewritten over the larger denominator."""
        factor = _numericProduct(_numericLinearPower(IMAG, plusOrder - self.plusOrder),
                                 _numericLinearPower(MINUS_IMAG, minusOrder - self.minusOrder))
        return _mulNumeric(self.numerator, factor)

    def __add__(self, other):
        if self.isZero():
            return other
        if other.isZero():
            return self
        a = max(self.plusOrder, other.plusOrder)
        b = max(self.minusOrder, other.minusOrder)
        numerator = _addPolys(self._lifted(a, b), other._lifted(a, b))
        return BoundaryRational(numerator, a, b, self.dimension, self.ring).reduce()

    def __neg__(self):
        return BoundaryRational([-c for c in self.numerator], self.plusOrder, self.minusOrder, self.dimension, self.ring)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, factor):
        return BoundaryRational([c.scale(factor) for c in self.numerator], self.plusOrder, self.minusOrder,
                                self.dimension, self.ring)

    def __mul__(self, other):
        if not isinstance(other, BoundaryRational):
            return self.scale(other)
        return self._combine(other, lambda x, y: x * y)

    def __rmul__(self, other):
        return self.scale(other)

    def tracePairing(self, other):
        """Rational function xi_n -> spinorTrace(self * other), as a grade-0 BoundaryRational.

        The trace acts on the xi_n-independent Clifford coefficients, so it
        commutes with every xi_n operation applied afterwards.
        """
        return self._combine(other, lambda x, y: CliffordElement.fromScalar(x.traceProduct(y), self.dimension, self.ring))

    def _combine(self, other, product):
        if self.isZero() or other.isZero():
            return BoundaryRational([], 0, 0, self.dimension, self.ring)
        result = [None] * (len(self.numerator) + len(other.numerator) - 1)
        for i, x in enumerate(self.numerator):
            if x.isZero():
                continue
            for j, y in enumerate(other.numerator):
                if y.isZero():
                    continue
                term = product(x, y)
                result[i + j] = term if result[i + j] is None else result[i + j] + term
        numerator = [self._zeroElement() if r is None else r for r in result]
        return BoundaryRational(numerator, self.plusOrder + other.plusOrder, self.minusOrder + other.minusOrder,
                                self.dimension, self.ring).reduce()

    def derivative(self, order=1):
        """Exact xi_n derivative of the given order, reduced.

        :param order: how often to differentiate
        :type order: int
        :rtype: BoundaryRational
        """
        current = self
        for _ in range(order):
            current = current._derivativeOnce()
        return current

    def _derivativeOnce(self):
        if self.isZero():
            return self
        a, b = self.plusOrder, self.minusOrder
        derived = [c.scale(k) for k, c in enumerate(self.numerator)][1:]
        # N'(x^2+1) - a N (x+i) - b N (x-i)
        numerator = _mulNumeric(derived, [GaussianRational(1), GaussianRational(0), GaussianRational(1)])
        if a:
            numerator = _addPolys(numerator, _mulNumeric(self.numerator, [IMAG * (-a), GaussianRational(-a)]))
        if b:
            numerator = _addPolys(numerator, _mulNumeric(self.numerator, [IMAG * b, GaussianRational(-b)]))
        return BoundaryRational(numerator, a + 1, b + 1, self.dimension, self.ring).reduce()

    def _principalPart(self, root, poleOrder, otherCenter, otherOrder):
        shifted = _taylorShift(self.numerator, root)
        series = _inversePowerSeries(otherCenter, otherOrder, poleOrder)
        coefficients = {}
        for j in range(1, poleOrder + 1):
            k = poleOrder - j
            total = self._zeroElement()
            for l in range(min(k, len(shifted) - 1) + 1):
                total = total + shifted[l].scale(series[k - l])
            if total:
                coefficients[j] = total
        return coefficients

    def partialFractions(self):
        """Exact decomposition into polynomial, (xi_n - i)-pole and (xi_n + i)-pole parts.

        :rtype: PartialFractions
        """
        reduced = self.reduce()
        a, b = reduced.plusOrder, reduced.minusOrder
        plus = reduced._principalPart(IMAG, a, IMAG * 2, b) if a else {}
        minus = reduced._principalPart(MINUS_IMAG, b, IMAG * (-2), a) if b else {}
        polynomial = reduced._polynomialQuotient()
        return PartialFractions(polynomial, plus, minus, self.dimension, self.ring)

    def _polynomialQuotient(self):
        divisor = _numericProduct(_numericLinearPower(IMAG, self.plusOrder), _numericLinearPower(MINUS_IMAG, self.minusOrder))
        remainder = list(self.numerator)
        degree = len(divisor) - 1
        if len(remainder) - 1 < degree:
            return []
        quotient = [self._zeroElement() for _ in range(len(remainder) - degree)]
        for k in range(len(remainder) - 1, degree - 1, -1):
            leading = remainder[k]
            if leading.isZero():
                continue
            quotient[k - degree] = leading
            for j, value in enumerate(divisor):
                if value:
                    remainder[k - degree + j] = remainder[k - degree + j] - leading.scale(value)
        return _trim(quotient)

    def piPlus(self):
        """Projection keeping only the (xi_n - i)-pole part.

        :rtype: BoundaryRational
        """
        return self.partialFractions().plusPart()

    def piMinus(self):
        """Complementary projection: the (xi_n + i)-pole part."""
        return self.partialFractions().minusPart()

    def residueAtI(self):
        reduced = self.reduce()
        if reduced.plusOrder == 0:
            return self._zeroElement()
        return reduced._principalPart(IMAG, reduced.plusOrder, IMAG * 2, reduced.minusOrder).get(1, self._zeroElement())

    def contourIntegralUpper(self):
        """2 pi i times the residue at xi_n = i; pi stays symbolic.

        :rtype: CliffordElement
        """
        twoPiI = self.ring.symbol("pi").scale(IMAG * 2)
        return self.residueAtI().scale(twoPiI)

    def lineIntegral(self):
        """Integral over the real xi_n line, closing the contour in the upper half plane.

        :raises BoundaryRational.NonIntegrableError: if the numerator degree exceeds a + b - 2
        :rtype: CliffordElement
        """
        reduced = self.reduce()
        if reduced.isZero():
            return self._zeroElement()
        if reduced.numeratorDegree > reduced.plusOrder + reduced.minusOrder - 2:
            raise BoundaryRational.NonIntegrableError(
                "Numerator degree " + str(reduced.numeratorDegree) + " exceeds "
                + str(reduced.plusOrder + reduced.minusOrder - 2) + ", the integral diverges")
        return reduced.contourIntegralUpper()

    def mapCoefficients(self, function):
        return BoundaryRational([c.mapCoefficients(function) for c in self.numerator], self.plusOrder,
                                self.minusOrder, self.dimension, self.ring).reduce()

    def __eq__(self, other):
        if not isinstance(other, BoundaryRational):
            return NotImplemented
        return (self - other).isZero()

    __hash__ = None

    def __str__(self):
        terms = " + ".join("[" + str(c) + "]*xn^" + str(k) for k, c in enumerate(self.numerator) if c)
        return "(" + (terms or "0") + ") / ((xn-i)^" + str(self.plusOrder) + "(xn+i)^" + str(self.minusOrder) + ")"
