from fractions import Fraction
from functools import lru_cache
from math import factorial
from ResidueForge import XiPolynomial, CliffordElement, BoundaryRational, IMAG, setup_logger

symbols_logger = setup_logger.logger.getChild("symbols")


@lru_cache(maxsize=None)
def _normSquaredPower(dimension, ring, power):
    return XiPolynomial.normSquared(dimension, ring) if power == 1 else \
        _normSquaredPower(dimension, ring, power - 1) * XiPolynomial.normSquared(dimension, ring)


class SymbolTerm:
    """Homogeneous symbol component N(xi) / |xi|^(2c) at the boundary point x0.

    The numerator is a Clifford-valued polynomial in xi whose degree equals
    order + 2c. Optionally the term carries its first x_n-derivative at x0
    as a companion SymbolTerm; tangential x-derivatives vanish at x0.

    :param numerator: the numerator polynomial
    :type numerator: XiPolynomial
    :param normPower: the power c of |xi|^2 in the denominator
    :type normPower: int
    :param order: homogeneity degree in xi
    :type order: int
    :param xnJet: d_{x_n} of this term at x0, None if unknown
    :type xnJet: SymbolTerm, optional
    """

    class MissingJetError(Exception):
        pass

    class HomogeneityError(Exception):
        pass

    def __init__(self, numerator, normPower, order, xnJet=None):
        if normPower < 0:
            raise ValueError("Negative power of |xi|^2")
        if not numerator.isZero() and not numerator.isHomogeneous(order + 2 * normPower):
            raise SymbolTerm.HomogeneityError(
                "Numerator degrees " + str(sorted(numerator.degrees())) + " do not match order "
                + str(order) + " with |xi|^" + str(2 * normPower))
        self.numerator = numerator
        self.normPower = normPower
        self.order = order
        self.xnJet = xnJet

    @property
    def dimension(self):
        return self.numerator.dimension

    @property
    def ring(self):
        return self.numerator.ring

    @classmethod
    def zero(cls, order, dimension=4, ring=None):
        from ResidueForge import defaultRing
        ring = ring or defaultRing
        jet = cls(XiPolynomial.zero(dimension, ring), 0, order)
        return cls(XiPolynomial.zero(dimension, ring), 0, order, jet)

    @classmethod
    def normPowerTerm(cls, power, jets):
        """|xi|^(-2 power) with its x_n-jet from d_{x_n}|xi|^2."""
        one = XiPolynomial.one(jets.dimension, jets.ring)
        jet = cls(jets.dXjNormSquared(jets.dimension).scale(-power), power + 1, -2 * power)
        return cls(one, power, -2 * power, jet)

    @classmethod
    def cliffordXiTerm(cls, jets):
        """c(xi) with its x_n-jet."""
        jet = cls(jets.dXnCliffordXi(), 0, 1)
        return cls(XiPolynomial.cliffordXi(jets.dimension, jets.ring), 0, 1, jet)

    @classmethod
    def normSquaredTerm(cls, jets):
        jet = cls(jets.dXjNormSquared(jets.dimension), 0, 2)
        return cls(XiPolynomial.normSquared(jets.dimension, jets.ring), 0, 2, jet)

    @classmethod
    def frozenPolynomial(cls, numerator, order):
        """Polynomial with x-independent coefficients; its jet is zero."""
        jet = cls(XiPolynomial.zero(numerator.dimension, numerator.ring), 0, order)
        return cls(numerator, 0, order, jet)

    @classmethod
    def constant(cls, element, jet=None):
        """Order-0 Clifford constant; the jet is unknown unless given."""
        jetTerm = None if jet is None else cls(XiPolynomial(jet), 0, 0)
        return cls(XiPolynomial(element), 0, 0, jetTerm)

    def isZero(self):
        return self.numerator.isZero()

    def _lifted(self, normPower):
        if normPower == self.normPower or self.isZero():
            return self.numerator
        return self.numerator * _normSquaredPower(self.dimension, self.ring, normPower - self.normPower)

    def __add__(self, other):
        if other.order != self.order:
            raise ValueError("Cannot add symbols of orders " + str(self.order) + " and " + str(other.order))
        if other.isZero() and other.xnJet is not None and self.xnJet is not None:
            return SymbolTerm(self.numerator, self.normPower, self.order, self.xnJet + other.xnJet)
        if self.isZero() and other.xnJet is not None and self.xnJet is not None:
            return SymbolTerm(other.numerator, other.normPower, other.order, self.xnJet + other.xnJet)
        power = max(self.normPower, other.normPower)
        jet = None
        if self.xnJet is not None and other.xnJet is not None:
            jet = self.xnJet + other.xnJet
        numerator = self._lifted(power) + other._lifted(power)
        if numerator.isZero():
            power = 0
        return SymbolTerm(numerator, power, self.order, jet)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, factor):
        """Multiplies by an x-independent Scalar or number; the jet follows."""
        jet = None if self.xnJet is None else self.xnJet.scale(factor)
        return SymbolTerm(self.numerator.scale(factor), self.normPower, self.order, jet)

    def __mul__(self, other):
        if not isinstance(other, SymbolTerm):
            return self.scale(other)
        numerator = self.numerator * other.numerator
        if numerator.isZero():
            return SymbolTerm.zero(self.order + other.order, self.dimension, self.ring)
        jet = None
        if self.xnJet is not None and other.xnJet is not None:
            jet = self.xnJet * other + self * other.xnJet
        return SymbolTerm(numerator, self.normPower + other.normPower, self.order + other.order, jet)

    def __rmul__(self, other):
        return self.scale(other)

    def xiDerivative(self, index):
        """d_{xi_index} by the quotient rule; lowers the order by one."""
        jet = None if self.xnJet is None else self.xnJet.xiDerivative(index)
        derived = self.numerator.xiDerivative(index)
        if self.normPower == 0:
            return SymbolTerm(derived, 0, self.order - 1, jet)
        xi = XiPolynomial.xi(index, self.dimension, self.ring)
        numerator = derived * XiPolynomial.normSquared(self.dimension, self.ring) \
            - xi * self.numerator.scale(2 * self.normPower)
        return SymbolTerm(numerator, self.normPower + 1, self.order - 1, jet)

    def xDerivative(self, slot):
        """d_{x_slot} at x0: zero for tangential slots, the stored jet for slot n.

        :raises SymbolTerm.MissingJetError: if the x_n-jet is not known
        """
        if slot != self.dimension:
            return SymbolTerm.zero(self.order, self.dimension, self.ring)
        if self.isZero():
            return SymbolTerm.zero(self.order, self.dimension, self.ring)
        if self.xnJet is None:
            raise SymbolTerm.MissingJetError("No x_n-jet stored for the order " + str(self.order) + " term")
        return self.xnJet

    def restrictBoundary(self):
        """Restriction to |xi'| = 1 as a rational function of xi_n.

        |xi|^2 becomes 1 + xi_n^2 in the denominator; the numerator keeps its
        xi' monomials for the sphere integration.

        :rtype: BoundaryRational
        """
        return BoundaryRational.fromPowers(self.numerator.collectConormal(), self.normPower,
                                           self.dimension, self.ring)

    def __eq__(self, other):
        if not isinstance(other, SymbolTerm):
            return NotImplemented
        if self.order != other.order:
            return False
        power = max(self.normPower, other.normPower)
        return self._lifted(power) == other._lifted(power)

    __hash__ = None

    def __str__(self):
        return "[" + str(self.numerator) + "] / |xi|^" + str(2 * self.normPower)


def restrictBoundary(term):
    return term.restrictBoundary()


class SymbolExpansion:
    """Truncated graded symbol: order -> SymbolTerm for the known orders.

    :param tag: name of the operator
    :type tag: string
    :param terms: the homogeneous components
    :type terms: dict int -> SymbolTerm
    """

    class InsufficientDepthError(Exception):
        pass

    def __init__(self, tag, terms):
        self.tag = tag
        self.terms = dict(terms)
        if not self.terms:
            raise ValueError("Empty symbol expansion for " + str(tag))

    @property
    def leadingOrder(self):
        return max(self.terms)

    @property
    def lowestOrder(self):
        return min(self.terms)

    @property
    def dimension(self):
        return self.terms[self.leadingOrder].dimension

    @property
    def ring(self):
        return self.terms[self.leadingOrder].ring

    def orders(self):
        return sorted(self.terms, reverse=True)

    def __contains__(self, order):
        return self.lowestOrder <= order <= self.leadingOrder

    def __getitem__(self, order):
        if order > self.leadingOrder:
            return SymbolTerm.zero(order, self.dimension, self.ring)
        if order < self.lowestOrder:
            raise SymbolExpansion.InsufficientDepthError(
                "Symbol of " + str(self.tag) + " is only known down to order " + str(self.lowestOrder)
                + ", order " + str(order) + " requested")
        return self.terms.get(order, SymbolTerm.zero(order, self.dimension, self.ring))

    def truncated(self, lowestOrder):
        return SymbolExpansion(self.tag, {o: t for o, t in self.terms.items() if o >= lowestOrder})

    def __str__(self):
        return str(self.tag) + ": " + "; ".join("order " + str(o) + ": " + str(self.terms[o]) for o in self.orders())


def compose(p, q, lowestOrder, tag=None):
    """Symbol of the composition P o Q down to the given order.

    sum over alpha of 1/alpha! d_xi^alpha p * D_x^alpha q with D_x = -i d_x. Only
    alpha supported on the x_n slot contributes, tangential x-derivatives vanish at x0.

    :param p: symbol of the left operator
    :type p: SymbolExpansion
    :param q: symbol of the right operator
    :type q: SymbolExpansion
    :param lowestOrder: lowest order to compute
    :type lowestOrder: int
    :raises SymbolExpansion.InsufficientDepthError: if p or q are not known deep enough
    :rtype: SymbolExpansion
    """
    n = p.dimension
    leading = p.leadingOrder + q.leadingOrder
    if lowestOrder - q.leadingOrder < p.lowestOrder or lowestOrder - p.leadingOrder < q.lowestOrder:
        raise SymbolExpansion.InsufficientDepthError(
            "Composition of " + str(p.tag) + " and " + str(q.tag) + " down to order " + str(lowestOrder)
            + " needs more symbol orders than stored")
    terms = {}
    for order in range(leading, lowestOrder - 1, -1):
        total = SymbolTerm.zero(order, n, p.ring)
        for a in range(leading - order + 1):
            factor = IMAG ** a * (-1) ** a * Fraction(1, factorial(a))
            for pOrder in p.orders():
                qOrder = order + a - pOrder
                if qOrder > q.leadingOrder:
                    continue
                left = p[pOrder]
                for _ in range(a):
                    left = left.xiDerivative(n)
                if left.isZero():
                    continue
                right = q[qOrder]
                for _ in range(a):
                    right = right.xDerivative(n)
                if right.isZero():
                    continue
                total = total + (left * right).scale(factor)
        terms[order] = total
    tag = tag or "(" + str(p.tag) + ")o(" + str(q.tag) + ")"
    symbols_logger.debug(f"Composed {tag} down to order {lowestOrder}")
    return SymbolExpansion(tag, terms)
