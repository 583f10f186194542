import math
from fractions import Fraction
from scipy.special import gamma
from ResidueForge import Scalar, defaultRing, xiName, setup_logger

sphere_logger = setup_logger.logger.getChild("sphereMoments")


def volumeSymbol(sphereDimension):
    """Name of the symbolic volume of the unit sphere in R^sphereDimension."""
    return "Omega" + str(sphereDimension)


def sphereVolume(ambientDimension):
    """Numeric volume 2 pi^(d/2) / Gamma(d/2) of the unit sphere in R^d."""
    return 2 * math.pi ** (ambientDimension / 2) / gamma(ambientDimension / 2)


def normalizationBindings():
    """Numeric values of the transcendental symbols.

    Omega3 is the area of the unit sphere in R^3 and upsilon3 the volume of the
    unit sphere in R^4.
    """
    return {"pi": math.pi, "Omega3": sphereVolume(3), "upsilon3": sphereVolume(4)}


def normalizeVolumes(value, ring=defaultRing):
    """Replaces Omega3 by 4 pi and upsilon3 by 2 pi^2, symbolically."""
    pi = ring.symbol("pi")
    return value.replace({"Omega3": pi.scale(4), "upsilon3": (pi * pi).scale(2)})


def _oddDoubleFactorial(value):
    result = 1
    while value > 1:
        result *= value
        value -= 2
    return result


def monomialMoment(exponents, sphereDimension):
    """Integral of prod xi_j^a_j over the unit sphere, divided by the sphere volume.

    :param exponents: exponent a_j for each coordinate
    :type exponents: list of int
    :param sphereDimension: number m of coordinates
    :type sphereDimension: int
    :rtype: Fraction
    """
    if any(a % 2 for a in exponents):
        return Fraction(0)
    numerator = 1
    for a in exponents:
        numerator *= _oddDoubleFactorial(a - 1)
    denominator = 1
    for k in range(sum(exponents) // 2):
        denominator *= sphereDimension + 2 * k
    return Fraction(numerator, denominator)


class SphereMoment:
    """Result of a sphere integral, a Scalar linear in the sphere volume symbol.

    :param coefficient: the value, including the volume symbol
    :type coefficient: Scalar
    """

    class ConormalVariableError(Exception):
        pass

    def __init__(self, coefficient):
        self.coefficient = coefficient

    def __add__(self, other):
        return SphereMoment(self.coefficient + other.coefficient)

    def scale(self, factor):
        return SphereMoment(self.coefficient * factor)

    def substitute(self, bindings):
        return self.coefficient.substitute(bindings)

    def __eq__(self, other):
        if isinstance(other, SphereMoment):
            return self.coefficient == other.coefficient
        return self.coefficient == other

    __hash__ = None

    def __str__(self):
        return str(self.coefficient)


def reduceSphereRelation(polynomial, sphereDimension, ring=defaultRing):
    """Normal form modulo xi_1^2 + ... + xi_m^2 = 1.

    Every power of the last coordinate is reduced to exponent 0 or 1.

    :rtype: Scalar
    """
    last = xiName(sphereDimension)
    remainder = ring.one()
    for j in range(1, sphereDimension):
        remainder = remainder - ring.symbol(xiName(j)) ** 2
    result = ring.zero()
    for power, coefficient in polynomial.collect(last).items():
        term = coefficient * (remainder ** (power // 2))
        if power % 2:
            term = term * ring.symbol(last)
        result = result + term
    return result


def integrateSphere(polynomial, dimension=4, ring=defaultRing):
    """Integrates a polynomial in xi_1..xi_{n-1} over the unit sphere |xi'| = 1.

    :param polynomial: integrand; other symbols are carried along
    :type polynomial: Scalar
    :param dimension: ambient dimension n
    :type dimension: int
    :raises SphereMoment.ConormalVariableError: if xi_n occurs
    :rtype: SphereMoment
    """
    conormal = xiName(dimension)
    if conormal in polynomial.variables():
        raise SphereMoment.ConormalVariableError("Sphere integrand still depends on " + conormal)
    sphereDimension = dimension - 1
    names = [xiName(j) for j in range(1, sphereDimension + 1)]
    reduced = reduceSphereRelation(polynomial, sphereDimension, ring)
    total = ring.zero()
    for monomial, rest in reduced.coefficientsIn(names).items():
        powers = dict(monomial)
        moment = monomialMoment([powers.get(name, 0) for name in names], sphereDimension)
        if moment:
            total = total + rest.scale(moment)
    sphere_logger.debug(f"Integrated {len(reduced.terms)} terms over the unit sphere")
    return SphereMoment(total * ring.symbol(volumeSymbol(sphereDimension)))
