import re
import numbers
from fractions import Fraction
from functools import lru_cache
from ResidueForge import setup_logger

scalar_logger = setup_logger.logger.getChild("scalarRing")


class GaussianRational:
    """Exact complex number re + im*i with rational parts.

    Every constant of the boundary computations lives in Q(i), so this is the
    coefficient field of :class:`Scalar`. Floats are rejected on purpose of exactness.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @classmethod
    def promote(cls, value):
        """Converts ints, Fractions and GaussianRationals to a GaussianRational.

        :param value: the number to convert
        :type value: int, Fraction or GaussianRational
        :raises TypeError: for floats and anything else inexact
        :return: the converted number
        :rtype: GaussianRational
        """
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, numbers.Rational):
            return cls(value)
        raise TypeError("Cannot use " + repr(value) + " as exact coefficient")

    @classmethod
    def fromStrings(cls, re, im):
        return cls(Fraction(re), Fraction(im))

    def toStrings(self):
        return str(self.re), str(self.im)

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def __add__(self, other):
        try:
            other = GaussianRational.promote(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        try:
            other = GaussianRational.promote(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            other = GaussianRational.promote(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self.re * other.re - self.im * other.im,
                                self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def reciprocal(self):
        norm = self.re * self.re + self.im * self.im
        if norm == 0:
            raise ZeroDivisionError("GaussianRational division by zero")
        return GaussianRational(self.re / norm, -self.im / norm)

    def __truediv__(self, other):
        try:
            other = GaussianRational.promote(other)
        except TypeError:
            return NotImplemented
        return self * other.reciprocal()

    def __rtruediv__(self, other):
        return GaussianRational.promote(other) * self.reciprocal()

    def __pow__(self, exponent):
        if not isinstance(exponent, numbers.Integral):
            return NotImplemented
        if exponent < 0:
            return self.reciprocal() ** (-exponent)
        result = GaussianRational(1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other):
        try:
            other = GaussianRational.promote(other)
        except TypeError:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return "GaussianRational(" + str(self.re) + ", " + str(self.im) + ")"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return str(self.im) + "i"
        return "(" + str(self.re) + ("+" if self.im > 0 else "-") + str(abs(self.im)) + "i)"

    def toLatex(self):
        """Returns the number as latex code, e.g. ``\\frac{5}{4}+\\frac{i}{2}``."""
        def fraction(value, suffix=""):
            sign = "-" if value < 0 else ""
            value = abs(value)
            if value.denominator == 1:
                if value.numerator == 1 and suffix:
                    return sign + suffix
                return sign + str(value.numerator) + suffix
            return sign + "\\frac{" + str(value.numerator) + suffix + "}{" + str(value.denominator) + "}"

        if self.im == 0:
            return fraction(self.re)
        if self.re == 0:
            return fraction(self.im, "i")
        imag = fraction(self.im, "i")
        return "(" + fraction(self.re) + ("" if imag.startswith("-") else "+") + imag + ")"


IMAG = GaussianRational(0, 1)


@lru_cache(maxsize=None)
def mergeMonomials(first, second):
    """Product of two canonical monomials (sorted tuples of (name, exponent))."""
    if not first:
        return second
    if not second:
        return first
    merged = dict(first)
    for name, exponent in second:
        merged[name] = merged.get(name, 0) + exponent
    return tuple(sorted(merged.items()))


def latexSymbol(name):
    """Maps an indeterminate name to its latex spelling."""
    special = {
        "pi": "\\pi",
        "Omega3": "\\Omega_3",
        "upsilon3": "\\upsilon_3",
        "h1": "h'(0)",
        "trPsi": "\\mathrm{tr}[c(\\Psi)]",
        "Tn": "T_{n}",
        "EG": "EG(X,Y)",
        "gXYT": "g(X^T,Y^T)",
        "gXY": "g(X,Y)",
        "TXPsi": "\\mathrm{tr}[c(X)c(\\Psi)]",
        "TYPsi": "\\mathrm{tr}[c(Y)c(\\Psi)]",
    }
    if name in special:
        return special[name]
    match = re.fullmatch(r"nabla([XY])([A-Z])(\d+)", name)
    if match:
        direction, field, index = match.groups()
        return "(\\nabla_{" + direction + "}" + field + ")_{" + index + "}"
    match = re.fullmatch(r"d([A-Z])(\d)(\d)", name)
    if match:
        field, direction, index = match.groups()
        return "\\partial_{" + direction + "}" + field + "_{" + index + "}"
    match = re.fullmatch(r"([A-Za-z]+)(\d+)", name)
    if match:
        letters, digits = match.groups()
        if letters == "xi":
            letters = "\\xi"
        return letters + "_{" + digits + "}"
    return name


class ScalarRing:
    """Context of named indeterminates that Scalars are polynomials in.

    The registry is append-only: once a name is registered it keeps its
    identity for the lifetime of the ring. Two rings are compatible if they
    carry the same name, which keeps Scalars comparable after pickling into
    worker processes.

    :param name: name of the context
    :type name: string
    """

    class ContextMismatchError(Exception):
        pass

    def __init__(self, name):
        self.name = name
        self.indeterminates = []
        self._known = set()

    def register(self, name):
        if name not in self._known:
            self._known.add(name)
            self.indeterminates.append(name)
        return name

    def symbol(self, name):
        """Returns the Scalar consisting of the single indeterminate `name`.

        :param name: name of the indeterminate, registered if new
        :type name: string
        :rtype: Scalar
        """
        self.register(name)
        return Scalar(self, {((name, 1),): GaussianRational(1)})

    def symbols(self, *names):
        return [self.symbol(name) for name in names]

    def constant(self, value):
        return Scalar(self, {(): GaussianRational.promote(value)})

    def zero(self):
        return Scalar(self)

    def one(self):
        return self.constant(1)

    def imaginaryUnit(self):
        return self.constant(IMAG)

    def check(self, other):
        if other is not self and other.name != self.name:
            raise ScalarRing.ContextMismatchError(
                "Scalars from rings " + self.name + " and " + other.name + " can not be combined")

    def __eq__(self, other):
        return isinstance(other, ScalarRing) and other.name == self.name

    def __hash__(self):
        return hash(self.name)

    def __repr__(self):
        return "ScalarRing(" + self.name + ")"


def addTerm(terms, monomial, coefficient):
    """Adds coefficient*monomial into a term dictionary in place, dropping zeros."""
    present = terms.get(monomial)
    if present is None:
        if coefficient:
            terms[monomial] = coefficient
        return
    total = present + coefficient
    if total:
        terms[monomial] = total
    else:
        del terms[monomial]


class Scalar:
    """Multivariate polynomial over Gaussian rationals in named indeterminates.

    Terms are stored sparse as ``{monomial: GaussianRational}``, where a monomial
    is a tuple of ``(name, exponent)`` pairs sorted by name. Zero coefficients
    are never stored. Instances are treated as immutable values.

    :param ring: the context the indeterminates belong to
    :type ring: ScalarRing
    :param terms: initial terms, zeros are filtered
    :type terms: dict, optional
    """

    class UnboundIndeterminateError(Exception):
        pass

    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms=None):
        self.ring = ring
        self.terms = {}
        if terms:
            for monomial, coefficient in terms.items():
                coefficient = GaussianRational.promote(coefficient)
                if coefficient:
                    self.terms[monomial] = coefficient

    @classmethod
    def fromTerms(cls, ring, terms):
        """Wraps an already clean term dictionary without copying or filtering."""
        scalar = cls.__new__(cls)
        scalar.ring = ring
        scalar.terms = terms
        return scalar

    def _coerce(self, other):
        if isinstance(other, Scalar):
            self.ring.check(other.ring)
            return other
        return self.ring.constant(other)

    def isZero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def isConstant(self):
        return not self.terms or (len(self.terms) == 1 and () in self.terms)

    def constantValue(self):
        return self.terms.get((), GaussianRational(0))

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        terms = dict(self.terms)
        for monomial, coefficient in other.terms.items():
            addTerm(terms, monomial, coefficient)
        return Scalar.fromTerms(self.ring, terms)

    __radd__ = __add__

    def __neg__(self):
        return Scalar.fromTerms(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, factor):
        """Multiplies by an exact number.

        :param factor: the number to multiply by
        :type factor: int, Fraction or GaussianRational
        :rtype: Scalar
        """
        factor = GaussianRational.promote(factor)
        if not factor:
            return Scalar(self.ring)
        return Scalar.fromTerms(self.ring, {m: c * factor for m, c in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Scalar):
            try:
                return self.scale(other)
            except TypeError:
                return NotImplemented
        self.ring.check(other.ring)
        terms = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                addTerm(terms, mergeMonomials(m1, m2), c1 * c2)
        return Scalar.fromTerms(self.ring, terms)

    __rmul__ = __mul__

    def __pow__(self, exponent):
        if not isinstance(exponent, numbers.Integral) or exponent < 0:
            return NotImplemented
        result = self.ring.one()
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.terms == other.terms
        try:
            other = self.ring.constant(other)
        except TypeError:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def variables(self):
        """Returns the sorted list of indeterminates occurring in this Scalar."""
        names = set()
        for monomial in self.terms:
            names.update(name for name, _ in monomial)
        return sorted(names)

    def degree(self, names=None):
        """Maximal total degree, optionally counted in the given indeterminates only.

        :param names: indeterminates to count, all if None
        :type names: collection of strings, optional
        :return: the degree, -1 for the zero polynomial
        :rtype: int
        """
        if not self.terms:
            return -1
        return max(sum(e for n, e in m if names is None or n in names) for m in self.terms)

    def derivative(self, name):
        terms = {}
        for monomial, coefficient in self.terms.items():
            exponents = dict(monomial)
            exponent = exponents.get(name, 0)
            if exponent == 0:
                continue
            if exponent == 1:
                del exponents[name]
            else:
                exponents[name] = exponent - 1
            addTerm(terms, tuple(sorted(exponents.items())), coefficient * exponent)
        return Scalar.fromTerms(self.ring, terms)

    def substitute(self, bindings):
        """Evaluates the polynomial numerically.

        Bound values may be numpy arrays, in which case the result broadcasts.

        :param bindings: value for every indeterminate
        :type bindings: dict string -> complex or numpy array
        :raises Scalar.UnboundIndeterminateError: if an indeterminate has no value
        :return: the value
        :rtype: complex or numpy array
        """
        result = 0j
        for monomial, coefficient in self.terms.items():
            value = complex(coefficient)
            for name, exponent in monomial:
                if name not in bindings:
                    raise Scalar.UnboundIndeterminateError("No value bound for " + name)
                value = value * bindings[name] ** exponent
            result = result + value
        return result

    def replace(self, mapping):
        """Substitutes Scalars (or exact numbers) for indeterminates, symbolically.

        :param mapping: replacement for each indeterminate to replace
        :type mapping: dict string -> Scalar or number
        :rtype: Scalar
        """
        replacements = {name: self._coerce(value) for name, value in mapping.items()}
        powers = {}
        result = Scalar(self.ring)
        for monomial, coefficient in self.terms.items():
            kept = []
            factor = None
            for name, exponent in monomial:
                if name in replacements:
                    key = (name, exponent)
                    if key not in powers:
                        powers[key] = replacements[name] ** exponent
                    factor = powers[key] if factor is None else factor * powers[key]
                else:
                    kept.append((name, exponent))
            term = Scalar.fromTerms(self.ring, {tuple(kept): coefficient})
            result = result + (term if factor is None else term * factor)
        return result

    def coefficientsIn(self, names):
        """Splits the polynomial by its monomials in the given indeterminates.

        :param names: indeterminates to split by
        :type names: collection of strings
        :return: map from monomial in `names` to the Scalar coefficient in the others
        :rtype: dict tuple -> Scalar
        """
        names = set(names)
        split = {}
        for monomial, coefficient in self.terms.items():
            inside = tuple(p for p in monomial if p[0] in names)
            outside = tuple(p for p in monomial if p[0] not in names)
            split.setdefault(inside, {})[outside] = coefficient
        return {key: Scalar.fromTerms(self.ring, value) for key, value in split.items()}

    def collect(self, name):
        """Coefficients of the powers of one indeterminate, as ``{power: Scalar}``."""
        return {(dict(key).get(name, 0)): value for key, value in self.coefficientsIn([name]).items()}

    def sortedTerms(self):
        return sorted(self.terms.items(), key=lambda item: (sum(e for _, e in item[0]), item[0]))

    def toJson(self):
        """List representation with exact coefficients as strings."""
        entries = []
        for monomial, coefficient in self.sortedTerms():
            re, im = coefficient.toStrings()
            entries.append({"monomial": {name: exponent for name, exponent in monomial}, "re": re, "im": im})
        return entries

    @classmethod
    def fromJson(cls, ring, entries):
        terms = {}
        for entry in entries:
            for name in entry["monomial"]:
                ring.register(name)
            monomial = tuple(sorted((name, int(exp)) for name, exp in entry["monomial"].items()))
            addTerm(terms, monomial, GaussianRational.fromStrings(entry["re"], entry["im"]))
        return cls.fromTerms(ring, terms)

    def toLatex(self):
        if not self.terms:
            return "0"
        parts = []
        for monomial, coefficient in self.sortedTerms():
            factors = "".join(latexSymbol(name) + ("^{" + str(exp) + "}" if exp != 1 else "") + " "
                              for name, exp in monomial).strip()
            number = coefficient.toLatex()
            if factors and number == "1":
                number = ""
            elif factors and number == "-1":
                number = "-"
            parts.append(number + factors)
        text = parts[0]
        for part in parts[1:]:
            text += (" " if part.startswith("-") else " + ") + part
        return text

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for monomial, coefficient in self.sortedTerms():
            factors = "*".join(name + ("^" + str(exp) if exp != 1 else "") for name, exp in monomial)
            if not factors:
                parts.append(str(coefficient))
            elif coefficient == 1:
                parts.append(factors)
            else:
                parts.append(str(coefficient) + "*" + factors)
        return " + ".join(parts)

    def __repr__(self):
        return "Scalar(" + str(self) + ")"


defaultRing = ScalarRing("residueForge")
