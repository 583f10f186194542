from enum import Enum
from functools import lru_cache
from .scalarRing import Scalar, GaussianRational, addTerm, mergeMonomials, defaultRing
from ResidueForge import setup_logger

clifford_logger = setup_logger.logger.getChild("clifford")


@lru_cache(maxsize=None)
def bladeProduct(first, second):
    """Product of two basis blades given as bitmasks (bit k-1 stands for e_k).

    Uses e_i e_j = -e_j e_i for i != j and e_i e_i = -1.

    :return: sign and resulting blade
    :rtype: tuple (int, int)
    """
    swaps = 0
    shifted = first >> 1
    while shifted:
        swaps += bin(shifted & second).count("1")
        shifted >>= 1
    sign = -1 if swaps & 1 else 1
    if bin(first & second).count("1") & 1:
        sign = -sign
    return sign, first ^ second


def bladeIndices(blade):
    """Returns the increasing index tuple of a bitmask blade."""
    indices = []
    index = 1
    while blade:
        if blade & 1:
            indices.append(index)
        blade >>= 1
        index += 1
    return tuple(indices)


def bladeFromIndices(indices):
    blade = 0
    for index in indices:
        blade |= 1 << (index - 1)
    return blade


def spinorDimension(dimension):
    return 2 ** (dimension // 2)


class CliffordElement:
    """Exact multivector of the Clifford algebra of an orthonormal frame.

    Coefficients are :class:`Scalar` polynomials, stored sparse per blade.
    Instances are immutable values.

    :param dimension: dimension n of the frame
    :type dimension: int
    :param ring: scalar context of all coefficients
    :type ring: ScalarRing
    :param terms: map from bitmask blade to coefficient
    :type terms: dict int -> Scalar, optional
    """

    class DimensionMismatchError(Exception):
        pass

    __slots__ = ("dimension", "ring", "terms")

    def __init__(self, dimension, ring=defaultRing, terms=None):
        self.dimension = dimension
        self.ring = ring
        self.terms = {}
        if terms:
            for blade, coefficient in terms.items():
                if not isinstance(coefficient, Scalar):
                    coefficient = ring.constant(coefficient)
                if coefficient:
                    self.terms[blade] = coefficient

    @classmethod
    def identity(cls, dimension, ring=defaultRing):
        return cls(dimension, ring, {0: ring.one()})

    @classmethod
    def fromScalar(cls, value, dimension, ring=defaultRing):
        return cls(dimension, ring, {0: value})

    @classmethod
    def basis(cls, index, dimension, ring=defaultRing):
        """Returns c(e_index)."""
        if not 1 <= index <= dimension:
            raise CliffordElement.DimensionMismatchError(
                "Basis index " + str(index) + " outside dimension " + str(dimension))
        return cls(dimension, ring, {1 << (index - 1): ring.one()})

    @classmethod
    def blade(cls, indices, dimension, ring=defaultRing):
        """Returns the product c(e_i1)...c(e_ik) for increasing indices."""
        return cls(dimension, ring, {bladeFromIndices(indices): ring.one()})

    @classmethod
    def vector(cls, components, ring=defaultRing):
        """Returns c(v) = sum_k v_k c(e_k) for the given components."""
        return cls(len(components), ring, {1 << k: value for k, value in enumerate(components)})

    def _check(self, other):
        if other.dimension != self.dimension:
            raise CliffordElement.DimensionMismatchError(
                "Cannot combine dimensions " + str(self.dimension) + " and " + str(other.dimension))
        self.ring.check(other.ring)

    def isZero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        if not isinstance(other, CliffordElement):
            other = CliffordElement.fromScalar(other, self.dimension, self.ring)
        self._check(other)
        terms = dict(self.terms)
        for blade, coefficient in other.terms.items():
            total = terms[blade] + coefficient if blade in terms else coefficient
            if total:
                terms[blade] = total
            else:
                terms.pop(blade, None)
        return CliffordElement._wrap(self.dimension, self.ring, terms)

    __radd__ = __add__

    def __neg__(self):
        return CliffordElement._wrap(self.dimension, self.ring, {b: -c for b, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    @classmethod
    def _wrap(cls, dimension, ring, terms):
        element = cls.__new__(cls)
        element.dimension = dimension
        element.ring = ring
        element.terms = terms
        return element

    def scale(self, factor):
        """Multiplies every coefficient by a Scalar or an exact number."""
        if isinstance(factor, Scalar):
            terms = {b: c * factor for b, c in self.terms.items()}
            return CliffordElement._wrap(self.dimension, self.ring, {b: c for b, c in terms.items() if c})
        factor = GaussianRational.promote(factor)
        if not factor:
            return CliffordElement(self.dimension, self.ring)
        return CliffordElement._wrap(self.dimension, self.ring, {b: c.scale(factor) for b, c in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, CliffordElement):
            try:
                return self.scale(other)
            except TypeError:
                return NotImplemented
        self._check(other)
        accumulated = {}
        for firstBlade, firstCoefficient in self.terms.items():
            for secondBlade, secondCoefficient in other.terms.items():
                sign, blade = bladeProduct(firstBlade, secondBlade)
                target = accumulated.setdefault(blade, {})
                for m1, c1 in firstCoefficient.terms.items():
                    for m2, c2 in secondCoefficient.terms.items():
                        product = c1 * c2
                        addTerm(target, mergeMonomials(m1, m2), product if sign > 0 else -product)
        terms = {b: Scalar.fromTerms(self.ring, t) for b, t in accumulated.items() if t}
        return CliffordElement._wrap(self.dimension, self.ring, terms)

    def __rmul__(self, other):
        # coefficients are central
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def mapCoefficients(self, function):
        """Applies a Scalar -> Scalar map to every coefficient."""
        terms = {}
        for blade, coefficient in self.terms.items():
            mapped = function(coefficient)
            if mapped:
                terms[blade] = mapped
        return CliffordElement._wrap(self.dimension, self.ring, terms)

    def grade0(self):
        return self.terms.get(0, self.ring.zero())

    def spinorTrace(self):
        """Trace on the spinor module: 2^(n/2) times the grade-0 coefficient.

        :rtype: Scalar
        """
        return self.grade0().scale(spinorDimension(self.dimension))

    def traceProduct(self, other):
        """spinorTrace(self*other) without forming the full product."""
        self._check(other)
        total = self.ring.zero()
        for blade, coefficient in self.terms.items():
            if blade in other.terms:
                sign = bladeProduct(blade, blade)[0]
                total = total + (coefficient * other.terms[blade]).scale(sign)
        return total.scale(spinorDimension(self.dimension))

    def grades(self):
        return sorted({len(bladeIndices(blade)) for blade in self.terms})

    def coefficient(self, indices):
        return self.terms.get(bladeFromIndices(indices), self.ring.zero())

    def variables(self):
        names = set()
        for coefficient in self.terms.values():
            names.update(coefficient.variables())
        return sorted(names)

    def __eq__(self, other):
        if isinstance(other, CliffordElement):
            return self.dimension == other.dimension and self.terms == other.terms
        if isinstance(other, (Scalar, int, GaussianRational)):
            return self == CliffordElement.fromScalar(other, self.dimension, self.ring)
        return NotImplemented

    def __hash__(self):
        return hash((self.dimension, frozenset(self.terms.items())))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for blade in sorted(self.terms, key=lambda b: (len(bladeIndices(b)), bladeIndices(b))):
            name = "e" + "".join(str(i) for i in bladeIndices(blade)) if blade else "1"
            parts.append("(" + str(self.terms[blade]) + ")*" + name)
        return " + ".join(parts)

    def __repr__(self):
        return "CliffordElement(" + str(self) + ")"


class PsiSpec:
    """Describes the perturbation c(Psi) of the Dirac operator.

    Concrete kinds carry symbolic field components (``U1``..``Un`` etc.);
    the generic kind stands for an arbitrary element whose traces stay as
    named placeholders.

    :param kind: one of PsiSpec.Kind
    :type kind: PsiSpec.Kind
    """

    class UnsupportedGradeError(Exception):
        pass

    Kind = Enum("Kind", "zero scalar vector bivector trivector generic", qualname="PsiSpec.Kind")

    fieldNames = {
        "zero": [],
        "scalar": [],
        "vector": ["U"],
        "bivector": ["U", "V"],
        "trivector": ["U", "V", "W"],
        "generic": [],
    }

    # command line spelling
    cliNames = {"generic": "generic", "f": "scalar", "vector": "vector",
                "bivector": "bivector", "trivector": "trivector", "zero": "zero"}

    def __init__(self, kind):
        self.kind = kind

    @classmethod
    def fromName(cls, name):
        if name not in cls.cliNames:
            raise PsiSpec.UnsupportedGradeError("Unknown perturbation " + name)
        return cls(cls.Kind[cls.cliNames[name]])

    @classmethod
    def ofFieldCount(cls, count):
        """Perturbation c(X_1)...c(X_count); count 0 is the zero perturbation."""
        kinds = ["zero", "vector", "bivector", "trivector"]
        if not 0 <= count < len(kinds):
            raise PsiSpec.UnsupportedGradeError("Products of " + str(count) + " vector fields are not supported")
        return cls(cls.Kind[kinds[count]])

    @property
    def isGeneric(self):
        return self.kind == PsiSpec.Kind.generic

    @property
    def fields(self):
        return PsiSpec.fieldNames[self.kind.name]

    def __eq__(self, other):
        return isinstance(other, PsiSpec) and other.kind == self.kind

    def __hash__(self):
        return hash(self.kind.name)

    def __str__(self):
        return self.kind.name


def fieldVector(name, dimension=4, ring=defaultRing):
    """c(Z) for the field with components ``<name>1``..``<name>n``."""
    return CliffordElement.vector(ring.symbols(*[name + str(k) for k in range(1, dimension + 1)]), ring)


def placeholderName(blade, dimension=4):
    """Name of the trace placeholder trace[c(Psi) e_S] for the blade S."""
    if blade == 0:
        return "trPsi"
    if blade == 1 << (dimension - 1):
        return "Tn"
    return "T" + "".join(str(i) for i in bladeIndices(blade))


def genericPsi(dimension=4, ring=defaultRing):
    """Generic c(Psi) expressed through its trace placeholders.

    c(Psi) = sum_S eps_S / 2^(n/2) * T_S * e_S where eps_S is the scalar part of
    e_S e_S, so that spinorTrace(c(Psi) e_S) = T_S for every blade S.

    :rtype: CliffordElement
    """
    terms = {}
    for blade in range(2 ** dimension):
        sign = bladeProduct(blade, blade)[0]
        terms[blade] = ring.symbol(placeholderName(blade, dimension)).scale(
            GaussianRational(sign) / spinorDimension(dimension))
    return CliffordElement(dimension, ring, terms)


def psiInstantiate(spec, dimension=4, ring=defaultRing):
    """Builds the Clifford element c(Psi) for a perturbation spec.

    :param spec: the perturbation
    :type spec: PsiSpec
    :param dimension: frame dimension
    :type dimension: int
    :rtype: CliffordElement
    """
    if spec.isGeneric:
        return genericPsi(dimension, ring)
    if spec.kind == PsiSpec.Kind.zero:
        return CliffordElement(dimension, ring)
    if spec.kind == PsiSpec.Kind.scalar:
        return CliffordElement.fromScalar(ring.symbol("f"), dimension, ring)
    element = CliffordElement.identity(dimension, ring)
    for name in spec.fields:
        element = element * fieldVector(name, dimension, ring)
    clifford_logger.debug(f"Instantiated perturbation {spec} with grades {element.grades()}")
    return element


def psiTraceBindings(spec, dimension=4, ring=defaultRing):
    """Exact value of every trace placeholder for a concrete perturbation.

    Replacing the placeholders of a generic result with these values gives the
    result for the concrete perturbation.

    :rtype: dict string -> Scalar
    """
    psi = psiInstantiate(spec, dimension, ring)
    bindings = {}
    for blade in range(2 ** dimension):
        basisBlade = CliffordElement(dimension, ring, {blade: ring.one()})
        bindings[placeholderName(blade, dimension)] = psi.traceProduct(basisBlade)
    return bindings


def contractedTrace(vectorName, dimension=4, ring=defaultRing):
    """sum_k Z_k T_k = trace[c(Z)c(Psi)] in placeholder form."""
    total = ring.zero()
    for k in range(1, dimension + 1):
        total = total + ring.symbol(vectorName + str(k)) * ring.symbol(placeholderName(1 << (k - 1), dimension))
    return total
