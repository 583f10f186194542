from ResidueForge import Scalar, defaultRing, placeholderName, psiTraceBindings, normalizeVolumes, setup_logger

density_logger = setup_logger.logger.getChild("density")

TANGENTIAL_METRIC = "gXYT"
TRACE_X = "TXPsi"
TRACE_Y = "TYPsi"


def _pairMonomial(first, second):
    return tuple(sorted(((first, 1), (second, 1))))


class DensityExpression:
    """Canonical pointwise density at a boundary point.

    The Scalar is kept fully expanded with the tangential contractions
    g(X^T,Y^T) = sum_{j<n} X_j Y_j and trace[c(Z)c(Psi)] = sum_k Z_k T_k folded
    into the symbols ``gXYT``, ``TXPsi`` and ``TYPsi`` wherever all tangential
    pairs carry the same coefficient. Folding is idempotent, equality compares
    the unfolded polynomials.

    :param value: the density
    :type value: Scalar
    :param dimension: manifold dimension n
    :type dimension: int
    """

    def __init__(self, value, dimension=4):
        self.dimension = dimension
        self.ring = value.ring
        self.value = self._canonicalize(value)

    @classmethod
    def zero(cls, dimension=4, ring=defaultRing):
        return cls(ring.zero(), dimension)

    def _fold(self, value, pairs, symbol, normalPair=None):
        """Replaces sum over pairs of C*a*b by C*symbol where all tangential coefficients agree.

        With a normal pair (a_n, b_n) the symbol also absorbs C*a_n*b_n and the
        rest of that coefficient stays on the normal monomial.
        """
        names = {name for pair in pairs for name in pair}
        if normalPair is not None:
            names.update(normalPair)
        split = value.coefficientsIn(names)
        coefficients = [split.get(_pairMonomial(a, b)) for a, b in pairs]
        if any(c is None for c in coefficients):
            return value
        common = coefficients[0]
        if common.isZero() or any(c != common for c in coefficients[1:]):
            return value
        ring = self.ring
        folded = value
        for a, b in pairs:
            folded = folded - ring.symbol(a) * ring.symbol(b) * common
        folded = folded + ring.symbol(symbol) * common
        if normalPair is not None:
            # the symbol already carries common*a_n*b_n
            folded = folded - ring.symbol(normalPair[0]) * ring.symbol(normalPair[1]) * common
        return folded

    def _tracePairs(self, field):
        n = self.dimension
        pairs = [(field + str(k), placeholderName(1 << (k - 1), n)) for k in range(1, n)]
        normal = (field + str(n), placeholderName(1 << (n - 1), n))
        return pairs, normal

    def _canonicalize(self, value):
        n = self.dimension
        value = self.expandScalar(value)
        value = self._fold(value, [("X" + str(k), "Y" + str(k)) for k in range(1, n)], TANGENTIAL_METRIC)
        pairs, normal = self._tracePairs("X")
        value = self._fold(value, pairs, TRACE_X, normal)
        pairs, normal = self._tracePairs("Y")
        value = self._fold(value, pairs, TRACE_Y, normal)
        return value

    def contractionValues(self):
        """The folded symbols written out in the component symbols.

        :rtype: dict string -> Scalar
        """
        ring = self.ring
        n = self.dimension
        metric = ring.zero()
        for k in range(1, n):
            metric = metric + ring.symbol("X" + str(k)) * ring.symbol("Y" + str(k))
        values = {TANGENTIAL_METRIC: metric}
        for symbol, field in ((TRACE_X, "X"), (TRACE_Y, "Y")):
            total = ring.zero()
            for k in range(1, n + 1):
                total = total + ring.symbol(field + str(k)) * ring.symbol(placeholderName(1 << (k - 1), n))
            values[symbol] = total
        return values

    def expandScalar(self, value):
        present = set(value.variables()) & {TANGENTIAL_METRIC, TRACE_X, TRACE_Y}
        if not present:
            return value
        values = self.contractionValues()
        return value.replace({name: values[name] for name in present})

    def expanded(self):
        """The density with all folded symbols written out.

        :rtype: Scalar
        """
        return self.expandScalar(self.value)

    def instantiate(self, psi):
        """Density for a concrete perturbation, from a generic-Psi density.

        :param psi: the concrete perturbation
        :type psi: PsiSpec
        :rtype: DensityExpression
        """
        bindings = psiTraceBindings(psi, self.dimension, self.ring)
        expanded = self.expanded()
        present = set(expanded.variables())
        return DensityExpression(expanded.replace({k: v for k, v in bindings.items() if k in present}), self.dimension)

    def normalized(self):
        """Omega3 -> 4 pi and upsilon3 -> 2 pi^2 folded into the coefficients."""
        return DensityExpression(normalizeVolumes(self.expanded(), self.ring), self.dimension)

    def coefficientOf(self, monomial):
        """Coefficient of a monomial in the canonical form.

        :param monomial: exponent per symbol, e.g. ``{"Tn": 1}``
        :type monomial: dict string -> int
        :return: everything multiplying exactly that power product
        :rtype: Scalar
        """
        key = tuple(sorted((name, exponent) for name, exponent in monomial.items() if exponent))
        return self.value.coefficientsIn(monomial.keys()).get(key, self.ring.zero())

    def substitute(self, bindings):
        """Numeric value; folded symbols are expanded first."""
        return self.expanded().substitute(bindings)

    def variables(self):
        return self.value.variables()

    def isZero(self):
        return self.value.isZero()

    def __add__(self, other):
        if isinstance(other, DensityExpression):
            other = other.expanded()
        return DensityExpression(self.expanded() + other, self.dimension)

    __radd__ = __add__

    def __neg__(self):
        return DensityExpression(-self.value, self.dimension)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, factor):
        return DensityExpression(self.expanded() * factor, self.dimension)

    def __eq__(self, other):
        if isinstance(other, DensityExpression):
            return self.expanded() == other.expanded()
        if isinstance(other, Scalar):
            return self.expanded() == self.expandScalar(other)
        return NotImplemented

    __hash__ = None

    def toJson(self):
        """Canonical term list with exact coefficients as strings."""
        return self.value.toJson()

    @classmethod
    def fromJson(cls, entries, dimension=4, ring=defaultRing):
        return cls(Scalar.fromJson(ring, entries), dimension)

    def toLatex(self):
        return self.value.toLatex()

    def __str__(self):
        return str(self.value)

    def __repr__(self):
        return "DensityExpression(" + str(self.value) + ")"
