from fractions import Fraction
from itertools import product
from math import factorial, prod
from ResidueForge import IMAG, GaussianRational, setup_logger

cases_logger = setup_logger.logger.getChild("cases")

# (r, l, j, k, |alpha|) -> label, in the order the cases are reported
caseLabels = {
    (0, -2): [((0, -2, 0, 0, 1), "(a)(I)"),
              ((0, -2, 1, 0, 0), "(a)(II)"),
              ((0, -2, 0, 1, 0), "(a)(III)"),
              ((0, -3, 0, 0, 0), "(b)"),
              ((-1, -2, 0, 0, 0), "(c)")],
    (1, -3): [((1, -3, 0, 0, 1), "(1)"),
              ((1, -3, 1, 0, 0), "(2)"),
              ((1, -3, 0, 1, 0), "(3)"),
              ((0, -3, 0, 0, 0), "(4)"),
              ((1, -4, 0, 0, 0), "(5)")],
}


class CaseSpec:
    """One summand of the boundary term of the residue.

    The summand pairs sigma_r of the numerator operator with sigma_l of the
    denominator operator, with j x_n-derivatives on the left, k x_n-derivatives
    on the right and a tangential multi-index alpha of order alphaOrder.

    :param r: symbol order taken from the numerator operator
    :type r: int
    :param ell: symbol order taken from the denominator operator
    :type ell: int
    :param j: number of x_n-derivatives of the projected numerator symbol
    :type j: int
    :param k: number of xi_n-derivatives of the projected numerator symbol
    :type k: int
    :param alphaOrder: |alpha|
    :type alphaOrder: int
    :param label: name of the case in reports
    :type label: string, optional
    """

    def __init__(self, r, ell, j, k, alphaOrder, label=None):
        if j < 0 or k < 0 or alphaOrder < 0:
            raise ValueError("Derivative counts must be nonnegative")
        self.r = r
        self.ell = ell
        self.j = j
        self.k = k
        self.alphaOrder = alphaOrder
        self.label = label if label is not None else str(self.key)

    @property
    def key(self):
        return (self.r, self.ell, self.j, self.k, self.alphaOrder)

    def satisfiesDegreeConstraint(self, dimension=4):
        """r + l - k - j - |alpha| - 1 = -n."""
        return self.r + self.ell - self.k - self.j - self.alphaOrder - 1 == -dimension

    def multiIndices(self, dimension=4):
        """All tangential multi-indices alpha with |alpha| = alphaOrder.

        :rtype: list of tuples of length n-1
        """
        return [alpha for alpha in product(range(self.alphaOrder + 1), repeat=dimension - 1)
                if sum(alpha) == self.alphaOrder]

    def prefactor(self, alpha=None):
        """(-i)^(|alpha|+j+k+1) / (alpha! (j+k+1)!).

        Without a multi-index the alpha! part is left out.

        :param alpha: the tangential multi-index
        :type alpha: tuple of int, optional
        :rtype: GaussianRational
        """
        value = (-IMAG) ** (self.alphaOrder + self.j + self.k + 1) * Fraction(1, factorial(self.j + self.k + 1))
        if alpha is not None:
            value = value * Fraction(1, prod(factorial(a) for a in alpha))
        return GaussianRational.promote(value)

    def toJson(self):
        return {"label": self.label, "r": self.r, "l": self.ell, "j": self.j, "k": self.k, "alpha": self.alphaOrder}

    @classmethod
    def fromJson(cls, data):
        return cls(data["r"], data["l"], data["j"], data["k"], data["alpha"], data["label"])

    def __eq__(self, other):
        return isinstance(other, CaseSpec) and other.key == self.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return "CaseSpec" + str(self.key)

    def __str__(self):
        return "case " + self.label + " (r=" + str(self.r) + ", l=" + str(self.ell) + ", j=" + str(self.j) \
            + ", k=" + str(self.k) + ", |alpha|=" + str(self.alphaOrder) + ")"


def enumerateCases(dimension, p1, p2):
    """Enumerates all admissible summands of the boundary term.

    The sum runs over r + l - k - j - |alpha| - 1 = -n with r <= p1 and l <= p2.
    Known operator pairs come back in their reporting order with labels.

    :param dimension: manifold dimension n
    :type dimension: int
    :param p1: order of the numerator operator
    :type p1: int
    :param p2: order of the denominator operator
    :type p2: int
    :rtype: list of CaseSpec
    """
    deficit = p1 + p2 + dimension - 1
    if deficit < 0:
        return []
    found = []
    # distribute the deficit over (p1 - r, p2 - l, j, k, |alpha|)
    for parts in product(range(deficit + 1), repeat=5):
        if sum(parts) != deficit:
            continue
        dr, dl, j, k, a = parts
        found.append(CaseSpec(p1 - dr, p2 - dl, j, k, a))
    labels = dict(caseLabels.get((p1, p2), [])) if dimension == 4 else {}
    for case in found:
        if case.key in labels:
            case.label = labels[case.key]
    if labels:
        order = [key for key, _ in caseLabels[(p1, p2)]]
        found.sort(key=lambda c: order.index(c.key) if c.key in order else len(order))
    cases_logger.debug(f"Enumerated {len(found)} cases for n={dimension}, p1={p1}, p2={p2}")
    return found
