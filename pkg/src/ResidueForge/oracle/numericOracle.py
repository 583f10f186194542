import math
from functools import lru_cache
import numpy as np
from scipy.integrate import quad
from ResidueForge import bladeIndices, spinorDimension, xiName, sphereVolume, setup_logger

oracle_logger = setup_logger.logger.getChild("oracle")

DEFAULT_TOLERANCE = 1e-6
DEFAULT_SEED = 20240917
ABSOLUTE_THRESHOLD = 1e-9


@lru_cache(maxsize=None)
def _euclideanGammas():
    pauli = [np.array([[0, 1], [1, 0]], dtype=complex),
             np.array([[0, -1j], [1j, 0]], dtype=complex),
             np.array([[1, 0], [0, -1]], dtype=complex)]
    identity = np.eye(2, dtype=complex)
    return tuple([np.kron(pauli[0], sigma) for sigma in pauli] + [np.kron(pauli[1], identity)])


def checkCliffordRelations(gammas, dimension):
    """Raises ValueError unless gamma_i gamma_j + gamma_j gamma_i = -2 delta_ij."""
    size = spinorDimension(dimension)
    for i in range(dimension):
        for j in range(dimension):
            anticommutator = gammas[i] @ gammas[j] + gammas[j] @ gammas[i]
            expected = -2 * np.eye(size) if i == j else np.zeros((size, size))
            if not np.allclose(anticommutator, expected, atol=1e-14):
                raise ValueError("Matrix model violates the Clifford relations at " + str((i + 1, j + 1)))


@lru_cache(maxsize=None)
def gammaMatrices(dimension=4):
    """Anti-Hermitian 4x4 matrices gamma_j = i G_j with G_j the Hermitian Euclidean gammas.

    :rtype: tuple of numpy arrays
    """
    if dimension != 4:
        raise ValueError("The matrix model is only built for dimension 4")
    gammas = tuple(1j * g for g in _euclideanGammas())
    checkCliffordRelations(gammas, dimension)
    oracle_logger.debug("Matrix model satisfies the Clifford relations")
    return gammas


@lru_cache(maxsize=None)
def bladeMatrix(blade, dimension=4):
    """Image of the basis blade e_i1 ... e_ik, indices increasing."""
    matrix = np.eye(spinorDimension(dimension), dtype=complex)
    gammas = gammaMatrices(dimension)
    for index in bladeIndices(blade):
        matrix = matrix @ gammas[index - 1]
    return matrix


def gammaImage(element, bindings):
    """Matrix image of a Clifford element under numeric bindings.

    Bound values may be numpy arrays; the matrix axes are appended last.

    :param element: the element
    :type element: CliffordElement
    :param bindings: value for every symbol of the coefficients
    :type bindings: dict string -> complex or numpy array
    :rtype: numpy array of shape (..., 4, 4)
    """
    size = spinorDimension(element.dimension)
    image = np.zeros((size, size), dtype=complex)
    for blade, coefficient in element.terms.items():
        value = np.asarray(coefficient.substitute(bindings))
        image = image + value[..., None, None] * bladeMatrix(blade, element.dimension)
    return image


def gammaTrace(element, bindings):
    """Trace of the matrix image, the numeric counterpart of ``spinorTrace``.

    :rtype: complex or numpy array
    """
    return np.trace(gammaImage(element, bindings), axis1=-2, axis2=-1)


def compensatedSum(values):
    """Neumaier summation, applied to real and imaginary parts separately.

    :param values: numbers to add
    :type values: iterable of complex
    :rtype: complex
    """
    def neumaier(parts):
        total = 0.0
        compensation = 0.0
        for value in parts:
            t = total + value
            if abs(total) >= abs(value):
                compensation += (total - t) + value
            else:
                compensation += (value - t) + total
            total = t
        return total + compensation

    values = [complex(v) for v in values]
    return complex(neumaier(v.real for v in values), neumaier(v.imag for v in values))


def relativeError(reference, value):
    """Relative error, absolute below ABSOLUTE_THRESHOLD."""
    difference = abs(complex(value) - complex(reference))
    scale = abs(complex(reference))
    if scale < ABSOLUTE_THRESHOLD:
        return difference
    return difference / scale


class OracleReport:
    """Comparison of one symbolic quantity with its numeric evaluation.

    :param quantity: identifier of the quantity
    :type quantity: string
    :param symbolic: symbolic value after substitution
    :type symbolic: complex
    :param numeric: independent numeric value
    :type numeric: complex
    :param tolerance: accepted relative error
    :type tolerance: float
    :param metadata: seed, sample counts, ...
    :type metadata: dict, optional
    :param runtime: seconds spent on the check, kept out of toJson
    :type runtime: float, optional
    """

    def __init__(self, quantity, symbolic, numeric, tolerance=DEFAULT_TOLERANCE, metadata=None, runtime=None):
        self.quantity = quantity
        self.symbolic = complex(symbolic)
        self.numeric = complex(numeric)
        self.tolerance = tolerance
        self.error = relativeError(self.symbolic, self.numeric)
        self.metadata = metadata or {}
        self.runtime = runtime
        if not self.passed:
            oracle_logger.error(f"Oracle check {quantity} failed: symbolic {self.symbolic}, numeric {self.numeric}, "
                                f"error {self.error:.3e}")

    @property
    def passed(self):
        return self.error <= self.tolerance

    @classmethod
    def worst(cls, quantity, pairs, tolerance=DEFAULT_TOLERANCE, metadata=None, runtime=None):
        """Report of the sample with the largest error.

        :param pairs: symbolic and numeric value per sample
        :type pairs: list of tuple (complex, complex)
        """
        symbolic, numeric = max(pairs, key=lambda pair: relativeError(*pair))
        metadata = dict(metadata or {})
        metadata["samples"] = len(pairs)
        return cls(quantity, symbolic, numeric, tolerance, metadata, runtime)

    def toJson(self):
        return {
            "quantity": self.quantity,
            "symbolic": [self.symbolic.real, self.symbolic.imag],
            "numeric": [self.numeric.real, self.numeric.imag],
            "relative_error": self.error,
            "tolerance": self.tolerance,
            "passed": self.passed,
            "metadata": self.metadata,
        }

    @classmethod
    def fromJson(cls, entry):
        return cls(entry["quantity"], complex(*entry["symbolic"]), complex(*entry["numeric"]),
                   entry["tolerance"], entry["metadata"])

    def __str__(self):
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.quantity}: symbolic={self.symbolic:.10g} numeric={self.numeric:.10g} " \
               f"error={self.error:.2e}"


def _rationalValue(f, bindings, xi):
    """Clifford matrices of a BoundaryRational at real or complex xi_n."""
    xi = np.asarray(xi, dtype=complex)
    size = spinorDimension(f.dimension)
    numerator = np.zeros(xi.shape + (size, size), dtype=complex)
    for element in reversed(f.numerator):
        numerator = numerator * xi[..., None, None] + gammaImage(element, bindings)
    denominator = (xi - 1j) ** f.plusOrder * (xi + 1j) ** f.minusOrder
    return numerator / denominator[..., None, None]


def quadLine(f, bindings, cutoff=1e4):
    """Adaptive quadrature of the scalar part of f over the real line.

    Integrates over [-cutoff, cutoff] with ``scipy.integrate.quad`` and adds
    the leading tail of the decay beyond the cutoff analytically.

    :param f: the rational function
    :type f: BoundaryRational
    :param bindings: value for every symbol except xi_n
    :type bindings: dict string -> complex
    :raises BoundaryRational.NonIntegrableError: if the decay is too slow
    :rtype: complex
    """
    from ResidueForge import BoundaryRational
    reduced = f.reduce()
    if reduced.isZero():
        return 0j
    decay = reduced.plusOrder + reduced.minusOrder - reduced.numeratorDegree
    if decay < 2:
        raise BoundaryRational.NonIntegrableError("Integrand decays like xi_n^-" + str(decay))
    size = spinorDimension(f.dimension)

    def scalarPart(x):
        return np.trace(_rationalValue(reduced, bindings, x)) / size

    real, realError = quad(lambda x: scalarPart(x).real, -cutoff, cutoff, points=[0.0], limit=500, epsabs=1e-13,
                           epsrel=1e-12)
    imag, imagError = quad(lambda x: scalarPart(x).imag, -cutoff, cutoff, points=[0.0], limit=500, epsabs=1e-13,
                           epsrel=1e-12)
    leading = np.trace(gammaImage(reduced.numerator[-1], bindings)) / size
    tail = leading * cutoff ** (1 - decay) * (1 + (-1) ** decay) / (decay - 1)
    oracle_logger.debug(f"quadLine: quadrature error {max(realError, imagError):.2e}, tail {abs(tail):.2e}")
    return complex(real, imag) + complex(tail)


class MonteCarloEstimate:
    """Monte-Carlo sphere integral with its standard error."""

    def __init__(self, value, standardError, samples):
        self.value = value
        self.standardError = standardError
        self.samples = samples

    def contains(self, reference, sigmas=3):
        return abs(self.value - reference) <= sigmas * self.standardError + 1e-15

    def __str__(self):
        return f"{self.value:.8g} +- {self.standardError:.2g} ({self.samples} samples)"


def mcSphere(polynomial, samples=10 ** 6, seed=DEFAULT_SEED, dimension=4, bindings=None):
    """Uniform Monte-Carlo estimate of the integral over |xi'| = 1.

    :param polynomial: integrand in xi_1..xi_{n-1}
    :type polynomial: Scalar
    :param samples: number of sample points
    :type samples: int
    :rtype: MonteCarloEstimate
    """
    rng = np.random.default_rng(seed)
    sphereDimension = dimension - 1
    points = rng.standard_normal((samples, sphereDimension))
    points /= np.linalg.norm(points, axis=1)[:, None]
    values = dict(bindings or {})
    for j in range(sphereDimension):
        values[xiName(j + 1)] = points[:, j]
    sampled = np.real(np.asarray(polynomial.substitute(values))) * np.ones(samples)
    area = sphereVolume(sphereDimension)
    estimate = MonteCarloEstimate(area * sampled.mean(), area * sampled.std(ddof=1) / math.sqrt(samples), samples)
    oracle_logger.debug(f"mcSphere: {estimate}")
    return estimate


def sphereQuadrature(nTheta=10, nPhi=20):
    """Gauss-Legendre in cos(theta) times the trapezoid rule in phi on the unit 2-sphere.

    Exact for polynomials of degree below min(2 nTheta, nPhi).

    :return: points of shape (nTheta * nPhi, 3) and weights summing to 4 pi
    :rtype: tuple of numpy arrays
    """
    nodes, weights = np.polynomial.legendre.leggauss(nTheta)
    phi = 2 * np.pi * np.arange(nPhi) / nPhi
    cosTheta, angle = np.meshgrid(nodes, phi, indexing="ij")
    sinTheta = np.sqrt(1 - cosTheta ** 2)
    points = np.stack([sinTheta * np.cos(angle), sinTheta * np.sin(angle), cosTheta], axis=-1).reshape(-1, 3)
    pointWeights = np.repeat(weights, nPhi) * (2 * np.pi / nPhi)
    return points, pointWeights


def conormalQuadrature(nodes=96):
    """Gauss-Legendre rule for the real xi_n line through xi_n = tan(theta).

    :return: points and weights including the Jacobian sec^2(theta)
    :rtype: tuple of numpy arrays
    """
    t, w = np.polynomial.legendre.leggauss(nodes)
    theta = t * np.pi / 2
    return np.tan(theta), w * (np.pi / 2) / np.cos(theta) ** 2


def cauchyContour(radius=0.5, nodes=64, center=1j):
    """Nodes z_q and weights dz_q / (2 pi i) of the periodic trapezoid rule on |z - center| = radius."""
    angles = 2 * np.pi * np.arange(nodes) / nodes
    points = center + radius * np.exp(1j * angles)
    weights = radius * np.exp(1j * angles) / nodes
    return points, weights


def piPlusKernel(points, derivativeOrder=0, radius=0.5, nodes=64):
    """Matrix K with (d/dxi)^k pi^+ f(xi_m) = sum_q K[m, q] f(z_q) for the contour nodes z_q.

    Uses the Cauchy integral of f(z) / (xi - z) around xi_n = i, which picks the
    principal part at i for every xi outside the contour.

    :return: kernel and contour nodes
    :rtype: tuple of numpy arrays
    """
    contour, weights = cauchyContour(radius, nodes)
    points = np.asarray(points, dtype=complex)
    difference = points[:, None] - contour[None, :]
    k = derivativeOrder
    kernel = weights[None, :] * (-1) ** k * math.factorial(k) / difference ** (k + 1)
    return kernel, contour


def numericPiPlus(f, bindings, points, derivativeOrder=0, radius=0.5, nodes=64):
    """pi^+ of a BoundaryRational evaluated numerically at the given points.

    Independent of the partial-fraction implementation: only values of f on
    the contour |z - i| = radius enter.

    :param f: the rational function
    :type f: BoundaryRational
    :param points: evaluation points at distance more than radius from i
    :type points: array of complex
    :param derivativeOrder: xi_n derivatives applied after the projection
    :type derivativeOrder: int
    :rtype: numpy array of shape (len(points), 4, 4)
    """
    kernel, contour = piPlusKernel(points, derivativeOrder, radius, nodes)
    values = _rationalValue(f, bindings, contour)
    return np.einsum("mq,qij->mij", kernel, values)


def randomBindings(names, rng, count=1):
    """Random rational values p/q with |p| <= 9 and 1 <= q <= 9 for every name.

    :return: value arrays of shape (count,) per name
    :rtype: dict string -> numpy array
    """
    values = {}
    for name in sorted(names):
        numerators = rng.integers(-9, 10, size=count)
        denominators = rng.integers(1, 10, size=count)
        values[name] = numerators / denominators
    return values
