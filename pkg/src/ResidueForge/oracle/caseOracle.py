import time
import zlib
import numpy as np
from ResidueForge import normalizationBindings, theoremOperators, xiName, setup_logger
from .collarModel import CollarFactorModel
from .numericOracle import (OracleReport, gammaImage, gammaMatrices, sphereQuadrature, conormalQuadrature,
                            piPlusKernel, randomBindings, DEFAULT_SEED, DEFAULT_TOLERANCE)

caseoracle_logger = setup_logger.logger.getChild("caseOracle")


def _freeSymbols(scalars, dimension):
    """Symbols needing random values: everything but the xi variables and the volume constants."""
    reserved = set(xiName(k) for k in range(1, dimension + 1)) | set(normalizationBindings())
    names = set()
    for value in scalars:
        names |= set(value.variables())
    return names - reserved


class CaseOracle:
    """Numeric evaluation of the raw case integrals under seeded random bindings.

    For each case the integrand trace[d^k pi^+ left * d^(j+1) right] is
    evaluated numerically: the symbol factors through the gamma-matrix model,
    pi^+ through a Cauchy integral around xi_n = i, the xi_n integral with
    Gauss-Legendre on xi_n = tan(theta) and the sphere integral with a
    product rule. The result is compared with the substituted exact density.

    Only the undifferentiated symbols are shared with the engine. x_n-derivatives
    come from a numeric model of the collar, xi_n-derivatives from Cauchy
    integrals, see CollarFactorModel.

    :param engine: engine providing the undifferentiated symbols and the exact densities
    :type engine: BoundaryEngine
    :param seed: seed of the random bindings
    :type seed: int
    :param bindingsCount: number of random binding sets
    :type bindingsCount: int
    :param tolerance: accepted relative error
    :type tolerance: float
    """

    class UnsupportedCaseError(Exception):
        pass

    def __init__(self, engine, seed=DEFAULT_SEED, bindingsCount=20, tolerance=DEFAULT_TOLERANCE, nTheta=12, nPhi=24,
                 conormalNodes=64, contourNodes=64, contourRadius=0.5, chunkSize=5):
        if engine.dimension != 4:
            raise ValueError("The numeric oracle works in dimension 4")
        self.engine = engine
        self.seed = seed
        self.bindingsCount = bindingsCount
        self.tolerance = tolerance
        self.spherePoints, self.sphereWeights = sphereQuadrature(nTheta, nPhi)
        self.conormalPoints, self.conormalWeights = conormalQuadrature(conormalNodes)
        self.contourNodes = contourNodes
        self.contourRadius = contourRadius
        self.chunkSize = chunkSize
        self.model = CollarFactorModel(engine.dimension)
        gammaMatrices(engine.dimension)

    @property
    def metadata(self):
        return {
            "seed": self.seed,
            "bindings": self.bindingsCount,
            "sphere_points": len(self.sphereWeights),
            "conormal_nodes": len(self.conormalWeights),
            "contour_nodes": self.contourNodes,
        }

    def _grid(self, bindings):
        """Bindings and tangential xi on the (bindings, sphere points, xi_n points) grid."""
        values = {name: value.reshape(-1, 1, 1) for name, value in bindings.items()}
        xi = [self.spherePoints[None, :, j, None] for j in range(self.engine.dimension - 1)]
        return values, xi

    def _filled(self, image, bindings, conormal):
        count = len(next(iter(bindings.values()))) if bindings else 1
        shape = (count, len(self.spherePoints), len(conormal), image.shape[-2], image.shape[-1])
        return np.broadcast_to(image, shape)

    def _symbolValues(self, term, bindings, conormal):
        """Matrix values of a SymbolTerm on sphere points x conormal points.

        :return: array of shape (bindings, sphere points, conormal points, 4, 4)
        """
        n = self.engine.dimension
        values, xi = self._grid(bindings)
        for j in range(n - 1):
            values[xiName(j + 1)] = xi[j]
        values[xiName(n)] = conormal[None, None, :]
        image = gammaImage(term.numerator.element, values)
        normSquared = np.sum(self.spherePoints ** 2, axis=1)[:, None] + conormal[None, :] ** 2
        image = self._filled(image, bindings, conormal)
        return image / (normSquared ** term.normPower)[None, :, :, None, None]

    def _leadingDerivative(self, tag, expansion, order, derivatives, bindings, conormal):
        """d^derivatives_{x_n} of the leading symbol from the collar model."""
        if order != expansion.leadingOrder:
            raise CaseOracle.UnsupportedCaseError(
                "x_n-derivatives are only modelled for the leading symbol of " + str(expansion.tag))
        values, xi = self._grid(bindings)
        xi = xi + [conormal[None, None, :]]
        return self._filled(self.model.normalDerivative(tag, derivatives, xi, values), bindings, conormal)

    def _leftValues(self, theorem, case, bindings, conormal):
        numerator, _ = self.engine.operators(theorem)
        if case.j == 0:
            return self._symbolValues(numerator[case.r], bindings, conormal)
        return self._leadingDerivative(theoremOperators[theorem][0], numerator, case.r, case.j, bindings, conormal)

    def _rightValues(self, theorem, case, bindings, conormal):
        _, denominator = self.engine.operators(theorem)
        if case.k == 0:
            return self._symbolValues(denominator[case.ell], bindings, conormal)
        return self._leadingDerivative(theoremOperators[theorem][1], denominator, case.ell, case.k, bindings, conormal)

    def factorValues(self, theorem, case, bindings):
        """The two factors of a case with alpha = 0, evaluated without the symbolic calculus.

        The left factor d^j_{x_n} sigma_r is evaluated on the pi^+ contour, the right
        factor d^(j+1)_{xi_n} d^k_{x_n} sigma_l on the real xi_n nodes. x_n-derivatives
        come from the collar model, xi_n-derivatives from Cauchy integrals of the
        undifferentiated values.

        :rtype: tuple of numpy arrays
        """
        _, contour = piPlusKernel(self.conormalPoints, case.k, self.contourRadius, self.contourNodes)
        left = self._leftValues(theorem, case, bindings, contour)
        right = self.model.conormalDerivative(lambda points: self._rightValues(theorem, case, bindings, points),
                                              case.j + 1, self.conormalPoints)
        return left, right

    def engineFactorValues(self, theorem, case, alpha, bindings):
        """The factors of :meth:`factorValues` from the engine's symbolic derivatives, for comparison."""
        n = self.engine.dimension
        numerator, denominator = self.engine.operators(theorem)
        left, right = self.engine.caseFactors(case, alpha, numerator, denominator)
        for _ in range(case.j + 1):
            right = right.xiDerivative(n)
        _, contour = piPlusKernel(self.conormalPoints, case.k, self.contourRadius, self.contourNodes)
        return (self._symbolValues(left, bindings, contour),
                self._symbolValues(right, bindings, self.conormalPoints.astype(complex)))

    def _caseIntegral(self, case, left, right):
        kernel, _ = piPlusKernel(self.conormalPoints, case.k, self.contourRadius, self.contourNodes)
        projected = np.einsum("mq,bsqij->bsmij", kernel, left)
        traces = np.einsum("bsmij,bsmji->bsm", projected, right)
        return (traces @ self.conormalWeights) @ self.sphereWeights

    def numericCase(self, theorem, case, bindings):
        """Numeric density of a case for every binding set.

        Only alpha = 0 contributes: the collar metric does not depend on x', so the
        tangential x-derivatives of the right factor vanish.

        :param bindings: value arrays of equal length per symbol
        :type bindings: dict string -> numpy array
        :raises CaseOracle.UnsupportedCaseError: if a subleading symbol needs x_n-derivatives
        :rtype: numpy array of complex
        """
        count = len(next(iter(bindings.values()))) if bindings else 1
        total = np.zeros(count, dtype=complex)
        if case.alphaOrder:
            return total
        prefactor = complex(case.prefactor())
        for start in range(0, count, self.chunkSize):
            chunk = {name: value[start:start + self.chunkSize] for name, value in bindings.items()}
            left, right = self.factorValues(theorem, case, chunk)
            total[start:start + self.chunkSize] += prefactor * self._caseIntegral(case, left, right)
        return total

    def caseSymbols(self, theorem, case, density):
        numerator, denominator = self.engine.operators(theorem)
        scalars = [density.expanded()]
        scalars.extend(numerator[case.r].numerator.element.terms.values())
        scalars.extend(denominator[case.ell].numerator.element.terms.values())
        names = _freeSymbols(scalars, self.engine.dimension)
        if case.j or case.k:
            names.add("h1")
        return names

    def checkCase(self, theorem, case, density=None):
        """Compares the exact density of a case with its numeric evaluation.

        :param density: the exact density, evaluated by the engine if None
        :type density: DensityExpression, optional
        :rtype: OracleReport
        """
        starttime = time.time()
        if density is None:
            density = self.engine.evaluateTheoremCase(theorem, case)
        rng = np.random.default_rng([self.seed, theorem, zlib.crc32(str(case).encode())])
        bindings = randomBindings(self.caseSymbols(theorem, case, density), rng, self.bindingsCount)
        symbolicBindings = dict(bindings)
        symbolicBindings.update(normalizationBindings())
        symbolic = np.asarray(density.substitute(symbolicBindings)) * np.ones(self.bindingsCount)
        numeric = self.numericCase(theorem, case, bindings)
        report = OracleReport.worst("thm" + str(theorem) + "/" + case.label + " psi=" + str(self.engine.psi),
                                    list(zip(symbolic, numeric)), self.tolerance, self.metadata,
                                    time.time() - starttime)
        caseoracle_logger.info(str(report))
        return report

    def checkTheorem(self, theorem, densities=None):
        """Oracle reports for all cases of a theorem.

        :param densities: exact densities by case label
        :type densities: dict string -> DensityExpression, optional
        :rtype: list of OracleReport
        """
        densities = densities or {}
        return [self.checkCase(theorem, case, densities.get(case.label)) for case in self.engine.cases(theorem)]


def numericTraceE(psiImage, s, dimension=4):
    """trace[s/4 + sum_j 1/2 P gamma_j P gamma_j + (1 - n/2) P^2] in the matrix model."""
    gammas = gammaMatrices(dimension)
    identity = np.eye(psiImage.shape[-1])
    matrix = np.asarray(s)[..., None, None] / 4 * identity + (1 - dimension / 2) * psiImage @ psiImage
    for gamma in gammas:
        matrix = matrix + 0.5 * psiImage @ gamma @ psiImage @ gamma
    return np.trace(matrix, axis1=-2, axis2=-1)


def interiorReports(interior, seed=DEFAULT_SEED, bindingsCount=50, tolerance=DEFAULT_TOLERANCE):
    """Checks trace E and the antisymmetry of F for an assembled interior density.

    :param interior: the interior density
    :type interior: InteriorDensity
    :rtype: list of OracleReport
    """
    if interior.traceETerm is None:
        interior.assembleInterior()
    rng = np.random.default_rng([seed, interior.psiSpec.kind.value])
    names = set(interior.traceETerm.variables()) | set(interior.fTraceTerm.variables()) | {"s"}
    for term in interior.psi.terms.values():
        names |= set(term.variables())
    bindings = randomBindings(names, rng, bindingsCount)
    symbolic = np.asarray(interior.traceETerm.substitute(bindings)) * np.ones(bindingsCount)
    numeric = numericTraceE(np.broadcast_to(gammaImage(interior.psi, bindings), (bindingsCount, 4, 4)), bindings["s"],
                            interior.dimension)
    metadata = {"seed": seed, "bindings": bindingsCount}
    reports = [OracleReport.worst("interior/trace E psi=" + str(interior.psiSpec), list(zip(symbolic, numeric)),
                                  tolerance, metadata)]

    swapped = dict(bindings)
    for name, value in bindings.items():
        if name.startswith("X") or name.startswith("Y"):
            swapped[("Y" if name[0] == "X" else "X") + name[1:]] = value
        elif name.startswith("nablaX") or name.startswith("nablaY"):
            swapped["nabla" + ("Y" if name[5] == "X" else "X") + name[6:]] = value
    forward = np.asarray(interior.fTraceTerm.substitute(bindings)) * np.ones(bindingsCount)
    backward = np.asarray(interior.fTraceTerm.substitute(swapped)) * np.ones(bindingsCount)
    reports.append(OracleReport.worst("interior/F antisymmetry psi=" + str(interior.psiSpec),
                                      list(zip(forward, -backward)), tolerance, metadata))
    for report in reports:
        caseoracle_logger.info(str(report))
    return reports
