from fractions import Fraction
from ResidueForge import (GaussianRational, IMAG, XiPolynomial, SymbolTerm, OperatorTag,
                          Presets, PsiSpec, DeltaConvention, buildJets, compose, psiTraceBindings, reduceSphereRelation,
                          xiName, defaultRing, setup_logger)
from .densityExpression import DensityExpression

ledger_logger = setup_logger.logger.getChild("ledger")


def _g(re, im=0):
    return GaussianRational(Fraction(re), Fraction(im))


class LedgerEntry:
    """One comparison between a printed formula and the engine.

    :param key: identifier, e.g. ``thm1/(a)(II)``
    :type key: string
    :param printed: the printed formula as latex
    :type printed: string
    :param transcribed: the printed value in the engine basis, None if not transcribable
    :type transcribed: DensityExpression, Scalar, string or None
    :param engine: the engine value
    :type engine: DensityExpression, Scalar or string
    :param delta: engine minus transcribed after normalization
    :type delta: DensityExpression, Scalar, string or None
    :param note: how the printed formula was read
    :type note: string
    """

    def __init__(self, key, printed, transcribed, engine, delta, note=""):
        self.key = key
        self.printed = printed
        self.transcribed = transcribed
        self.engine = engine
        self.delta = delta
        self.note = note

    @property
    def matches(self):
        """True if engine and transcription agree, None if nothing was compared."""
        if self.delta is None:
            return None
        if isinstance(self.delta, str):
            return self.delta == "0"
        return self.delta.isZero()

    @staticmethod
    def _jsonValue(value):
        if value is None or isinstance(value, str):
            return value
        return {"latex": value.toLatex(), "terms": value.toJson()}

    def toJson(self):
        return {
            "key": self.key,
            "printed": self.printed,
            "transcribed": LedgerEntry._jsonValue(self.transcribed),
            "engine": LedgerEntry._jsonValue(self.engine),
            "delta": LedgerEntry._jsonValue(self.delta),
            "matches": self.matches,
            "note": self.note,
        }

    def __str__(self):
        state = {True: "matches", False: "DEVIATES", None: "not compared"}[self.matches]
        return self.key + ": " + state + ("" if self.matches is not False else ", delta = " + str(self.delta))


class DiscrepancyLedger:
    """Ordered collection of ledger entries; deviations are logged as warnings."""

    def __init__(self, entries=None):
        self.entries = []
        for entry in entries or []:
            self.add(entry)

    def add(self, entry):
        if entry.matches is False:
            ledger_logger.warning(f"Printed value {entry.key} deviates from the engine by {entry.delta}")
        else:
            ledger_logger.debug(f"Ledger entry {entry.key}: matches={entry.matches}")
        self.entries.append(entry)

    def extend(self, entries):
        for entry in entries:
            self.add(entry)

    def deviations(self):
        return [entry for entry in self.entries if entry.matches is False]

    def __getitem__(self, key):
        for entry in self.entries:
            if entry.key == key:
                return entry
        raise KeyError(key)

    def keys(self):
        return [entry.key for entry in self.entries]

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def toJson(self):
        return [entry.toJson() for entry in self.entries]

    def __str__(self):
        return "\n".join(str(entry) for entry in self.entries)


class PrintedValues:
    """Printed boundary densities written in the engine basis.

    Basis: ``gXYT`` for g(X^T,Y^T), X4*Y4 for X_nY_n, ``Tn`` = trace[c(dx_n)c(Psi)],
    ``TXPsi``/``TYPsi`` for trace[c(X)c(Psi)] and trace[c(Y)c(Psi)], ``dY44`` for
    d_{x_n}Y_n. Everything is generic in Psi.
    """

    notes = {
        "dY": "trace(i X_n dY_n/dx_n) read as 4i X_4 dY44",
        "sum": "sum_{j,l<n} X_j Y_l read literally as (sum_j X_j)(sum_l Y_l)",
        "sigma0": "trace[c(dx_n)sigma_0(D)] read as 3h'(0)",
    }

    def __init__(self, ring=defaultRing):
        self.ring = ring
        s = ring.symbol
        self.pi = s("pi")
        self.omega = s("Omega3")
        self.h1 = s("h1")
        self.gT = s("gXYT")
        self.xn = s("X4")
        self.yn = s("Y4")
        self.xnyn = self.xn * self.yn
        self.tn = s("Tn")
        self.tx = s("TXPsi")
        self.ty = s("TYPsi")
        self.dyn = s("dY44")
        self.sumXsumY = (s("X1") + s("X2") + s("X3")) * (s("Y1") + s("Y2") + s("Y3"))

    def _derivativeTerm(self):
        # trace(i X_n dY_n/dx_n) - TX*Y_n - TY*X_n
        return self.xn * self.dyn * (IMAG * 4) - self.tx * self.yn - self.ty * self.xn

    def theorem1(self):
        """Printed case densities and total of the first theorem.

        :return: key -> (latex, transcribed Scalar, note)
        :rtype: dict
        """
        pi, om, h1, gT, xnyn, tn = self.pi, self.omega, self.h1, self.gT, self.xnyn, self.tn
        values = {
            "(a)(I)": (r"0", self.ring.zero(), ""),
            "(a)(II)": (r"\frac{13}{8}h'(0)\pi\Omega_3\left(\frac{\pi}{3}g(X^T,Y^T)+\frac{1}{4}X_nY_n\right)",
                        h1 * pi * om * (pi * gT * Fraction(1, 3) + xnyn * Fraction(1, 4)) * Fraction(13, 8), ""),
            "(a)(III)": (r"\frac{5}{4}h'(0)\pi\Omega_3\left(\frac{\pi}{3}g(X^T,Y^T)+\frac{i}{4}X_nY_n\right)",
                         h1 * pi * om * (pi * gT * Fraction(1, 3) + xnyn * _g(0, Fraction(1, 4))) * Fraction(5, 4), ""),
            "(b)": (r"\left\{\left(\frac{\pi^2-5i\pi^2}{12}g(X^T,Y^T)+\frac{11\pi i}{16}X_nY_n\right)h'(0)"
                    r"+\left(\frac{\pi^2}{12}g(X^T,Y^T)-\frac{\pi i}{8}X_nY_n\right)T_n\right\}\Omega_3",
                    ((pi * pi * gT * _g(Fraction(1, 12), Fraction(-5, 12)) + pi * xnyn * _g(0, Fraction(11, 16))) * h1
                     + (pi * pi * gT * Fraction(1, 12) - pi * xnyn * _g(0, Fraction(1, 8))) * tn) * om, ""),
            "(c)": (r"\left(\frac{5i-13}{6}g(X^T,Y^T)+\frac{3-96i}{8}X_nY_n\right)h'(0)\pi^2\Omega_3"
                    r"-\left(\frac{\pi^2}{6}g(X^T,Y^T)+\frac{\pi}{8}X_nY_n\right)\Omega_3T_n"
                    r"+\frac{i\pi}{8}\Omega_3\left(\mathrm{tr}(iX_n\partial_{x_n}Y_n)-T_XY_n-T_YX_n\right)",
                    (gT * _g(Fraction(-13, 6), Fraction(5, 6)) + xnyn * _g(Fraction(3, 8), -12)) * h1 * pi * pi * om
                    - (pi * pi * gT * Fraction(1, 6) + pi * xnyn * Fraction(1, 8)) * om * tn
                    + self._derivativeTerm() * pi * om * _g(0, Fraction(1, 8)),
                    PrintedValues.notes["dY"]),
            "total": (r"\left(\frac{15-362i}{32}X_nY_n+\frac{(10i-27)\pi}{24}g(X^T,Y^T)\right)h'(0)\pi\Omega_3"
                      r"+\left(\frac{\pi^2}{6}g(X^T,Y^T)+\frac{\pi-\pi i}{8}X_nY_n\right)T_n\Omega_3"
                      r"+\frac{i\pi}{8}\left(\mathrm{tr}(iX_n\partial_{x_n}Y_n)-T_XY_n-T_YX_n\right)\Omega_3",
                      (xnyn * _g(Fraction(15, 32), Fraction(-362, 32)) + pi * gT * _g(Fraction(-27, 24), Fraction(10, 24)))
                      * h1 * pi * om
                      + (pi * pi * gT * Fraction(1, 6) + pi * xnyn * _g(Fraction(1, 8), Fraction(-1, 8))) * tn * om
                      + self._derivativeTerm() * pi * om * _g(0, Fraction(1, 8)),
                      PrintedValues.notes["dY"]),
        }
        return values

    def theorem2(self):
        """Printed case densities and total of the second theorem."""
        pi, om, h1, gT, xnyn, tn = self.pi, self.omega, self.h1, self.gT, self.xnyn, self.tn
        crossed = (-self.tx * self.xn - self.ty * self.yn) * pi * om * _g(0, Fraction(3, 16))
        values = {
            "(1)": (r"0", self.ring.zero(), ""),
            "(2)": (r"-\left[\frac{592}{3}\pi g(X^T,Y^T)+\left(\frac{461}{4}+\frac{23i}{4}\right)X_nY_n\right]h'(0)\pi\Omega_3",
                    -(pi * gT * Fraction(592, 3) + xnyn * _g(Fraction(461, 4), Fraction(23, 4))) * h1 * pi * om, ""),
            "(3)": (r"\left(\frac{5\pi i}{6}g(X^T,Y^T)+\frac{5i}{8}X_nY_n\right)h'(0)\pi\Omega_3",
                    (pi * gT * _g(0, Fraction(5, 6)) + xnyn * _g(0, Fraction(5, 8))) * h1 * pi * om, ""),
            "(4)": (r"\left(\frac{55\pi}{24}g(X^T,Y^T)+\frac{15i-60+\pi}{8}X_nY_n\right)h'(0)\pi\Omega_3"
                    r"-\left(\frac{\pi^2}{3}\sum_{j,l}X_jY_l+\frac{3\pi}{4}X_nY_n\right)T_n\Omega_3"
                    r"-\frac{3\pi}{4}X_nY_n\mathrm{tr}[c(dx_n)\sigma_0(D)]\Omega_3"
                    r"+\frac{3\pi i}{16}\left(-T_XX_n-T_YY_n\right)\Omega_3",
                    (pi * gT * Fraction(55, 24) + xnyn * (_g(Fraction(-60, 8), Fraction(15, 8)) + pi * Fraction(1, 8)))
                    * h1 * pi * om
                    - (pi * pi * self.sumXsumY * Fraction(1, 3) + pi * xnyn * Fraction(3, 4)) * tn * om
                    - pi * xnyn * h1 * om * Fraction(9, 4)
                    + crossed,
                    PrintedValues.notes["sum"] + "; " + PrintedValues.notes["sigma0"]),
            "(5)": (r"\sum_{j,l}X_jY_l\left(-\frac{2\pi^2}{3}\right)T_n\Omega_3+X_nY_n\frac{i\pi}{2}T_n\Omega_3"
                    r"+\sum_{j,l}X_jY_lh'(0)\left(\frac{55}{26}+\frac{85i}{24}\right)\pi^2\Omega_3"
                    r"+X_nY_n\left(-\frac{50+7i}{16}\right)\pi\Omega_3",
                    self.sumXsumY * pi * pi * tn * om * Fraction(-2, 3)
                    + xnyn * pi * tn * om * _g(0, Fraction(1, 2))
                    + self.sumXsumY * h1 * pi * pi * om * _g(Fraction(55, 26), Fraction(85, 24))
                    + xnyn * pi * om * _g(Fraction(-50, 16), Fraction(-7, 16)),
                    PrintedValues.notes["sum"]),
            "total": (r"\left[\left(-\frac{4681}{24}+\frac{5i}{6}\right)\pi^2+\frac{55}{26}+\frac{85i}{24}\right]"
                      r"g(X^T,Y^T)h'(0)\Omega_3"
                      r"+\left[\left(\frac{451}{4}+7i+\frac{\pi}{8}\right)h'(0)-\frac{50+7i}{16}\right]X_nY_n\pi\Omega_3"
                      r"-\left[\frac{3\pi+2\pi i}{4}X_nY_n+\pi^2g(X^T,Y^T)\right]T_n\Omega_3"
                      r"-\frac{9}{16}h'(0)\pi\Omega_3+\frac{3\pi i}{16}\left(-T_XX_n-T_YY_n\right)\Omega_3",
                      (pi * pi * _g(Fraction(-4681, 24), Fraction(5, 6)) + _g(Fraction(55, 26), Fraction(85, 24)))
                      * gT * h1 * om
                      + ((h1 * _g(Fraction(451, 4), 7) + h1 * pi * Fraction(1, 8)) + _g(Fraction(-50, 16), Fraction(-7, 16)))
                      * xnyn * pi * om
                      - (pi * xnyn * _g(Fraction(3, 4), Fraction(2, 4)) + pi * pi * gT) * tn * om
                      - h1 * pi * om * Fraction(9, 16)
                      + crossed,
                      ""),
        }
        return values

    def forTheorem(self, theorem):
        return self.theorem1() if theorem == 1 else self.theorem2()

    def vectorCorollary(self):
        """Printed boundary Tn-term of the first theorem for Psi = c(U)."""
        latex = r"-\left(\frac{2\pi^2}{3}g(X^T,Y^T)+\frac{\pi-\pi i}{2}X_nY_n\right)g(\partial_{x_n},U)\Omega_3"
        value = -(self.pi * self.pi * self.gT * Fraction(2, 3) + self.pi * self.xnyn * _g(Fraction(1, 2), Fraction(-1, 2))) \
            * self.ring.symbol("U4") * self.omega
        return latex, value


def compareDensity(key, printed, transcribed, engine, psi=None, note=""):
    """Ledger entry for a printed density against an engine density.

    Both sides are normalized (Omega3 -> 4 pi); a concrete perturbation is
    substituted into the generic transcription first.

    :param transcribed: printed value in the engine basis
    :type transcribed: Scalar
    :param engine: engine value
    :type engine: DensityExpression
    :param psi: perturbation the engine value belongs to
    :type psi: PsiSpec, optional
    :rtype: LedgerEntry
    """
    reading = DensityExpression(transcribed, engine.dimension)
    if psi is not None and not psi.isGeneric:
        reading = reading.instantiate(psi)
    delta = engine.normalized() - reading.normalized()
    return LedgerEntry(key, printed, reading, engine, delta, note)


def densityEntries(theorem, caseDensities, total, psi=None, ring=defaultRing):
    """Ledger entries for every case and the total of one theorem.

    :param caseDensities: case label -> engine density
    :type caseDensities: dict string -> DensityExpression
    :rtype: list of LedgerEntry
    """
    printed = PrintedValues(ring).forTheorem(theorem)
    entries = []
    prefix = "thm" + str(theorem) + "/"
    for label, density in list(caseDensities.items()) + [("total", total)]:
        if label not in printed:
            continue
        latex, value, note = printed[label]
        entries.append(compareDensity(prefix + label, latex, value, density, psi, note))
    return entries


def vectorCorollaryEntry(genericTotal, ring=defaultRing):
    """Compares the printed Tn-term for Psi = c(U) with the generic engine total."""
    latex, value = PrintedValues(ring).vectorCorollary()
    tn = psiTraceBindings(PsiSpec(PsiSpec.Kind.vector), genericTotal.dimension, ring)["Tn"]
    engine = DensityExpression(genericTotal.coefficientOf({"Tn": 1}) * tn, genericTotal.dimension)
    delta = engine.normalized() - DensityExpression(value, genericTotal.dimension).normalized()
    return LedgerEntry("thm1/corollary vector Tn-term", latex, DensityExpression(value), engine, delta,
                       "g(d_{x_n},U) read as U4, Tn = trace[c(U)c(dx_n)] = -4 U4")


def _symbolDelta(printed, engine):
    difference = printed - engine
    return "0" if difference.isZero() else str(difference)


def symbolEntries(presets):
    """Lemma-level comparisons of printed symbols with composed or derived ones.

    :param presets: the symbol library of the run
    :type presets: Presets
    :rtype: list of LedgerEntry
    """
    entries = []
    n = presets.dimension
    ring = presets.ring

    # sigma_{-3}(D^{-2}) as stored against D^{-1} o D^{-1}
    spinPresets = Presets(presets.psiSpec, buildJets(n, DeltaConvention.SPIN, ring))
    inverse = spinPresets.preset(OperatorTag.DInverse)
    composed = compose(inverse, inverse, -3, "D_Psi^-1 o D_Psi^-1")[-3]
    stored = presets.preset(OperatorTag.DInverseSquared)[-3]
    entries.append(LedgerEntry(
        "symbol/sigma_-3(D_Psi^-2)",
        r"-i|\xi|^{-4}\xi_k(\Gamma^k-2\delta^k)-i|\xi|^{-6}2\xi^j\xi_\alpha\xi_\beta\partial_jg^{\alpha\beta}"
        r"-\left(c(\Psi)ic(\xi)+ic(\xi)c(\Psi)\right)|\xi|^{-4}",
        str(stored), str(composed), _symbolDelta(stored, composed),
        "delta convention " + presets.jets.deltaConvention.name + " against the composition of two inverses"))

    # sigma_2(D^3) as printed against the threefold composition
    c = XiPolynomial.cliffordXi(n, ring)
    norm = XiPolynomial.normSquared(n, ring)
    psi = XiPolynomial(presets.psi)
    jets = presets.jets
    printedCube = c * (jets.spinContraction().scale(4) - jets.gammaContraction().scale(2)) \
        - norm * XiPolynomial(jets.sigma0D) - (norm * psi).scale(2) - (c * psi * c).scale(2)
    printedTerm = SymbolTerm(printedCube, 0, 2)
    composedCube = presets.preset(OperatorTag.DCubed)[2]
    entries.append(LedgerEntry(
        "symbol/sigma_2(D_Psi^3)",
        r"c(\xi)(4\sigma^k-2\Gamma^k)\xi_{k}-\frac{1}{4}|\xi|^2\sum_{s,t}\omega_{s,t}(\widetilde{e_l})c(e_{l})"
        r"c(\widetilde{e_s})c(\widetilde{e_t})-2|\xi|^2c(\Psi)-2c(\xi)c(\Psi)c(\xi)",
        str(printedTerm), str(composedCube), _symbolDelta(printedTerm, composedCube),
        "engine value composed from sigma(D_Psi) three times"))

    # sigma_1(NablaNabla) as printed against the operator product
    xPairing = presets.pairing("X")
    yPairing = presets.pairing("Y")
    derivative = ring.zero()
    for j, component in enumerate(presets.fieldComponents("X")):
        for l in range(1, n + 1):
            derivative = derivative + component * ring.symbol("dY" + str(j + 1) + str(l)) * ring.symbol(xiName(l))
    gX = presets.potential("X") - jets.spinConnection(presets.fieldComponents("X"))
    printedFirst = XiPolynomial.fromScalar(-derivative, n, ring) \
        + XiPolynomial(presets.potential("Y").scale(xPairing + yPairing)).scale(IMAG) \
        + XiPolynomial(gX.scale(xPairing + yPairing)).scale(IMAG)
    printedNabla = SymbolTerm(printedFirst, 0, 1)
    derivedNabla = presets.preset(OperatorTag.NablaNabla)[1]
    entries.append(LedgerEntry(
        "symbol/sigma_1(NablaNabla)",
        r"i\sum_{j,l}X_j\frac{\partial_{Y_l}}{\partial_{x_j}}i\xi_l+i\sum_jA(Y)X_j\xi_j+i\sum_lA(Y)Y_l\xi_l"
        r"+\sum_jG(X,\Psi)Y_ji\xi_j+\sum_jG(X,\Psi)X_ji\xi_j",
        str(printedNabla), str(derivedNabla), _symbolDelta(printedNabla, derivedNabla),
        "engine value derived from the product of the two covariant derivatives"))

    entries.append(piPlusEntry(presets))
    return entries


def piPlusEntry(presets):
    """Printed X_nY_n coefficient of pi^+ sigma_0(NablaNabla D^{-2}) against the exact projection.

    The coefficient is read off (xi_n - i) pi^+ sigma_0 at |xi'| = 1.
    """
    n = presets.dimension
    ring = presets.ring
    term = presets.preset(OperatorTag.NablaNablaDInverseSquared)[0]
    restricted = term.restrictBoundary().mapCoefficients(lambda c: reduceSphereRelation(c, n - 1, ring))
    projected = restricted.piPlus()
    engine = ring.zero()
    if projected.plusOrder == 1 and projected.numerator:
        split = projected.numerator[0].grade0().coefficientsIn(["X" + str(n), "Y" + str(n)])
        engine = split.get((("X" + str(n), 1), ("Y" + str(n), 1)), ring.zero())
    transcribed = ring.constant(Fraction(-1, 2))
    return LedgerEntry("symbol/pi+ sigma_0(NablaNabla D_Psi^-2) X_nY_n", r"-\frac{X_nY_n}{2(\xi_n-i)}",
                       transcribed, engine, engine - transcribed,
                       "coefficient of X_nY_n/(xi_n - i)")
