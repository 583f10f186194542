import sys
import time
import argparse
from ResidueForge import (BoundaryEngine, CaseEvaluator, CaseOracle, DensityExpression, InteriorDensity, Result,
                          interiorReports, psiTraceBindings, setup_logger)
from ResidueForge.runConfig import (RunConfig, theoremChoices, psiChoices, modeChoices, formatChoices, deltaChoices,
                                    DEFAULT_SEED, DEFAULT_OUT, DEFAULT_BINDINGS)

cli_logger = setup_logger.logger.getChild("cli")

EXIT_OK = 0
EXIT_ORACLE_FAILURE = 1
EXIT_USAGE = 2


def buildParser():
    parser = argparse.ArgumentParser(prog="residue-forge",
                                     description="Exact boundary and interior densities of spectral Einstein "
                                                 "functionals for the perturbed Dirac operator, with a numeric oracle "
                                                 "and a ledger of printed values.")
    parser.add_argument("--theorem", choices=theoremChoices, default="1",
                        help="boundary density of theorem 1 or 2, or the interior density")
    parser.add_argument("--psi", choices=psiChoices, default="generic", help="perturbation c(Psi)")
    parser.add_argument("--mode", choices=modeChoices, default="both",
                        help="symbolic only, numeric verification, or both")
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED,
                        help="seed of the oracle bindings, overridden by RESIDUE_FORGE_SEED")
    parser.add_argument("--format", choices=formatChoices, default="both", help="report format")
    parser.add_argument("--out", default=DEFAULT_OUT, help="report path without suffix")
    parser.add_argument("--workers", type=int, default=None,
                        help="worker processes for the case evaluation, overridden by RESIDUE_FORGE_WORKERS")
    parser.add_argument("--bindings", type=int, default=DEFAULT_BINDINGS,
                        help="random binding sets per oracle check")
    parser.add_argument("--delta", choices=deltaChoices, default="printed",
                        help="reading of delta^k in sigma_-3(D_Psi^-2)")
    return parser


class Stage:
    """Context manager recording the runtime of a pipeline stage in the result object."""

    def __init__(self, result, name):
        self.result = result
        self.name = name

    def __enter__(self):
        self.starttime = time.time()
        self.result.log("Starting " + self.name)
        return self

    def __exit__(self, excType, excValue, traceback):
        self.result.addMetric("stage", self.name)
        self.result.addMetric("seconds", time.time() - self.starttime)
        self.result.addMetric("failed", excType is not None)
        self.result.commitIteration()
        return False


def runInterior(config, result):
    interior = None
    with Stage(result, "interior"):
        interior = InteriorDensity(config.psiSpec).assembleInterior("einstein")
        result.setInterior(interior)
        result.setDensity(DensityExpression(interior.density()))
        result.addLedger(interior.ledger())
        result.addRunMetadata("trace_E", str(interior.traceETerm))
        result.addRunMetadata("f_trace", str(interior.fTraceTerm))
        result.log("trace E = " + str(interior.traceETerm))
    if config.verify:
        with Stage(result, "oracle"):
            result.addOracleReports(interiorReports(interior, config.seed, max(config.bindings, 50)))


def runBoundary(config, result):
    theorem = config.theoremNumber
    psi = config.psiSpec
    engine = BoundaryEngine(psi, config.deltaConvention)
    evaluator = CaseEvaluator.ConstructEvaluator(config.workers)
    with Stage(result, "boundary theorem " + str(theorem)):
        boundary = engine.boundaryDensity(theorem, evaluator, result)
        result.setDensity(boundary.total)
        result.addLedger(boundary.ledger)
        result.log(str(boundary))
    with Stage(result, "lemmas"):
        result.addLedger(engine.lemmaLedger())
    result.addRunMetadata("Tn_coefficient", str(boundary.total.coefficientOf({"Tn": 1})))
    if not psi.isGeneric:
        result.addRunMetadata("Tn_trace", str(psiTraceBindings(psi)["Tn"]))
        with Stage(result, "interior"):
            interior = InteriorDensity(psi).assembleInterior(theorem)
            result.setInterior(interior)
            result.addLedger(interior.ledger())
    if config.verify:
        with Stage(result, "oracle"):
            oracle = CaseOracle(engine, config.seed, config.bindings)
            densities = {case.label: density for case, density in boundary.cases}
            result.addOracleReports(oracle.checkTheorem(theorem, densities))


def run(config):
    """Runs the pipeline for a configuration and writes the reports.

    :param config: the run configuration
    :type config: RunConfig
    :return: exit status, 0 if all oracle checks passed and 1 otherwise
    :rtype: int
    """
    result = Result(config.out)
    for key, value in config.toJson().items():
        # the report must not depend on where it is written or how many processes computed it
        if key in ("out", "workers"):
            result.addRuntimeData(key, value)
        else:
            result.addRunMetadata(key, value)
    cli_logger.info(f"Running with {config}")

    if config.isInterior:
        runInterior(config, result)
    else:
        runBoundary(config, result)

    if config.writeJson:
        result.writeJson()
    if config.writeLatex:
        result.writeLatex()
    result.writeTiming()
    print(result)

    if not result.oraclePassed:
        cli_logger.error("Oracle checks failed")
        return EXIT_ORACLE_FAILURE
    return EXIT_OK


def main(argv=None):
    parser = buildParser()
    args = parser.parse_args(argv)
    try:
        config = RunConfig.fromArguments(args)
    except RunConfig.UsageError as e:
        parser.print_usage(sys.stderr)
        print("residue-forge: error: " + str(e), file=sys.stderr)
        return EXIT_USAGE
    return run(config)
