import os
import time
from abc import ABC, abstractmethod
from ResidueForge import PsiSpec, DeltaConvention, engineFor, setup_logger

evaluator_logger = setup_logger.logger.getChild("evaluator")


class CaseJob:
    """One case of one theorem to evaluate, in a form that can be sent to worker processes.

    :param theorem: 1 or 2
    :type theorem: int
    :param case: the case
    :type case: CaseSpec
    :param psi: the perturbation
    :type psi: PsiSpec
    :param deltaConvention: delta convention of the jets
    :type deltaConvention: DeltaConvention
    """

    def __init__(self, theorem, case, psi, deltaConvention=DeltaConvention.PRINTED):
        self.theorem = theorem
        self.case = case
        self.psiName = psi.kind.name
        self.deltaName = deltaConvention.name

    @property
    def psi(self):
        return PsiSpec(PsiSpec.Kind[self.psiName])

    @property
    def deltaConvention(self):
        return DeltaConvention[self.deltaName]

    @property
    def key(self):
        return (self.theorem, self.case.key, self.psiName, self.deltaName)

    def __str__(self):
        return "theorem " + str(self.theorem) + " " + str(self.case) + " psi=" + self.psiName


class ErroredCase:
    """Placeholder result of a case whose evaluation failed.

    The reason might be found in the reason field.

    :param job: the job that failed
    :type job: CaseJob
    :param reason: description of the failure
    :type reason: string
    :param runtime: runtime until the failure, in seconds
    :type runtime: float, optional
    """

    def __init__(self, job, reason, runtime=None):
        self.job = job
        self.reason = reason
        self.runtime = runtime

    def __str__(self):
        return str(self.job) + ": " + self.reason


def runCaseJob(job):
    """Evaluates a job in the current process.

    Failures are returned as ErroredCase, never raised.

    :param job: the job
    :type job: CaseJob
    :rtype: DensityExpression or ErroredCase
    """
    starttime = time.time()
    try:
        engine = engineFor(job.psi, job.deltaConvention)
        return engine.evaluateTheoremCase(job.theorem, job.case)
    except Exception as exception:
        evaluator_logger.exception(f"Evaluation of {job} failed")
        return ErroredCase(job, type(exception).__name__ + ": " + str(exception), time.time() - starttime)


class CaseEvaluator(ABC):
    """Case evaluator abstract base class

    Defines the interface for case evaluators.
    Implements a cache to avoid evaluating a case twice.

    """

    resultobj = None
    total_evaluation_count = 0
    serial_evaluation_count = 0
    cached_evaluation_count = 0
    cache = {}

    @property
    @abstractmethod
    def parallelism(self):
        """Returns the parallelism of the evaluator

        :return: parallelism of the evaluator
        :rtype:  int
        """
        pass

    @abstractmethod
    def evaluate(self, caselist, tag=""):
        """Evaluates the given case jobs.

        :param caselist: jobs to evaluate
        :type caselist: list of CaseJob
        :param tag: tag-string attached to the densities in the result object
        :type tag: string
        :return: one density per job, in the order of caselist, or ErroredCase
        :rtype: list of DensityExpression or ErroredCase
        """
        pass

    def setResultObject(self, res):
        """Sets the result object to write statistics and case densities to.

        :param res: resultobject to set
        :type res: Result
        """
        self.resultobj = res

    def handleNewEvaluations(self, jobs, densities, tag):
        """Updates the internal cache and the evaluation counts and writes the densities
        to the set result object.

        :param jobs: evaluated jobs
        :type jobs: list of CaseJob
        :param densities: their densities, errored ones are not cached
        :type densities: list of DensityExpression or ErroredCase
        :param tag: tag to store the densities under in the result object
        :type tag: string
        """
        self.serial_evaluation_count += 1
        self.total_evaluation_count += len(jobs)
        for job, density in zip(jobs, densities):
            if isinstance(density, ErroredCase):
                continue
            self.cache[job.key] = density
            if self.resultobj is not None:
                self.resultobj.addCaseDensity(job.theorem, job.case, density, tag)

    def writeStatistics(self):
        """Writes the caching statistics to the runtime data of the set result object.

        They depend on what earlier calls left in the cache, so they stay out of the report itself.
        """
        if self.resultobj is not None:
            self.resultobj.addRuntimeData("evaluator_totalcount", self.total_evaluation_count)
            self.resultobj.addRuntimeData("evaluator_serialcount", self.serial_evaluation_count)
            self.resultobj.addRuntimeData("evaluator_cachehits", self.cached_evaluation_count)

    def checkCache(self, job, tag=""):
        """Checks the internal cache and returns the stored density, if
        there is one, or None, if not. A cached density is recorded in the
        result object like a new one.

        :param job: job to check
        :type job: CaseJob
        :param tag: tag to store the density under in the result object
        :type tag: string
        :return: DensityExpression, if in cache, or None
        :rtype: DensityExpression
        """
        density = self.cache.get(job.key)
        if density is None:
            return None
        if self.resultobj is not None:
            self.resultobj.log("Served " + str(job) + " from cache!")
            self.resultobj.addCaseDensity(job.theorem, job.case, density, tag)
        self.cached_evaluation_count += 1
        return density

    def reset(self):
        """resets the internal cache and statistics
        """
        self.cache = {}
        self.cached_evaluation_count = 0
        self.serial_evaluation_count = 0
        self.total_evaluation_count = 0

    def getStatistics(self):
        """returns the internal statistics as a string representation
        :return: string with statistics information
        :rtype: string
        """
        string = "Total count of evaluations: " + str(self.total_evaluation_count) + "\n"
        string += "Taken from cache: " + str(self.cached_evaluation_count) + "\n"
        string += "Serial count: " + str(self.serial_evaluation_count)
        return string

    def __str__(self):
        string = "Currently cached cases " + str(len(self.cache)) + "\n"
        string += self.getStatistics()
        return string

    @classmethod
    def ConstructEvaluator(cls, workers=None):
        """Factory method to construct a suitable evaluator.

        If RESIDUE_FORGE_WORKERS is set to more than one worker (or workers > 1 is passed),
        a ParallelCaseEvaluator will be used, if not, a SerialCaseEvaluator.
        The environment variable takes precedence.

        :param workers: number of worker processes
        :type workers: int, optional
        :raises ValueError: if RESIDUE_FORGE_WORKERS is not an integer
        :rtype: CaseEvaluator
        """
        import ResidueForge
        if "RESIDUE_FORGE_WORKERS" in os.environ:
            try:
                workers = int(os.environ["RESIDUE_FORGE_WORKERS"])
            except ValueError:
                raise ValueError("RESIDUE_FORGE_WORKERS must be an integer, got '"
                                 + os.environ["RESIDUE_FORGE_WORKERS"] + "'") from None
        if workers is not None and workers > 1:
            print("Using ParallelCaseEvaluator with " + str(workers) + " workers")
            evaluator_logger.info("Using ParallelCaseEvaluator with " + str(workers) + " workers")
            return ResidueForge.ParallelCaseEvaluator(workers)
        else:
            evaluator_logger.debug("Using SerialCaseEvaluator")
            return ResidueForge.SerialCaseEvaluator()
