import time
from concurrent.futures import ProcessPoolExecutor
from ResidueForge import setup_logger
from .caseEvaluator import CaseEvaluator, runCaseJob

parallel_logger = setup_logger.logger.getChild("parallelEvaluator")


class ParallelCaseEvaluator(CaseEvaluator):
    """Evaluates the cases in a pool of worker processes.

    Implements the CaseEvaluator AbstractBaseClass. Each worker builds its own
    symbol library on first use. Results come back in the order of the case
    list; since they are exact, they equal the serial results.

    :param workers: number of worker processes
    :type workers: int
    """

    def __init__(self, workers=4):
        self.workers = workers
        self.totalevaluationtime = 0

    @property
    def parallelism(self):
        """Returns the parallelism of the evaluator

        :return: parallelism of the evaluator
        :rtype:  int
        """
        return self.workers

    def evaluate(self, caselist, tag=""):
        results = [self.checkCache(job, tag) for job in caselist]
        pending = [i for i, res in enumerate(results) if res is None]

        if not pending:
            self.writeStatistics()
            return results

        starttime = time.time()
        parallel_logger.info(f"Submitting {len(pending)} cases to {self.workers} workers")
        with ProcessPoolExecutor(max_workers=self.workers) as pool:
            densities = list(pool.map(runCaseJob, [caselist[i] for i in pending]))
        self.totalevaluationtime += time.time() - starttime

        for i, density in zip(pending, densities):
            results[i] = density

        self.handleNewEvaluations([caselist[i] for i in pending], densities, tag)
        self.writeStatistics()
        return results
