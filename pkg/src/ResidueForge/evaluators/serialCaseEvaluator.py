import time
from .caseEvaluator import CaseEvaluator, runCaseJob


class SerialCaseEvaluator(CaseEvaluator):
    """Evaluates the cases one after the other in the calling process.

    Implements the CaseEvaluator AbstractBaseClass.
    """

    def __init__(self):
        self.totalevaluationtime = 0

    @property
    def parallelism(self):
        """Returns the parallelism of the evaluator. here it is one, as only one case is handled at a time.

        :return: parallelism of the evaluator
        :rtype:  int
        """
        return 1

    def evaluate(self, caselist, tag=""):
        results = []

        for job in caselist:

            res = self.checkCache(job, tag)

            if res is not None:
                results.append(res)
                continue

            starttime = time.time()
            density = runCaseJob(job)
            self.totalevaluationtime += time.time() - starttime

            self.handleNewEvaluations([job], [density], tag)
            results.append(density)

        self.writeStatistics()
        return results
