import os
import unittest
from ResidueForge import (CaseEvaluator, CaseJob, DeltaConvention, ErroredCase, ParallelCaseEvaluator, PsiSpec,
                          Result, SerialCaseEvaluator, enumerateCases, runCaseJob, CaseSpec)


class CaseEvaluatorTests(unittest.TestCase):
    """
    Tests the serial and parallel case evaluators and their cache.
    """

    def setUp(self):
        self.savedWorkers = os.environ.pop("RESIDUE_FORGE_WORKERS", None)
        self.psi = PsiSpec(PsiSpec.Kind.zero)
        self.cases = enumerateCases(4, 0, -2)
        self.jobs = [CaseJob(1, case, self.psi, DeltaConvention.PRINTED) for case in self.cases]

    def tearDown(self):
        os.environ.pop("RESIDUE_FORGE_WORKERS", None)
        if self.savedWorkers is not None:
            os.environ["RESIDUE_FORGE_WORKERS"] = self.savedWorkers

    def test_job(self):
        job = self.jobs[1]
        self.assertEqual(job.psi, self.psi)
        self.assertEqual(job.deltaConvention, DeltaConvention.PRINTED)
        self.assertEqual(job.key, (1, (0, -2, 1, 0, 0), "zero", "PRINTED"))

    def test_failed_job(self):
        # the denominator symbol is not known down to order -8
        job = CaseJob(1, CaseSpec(3, -8, 0, 0, 0), self.psi)
        outcome = runCaseJob(job)
        self.assertIsInstance(outcome, ErroredCase)
        self.assertIn("theorem 1", str(outcome))

    def test_serial_cache(self):
        evaluator = SerialCaseEvaluator()
        evaluator.reset()
        result = Result()
        evaluator.setResultObject(result)
        first = evaluator.evaluate(self.jobs, "first")
        second = evaluator.evaluate(self.jobs, "second")
        self.assertEqual(first, second)
        self.assertEqual(evaluator.total_evaluation_count, len(self.jobs))
        self.assertEqual(evaluator.cached_evaluation_count, len(self.jobs))
        self.assertEqual(evaluator.parallelism, 1)
        self.assertEqual(len(result.cases), 2 * len(self.jobs))
        self.assertEqual([entry["tag"] for entry in result.cases],
                         ["first"] * len(self.jobs) + ["second"] * len(self.jobs))
        self.assertEqual(result.runtime["evaluator_totalcount"], len(self.jobs))
        self.assertEqual(result.runtime["evaluator_cachehits"], len(self.jobs))
        self.assertNotIn("evaluator_totalcount", result.metadata)

    def test_parallel_cache_hits_recorded(self):
        evaluator = ParallelCaseEvaluator(2)
        evaluator.reset()
        evaluator.evaluate(self.jobs)
        result = Result()
        evaluator.setResultObject(result)
        evaluator.evaluate(self.jobs, "cached")
        self.assertEqual([entry["case"] for entry in result.cases], [job.case.toJson() for job in self.jobs])
        self.assertEqual(result.runtime["evaluator_cachehits"], len(self.jobs))
        self.assertEqual(result.runtime["evaluator_serialcount"], 1)

    def test_parallel_matches_serial(self):
        serial = SerialCaseEvaluator()
        serial.reset()
        parallel = ParallelCaseEvaluator(2)
        parallel.reset()
        self.assertEqual(parallel.parallelism, 2)
        self.assertEqual(serial.evaluate(self.jobs), parallel.evaluate(self.jobs))
        self.assertEqual(parallel.total_evaluation_count, len(self.jobs))

    def test_construct(self):
        self.assertIsInstance(CaseEvaluator.ConstructEvaluator(), SerialCaseEvaluator)
        self.assertIsInstance(CaseEvaluator.ConstructEvaluator(3), ParallelCaseEvaluator)
        os.environ["RESIDUE_FORGE_WORKERS"] = "1"
        self.assertIsInstance(CaseEvaluator.ConstructEvaluator(3), SerialCaseEvaluator)
        os.environ["RESIDUE_FORGE_WORKERS"] = "4"
        evaluator = CaseEvaluator.ConstructEvaluator()
        self.assertIsInstance(evaluator, ParallelCaseEvaluator)
        self.assertEqual(evaluator.parallelism, 4)
        os.environ["RESIDUE_FORGE_WORKERS"] = "many"
        with self.assertRaises(ValueError):
            CaseEvaluator.ConstructEvaluator()


if __name__ == '__main__':
    unittest.main()
