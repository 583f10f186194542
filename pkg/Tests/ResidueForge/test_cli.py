import os
import json
import shutil
import tempfile
import unittest
from ResidueForge import DeltaConvention, PsiSpec
from ResidueForge.cli import buildParser, main, EXIT_OK, EXIT_USAGE
from ResidueForge.runConfig import RunConfig


class CommandLineTests(unittest.TestCase):
    """
    Tests the run configuration and the command line entry point.
    """

    def setUp(self):
        self.directory = tempfile.mkdtemp()
        self.savedSeed = os.environ.pop("RESIDUE_FORGE_SEED", None)
        self.savedWorkers = os.environ.pop("RESIDUE_FORGE_WORKERS", None)

    def tearDown(self):
        shutil.rmtree(self.directory)
        os.environ.pop("RESIDUE_FORGE_SEED", None)
        os.environ.pop("RESIDUE_FORGE_WORKERS", None)
        if self.savedSeed is not None:
            os.environ["RESIDUE_FORGE_SEED"] = self.savedSeed
        if self.savedWorkers is not None:
            os.environ["RESIDUE_FORGE_WORKERS"] = self.savedWorkers

    def test_parser(self):
        args = buildParser().parse_args(["--theorem", "2", "--psi", "bivector", "--delta", "spin"])
        config = RunConfig.fromArguments(args)
        self.assertEqual(config.theoremNumber, 2)
        self.assertEqual(config.psiSpec, PsiSpec(PsiSpec.Kind.bivector))
        self.assertEqual(config.deltaConvention, DeltaConvention.SPIN)
        self.assertTrue(config.verify)
        self.assertTrue(config.writeJson)
        self.assertTrue(config.writeLatex)
        with self.assertRaises(SystemExit):
            buildParser().parse_args(["--psi", "spinor"])

    def test_usage_errors(self):
        with self.assertRaises(RunConfig.UsageError):
            RunConfig("interior", "generic")
        with self.assertRaises(RunConfig.UsageError):
            RunConfig("1", "generic", "verify", seed=None)
        with self.assertRaises(RunConfig.UsageError):
            RunConfig(bindings=0)
        with self.assertRaises(RunConfig.UsageError):
            RunConfig(workers=0)
        with self.assertRaises(RunConfig.UsageError):
            RunConfig(theorem="3")
        self.assertEqual(main(["--theorem", "interior", "--psi", "generic"]), EXIT_USAGE)

    def test_invalid_environment(self):
        os.environ["RESIDUE_FORGE_SEED"] = "abc"
        with self.assertRaises(RunConfig.UsageError):
            RunConfig()
        self.assertEqual(main(["--mode", "symbolic", "--out", os.path.join(self.directory, "bad")]), EXIT_USAGE)
        del os.environ["RESIDUE_FORGE_SEED"]

        os.environ["RESIDUE_FORGE_WORKERS"] = "four"
        with self.assertRaises(RunConfig.UsageError):
            RunConfig()
        os.environ["RESIDUE_FORGE_WORKERS"] = "0"
        with self.assertRaises(RunConfig.UsageError):
            RunConfig()
        self.assertEqual(main(["--mode", "symbolic", "--out", os.path.join(self.directory, "bad")]), EXIT_USAGE)
        os.environ["RESIDUE_FORGE_WORKERS"] = "3"
        self.assertEqual(RunConfig(workers=1).workers, 3)

    def test_seed_from_environment(self):
        os.environ["RESIDUE_FORGE_SEED"] = "42"
        self.assertEqual(RunConfig(seed=7).seed, 42)
        self.assertIn("--seed 42", str(RunConfig()))

    def test_interior_run(self):
        out = os.path.join(self.directory, "interior")
        status = main(["--theorem", "interior", "--psi", "f", "--out", out, "--bindings", "5"])
        self.assertEqual(status, EXIT_OK)
        with open(out + ".json") as f:
            data = json.load(f)
        self.assertEqual(data["metadata"]["psi"], "f")
        self.assertEqual(len(data["oracle"]), 2)
        self.assertTrue(all(report["passed"] for report in data["oracle"]))
        self.assertEqual(data["interior"]["psi"], "scalar")
        self.assertTrue(os.path.isfile(out + ".tex"))

    def test_symbolic_boundary_run(self):
        out = os.path.join(self.directory, "thm1")
        status = main(["--theorem", "1", "--psi", "vector", "--mode", "symbolic", "--format", "json", "--out", out])
        self.assertEqual(status, EXIT_OK)
        self.assertFalse(os.path.isfile(out + ".tex"))
        with open(out + ".json") as f:
            data = json.load(f)
        self.assertEqual([entry["case"]["label"] for entry in data["cases"]],
                         ["(a)(I)", "(a)(II)", "(a)(III)", "(b)", "(c)"])
        self.assertEqual(data["oracle"], [])
        self.assertIn("thm1/total", [entry["key"] for entry in data["ledger"]])
        self.assertIn("Tn_trace", data["metadata"])
        self.assertIsNotNone(data["interior"])

    def test_repeated_runs_list_all_cases(self):
        # the second run is served from the case cache of the first
        for name in ("first", "second"):
            out = os.path.join(self.directory, name)
            status = main(["--theorem", "1", "--psi", "vector", "--mode", "symbolic", "--format", "json",
                           "--workers", "1", "--out", out])
            self.assertEqual(status, EXIT_OK)
            with open(out + ".json") as f:
                data = json.load(f)
            self.assertEqual(len(data["cases"]), 5)
            with open(out + "_timing.json") as f:
                timing = json.load(f)
            self.assertIn("evaluator_cachehits", timing["runtime"])
            self.assertEqual(timing["runtime"]["out"], out)

    def test_reports_are_reproducible(self):
        reports = []
        for name, workers in (("serial", "1"), ("pool", "2")):
            out = os.path.join(self.directory, name)
            status = main(["--theorem", "2", "--psi", "vector", "--mode", "both", "--seed", "11", "--bindings", "2",
                           "--workers", workers, "--out", out])
            self.assertEqual(status, EXIT_OK)
            with open(out + ".json") as f:
                reports.append(f.read())
            self.assertTrue(os.path.isfile(out + "_timing.json"))
        self.assertEqual(reports[0], reports[1])
        self.assertNotIn("runtime", reports[0])


if __name__ == '__main__':
    unittest.main()
