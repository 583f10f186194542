import os
import json
import shutil
import tempfile
import unittest
from fractions import Fraction
from ResidueForge import (CaseSpec, DensityExpression, DiscrepancyLedger, InteriorDensity, LedgerEntry, OracleReport,
                          PsiSpec, Result, defaultRing)


class ResultTests(unittest.TestCase):
    """
    A test class for the Result class.

    Checks that a report written as JSON can be loaded again, that the LaTeX
    document is deterministic and that logging and pickling keep working.

    Methods:
        setUp: creates a temporary directory and a filled result object.
        tearDown: removes the temporary directory.
    """

    def setUp(self):
        self.directory = tempfile.mkdtemp()
        self.filename = os.path.join(self.directory, "reports", "run")
        ring = defaultRing
        self.density = DensityExpression((ring.symbol("h1") * ring.symbol("gXYT")).scale(Fraction(5, 48)))
        self.result = Result(self.filename)
        self.result.addRunMetadata("theorem", "1")
        self.result.addCaseDensity(1, CaseSpec(0, -2, 1, 0, 0, "(a)(II)"), self.density, "theorem1")
        self.result.setDensity(self.density)
        self.result.addLedger(DiscrepancyLedger([LedgerEntry("k", "0", ring.zero(), ring.zero(), ring.zero()),
                                                 LedgerEntry("n", "x", None, "1", None)]))
        self.result.addOracleReports([OracleReport("q", 1.0, 1.0, metadata={"seed": 1}, runtime=0.25)])
        self.result.setInterior(InteriorDensity(PsiSpec.fromName("f")))
        self.result.addMetric("stage", "boundary")
        self.result.addMetric("seconds", 0.5)
        self.result.commitIteration()

    def tearDown(self):
        shutil.rmtree(self.directory)

    def test_directory_created(self):
        self.assertTrue(os.path.isdir(os.path.join(self.directory, "reports")))
        self.assertTrue(os.path.isfile(self.filename + ".pkl"))

    def test_json_roundtrip(self):
        path = self.result.writeJson()
        self.assertEqual(path, self.filename + ".json")
        with open(path) as f:
            data = json.load(f)
        self.assertEqual(sorted(data), ["cases", "density", "interior", "ledger", "metadata", "oracle"])
        self.assertNotIn("runtime", data["oracle"][0]["metadata"])
        self.assertEqual(data["cases"][0]["case"]["label"], "(a)(II)")
        self.assertEqual(data["ledger"][0]["matches"], True)
        self.assertIsNone(data["ledger"][1]["matches"])

        loaded = Result.loadJson(path)
        self.assertEqual(loaded.density, self.density)
        self.assertEqual(loaded.cases[0]["density"], self.density)
        self.assertEqual(loaded.metadata, {"theorem": "1"})
        self.assertTrue(loaded.oraclePassed)
        self.assertEqual(loaded.iterations, [])
        self.assertEqual(loaded.interior["psi"], "scalar")

    def test_timing_file(self):
        self.result.addRuntimeData("workers", 2)
        path = self.result.writeTiming()
        self.assertEqual(path, self.filename + "_timing.json")
        with open(path) as f:
            timing = json.load(f)
        self.assertEqual(timing["stages"], [{"stage": "boundary", "seconds": 0.5}])
        self.assertEqual(timing["runtime"], {"oracle_runtime": {"q": 0.25}, "workers": 2})
        self.assertNotIn("Timing", self.result.latexDocument())

        loaded = Result.loadJson(self.result.writeJson())
        self.assertEqual(loaded.iterations, [{"stage": "boundary", "seconds": 0.5}])
        self.assertEqual(loaded.runtime["workers"], 2)

    def test_latex(self):
        document = self.result.latexDocument()
        self.assertEqual(document, self.result.latexDocument())
        self.assertTrue(document.startswith("\\documentclass{article}"))
        self.assertIn("\\section*{Discrepancy ledger}", document)
        self.assertIn("(a)(II)", document)
        path = self.result.writeLatex()
        with open(path) as f:
            self.assertEqual(f.read(), document)

    def test_log(self):
        self.result.log("first line")
        self.assertTrue(self.result.logentries[-1].endswith("first line"))
        with open(self.filename + "_log") as f:
            self.assertIn("first line", f.read())

    def test_pickle(self):
        loaded = Result.load(self.filename + ".pkl", printInfo=False)
        self.assertEqual(loaded.iterationCount, 1)
        self.assertEqual(loaded.density, self.density)

    def test_failed_oracle(self):
        self.result.addOracleReports([OracleReport("bad", 1.0, 2.0)])
        self.assertFalse(self.result.oraclePassed)
        self.assertIn("FAILED", str(self.result))

    def test_latex_numbers(self):
        self.assertEqual(Result.getLatexString(None), "--")
        self.assertEqual(Result.getLatexString(0.5), "0.5")
        self.assertEqual(Result.getLatexString(25000.0), "2.5\\cdot 10^{4} ")


if __name__ == '__main__':
    unittest.main()
