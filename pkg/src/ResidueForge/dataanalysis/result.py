import os
import json
import pickle
import copy
from math import floor, log10
from datetime import datetime
from ResidueForge import DensityExpression, OracleReport, defaultRing, setup_logger

report_logger = setup_logger.logger.getChild("report")


# helper functions to write numbers in scientific notation
def fexp(f):
    return int(floor(log10(abs(f)))) if f != 0 else 0


def fman(f):
    return f/10**fexp(f)


# A class containing the result of a run
#
# This class contains all logentries, the densities and the checks written
# away during the stages of the run.
class Result:
    """This class saves all data created during a run.
    This includes the case densities, the total density, the discrepancy ledger,
    the oracle reports, timing of the pipeline stages (here called metrics, stored
    per stage), logging entries and metadata (additional data stored for the whole run).

    The JSON report holds only what the inputs of the run determine. Stage timings and
    runtime data such as cache statistics and oracle runtimes go to a separate
    "<filename>_timing.json".

    Arbitrary metrics and metadata fields can be added using the respective methods. They are
    stored as key-value-pairs and should be serializable to JSON.

    If a filename is specified, the results object will be saved whenever a stage is committed.

    :param filename: filename to save. if a path is specified, the directories will be created if
        not yet existant.
    :type filename: string, optional
    """

    def __init__(self, filename=None):
        self.iterations = []
        self.logentries = []

        # stores the current stage's metrics before it is committed to the iterations array
        self.currentIteration = {}

        self.metadata = {}
        self.runtime = {}
        self.cases = []
        self.density = None
        self.ledger = []
        self.oracle = []
        self.interior = None

        self.filename = filename

        if filename:
            directory = os.path.dirname(self.filename)
            if directory != "":
                os.makedirs(directory, exist_ok=True)

    @property
    def iterationCount(self):
        """Returns the number of committed stages

        :rtype: Integer
        """
        return len(self.iterations)

    @property
    def oraclePassed(self):
        """True if every oracle report passed; also True without reports."""
        return all(report.passed for report in self.oracle)

    @staticmethod
    def getLatexString(number):
        """Returns a number as a string formatted for usage in latex. This gives the scientific
            notation with 4 significant digits.

        :param number: the number to convert
        :type number: number
        :return: number formatted for usage in latex.
        :rtype: string
        """

        if number is None:
            return "--"
        exp = fexp(number)
        man = fman(number)

        man = round(man, 3)

        if -1 <= exp <= 1:
            return str(round(number, 4))

        return str(man) + "\\cdot 10^{" + str(exp) + "} "

    def addRunMetadata(self, name, value):
        """Adds an object as metadata.

        :param name: the key for this metadata
        :type name: string
        :param value: value for this metadata key
        :type value: any JSON serializable python type
        """
        self.metadata[name] = value

    def addRuntimeData(self, name, value):
        """Adds data that depends on the machine or on earlier runs, like timings and cache statistics.
        It is written to the timing file, not to the report.

        :param name: the key for this data
        :type name: string
        :param value: value for this key
        :type value: any JSON serializable python type
        """
        self.runtime[name] = value

    def addCaseDensity(self, theorem, case, density, tag=None):
        """Records the density of one evaluated case.

        :param theorem: 1 or 2
        :type theorem: int
        :param case: the case
        :type case: CaseSpec
        :param density: its exact density
        :type density: DensityExpression
        :param tag: additional tag for later analysis
        :type tag: string, optional
        """
        self.cases.append({"theorem": theorem, "case": case.toJson(), "tag": tag, "density": density})

    def setDensity(self, density):
        self.density = density

    def addLedger(self, ledger):
        """Appends the entries of a DiscrepancyLedger."""
        self.ledger.extend(ledger)

    def addOracleReports(self, reports):
        self.oracle.extend(reports)
        for report in reports:
            if report.runtime is not None:
                self.runtime.setdefault("oracle_runtime", {})[report.quantity] = report.runtime
        failed = [report for report in reports if not report.passed]
        if failed:
            self.log(str(len(failed)) + " of " + str(len(reports)) + " oracle checks failed")

    def setInterior(self, interior):
        """Stores the serialized interior density."""
        self.interior = interior.toJson()

    def addMetric(self, name, value):
        """Adds a metric to the current stage

        :param name: name of the metric to add
        :type name: string
        :param value: value for this metric key
        :type value: any JSON serializable python type
        """
        self.currentIteration[name] = value

    def commitIteration(self):
        """Stores the current stage to the iterations array.
        If a filename was specified at construction, also saves the results object.
        """
        self.iterations.append(copy.deepcopy(self.currentIteration))
        self.currentIteration.clear()
        self.save()

    def save(self, filename=None):
        """Saves the results object in pickle format to a file.

        :param filename: filename to save to. if not specified, the filename set when constructing
            this object will be used, with the suffix .pkl.
        :type filename: string
        """
        if filename is None and self.filename is not None:
            filename = self.filename + ".pkl"

        if filename is None:
            return

        with open(filename, "wb") as f:
            pickle.dump(self.__dict__, f)

    def log(self, text):
        """Adds an logentry.

        The logentry is printed in the process. Logs are additionally written to a separate file
        "<filename>_log" in plain text format to allow for easier debugging.

        :param text: logtext to add.
        :type text: string
        """
        logtext = "[" + str(datetime.now()) + "] " + text
        print(logtext)
        report_logger.info(text)
        self.logentries.append(logtext)
        if self.filename is not None:
            with open(self.filename + "_log", "a") as f:
                f.write(logtext + "\n")

    def printlog(self):
        """Prints all logentries stored in the object."""
        for l in self.logentries:
            print(l)

    def toJson(self):
        """The report as a JSON-compatible dict.

        Densities are canonical term lists with exact coefficients as strings.
        """
        return {
            "density": self.density.toJson() if self.density is not None else [],
            "ledger": [entry.toJson() for entry in self.ledger],
            "oracle": [report.toJson() for report in self.oracle],
            "cases": [dict(entry, density=entry["density"].toJson()) for entry in self.cases],
            "interior": self.interior,
            "metadata": self.metadata,
        }

    def timingJson(self):
        """Stage timings and runtime data as a JSON-compatible dict."""
        return {"stages": self.iterations, "runtime": self.runtime}

    def writeJson(self, filename=None):
        """Writes the JSON report.

        :param filename: defaults to <filename>.json
        :type filename: string, optional
        :return: the path written to
        :rtype: string
        """
        filename = filename or self.filename + ".json"
        with open(filename, "w") as f:
            json.dump(self.toJson(), f, indent=2, sort_keys=True, default=str)
        report_logger.info(f"Wrote JSON report {filename}")
        return filename

    def writeTiming(self, filename=None):
        """Writes the stage timings and runtime data.

        :param filename: defaults to <filename>_timing.json
        :type filename: string, optional
        :return: the path written to
        :rtype: string
        """
        filename = filename or self.filename + "_timing.json"
        with open(filename, "w") as f:
            json.dump(self.timingJson(), f, indent=2, sort_keys=True, default=str)
        report_logger.info(f"Wrote timing file {filename}")
        return filename

    @classmethod
    def loadJson(cls, filename, dimension=4, ring=defaultRing):
        """Loads a JSON report; densities and oracle reports are rebuilt, ledger entries stay dicts.
        The timing file next to the report is read too, if there is one.

        :param filename: path to the report
        :type filename: string
        :rtype: Result
        """
        with open(filename) as f:
            data = json.load(f)
        result = cls()
        if data["density"]:
            result.density = DensityExpression.fromJson(data["density"], dimension, ring)
        result.ledger = data["ledger"]
        result.oracle = [OracleReport.fromJson(entry) for entry in data["oracle"]]
        result.cases = [dict(entry, density=DensityExpression.fromJson(entry["density"], dimension, ring))
                        for entry in data["cases"]]
        result.interior = data["interior"]
        result.metadata = data["metadata"]
        timingfile = os.path.splitext(filename)[0] + "_timing.json"
        if os.path.isfile(timingfile):
            with open(timingfile) as f:
                timing = json.load(f)
            result.iterations = timing["stages"]
            result.runtime = timing["runtime"]
        return result

    def latexDocument(self):
        """The report as a LaTeX document; the term order is the canonical one."""
        lines = ["\\documentclass{article}", "\\usepackage{amsmath}", "\\begin{document}"]
        for key in sorted(self.metadata):
            lines.append("\\noindent\\verb|" + key + "|: \\verb|" + str(self.metadata[key]) + "|\\\\")
        if self.cases:
            lines.append("\\section*{Cases}")
            for entry in self.cases:
                label = entry["case"]["label"]
                lines.append("\\[ \\text{" + label + "}: \\quad " + entry["density"].toLatex() + " \\]")
        if self.density is not None:
            lines.append("\\section*{Density}")
            lines.append("\\[ " + self.density.toLatex() + " \\]")
        if self.interior is not None:
            lines.append("\\section*{Interior density}")
            lines.append("\\[ " + self.interior["latex"] + " \\]")
        if self.ledger:
            lines.append("\\section*{Discrepancy ledger}")
            for entry in self.ledger:
                data = entry if isinstance(entry, dict) else entry.toJson()
                state = {True: "matches", False: "deviates", None: "not compared"}[data["matches"]]
                lines.append("\\paragraph{\\verb|" + data["key"] + "| (" + state + ")}")
                lines.append("printed: $" + data["printed"] + "$\\\\")
                if isinstance(data["delta"], dict):
                    lines.append("delta: $" + data["delta"]["latex"] + "$")
                elif data["delta"] is not None:
                    lines.append("delta: \\verb|" + data["delta"] + "|")
        if self.oracle:
            lines.append("\\section*{Oracle}")
            lines.append("\\begin{tabular}{l|c|c}")
            lines.append("quantity & relative error & status\\\\\\hline")
            for report in self.oracle:
                status = "pass" if report.passed else "FAIL"
                lines.append("\\verb|" + report.quantity + "| & $" + Result.getLatexString(report.error) + "$ & "
                             + status + "\\\\")
            lines.append("\\end{tabular}")
        lines.append("\\end{document}")
        return "\n".join(lines) + "\n"

    def writeLatex(self, filename=None):
        """Writes the LaTeX report.

        :param filename: defaults to <filename>.tex
        :type filename: string, optional
        :return: the path written to
        :rtype: string
        """
        filename = filename or self.filename + ".tex"
        with open(filename, "w") as f:
            f.write(self.latexDocument())
        report_logger.info(f"Wrote LaTeX report {filename}")
        return filename

    @classmethod
    def load(cls, filename, printInfo=True):
        """Loads a result object stored pickled in a file.

        :param filename: path to the file to load.
        :type filename: string
        :param printInfo: print information about the loaded results object (default: true)
        :type printInfo: bool, optional
        """
        result = cls()
        with open(filename, "rb") as f:
            result.__dict__.update(pickle.load(f))

        if printInfo:
            print(result)

        return result

    def __str__(self):
        res = "######################################################\n"
        res += "filename: " + str(self.filename) + "\n"
        res += "stages: " + str(self.iterationCount) + "\n"
        res += "cases: " + str(len(self.cases)) + "\n"
        res += "density: " + str(self.density) + "\n"
        deviations = sum(1 for entry in self.ledger
                         if (entry["matches"] if isinstance(entry, dict) else entry.matches) is False)
        res += "ledger entries: " + str(len(self.ledger)) + " (" + str(deviations) + " deviating)\n"
        res += "oracle checks: " + str(len(self.oracle)) + " (" + \
            ("all passed" if self.oraclePassed else "FAILED") + ")\n"

        for k, v in self.metadata.items():
            res += f"{k}: {v}\n"

        res += "######################################################"

        return res
