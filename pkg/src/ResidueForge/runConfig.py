import os
from ResidueForge import PsiSpec, DeltaConvention, setup_logger

config_logger = setup_logger.logger.getChild("config")

DEFAULT_SEED = 20240917
DEFAULT_OUT = "residue_forge_report"
DEFAULT_BINDINGS = 20

theoremChoices = ["1", "2", "interior"]
psiChoices = ["generic", "f", "vector", "bivector", "trivector"]
modeChoices = ["symbolic", "verify", "both"]
formatChoices = ["json", "latex", "both"]
deltaChoices = ["printed", "spin"]


class RunConfig:
    """Settings of one run of the pipeline.

    RESIDUE_FORGE_SEED, if set, overrides the seed and RESIDUE_FORGE_WORKERS the
    number of workers. Values that are not integers are usage errors.

    :param theorem: ``1``, ``2`` or ``interior``
    :type theorem: string or int
    :param psi: command line name of the perturbation
    :type psi: string
    :param mode: ``symbolic``, ``verify`` or ``both``
    :type mode: string
    :param seed: seed of the oracle bindings
    :type seed: int
    :param outputFormat: ``json``, ``latex`` or ``both``
    :type outputFormat: string
    :param out: report path without suffix
    :type out: string
    :param workers: worker processes for the case evaluation
    :type workers: int, optional
    :param bindings: number of random binding sets per oracle check
    :type bindings: int
    :param delta: delta convention, ``printed`` or ``spin``
    :type delta: string
    :raises RunConfig.UsageError: for invalid combinations
    """

    class UsageError(Exception):
        pass

    def __init__(self, theorem="1", psi="generic", mode="both", seed=DEFAULT_SEED, outputFormat="both",
                 out=DEFAULT_OUT, workers=None, bindings=DEFAULT_BINDINGS, delta="printed"):
        self.theorem = str(theorem)
        self.psi = psi
        self.mode = mode
        self.seed = seed
        self.outputFormat = outputFormat
        self.out = out
        self.workers = workers
        self.bindings = bindings
        self.delta = delta

        self.seed = RunConfig.environmentInteger("RESIDUE_FORGE_SEED", self.seed)
        self.workers = RunConfig.environmentInteger("RESIDUE_FORGE_WORKERS", self.workers)

        self.validate()

    def validate(self):
        for value, choices, name in ((self.theorem, theoremChoices, "theorem"), (self.psi, psiChoices, "psi"),
                                     (self.mode, modeChoices, "mode"), (self.outputFormat, formatChoices, "format"),
                                     (self.delta, deltaChoices, "delta")):
            if value not in choices:
                raise RunConfig.UsageError("Invalid " + name + " '" + str(value) + "', choose from " + ", ".join(choices))
        if self.verify and self.seed is None:
            raise RunConfig.UsageError("Verify mode requires a seed")
        if self.isInterior and self.psi == "generic":
            raise RunConfig.UsageError("The interior density needs a concrete perturbation, not --psi generic")
        if self.bindings < 1:
            raise RunConfig.UsageError("At least one binding set is needed")
        if self.workers is not None and self.workers < 1:
            raise RunConfig.UsageError("The number of workers must be positive")

    @staticmethod
    def environmentInteger(name, default):
        """The integer value of an environment variable, or default if it is unset.

        :raises RunConfig.UsageError: if the value is not an integer
        """
        if name not in os.environ:
            return default
        try:
            value = int(os.environ[name])
        except ValueError:
            raise RunConfig.UsageError(name + " must be an integer, got '" + os.environ[name] + "'") from None
        config_logger.info(f"{name}={value} taken from the environment")
        return value

    @classmethod
    def fromArguments(cls, args):
        """Builds the config from parsed command line arguments.

        :param args: result of the argument parser
        :type args: argparse.Namespace
        :rtype: RunConfig
        """
        return cls(args.theorem, args.psi, args.mode, args.seed, args.format, args.out, args.workers, args.bindings,
                   args.delta)

    @property
    def isInterior(self):
        return self.theorem == "interior"

    @property
    def theoremNumber(self):
        return None if self.isInterior else int(self.theorem)

    @property
    def verify(self):
        return self.mode in ("verify", "both")

    @property
    def psiSpec(self):
        return PsiSpec.fromName(self.psi)

    @property
    def deltaConvention(self):
        return DeltaConvention[self.delta.upper()]

    @property
    def writeJson(self):
        return self.outputFormat in ("json", "both")

    @property
    def writeLatex(self):
        return self.outputFormat in ("latex", "both")

    def toJson(self):
        return {
            "theorem": self.theorem,
            "psi": self.psi,
            "mode": self.mode,
            "seed": self.seed,
            "format": self.outputFormat,
            "out": self.out,
            "workers": self.workers,
            "bindings": self.bindings,
            "delta": self.delta,
        }

    def __str__(self):
        return " ".join("--" + key + " " + str(value) for key, value in self.toJson().items() if value is not None)
