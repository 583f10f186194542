from .caseEvaluator import *
from .serialCaseEvaluator import *
from .parallelCaseEvaluator import *
