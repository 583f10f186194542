from .numericOracle import *
from .collarModel import *
from .caseOracle import *
