from .caseSpec import *
from .densityExpression import *
from .printedLedger import *
from .boundaryEngine import *
