from .scalarRing import *
from .cliffordAlgebra import *
from .xiPolynomial import *
