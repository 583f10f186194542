from .algebra import *
from .calculus import *
from .geometry import *
from .symbols import *
from .boundary import *
from .evaluators import *
from .interior import *
from .oracle import *
from .dataanalysis import *
