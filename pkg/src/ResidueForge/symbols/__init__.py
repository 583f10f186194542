from .symbolTerm import *
from .presets import *
