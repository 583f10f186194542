from .result import *
