from .interiorDensity import *
