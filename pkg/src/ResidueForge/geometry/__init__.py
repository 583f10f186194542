from .collarGeometry import *
