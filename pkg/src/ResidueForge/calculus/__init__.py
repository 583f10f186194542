from .xinRational import *
from .sphereMoments import *
