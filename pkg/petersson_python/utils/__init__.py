from .cache import *
from .convert import *
