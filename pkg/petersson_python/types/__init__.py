from .runConfig import *
from .base.map import *
from .records.census import *
from .records.checks import *
from .records.delta import *
from .records.factorization import *
from .records.qexpansion import *
from .records.queries import *
from .records.traces import *
