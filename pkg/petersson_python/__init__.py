from .errors import *
from .types import *
from .utils import *
from . import arith, characters, expsums, analytic, petersson, modforms, traces, census, verify

__copyright__    = 'Copyright (C) 2024 akikaki'
__version__      = '0.1.0'
__license__      = 'MIT'
__author__       = 'akikaki'
__author_email__ = 'hello@akikaki.net'
__url__          = 'http://github.com/akikaki-bot/petersson_python'

__all__ = [
    'arith', 'characters', 'expsums', 'analytic', 'petersson', 'modforms', 'traces', 'census', 'verify',
    'RunConfig', 'ToleranceProfile', 'PeterssonError', 'DomainError', 'PreconditionError',
    'ParityMismatchError', 'ModeError', 'UnsupportedSpaceError', 'PrecisionError', 'SuiteError',
]
