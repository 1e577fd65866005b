import math
from fractions import Fraction
from typing import Any, TypeVar, Union

import mpmath
import numpy as np

T = TypeVar('T')
U = TypeVar('U')
V = TypeVar('V')


def convert_value(
        value: T,
        condition: Union[ T, U ],
        convert: V
) -> Union[ T, V ]:
    """
    Returns `convert` when `value` equals `condition` (or both are None), else `value`.
    """
    if condition is None:
        if value is None:
            return convert

    if value == condition: return convert
    return value


def finite_or_none( value: float ) -> Union[ float, None ]:
    """
    JSON has no infinity or NaN; those become None.
    """
    return value if math.isfinite( value ) else None


def to_jsonable( value: Any ) -> Any:
    """
    Recursively converts records, exact rationals, complex numbers, mpmath and numpy
    values into plain JSON types. Fractions become strings so that no precision is lost.
    """
    if hasattr( value, "to_dict" ):
        return to_jsonable( value.to_dict() )
    if isinstance( value, bool ) or value is None or isinstance( value, str ):
        return value
    if isinstance( value, ( int, np.integer ) ):
        return int( value )
    if isinstance( value, Fraction ):
        return str( value )
    if isinstance( value, ( float, np.floating ) ):
        return finite_or_none( float( value ) )
    if isinstance( value, ( complex, np.complexfloating ) ):
        return [ finite_or_none( value.real ), finite_or_none( value.imag ) ]
    if isinstance( value, mpmath.mpf ):
        return mpmath.nstr( value, 20 )
    if isinstance( value, mpmath.mpc ):
        return [ mpmath.nstr( value.real, 20 ), mpmath.nstr( value.imag, 20 ) ]
    if isinstance( value, np.ndarray ):
        return [ to_jsonable( v ) for v in value.tolist() ]
    if isinstance( value, dict ):
        return { str( k ): to_jsonable( v ) for k, v in value.items() }
    if isinstance( value, ( list, tuple ) ):
        return [ to_jsonable( v ) for v in value ]
    raise TypeError( f"cannot convert { type( value ).__name__ } to JSON" )
