from fractions import Fraction
from typing import Optional, Sequence, Union

Coefficient = Union[ int, Fraction ]


class QExpansion:
    """
    A truncated q-expansion sum_{n <= P} a(n) q^n with exact coefficients.
    """
    level : int
    weight : int
    coeffs : tuple[ Coefficient, ... ]
    """
    a(0), ..., a(P).
    """
    name : Optional[ str ]

    def __init__( self, level: int, weight: int, coeffs: Sequence[ Coefficient ], name: Optional[ str ] = None ) -> None:
        self.level = level
        self.weight = weight
        self.coeffs = tuple( coeffs )
        self.name = name

    @property
    def precision( self ) -> int:
        return len( self.coeffs ) - 1

    def __getitem__( self, n: int ) -> Coefficient:
        if not 0 <= n <= self.precision:
            raise IndexError( f"coefficient { n } is beyond the precision { self.precision }" )
        return self.coeffs[n]

    def truncate( self, P: int ) -> "QExpansion":
        return QExpansion( self.level, self.weight, self.coeffs[:P + 1], self.name )

    def __eq__( self, other: object ) -> bool:
        if not isinstance( other, QExpansion ):
            return NotImplemented
        return ( self.level, self.weight, self.coeffs ) == ( other.level, other.weight, other.coeffs )

    def __hash__( self ) -> int:
        return hash( ( self.level, self.weight, self.coeffs ) )

    def __repr__( self ) -> str:
        head = ", ".join( str( c ) for c in self.coeffs[:6] )
        return f"QExpansion(level={ self.level }, weight={ self.weight }, P={ self.precision }, [{ head }, ...])"

    def to_dict( self ) -> dict:
        return {
            "name": self.name,
            "level": self.level,
            "weight": self.weight,
            "precision": self.precision,
            "coefficients": [ str( c ) for c in self.coeffs ],
        }


class NormEstimate:
    """
    Petersson norm from a truncated adjoint-square L-value, with a heuristic error bar.
    """
    value : float
    error_bar : float
    """
    Relative distance between the truncations at X and X/2; not a certified bound.
    """
    l_value : float
    """
    L(1, Ad^2 f) including the bad Euler factors.
    """
    x : int
    method : str

    def __init__( self, value: float, error_bar: float, l_value: float, x: int, method: str ) -> None:
        self.value = value
        self.error_bar = error_bar
        self.l_value = l_value
        self.x = x
        self.method = method

    def __repr__( self ) -> str:
        return f"NormEstimate({ self.value:.6e} +/- { 100 * self.error_bar:.2f}%, X={ self.x }, { self.method })"

    def to_dict( self ) -> dict:
        return {
            "value": self.value,
            "error_bar": self.error_bar,
            "l_value": self.l_value,
            "x": self.x,
            "method": self.method,
            "heuristic": True,
        }
