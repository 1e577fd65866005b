import math
from typing import Optional, TYPE_CHECKING

from ...errors import PreconditionError

if TYPE_CHECKING:
    from ...characters import DirichletCharacter


class KloostermanQuery:
    """
    Arguments of a (twisted) Kloosterman sum S_chi(a, b, c).
    """
    a : int
    b : int
    c : int
    chi : Optional[ "DirichletCharacter" ]
    """
    Optional twisting character; its modulus must divide `c`.
    """

    def __init__( self, a: int, b: int, c: int, chi: Optional[ "DirichletCharacter" ] = None ) -> None:
        if c < 1:
            raise PreconditionError( f"Kloosterman modulus must be positive, got c={ c }" )
        if chi is not None and c % chi.modulus:
            raise PreconditionError( f"character modulus { chi.modulus } does not divide c={ c }" )
        self.a = a
        self.b = b
        self.c = c
        self.chi = chi

    def to_dict( self ) -> dict:
        return {
            "a": self.a, "b": self.b, "c": self.c,
            "char_modulus": self.chi.modulus if self.chi else 1,
            "char_index": self.chi.index() if self.chi else 0,
        }


class TWQuery:
    """
    Arguments of the character-averaged sums T_W and T'_W.
    """
    W : int
    N : int
    a : int
    b : int
    c : int
    d : int
    kappa : Optional[ int ]

    def __init__( self, W: int, N: int, d: int, a: int, b: int, c: int, kappa: Optional[ int ] = None ) -> None:
        if W < 1 or N < 1 or c < 1:
            raise PreconditionError( "W, N and c must be positive" )
        if ( N * N ) % W:
            raise PreconditionError( f"W={ W } does not divide N^2={ N * N }" )
        if c % W:
            raise PreconditionError( f"W={ W } does not divide c={ c }" )
        if math.gcd( b, W ) != 1:
            raise PreconditionError( f"gcd(b, W) = gcd({ b }, { W }) != 1" )
        if math.gcd( d, N ) != 1:
            raise PreconditionError( f"gcd(d, N) = gcd({ d }, { N }) != 1" )
        self.W = W
        self.N = N
        self.a = a
        self.b = b
        self.c = c
        self.d = d
        self.kappa = kappa

    def to_dict( self ) -> dict:
        return { "W": self.W, "N": self.N, "a": self.a, "b": self.b, "c": self.c, "d": self.d, "kappa": self.kappa }


class TailBoundInput:
    """
    Data for the certified tail of the Petersson c-sum beyond C.
    """
    kappa : int
    N : int
    m : int
    n : int
    C : int
    """
    Truncation point; the tail is over c > C with N | c.
    """
    cond : int
    """
    Conductor of the twisting character.
    """
    cond_star : int
    """
    Squarefree kernel of the conductor.
    """

    def __init__( self, kappa: int, N: int, m: int, n: int, C: int, cond: int = 1, cond_star: int = 1 ) -> None:
        if kappa < 2:
            raise PreconditionError( f"weight must be at least 2, got { kappa }" )
        if C < N:
            raise PreconditionError( f"truncation C={ C } is below the level N={ N }" )
        self.kappa = kappa
        self.N = N
        self.m = m
        self.n = n
        self.C = C
        self.cond = cond
        self.cond_star = cond_star

    def to_dict( self ) -> dict:
        return {
            "kappa": self.kappa, "N": self.N, "m": self.m, "n": self.n, "C": self.C,
            "cond": self.cond, "cond_star": self.cond_star,
        }
