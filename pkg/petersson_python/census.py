"""
Weighted census of elliptic curves over prime fields F_q, q >= 5.

Isomorphism classes of y^2 = x^3 + a x + b are the orbits of (a, b) -> (u^4 a, u^6 b),
u in F_q^*; each class carries weight 1 / (q |Aut|), so the weights sum to 1. Point
counts use a quadratic-character table, group structure the orders of the points.
"""
import logging
import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Optional, Sequence

import mpmath
import numpy as np

from .analytic import chebyshev_u
from .arith import factor, is_prime, phi, psi, vp
from .errors import DomainError
from .types.records.census import CurveRecord, MomentResult

logger = logging.getLogger(__name__)

__all__ = [
    "MAX_Q", "set_max_q", "quadratic_character_table", "count_points", "count_points_long",
    "discriminant_long", "short_weierstrass", "enumerate_curves", "census", "group_structure",
    "torsion_count", "aut_from_j", "phi_A", "moment", "v_main", "mc2_envelope", "FpSquare",
    "count_points_fp2",
]

MAX_Q = 2000

Point = Optional[ tuple[ int, int ] ]


def set_max_q( value: int ) -> None:
    global MAX_Q
    MAX_Q = int( value )


def _check_field( q: int ) -> None:
    if not is_prime( q ):
        raise DomainError( f"the census works over prime fields, got q={ q }" )
    if q <= 3:
        raise DomainError( f"characteristic { q } is excluded, need q >= 5" )
    if q > MAX_Q:
        raise DomainError( f"q={ q } exceeds the configured census cap { MAX_Q }" )


def _check_curve( q: int, a: int, b: int ) -> None:
    if ( 4 * a ** 3 + 27 * b ** 2 ) % q == 0:
        raise DomainError( f"y^2 = x^3 + { a }x + { b } is singular over F_{ q }" )


@lru_cache( maxsize=64 )
def quadratic_character_table( q: int ) -> np.ndarray:
    """
    (x / q) for x = 0, ..., q-1.
    """
    table = np.full( q, -1, dtype=np.int64 )
    x = np.arange( q, dtype=np.int64 )
    table[( x * x ) % q] = 1
    table[0] = 0
    table.flags.writeable = False
    return table


def _rhs( q: int, a: int, b: int ) -> np.ndarray:
    x = np.arange( q, dtype=np.int64 )
    return ( ( x * x % q ) * x + a * x + b ) % q


def count_points( q: int, a: int, b: int ) -> int:
    """
    #E(F_q) = 1 + sum_x (1 + (x^3 + a x + b / q)).
    """
    _check_field( q )
    _check_curve( q, a, b )
    return int( 1 + q + quadratic_character_table( q )[_rhs( q, a % q, b % q )].sum() )


def discriminant_long( ainvs: Sequence[ int ] ) -> int:
    a1, a2, a3, a4, a6 = ainvs
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    return -b2 * b2 * b8 - 8 * b4 ** 3 - 27 * b6 * b6 + 9 * b2 * b4 * b6


def short_weierstrass( ainvs: Sequence[ int ], p: int ) -> tuple[ int, int ]:
    """
    (a, b) with y^2 = x^3 + a x + b isomorphic over F_p, p >= 5, to the long model `ainvs`.
    """
    if p < 5:
        raise DomainError( f"short Weierstrass form needs p >= 5, got { p }" )
    a1, a2, a3, a4, a6 = ainvs
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    c4 = b2 * b2 - 24 * b4
    c6 = -b2 ** 3 + 36 * b2 * b4 - 216 * b6
    return ( -27 * c4 ) % p, ( -54 * c6 ) % p


def count_points_long( p: int, ainvs: Sequence[ int ] ) -> int:
    """
    #E(F_p) for y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6; direct count for p = 2, 3.
    """
    if not is_prime( p ):
        raise DomainError( f"p must be prime, got { p }" )
    if discriminant_long( ainvs ) % p == 0:
        raise DomainError( f"the curve { tuple( ainvs ) } has bad reduction at { p }" )
    if p >= 5:
        a, b = short_weierstrass( ainvs, p )
        return int( 1 + p + quadratic_character_table( p )[_rhs( p, a, b )].sum() )
    a1, a2, a3, a4, a6 = ainvs
    x, y = np.meshgrid( np.arange( p ), np.arange( p ), indexing="ij" )
    left = y * y + a1 * x * y + a3 * y
    right = x ** 3 + a2 * x * x + a4 * x + a6
    return 1 + int( np.count_nonzero( ( left - right ) % p == 0 ) )


def _add( q: int, a: int, P: Point, Q: Point ) -> Point:
    if P is None:
        return Q
    if Q is None:
        return P
    x1, y1 = P
    x2, y2 = Q
    if x1 == x2 and ( y1 + y2 ) % q == 0:
        return None
    if P == Q:
        slope = ( 3 * x1 * x1 + a ) * pow( 2 * y1, -1, q ) % q
    else:
        slope = ( y2 - y1 ) * pow( x2 - x1, -1, q ) % q
    x3 = ( slope * slope - x1 - x2 ) % q
    return x3, ( slope * ( x1 - x3 ) - y1 ) % q


def _mul( q: int, a: int, k: int, P: Point ) -> Point:
    result: Point = None
    while k:
        if k & 1:
            result = _add( q, a, result, P )
        P = _add( q, a, P, P )
        k >>= 1
    return result


def _points( q: int, a: int, b: int ) -> list[ tuple[ int, int ] ]:
    roots: dict[ int, list[ int ] ] = {}
    for y in range( q ):
        roots.setdefault( y * y % q, [] ).append( y )
    rhs = _rhs( q, a, b )
    return [ ( x, y ) for x in range( q ) for y in roots.get( int( rhs[x] ), [] ) ]


def _point_order( q: int, a: int, P: Point, order: int, primes: list[ int ] ) -> int:
    n = order
    for ell in primes:
        while n % ell == 0 and _mul( q, a, n // ell, P ) is None:
            n //= ell
    return n


def group_structure( q: int, a: int, b: int, order: Optional[ int ] = None ) -> tuple[ int, int ]:
    """
    Invariant factors (n1, n2) of E(F_q): n1 is the exponent, n2 = #E / n1.
    """
    _check_field( q )
    _check_curve( q, a, b )
    order = order if order is not None else count_points( q, a, b )
    best = 1
    for dd in range( 1, math.isqrt( order ) + 1 ):
        if order % ( dd * dd ) == 0 and ( q - 1 ) % dd == 0:
            best = dd
    if best == 1:
        return order, 1
    primes = factor( order ).primes()
    exponent = 1
    for P in _points( q, a % q, b % q ):
        exponent = math.lcm( exponent, _point_order( q, a % q, P, order, primes ) )
        if exponent == order:
            break
    return exponent, order // exponent


def torsion_count( q: int, a: int, b: int, ell: int ) -> int:
    """
    #{P in E(F_q) : ell P = O}, the point at infinity included.
    """
    _check_field( q )
    _check_curve( q, a, b )
    return 1 + sum( 1 for P in _points( q, a % q, b % q ) if _mul( q, a % q, ell, P ) is None )


def aut_from_j( q: int, a: int, b: int ) -> int:
    """
    |Aut| from the j-invariant: 6 for j = 0 and q = 1 mod 3, 4 for j = 1728 and q = 1 mod 4, else 2.
    """
    if a % q == 0 and q % 3 == 1:
        return 6
    if b % q == 0 and q % 4 == 1:
        return 4
    return 2


def enumerate_curves( q: int ) -> Iterator[ CurveRecord ]:
    """
    One record per F_q-isomorphism class, keyed by the lexicographically least (a, b) of
    its orbit, in increasing order of that key.
    """
    _check_field( q )
    units = np.arange( 1, q, dtype=np.int64 )
    u2 = units * units % q
    u4 = u2 * u2 % q
    u6 = u4 * u2 % q
    seen = np.zeros( ( q, q ), dtype=bool )
    for a in range( q ):
        for b in range( q ):
            if seen[a, b] or ( 4 * a ** 3 + 27 * b * b ) % q == 0:
                continue
            orbit_a = u4 * a % q
            orbit_b = u6 * b % q
            seen[orbit_a, orbit_b] = True
            aut = int( np.count_nonzero( ( orbit_a == a ) & ( orbit_b == b ) ) )
            order = count_points( q, a, b )
            n1, n2 = group_structure( q, a, b, order )
            yield CurveRecord( q, a, b, q + 1 - order, aut, n1, n2 )


@lru_cache( maxsize=8 )
def _census( q: int ) -> tuple[ CurveRecord, ... ]:
    records = tuple( enumerate_curves( q ) )
    logger.info( f"[Census] q={ q }: { len( records ) } isomorphism classes" )
    return records


def census( q: int ) -> list[ CurveRecord ]:
    return list( _census( q ) )


def phi_A( A: tuple[ int, int ], record: CurveRecord ) -> int:
    """
    1 when Z/alpha1 x Z/alpha2 embeds in E(F_q), i.e. alpha1 | n1 and alpha2 | n2.
    """
    alpha1, alpha2 = A
    if alpha2 < 1 or alpha1 % alpha2:
        raise DomainError( f"A = { A } is not in invariant-factor form" )
    return int( record.n1 % alpha1 == 0 and record.n2 % alpha2 == 0 )


def v_main( n1: int, n2: int, q: int ) -> Fraction:
    """
    n1 / (psi(n1) phi(n1) n2^2) prod_{l | n1/(q-1, n1)} (1 + l^(-1 - 2 v_l((q-1, n1)/n2))),
    zero when q != 1 mod n2.
    """
    if n2 < 1 or n1 % n2:
        raise DomainError( f"v needs n2 | n1, got n1={ n1 }, n2={ n2 }" )
    if ( q - 1 ) % n2:
        return Fraction( 0 )
    g = math.gcd( q - 1, n1 )
    value = Fraction( n1, psi( n1 ) * phi( n1 ) * n2 * n2 )
    inner = g // n2
    for ell in factor( n1 // g ).primes():
        value *= 1 + Fraction( 1, ell ** ( 1 + 2 * vp( inner, ell ) ) )
    return value


def mc2_envelope( q: int, A: tuple[ int, int ], eps: float = 0.05 ) -> float:
    """
    v(n1, n2) min(n1, q^(1/44) n1^(19/22)) n1 n2 q^(-1/2) (q n1)^eps, constant 1.
    """
    n1, n2 = A
    return float( v_main( n1, n2, q ) ) * min( n1, q ** ( 1 / 44 ) * n1 ** ( 19 / 22 ) ) * n1 * n2 / math.sqrt( q ) * (
        q * n1 ) ** eps


def moment( q: int, j: int, A: tuple[ int, int ] = ( 1, 1 ), dps: int = 30 ) -> MomentResult:
    """
    E_q(U_j(t / 2 sqrt q) Phi_A) = (1/q) sum_{A embeds in E} U_j(t / 2 sqrt q) / |Aut|.

    Exact for j = 0; otherwise summed in mpmath at `dps` digits.
    """
    if j < 0:
        raise DomainError( f"Chebyshev degree must be nonnegative, got { j }" )
    records = [ r for r in _census( q ) if phi_A( A, r ) ]
    main = v_main( A[0], A[1], q ) if j == 0 else Fraction( 0 )
    if j == 0:
        value = sum( ( Fraction( 1, q * r.aut ) for r in records ), start=Fraction( 0 ) )
        return MomentResult( q, j, A, value, main )
    with mpmath.workdps( dps ):
        scale = 2 * mpmath.sqrt( q )
        value = mpmath.fsum( chebyshev_u( j, mpmath.mpf( r.t ) / scale ) / r.aut for r in records ) / q
        return MomentResult( q, j, A, value, main )


class FpSquare:
    """
    Arithmetic in F_{p^2} = F_p[s] / (s^2 - n) for a fixed non-residue n; elements are pairs (x, y) = x + y s.
    """

    def __init__( self, p: int ) -> None:
        if not is_prime( p ) or p == 2:
            raise DomainError( f"F_(p^2) needs an odd prime, got { p }" )
        self.p = p
        self.n = next( x for x in range( 2, p ) if pow( x, ( p - 1 ) // 2, p ) == p - 1 )

    def mul( self, u: tuple[ int, int ], v: tuple[ int, int ] ) -> tuple[ int, int ]:
        p = self.p
        return ( u[0] * v[0] + self.n * u[1] * v[1] ) % p, ( u[0] * v[1] + u[1] * v[0] ) % p

    def elements( self ) -> Iterator[ tuple[ int, int ] ]:
        for x in range( self.p ):
            for y in range( self.p ):
                yield x, y

    def is_square( self, u: tuple[ int, int ] ) -> bool:
        return u == ( 0, 0 ) or self.power( u, ( self.p * self.p - 1 ) // 2 ) == ( 1, 0 )

    def power( self, u: tuple[ int, int ], k: int ) -> tuple[ int, int ]:
        result = ( 1, 0 )
        while k:
            if k & 1:
                result = self.mul( result, u )
            u = self.mul( u, u )
            k >>= 1
        return result


def count_points_fp2( p: int, a: int, b: int ) -> int:
    """
    #E(F_(p^2)) for y^2 = x^3 + a x + b by direct count, p >= 5.
    """
    if p < 5:
        raise DomainError( f"the F_(p^2) count needs p >= 5, got { p }" )
    field = FpSquare( p )
    _check_curve( p, a, b )
    squares: dict[ tuple[ int, int ], int ] = {}
    for y in field.elements():
        key = field.mul( y, y )
        squares[key] = squares.get( key, 0 ) + 1
    total = 1
    for x in field.elements():
        x3 = field.mul( field.mul( x, x ), x )
        rhs = ( ( x3[0] + a * x[0] + b ) % p, ( x3[1] + a * x[1] ) % p )
        total += squares.get( rhs, 0 )
    return total
