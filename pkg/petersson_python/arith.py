"""
Exact integer arithmetic and the multiplicative functions used by every other module.

All functions work on Python integers and return exact values. Factorizations are
cached since the same small moduli come back over and over again in the character,
Kloosterman and Petersson code.
"""
import logging
import math
from functools import lru_cache
from itertools import product
from typing import Iterable, Optional

from .errors import DomainError
from .types.records.factorization import Factorization

logger = logging.getLogger(__name__)

__all__ = [
    "factor", "psi", "phi", "d", "sigma", "d3", "mu", "vp", "divisors", "omega", "rad",
    "is_prime", "inverse_mod", "crt", "smooth_part", "isqrt_exact", "factor_pairs",
    "smooth_numbers", "primes_up_to",
]


def _check_positive( n: int, name: str = "n" ) -> None:
    if not isinstance( n, int ) or isinstance( n, bool ):
        raise DomainError( f"{ name } must be an int, got { type( n ).__name__ }" )
    if n < 1:
        raise DomainError( f"{ name } must be a positive integer, got { n }" )


@lru_cache( maxsize=1 << 16 )
def factor( n: int ) -> Factorization:
    """
    Factor `n` by trial division. `factor(1)` has no prime factors.
    """
    _check_positive( n )
    factors = []
    m = n
    for p in ( 2, 3 ):
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            factors.append( ( p, e ) )
    p = 5
    step = 2
    while p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            factors.append( ( p, e ) )
        p += step
        step = 6 - step
    if m > 1:
        factors.append( ( m, 1 ) )
    return Factorization( n, factors )


def is_prime( n: int ) -> bool:
    if n < 2:
        return False
    f = factor( n )
    return len( f ) == 1 and f.factors[0][1] == 1


def psi( n: int ) -> int:
    """
    Index of Gamma_0(n) in SL_2(Z): n * prod_{p | n} (1 + 1/p).
    """
    result = n
    for p, _ in factor( n ):
        result = result // p * ( p + 1 )
    return result


def phi( n: int ) -> int:
    result = n
    for p, _ in factor( n ):
        result = result // p * ( p - 1 )
    return result


def d( n: int ) -> int:
    """
    Number of divisors.
    """
    result = 1
    for _, e in factor( n ):
        result *= e + 1
    return result


def sigma( n: int ) -> int:
    result = 1
    for p, e in factor( n ):
        result *= ( p ** ( e + 1 ) - 1 ) // ( p - 1 )
    return result


def d3( n: int ) -> int:
    """
    Number of ordered triples (a, b, c) with abc = n.
    """
    result = 1
    for _, e in factor( n ):
        result *= ( e + 1 ) * ( e + 2 ) // 2
    return result


def mu( n: int ) -> int:
    f = factor( n )
    if any( e > 1 for _, e in f ):
        return 0
    return -1 if len( f ) % 2 else 1


def omega( n: int ) -> int:
    return len( factor( n ) )


def rad( n: int ) -> int:
    return math.prod( factor( n ).primes() )


def vp( n: int, p: int ) -> int:
    """
    p-adic valuation of a nonzero integer.
    """
    if n == 0:
        raise DomainError( "vp(0, p) is infinite" )
    if p < 2:
        raise DomainError( f"vp needs a prime, got { p }" )
    n = abs( n )
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


@lru_cache( maxsize=4096 )
def _divisors( n: int ) -> tuple[ int, ... ]:
    f = factor( n )
    ranges = [ [ p ** k for k in range( e + 1 ) ] for p, e in f ]
    return tuple( sorted( math.prod( combo ) for combo in product( *ranges ) ) )


def divisors( n: int ) -> list[ int ]:
    """
    All positive divisors of `n` in increasing order.
    """
    _check_positive( n )
    return list( _divisors( n ) )


def factor_pairs( n: int ) -> list[ tuple[ int, int ] ]:
    """
    All pairs (L, M) with L * M = n, ordered by increasing L.
    """
    return [ ( l, n // l ) for l in divisors( n ) ]


def inverse_mod( a: int, m: int ) -> int:
    if m == 1:
        return 0
    try:
        return pow( a, -1, m )
    except ValueError:
        raise DomainError( f"{ a } is not invertible modulo { m }" ) from None


def crt( residues: Iterable[ tuple[ int, int ] ] ) -> tuple[ int, int ]:
    """
    Combine (r, m) pairs with pairwise coprime moduli into a single (r, M).
    """
    r, m = 0, 1
    for ri, mi in residues:
        t = ( ( ri - r ) * inverse_mod( m % mi, mi ) ) % mi if mi > 1 else 0
        r, m = r + m * t, m * mi
        r %= m
    return r, m


def smooth_part( c: int, w: int ) -> int:
    """
    The largest divisor of `c` all of whose primes divide `w`.
    """
    part = 1
    for p, _ in factor( w ):
        while c % p == 0:
            c //= p
            part *= p
    return part


def isqrt_exact( n: int ) -> Optional[ int ]:
    """
    The integer square root of `n` when `n` is a perfect square, otherwise None.
    """
    if n < 0:
        return None
    r = math.isqrt( n )
    return r if r * r == n else None


def smooth_numbers( primes: Iterable[ int ], limit: int ) -> list[ int ]:
    """
    Sorted list of all integers <= limit whose prime factors lie in `primes` (1 included).
    """
    numbers = [ 1 ]
    for p in sorted( set( primes ) ):
        grown = []
        for x in numbers:
            while x <= limit:
                grown.append( x )
                x *= p
        numbers = grown
    return sorted( numbers )


@lru_cache( maxsize=32 )
def _prime_sieve( limit: int ) -> tuple[ int, ... ]:
    if limit < 2:
        return ()
    flags = bytearray( [ 1 ] ) * ( limit + 1 )
    flags[0] = flags[1] = 0
    for p in range( 2, math.isqrt( limit ) + 1 ):
        if flags[p]:
            flags[p * p :: p] = bytearray( len( range( p * p, limit + 1, p ) ) )
    return tuple( i for i, f in enumerate( flags ) if f )


def primes_up_to( limit: int ) -> list[ int ]:
    return list( _prime_sieve( limit ) )
