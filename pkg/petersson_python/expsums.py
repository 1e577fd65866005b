"""
Twisted Kloosterman sums and the character-averaged sums T_W, T'_W.

The sums are evaluated with numpy: for a modulus c the units and their inverses are
tabulated once, and every S_chi(a, b, c) is then a gather from the table of c-th
roots of unity followed by a fixed-order sum. S_chi(a, b, 1) = 1 by convention.
"""
import logging
import math
from functools import lru_cache
from typing import Iterable, Optional

import numpy as np

from .arith import d, factor, inverse_mod, phi, psi, smooth_part
from .characters import DirichletCharacter, character_group
from .errors import ModeError, PrecisionError, PreconditionError
from .types.records.queries import KloostermanQuery, TWQuery

logger = logging.getLogger(__name__)

__all__ = [
    "unit_table", "root_table", "kloosterman", "twisted_kloosterman", "kloosterman_sums",
    "kloosterman_matrix", "weil_bound", "t_prime_sum", "t_sum", "t_sum_factored", "tsum_bound",
]


def _modpow_array( x: np.ndarray, e: int, m: int ) -> np.ndarray:
    result = np.ones_like( x )
    base = x % m
    while e:
        if e & 1:
            result = result * base % m
        base = base * base % m
        e >>= 1
    return result


@lru_cache( maxsize=512 )
def unit_table( c: int ) -> tuple[ np.ndarray, np.ndarray ]:
    """
    Units x mod c in increasing order and their inverses, as read-only int64 arrays.
    """
    if c == 1:
        units = np.zeros( 1, dtype=np.int64 )
        inverses = np.zeros( 1, dtype=np.int64 )
    else:
        residues = np.arange( c, dtype=np.int64 )
        units = residues[np.gcd( residues, c ) == 1]
        inverses = _modpow_array( units, phi( c ) - 1, c )
    units.flags.writeable = False
    inverses.flags.writeable = False
    return units, inverses


@lru_cache( maxsize=512 )
def root_table( c: int ) -> np.ndarray:
    """
    e(k / c) for k = 0, ..., c-1.
    """
    roots = np.exp( 2j * np.pi * np.arange( c ) / c )
    roots.flags.writeable = False
    return roots


def _weights( chi: Optional[ DirichletCharacter ], units: np.ndarray ) -> Optional[ np.ndarray ]:
    if chi is None or chi.modulus == 1:
        return None
    return chi.values_table()[units % chi.modulus]


def kloosterman_sums(
    chi: Optional[ DirichletCharacter ],
    pairs: Iterable[ tuple[ int, int ] ],
    c: int,
) -> np.ndarray:
    """
    S_chi(a, b, c) for every (a, b) in `pairs`, sharing the unit tables of c.
    """
    units, inverses = unit_table( c )
    roots = root_table( c )
    weights = _weights( chi, units )
    out = []
    for a, b in pairs:
        terms = roots[( ( a % c ) * units + ( b % c ) * inverses ) % c]
        out.append( terms.sum() if weights is None else np.dot( terms, weights ) )
    return np.asarray( out, dtype=complex )


def twisted_kloosterman( chi: Optional[ DirichletCharacter ], a: int, b: int, c: int ) -> complex:
    """
    S_chi(a, b, c) = sum over units x mod c of chi(x) e((a x + b x^-1) / c).
    """
    KloostermanQuery( a, b, c, chi )
    return complex( kloosterman_sums( chi, [ ( a, b ) ], c )[0] )


def kloosterman( a: int, b: int, c: int ) -> complex:
    """
    The classical Kloosterman sum S(a, b, c), which is real.
    """
    value = twisted_kloosterman( None, a, b, c )
    if abs( value.imag ) > 1e-9 * max( 1, phi( c ) ):
        raise PrecisionError( f"S({ a },{ b },{ c }) has imaginary part { value.imag }" )
    return complex( value.real, 0.0 )


def kloosterman_matrix( chi: Optional[ DirichletCharacter ], c: int ) -> np.ndarray:
    """
    The matrix S_chi(a, b, c) for 0 <= a, b < c.
    """
    if chi is not None and c % chi.modulus:
        raise PreconditionError( f"character modulus { chi.modulus } does not divide c={ c }" )
    units, inverses = unit_table( c )
    roots = root_table( c )
    residues = np.arange( c, dtype=np.int64 )[:, None]
    left = roots[( residues * units ) % c]
    right = roots[( residues * inverses ) % c]
    weights = _weights( chi, units )
    if weights is not None:
        left = left * weights
    return left @ right.T


def weil_bound( chi: Optional[ DirichletCharacter ], a: int, b: int, c: int ) -> float:
    """
    d(c) (a, b, c)^(1/2) c^(1/2) cond^(1/4) cond*^(1/4).
    """
    if chi is not None and c % chi.modulus:
        raise PreconditionError( f"character modulus { chi.modulus } does not divide c={ c }" )
    cond = chi.conductor() if chi is not None else 1
    cond_star = chi.squarefree_conductor() if chi is not None else 1
    g = math.gcd( math.gcd( a, b ), c )
    return d( c ) * math.sqrt( g * c ) * ( cond * cond_star ) ** 0.25


def _residue_sum( phases: np.ndarray, units: np.ndarray, target: int, modulus: int ) -> complex:
    if modulus == 1:
        return complex( phases.sum() )
    return complex( phases[units % modulus == target % modulus].sum() )


def _local_t_prime( p: int, alpha: int, beta: int, gamma: int, d_: int, a: int, b: int, b_target: int ) -> complex:
    """
    Local factor at p of T'_W: the sum over characters chi_p of conductor dividing p^alpha
    of chi_p(d) conj(chi_p(b)) F_p S_chi_p(a, b, p^gamma).
    """
    q = p ** gamma
    units, inverses = unit_table( q )
    phases = root_table( q )[( ( a % q ) * units + ( b % q ) * inverses ) % q]
    if alpha == 0:
        if beta >= 1 and b_target % p == 0:
            return 0j
        return complex( phases.sum() )
    pb = p ** beta
    target = ( b_target * inverse_mod( d_, pb ) ) % pb
    if alpha > beta:
        return phi( pb ) * _residue_sum( phases, units, target, pb )
    pa = p ** alpha
    top = _residue_sum( phases, units, target, pa )
    below = _residue_sum( phases, units, target, pa // p )
    # the Moebius factor runs over p^alpha / delta
    if alpha == 1:
        return ( p - 1 ) * top + ( ( p - 1 ) * top - below ) / p
    return phi( pa ) * top + ( phi( pa ) * top - phi( pa // p ) * below ) / ( p - 1 )


def _t_prime_brute( query: TWQuery ) -> complex:
    from .petersson import f_factor

    g = math.gcd( query.N, query.W )
    total = 0j
    for chi in character_group( query.N ):
        if query.W % chi.conductor():
            continue
        weight = chi.value( query.d ) * chi.value( query.b ).conjugate() * float( f_factor( query.W, chi ) )
        if weight == 0:
            continue
        total += weight * twisted_kloosterman( chi.restrict( g ), query.a, query.b, query.c )
    return total


def _coprime_levels( N: int, b: int, skip: int = 0 ) -> float:
    return 0.0 if any( b % p == 0 for p in factor( N ).primes() if p != skip ) else 1.0


def t_prime_sum( W: int, N: int, d: int, a: int, b: int, c: int, mode: str = "brute" ) -> complex:
    """
    T'_W(a, b, c) = sum over chi mod N with cond(chi) | W of chi(d) conj(chi(b)) F(W, chi) S_chi(a, b, c).

    `mode="brute"` runs the character sum directly; `mode="closed"` evaluates the local
    case formulas and needs c and W to be powers of one prime.
    """
    query = TWQuery( W, N, d, a, b, c )
    if mode == "brute":
        return _t_prime_brute( query )
    if mode != "closed":
        raise ModeError( f"unknown T'_W mode { mode!r}" )
    fc = factor( c )
    if len( fc ) > 1:
        raise ModeError( f"closed mode needs a prime-power modulus, got c={ c }" )
    if c == 1:
        return complex( _coprime_levels( N, b ) )
    p, gamma = fc.factors[0]
    alpha = factor( W ).exponent( p )
    if W != p ** alpha:
        raise ModeError( f"closed mode needs W to be a power of { p }, got W={ W }" )
    beta = factor( N ).exponent( p )
    local = _local_t_prime( p, alpha, beta, gamma, d, a, b, b )
    return local * _coprime_levels( N, b, skip=p )


def t_sum_factored( W: int, N: int, d: int, a: int, b: int, c: int ) -> complex:
    """
    T'_W(a, b, c) as a product of local closed forms over the primes of cN.

    At p^gamma || c the local sum sees a and b multiplied by the inverse of c / p^gamma;
    the residue condition x = d^-1 b keeps the untwisted d and b.
    """
    TWQuery( W, N, d, a, b, c )
    primes = sorted( set( factor( c ).primes() ) | set( factor( N ).primes() ) )
    total = 1 + 0j
    for p in primes:
        gamma = factor( c ).exponent( p )
        alpha = factor( W ).exponent( p )
        beta = factor( N ).exponent( p )
        q = p ** gamma
        rest = c // q
        cbar = inverse_mod( rest, q ) if q > 1 else 0
        total *= _local_t_prime( p, alpha, beta, gamma, d, a * cbar, b * cbar, b )
        if total == 0:
            break
    return total


def t_sum( W: int, N: int, d: int, kappa: int, a: int, b: int, c: int, method: str = "half" ) -> complex:
    """
    T_W(a, b, c): the part of T'_W running over characters with chi(-1) = (-1)^kappa.

    `method="half"` uses (1/2) T'_W(d) + ((-1)^kappa / 2) T'_W(-d) with T'_W evaluated
    in factored form; `method="filter"` restricts the brute character sum by parity.
    Flipping the sign of b instead of d does not isolate the parity class.
    """
    query = TWQuery( W, N, d, a, b, c, kappa )
    sign = -1 if kappa % 2 else 1
    if method == "half":
        return 0.5 * t_sum_factored( W, N, d, a, b, c ) + 0.5 * sign * t_sum_factored( W, N, -d, a, b, c )
    if method != "filter":
        raise ModeError( f"unknown T_W method { method!r}" )
    from .petersson import f_factor

    g = math.gcd( N, W )
    total = 0j
    for chi in character_group( N ):
        if W % chi.conductor() or chi.parity() != sign:
            continue
        weight = chi.value( query.d ) * chi.value( b ).conjugate() * float( f_factor( W, chi ) )
        if weight:
            total += weight * twisted_kloosterman( chi.restrict( g ), a, b, c )
    return total


def tsum_bound( W: int, a: int, b: int, c: int ) -> float:
    """
    psi(c1) d(c2) (a, b, c2)^(1/2) c2^(1/2), c1 the W-smooth part of c.
    """
    if c % W:
        raise PreconditionError( f"W={ W } does not divide c={ c }" )
    c1 = smooth_part( c, W )
    c2 = c // c1
    g = math.gcd( math.gcd( a, b ), c2 )
    return psi( c1 ) * d( c2 ) * math.sqrt( g * c2 )
