"""
Main terms and error envelopes of Hecke trace estimates, exact traces on the spaces the
oracle covers, and point counts of X_0(N) over finite fields.

Every envelope is evaluated with its O-constant set to 1 and epsilon = 0.05. The
constants are ineffective, so envelopes describe regimes, not proven bounds.
"""
import logging
import math
from fractions import Fraction
from typing import Optional, Union

from . import modforms
from .arith import d, factor, is_prime, isqrt_exact, phi, psi, sigma
from .characters import DirichletCharacter, character_group
from .errors import DomainError, ParityMismatchError, PreconditionError, UnsupportedSpaceError
from .types.records.traces import TraceEstimate

logger = logging.getLogger(__name__)

__all__ = [
    "EPSILON", "SPACES", "main_term_mt1", "error_envelopes", "main_term_mt2", "mt2_character_sum",
    "mt2_envelopes", "exact_trace_small", "x0_predict", "x0_exact", "x0_exact_11", "x0_square_regime",
]

EPSILON = 0.05

GENUS_ZERO_LEVELS = ( 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 13, 16, 18, 25 )

SPACES: dict[ tuple[ int, int ], list[ tuple[ int, str ] ] ] = {
    ( 12, 1 ): [ ( 1, "delta" ) ],
    ( 16, 1 ): [ ( 1, "delta16" ) ],
    ( 18, 1 ): [ ( 1, "delta18" ) ],
    ( 20, 1 ): [ ( 1, "delta20" ) ],
    ( 22, 1 ): [ ( 1, "delta22" ) ],
    ( 26, 1 ): [ ( 1, "delta26" ) ],
    ( 2, 11 ): [ ( 11, "level11" ) ],
    ( 2, 22 ): [ ( 11, "level11" ) ],
    **{ ( 2, n ): [] for n in GENUS_ZERO_LEVELS },
    **{ ( k, 1 ): [] for k in ( 4, 6, 8, 10, 14 ) },
}
"""
(weight, level) -> newforms of every level M | N spanning the space, as (M, oracle name).
"""


def _character_at_root( chi: Optional[ DirichletCharacter ], r: int ) -> Union[ Fraction, complex ]:
    if chi is None:
        return Fraction( 1 )
    phase = chi.phase( r )
    if phase is None:
        return Fraction( 0 )
    if phase == 0:
        return Fraction( 1 )
    if phase == Fraction( 1, 2 ):
        return Fraction( -1 )
    return chi.value( r )


def main_term_mt1(
    kappa: int, N: int, chi: Optional[ DirichletCharacter ], m: int, check: bool = True
) -> Union[ Fraction, complex ]:
    """
    (kappa - 1)/12 chi(sqrt m) m^(kappa/2 - 1) psi(N), zero unless m is a square.

    The value is an exact Fraction whenever chi(sqrt m) is rational.
    """
    if check:
        if chi is not None and chi.parity() != ( -1 ) ** kappa:
            raise ParityMismatchError( f"chi(-1) = { chi.parity() } but kappa = { kappa }" )
        if math.gcd( N, m ) != 1:
            raise PreconditionError( f"the main term needs gcd(N, m) = 1, got N={ N }, m={ m }" )
    r = isqrt_exact( m )
    if r is None:
        return Fraction( 0 )
    value = _character_at_root( chi, r )
    scale = Fraction( ( kappa - 1 ) * r ** ( kappa - 2 ) * psi( N ), 12 )
    return scale * value if isinstance( value, Fraction ) else complex( float( scale ) * value )


def _max_psi_below( m: int ) -> int:
    return max( psi( f ) for f in range( 1, math.isqrt( 4 * m - 1 ) + 1 ) )


def _conductors( chi: Optional[ DirichletCharacter ] ) -> tuple[ int, int ]:
    if chi is None:
        return 1, 1
    return chi.conductor(), chi.squarefree_conductor()


def error_envelopes(
    kappa: int, N: int, chi: Optional[ DirichletCharacter ], m: int, eps: float = EPSILON
) -> TraceEstimate:
    """
    The trivial (Deligne), Eichler-Selberg and Petersson error envelopes for tr(T_m) on
    S_kappa(Gamma_0(N), chi), with the main term and the range of m where the Petersson
    envelope wins.
    """
    cond, cond_star = _conductors( chi )
    deligne = m ** ( ( kappa - 1 ) / 2 )
    envelopes = {
        "trivial": ( kappa - 1 ) * psi( N ) / 12 * d( m ) * deligne,
        "serre": ( sigma( m ) * _max_psi_below( m ) + d( m ) * math.sqrt( N ) ) * deligne * d( N ),
        "petersson": ( N ** ( 10 / 11 ) * m ** ( ( kappa - 1 ) / 2 + 1 / 44 ) * kappa ** ( 61 / 66 )
                       * ( cond * cond_star ) ** ( 1 / 44 ) * ( N * m * kappa ) ** eps ),
    }
    zero_space = chi is not None and chi.parity() != ( -1 ) ** kappa
    main = Fraction( 0 ) if zero_space else main_term_mt1( kappa, N, chi, m, check=False )
    low = N ** ( 8 / 13 ) * kappa ** ( 122 / 195 ) * ( N * kappa ) ** eps * ( cond * cond_star ) ** ( 1 / 65 )
    high = ( N ** 4 * kappa ** ( 10 / 3 ) ) ** ( 1 - eps ) / ( cond * cond_star )
    extra = {
        "crossover_range": [ low, high ],
        "in_crossover": low <= m <= high,
        "petersson_best": envelopes["petersson"] < min( envelopes["trivial"], envelopes["serre"] ),
        "main_term_normalized": abs( complex( main ) ) / deligne,
    }
    return TraceEstimate( abs( complex( main ) ), envelopes, extra=extra )


def _check_mt2( M: int, N: int, d_: int, m: int ) -> None:
    if N % M:
        raise PreconditionError( f"Gamma(M, N) needs M | N, got M={ M }, N={ N }" )
    if math.gcd( N, m ) != 1:
        raise PreconditionError( f"the main term needs gcd(N, m) = 1, got N={ N }, m={ m }" )
    if math.gcd( d_, N ) != 1:
        raise PreconditionError( f"the diamond operator needs gcd(d, N) = 1, got d={ d_ }, N={ N }" )


def main_term_mt2( kappa: int, M: int, N: int, d_: int, m: int ) -> Fraction:
    """
    (kappa - 1)/24 m^(kappa/2 - 1) phi(N) psi(NM) ([sqrt(m) d = 1 mod N] + (-1)^kappa [sqrt(m) d = -1 mod N]).
    """
    _check_mt2( M, N, d_, m )
    r = isqrt_exact( m )
    if r is None:
        return Fraction( 0 )
    x = r * d_
    hits = int( ( x - 1 ) % N == 0 ) + ( -1 ) ** kappa * int( ( x + 1 ) % N == 0 )
    return Fraction( ( kappa - 1 ) * r ** ( kappa - 2 ) * phi( N ) * psi( N * M ) * hits, 24 )


def mt2_character_sum( kappa: int, M: int, N: int, d_: int, m: int ) -> Fraction:
    """
    sum over chi mod N with chi(-1) = (-1)^kappa of chi(d) main_term_mt1(kappa, NM, chi, m).

    The character sum is a multiple of 1/2; it is accumulated in floating point and then
    rounded to that lattice.
    """
    _check_mt2( M, N, d_, m )
    r = isqrt_exact( m )
    if r is None:
        return Fraction( 0 )
    total = 0j
    for chi in character_group( N ):
        if chi.parity() == ( -1 ) ** kappa:
            total += chi.value( d_ * r )
    if abs( total.imag ) > 1e-8 or abs( 2 * total.real - round( 2 * total.real ) ) > 1e-8:
        raise PreconditionError( f"character sum { total } is not a half-integer" )
    return Fraction( round( 2 * total.real ), 2 ) * main_term_mt1( kappa, N * M, None, m, check=False )


def mt2_envelopes( kappa: int, M: int, N: int, d_: int, m: int, eps: float = EPSILON ) -> TraceEstimate:
    """
    Trivial, Eichler-Selberg and Petersson envelopes for tr(<d> T_m) on S_kappa(Gamma(M, N)).
    """
    deligne = m ** ( ( kappa - 1 ) / 2 )
    envelopes = {
        "trivial": ( kappa - 1 ) / 12 * phi( N ) * psi( N * M ) * d( m ) * deligne,
        "serre": ( sigma( m ) * _max_psi_below( m ) + d( m ) * math.sqrt( M * N ) ) * deligne * d( M * N ) * N,
        "petersson": M * N ** ( 41 / 22 ) * m ** ( ( kappa - 1 ) / 2 + 1 / 44 ) * kappa ** ( 61 / 66 )
                     * ( N * m * kappa ) ** eps,
    }
    return TraceEstimate( float( main_term_mt2( kappa, M, N, d_, m ) ), envelopes )


def exact_trace_small( kappa: int, N: int, m: int, normalized: bool = False ) -> Union[ Fraction, float ]:
    """
    tr(T_m | S_kappa(Gamma_0(N))) = sum_{LM = N} d(L) sum_{f new of level M} a_f(m) for gcd(m, N) = 1,
    exactly, on the spaces listed in SPACES. `normalized=True` divides by m^((kappa-1)/2).
    """
    if ( kappa, N ) not in SPACES:
        raise UnsupportedSpaceError( f"no oracle data for S_{ kappa }(Gamma_0({ N }))" )
    if math.gcd( m, N ) != 1:
        raise PreconditionError( f"exact traces need gcd(m, N) = 1, got m={ m }, N={ N }" )
    precision = max( [ 200 ] + factor( m ).primes() )
    total = Fraction( 0 )
    for M, name in SPACES[( kappa, N )]:
        f = modforms.oracle_newform( name, precision )
        total += d( N // M ) * modforms.coefficient( f, m )
    if normalized:
        return float( total ) / m ** ( ( kappa - 1 ) / 2 )
    return total


def _check_prime_power( N: int, p: int, v: int ) -> None:
    if not is_prime( p ):
        raise DomainError( f"p must be prime, got { p }" )
    if v < 1:
        raise DomainError( f"v must be positive, got { v }" )
    if N % p == 0:
        raise PreconditionError( f"p={ p } divides the level { N }" )


def x0_exact_11( p: int, v: int = 1 ) -> int:
    """
    #X_0(11)(F_q), q = p^v, as q + 1 - a(q) + p a(q/p^2) with a(p^-1) = 0.
    """
    _check_prime_power( 11, p, v )
    f = modforms.oracle_newform( "level11", max( 200, p ) )
    q = p ** v
    below = modforms.coefficient( f, p ** ( v - 2 ) ) if v >= 2 else 0
    return q + 1 - modforms.coefficient( f, q ) + p * below


def x0_exact( N: int, p: int, v: int = 1 ) -> Optional[ int ]:
    """
    The exact point count when the oracle knows S_2(Gamma_0(N)), else None.
    """
    _check_prime_power( N, p, v )
    if N == 11:
        return x0_exact_11( p, v )
    if N in GENUS_ZERO_LEVELS:
        return p ** v + 1
    return None


def x0_predict( N: int, p: int, v: int = 1, eps: float = EPSILON ) -> TraceEstimate:
    """
    #X_0(N)(F_q) = q + (p - 1) psi(N)/12 [v even] + O(min(...) q^(1/2)).
    """
    _check_prime_power( N, p, v )
    q = p ** v
    main = Fraction( q ) + ( Fraction( ( p - 1 ) * psi( N ), 12 ) if v % 2 == 0 else 0 )
    root = math.sqrt( q )
    envelopes = {
        "riemann_hypothesis": psi( N ) * root,
        "petersson": q ** ( 1 / 44 ) * N ** ( 10 / 11 ) * ( q * N ) ** eps * root,
        "serre": ( q ** 1.5 + math.sqrt( N ) ) * d( N ) * q ** eps * root,
    }
    return TraceEstimate( float( main ), envelopes, exact=x0_exact( N, p, v ),
                          extra={ "q": q, "main_term_exact": str( main ) } )


def x0_square_regime( N: int, p: int, eps: float = EPSILON ) -> TraceEstimate:
    """
    #X_0(N)(F_{p^2}) in the four ranges of p^2 against N, chosen by the exponent
    log(p^2) / log(N) with implied constants 1. The secondary range starts at 8/13 and
    takes precedence over the small-field range where the two overlap, below 2/3.
    """
    _check_prime_power( N, p, 2 )
    q = p * p
    theta = math.inf if N == 1 else math.log( q ) / math.log( N )
    secondary = Fraction( p * psi( N ), 12 )
    middle = p ** ( 23 / 22 ) * N ** ( 10 / 11 ) * ( q * N ) ** eps
    if theta >= 4:
        regime, main, envelope = "riemann_hypothesis", Fraction( q ), p * psi( N )
    elif theta >= 40 / 21:
        regime, main, envelope = "full_main", q + secondary, middle
    elif theta >= 8 / 13:
        regime, main, envelope = "secondary_main", secondary, middle
    else:
        regime, main, envelope = "small_field", Fraction( ( p - 1 ) * psi( N ), 12 ), (
            ( p ** 4 + math.sqrt( N ) * p ) * d( N ) * p ** eps )
    return TraceEstimate( float( main ), { regime: envelope }, exact=x0_exact( N, p, 2 ),
                          extra={ "exponent": theta if math.isfinite( theta ) else None, "main_term_exact": str( main ) } )
