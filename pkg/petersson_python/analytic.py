"""
Special functions and certified tail bounds for the Petersson c-sum.

Divisor sums are bounded with D(x) = sum_{n <= x} d(n) <= x (1 + log x), which gives by
partial summation

    sum_{k > K} d(k) k^-s <= s K^(1-s) ((1 + log K) / (s - 1) + 1 / (s - 1)^2),   K >= 1,
    sum_{k <= Y} d(k) k^-1/2 <= 2 sqrt(Y) log Y + 1,                             Y >= 1.

Together with the Weil bound and |J_nu(x)| <= min(1, (x/2)^nu / nu!) these give every
majorant in this module.
"""
import logging
import math
from typing import Iterable

import numpy as np
from scipy.special import gammaln

from .arith import d, smooth_numbers
from .errors import DomainError, PreconditionError
from .types.records.queries import TailBoundInput

logger = logging.getLogger(__name__)

__all__ = [
    "bessel_j", "bessel_j_array", "chebyshev_u", "c_kappa", "divisor_tail_sum_bound",
    "petersson_tail_bound", "delta_majorant", "ell_tail_bound",
]

_SERIES_LIMIT = 12.0
_RESCALE = 1e250


def _use_series( k: int, x: float ) -> bool:
    return x <= _SERIES_LIMIT or x * x <= 4 * ( k + 1 )


def _bessel_series( k: int, x: float ) -> float:
    log_first = k * math.log( x / 2 ) - math.lgamma( k + 1 )
    if log_first < -745:
        return 0.0
    term = math.exp( log_first )
    total = term
    y = -( x / 2 ) ** 2
    j = 0
    while True:
        j += 1
        term *= y / ( j * ( j + k ) )
        total += term
        if abs( term ) <= 1e-17 * abs( total ) or term == 0.0:
            return total


def _bessel_miller( k: int, x: float ) -> float:
    top = max( k, x )
    start = int( top + 10 * top ** ( 1 / 3 ) + 30 )
    start += start % 2
    upper, current = 0.0, 1e-30
    even_sum, answer = 0.0, 0.0
    for order in range( start, 0, -1 ):
        if order == k:
            answer = current
        if order % 2 == 0:
            even_sum += current
        upper, current = current, 2 * order / x * current - upper
        if abs( current ) > _RESCALE:
            upper /= _RESCALE
            current /= _RESCALE
            even_sum /= _RESCALE
            answer /= _RESCALE
    if k == 0:
        answer = current
    return answer / ( current + 2 * even_sum )


def bessel_j( k: int, x: float ) -> float:
    """
    J_k(x) for integers 0 <= k <= 200 and real 0 <= x <= 1e5.

    Ascending series where its terms do not cancel badly (x <= 12 or x^2 <= 4(k+1)),
    Miller's backward recurrence normalized by J_0 + 2 sum J_2j = 1 otherwise.
    """
    if not isinstance( k, ( int, np.integer ) ) or not 0 <= k <= 200:
        raise DomainError( f"Bessel order must be an integer in [0, 200], got { k }" )
    if not 0 <= x <= 1e5:
        raise DomainError( f"Bessel argument must lie in [0, 1e5], got { x }" )
    if x == 0:
        return 1.0 if k == 0 else 0.0
    if _use_series( k, x ):
        return _bessel_series( k, x )
    return _bessel_miller( k, x )


def bessel_j_array( k: int, xs: np.ndarray ) -> np.ndarray:
    """
    J_k on an array of arguments; the series region is evaluated vectorized.
    """
    xs = np.asarray( xs, dtype=float )
    out = np.empty_like( xs )
    zero = xs == 0
    out[zero] = 1.0 if k == 0 else 0.0
    series = ~zero & ( ( xs <= _SERIES_LIMIT ) | ( xs * xs <= 4 * ( k + 1 ) ) )
    if np.any( series ):
        x = xs[series]
        with np.errstate( under="ignore" ):
            term = np.exp( k * np.log( x / 2 ) - math.lgamma( k + 1 ) )
        total = term.copy()
        y = -( x / 2 ) ** 2
        j = 0
        while True:
            j += 1
            term = term * y / ( j * ( j + k ) )
            total += term
            if np.all( np.abs( term ) <= 1e-17 * np.abs( total ) ):
                break
        out[series] = total
    for i in np.flatnonzero( ~series & ~zero ):
        out[i] = _bessel_miller( k, float( xs[i] ) )
    return out


def chebyshev_u( j: int, x ):
    """
    U_j(x) by U_0 = 1, U_1 = 2x, U_{j+1} = 2x U_j - U_{j-1}. Works for floats and mpf.
    """
    if not 0 <= j <= 64:
        raise DomainError( f"Chebyshev degree must lie in [0, 64], got { j }" )
    previous, current = 0 * x, 1 + 0 * x
    for _ in range( j ):
        previous, current = current, 2 * x * current - previous
    return current


def c_kappa( kappa: int ) -> float:
    """
    Gamma(kappa - 1) / (4 pi)^(kappa - 1), evaluated in log space.
    """
    if kappa < 2:
        raise DomainError( f"weight must be at least 2, got { kappa }" )
    return float( np.exp( gammaln( kappa - 1 ) - ( kappa - 1 ) * math.log( 4 * math.pi ) ) )


def divisor_tail_sum_bound( K: int, s: float ) -> float:
    """
    Certified upper bound for sum_{k > K} d(k) k^-s, K >= 1, s > 1.
    """
    if K < 1 or s <= 1:
        raise DomainError( f"divisor tail needs K >= 1 and s > 1, got K={ K }, s={ s }" )
    return s * K ** ( 1 - s ) * ( ( 1 + math.log( K ) ) / ( s - 1 ) + 1 / ( s - 1 ) ** 2 )


def _log_power_factor( kappa: int, m: int, n: int ) -> float:
    """
    log of (2 pi sqrt(mn))^(kappa-1) / (kappa-1)!.
    """
    nu = kappa - 1
    return nu * math.log( 2 * math.pi * math.sqrt( m * n ) ) - float( gammaln( kappa ) )


def petersson_tail_bound( inp: TailBoundInput, heuristic: bool = False ) -> float:
    """
    Upper bound for |sum_{c > C, N | c} S_chi(m, n, c) / c J_{kappa-1}(4 pi sqrt(mn) / c)|.

    Writing c = N k, the Weil bound with (m, n, c) <= (m, n) and d(Nk) <= d(N) d(k) leaves
    a divisor tail sum over k > C // N. With `heuristic=True` the divisor function is
    replaced by d(c) <= c^(1.066 / log log c); that variant is not certified.
    """
    kappa, N, m, n, C = inp.kappa, inp.N, inp.m, inp.n, inp.C
    if kappa == 2 and C < 8 * math.pi * math.sqrt( m * n ):
        raise PreconditionError(
            f"weight 2 needs C >= 8 pi sqrt(mn) = { 8 * math.pi * math.sqrt( m * n ):.1f}, got C={ C }" )
    s = kappa - 0.5
    K = C // N
    rho = ( inp.cond * inp.cond_star ) ** 0.25
    front = math.sqrt( math.gcd( m, n ) ) * rho * math.exp( _log_power_factor( kappa, m, n ) )
    if heuristic:
        theta = 1.066 / math.log( math.log( max( K * N, 16 ) ) )
        if s - theta - 1 > 0:
            return front * N ** ( theta - s ) * K ** ( 1 + theta - s ) / ( s - theta - 1 )
        logger.debug( "[Analytic] heuristic divisor bound not summable here, using the certified one" )
    return front * d( N ) * N ** ( -s ) * divisor_tail_sum_bound( K, s )


def delta_majorant( kappa: int, N: int, cond: int, cond_star: int, m: int, n: int ) -> float:
    """
    Certified bound for |Delta_{kappa,N,chi}(m, n)| valid for every truncation.

    Uses |J| <= 1 below c = 2 pi sqrt(mn) / (nu!)^(1/nu) and the power bound above it.
    """
    nu = kappa - 1
    s = kappa - 0.5
    r = math.exp( float( gammaln( kappa ) ) / nu )
    y = 2 * math.pi * math.sqrt( m * n ) / r / N
    w = 2 * math.pi * math.sqrt( math.gcd( m, n ) ) * ( cond * cond_star ) ** 0.25
    dn = d( N )
    head = dn / math.sqrt( N ) * ( 2 * math.sqrt( y ) * math.log( y ) + 1 ) if y >= 1 else 0.0
    K = int( y )
    power = math.exp( _log_power_factor( kappa, m, n ) ) * dn * N ** ( -s )
    if K >= 1:
        tail = power * divisor_tail_sum_bound( K, s )
    else:
        tail = power * ( 1 + divisor_tail_sum_bound( 1, s ) )
    return ( 1.0 if m == n else 0.0 ) + w * ( head + tail )


def _euler_product( primes: Iterable[ int ], sigma: float ) -> float:
    return math.prod( 1 / ( 1 - p ** -sigma ) for p in primes )


def ell_tail_bound(
    kappa: int, N: int, cond: int, cond_star: int, m: int, n: int, primes: list[ int ], l_max: int
) -> float:
    """
    Bound for sum over ell > l_max built from `primes` of |Delta_{kappa,N,chi}(m, n ell^2)| / ell.

    Terms up to Z are bounded one by one with `delta_majorant`; beyond Z the majorant is
    bounded by a + b sqrt(ell) (1 + log ell) and the sum by Rankin's trick.
    """
    if not primes:
        return 0.0
    nu = kappa - 1
    s = kappa - 0.5
    r = math.exp( float( gammaln( kappa ) ) / nu )
    y1 = 2 * math.pi * math.sqrt( m * n ) / r / N
    Z = max( l_max * l_max, math.ceil( 2 * s / y1 ), l_max + 1 )
    total = 0.0
    for ell in smooth_numbers( primes, Z ):
        if ell > l_max:
            total += delta_majorant( kappa, N, cond, cond_star, m, n * ell * ell ) / ell
    scale = 2 * math.pi * math.sqrt( m ) * ( cond * cond_star ) ** 0.25 * d( N ) / math.sqrt( N )
    a = 1 + scale
    log_plus = max( 0.0, math.log( y1 ) )
    b = scale * math.sqrt( y1 ) * ( 1 + log_plus ) * (
        2 + s * math.exp( 0.5 ) * ( 1 / ( s - 1 ) + 1 / ( s - 1 ) ** 2 ) )
    total += a * Z ** -0.5 * _euler_product( primes, 0.5 )
    total += b * ( 1 + 8 / math.e ) * Z ** -0.125 * _euler_product( primes, 0.25 )
    return total
