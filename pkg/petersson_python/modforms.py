"""
Exact q-expansion oracle, Hecke operators and the adjoint-square L-series.

The oracle ships the one-dimensional level-1 cusp spaces of weight 12, 16, 18, 20, 22
and 26 (Delta times an Eisenstein series) and the weight-2 newform of level 11 (an eta
product). Everything here with trivial nebentypus is exact; identities involving a
nontrivial nebentypus run on `EigenSystem`, synthetic local data obeying the Hecke
recursion.
"""
import cmath
import logging
import math
from fractions import Fraction
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.special import gammaln, zeta
from sympy import bernoulli

from .arith import factor, mu, primes_up_to, psi
from .characters import DirichletCharacter
from .errors import DomainError, PrecisionError, PreconditionError, UnsupportedSpaceError
from .petersson import a_ogg, l_local_factor
from .types.records.qexpansion import Coefficient, NormEstimate, QExpansion
from .utils.cache import OracleCacheManager

logger = logging.getLogger(__name__)

__all__ = [
    "eta_product", "eisenstein", "multiply", "oracle_newform", "ORACLE_FORMS", "hecke_apply",
    "normalized_eigenvalue", "coefficient", "check_hecke_relations", "check_deligne", "rho_coeffs",
    "omega_x", "lambda_from_rho", "check_rho_inversion", "l_adjoint", "petersson_norm",
    "EigenSystem", "XiTable", "xi_table", "oldform_coeff", "xi_sum", "v_palpha", "r_f", "r_f_identities",
]

MAX_PRECISION = 20000
EISENSTEIN_WEIGHTS = ( 4, 6, 8, 10, 14 )


def _check_precision( P: int ) -> None:
    if not 1 <= P <= MAX_PRECISION:
        raise PrecisionError( f"precision must lie in [1, { MAX_PRECISION }], got { P }" )


def _pentagonal( P: int ) -> list[ tuple[ int, int ] ]:
    """
    Nonzero coefficients (k, e_k), k >= 1, of prod_n (1 - q^n).
    """
    out = []
    j = 1
    while True:
        first = j * ( 3 * j - 1 ) // 2
        if first > P:
            break
        sign = -1 if j % 2 else 1
        out.append( ( first, sign ) )
        second = j * ( 3 * j + 1 ) // 2
        if second <= P:
            out.append( ( second, sign ) )
        j += 1
    return sorted( out )


def _euler_power( r: int, P: int ) -> list[ int ]:
    """
    prod_n (1 - q^n)^r to O(q^(P+1)) by Miller's power recurrence on the sparse pentagonal series.
    """
    terms = _pentagonal( P )
    c = [ 0 ] * ( P + 1 )
    c[0] = 1
    for n in range( 1, P + 1 ):
        total = 0
        for k, e in terms:
            if k > n:
                break
            total += ( ( r + 1 ) * k - n ) * e * c[n - k]
        c[n] = total // n
    return c


def multiply( a: Sequence[ Coefficient ], b: Sequence[ Coefficient ], P: int ) -> list[ Coefficient ]:
    """
    Schoolbook product of two coefficient lists truncated at q^P.
    """
    out = [ 0 ] * ( P + 1 )
    support = [ ( j, bj ) for j, bj in enumerate( b[:P + 1] ) if bj ]
    for i, ai in enumerate( a[:P + 1] ):
        if not ai:
            continue
        for j, bj in support:
            if i + j > P:
                break
            out[i + j] += ai * bj
    return out


def eta_product(
    factors: Sequence[ tuple[ int, int ] ], P: int, level: Optional[ int ] = None, name: Optional[ str ] = None
) -> QExpansion:
    """
    prod_{(d, r)} eta(d z)^r = q^(sum d r / 24) prod (1 - q^(dn))^r to precision P.
    """
    _check_precision( P )
    shift, rem = divmod( sum( dd * r for dd, r in factors ), 24 )
    if rem or shift < 0:
        raise DomainError( f"eta product { list( factors ) } is not a power series in q" )
    weight2 = sum( r for _, r in factors )
    if weight2 % 2:
        raise DomainError( f"eta product { list( factors ) } has half-integral weight" )
    series = [ 1 ] + [ 0 ] * P
    for dd, r in factors:
        base = _euler_power( r, P // dd )
        spread = [ 0 ] * ( P + 1 )
        for k, value in enumerate( base ):
            spread[k * dd] = value
        series = multiply( series, spread, P )
    coeffs = [ 0 ] * shift + series[:P + 1 - shift]
    level = level if level is not None else math.lcm( *[ dd for dd, _ in factors ] )
    return QExpansion( level, weight2 // 2, coeffs, name )


def _eisenstein_constant( k: int ) -> Fraction:
    b = bernoulli( k )
    return Fraction( -2 * k ) / Fraction( int( b.p ), int( b.q ) )


def eisenstein( k: int, P: int ) -> QExpansion:
    """
    E_k = 1 - (2k / B_k) sum sigma_{k-1}(n) q^n for k in 4, 6, 8, 10, 14.
    """
    if k not in EISENSTEIN_WEIGHTS:
        raise UnsupportedSpaceError( f"Eisenstein series of weight { k } is not offered" )
    _check_precision( P )
    constant = _eisenstein_constant( k )
    sigmas = [ 0 ] * ( P + 1 )
    for dd in range( 1, P + 1 ):
        power = dd ** ( k - 1 )
        for n in range( dd, P + 1, dd ):
            sigmas[n] += power
    scale = int( constant ) if constant.denominator == 1 else constant
    return QExpansion( 1, k, [ 1 ] + [ scale * s for s in sigmas[1:] ], f"E{ k }" )


def _delta( P: int ) -> QExpansion:
    return eta_product( [ ( 1, 24 ) ], P, level=1, name="delta" )


def _delta_times( k: int ) -> Callable[ [ int ], QExpansion ]:
    def build( P: int ) -> QExpansion:
        return QExpansion( 1, 12 + k, multiply( oracle_newform( "delta", P ).coeffs, eisenstein( k, P ).coeffs, P ),
                           f"delta{ 12 + k }" )
    return build


def _level11( P: int ) -> QExpansion:
    return eta_product( [ ( 1, 2 ), ( 11, 2 ) ], P, level=11, name="level11" )


ORACLE_FORMS: dict[ str, Callable[ [ int ], QExpansion ] ] = {
    "delta": _delta,
    "delta16": _delta_times( 4 ),
    "delta18": _delta_times( 6 ),
    "delta20": _delta_times( 8 ),
    "delta22": _delta_times( 10 ),
    "delta26": _delta_times( 14 ),
    "level11": _level11,
}

_oracles = OracleCacheManager()


def oracle_newform( name: str, P: int = 200 ) -> QExpansion:
    """
    One of the shipped eigenforms to precision P, cached across calls.
    """
    if name not in ORACLE_FORMS:
        raise UnsupportedSpaceError( f"no oracle form named { name!r}; known: { ', '.join( ORACLE_FORMS ) }" )
    _check_precision( P )
    return _oracles.fetch_form( name, P, ORACLE_FORMS[name] )


def _trivial_chi( level: int, n: int ) -> int:
    return 1 if math.gcd( n, level ) == 1 else 0


def hecke_apply( m: int, f: QExpansion ) -> QExpansion:
    """
    T_m f with a(n) = sum_{d | (m, n)} chi(d) d^(k-1) a_f(mn / d^2), to precision P // m.
    """
    if m < 1:
        raise DomainError( f"Hecke index must be positive, got { m }" )
    P = f.precision // m
    if P < 1:
        raise PrecisionError( f"T_{ m } needs precision at least { m }, have { f.precision }" )
    k = f.weight
    divs = [ dd for dd in range( 1, m + 1 ) if m % dd == 0 and _trivial_chi( f.level, dd ) ]
    coeffs = []
    for n in range( P + 1 ):
        coeffs.append( sum( dd ** ( k - 1 ) * f[m * n // ( dd * dd )] for dd in divs if n % dd == 0 ) )
    return QExpansion( f.level, k, coeffs, f.name )


def normalized_eigenvalue( f: QExpansion, m: int ) -> float:
    """
    lambda_f(m) = a_f(m) / m^((k-1)/2).
    """
    if m > f.precision:
        raise PrecisionError( f"a({ m }) is beyond the precision { f.precision }" )
    return float( f[m] ) / m ** ( ( f.weight - 1 ) / 2 )


def coefficient( f: QExpansion, n: int ) -> Coefficient:
    """
    a_f(n) from the prime coefficients by Hecke multiplicativity, so n may exceed the
    precision as long as its prime factors do not.
    """
    k = f.weight
    result = 1
    for p, e in factor( n ):
        if p > f.precision:
            raise PrecisionError( f"a({ p }) is beyond the precision { f.precision }" )
        ap = f[p]
        chi_p = _trivial_chi( f.level, p ) * p ** ( k - 1 )
        previous, current = 1, ap
        for _ in range( e - 1 ):
            previous, current = current, ap * current - chi_p * previous
        result *= current
    return result


def check_hecke_relations( f: QExpansion, limit: Optional[ int ] = None ) -> bool:
    """
    a(mn) = a(m) a(n) for coprime m, n and the prime-power recursion, exactly, up to `limit`.
    """
    limit = min( limit or f.precision, f.precision )
    k = f.weight
    for n in range( 2, limit + 1 ):
        fn = factor( n )
        if len( fn ) > 1:
            p, e = fn.factors[0]
            q = p ** e
            if f[n] != f[q] * f[n // q]:
                return False
        else:
            p, e = fn.factors[0]
            below = f[n // ( p * p )] if e >= 2 else 0
            if f[n] != f[p] * f[n // p] - _trivial_chi( f.level, p ) * p ** ( k - 1 ) * below:
                return False
    return True


def check_deligne( f: QExpansion ) -> bool:
    """
    a(p)^2 <= 4 p^(k-1) for every prime p up to the precision.
    """
    return all( f[p] ** 2 <= 4 * p ** ( f.weight - 1 ) for p in primes_up_to( f.precision ) )


def _lambda_square( f: QExpansion, n: int ) -> Fraction:
    return Fraction( coefficient( f, n * n ), n ** ( f.weight - 1 ) )


def rho_coeffs( f: QExpansion, X: int ) -> list[ Fraction ]:
    """
    rho_f(1), ..., rho_f(X) with rho_f(n) = sum_{n = m^2 l} lambda_f(l^2) for (n, N) = 1, else 0.
    """
    if X < 1:
        return []
    lam2 = [ Fraction( 0 ) ] + [ _lambda_square( f, l ) if math.gcd( l, f.level ) == 1 else Fraction( 0 )
                                 for l in range( 1, X + 1 ) ]
    rho = [ Fraction( 0 ) ] * ( X + 1 )
    for m in range( 1, math.isqrt( X ) + 1 ):
        if math.gcd( m, f.level ) != 1:
            continue
        for l in range( 1, X // ( m * m ) + 1 ):
            rho[m * m * l] += lam2[l]
    return rho[1:]


def omega_x( f: QExpansion, x: int ) -> Fraction:
    """
    The partial sum sum_{n <= x} rho_f(n) / n of L^(N)(1, Ad^2 f).
    """
    return sum( ( r / n for n, r in enumerate( rho_coeffs( f, x ), start=1 ) ), start=Fraction( 0 ) )


def lambda_from_rho( rho: Sequence[ Fraction ], n: int ) -> Fraction:
    """
    sum_{m^2 l = n} mu(m) rho(l), which recovers conj chi(n) lambda_f(n^2). `rho[i]` is rho(i + 1).
    """
    total = Fraction( 0 )
    for m in range( 1, math.isqrt( n ) + 1 ):
        if n % ( m * m ) == 0:
            total += mu( m ) * rho[n // ( m * m ) - 1]
    return total


def check_rho_inversion( f: QExpansion, limit: int ) -> bool:
    """
    lambda_from_rho reproduces lambda_f(n^2) exactly for n <= limit coprime to the level.
    """
    rho = rho_coeffs( f, limit )
    for n in range( 1, limit + 1 ):
        if math.gcd( n, f.level ) == 1 and lambda_from_rho( rho, n ) != _lambda_square( f, n ):
            return False
    return True


def l_adjoint( f: QExpansion, X: int, method: str = "euler" ) -> float:
    """
    L^(N)(1, Ad^2 f), the adjoint-square value without its bad Euler factors.

    `method="euler"` multiplies the local factors
    (1 - p^-2)^-1 (1 + 1/p) / ((1 + 1/p)^2 - lambda(p)^2 / p) over p <= X, p not dividing N;
    `method="dirichlet"` returns the partial sum omega_f(X).
    """
    if method == "dirichlet":
        return float( omega_x( f, X ) )
    if method != "euler":
        raise DomainError( f"unknown adjoint L method { method!r}" )
    if X > f.precision:
        raise PrecisionError( f"Euler product to { X } needs precision { X }, have { f.precision }" )
    primes = np.array( [ p for p in primes_up_to( X ) if f.level % p ], dtype=float )
    lam = np.array( [ normalized_eigenvalue( f, int( p ) ) for p in primes ] )
    inv = 1 / primes
    local = ( 1 + inv ) / ( ( 1 - inv * inv ) * ( ( 1 + inv ) ** 2 - lam * lam * inv ) )
    return float( np.exp( np.log( local ).sum() ) )


def _norm_from_l( f: QExpansion, l_value: float ) -> float:
    zeta_n = float( zeta( 2 ) ) * math.prod( 1 - p ** -2 for p in factor( f.level ).primes() )
    log_norm = ( math.log( math.pi / 3 * psi( f.level ) ) + float( gammaln( f.weight ) ) + math.log( l_value )
                 - math.log( zeta_n ) - f.weight * math.log( 4 * math.pi ) )
    return math.exp( log_norm )


def petersson_norm(
    f: QExpansion, X: Optional[ int ] = None, method: str = "euler", tolerance: Optional[ float ] = None
) -> NormEstimate:
    """
    <f, f>_N = (pi/3) psi(N) Gamma(k) L(1, Ad^2 f) / (zeta^(N)(2) (4 pi)^k), with L truncated
    at X. The error bar is the relative change between truncations X/2 and X.
    """
    X = X if X is not None else f.precision
    if X < 4:
        raise PrecisionError( f"norm truncation { X } is too small" )
    bad = float( l_local_factor( f.level ) )
    full = bad * l_adjoint( f, X, method )
    half = bad * l_adjoint( f, X // 2, method )
    value = _norm_from_l( f, full )
    error_bar = abs( full - half ) / full
    if tolerance is not None and error_bar > tolerance:
        raise PrecisionError( f"norm error bar { error_bar:.3g} exceeds { tolerance:.3g} at X={ X }" )
    logger.debug( f"[Modforms] <{ f.name }, { f.name }> = { value:.6e} +/- { 100 * error_bar:.2f}% (X={ X })" )
    return NormEstimate( value, error_bar, full, X, method )


class EigenSystem:
    """
    Hecke eigenvalues given by their values at primes; lambda(n) follows from the
    recursion lambda(p^(r+1)) = lambda(p) lambda(p^r) - chi(p) lambda(p^(r-1)).
    """
    level : int
    weight : int
    lam_p : dict[ int, complex ]
    """
    Normalized eigenvalues lambda(p).
    """
    chi_p : dict[ int, complex ]
    """
    Nebentypus values chi(p), zero for p | level.
    """
    character : Optional[ DirichletCharacter ]
    """
    The nebentypus, None for the trivial character.
    """

    def __init__(
        self,
        level: int,
        weight: int,
        lam_p: dict[ int, complex ],
        chi_p: dict[ int, complex ],
        character: Optional[ DirichletCharacter ] = None,
    ) -> None:
        self.level = level
        self.weight = weight
        self.lam_p = dict( lam_p )
        self.chi_p = dict( chi_p )
        self.character = character

    @classmethod
    def from_expansion( cls, f: QExpansion ) -> "EigenSystem":
        primes = primes_up_to( f.precision )
        lam = { p: complex( normalized_eigenvalue( f, p ) ) for p in primes }
        chi = { p: complex( _trivial_chi( f.level, p ) ) for p in primes }
        return cls( f.level, f.weight, lam, chi )

    @classmethod
    def synthetic( cls, chi: DirichletCharacter, weight: int, primes: Sequence[ int ], seed: int = 7 ) -> "EigenSystem":
        """
        Local data at level chi.modulus: lambda(p) = s t with s^2 = chi(p) and t uniform in
        [-2, 2] for p not dividing the level, so |lambda(p)|^2 = conj chi(p) lambda(p)^2;
        a random phase of modulus a_ogg(p, level, chi)^(1/2) at the primes of the level.
        """
        rng = np.random.default_rng( seed )
        lam, chi_p = {}, {}
        for p in primes:
            if chi.modulus % p == 0:
                size = math.sqrt( float( a_ogg( p, chi.modulus, chi ) ) )
                lam[p] = cmath.exp( 2j * math.pi * rng.uniform() ) * size
                chi_p[p] = 0j
            else:
                chi_p[p] = chi.value( p )
                lam[p] = cmath.sqrt( chi_p[p] ) * rng.uniform( -2, 2 )
        return cls( chi.modulus, weight, lam, chi_p, chi )

    def eps0( self, p: int ) -> int:
        return 0 if self.level % p == 0 else 1

    def lam( self, n: int ) -> complex:
        result = 1 + 0j
        for p, e in factor( n ):
            if p not in self.lam_p:
                raise PrecisionError( f"no eigenvalue stored at p={ p }" )
            lp, cp = self.lam_p[p], self.chi_p[p]
            previous, current = 1 + 0j, lp
            for _ in range( e - 1 ):
                previous, current = current, lp * current - cp * previous
            result *= current
        return result

    def chi( self, n: int ) -> complex:
        return math.prod( ( self.chi_p[p] ** e for p, e in factor( n ) ), start=1 + 0j )

    def __repr__( self ) -> str:
        return f"EigenSystem(level={ self.level }, weight={ self.weight }, primes={ sorted( self.lam_p ) })"


class XiTable:
    """
    The local coefficients xi_{p^nu}(p^j) of the orthogonal oldform basis at one prime.
    """
    p : int
    lam : complex
    eps : complex
    eps0 : int

    def __init__( self, p: int, lam: complex, eps: complex, eps0: int ) -> None:
        self.p = p
        self.lam = lam
        self.eps = eps
        self.eps0 = eps0
        self.u = abs( lam ) ** 2 / ( p * ( 1 + eps0 / p ) ** 2 )
        if self.u >= 1:
            raise DomainError( f"|lambda(p)|^2 = { abs( lam ) ** 2:.4g} is too large for an oldform basis at p={ p }" )

    def xi( self, nu: int, j: int ) -> complex:
        p = self.p
        if nu == 0:
            return 1 + 0j if j == 0 else 0j
        if nu == 1:
            top = ( 1 - self.u ) ** -0.5
            if j == 1:
                return complex( top )
            if j == 0:
                return -self.lam.conjugate() / ( math.sqrt( p ) * ( 1 + self.eps0 / p ) ) * top
            return 0j
        top = ( 1 - self.u ) ** -0.5 * ( 1 - self.eps0 ** 2 / p ** 2 ) ** -0.5
        if j == nu:
            return complex( top )
        if j == nu - 1:
            return -self.lam.conjugate() / math.sqrt( p ) * top
        if j == nu - 2:
            return self.eps.conjugate() / p * top
        return 0j

    def to_dict( self ) -> dict:
        return {
            "p": self.p,
            "lambda": [ self.lam.real, self.lam.imag ],
            "eps": [ self.eps.real, self.eps.imag ],
            "eps0": self.eps0,
            "xi": { f"{ nu },{ j }": [ self.xi( nu, j ).real, self.xi( nu, j ).imag ]
                    for nu in range( 4 ) for j in range( nu + 1 ) },
        }


def xi_table( system: EigenSystem, p: int ) -> XiTable:
    return XiTable( p, system.lam_p[p], system.chi_p[p], system.eps0( p ) )


def _xi_joint( system: EigenSystem, g: int, dd: int ) -> complex:
    fg = factor( g )
    result = 1 + 0j
    for p, e in fg:
        result *= xi_table( system, p ).xi( e, factor( dd ).exponent( p ) )
    return result


def _basis_sum( system: EigenSystem, g: int, n: int ) -> complex:
    return sum( _xi_joint( system, g, dd ) * math.sqrt( dd ) * system.lam( n // dd )
                for dd in range( 1, math.gcd( g, n ) + 1 ) if g % dd == 0 and n % dd == 0 )


def oldform_coeff( system: EigenSystem, g: int, n: int ) -> complex:
    """
    a_{f^(g)}(n) = sum_{d | (g, n)} xi_g(d) d^(k/2) a_f(n/d).
    """
    return n ** ( ( system.weight - 1 ) / 2 ) * _basis_sum( system, g, n )


def xi_sum( system: EigenSystem, g: int, m: int, n: int ) -> complex:
    """
    Xi_g(m, n) = conj(sum_{d | (g,m)} xi_g(d) sqrt(d) lambda(m/d)) (sum_{d | (g,n)} xi_g(d) sqrt(d) lambda(n/d)).
    """
    return _basis_sum( system, g, m ).conjugate() * _basis_sum( system, g, n )


def v_palpha( system: EigenSystem, p: int, alpha: int, m: int, n: int, mode: str = "closed" ) -> complex:
    """
    V_{p^alpha}(m, n) = sum_{d | p^alpha} Xi_d(m, n), either from the definition or from
    the closed case formulas, which need p not to divide both m and n.
    """
    if alpha < 1:
        raise DomainError( f"alpha must be at least 1, got { alpha }" )
    if mode == "definition":
        return sum( xi_sum( system, p ** beta, m, n ) for beta in range( alpha + 1 ) )
    if mode != "closed":
        raise DomainError( f"unknown V mode { mode!r}" )
    if m % p == 0 and n % p == 0:
        raise PreconditionError( f"closed V needs p={ p } to divide at most one of m={ m }, n={ n }" )
    t = xi_table( system, p )
    lam = system.lam
    root = math.sqrt( p )
    one = [ t.xi( 1, 0 ) ] + ( [ t.xi( 2, 0 ) ] if alpha >= 2 else [] )
    mid = [ t.xi( 1, 1 ) ] + ( [ t.xi( 2, 1 ) ] if alpha >= 2 else [] )
    value = lam( m ).conjugate() * lam( n ) * ( 1 + sum( abs( x ) ** 2 for x in one ) )
    if m % p == 0:
        value += lam( m // p ).conjugate() * lam( n ) * root * sum( b.conjugate() * a for a, b in zip( one, mid ) )
    if n % p == 0:
        value += lam( m ).conjugate() * lam( n // p ) * root * sum( a.conjugate() * b for a, b in zip( one, mid ) )
    if alpha >= 2:
        if m % ( p * p ) == 0:
            value += lam( m // ( p * p ) ).conjugate() * lam( n ) * p * t.xi( 2, 2 ).conjugate() * t.xi( 2, 0 )
        if n % ( p * p ) == 0:
            value += lam( m ).conjugate() * lam( n // ( p * p ) ) * p * t.xi( 2, 0 ).conjugate() * t.xi( 2, 2 )
    return value


def r_f( system: EigenSystem, p: int ) -> float:
    """
    r_f(p) = 1 - |lambda(p)|^2 / (p (1 + eps0(p)/p)^2).
    """
    return 1 - xi_table( system, p ).u


def r_f_identities( system: EigenSystem, p: int, terms: int = 80, tolerance: float = 1e-10 ) -> bool:
    """
    1 + |xi_p(1)|^2 = r_f(p)^-1, 1 + |xi_p(1)|^2 + |xi_{p^2}(1)|^2 = r_f(p)^-1 (1 - eps0/p^2)^-1,
    for p not dividing the level
    sum_a conj chi(p^a) lambda(p^(2a)) / p^a = (1 + 1/p)^-1 r_f(p)^-1,
    and for p dividing it r_f(p) = 1 - a_ogg(p, level, chi) / p.
    """
    t = xi_table( system, p )
    inverse = 1 / r_f( system, p )
    checks = [
        abs( 1 + abs( t.xi( 1, 0 ) ) ** 2 - inverse ) <= tolerance * inverse,
        abs( 1 + abs( t.xi( 1, 0 ) ) ** 2 + abs( t.xi( 2, 0 ) ) ** 2 - inverse / ( 1 - t.eps0 / p ** 2 ) )
        <= tolerance * inverse,
    ]
    if t.eps0:
        series = sum( system.chi( p ** a ).conjugate() * system.lam( p ** ( 2 * a ) ) / p ** a for a in range( terms ) )
        tail = sum( ( 2 * a + 1 ) / p ** a for a in range( terms, terms + 200 ) )
        checks.append( abs( series - inverse / ( 1 + 1 / p ) ) <= tolerance * inverse + tail )
    else:
        expected = 1 - float( a_ogg( p, system.level, system.character ) ) / p
        checks.append( abs( inverse * expected - 1 ) <= tolerance )
    return all( checks )
