"""
Verification suites and the runner that executes them.

Checks are registered per suite and run through an asyncio event loop; with
`jobs > 1` they are dispatched to a process pool, otherwise they run inline in
registry order. Checks reach library functions through their modules
(`petersson.r_factor`, not a local import), so a patched function is what they test.
"""
import asyncio
import logging
import math
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Callable, Optional

import numpy as np

from . import analytic, arith, census, characters, expsums, modforms, petersson, traces
from .emitter import ReportEmitter
from .errors import PeterssonError, SuiteError
from .types.records.checks import CheckResult, VerifyReport
from .types.runConfig import RunConfig

logger = logging.getLogger(__name__)

__all__ = [ "SUITES", "REGISTRY", "SuiteRegistry", "VerifyRunner", "apply_config", "verify" ]

SUITES = ( "characters", "expsums", "petersson", "modforms", "traces", "census" )

Outcome = tuple[ bool, int, dict ]
CheckFunction = Callable[ [ RunConfig ], Outcome ]

# long Weierstrass coefficients of the level-11 curve 11a
CURVE_11A = ( 0, -1, 1, -10, -20 )


class SuiteRegistry:
    def __init__( self ) -> None:
        self._checks: dict[ str, list[ tuple[ str, str, CheckFunction ] ] ] = { suite: [] for suite in SUITES }

    def register( self, suite: str, identity: str ) -> Callable[ [ CheckFunction ], CheckFunction ]:
        if suite not in self._checks:
            raise SuiteError( f"unknown suite { suite!r}" )

        def decorator( func: CheckFunction ) -> CheckFunction:
            self._checks[suite].append( ( func.__name__, identity, func ) )
            return func

        return decorator

    def get( self, suite: str ) -> list[ tuple[ str, str, CheckFunction ] ]:
        return list( self._checks.get( suite, [] ) )

    def resolve( self, suite: str ) -> list[ tuple[ str, str, str, CheckFunction ] ]:
        """
        (suite, name, identity, function) for `suite`, or for every suite when `suite` is "all".
        """
        if suite == "all":
            names = list( SUITES )
        elif suite in self._checks:
            names = [ suite ]
        else:
            raise SuiteError( f"unknown suite { suite!r}; choose from all, { ', '.join( SUITES ) }" )
        return [ ( s, name, identity, func ) for s in names for name, identity, func in self._checks[s] ]


REGISTRY = SuiteRegistry()
check = REGISTRY.register


def apply_config( config: RunConfig ) -> None:
    """
    Pushes the module-level caps of `config` into the library.
    """
    characters.set_max_modulus( config.max_modulus )
    census.set_max_q( config.census_max_q )


def _execute( suite: str, name: str, identity: str, func: CheckFunction, config: RunConfig ) -> CheckResult:
    apply_config( config )
    started = time.perf_counter()
    try:
        passed, cases, detail = func( config )
    except PeterssonError as e:
        passed, cases, detail = False, 0, { "error": f"{ type( e ).__name__ }: { e }" }
    except Exception as e:
        logger.exception( f"[Verify] { suite }/{ name } raised" )
        passed, cases, detail = False, 0, { "error": f"{ type( e ).__name__ }: { e }" }
    logger.debug( f"[Verify] { suite }/{ name } took { time.perf_counter() - started:.2f}s" )
    return CheckResult( suite, name, identity, passed, cases, detail )


class VerifyRunner( ReportEmitter ):
    """
    Runs suites and emits `suite_start`, `check_done` and `suite_done` to its listeners.
    """

    def __init__( self, config: RunConfig, registry: SuiteRegistry = REGISTRY ) -> None:
        super().__init__()
        self.config = config
        self.registry = registry

    async def _run_inline( self, entries: list ) -> list[ CheckResult ]:
        results = []
        for suite, name, identity, func in entries:
            result = _execute( suite, name, identity, func, self.config )
            results.append( result )
            await self.emit( "check_done", result )
        return results

    async def _run_pool( self, entries: list ) -> list[ CheckResult ]:
        loop = asyncio.get_running_loop()
        with ProcessPoolExecutor( max_workers=self.config.jobs ) as pool:
            futures = [
                loop.run_in_executor( pool, _execute, suite, name, identity, func, self.config )
                for suite, name, identity, func in entries
            ]
            results = list( await asyncio.gather( *futures ) )
        for result in results:
            await self.emit( "check_done", result )
        return results

    async def run_async( self, suite: str = "all" ) -> VerifyReport:
        entries = self.registry.resolve( suite )
        await self.emit( "suite_start", suite, len( entries ) )
        logger.info( f"[Verify] running { len( entries ) } checks of { suite } ({ self.config.profile }, jobs={ self.config.jobs })" )
        if self.config.jobs > 1:
            results = await self._run_pool( entries )
        else:
            results = await self._run_inline( entries )
        report = VerifyReport( suite, self.config.profile, self.config.seed, results )
        await self.emit( "suite_done", suite, report.passed )
        for failure in report.failures():
            logger.warning( f"[Verify] { failure.suite }/{ failure.name } failed: { failure.detail }" )
        return report

    def run( self, suite: str = "all" ) -> VerifyReport:
        return asyncio.run( self.run_async( suite ) )


def verify( suite: str = "all", config: Optional[ RunConfig ] = None ) -> VerifyReport:
    return VerifyRunner( config if config is not None else RunConfig() ).run( suite )


def _pick( config: RunConfig, quick, full ):
    return quick if config.quick else full


# characters

@check( "characters", "orthogonality: sum over chi mod N of chi(a) = phi(N) [a = 1 mod N]" )
def orthogonality( config: RunConfig ) -> Outcome:
    worst = 0.0
    cases = 0
    for N in range( 1, _pick( config, 40, 120 ) + 1 ):
        group = characters.character_group( N )
        total = sum( chi.values_table() for chi in group )
        expected = np.zeros( N )
        expected[1 % N] = arith.phi( N )
        worst = max( worst, float( np.max( np.abs( total - expected ) ) ) )
        cases += N
    return worst <= config.tolerance.identity * 1e3, cases, { "max_error": worst }


@check( "characters", "every character is induced from its conductor" )
def induction( config: RunConfig ) -> Outcome:
    cases = 0
    bad = []
    for N in range( 1, _pick( config, 40, 120 ) + 1 ):
        for chi in characters.character_group( N ):
            cases += 1
            primitive = chi.restrict( chi.conductor() )
            if not primitive.is_primitive() or primitive.induce( N ) != chi:
                bad.append( [ N, chi.index() ] )
    return not bad, cases, { "failures": bad[:10] }


@check( "characters", "half of the characters mod N > 2 are even" )
def parity_split( config: RunConfig ) -> Outcome:
    bad = []
    limit = _pick( config, 40, 120 )
    for N in range( 3, limit + 1 ):
        even = sum( 1 for chi in characters.character_group( N ) if chi.parity() == 1 )
        if 2 * even != arith.phi( N ):
            bad.append( N )
    return not bad, limit - 2, { "failures": bad }


# expsums

@check( "expsums", "Weil bound |S_chi(a, b, c)| <= d(c) (a, b, c)^(1/2) c^(1/2) (cond cond*)^(1/4)" )
def weil( config: RunConfig ) -> Outcome:
    worst = 0.0
    cases = 0
    for c in range( 1, _pick( config, 20, 60 ) + 1 ):
        residues = np.arange( c )
        gcds = np.gcd( np.gcd.outer( residues, residues ), c )
        for chi in characters.character_group( c ):
            sums = np.abs( expsums.kloosterman_matrix( chi, c ) )
            bounds = { int( g ): expsums.weil_bound( chi, int( g ), int( g ), c ) for g in np.unique( gcds ) }
            limit = np.vectorize( bounds.get )( gcds )
            worst = max( worst, float( np.max( sums / limit ) ) )
            cases += c * c
    return worst <= 1 + config.tolerance.identity, cases, { "max_ratio": worst }


def _coprime_residue( rng: np.random.Generator, modulus: int, bound: int ) -> int:
    while True:
        x = int( rng.integers( 1, bound ) )
        if math.gcd( x, modulus ) == 1:
            return x


def _t_levels( N: int, c_max: int ):
    for W in arith.divisors( N * N ):
        for c in range( W, c_max + 1, W ):
            yield W, c


def _t_grid( config: RunConfig ):
    """
    Every (W, c, d mod N) at the small levels, then seeded draws of (N, W, c, a, b, d)
    from the levels above them. a and b are seeded throughout.
    """
    rng = np.random.default_rng( config.seed )
    exhaustive, c_max, draws = _pick( config, ( 6, 24, 60 ), ( 12, 96, 500 ) )
    for N in range( 1, exhaustive + 1 ):
        units = [ x for x in range( 1, N + 1 ) if math.gcd( x, N ) == 1 ]
        for W, c in _t_levels( N, c_max ):
            for d_ in units:
                yield W, N, d_, int( rng.integers( 0, c ) ), _coprime_residue( rng, W, 10 * W + 2 ), c
    wide = [ ( N, W, c ) for N in range( exhaustive + 1, 25 ) for W, c in _t_levels( N, c_max ) ]
    for i in rng.integers( 0, len( wide ), size=draws ).tolist():
        N, W, c = wide[i]
        d_ = _coprime_residue( rng, N, 10 * N + 2 )
        yield W, N, d_, int( rng.integers( 0, c ) ), _coprime_residue( rng, W, 10 * W + 2 ), c


@check( "expsums", "T_W half-sum in factored form equals the parity-filtered character sum" )
def t_sum_half( config: RunConfig ) -> Outcome:
    worst = 0.0
    cases = 0
    bound_ok = True
    weil_ok = True
    for W, N, d_, a, b, c in _t_grid( config ):
        for kappa in ( 2, 3 ):
            half = expsums.t_sum( W, N, d_, kappa, a, b, c, method="half" )
            brute = expsums.t_sum( W, N, d_, kappa, a, b, c, method="filter" )
            worst = max( worst, abs( half - brute ) / c )
            bound_ok &= abs( brute ) <= expsums.tsum_bound( W, a, b, c ) * ( 1 + config.tolerance.identity ) + 1e-9
            cases += 1
        weil_ok &= abs( expsums.twisted_kloosterman( None, a, b, c ) ) \
            <= expsums.weil_bound( None, a, b, c ) * ( 1 + config.tolerance.identity )
    passed = worst <= config.tolerance.closed_vs_brute and bound_ok and weil_ok
    return passed, cases, {
        "max_error_per_term": worst, "tsum_bound_holds": bool( bound_ok ), "weil_bound_holds": bool( weil_ok ) }


@check( "expsums", "T'_W closed prime-power case formulas equal the brute character sum" )
def t_prime_closed( config: RunConfig ) -> Outcome:
    worst = 0.0
    cases = 0
    for p, beta_max in _pick( config, ( ( 2, 2 ), ( 3, 1 ), ( 5, 1 ) ), ( ( 2, 3 ), ( 3, 3 ), ( 5, 2 ) ) ):
        for beta in range( 1, beta_max + 1 ):
            N = p ** beta
            for alpha in range( 0, 2 * beta + 1 ):
                W = p ** alpha
                for gamma in range( max( alpha, 1 ), alpha + 2 ):
                    c = p ** gamma
                    for a in range( 0, min( c, 6 ) ):
                        for b in ( 1, 2, 7, 11 ):
                            if b % p == 0:
                                continue
                            for d_ in ( 1, 3, 7 ):
                                if d_ % p == 0:
                                    continue
                                closed = expsums.t_prime_sum( W, N, d_, a, b, c, mode="closed" )
                                brute = expsums.t_prime_sum( W, N, d_, a, b, c, mode="brute" )
                                worst = max( worst, abs( closed - brute ) / c )
                                cases += 1
    return worst <= config.tolerance.closed_vs_brute, cases, { "max_error_per_term": worst }


# petersson

@check( "petersson", "psi(N) [cond | N] = sum_{LM = N} M F(M, chi) prod_{p^2 | M} (1 - 1/p^2)" )
def psi_identity( config: RunConfig ) -> Outcome:
    bad = []
    cases = 0
    for N in range( 1, _pick( config, 60, 300 ) + 1 ):
        seen = set()
        for chi in characters.character_group( N ):
            cond = chi.conductor()
            if cond in seen:
                continue
            seen.add( cond )
            cases += 1
            if not petersson.verify_psi_identity( N, chi ):
                bad.append( [ N, cond ] )
    return not bad, cases, { "failures": bad[:10] }


@check( "petersson", "R(p^b, p^a) R(p^g, p^(b-g)) = R(p^g, p^(a+b-g)) for cond_p <= b - 1" )
def r_composition( config: RunConfig ) -> Outcome:
    bad = []
    cases = 0
    top = _pick( config, 2, 4 )
    for p in ( 2, 3, 5, 7 ):
        for beta in range( 1, top + 1 ):
            conductors = { chi.cond_p( p ): chi for chi in characters.character_group( p ** beta ) }
            for f, chi in sorted( conductors.items() ):
                if f > beta - 1:
                    continue
                for alpha in range( 0, top + 1 ):
                    for gamma in range( 0, beta + 1 ):
                        cases += 1
                        if not petersson.verify_r_composition( p, alpha, beta, gamma, chi ):
                            bad.append( [ p, alpha, beta, gamma, f ] )
    return not bad, cases, { "failures": bad[:10] }


@check( "petersson", "R(M, L) R(W, Q) = R(W, LQ) for N = LWQ, M = WQ, cond | W" )
def inversion_helper( config: RunConfig ) -> Outcome:
    bad = []
    cases = 0
    for N in range( 1, _pick( config, 60, 200 ) + 1 ):
        conductors = { chi.conductor(): chi for chi in characters.character_group( N ) }
        for L, M in arith.factor_pairs( N ):
            for Q, W in arith.factor_pairs( M ):
                for cond, chi in sorted( conductors.items() ):
                    cases += 1
                    if not petersson.verify_inversion_helper( N, W, Q, L, chi ):
                        bad.append( [ N, L, W, Q, cond ] )
    return not bad, cases, { "failures": bad[:10] }


@check( "petersson", "(psi(LM)/M) L_N-factor R(M, L) = prod_{p^2 | M} (1 - 1/p^2) F(M) for cond | M" )
def harmonic_factor( config: RunConfig ) -> Outcome:
    bad = []
    cases = 0
    for N in range( 1, _pick( config, 60, 200 ) + 1 ):
        conductors = { chi.conductor(): chi for chi in characters.character_group( N ) }
        for L, M in arith.factor_pairs( N ):
            for cond, chi in sorted( conductors.items() ):
                if M % cond:
                    continue
                cases += 1
                if not petersson.verify_harmonic_factor( L, M, chi ):
                    bad.append( [ L, M, cond ] )
    return not bad, cases, { "failures": bad[:10] }


@check( "petersson", "diagonal term equals the level-by-level sum of the psi identity" )
def diagonal( config: RunConfig ) -> Outcome:
    bad = []
    cases = 0
    for kappa in ( 2, 4, 12 ):
        for N in range( 1, _pick( config, 12, 30 ) + 1 ):
            for m in range( 1, 17 ):
                cases += 1
                if not petersson.verify_diagonal( kappa, N, None, m ):
                    bad.append( [ kappa, N, m ] )
    return not bad, cases, { "failures": bad[:10] }


DIMENSION_ZERO = ( ( 4, 1 ), ( 6, 1 ), ( 8, 1 ), ( 10, 1 ), ( 14, 1 ), ( 2, 2 ), ( 2, 3 ), ( 2, 5 ), ( 2, 7 ) )


@check( "petersson", "Delta_{kappa,N}(m, n) vanishes on zero cusp spaces up to its tail bound" )
def dimension_zero( config: RunConfig ) -> Outcome:
    spaces = _pick( config, ( ( 4, 1 ), ( 2, 2 ) ), DIMENSION_ZERO )
    indices = _pick( config, ( 1, 2 ), ( 1, 2, 3 ) )
    worst = -math.inf
    cases = 0
    for kappa, N in spaces:
        pairs = [ ( m, n ) for m in indices for n in indices if math.gcd( m * n, N ) == 1 ]
        values = petersson.delta_geometric_many( kappa, N, None, pairs, config.trunc, config.heuristic )
        for value in values:
            worst = max( worst, abs( value.value ) - value.tail_bound )
            cases += 1
    return worst <= config.tolerance.delta_slack, cases, { "max_excess": worst }


@check( "petersson", "Delta(1, m) / Delta(1, 1) recovers tau(m) / m^(11/2) in weight 12" )
def tau_recovery( config: RunConfig ) -> Outcome:
    f = modforms.oracle_newform( "delta", 50 )
    ms = _pick( config, ( 2, ), ( 2, 3, 4 ) )
    pairs = [ ( 1, 1 ) ] + [ ( 1, m ) for m in ms ]
    values = petersson.delta_geometric_many( 12, 1, None, pairs, config.trunc, config.heuristic )
    base = values[0].value.real
    worst = max( abs( v.value.real / base - modforms.normalized_eigenvalue( f, m ) ) for v, m in zip( values[1:], ms ) )
    return worst <= config.tolerance.tau_ratio, len( ms ), { "max_error": worst }


@check( "petersson", "Delta*_{2,11}(1, m) / Delta*_{2,11}(1, 1) recovers lambda_f(m) of the level-11 newform" )
def newform_recovery( config: RunConfig ) -> Outcome:
    # weight 2 needs the acceptance-scale truncations
    if config.quick:
        return True, 0, { "skipped": "full profile only" }
    f = modforms.oracle_newform( "level11", 50 )
    ms = ( 2, 3, 4, 5, 9 )
    l_max = config.l_max
    base = petersson.delta_star( 2, 11, None, 1, 1, l_max, config.trunc ).value.real
    errors = {}
    for m in ms:
        value = petersson.delta_star( 2, 11, None, 1, m, l_max, config.trunc ).value.real
        errors[str( m )] = abs( value / base - modforms.normalized_eigenvalue( f, m ) )
    worst = max( errors.values() )
    return worst <= config.tolerance.newform_ratio, len( ms ), { "errors": errors }


# modforms

@check( "modforms", "Hecke multiplicativity and the prime-power recursion on the oracle forms" )
def hecke_relations( config: RunConfig ) -> Outcome:
    P = _pick( config, 200, min( config.precision, 1000 ) )
    names = _pick( config, ( "delta", "level11" ), tuple( modforms.ORACLE_FORMS ) )
    bad = [ name for name in names if not modforms.check_hecke_relations( modforms.oracle_newform( name, P ) ) ]
    return not bad, len( names ), { "failures": bad }


@check( "modforms", "Deligne bound |lambda_f(n)| <= d(n)" )
def deligne( config: RunConfig ) -> Outcome:
    P = _pick( config, 200, min( config.precision, 1000 ) )
    names = tuple( modforms.ORACLE_FORMS )
    bad = [ name for name in names if not modforms.check_deligne( modforms.oracle_newform( name, P ) ) ]
    return not bad, len( names ), { "failures": bad }


@check( "modforms", "lambda(n)^2 is recovered from the adjoint-square coefficients rho" )
def rho_inversion( config: RunConfig ) -> Outcome:
    limit = _pick( config, 12, 40 )
    names = ( "delta", "level11" )
    bad = [ name for name in names
            if not modforms.check_rho_inversion( modforms.oracle_newform( name, limit * limit ), limit ) ]
    return not bad, len( names ), { "failures": bad }


XI_LEVELS = ( 1, 3, 4, 5, 7, 8, 9, 12 )


@check( "modforms", "closed V_{p^alpha}(m, n) equals its definition from the xi basis" )
def xi_closed_form( config: RunConfig ) -> Outcome:
    worst = 0.0
    cases = 0
    levels = _pick( config, XI_LEVELS[:4], XI_LEVELS )
    indices = range( 1, _pick( config, 9, 19 ) )
    primes = arith.primes_up_to( 40 )
    for N in levels:
        for chi in characters.character_group( N ):
            system = modforms.EigenSystem.synthetic( chi, 2 if chi.parity() == 1 else 3, primes, config.seed )
            for p in ( 2, 3, 5 ):
                for alpha in ( 1, 2 ):
                    for m in indices:
                        for n in indices:
                            if m % p == 0 and n % p == 0:
                                continue
                            closed = modforms.v_palpha( system, p, alpha, m, n, mode="closed" )
                            exact = modforms.v_palpha( system, p, alpha, m, n, mode="definition" )
                            worst = max( worst, abs( closed - exact ) / max( 1.0, abs( exact ) ) )
                            cases += 1
    return worst <= config.tolerance.xi, cases, { "max_error": worst }


@check( "modforms", "r_f(p)^-1 identities of the xi basis and the lambda(p^2a) series" )
def r_f_identities( config: RunConfig ) -> Outcome:
    bad = []
    cases = 0
    primes = arith.primes_up_to( 40 )
    for N in _pick( config, XI_LEVELS[:4], XI_LEVELS ):
        for chi in characters.character_group( N ):
            system = modforms.EigenSystem.synthetic( chi, 2 if chi.parity() == 1 else 3, primes, config.seed )
            for p in ( 2, 3, 5, 7 ):
                cases += 1
                if not modforms.r_f_identities( system, p, tolerance=config.tolerance.xi ):
                    bad.append( [ N, chi.index(), p ] )
    return not bad, cases, { "failures": bad[:10] }


@check( "modforms", "Delta_{12,1}(1, 1) <Delta, Delta> / c_12 = 1 with the norm from L(1, Ad^2)" )
def norm_closure( config: RunConfig ) -> Outcome:
    X = _pick( config, 1000, config.norm_x )
    f = modforms.oracle_newform( "delta", X )
    norm = modforms.petersson_norm( f, X )
    value = petersson.delta_geometric( 12, 1, None, 1, 1, config.trunc, config.heuristic )
    ratio = value.value.real * norm.value / analytic.c_kappa( 12 )
    passed = abs( ratio - 1 ) <= config.tolerance.norm_closure and norm.error_bar <= config.tolerance.norm_closure
    return passed, 1, { "ratio": ratio, "norm": norm.value, "norm_error_bar": norm.error_bar }


# traces

@check( "traces", "#X_0(11)(F_p) from the oracle a_p, the curve 11a and the trace formula agree" )
def x0_bridge( config: RunConfig ) -> Outcome:
    f = modforms.oracle_newform( "level11", 200 )
    bad = []
    primes = [ p for p in arith.primes_up_to( 50 ) if p != 11 ]
    for p in primes:
        from_oracle = p + 1 - modforms.coefficient( f, p )
        from_curve = census.count_points_long( p, CURVE_11A )
        if not from_oracle == from_curve == traces.x0_exact( 11, p ):
            bad.append( p )
    return not bad, len( primes ), { "failures": bad }


@check( "traces", "#X_0(11)(F_p^2) = p^2 + 1 - (a_p^2 - 2p)" )
def x0_square( config: RunConfig ) -> Outcome:
    f = modforms.oracle_newform( "level11", 200 )
    primes = [ p for p in arith.primes_up_to( _pick( config, 20, 50 ) ) if p != 11 ]
    bad = [ p for p in primes
            if traces.x0_exact_11( p, 2 ) != p * p + 1 - ( modforms.coefficient( f, p ) ** 2 - 2 * p ) ]
    return not bad, len( primes ), { "failures": bad }


@check( "traces", "the Gamma(M, N) main term equals the character sum of Gamma_0 main terms" )
def mt2_characters( config: RunConfig ) -> Outcome:
    bad = []
    cases = 0
    for N in range( 1, _pick( config, 8, 16 ) + 1 ):
        for M in arith.divisors( N ):
            for kappa in ( 2, 3, 4 ):
                for m in ( 1, 2, 4, 9, 25 ):
                    if math.gcd( m, N ) != 1:
                        continue
                    for d_ in range( 1, N + 1 ):
                        if math.gcd( d_, N ) != 1:
                            continue
                        cases += 1
                        if traces.mt2_character_sum( kappa, M, N, d_, m ) != traces.main_term_mt2( kappa, M, N, d_, m ):
                            bad.append( [ kappa, M, N, d_, m ] )
    return not bad, cases, { "failures": bad[:10] }


@check( "traces", "exact level-1 traces stay within the Eichler-Selberg envelope of the main term" )
def level_one_traces( config: RunConfig ) -> Outcome:
    bad = []
    cases = 0
    for kappa in ( 12, 16, 18, 20, 22, 26 ):
        for m in range( 1, _pick( config, 10, 30 ) + 1 ):
            cases += 1
            exact = traces.exact_trace_small( kappa, 1, m )
            estimate = traces.error_envelopes( kappa, 1, None, m )
            main = traces.main_term_mt1( kappa, 1, None, m )
            if abs( float( exact - main ) ) > estimate.envelopes["serre"] * ( 1 + 1e-12 ):
                bad.append( [ kappa, m ] )
    return not bad, cases, { "failures": bad[:10] }


# census

CENSUS_SMALL = ( 5, 7, 11, 13 )


@check( "census", "sum over isomorphism classes of 1/|Aut| = q" )
def mass_formula( config: RunConfig ) -> Outcome:
    fields = _pick( config, CENSUS_SMALL, CENSUS_SMALL + ( 101, 211 ) )
    bad = [ q for q in fields if sum( Fraction( 1, r.aut ) for r in census.census( q ) ) != q ]
    return not bad, len( fields ), { "failures": bad }


@check( "census", "Hasse bound and invariant-factor relations of every record" )
def record_invariants( config: RunConfig ) -> Outcome:
    fields = _pick( config, CENSUS_SMALL, CENSUS_SMALL + ( 101, ) )
    bad = []
    cases = 0
    for q in fields:
        for r in census.census( q ):
            cases += 1
            if not r.check() or r.aut != census.aut_from_j( q, r.a, r.b ):
                bad.append( r.to_dict() )
    return not bad, cases, { "failures": bad[:10] }


@check( "census", "ell-torsion counts equal gcd(ell, n1) gcd(ell, n2)" )
def torsion( config: RunConfig ) -> Outcome:
    bad = []
    cases = 0
    for q in CENSUS_SMALL:
        for r in census.census( q ):
            for ell in ( 2, 3 ):
                cases += 1
                if census.torsion_count( q, r.a, r.b, ell ) != math.gcd( ell, r.n1 ) * math.gcd( ell, r.n2 ):
                    bad.append( [ q, r.a, r.b, ell ] )
    return not bad, cases, { "failures": bad[:10] }


MOMENT_GROUPS = ( ( 1, 1 ), ( 2, 1 ), ( 3, 1 ), ( 2, 2 ) )


@check( "census", "|E_q(U_j Phi_A) - v(n1, n2) [j = 0]| <= scale / sqrt(q), exact zero when q != 1 mod n2" )
def moments( config: RunConfig ) -> Outcome:
    fields = _pick( config, ( 101, ), ( 101, 211, 401 ) )
    worst = 0.0
    cases = 0
    vanishing = True
    for q in fields:
        for j in ( 0, 1, 2 ):
            for A in MOMENT_GROUPS + ( ( 3, 3 ), ( 4, 4 ) ):
                result = census.moment( q, j, A, config.mp_dps )
                cases += 1
                if ( q - 1 ) % A[1]:
                    vanishing &= result.expectation == 0
                elif A in MOMENT_GROUPS:
                    worst = max( worst, result.deviation * math.sqrt( q ) )
        if census.moment( q, 0, ( 1, 1 ) ).expectation != 1:
            vanishing = False
    passed = worst <= config.tolerance.moment_scale and vanishing
    return passed, cases, { "max_scaled_deviation": worst, "vanishing_and_mass": bool( vanishing ) }
