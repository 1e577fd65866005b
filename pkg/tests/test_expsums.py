import cmath
import math

import numpy as np
import pytest
import sympy

from petersson_python import expsums, verify
from petersson_python.characters import character_group
from petersson_python.errors import ModeError, PreconditionError
from petersson_python.types.runConfig import RunConfig


def brute_kloosterman( chi, a: int, b: int, c: int ) -> complex:
    total = 0j
    for x in range( c ):
        if math.gcd( x, c ) != 1:
            continue
        weight = 1 if chi is None else chi( x )
        total += weight * cmath.exp( 2j * math.pi * ( a * x + b * pow( x, -1, c ) ) / c )
    return total


class TestKloosterman:
    @pytest.mark.parametrize( "c", [ 2, 3, 7, 12, 25, 36, 49 ] )
    def test_matches_direct_sum( self, c ):
        for a in range( 0, c, max( 1, c // 6 ) ):
            for b in range( 0, c, max( 1, c // 5 ) ):
                assert expsums.kloosterman( a, b, c ) == pytest.approx( brute_kloosterman( None, a, b, c ), abs=1e-9 )

    def test_modulus_one( self ):
        assert expsums.kloosterman( 5, 7, 1 ) == pytest.approx( 1.0 )

    def test_symmetric_and_real( self ):
        for c in ( 11, 15, 32 ):
            for a in range( 1, 8 ):
                for b in range( 1, 8 ):
                    value = expsums.kloosterman( a, b, c )
                    assert value.imag == 0.0
                    assert value == pytest.approx( expsums.kloosterman( b, a, c ), abs=1e-9 )

    def test_ramanujan_sum( self ):
        for c in range( 1, 40 ):
            for a in range( 0, 12 ):
                expected = sum( sympy.mobius( c // k ) * k for k in sympy.divisors( math.gcd( a, c ) ) ) \
                    if a else sympy.totient( c )
                assert expsums.kloosterman( a, 0, c ).real == pytest.approx( float( expected ), abs=1e-9 )

    def test_selberg_identity( self ):
        for c in ( 8, 12, 18, 27 ):
            for m in range( 1, 10 ):
                for n in range( 1, 10 ):
                    g = math.gcd( math.gcd( m, n ), c )
                    right = sum( k * expsums.kloosterman( m * n // ( k * k ), 1, c // k ).real
                                 for k in sympy.divisors( g ) )
                    assert expsums.kloosterman( m, n, c ).real == pytest.approx( right, abs=1e-8 )

    def test_weil_bound_prime( self ):
        for p in ( 5, 7, 11, 13, 101 ):
            for a in range( 1, 6 ):
                assert abs( expsums.kloosterman( a, 1, p ) ) <= 2 * math.sqrt( p ) + 1e-9


class TestTwisted:
    @pytest.mark.parametrize( "c", [ 5, 8, 12, 21 ] )
    def test_matches_direct_sum( self, c ):
        for chi in character_group( c ):
            for a, b in ( ( 1, 1 ), ( 2, 3 ), ( 0, 5 ), ( c - 1, 4 ) ):
                assert expsums.twisted_kloosterman( chi, a, b, c ) == pytest.approx(
                    brute_kloosterman( chi, a, b, c ), abs=1e-9 )

    def test_character_from_divisor_of_c( self ):
        chi = character_group( 4 )[1]
        expected = brute_kloosterman( chi.induce( 12 ), 1, 5, 12 )
        assert expsums.twisted_kloosterman( chi, 1, 5, 12 ) == pytest.approx( expected, abs=1e-9 )

    def test_modulus_must_divide_c( self ):
        with pytest.raises( PreconditionError ):
            expsums.twisted_kloosterman( character_group( 5 )[1], 1, 1, 12 )
        with pytest.raises( PreconditionError ):
            expsums.weil_bound( character_group( 5 )[1], 1, 1, 12 )

    def test_matrix_matches_sums( self ):
        chi = character_group( 9 )[2]
        matrix = expsums.kloosterman_matrix( chi, 18 )
        pairs = [ ( a, b ) for a in range( 18 ) for b in range( 18 ) ]
        sums = expsums.kloosterman_sums( chi, pairs, 18 )
        assert np.allclose( matrix.reshape( -1 ), sums )

    @pytest.mark.parametrize( "c", range( 1, 31 ) )
    def test_weil_bound_grid( self, c ):
        for chi in character_group( c ):
            matrix = np.abs( expsums.kloosterman_matrix( chi, c ) )
            for a in range( c ):
                for b in range( c ):
                    assert matrix[a, b] <= expsums.weil_bound( chi, a, b, c ) * ( 1 + 1e-9 )


class TestTSums:
    def test_parity_counterexample( self ):
        # N = W = c = 3, a = b = d = 1, even weight
        assert expsums.t_sum( 3, 3, 1, 2, 1, 1, 3, method="filter" ) == pytest.approx( -1, abs=1e-9 )
        assert expsums.t_sum( 3, 3, 1, 2, 1, 1, 3, method="half" ) == pytest.approx( -1, abs=1e-9 )

    @pytest.mark.parametrize( "N", [ 1, 2, 3, 4, 5, 6 ] )
    def test_half_equals_filter( self, N ):
        rng = np.random.default_rng( 7 )
        for W in sympy.divisors( N * N ):
            for c in range( W, 25, W ):
                for _ in range( 3 ):
                    a = int( rng.integers( 0, c ) )
                    b = next( x for x in range( int( rng.integers( 1, 20 ) ), 100 ) if math.gcd( x, W ) == 1 )
                    d_ = next( x for x in range( int( rng.integers( 1, 20 ) ), 100 ) if math.gcd( x, N ) == 1 )
                    for kappa in ( 2, 3 ):
                        half = expsums.t_sum( W, N, d_, kappa, a, b, c, method="half" )
                        brute = expsums.t_sum( W, N, d_, kappa, a, b, c, method="filter" )
                        assert half == pytest.approx( brute, abs=1e-8 * c )
                        assert abs( brute ) <= expsums.tsum_bound( W, a, b, c ) * ( 1 + 1e-9 ) + 1e-9

    def test_factored_equals_brute( self ):
        for N, W, c in ( ( 6, 6, 12 ), ( 4, 8, 16 ), ( 5, 1, 10 ), ( 6, 2, 6 ) ):
            for a in ( 0, 1, 7 ):
                for b in ( 1, 5, 7 ):
                    if math.gcd( b, W ) != 1:
                        continue
                    assert expsums.t_sum_factored( W, N, 1, a, b, c ) == pytest.approx(
                        expsums.t_prime_sum( W, N, 1, a, b, c ), abs=1e-8 * c )

    @pytest.mark.parametrize( "p, beta", [ ( 2, 1 ), ( 2, 2 ), ( 3, 1 ), ( 3, 2 ), ( 5, 1 ) ] )
    def test_closed_prime_power( self, p, beta ):
        N = p ** beta
        for alpha in range( 0, 2 * beta + 1 ):
            W = p ** alpha
            for gamma in range( max( alpha, 1 ), alpha + 2 ):
                c = p ** gamma
                for a in range( 0, min( c, 5 ) ):
                    closed = expsums.t_prime_sum( W, N, 1, a, 1, c, mode="closed" )
                    brute = expsums.t_prime_sum( W, N, 1, a, 1, c, mode="brute" )
                    assert closed == pytest.approx( brute, abs=1e-8 * c )

    def test_modes( self ):
        with pytest.raises( ModeError ):
            expsums.t_prime_sum( 1, 6, 1, 1, 1, 6, mode="closed" )
        with pytest.raises( ModeError ):
            expsums.t_prime_sum( 1, 2, 1, 1, 1, 2, mode="fast" )
        with pytest.raises( ModeError ):
            expsums.t_sum( 1, 2, 1, 2, 1, 1, 2, method="fast" )

    def test_preconditions( self ):
        with pytest.raises( PreconditionError ):
            expsums.t_prime_sum( 2, 4, 1, 1, 2, 4 )
        with pytest.raises( PreconditionError ):
            expsums.t_prime_sum( 4, 4, 2, 1, 1, 4 )
        with pytest.raises( PreconditionError ):
            expsums.t_prime_sum( 3, 2, 1, 1, 1, 3 )
        with pytest.raises( PreconditionError ):
            expsums.tsum_bound( 4, 1, 1, 6 )

    def test_tsum_bound_value( self ):
        # c = 12 = 4 * 3 with W = 2: psi(4) d(3) sqrt(gcd(1, 1, 3) 3)
        assert expsums.tsum_bound( 2, 1, 1, 12 ) == pytest.approx( 6 * 2 * math.sqrt( 3 ) )

    def test_closed_with_twisted_residue( self ):
        for p, beta in ( ( 2, 2 ), ( 5, 2 ) ):
            N = p ** beta
            for alpha in range( 0, 2 * beta + 1 ):
                W = p ** alpha
                c = p ** max( alpha, 1 )
                for d_ in ( 3, 7 ):
                    for b in ( 1, 3 ):
                        closed = expsums.t_prime_sum( W, N, d_, 1, b, c, mode="closed" )
                        brute = expsums.t_prime_sum( W, N, d_, 1, b, c, mode="brute" )
                        assert closed == pytest.approx( brute, abs=1e-8 * c )


@pytest.mark.slow
class TestAcceptanceGrid:
    FULL = RunConfig()

    def test_weil_through_sixty( self ):
        passed, cases, detail = verify.weil( self.FULL )
        assert passed, detail
        assert cases == sum( c * c * len( character_group( c ) ) for c in range( 1, 61 ) )

    def test_half_sum_grid( self ):
        passed, cases, detail = verify.t_sum_half( self.FULL )
        assert passed, detail
        assert detail["weil_bound_holds"] and detail["tsum_bound_holds"]
        # two weights per drawn case, at least 500 of them above the exhaustive levels
        assert cases >= 2 * 500

    def test_wide_levels_are_drawn( self ):
        levels = { N for _, N, _, _, _, _ in verify._t_grid( self.FULL ) }
        assert levels >= set( range( 1, 13 ) )
        assert levels & set( range( 13, 25 ) )
        cs = { c for _, _, _, _, _, c in verify._t_grid( self.FULL ) }
        assert max( cs ) == 96

    def test_closed_prime_powers( self ):
        passed, cases, detail = verify.t_prime_closed( self.FULL )
        assert passed, detail
        assert cases > 0

    def test_grid_is_seeded( self ):
        assert list( verify._t_grid( self.FULL ) ) == list( verify._t_grid( self.FULL ) )
