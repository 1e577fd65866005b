import math

import mpmath
import numpy as np
import pytest
from scipy.special import jv

from petersson_python import analytic
from petersson_python.errors import DomainError, PreconditionError
from petersson_python.types.records.queries import TailBoundInput


def divisor_counts( limit: int ) -> np.ndarray:
    counts = np.zeros( limit + 1, dtype=np.int64 )
    for i in range( 1, limit + 1 ):
        counts[i::i] += 1
    return counts


class TestBessel:
    @pytest.mark.parametrize( "k", [ 0, 1, 11, 15, 25, 60, 200 ] )
    @pytest.mark.parametrize( "x", [ 0.001, 0.5, 3.0, 11.9, 12.5, 40.0, 250.0, 1e3, 3.7e4 ] )
    def test_matches_scipy( self, k, x ):
        assert analytic.bessel_j( k, x ) == pytest.approx( jv( k, x ), rel=1e-9, abs=1e-11 )

    def test_matches_mpmath_in_recurrence_region( self ):
        with mpmath.workdps( 30 ):
            for k, x in ( ( 11, 500.0 ), ( 3, 9e4 ), ( 150, 400.0 ) ):
                assert analytic.bessel_j( k, x ) == pytest.approx( float( mpmath.besselj( k, x ) ), rel=1e-9, abs=1e-11 )

    def test_at_zero( self ):
        assert analytic.bessel_j( 0, 0.0 ) == 1.0
        assert analytic.bessel_j( 7, 0.0 ) == 0.0

    def test_tiny_argument_underflows_to_zero( self ):
        assert analytic.bessel_j( 200, 1e-8 ) == 0.0

    def test_array_agrees_with_scalar( self ):
        xs = np.array( [ 0.0, 0.3, 5.0, 13.0, 80.0, 2000.0 ] )
        for k in ( 0, 11, 31 ):
            expected = [ analytic.bessel_j( k, float( x ) ) for x in xs ]
            assert analytic.bessel_j_array( k, xs ) == pytest.approx( expected, rel=1e-12, abs=1e-15 )

    @pytest.mark.parametrize( "k, x", [ ( -1, 1.0 ), ( 201, 1.0 ), ( 2.0, 1.0 ), ( 3, -0.5 ), ( 3, 2e5 ) ] )
    def test_domain( self, k, x ):
        with pytest.raises( DomainError ):
            analytic.bessel_j( k, x )


class TestChebyshev:
    def test_trigonometric_form( self ):
        for theta in ( 0.3, 1.1, 2.5 ):
            for j in range( 0, 12 ):
                expected = math.sin( ( j + 1 ) * theta ) / math.sin( theta )
                assert analytic.chebyshev_u( j, math.cos( theta ) ) == pytest.approx( expected, abs=1e-9 )

    def test_endpoints( self ):
        assert analytic.chebyshev_u( 10, 1.0 ) == pytest.approx( 11.0 )
        assert analytic.chebyshev_u( 10, -1.0 ) == pytest.approx( 11.0 )
        assert analytic.chebyshev_u( 9, -1.0 ) == pytest.approx( -10.0 )

    def test_mpf( self ):
        value = analytic.chebyshev_u( 3, mpmath.mpf( "0.5" ) )
        assert isinstance( value, mpmath.mpf )
        assert value == -1

    def test_degree_range( self ):
        with pytest.raises( DomainError ):
            analytic.chebyshev_u( 65, 0.5 )


class TestCKappa:
    def test_values( self ):
        assert analytic.c_kappa( 2 ) == pytest.approx( 1 / ( 4 * math.pi ) )
        assert analytic.c_kappa( 12 ) == pytest.approx( math.factorial( 10 ) / ( 4 * math.pi ) ** 11 )

    def test_large_weight_is_finite( self ):
        value = analytic.c_kappa( 150 )
        assert 0 < value < math.inf

    def test_weight_one_rejected( self ):
        with pytest.raises( DomainError ):
            analytic.c_kappa( 1 )


class TestTailBounds:
    def test_divisor_tail_dominates_partial_sum( self ):
        limit = 20000
        counts = divisor_counts( limit )
        for K, s in ( ( 1, 1.5 ), ( 10, 2.0 ), ( 100, 11.5 ) ):
            k = np.arange( K + 1, limit + 1 )
            partial = float( np.sum( counts[K + 1:] / k.astype( float ) ** s ) )
            assert partial <= analytic.divisor_tail_sum_bound( K, s )

    def test_divisor_tail_domain( self ):
        with pytest.raises( DomainError ):
            analytic.divisor_tail_sum_bound( 0, 2.0 )
        with pytest.raises( DomainError ):
            analytic.divisor_tail_sum_bound( 5, 1.0 )

    def test_weight_two_tail_is_usable( self ):
        bound = analytic.petersson_tail_bound( TailBoundInput( 2, 1, 1, 1, 100000 ) )
        assert 0 < bound < 1

    def test_decreasing_in_truncation( self ):
        bounds = [ analytic.petersson_tail_bound( TailBoundInput( 12, 1, 2, 3, C ) ) for C in ( 100, 1000, 10000 ) ]
        assert bounds[0] > bounds[1] > bounds[2] > 0

    def test_weight_two_needs_large_truncation( self ):
        with pytest.raises( PreconditionError ):
            analytic.petersson_tail_bound( TailBoundInput( 2, 1, 4, 4, 50 ) )

    def test_input_preconditions( self ):
        with pytest.raises( PreconditionError ):
            TailBoundInput( 1, 1, 1, 1, 100 )
        with pytest.raises( PreconditionError ):
            TailBoundInput( 12, 11, 1, 1, 5 )

    def test_majorant_includes_diagonal( self ):
        assert analytic.delta_majorant( 12, 1, 1, 1, 3, 3 ) >= 1.0
        assert analytic.delta_majorant( 12, 1, 1, 1, 2, 3 ) > 0.0

    def test_ell_tail_without_primes( self ):
        assert analytic.ell_tail_bound( 12, 1, 1, 1, 1, 1, [], 100 ) == 0.0
