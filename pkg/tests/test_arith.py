import math
from fractions import Fraction

import pytest
import sympy

from petersson_python import arith
from petersson_python.errors import DomainError


@pytest.fixture( scope="module" )
def numbers():
    return list( range( 1, 401 ) )


class TestFactor:
    def test_matches_sympy( self, numbers ):
        for n in numbers:
            assert arith.factor( n ) == sympy.factorint( n )

    def test_one_has_no_primes( self ):
        assert arith.factor( 1 ).primes() == []
        assert len( arith.factor( 1 ) ) == 0

    def test_large_prime( self ):
        assert arith.factor( 1000003 ).factors == ( ( 1000003, 1 ), )

    @pytest.mark.parametrize( "bad", [ 0, -4 ] )
    def test_rejects_nonpositive( self, bad ):
        with pytest.raises( DomainError ):
            arith.factor( bad )

    def test_rejects_non_int( self ):
        with pytest.raises( DomainError ):
            arith.factor( 2.5 )


class TestMultiplicative:
    def test_against_sympy( self, numbers ):
        for n in numbers:
            assert arith.phi( n ) == sympy.totient( n )
            assert arith.d( n ) == sympy.divisor_count( n )
            assert arith.sigma( n ) == sympy.divisor_sigma( n )
            assert arith.mu( n ) == sympy.mobius( n )
            assert arith.is_prime( n ) == sympy.isprime( n )

    def test_psi_examples( self ):
        assert arith.psi( 1 ) == 1
        assert arith.psi( 4 ) == 6
        assert arith.psi( 11 ) == 12
        assert arith.psi( 12 ) == 24

    def test_psi_is_index_formula( self, numbers ):
        for n in numbers:
            assert Fraction( arith.psi( n ), n ) == math.prod( ( 1 + Fraction( 1, p ) for p in sympy.primefactors( n ) ), start=Fraction( 1 ) )

    def test_d3_counts_triples( self ):
        for n in range( 1, 61 ):
            triples = sum( 1 for a in arith.divisors( n ) for b in arith.divisors( n // a ) )
            assert arith.d3( n ) == triples

    def test_multiplicativity( self ):
        for m in range( 1, 30 ):
            for n in range( 1, 30 ):
                if sympy.gcd( m, n ) == 1:
                    for f in ( arith.psi, arith.phi, arith.d, arith.sigma, arith.d3, arith.mu ):
                        assert f( m * n ) == f( m ) * f( n )

    def test_omega_rad( self ):
        assert arith.omega( 360 ) == 3
        assert arith.rad( 360 ) == 30
        assert arith.rad( 1 ) == 1


class TestHelpers:
    def test_vp( self ):
        assert arith.vp( 48, 2 ) == 4
        assert arith.vp( -27, 3 ) == 3
        assert arith.vp( 5, 3 ) == 0
        with pytest.raises( DomainError ):
            arith.vp( 0, 2 )

    def test_divisors_and_pairs( self ):
        assert arith.divisors( 12 ) == [ 1, 2, 3, 4, 6, 12 ]
        assert arith.factor_pairs( 12 ) == [ ( 1, 12 ), ( 2, 6 ), ( 3, 4 ), ( 4, 3 ), ( 6, 2 ), ( 12, 1 ) ]

    def test_inverse_mod( self ):
        assert arith.inverse_mod( 3, 7 ) == 5
        assert arith.inverse_mod( 5, 1 ) == 0
        with pytest.raises( DomainError ):
            arith.inverse_mod( 4, 8 )

    def test_crt( self ):
        r, m = arith.crt( [ ( 2, 3 ), ( 3, 5 ), ( 2, 7 ) ] )
        assert ( r, m ) == ( 23, 105 )

    def test_smooth_part( self ):
        assert arith.smooth_part( 360, 6 ) == 72
        assert arith.smooth_part( 35, 6 ) == 1

    def test_isqrt_exact( self ):
        assert arith.isqrt_exact( 49 ) == 7
        assert arith.isqrt_exact( 0 ) == 0
        assert arith.isqrt_exact( 50 ) is None
        assert arith.isqrt_exact( -4 ) is None

    def test_smooth_numbers( self ):
        assert arith.smooth_numbers( [ 2, 3 ], 20 ) == [ 1, 2, 3, 4, 6, 8, 9, 12, 16, 18 ]
        assert arith.smooth_numbers( [], 20 ) == [ 1 ]

    def test_primes_up_to( self ):
        assert arith.primes_up_to( 30 ) == list( sympy.primerange( 2, 31 ) )
        assert arith.primes_up_to( 1 ) == []
