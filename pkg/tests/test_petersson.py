import logging
import math
from fractions import Fraction

import pytest

from petersson_python import modforms, petersson
from petersson_python.characters import character_group
from petersson_python.errors import DomainError, ParityMismatchError, PreconditionError


def odd_character_mod_4():
    chi = character_group( 4 )[1]
    assert chi.parity() == -1
    return chi


class TestLocalFactors:
    def test_r_factor_values( self ):
        assert petersson.r_factor( 2, 2 ) == Fraction( 2, 3 )
        assert petersson.r_factor( 1, 2 ) == Fraction( 1, 2 )
        assert petersson.r_factor( 1, 4 ) == Fraction( 1, 3 )
        assert petersson.r_factor( 7, 1 ) == 1

    def test_r_factor_domain( self ):
        with pytest.raises( DomainError ):
            petersson.r_factor( 0, 3 )

    def test_a_ogg( self ):
        assert petersson.a_ogg( 11, 11 ) == Fraction( 1, 11 )
        assert petersson.a_ogg( 2, 4 ) == 0
        assert petersson.a_ogg( 2, 4, odd_character_mod_4() ) == 1

    def test_a_ogg_preconditions( self ):
        with pytest.raises( DomainError ):
            petersson.a_ogg( 4, 8 )
        with pytest.raises( PreconditionError ):
            petersson.a_ogg( 3, 4 )
        with pytest.raises( PreconditionError ):
            petersson.a_ogg( 2, 2, odd_character_mod_4() )

    def test_f_factor( self ):
        assert petersson.f_factor( 2 ) == 1
        assert petersson.f_factor( 3, character_group( 3 )[1] ) == Fraction( 4, 3 )
        assert petersson.f_factor( 4 ) == 1
        assert petersson.f_factor( 4, odd_character_mod_4() ) == 2

    def test_l_local_factor( self ):
        assert petersson.l_local_factor( 1 ) == 1
        assert petersson.l_local_factor( 11 ) == Fraction( 11, 12 )

    def test_diagonal( self ):
        assert petersson.diagonal_coefficient( 12, 1, 4 ) == Fraction( 11, 24 )
        assert petersson.diagonal_coefficient( 12, 1, 2 ) == 0
        assert petersson.diagonal_coefficient( 2, 6, 1 ) == Fraction( 12, 12 )
        assert petersson.diagonal_term( 12, 1, None, 3 ) == 0j


class TestExactIdentities:
    @pytest.mark.parametrize( "N", range( 1, 61 ) )
    def test_psi_identity( self, N ):
        for chi in character_group( N ):
            assert petersson.verify_psi_identity( N, chi )

    def test_psi_identity_at_four( self ):
        total = sum( M * petersson.f_factor( M ) * petersson._square_weight( M ) for _, M in ( ( 1, 4 ), ( 2, 2 ), ( 4, 1 ) ) )
        assert total == 6

    def test_r_composition( self ):
        for p in ( 2, 3, 5 ):
            for beta in range( 1, 4 ):
                for alpha in range( 0, 4 ):
                    for gamma in range( 0, beta + 1 ):
                        assert petersson.verify_r_composition( p, alpha, beta, gamma )

    def test_r_composition_outside_hypotheses( self ):
        chi = character_group( 3 )[1]
        with pytest.raises( PreconditionError ):
            petersson.verify_r_composition( 3, 1, 1, 0, chi )
        with pytest.raises( PreconditionError ):
            petersson.verify_r_composition( 2, 1, 1, 2 )
        assert isinstance( petersson.verify_r_composition( 3, 1, 1, 0, chi, strict=False ), bool )

    def test_r_composition_needs_prime( self ):
        with pytest.raises( DomainError ):
            petersson.verify_r_composition( 6, 1, 1, 0 )

    def test_inversion_helper( self ):
        for N in ( 12, 18, 30, 36, 50 ):
            for chi in character_group( N ):
                for L in ( d for d in range( 1, N + 1 ) if N % d == 0 ):
                    M = N // L
                    for Q in ( d for d in range( 1, M + 1 ) if M % d == 0 ):
                        assert petersson.verify_inversion_helper( N, M // Q, Q, L, chi )

    def test_inversion_helper_needs_factorization( self ):
        with pytest.raises( PreconditionError ):
            petersson.verify_inversion_helper( 12, 2, 3, 1 )

    def test_harmonic_factor( self ):
        for N in ( 4, 9, 12, 25, 40 ):
            for chi in character_group( N ):
                for L in ( d for d in range( 1, N + 1 ) if N % d == 0 ):
                    M = N // L
                    if M % chi.conductor() == 0:
                        assert petersson.verify_harmonic_factor( L, M, chi )

    def test_harmonic_factor_needs_conductor( self ):
        with pytest.raises( PreconditionError ):
            petersson.verify_harmonic_factor( 2, 2, odd_character_mod_4() )

    def test_verify_diagonal( self ):
        for N in range( 1, 20 ):
            for m in range( 1, 17 ):
                assert petersson.verify_diagonal( 12, N, None, m )


class TestDeltaGeometric:
    @pytest.mark.parametrize( "kappa, N", [ ( 4, 1 ), ( 6, 1 ), ( 2, 2 ) ] )
    def test_vanishes_on_zero_spaces( self, kappa, N ):
        pairs = [ ( m, n ) for m in ( 1, 3 ) for n in ( 1, 3 ) ]
        for value in petersson.delta_geometric_many( kappa, N, None, pairs ):
            assert value.contains( 0, slack=1e-6 )
            assert value.certified

    def test_recovers_ramanujan_tau( self ):
        f = modforms.oracle_newform( "delta", 10 )
        values = petersson.delta_geometric_many( 12, 1, None, [ ( 1, 1 ), ( 1, 2 ), ( 1, 3 ) ] )
        for m, value in zip( ( 2, 3 ), values[1:] ):
            assert value.value.real / values[0].value.real == pytest.approx( modforms.normalized_eigenvalue( f, m ), abs=1e-6 )

    def test_hermitian( self ):
        chi = odd_character_mod_4()
        left, right = petersson.delta_geometric_many( 3, 4, chi, [ ( 1, 2 ), ( 2, 1 ) ], C=400 )
        assert left.value == pytest.approx( right.value.conjugate(), abs=1e-9 )

    def test_single_matches_many( self ):
        single = petersson.delta_geometric( 12, 1, None, 2, 3, C=500 )
        many = petersson.delta_geometric_many( 12, 1, None, [ ( 1, 1 ), ( 2, 3 ) ], C=500 )[1]
        assert single.value == pytest.approx( many.value, abs=1e-12 )
        assert single.truncation_c == 500

    def test_character_given_at_a_divisor( self ):
        chi = odd_character_mod_4()
        small = petersson.delta_geometric( 3, 8, chi, 1, 1, C=800 )
        induced = petersson.delta_geometric( 3, 8, chi.induce( 8 ), 1, 1, C=800 )
        assert small.value == pytest.approx( induced.value, abs=1e-12 )

    def test_heuristic_is_flagged( self ):
        value = petersson.delta_geometric( 12, 1, None, 1, 1, C=2000, heuristic=True )
        assert not value.certified

    def test_parity_mismatch_refused( self ):
        with pytest.raises( ParityMismatchError ):
            petersson.delta_geometric( 2, 4, odd_character_mod_4(), 1, 1 )
        with pytest.raises( ParityMismatchError ):
            petersson.delta_geometric( 3, 1, None, 1, 1 )

    def test_domain_and_preconditions( self ):
        with pytest.raises( DomainError ):
            petersson.delta_geometric( 1, 1, None, 1, 1 )
        with pytest.raises( DomainError ):
            petersson.delta_geometric( 12, 1, None, 0, 1 )
        with pytest.raises( PreconditionError ):
            petersson.delta_geometric( 3, 4, character_group( 3 )[1], 1, 1 )

    def test_default_truncation( self ):
        assert petersson.default_truncation( 1, 1, 1 ) == 1000
        assert petersson.default_truncation( 3, 1, 1 ) == 3000
        assert petersson.default_truncation( 1, 100, 100 ) == math.ceil( 3200 * math.pi )


class TestNewformAverages:
    def test_harmonic_is_scaled_star( self ):
        star = petersson.delta_star( 12, 11, None, 1, 2, l_max=20 )
        harmonic = petersson.harmonic_average( 12, 11, None, 1, 2, l_max=20 )
        scale = float( petersson.l_local_factor( 11 ) )
        assert harmonic.value == pytest.approx( scale * star.value, rel=1e-9, abs=1e-12 )

    def test_star_at_level_one_is_delta( self ):
        star = petersson.delta_star( 12, 1, None, 1, 2, C=1000 )
        plain = petersson.delta_geometric( 12, 1, None, 1, 2, C=1000 )
        assert star.value == pytest.approx( plain.value, abs=1e-12 )
        assert star.ell_truncation is None

    def test_forward_reassembles_delta( self ):
        forward = petersson.forward_delta( 12, 2, None, 1, 1, l_max=16 )
        plain = petersson.delta_geometric( 12, 2, None, 1, 1 )
        assert abs( forward.value - plain.value ) <= forward.tail_bound + plain.tail_bound + 1e-6

    def test_star_at_prime_level( self, caplog ):
        with caplog.at_level( logging.DEBUG, logger="petersson_python.petersson" ):
            star = petersson.delta_star( 2, 11, None, 1, 2, l_max=10, C=2000 )
        assert math.isfinite( star.value.real ) and math.isfinite( star.value.imag )
        assert star.tail_bound > 0
        assert star.truncation_c >= 2000
        assert any( "delta*" in record.getMessage() for record in caplog.records )
        assert repr( star ).startswith( "DeltaValue(" )

    @pytest.mark.slow
    @pytest.mark.parametrize( "m", [ 2, 3, 5 ] )
    def test_level_eleven_newform_recovered( self, m ):
        f = modforms.oracle_newform( "level11", 20 )
        base = petersson.delta_star( 2, 11, None, 1, 1 ).value.real
        value = petersson.delta_star( 2, 11, None, 1, m ).value.real
        assert value / base == pytest.approx( modforms.normalized_eigenvalue( f, m ), abs=5e-3 )

    @pytest.mark.slow
    @pytest.mark.parametrize( "kappa", [ 2, 4 ] )
    @pytest.mark.parametrize( "N", [ 4, 6, 9, 11 ] )
    def test_forward_round_trip( self, kappa, N ):
        forward = petersson.forward_delta( kappa, N, None, 1, 1, l_max=64 )
        plain = petersson.delta_geometric( kappa, N, None, 1, 1 )
        assert abs( forward.value - plain.value ) <= forward.tail_bound + plain.tail_bound + 1e-6

    def test_coprimality_required( self ):
        with pytest.raises( PreconditionError ):
            petersson.delta_star( 12, 11, None, 11, 1 )
        with pytest.raises( PreconditionError ):
            petersson.harmonic_average( 12, 6, None, 1, 2 )


class TestOffDiagonal:
    def test_majorant_dominates( self ):
        value = petersson.off_diagonal_B( 12, 3, 1, 1, 1, None, 1 )
        majorant = petersson.off_diagonal_majorant( 12, 3, 1, 1, 1, None, 1 )
        assert abs( value.value ) <= majorant + value.tail_bound

    def test_level_must_divide( self ):
        with pytest.raises( PreconditionError ):
            petersson.off_diagonal_B( 12, 3, 1, 2, 6, None, 2 )

    def test_empty_range( self ):
        value = petersson.off_diagonal_B( 12, 0.5, 1, 1, 1, None, 1 )
        assert value.value == 0j

    def test_ils_scale_positive( self ):
        assert petersson.ils_majorant( 12, 1, 1, 1, 2, 3 ) > 0
