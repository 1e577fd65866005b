import asyncio

import pytest

from petersson_python import census, characters, petersson, verify
from petersson_python.errors import DomainError, SuiteError
from petersson_python.types.runConfig import RunConfig

QUICK = RunConfig( profile="quick" )


def single_check_registry( suite, func ):
    registry = verify.SuiteRegistry()
    registry.register( suite, "test identity" )( func )
    return registry


class TestRegistry:
    def test_every_suite_has_checks( self ):
        for suite in verify.SUITES:
            assert verify.REGISTRY.get( suite )

    def test_resolve_all_in_suite_order( self ):
        entries = verify.REGISTRY.resolve( "all" )
        suites = [ suite for suite, _, _, _ in entries ]
        assert suites == sorted( suites, key=verify.SUITES.index )

    def test_unknown_suite( self ):
        with pytest.raises( SuiteError ):
            verify.REGISTRY.resolve( "galois" )
        with pytest.raises( SuiteError ):
            verify.SuiteRegistry().register( "galois", "nothing" )


class TestRunner:
    def test_quick_suite_passes( self ):
        report = verify.verify( "characters", QUICK )
        assert report.passed
        assert report.to_dict()["profile"] == "quick"
        assert all( r.cases > 0 for r in report.results )

    def test_deterministic( self ):
        first = verify.verify( "expsums", QUICK ).to_dict()
        second = verify.verify( "expsums", QUICK ).to_dict()
        assert first == second
        assert first["passed"]

    def test_census_quick( self ):
        assert verify.verify( "census", QUICK ).passed

    def test_traces_quick( self ):
        assert verify.verify( "traces", QUICK ).passed

    def test_events( self ):
        runner = verify.VerifyRunner( QUICK )
        events = []

        @runner.on
        async def suite_start( suite, total ):
            events.append( ( "start", suite, total ) )

        @runner.on
        async def check_done( result ):
            events.append( ( "check", result.name ) )

        @runner.on
        async def suite_done( suite, passed ):
            events.append( ( "done", suite, passed ) )

        runner.run( "characters" )
        assert events[0] == ( "start", "characters", 3 )
        assert [ e[1] for e in events[1:4] ] == [ "orthogonality", "induction", "parity_split" ]
        assert events[-1] == ( "done", "characters", True )

    def test_raising_check_is_reported( self ):
        def broken( config ):
            raise DomainError( "out of range" )

        report = verify.VerifyRunner( QUICK, single_check_registry( "census", broken ) ).run( "census" )
        assert not report.passed
        assert report.failures()[0].detail["error"] == "DomainError: out of range"

    def test_unexpected_exception_is_reported( self ):
        def crashing( config ):
            return 1 / 0

        report = verify.VerifyRunner( QUICK, single_check_registry( "census", crashing ) ).run( "census" )
        assert "ZeroDivisionError" in report.results[0].detail["error"]

    def test_mutated_r_factor_is_caught( self, monkeypatch ):
        original = petersson.r_factor
        monkeypatch.setattr( petersson, "r_factor", lambda M, L, chi=None: -original( M, L, chi ) )
        for check in ( verify.r_composition, verify.inversion_helper, verify.harmonic_factor ):
            report = verify.VerifyRunner( QUICK, single_check_registry( "petersson", check ) ).run( "petersson" )
            assert not report.passed

    def test_unmutated_identities_pass( self ):
        for check in ( verify.r_composition, verify.inversion_helper, verify.harmonic_factor, verify.psi_identity ):
            report = verify.VerifyRunner( QUICK, single_check_registry( "petersson", check ) ).run( "petersson" )
            assert report.passed

    def test_apply_config( self, monkeypatch ):
        monkeypatch.setattr( census, "MAX_Q", census.MAX_Q )
        monkeypatch.setattr( characters, "MAX_MODULUS", characters.MAX_MODULUS )
        verify.apply_config( RunConfig( census_max_q=100, max_modulus=500 ) )
        assert census.MAX_Q == 100
        assert characters.MAX_MODULUS == 500

    def test_async_entry_point( self ):
        report = asyncio.run( verify.VerifyRunner( QUICK ).run_async( "characters" ) )
        assert report.suite == "characters"


@pytest.mark.slow
class TestAcceptance:
    def test_everything_quick_in_parallel( self ):
        report = verify.verify( "all", RunConfig( profile="quick", jobs=2 ) )
        assert report.passed, [ r.to_dict() for r in report.failures() ]

    def test_everything_full( self ):
        report = verify.verify( "all", RunConfig() )
        assert report.passed, [ r.to_dict() for r in report.failures() ]
