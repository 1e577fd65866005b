import asyncio
import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest

from petersson_python.emitter import ReportEmitter
from petersson_python.types.base.map import Map
from petersson_python.types.records.delta import DeltaValue
from petersson_python.utils.convert import convert_value, finite_or_none, to_jsonable


class TestConvert:
    def test_convert_value( self ):
        assert convert_value( 0, 0, None ) is None
        assert convert_value( 5, 0, None ) == 5
        assert convert_value( None, None, 3 ) == 3

    def test_finite_or_none( self ):
        assert finite_or_none( 1.5 ) == 1.5
        assert finite_or_none( math.inf ) is None
        assert finite_or_none( math.nan ) is None

    def test_to_jsonable( self ):
        value = {
            "fraction": Fraction( 2, 3 ),
            "complex": 1 + 2j,
            "numpy": np.array( [ np.int64( 3 ), np.int64( 4 ) ] ),
            "mpf": mpmath.mpf( 1 ) / 4,
            "nested": ( True, None, float( "inf" ) ),
        }
        assert to_jsonable( value ) == {
            "fraction": "2/3",
            "complex": [ 1.0, 2.0 ],
            "numpy": [ 3, 4 ],
            "mpf": "0.25",
            "nested": [ True, None, None ],
        }

    def test_records_use_to_dict( self ):
        class Record:
            def to_dict( self ):
                return { "x": Fraction( 1, 2 ) }

        assert to_jsonable( [ Record() ] ) == [ { "x": "1/2" } ]

    def test_unknown_type( self ):
        with pytest.raises( TypeError ):
            to_jsonable( object() )


class TestDeltaValueRecord:
    def test_repr( self ):
        text = repr( DeltaValue( 1 + 0j, 0.1, 10, None ) )
        assert text == "DeltaValue(1+0j +/- 0.1, C=10)"

    def test_contains( self ):
        value = DeltaValue( 1 + 0j, 0.1, 10 )
        assert value.contains( 1.05 )
        assert not value.contains( 1.2 )
        assert value.contains( 1.2, slack=0.2 )


class TestMap:
    def test_set_safe( self ):
        store = Map[ int ]()
        assert store.set_safe( "a", 1 )
        assert not store.set_safe( "a", 2 )
        assert store.get( "a" ) == 1
        assert store.get( "b" ) is None

    def test_get_or_build( self ):
        store = Map[ list ]()
        built = store.get_or_build( "k", list )
        assert store.get_or_build( "k", lambda: [ 1 ] ) is built


class TestReportEmitter:
    def test_listeners_run_in_order( self ):
        emitter = ReportEmitter()
        seen = []

        @emitter.on
        async def check_done( value ):
            seen.append( ( "first", value ) )

        async def second( value ):
            seen.append( ( "second", value ) )
        second.__name__ = "check_done"
        emitter.on( second )

        asyncio.run( emitter.emit( "check_done", 1 ) )
        assert seen == [ ( "first", 1 ), ( "second", 1 ) ]
        assert len( emitter.listeners( "check_done" ) ) == 2

    def test_failing_listener_is_contained( self ):
        emitter = ReportEmitter()
        seen = []

        @emitter.on
        async def suite_done( suite, passed ):
            raise RuntimeError( "listener bug" )

        async def other( suite, passed ):
            seen.append( suite )
        other.__name__ = "suite_done"
        emitter.on( other )

        asyncio.run( emitter.emit( "suite_done", "census", True ) )
        assert seen == [ "census" ]

    def test_requires_coroutines( self ):
        emitter = ReportEmitter()
        with pytest.raises( TypeError ):
            emitter.on( lambda result: None )

    def test_unknown_event_is_silent( self ):
        asyncio.run( ReportEmitter().emit( "nothing" ) )
