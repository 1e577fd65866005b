import json

import pytest

from petersson_python.errors import DomainError
from petersson_python.types.runConfig import RunConfig, ToleranceProfile


class TestToleranceProfile:
    def test_defaults( self ):
        tolerance = ToleranceProfile()
        assert tolerance.identity == 1e-9
        assert tolerance.newform_ratio == 5e-3
        assert tolerance.tau_ratio == 1e-6

    def test_scaled_keeps_the_rest( self ):
        tolerance = ToleranceProfile().scaled( 1e-5 )
        assert tolerance.identity == 1e-5
        assert tolerance.xi == 1e-10


class TestRunConfig:
    def test_defaults( self ):
        config = RunConfig()
        assert config.trunc is None
        assert ( config.precision, config.l_max, config.seed, config.jobs ) == ( 2000, 1000, 7, 1 )
        assert not config.quick
        assert not config.heuristic

    def test_replace_ignores_none( self ):
        config = RunConfig( seed=3 ).replace( seed=None, profile="quick", divisor_bound="heuristic" )
        assert config.seed == 3
        assert config.quick
        assert config.heuristic

    @pytest.mark.parametrize( "changes", [
        { "profile": "medium" }, { "format": "xml" }, { "jobs": 0 }, { "trunc": 0 },
        { "precision": -1 }, { "divisor_bound": "loose" },
    ] )
    def test_validation( self, changes ):
        with pytest.raises( DomainError ):
            RunConfig( **changes )

    def test_from_dict( self ):
        config = RunConfig.from_dict( { "seed": 5, "tolerance": { "identity": 1e-7 } } )
        assert config.seed == 5
        assert config.tolerance.identity == 1e-7
        assert config.tolerance.xi == 1e-10
        assert RunConfig.from_dict( { "tolerance": 1e-4 } ).tolerance.identity == 1e-4

    def test_unknown_keys( self ):
        with pytest.raises( DomainError ):
            RunConfig.from_dict( { "sede": 5 } )

    def test_to_dict_reloads( self, tmp_path ):
        config = RunConfig( trunc=5000, profile="quick", jobs=2 )
        path = tmp_path / "config.json"
        path.write_text( json.dumps( config.to_dict() ) )
        assert RunConfig.from_file( str( path ) ).to_dict() == config.to_dict()
