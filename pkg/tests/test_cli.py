import json

import pytest

from petersson_python import cli, expsums
from petersson_python.errors import PeterssonError


def run( capsys, *argv ):
    code = cli.main( list( argv ) )
    out = capsys.readouterr().out
    return code, out


def run_json( capsys, *argv ):
    code, out = run( capsys, *argv )
    assert code == cli.EXIT_OK
    return json.loads( out )


class TestCommands:
    def test_defaults( self, capsys ):
        payload = run_json( capsys, "defaults" )
        assert payload["schema"] == "petersson_python/defaults/v1"
        assert payload["precision"] == 2000
        assert payload["seed"] == 7
        assert payload["trunc"] is None
        assert payload["tolerance"]["identity"] == 1e-9

    def test_global_flags_override( self, capsys ):
        payload = run_json( capsys, "--seed", "3", "--tolerance", "1e-6", "--trunc", "500", "defaults" )
        assert payload["seed"] == 3
        assert payload["tolerance"]["identity"] == 1e-6
        assert payload["trunc"] == 500

    def test_zero_truncation_means_default( self, capsys ):
        assert run_json( capsys, "--trunc", "0", "defaults" )["trunc"] is None

    def test_characters( self, capsys ):
        assert len( run_json( capsys, "characters", "--modulus", "8" )["characters"] ) == 4
        assert len( run_json( capsys, "characters", "--modulus", "8", "--primitive" )["characters"] ) == 2

    def test_kloosterman( self, capsys ):
        payload = run_json( capsys, "kloosterman", "--a", "1", "--b", "1", "--c", "7" )
        assert payload["value"][0] == pytest.approx( expsums.kloosterman( 1, 1, 7 ).real )
        assert abs( payload["value"][0] ) <= payload["weil_bound"]

    def test_delta( self, capsys ):
        payload = run_json( capsys, "--trunc", "500", "delta", "--kappa", "12", "--level", "1", "--m", "1", "--n", "2" )
        assert payload["truncation_c"] == 500
        assert payload["kind"] == "geometric"
        assert payload["certified"]

    def test_trace( self, capsys ):
        payload = run_json( capsys, "trace", "--kappa", "12", "--level", "1", "--m", "4" )
        assert payload["main_term_exact"] == "2816/3"
        assert payload["exact"] == "-1472"
        assert payload["ineffective"]

    def test_x0( self, capsys ):
        payload = run_json( capsys, "x0", "--level", "11", "--p", "3" )
        assert payload["exact"] == 5
        assert payload["main_term"] == 3.0
        square = run_json( capsys, "x0", "--level", "11", "--p", "13", "--square" )
        assert square["regime"] == "full_main"
        assert square["v"] == 2

    def test_census_summary( self, capsys ):
        payload = run_json( capsys, "census", "--q", "5" )
        assert payload["classes"] == 12
        assert payload["mass"] == "5"

    def test_moments( self, capsys ):
        payload = run_json( capsys, "moments", "--q", "101", "--j", "0", "--n1", "1" )
        assert payload["moments"][0]["expectation"] == "1"
        assert len( run_json( capsys, "moments", "--q", "101" )["moments"] ) == 4

    def test_oracle( self, capsys ):
        payload = run_json( capsys, "oracle", "--form", "delta", "--m", "2", "3" )
        assert [ e["a"] for e in payload["eigenvalues"] ] == [ -24, 252 ]
        assert payload["weight"] == 12

    def test_verify( self, capsys ):
        payload = run_json( capsys, "--profile", "quick", "verify", "characters" )
        assert payload["schema"] == "petersson_python/verify/v1"
        assert payload["passed"]
        assert { c["name"] for c in payload["checks"] } == { "orthogonality", "induction", "parity_split" }


class TestFormatsAndErrors:
    def test_csv_census( self, capsys ):
        code, out = run( capsys, "--format", "csv", "census", "--q", "5", "--dump" )
        assert code == cli.EXIT_OK
        lines = out.splitlines()
        assert lines[0] == "q,a,b,t,aut,n1,n2"
        assert len( lines ) == 13

    def test_csv_unavailable( self, capsys ):
        code, _ = run( capsys, "--format", "csv", "defaults" )
        assert code == cli.EXIT_USAGE

    def test_parity_mismatch_is_a_usage_error( self, capsys ):
        code, _ = run( capsys, "delta", "--kappa", "2", "--level", "4", "--m", "1", "--n", "1", "--chi", "1" )
        assert code == cli.EXIT_USAGE

    def test_domain_errors( self, capsys ):
        assert run( capsys, "census", "--q", "4" )[0] == cli.EXIT_USAGE
        assert run( capsys, "characters", "--modulus", "0" )[0] == cli.EXIT_USAGE
        assert run( capsys, "--trunc", "-5", "defaults" )[0] == cli.EXIT_USAGE

    def test_bad_character_index( self, capsys ):
        code, _ = run( capsys, "kloosterman", "--a", "1", "--b", "1", "--c", "5", "--chi", "9" )
        assert code == cli.EXIT_USAGE

    def test_argparse_errors_exit( self ):
        with pytest.raises( SystemExit ):
            cli.main( [ "census" ] )
        with pytest.raises( SystemExit ):
            cli.main( [ "verify", "nonsense" ] )

    def test_config_file( self, capsys, tmp_path ):
        path = tmp_path / "run.json"
        path.write_text( json.dumps( { "seed": 11, "profile": "quick", "tolerance": 1e-7 } ) )
        payload = run_json( capsys, "--config", str( path ), "defaults" )
        assert payload["seed"] == 11
        assert payload["profile"] == "quick"
        assert payload["tolerance"]["identity"] == 1e-7
        overridden = run_json( capsys, "--config", str( path ), "--seed", "2", "defaults" )
        assert overridden["seed"] == 2

    def test_config_file_errors( self, capsys, tmp_path ):
        path = tmp_path / "bad.json"
        path.write_text( json.dumps( { "colour": "blue" } ) )
        assert run( capsys, "--config", str( path ), "defaults" )[0] == cli.EXIT_USAGE
        assert run( capsys, "--config", str( tmp_path / "missing.json" ), "defaults" )[0] == cli.EXIT_USAGE

    def test_payload_keys_are_checked( self ):
        with pytest.raises( PeterssonError ):
            cli.make_payload( "census", { "classes": 3 } )
        assert cli.make_payload( "census", { "q": 5 } )["schema"] == "petersson_python/census/v1"
