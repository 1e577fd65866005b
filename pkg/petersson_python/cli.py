"""
The `petersson` command line.
"""
import argparse
import csv
import io
import json
import logging
import sys
from fractions import Fraction
from typing import Any, Optional, Sequence

from . import census, characters, expsums, modforms, petersson, traces, verify
from .errors import PeterssonError
from .types.runConfig import RunConfig
from .utils.convert import convert_value, to_jsonable

logger = logging.getLogger(__name__)

__all__ = [ "main", "build_parser", "REQUIRED_KEYS" ]

SCHEMA = "petersson_python/{}/v1"

REQUIRED_KEYS: dict[ str, set[ str ] ] = {
    "characters": { "modulus", "characters" },
    "kloosterman": { "value", "weil_bound", "exact" },
    "delta": { "value", "tail_bound", "certified", "truncation_c" },
    "trace": { "main_term", "error_envelope", "envelopes", "ineffective", "exact" },
    "x0": { "main_term", "error_envelope", "exact", "ineffective" },
    "census": { "q" },
    "moments": { "q", "moments" },
    "oracle": { "form", "eigenvalues" },
    "verify": { "suite", "passed", "checks" },
    "defaults": { "trunc", "precision", "tolerance", "seed" },
}

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


def _add_global_flags( parser: argparse.ArgumentParser ) -> None:
    group = parser.add_argument_group( "run configuration" )
    group.add_argument( "--config", help="JSON file with RunConfig fields; flags override it" )
    group.add_argument( "--trunc", type=int, help="Kloosterman truncation C (0: per-call default)" )
    group.add_argument( "--precision", type=int, help="q-expansion precision P (default 2000)" )
    group.add_argument( "--tolerance", type=float, help="identity tolerance (default 1e-9)" )
    group.add_argument( "--jobs", type=int, help="worker processes for verify (default 1)" )
    group.add_argument( "--seed", type=int, help="seed of the sampled grids (default 7)" )
    group.add_argument( "--format", choices=RunConfig.FORMATS, help="output format (default json)" )
    group.add_argument( "--profile", choices=RunConfig.PROFILES, help="verification grid size (default full)" )
    group.add_argument( "--verbose", action="store_true", help="debug logging" )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="petersson",
        description="Kloosterman sums, the Petersson formula and its newform inversion, Hecke trace "
                    "main terms and elliptic curve censuses.",
    )
    _add_global_flags( parser )
    commands = parser.add_subparsers( dest="command", required=True )

    p = commands.add_parser( "characters", help="list the Dirichlet characters mod N" )
    p.add_argument( "--modulus", type=int, required=True )
    p.add_argument( "--primitive", action="store_true", help="only primitive characters" )

    p = commands.add_parser( "kloosterman", help="one twisted Kloosterman sum S_chi(a, b, c)" )
    p.add_argument( "--a", type=int, required=True )
    p.add_argument( "--b", type=int, required=True )
    p.add_argument( "--c", type=int, required=True )
    p.add_argument( "--chi", type=int, default=0, help="character index mod --chi-modulus (default trivial)" )
    p.add_argument( "--chi-modulus", type=int, help="modulus of the character (default c)" )

    p = commands.add_parser( "delta", help="one Petersson value Delta_{kappa,N,chi}(m, n)" )
    p.add_argument( "--kappa", type=int, required=True )
    p.add_argument( "--level", type=int, required=True )
    p.add_argument( "--m", type=int, required=True )
    p.add_argument( "--n", type=int, required=True )
    p.add_argument( "--chi", type=int, default=0, help="character index mod N (default trivial)" )
    kind = p.add_mutually_exclusive_group()
    kind.add_argument( "--star", action="store_true", help="newform average Delta*" )
    kind.add_argument( "--harmonic", action="store_true", help="L(1, Ad^2)-weighted newform average" )
    p.add_argument( "--heuristic", action="store_true", help="heuristic divisor bound in the tail" )

    p = commands.add_parser( "trace", help="main term and envelopes of tr T_m on S_kappa(N, chi)" )
    p.add_argument( "--kappa", type=int, required=True )
    p.add_argument( "--level", type=int, required=True )
    p.add_argument( "--m", type=int, required=True )
    p.add_argument( "--chi", type=int, default=0 )

    p = commands.add_parser( "x0", help="#X_0(N)(F_{p^v}): prediction, envelopes and exact count" )
    p.add_argument( "--level", type=int, required=True )
    p.add_argument( "--p", type=int, required=True )
    p.add_argument( "--v", type=int, default=1 )
    p.add_argument( "--square", action="store_true", help="regime of the p^2 refinement" )

    p = commands.add_parser( "census", help="weighted census of elliptic curves over F_q" )
    p.add_argument( "--q", type=int, required=True )
    p.add_argument( "--j", type=int, help="Chebyshev moment degree" )
    p.add_argument( "--n1", type=int, default=1 )
    p.add_argument( "--n2", type=int, default=1 )
    p.add_argument( "--dump", action="store_true", help="every isomorphism class" )

    p = commands.add_parser( "moments", help="census moments E_q(U_j Phi_A)" )
    p.add_argument( "--q", type=int, required=True )
    p.add_argument( "--j", type=int, default=0 )
    p.add_argument( "--n1", type=int, help="default: the standard groups (1,1), (2,1), (3,1), (2,2)" )
    p.add_argument( "--n2", type=int, default=1 )

    p = commands.add_parser( "oracle", help="Hecke eigenvalues and the Petersson norm of an oracle form" )
    p.add_argument( "--form", required=True, choices=sorted( modforms.ORACLE_FORMS ) )
    p.add_argument( "--m", type=int, nargs="+", default=[ 2, 3, 4, 5, 7, 9 ] )
    p.add_argument( "--norm", action="store_true", help="also the Petersson norm" )

    p = commands.add_parser( "verify", help="run verification suites" )
    p.add_argument( "suite", nargs="?", default="all", choices=( "all", ) + verify.SUITES )

    commands.add_parser( "defaults", help="dump the default configuration" )
    return parser


def load_config( args: argparse.Namespace ) -> RunConfig:
    config = RunConfig.from_file( args.config ) if args.config else RunConfig()
    config = config.replace(
        precision=args.precision,
        tolerance=config.tolerance.scaled( args.tolerance ) if args.tolerance is not None else None,
        jobs=args.jobs,
        seed=args.seed,
        format=args.format,
        profile=args.profile,
    )
    if args.trunc is not None:
        config.trunc = convert_value( args.trunc, 0, None )
        config.validate()
    return config


def _character( modulus: int, index: int ) -> characters.DirichletCharacter:
    group = characters.character_group( modulus )
    try:
        return group[index]
    except IndexError as e:
        raise PeterssonError( f"{ e } (there are { len( group ) } characters)" ) from e


def _cmd_characters( args, config: RunConfig ) -> dict:
    group = characters.character_group( args.modulus )
    rows = [ chi.to_dict() for chi in group if not args.primitive or chi.is_primitive() ]
    return { "modulus": args.modulus, "characters": rows }


def _cmd_kloosterman( args, config: RunConfig ) -> dict:
    chi = _character( args.chi_modulus or args.c, args.chi )
    value = expsums.twisted_kloosterman( chi, args.a, args.b, args.c )
    return {
        "a": args.a, "b": args.b, "c": args.c, "character": chi.to_dict(),
        "value": value, "weil_bound": expsums.weil_bound( chi, args.a, args.b, args.c ), "exact": False,
    }


def _cmd_delta( args, config: RunConfig ) -> dict:
    chi = _character( args.level, args.chi )
    if args.star:
        value = petersson.delta_star( args.kappa, args.level, chi, args.m, args.n, config.l_max, config.trunc )
    elif args.harmonic:
        value = petersson.harmonic_average( args.kappa, args.level, chi, args.m, args.n, config.l_max, config.trunc )
    else:
        value = petersson.delta_geometric(
            args.kappa, args.level, chi, args.m, args.n, config.trunc, args.heuristic or config.heuristic )
    kind = "star" if args.star else "harmonic" if args.harmonic else "geometric"
    return { "kappa": args.kappa, "level": args.level, "m": args.m, "n": args.n, "kind": kind, **value.to_dict() }


def _cmd_trace( args, config: RunConfig ) -> dict:
    chi = _character( args.level, args.chi ) if args.chi else None
    estimate = traces.error_envelopes( args.kappa, args.level, chi, args.m )
    result = estimate.to_dict()
    if chi is None and ( args.kappa, args.level ) in traces.SPACES:
        result["exact"] = traces.exact_trace_small( args.kappa, args.level, args.m )
    result["main_term_exact"] = traces.main_term_mt1( args.kappa, args.level, chi, args.m )
    return result


def _cmd_x0( args, config: RunConfig ) -> dict:
    if args.square:
        estimate = traces.x0_square_regime( args.level, args.p )
        return { "level": args.level, "p": args.p, "v": 2, **estimate.to_dict(),
                 "exact": traces.x0_exact( args.level, args.p, 2 ) }
    return { "level": args.level, "p": args.p, "v": args.v, **traces.x0_predict( args.level, args.p, args.v ).to_dict() }


def _cmd_census( args, config: RunConfig ) -> Any:
    if args.dump:
        return { "q": args.q, "records": [ r.to_dict() for r in census.census( args.q ) ] }
    if args.j is not None:
        return census.moment( args.q, args.j, ( args.n1, args.n2 ), config.mp_dps ).to_dict()
    records = census.census( args.q )
    return {
        "q": args.q,
        "classes": len( records ),
        "mass": sum( ( Fraction( 1, r.aut ) for r in records ), start=Fraction( 0 ) ),
        "cyclic": sum( 1 for r in records if r.n2 == 1 ),
        "supersingular": sum( 1 for r in records if r.t == 0 ),
    }


def _cmd_moments( args, config: RunConfig ) -> dict:
    groups = [ ( args.n1, args.n2 ) ] if args.n1 is not None else list( verify.MOMENT_GROUPS )
    results = [ census.moment( args.q, args.j, A, config.mp_dps ).to_dict() for A in groups ]
    return { "q": args.q, "moments": results }


def _cmd_oracle( args, config: RunConfig ) -> dict:
    P = max( max( args.m ), config.norm_x if args.norm else 0, 50 )
    f = modforms.oracle_newform( args.form, P )
    eigenvalues = [
        { "m": m, "a": modforms.coefficient( f, m ), "lambda": modforms.normalized_eigenvalue( f, m ) }
        for m in args.m
    ]
    result = { "form": args.form, "level": f.level, "weight": f.weight, "eigenvalues": eigenvalues }
    if args.norm:
        result["norm"] = modforms.petersson_norm( f, config.norm_x ).to_dict()
    return result


def _cmd_verify( args, config: RunConfig ) -> dict:
    return verify.VerifyRunner( config ).run( args.suite ).to_dict()


def _cmd_defaults( args, config: RunConfig ) -> dict:
    return config.to_dict()


COMMANDS = {
    "characters": _cmd_characters,
    "kloosterman": _cmd_kloosterman,
    "delta": _cmd_delta,
    "trace": _cmd_trace,
    "x0": _cmd_x0,
    "census": _cmd_census,
    "moments": _cmd_moments,
    "oracle": _cmd_oracle,
    "verify": _cmd_verify,
    "defaults": _cmd_defaults,
}

# command -> the list that becomes CSV rows
CSV_ROWS = {
    "characters": "characters",
    "census": "records",
    "moments": "moments",
    "verify": "checks",
}


def make_payload( command: str, result: dict ) -> dict:
    """
    JSON-ready payload with its schema tag, checked against REQUIRED_KEYS.
    """
    payload = to_jsonable( result )
    payload["schema"] = SCHEMA.format( command )
    missing = REQUIRED_KEYS[command] - set( payload )
    if missing:
        raise PeterssonError( f"{ command } output lacks { ', '.join( sorted( missing ) ) }" )
    return payload


def render_csv( command: str, payload: dict ) -> str:
    key = CSV_ROWS.get( command )
    if key is None or key not in payload:
        raise PeterssonError( f"csv output is available for { ', '.join( sorted( CSV_ROWS ) ) } (census with --dump)" )
    rows = payload[key]
    fieldnames = list( census.CurveRecord.CSV_FIELDS ) if command == "census" else sorted( rows[0] ) if rows else []
    buffer = io.StringIO()
    writer = csv.DictWriter( buffer, fieldnames=fieldnames, extrasaction="ignore", lineterminator="\n" )
    writer.writeheader()
    for row in rows:
        writer.writerow( { k: json.dumps( v, sort_keys=True ) if isinstance( v, ( dict, list ) ) else v
                           for k, v in row.items() } )
    return buffer.getvalue()


def main( argv: Optional[ Sequence[ str ] ] = None ) -> int:
    parser = build_parser()
    args = parser.parse_args( argv )
    logging.basicConfig( level=logging.DEBUG if args.verbose else logging.INFO )
    try:
        config = load_config( args )
        verify.apply_config( config )
        payload = make_payload( args.command, COMMANDS[args.command]( args, config ) )
        if config.format == "csv":
            sys.stdout.write( render_csv( args.command, payload ) )
        else:
            print( json.dumps( payload, sort_keys=True, indent=2 ) )
    except ( PeterssonError, OSError, ValueError ) as e:
        logger.error( f"[CLI] { type( e ).__name__ }: { e }" )
        print( f"petersson { args.command }: { e }", file=sys.stderr )
        return EXIT_USAGE
    if args.command == "verify" and not payload["passed"]:
        return EXIT_FAILURE
    return EXIT_OK


def main_exit() -> None:
    sys.exit( main() )
