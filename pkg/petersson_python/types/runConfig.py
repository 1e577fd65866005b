import json
from typing import Any, Optional

from ..errors import DomainError


class ToleranceProfile:
    """
    Every acceptance tolerance in one place.
    """
    identity : float
    closed_vs_brute : float
    """
    Allowed discrepancy per summed term between closed forms and brute force.
    """
    bessel_rel : float
    delta_slack : float
    """
    Added to the certified tail bound when comparing a Delta value to its target.
    """
    newform_ratio : float
    tau_ratio : float
    norm_closure : float
    xi : float
    moment_scale : float
    """
    Allowed census moment deviation in units of q^(-1/2).
    """

    def __init__(
        self,
        identity: float = 1e-9,
        closed_vs_brute: float = 1e-8,
        bessel_rel: float = 1e-10,
        delta_slack: float = 1e-6,
        newform_ratio: float = 5e-3,
        tau_ratio: float = 1e-6,
        norm_closure: float = 0.02,
        xi: float = 1e-10,
        moment_scale: float = 10.0,
    ) -> None:
        self.identity = identity
        self.closed_vs_brute = closed_vs_brute
        self.bessel_rel = bessel_rel
        self.delta_slack = delta_slack
        self.newform_ratio = newform_ratio
        self.tau_ratio = tau_ratio
        self.norm_closure = norm_closure
        self.xi = xi
        self.moment_scale = moment_scale

    def scaled( self, identity: float ) -> "ToleranceProfile":
        """
        Copy with `identity` replaced; the other tolerances keep their absolute values.
        """
        values = self.to_dict()
        values["identity"] = identity
        return ToleranceProfile( **values )

    def to_dict( self ) -> dict:
        return {
            "identity": self.identity,
            "closed_vs_brute": self.closed_vs_brute,
            "bessel_rel": self.bessel_rel,
            "delta_slack": self.delta_slack,
            "newform_ratio": self.newform_ratio,
            "tau_ratio": self.tau_ratio,
            "norm_closure": self.norm_closure,
            "xi": self.xi,
            "moment_scale": self.moment_scale,
        }


class RunConfig:
    """
    Settings of one run: truncations, precisions, tolerances, parallelism and output.
    """
    trunc : Optional[ int ]
    """
    Kloosterman truncation C; None means the per-call default.
    """
    precision : int
    """
    q-expansion precision P of the oracle forms.
    """
    l_max : int
    tolerance : ToleranceProfile
    profile : str
    """
    `quick` runs the reduced grids, `full` the acceptance-scale ones.
    """
    jobs : int
    seed : int
    format : str
    divisor_bound : str
    """
    `certified` or `heuristic` divisor bound in the Petersson tail.
    """
    max_modulus : int
    census_max_q : int
    mp_dps : int
    norm_x : int

    PROFILES = ( "quick", "full" )
    FORMATS = ( "json", "csv" )
    DIVISOR_BOUNDS = ( "certified", "heuristic" )

    def __init__(
        self,
        trunc: Optional[ int ] = None,
        precision: int = 2000,
        l_max: int = 1000,
        tolerance: Optional[ ToleranceProfile ] = None,
        profile: str = "full",
        jobs: int = 1,
        seed: int = 7,
        format: str = "json",
        divisor_bound: str = "certified",
        max_modulus: int = 10 ** 5,
        census_max_q: int = 2000,
        mp_dps: int = 30,
        norm_x: int = 4000,
    ) -> None:
        self.trunc = trunc
        self.precision = precision
        self.l_max = l_max
        self.tolerance = tolerance if tolerance is not None else ToleranceProfile()
        self.profile = profile
        self.jobs = jobs
        self.seed = seed
        self.format = format
        self.divisor_bound = divisor_bound
        self.max_modulus = max_modulus
        self.census_max_q = census_max_q
        self.mp_dps = mp_dps
        self.norm_x = norm_x
        self.validate()

    def validate( self ) -> None:
        if self.profile not in self.PROFILES:
            raise DomainError( f"profile must be one of { ', '.join( self.PROFILES ) }, got { self.profile!r}" )
        if self.format not in self.FORMATS:
            raise DomainError( f"format must be one of { ', '.join( self.FORMATS ) }, got { self.format!r}" )
        if self.divisor_bound not in self.DIVISOR_BOUNDS:
            raise DomainError( f"divisor_bound must be certified or heuristic, got { self.divisor_bound!r}" )
        if self.jobs < 1:
            raise DomainError( f"jobs must be at least 1, got { self.jobs }" )
        if self.trunc is not None and self.trunc < 1:
            raise DomainError( f"trunc must be positive, got { self.trunc }" )
        for name in ( "precision", "l_max", "max_modulus", "census_max_q", "mp_dps", "norm_x" ):
            if getattr( self, name ) < 1:
                raise DomainError( f"{ name } must be positive, got { getattr( self, name ) }" )

    @property
    def heuristic( self ) -> bool:
        return self.divisor_bound == "heuristic"

    @property
    def quick( self ) -> bool:
        return self.profile == "quick"

    def replace( self, **changes: Any ) -> "RunConfig":
        """
        Copy with the given fields replaced; None values leave a field unchanged.
        """
        values = self._fields()
        values.update( { k: v for k, v in changes.items() if v is not None } )
        return RunConfig( **values )

    def _fields( self ) -> dict:
        return {
            "trunc": self.trunc,
            "precision": self.precision,
            "l_max": self.l_max,
            "tolerance": self.tolerance,
            "profile": self.profile,
            "jobs": self.jobs,
            "seed": self.seed,
            "format": self.format,
            "divisor_bound": self.divisor_bound,
            "max_modulus": self.max_modulus,
            "census_max_q": self.census_max_q,
            "mp_dps": self.mp_dps,
            "norm_x": self.norm_x,
        }

    @classmethod
    def from_dict( cls, data: dict ) -> "RunConfig":
        data = dict( data )
        unknown = set( data ) - set( cls()._fields() )
        if unknown:
            raise DomainError( f"unknown configuration keys: { ', '.join( sorted( unknown ) ) }" )
        tolerance = data.get( "tolerance" )
        if isinstance( tolerance, dict ):
            data["tolerance"] = ToleranceProfile( **tolerance )
        elif isinstance( tolerance, ( int, float ) ):
            data["tolerance"] = ToleranceProfile().scaled( float( tolerance ) )
        return cls( **data )

    @classmethod
    def from_file( cls, path: str ) -> "RunConfig":
        with open( path, encoding="utf-8" ) as f:
            return cls.from_dict( json.load( f ) )

    def to_dict( self ) -> dict:
        values = self._fields()
        values["tolerance"] = self.tolerance.to_dict()
        return values
