from typing import Any


class CheckResult:
    """
    Outcome of one verification check.
    """
    suite : str
    name : str
    identity : str
    """
    Which identity or property the check exercises.
    """
    passed : bool
    cases : int
    """
    Number of individual cases evaluated.
    """
    detail : dict[ str, Any ]

    def __init__( self, suite: str, name: str, identity: str, passed: bool, cases: int = 0, detail: dict = None ) -> None:
        self.suite = suite
        self.name = name
        self.identity = identity
        self.passed = bool( passed )
        self.cases = int( cases )
        self.detail = dict( detail or {} )

    def __repr__( self ) -> str:
        return f"CheckResult({ self.suite }/{ self.name }: { 'pass' if self.passed else 'FAIL' }, cases={ self.cases })"

    def to_dict( self ) -> dict:
        return {
            "suite": self.suite,
            "name": self.name,
            "identity": self.identity,
            "passed": self.passed,
            "cases": self.cases,
            "detail": self.detail,
        }


class VerifyReport:
    """
    Results of one `verify` run in registry order. Carries no timings, so equal
    configurations give identical reports.
    """
    suite : str
    profile : str
    seed : int
    results : list[ CheckResult ]

    SCHEMA = "petersson_python/verify/v1"

    def __init__( self, suite: str, profile: str, seed: int, results: list[ CheckResult ] ) -> None:
        self.suite = suite
        self.profile = profile
        self.seed = seed
        self.results = list( results )

    @property
    def passed( self ) -> bool:
        return all( r.passed for r in self.results )

    def failures( self ) -> list[ CheckResult ]:
        return [ r for r in self.results if not r.passed ]

    def to_dict( self ) -> dict:
        return {
            "schema": self.SCHEMA,
            "suite": self.suite,
            "profile": self.profile,
            "seed": self.seed,
            "passed": self.passed,
            "checks": [ r.to_dict() for r in self.results ],
        }
