from typing import Optional


class TraceEstimate:
    """
    Main term of a trace estimate together with its (ineffective) error envelopes.
    """
    main_term : float
    error_envelope : float
    """
    Smallest of the reported envelopes, O-constant taken to be 1.
    """
    regime : str
    """
    Name of the envelope that attains `error_envelope`.
    """
    envelopes : dict[ str, float ]
    exact : Optional[ int ]
    """
    Exact value when an oracle can supply it.
    """
    ineffective : bool

    def __init__(
        self,
        main_term: float,
        envelopes: dict[ str, float ],
        exact: Optional[ int ] = None,
        extra: Optional[ dict ] = None,
    ) -> None:
        self.main_term = main_term
        self.envelopes = dict( envelopes )
        self.regime = min( self.envelopes, key=lambda k: ( self.envelopes[k], k ) )
        self.error_envelope = self.envelopes[self.regime]
        self.exact = exact
        self.extra = dict( extra or {} )
        self.ineffective = True

    def to_dict( self ) -> dict:
        return {
            "main_term": float( self.main_term ),
            "error_envelope": self.error_envelope,
            "regime": self.regime,
            "envelopes": self.envelopes,
            "exact": self.exact,
            "ineffective": self.ineffective,
            **self.extra,
        }
