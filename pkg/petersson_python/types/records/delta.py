from typing import Optional


class DeltaValue:
    """
    A Petersson-side value with a rigorous bound on its distance to the infinite sum.
    """
    value : complex
    tail_bound : float
    """
    Upper bound for |value - true value|.
    """
    truncation_c : int
    ell_truncation : Optional[ int ]
    """
    Largest ell used in the ell | L^oo sums, None when no such sum occurs.
    """
    certified : bool
    """
    False when the heuristic divisor bound was used for the tail.
    """

    def __init__(
        self,
        value: complex,
        tail_bound: float,
        truncation_c: int,
        ell_truncation: Optional[ int ] = None,
        certified: bool = True,
    ) -> None:
        self.value = complex( value )
        self.tail_bound = float( tail_bound )
        self.truncation_c = int( truncation_c )
        self.ell_truncation = ell_truncation
        self.certified = certified

    def contains( self, target: complex, slack: float = 0.0 ) -> bool:
        return abs( self.value - target ) <= self.tail_bound + slack

    def __repr__( self ) -> str:
        return f"DeltaValue({ self.value:.12g} +/- { self.tail_bound:.3g}, C={ self.truncation_c })"

    def to_dict( self ) -> dict:
        return {
            "value": [ self.value.real, self.value.imag ],
            "tail_bound": self.tail_bound,
            "truncation_c": self.truncation_c,
            "ell_truncation": self.ell_truncation,
            "certified": self.certified,
        }
