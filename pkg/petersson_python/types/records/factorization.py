from typing import Iterator


class Factorization:
    """
    A positive integer together with its prime-power decomposition.
    """
    n : int
    """
    The factored integer.
    """
    factors : tuple[ tuple[ int, int ], ... ]
    """
    (prime, exponent) pairs, primes strictly increasing.
    """

    def __init__( self, n: int, factors: list[ tuple[ int, int ] ] ) -> None:
        self.n = n
        self.factors = tuple( ( int( p ), int( e ) ) for p, e in factors )

    def primes( self ) -> list[ int ]:
        return [ p for p, _ in self.factors ]

    def exponent( self, p: int ) -> int:
        """
        v_p(n); zero when p does not divide n.
        """
        for q, e in self.factors:
            if q == p:
                return e
        return 0

    def prime_powers( self ) -> list[ int ]:
        return [ p ** e for p, e in self.factors ]

    def __iter__( self ) -> Iterator[ tuple[ int, int ] ]:
        return iter( self.factors )

    def __len__( self ) -> int:
        return len( self.factors )

    def __eq__( self, other: object ) -> bool:
        if isinstance( other, Factorization ):
            return self.n == other.n and self.factors == other.factors
        if isinstance( other, dict ):
            return dict( self.factors ) == other
        return NotImplemented

    def __hash__( self ) -> int:
        return hash( ( self.n, self.factors ) )

    def __repr__( self ) -> str:
        return f"Factorization({ self.n }, { list( self.factors ) })"

    def to_dict( self ) -> dict:
        return { "n": self.n, "factors": [ list( f ) for f in self.factors ] }
