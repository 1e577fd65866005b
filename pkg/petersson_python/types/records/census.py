from fractions import Fraction
from typing import Union

import mpmath


class CurveRecord:
    """
    One F_q-isomorphism class of elliptic curves y^2 = x^3 + a x + b.
    """
    q : int
    a : int
    b : int
    t : int
    """
    Trace of Frobenius q + 1 - #E(F_q).
    """
    aut : int
    """
    Number of automorphisms over F_q (2, 4 or 6).
    """
    n1 : int
    n2 : int
    """
    Invariant factors, E(F_q) = Z/n1 x Z/n2 with n2 | n1.
    """

    def __init__( self, q: int, a: int, b: int, t: int, aut: int, n1: int, n2: int ) -> None:
        self.q = q
        self.a = a
        self.b = b
        self.t = t
        self.aut = aut
        self.n1 = n1
        self.n2 = n2

    @property
    def order( self ) -> int:
        return self.q + 1 - self.t

    def check( self ) -> bool:
        """
        Hasse bound and the invariant-factor relations.
        """
        return (
            self.t * self.t <= 4 * self.q
            and self.n1 * self.n2 == self.order
            and self.n1 % self.n2 == 0
            and ( self.q - 1 ) % self.n2 == 0
            and self.aut in ( 2, 4, 6 )
        )

    CSV_FIELDS = ( "q", "a", "b", "t", "aut", "n1", "n2" )

    def to_row( self ) -> list[ int ]:
        return [ getattr( self, f ) for f in self.CSV_FIELDS ]

    def to_dict( self ) -> dict:
        return dict( zip( self.CSV_FIELDS, self.to_row() ) )


class MomentResult:
    """
    Weighted census expectation E_q(U_j(t / 2 sqrt q) Phi_A) and its predicted main term.
    """
    q : int
    j : int
    A : tuple[ int, int ]
    expectation : Union[ Fraction, mpmath.mpf ]
    """
    Exact rational for j = 0, high-precision real otherwise.
    """
    main_term : Fraction
    """
    v(n1, n2) * [j = 0], zero when q != 1 mod n2.
    """
    deviation : float

    def __init__( self, q: int, j: int, A: tuple[ int, int ], expectation, main_term: Fraction ) -> None:
        self.q = q
        self.j = j
        self.A = A
        self.expectation = expectation
        self.main_term = main_term
        self.deviation = float( abs( expectation - main_term ) ) if isinstance( expectation, Fraction ) \
            else float( abs( expectation - mpmath.mpf( main_term.numerator ) / main_term.denominator ) )

    @property
    def exact( self ) -> bool:
        return isinstance( self.expectation, Fraction )

    def to_dict( self ) -> dict:
        if self.exact:
            value = str( self.expectation )
        else:
            value = mpmath.nstr( self.expectation, 20 )
        return {
            "q": self.q,
            "j": self.j,
            "A": list( self.A ),
            "expectation": value,
            "exact": self.exact,
            "main_term": str( self.main_term ),
            "deviation": self.deviation,
        }
