"""
Dirichlet characters modulo N.

A character is stored as an exponent vector against fixed generators of (Z/NZ)^*:
the least primitive root for odd prime powers, 3 for 4, and (-1, 5) for 2^a with
a >= 3. Values are taken from a shared root-of-unity table of order equal to the
exponent of the unit group; exact phases are available as Fractions.
"""
import logging
import math
from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import Iterator, Optional

import numpy as np

from .arith import crt, factor
from .errors import DomainError, PreconditionError
from .types.base.map import Map

logger = logging.getLogger(__name__)

__all__ = [
    "CharacterGroup", "DirichletCharacter", "character_group", "trivial_character",
    "set_max_modulus",
]

MAX_MODULUS = 10 ** 5


def set_max_modulus( value: int ) -> None:
    global MAX_MODULUS
    MAX_MODULUS = int( value )


def _least_primitive_root( p: int, q: int ) -> int:
    order = q // p * ( p - 1 )
    ds = factor( order ).primes()
    g = 2
    while True:
        if g % p and all( pow( g, order // r, q ) != 1 for r in ds ):
            return g
        g += 1


class _Component:
    """
    Unit group of Z/p^aZ with its generators and discrete-log tables.
    """

    def __init__( self, p: int, a: int ) -> None:
        self.p = p
        self.a = a
        self.q = p ** a
        q = self.q
        if p != 2:
            g = _least_primitive_root( p, q )
            order = q // p * ( p - 1 )
            table = np.full( q, -1, dtype=np.int64 )
            x = 1
            for k in range( order ):
                table[x] = k
                x = x * g % q
            self.gens = [ g ]
            self.orders = [ order ]
            self.tables = [ table ]
        elif a == 1:
            self.gens = []
            self.orders = []
            self.tables = []
        elif a == 2:
            table = np.full( 4, -1, dtype=np.int64 )
            table[1], table[3] = 0, 1
            self.gens = [ 3 ]
            self.orders = [ 2 ]
            self.tables = [ table ]
        else:
            order5 = q // 4
            minus = np.full( q, -1, dtype=np.int64 )
            five = np.full( q, -1, dtype=np.int64 )
            x = 1
            for k in range( order5 ):
                minus[x], five[x] = 0, k
                minus[q - x], five[q - x] = 1, k
                x = x * 5 % q
            self.gens = [ q - 1, 5 ]
            self.orders = [ 2, order5 ]
            self.tables = [ minus, five ]

    def dlog( self, x: int ) -> list[ int ]:
        x %= self.q
        return [ int( t[x] ) for t in self.tables ]

    def subgroup_generator( self, j: int ) -> list[ int ]:
        """
        Generators of the units congruent to 1 mod p^j.
        """
        if j == 0 or ( self.p == 2 and j == 1 ):
            return list( self.gens )
        return [ ( 1 + self.p ** j ) % self.q ]


class CharacterGroup:
    """
    The full group of Dirichlet characters modulo `modulus`.

    Characters are enumerated in lexicographic order of their exponent vectors, so
    index 0 is always the trivial character.
    """
    modulus : int
    components : list[ _Component ]
    orders : list[ int ]
    """
    Orders of all generators, component by component.
    """
    exponent : int
    """
    Least common multiple of the generator orders; the order of the root table.
    """

    def __init__( self, modulus: int ) -> None:
        if modulus < 1:
            raise DomainError( f"modulus must be positive, got { modulus }" )
        if modulus > MAX_MODULUS:
            raise DomainError( f"modulus { modulus } exceeds the configured cap { MAX_MODULUS }" )
        self.modulus = modulus
        self.components = [ _Component( p, a ) for p, a in factor( modulus ) ]
        self.orders = [ o for comp in self.components for o in comp.orders ]
        self.exponent = math.lcm( *self.orders ) if self.orders else 1
        k = np.arange( self.exponent )
        self.roots = np.exp( 2j * np.pi * k / self.exponent )
        self.roots.flags.writeable = False
        self._weights = [ self.exponent // o for o in self.orders ]

    def __len__( self ) -> int:
        return math.prod( self.orders )

    def __iter__( self ) -> Iterator[ "DirichletCharacter" ]:
        for exps in product( *[ range( o ) for o in self.orders ] ):
            yield DirichletCharacter( self, exps )

    def __getitem__( self, index: int ) -> "DirichletCharacter":
        if not 0 <= index < len( self ):
            raise IndexError( f"character index { index } out of range for modulus { self.modulus }" )
        exps = []
        for o in reversed( self.orders ):
            exps.append( index % o )
            index //= o
        return DirichletCharacter( self, tuple( reversed( exps ) ) )

    def characters( self ) -> list[ "DirichletCharacter" ]:
        return list( self )

    def trivial( self ) -> "DirichletCharacter":
        return DirichletCharacter( self, ( 0, ) * len( self.orders ) )

    def dlog( self, a: int ) -> Optional[ list[ int ] ]:
        """
        Discrete logarithms of `a` against all generators, or None for non-units.
        """
        if math.gcd( a, self.modulus ) != 1:
            return None
        logs = []
        for comp in self.components:
            logs.extend( comp.dlog( a ) )
        return logs

    def log_index_table( self ) -> np.ndarray:
        """
        Per-generator discrete logs of every residue mod N, -1 marking non-units.
        """
        residues = np.arange( self.modulus )
        rows = []
        for comp in self.components:
            for table in comp.tables:
                rows.append( table[residues % comp.q] )
        if not rows:
            return np.zeros( ( 0, self.modulus ), dtype=np.int64 )
        return np.vstack( rows )


class DirichletCharacter:
    """
    A Dirichlet character given by its exponent vector in a CharacterGroup.
    """
    group : CharacterGroup
    exponents : tuple[ int, ... ]

    def __init__( self, group: CharacterGroup, exponents: tuple[ int, ... ] ) -> None:
        if len( exponents ) != len( group.orders ):
            raise DomainError( "exponent vector does not match the generators" )
        self.group = group
        self.exponents = tuple( int( e ) % o for e, o in zip( exponents, group.orders ) )

    @property
    def modulus( self ) -> int:
        return self.group.modulus

    def is_trivial( self ) -> bool:
        return not any( self.exponents )

    def phase( self, a: int ) -> Optional[ Fraction ]:
        """
        Exact phase t in [0, 1) with chi(a) = e(t), or None when gcd(a, N) > 1.
        """
        logs = self.group.dlog( a )
        if logs is None:
            return None
        t = sum( Fraction( e * l, o ) for e, l, o in zip( self.exponents, logs, self.group.orders ) )
        return t - math.floor( t )

    def value( self, a: int ) -> complex:
        logs = self.group.dlog( a )
        if logs is None:
            return 0j
        idx = sum( e * l * w for e, l, w in zip( self.exponents, logs, self.group._weights ) )
        return complex( self.group.roots[idx % self.group.exponent] )

    __call__ = value

    @cached_property
    def _table( self ) -> np.ndarray:
        g = self.group
        logs = g.log_index_table()
        residues = np.arange( g.modulus )
        units = np.gcd( residues, g.modulus ) == 1
        idx = np.zeros( g.modulus, dtype=np.int64 )
        for row, e, w in zip( logs, self.exponents, g._weights ):
            idx += np.where( units, row, 0 ) * ( e * w )
        table = np.where( units, g.roots[idx % g.exponent], 0 )
        table.flags.writeable = False
        return table

    def values_table( self ) -> np.ndarray:
        """
        chi(x) for x = 0, ..., N-1 as a read-only complex array.
        """
        return self._table

    def order( self ) -> int:
        return math.lcm( *[ o // math.gcd( e, o ) for e, o in zip( self.exponents, self.group.orders ) ] ) if self.exponents else 1

    @cached_property
    def _conductor_exponents( self ) -> dict[ int, int ]:
        result = {}
        offset = 0
        for comp in self.group.components:
            k = len( comp.orders )
            local = self.exponents[offset:offset + k]
            offset += k
            if not any( local ):
                result[comp.p] = 0
                continue
            start = 2 if comp.p == 2 else 1
            for j in range( start, comp.a + 1 ):
                if all( self._local_phase( comp, local, h ) == 0 for h in comp.subgroup_generator( j ) ):
                    result[comp.p] = j
                    break
        return result

    @staticmethod
    def _local_phase( comp: _Component, local: tuple[ int, ... ], h: int ) -> Fraction:
        t = sum( Fraction( e * l, o ) for e, l, o in zip( local, comp.dlog( h ), comp.orders ) )
        return t - math.floor( t )

    def conductor( self ) -> int:
        return math.prod( p ** f for p, f in self._conductor_exponents.items() )

    def cond_p( self, p: int ) -> int:
        """
        Exponent of p in the conductor.
        """
        return self._conductor_exponents.get( p, 0 )

    def squarefree_conductor( self ) -> int:
        return math.prod( p for p, f in self._conductor_exponents.items() if f > 0 )

    def is_primitive( self ) -> bool:
        return self.conductor() == self.modulus

    def parity( self ) -> int:
        return -1 if self.phase( -1 ) == Fraction( 1, 2 ) else 1

    def is_character_mod( self, m: int ) -> bool:
        return m % self.conductor() == 0

    def restrict( self, m: int ) -> "DirichletCharacter":
        """
        The character mod `m` inducing this one. Requires m | N and conductor | m.
        """
        if self.modulus % m:
            raise PreconditionError( f"restrict: { m } does not divide the modulus { self.modulus }" )
        if not self.is_character_mod( m ):
            raise PreconditionError(
                f"restrict: conductor { self.conductor() } does not divide { m }" )
        target = character_group( m )
        others = { p: p ** a for p, a in factor( self.modulus ) }
        exps = []
        for comp in target.components:
            rest = [ ( 1, q ) for p, q in others.items() if p != comp.p ]
            for h, o in zip( comp.gens, comp.orders ):
                x, _ = crt( [ ( h, others[comp.p] ) ] + rest )
                exps.append( int( self.phase( x ) * o ) )
        return DirichletCharacter( target, tuple( exps ) )

    def induce( self, n: int ) -> "DirichletCharacter":
        """
        The character mod `n` induced by this one. Requires N | n.
        """
        if n % self.modulus:
            raise PreconditionError( f"induce: modulus { self.modulus } does not divide { n }" )
        if n == self.modulus:
            return self
        target = character_group( n )
        exps = []
        for comp in target.components:
            for h, o in zip( comp.gens, comp.orders ):
                x, _ = crt( [ ( h, comp.q ) ] + [ ( 1, p ** a ) for p, a in factor( n ) if p != comp.p ] )
                exps.append( int( self.phase( x ) * o ) )
        return DirichletCharacter( target, tuple( exps ) )

    def conj( self ) -> "DirichletCharacter":
        return DirichletCharacter( self.group, tuple( -e for e in self.exponents ) )

    def index( self ) -> int:
        idx = 0
        for e, o in zip( self.exponents, self.group.orders ):
            idx = idx * o + e
        return idx

    def __eq__( self, other: object ) -> bool:
        if not isinstance( other, DirichletCharacter ):
            return NotImplemented
        return self.modulus == other.modulus and self.exponents == other.exponents

    def __hash__( self ) -> int:
        return hash( ( self.modulus, self.exponents ) )

    def __repr__( self ) -> str:
        return f"DirichletCharacter(modulus={ self.modulus }, exponents={ self.exponents })"

    def to_dict( self ) -> dict:
        values = self.values_table()
        return {
            "modulus": self.modulus,
            "index": self.index(),
            "exponents": list( self.exponents ),
            "conductor": self.conductor(),
            "parity": self.parity(),
            "values": [ [ float( values[a % self.modulus].real ), float( values[a % self.modulus].imag ) ]
                        for a in range( 1, self.modulus + 1 ) ],
        }


_groups: Map[ CharacterGroup ] = Map()


def character_group( modulus: int ) -> CharacterGroup:
    """
    The (cached) character group modulo `modulus`.
    """
    key = str( modulus )
    group = _groups.get( key )
    if group is None:
        group = CharacterGroup( modulus )
        _groups.set( key, group )
        logger.debug( f"[Characters] built group mod { modulus } with { len( group ) } characters" )
    return group


def trivial_character( modulus: int ) -> DirichletCharacter:
    return character_group( modulus ).trivial()
