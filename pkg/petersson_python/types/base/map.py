from typing import Callable, Generic, Optional, TypeVar

T = TypeVar('T')

class Map( Generic[ T ] ):
    """
    String-keyed store used for the module level caches (character groups, oracle forms).
    """

    data : dict[ str, T ]

    def __init__( self ):
        self.data = {}

    def get( self, key: str ) -> Optional[ T ] :
        """
        Get the entry for `key`, or None.
        """
        return self.data.get( key )

    def set_safe( self, key: str, value: T ) -> bool:
        """
        Store `value` only if `key` is absent. Returns whether it was stored.
        """
        if key in self.data:
            return False
        self.data[key] = value
        return True

    def set( self, key: str, value: T ) -> None:
        self.data[key] = value

    def get_or_build( self, key: str, build: Callable[ [], T ] ) -> T:
        """
        Return the entry for `key`, building and storing it on a miss.
        """
        if key not in self.data:
            self.data[key] = build()
        return self.data[key]

    def remove( self, key: str ) -> bool:
        if key in self.data:
            del self.data[key]
            return True
        return False

    def clear( self ) -> None:
        self.data.clear()

    def keys( self ) -> list[ str ]:
        return list( self.data.keys() )

    def values( self ) -> list[ T ]:
        return list( self.data.values() )

    def has( self, key: str ) -> bool:
        return key in self.data

    def __contains__( self, key: str ) -> bool:
        return key in self.data

    def __len__( self ) -> int:
        return len( self.data )

    def __repr__( self ) -> str:
        return f"Map({ sorted( self.data ) })"

    def __iter__( self ):
        return iter( self.data )
