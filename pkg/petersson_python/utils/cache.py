import logging
from typing import Callable, Optional

from ..types.base.map import Map
from ..types.records.qexpansion import QExpansion

logger = logging.getLogger(__name__)


class OracleCacheManager( Map[ QExpansion ] ):
    """
    Keeps the oracle q-expansions by name. A request at a precision below a stored one
    is served by truncation; a request above it rebuilds and replaces the entry.
    """

    def __init__( self ) -> None:
        super().__init__()

    def get_form( self, name: str, P: int ) -> Optional[ QExpansion ]:
        form = self.get( name )
        if form is None or form.precision < P:
            return None
        return form if form.precision == P else form.truncate( P )

    def fetch_form( self, name: str, P: int, build: Callable[ [ int ], QExpansion ] ) -> QExpansion:
        form = self.get_form( name, P )
        if form is not None:
            return form
        logger.debug( f"[OracleCache] building { name } to precision { P }" )
        form = build( P )
        self.set( name, form )
        return form

    def stored_precision( self, name: str ) -> int:
        form = self.get( name )
        return form.precision if form is not None else 0
