import asyncio
import logging
import typing

logger = logging.getLogger(__name__)

T = typing.TypeVar('T')
Coro = typing.Coroutine[typing.Any, typing.Any, T]
CallableCoroutine = typing.TypeVar("CallableCoroutine", bound=typing.Callable[..., Coro ])

__all__ = [ "ReportEmitter" ]


class ReportEmitter:
    """
    Event emitter the verification runner reports progress through.

    # Examples
    - Listening to finished checks. The listener's name is the event name.

        ```
            runner = VerifyRunner( config )

            @runner.on
            async def check_done( result: CheckResult ) -> None:
                print( result.name, result.passed )
        ```

    # Events
    - `suite_start( suite: str, total: int )`
    - `check_done( result: CheckResult )`
    - `suite_done( suite: str, passed: bool )`
    """
    def __init__( self ) -> None:
        self._listeners: typing.Dict[ str, typing.List[ typing.Callable[ ..., Coro ] ] ] = {}

    def on( self, f: CallableCoroutine, / ) -> CallableCoroutine:
        """
        A decorator to add an event listener; several listeners per event are kept in order.
        """
        if not asyncio.iscoroutinefunction( f ):
            raise TypeError( '\nlistener must be a coroutine function. \nExample: \n @runner.on \n async def check_done( result ) -> None: \n    print( result )' )

        logger.debug( f"[ReportEmitter] Adding listener { f.__name__ }" )
        self._listeners.setdefault( f.__name__, [] ).append( f )
        return f

    def listeners( self, event: str ) -> list:
        return list( self._listeners.get( event, [] ) )

    async def emit( self, event: str, *args ) -> None:
        for listener in self._listeners.get( event, [] ):
            try:
                await listener( *args )
            except Exception:
                logger.exception( f"[ReportEmitter] listener { listener.__name__ } failed on { event }" )
