import asyncio
import logging

from petersson_python.types.records.checks import CheckResult
from petersson_python.types.runConfig import RunConfig
from petersson_python.verify import VerifyRunner


async def main():
    runner = VerifyRunner( RunConfig( profile="quick", jobs=2 ) )

    @runner.on
    async def suite_start( suite: str, total: int ) -> None:
        print( f'running { total } checks of { suite }' )

    @runner.on
    async def check_done( result: CheckResult ) -> None:
        print( f'{ "ok  " if result.passed else "FAIL" } { result.suite }/{ result.name } ({ result.cases } cases)' )

    @runner.on
    async def suite_done( suite: str, passed: bool ) -> None:
        print( f'{ suite }: { "passed" if passed else "failed" }' )

    report = await runner.run_async( "census" )
    return 0 if report.passed else 1

if __name__ == "__main__":
    logging.basicConfig( level=logging.INFO )
    raise SystemExit( asyncio.run( main() ) )
