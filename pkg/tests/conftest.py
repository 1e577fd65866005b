import pytest


def pytest_addoption( parser ):
    parser.addoption( "--runslow", action="store_true", default=False, help="also run the acceptance-scale tests" )


def pytest_configure( config ):
    config.addinivalue_line( "markers", "slow: acceptance-scale run, skipped without --runslow" )


def pytest_collection_modifyitems( config, items ):
    if config.getoption( "--runslow" ):
        return
    skip = pytest.mark.skip( reason="needs --runslow" )
    for item in items:
        if "slow" in item.keywords:
            item.add_marker( skip )
