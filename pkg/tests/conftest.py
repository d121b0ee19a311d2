import pytest

from topfree import demo_config


@pytest.fixture(scope="session")
def config():
    return demo_config()
