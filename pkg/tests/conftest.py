import os
import sys

import pytest

# Добавляем корневую папку в Python path
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="запускать длинные переборы")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: полный перебор простых, только с --runslow")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="нужен --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)
