import sys
from functools import lru_cache
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from zdwiener import zdgraph as zg  # noqa: E402
from zdwiener.matring import parse_ring_spec  # noqa: E402

SIMPLE_CORPUS = ["M2(2)", "M2(3)", "M2(4)", "M2(5)", "M3(2)"]
PRODUCT_CORPUS = [
    "M1(2)xM1(2)", "M1(2)xM1(2)xM1(2)", "M1(3)xM1(3)", "M1(2)xM2(2)",
    "M1(3)xM2(2)", "M2(2)xM2(2)", "M2(2)xM2(3)",
]


@lru_cache(maxsize=None)
def graph(spec: str) -> zg.ZDGraph:
    return zg.build_graph(parse_ring_spec(spec))


@pytest.fixture(scope="session")
def get_graph():
    return graph


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(module.RESULTS):
        terminalreporter.write_line(module.RESULTS[number])
