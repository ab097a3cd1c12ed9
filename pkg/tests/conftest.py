from __future__ import annotations

from pathlib import Path

import pytest

from zerodec.polyring import MonomialOrder, PolyRing, parse_system

ROOT = Path(__file__).resolve().parent.parent
DATA = ROOT / "data"
GB_CACHE = ROOT / ".gbcache"

# filled in by test_acceptance; printed once at the end of the session
ACCEPTANCE: dict[str, tuple[bool, str]] = {}


def load_system(name: str, order: str = "degrevlex"):
    return parse_system((DATA / name).read_text(), MonomialOrder(order))


def ring(names: str, order: str = "degrevlex") -> PolyRing:
    return PolyRing(tuple(names.split()), MonomialOrder(order))


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA


@pytest.fixture(scope="session")
def gb_cache() -> Path:
    GB_CACHE.mkdir(exist_ok=True)
    return GB_CACHE


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(ACCEPTANCE, key=lambda s: (len(s.split()[0]), s)):
        ok, detail = ACCEPTANCE[label]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {label}: {detail}")
