import pathlib

import pytest

from genlink.cli import build_parser, parse_job, run
from genlink.groebner import Limits

FIXTURES = pathlib.Path(__file__).resolve().parent.parent / "fixtures"

# criterion number -> {part: [passed, seconds]}; filled by test_acceptance
CRITERIA: dict[int, dict] = {}


def fixture_job(name: str):
    return parse_job((FIXTURES / name / "input").read_text())


def run_cli(command: str, name: str, *extra: str, limits: Limits | None = None) -> dict:
    path = FIXTURES / name / "input"
    args = build_parser().parse_args([command, str(path), *extra])
    return run(command, parse_job(path.read_text()), args, limits or Limits.from_env())


@pytest.fixture
def fixtures_dir():
    return FIXTURES


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(CRITERIA):
        parts = CRITERIA[n]
        ok = all(v[0] for v in parts.values())
        secs = sum(v[1] for v in parts.values())
        names = ", ".join(parts)
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'} ({secs:.2f}s; {names})")
