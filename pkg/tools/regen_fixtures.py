"""Write fixtures/<name>/expected/*.txt from the current implementation.

These files are regression snapshots.  tests/test_fixtures.py checks each of
them against independent oracles before comparing text, so a regenerated
snapshot that is wrong still fails.
"""

import argparse
import pathlib
import sys

from genlink.cli import COMMANDS, build_parser, parse_job, run
from genlink.errors import GenlinkError
from genlink.groebner import Limits

ROOT = pathlib.Path(__file__).resolve().parent.parent / "fixtures"

# subcommand argument lists per fixture; output key(s) to store
PLAN = {
    "acad_bd": [("radical", [], ["radical"]), ("presentation", [], ["phi"]),
                ("homogenize", [], ["h_phi", "minors"]),
                ("link", ["--level", "1"], ["minors"]),
                ("link", ["--level", "2"], ["minors", "f_parts"]),
                ("link", ["--level", "1", "--method", "colon"], ["gb"]),
                ("pipeline", [], ["verdict", "x_leading"]),
                ("hilbert", ["--degree", "10"], ["expansion"])],
    "bc_bd_acd": [("presentation", [], ["phi"]), ("homogenize", [], ["h_phi", "minors"]),
                  ("link", ["--level", "2"], ["minors"]),
                  ("pipeline", [], ["verdict", "x_leading"])],
    "xsq_xy_ysq": [("radical", [], ["radical"]), ("pipeline", [], ["verdict", "x_leading"])],
    "twisted_cubic": [("presentation", [], ["phi"]), ("pipeline", [], ["verdict", "x_leading"])],
    "path_4gen": [("presentation", [], ["phi"]), ("pipeline", [], ["verdict", "x_leading"])],
    "bc_specialized": [("specialize", [], ["gb"]), ("prime-check", [], ["certificate"])],
    "non_cm_4gen": [("pipeline", [], ["error", "stage"])],
}


def _lines(value):
    if isinstance(value, dict):
        keep = ("verdict", "degree_l", "noether", "hypersurface_degree")
        return [f"{k}: {value[k]}" for k in keep if k in value]
    if isinstance(value, list):
        if value and isinstance(value[0], list):
            return [", ".join(r) for r in value]
        return [str(v) for v in value]
    return [str(value)]


def snapshot(name: str, command: str, extra: list[str], keys: list[str]) -> dict[str, str]:
    path = ROOT / name / "input"
    args = build_parser().parse_args([command, str(path), *extra])
    job = parse_job(path.read_text())
    try:
        report = run(command, job, args, Limits.from_env())
    except GenlinkError as exc:
        report = {"error": type(exc).__name__, "stage": getattr(exc, "stage", None)}
    tag = command + "".join(a.lstrip("-") for a in extra if a not in ("--level", "--method", "--degree"))
    return {f"{tag}.{k}": "\n".join(_lines(report[k])) + "\n" for k in keys}


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("names", nargs="*")
    ns = ap.parse_args(argv)
    for name, steps in PLAN.items():
        if ns.names and name not in ns.names:
            continue
        out = ROOT / name / "expected"
        out.mkdir(exist_ok=True)
        for command, extra, keys in steps:
            for fname, text in snapshot(name, command, extra, keys).items():
                (out / f"{fname}.txt").write_text(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
