"""Command-line driver.

Input is a small text document (a file path or ``-`` for stdin) made of
``header: value`` entries separated by newlines or ``;``.  Headers::

    ring:    a b c d            variable names, in registry order
    weights: 1 1 1 1            optional
    order:   grevlex            lex | grlex | grevlex | wgrevlex
    ideal:   a*c, a*d, b*d      comma-separated generators
    phi:     -d, 0 | c, -a*c | 0, b^2      rows separated by '|'
    values:  Y11=-9/5, Y12=3/10, ...       or a bare list in extension order

The colon after a header is optional, so ``ring a b c d; ideal a*c, a*d``
also parses.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
import time
from dataclasses import dataclass, field

from .core import MultiPoly, Ring, grevlex, grlex, lex, parse_poly, to_qq, wgrevlex
from .errors import DomainError, GenlinkError, HypothesisError, ParseError, ResourceLimitError
from .groebner import Limits, buchberger, hilbert_series_monomial, initial_ideal
from .linkage import (build_l2_matrix, build_theorem_matrix, colon_matches_minors, link_by_colon,
                      theorem1_pipeline, verify_minors_gb, x_leading_image,
                      x_parts_outside)
from .matrixops import PolyMatrix, homogenize_columns, radical_identity, signed_maximal_minors
from .monomial import MonomialIdeal, polarize, radical
from .primecheck import Specialization, prime_certificate, specialize, specialize_random
from .resolution import minimal_presentation

HEADERS = ("ring", "weights", "order", "ideal", "phi", "values")
ORDERS = {"lex": lex, "grlex": grlex, "grevlex": grevlex, "wgrevlex": wgrevlex}


@dataclass
class JobSpec:
    ring: Ring
    ideal: list = field(default_factory=list)  # MultiPoly generators
    phi: PolyMatrix | None = None
    values: list | dict | None = None


# -- input parsing --------------------------------------------------------------

def _segments(text: str):
    """Yield (line, column, segment) for every ';' or newline separated entry."""
    for ln, line in enumerate(text.splitlines(), start=1):
        col = 0
        for part in line.split(";"):
            yield ln, col, part
            col += len(part) + 1


_HEADER_RE = re.compile(r"\s*([A-Za-z]+)\s*:?\s*")


def _split_commas(body: str, offset: int):
    """Split on commas outside parentheses; yields (column, piece)."""
    depth, start = 0, 0
    for i, ch in enumerate(body):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            yield offset + start, body[start:i]
            start = i + 1
    yield offset + start, body[start:]


def parse_job(text: str) -> JobSpec:
    entries = {}
    for ln, col, seg in _segments(text):
        stripped = seg.split("#", 1)[0] if seg.lstrip().startswith("#") else seg
        if not stripped.strip():
            continue
        m = _HEADER_RE.match(stripped)
        key = m.group(1).lower() if m else ""
        if key not in HEADERS:
            raise ParseError(f"unknown header {key or stripped.strip()!r}", ln, col + 1)
        if key in entries:
            raise ParseError(f"duplicate header {key!r}", ln, col + 1)
        entries[key] = (ln, col + m.end(), stripped[m.end():])
    if "ring" not in entries:
        raise ParseError("missing 'ring' header", 1, 1)
    ln, col, body = entries["ring"]
    names = body.replace(",", " ").split()
    if not names:
        raise ParseError("empty variable list", ln, col + 1)
    weights = None
    if "weights" in entries:
        wl, wc, wb = entries["weights"]
        try:
            weights = [int(w) for w in wb.replace(",", " ").split()]
        except ValueError:
            raise ParseError("weights must be integers", wl, wc + 1) from None
    order = None
    if "order" in entries:
        ol, oc, ob = entries["order"]
        kind = ob.strip()
        if kind not in ORDERS:
            raise ParseError(f"unknown order {kind!r}", ol, oc + 1)
        order = ORDERS[kind](names)
    try:
        ring = Ring(names, weights, order=order)
    except ValueError as exc:
        raise ParseError(str(exc), ln, col + 1) from None
    job = JobSpec(ring)
    if "ideal" in entries:
        il, ic, ib = entries["ideal"]
        job.ideal = [parse_poly(p, ring, il, c) for c, p in _split_commas(ib, ic) if p.strip()]
    if "phi" in entries:
        pl, pc, pb = entries["phi"]
        rows, off = [], pc
        for rtext in pb.split("|"):
            rows.append([parse_poly(p, ring, pl, c) for c, p in _split_commas(rtext, off)])
            off += len(rtext) + 1
        if len({len(r) for r in rows}) != 1:
            raise ParseError("phi rows have different lengths", pl, pc + 1)
        job.phi = PolyMatrix(ring, rows)
    if "values" in entries:
        vl, vc, vb = entries["values"]
        job.values = _parse_values(vb, vl, vc)
    return job


def _parse_values(body: str, line: int, col: int):
    named, bare = {}, []
    for c, piece in _split_commas(body.replace(" ", ",") if "=" not in body else body, col):
        piece = piece.strip()
        if not piece:
            continue
        try:
            if "=" in piece:
                k, v = piece.split("=", 1)
                named[k.strip()] = to_qq(v.strip())
            else:
                bare.append(to_qq(piece))
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"bad value {piece!r}", line, c + 1) from None
    if named and bare:
        raise ParseError("mix of named and positional values", line, col + 1)
    return named or bare


# -- helpers --------------------------------------------------------------------

def _monomial_ideal(job: JobSpec) -> MonomialIdeal:
    if not job.ideal:
        raise DomainError("this subcommand needs an 'ideal' header")
    for g in job.ideal:
        if not g.is_monomial():
            raise DomainError(f"{g} is not a monomial")
    return MonomialIdeal(job.ring, job.ideal)


def _phi(job: JobSpec, limits: Limits) -> PolyMatrix:
    if job.phi is not None:
        return job.phi
    return minimal_presentation(_monomial_ideal(job), limits)


def _hphi(job: JobSpec, limits: Limits) -> PolyMatrix:
    phi = _phi(job, limits)
    if job.phi is not None and phi.infer_column_degrees() is not None:
        return phi
    return homogenize_columns(phi)


def _matrix(M: PolyMatrix) -> list[list[str]]:
    return [[str(x) for x in row] for row in M.rows]


def _polys(ps) -> list[str]:
    return [str(p) for p in ps]


def _package(job: JobSpec, level: int, limits: Limits):
    h = _hphi(job, limits)
    return build_theorem_matrix(h) if level == 1 else build_l2_matrix(h)


def _values_spec(job: JobSpec, args, ext: list[str]) -> Specialization | None:
    vals = job.values
    if getattr(args, "values", None):
        vals = _parse_values(args.values, 1, 0)
    if vals is None:
        return None
    if isinstance(vals, dict):
        return Specialization(vals)
    return Specialization.from_values(ext, vals)


# -- subcommands -------------------------------------------------------------------

def cmd_gb(job, args, limits):
    G = buchberger(job.ideal, job.ring.order, limits)
    return {"order": job.ring.order.describe(), "gb": _polys(G.gens)}


def cmd_radical(job, args, limits):
    return {"radical": radical(_monomial_ideal(job)).to_strings()}


def cmd_polarize(job, args, limits):
    P = polarize(_monomial_ideal(job))
    return {"polarization": P.ideal.to_strings(),
            "fresh": [f"{a}->{b}" for a, b in P.fresh_vars],
            "depolarized": P.depolarize().to_strings()}


def cmd_presentation(job, args, limits):
    phi = minimal_presentation(_monomial_ideal(job), limits)
    return {"phi": _matrix(phi), "column_degrees": list(phi.column_degrees or [])}


def cmd_homogenize(job, args, limits):
    phi = _phi(job, limits)
    h = homogenize_columns(phi)
    ri = radical_identity(phi, h)
    return {"phi": _matrix(phi), "h_phi": _matrix(h),
            "column_degrees": list(h.column_degrees or []),
            "minors": _polys(signed_maximal_minors(h).signed),
            "radicals_equal": {str(k): v["radicals_equal"] for k, v in ri.items()}}


def cmd_minors(job, args, limits):
    phi = _phi(job, limits)
    return {"minors": _polys(signed_maximal_minors(phi).signed)}


def cmd_link(job, args, limits):
    if args.method == "minors":
        pkg = _package(job, args.level, limits)
        return {"level": args.level, "method": "minors", "ring": list(pkg.ring.names),
                "matrix": _matrix(pkg.link_matrix), "minors": _polys(pkg.deltas),
                "f_parts": _polys(pkg.f_parts())}
    I = _monomial_ideal(job)
    out = {"level": args.level, "method": "colon"}
    if args.level == 1:
        try:
            phi = _phi(job, limits)
        except HypothesisError:
            phi = None
        if phi is not None:
            same, minors, L = colon_matches_minors(I, phi, limits)
            out.update({"gb": _polys(L.gens), "minors": _polys(minors), "matches_minors": same})
            return out
    L = link_by_colon(I, args.level, limits)
    out["gb"] = _polys(L.gens)
    probe = x_parts_outside(I, L, limits)
    out["inverse_block_gb_size"] = len(probe["basis"].gens)
    out["x_parts_outside_I"] = [{"leading": L.ring.format_mono(g.leading_monomial(probe["basis"].order)),
                                 "x_part": job.ring.format_mono(x)}
                                for g, x in probe["leading_outside"]]
    out["elements_without_terms_in_I"] = len(probe["no_term_in_I"])
    return out


def cmd_verify_gb(job, args, limits):
    pkg = _package(job, args.level, limits)
    v = verify_minors_gb(pkg, args.degree)
    return {"level": args.level, "ok": v.ok, "s_pairs_ok": v.s_pairs_ok,
            "witness": list(v.witness) if v.witness else None,
            "hilbert_ok": v.hilbert_ok, "hilbert_counts": v.hilbert_counts,
            "closed_form": v.closed_form, "x_leading": x_leading_image(pkg).to_strings()}


def cmd_hilbert(job, args, limits):
    if all(g.is_monomial() for g in job.ideal):
        M = _monomial_ideal(job)
    else:
        M = initial_ideal(buchberger(job.ideal, job.ring.order, limits))
    H = hilbert_series_monomial(M)
    return {"series": str(H), "expansion": H.expand(args.degree),
            "dimension": H.dimension(), "degree": H.degree()}


def _specialized(job, args, limits):
    pkg = _package(job, 2, limits)
    ext = [n for n in pkg.ring.names if n not in job.ring.names]
    s = _values_spec(job, args, ext)
    if s is None:
        s, G = specialize_random(pkg.deltas, args.seed, job.ring, limits=limits)
    else:
        G = specialize(pkg.deltas, s, job.ring, limits)
    return s, G


def cmd_specialize(job, args, limits):
    s, G = _specialized(job, args, limits)
    return {"values": {k: str(v) for k, v in s.assignments.items()}, "seed": s.seed,
            "gb": _polys(G.gens)}


def cmd_prime_check(job, args, limits):
    out = {}
    if job.values is not None or args.values or args.seed is not None:
        s, G = _specialized(job, args, limits)
        out["specialized_gb"] = _polys(G.gens)
        gens = G.gens
    else:
        gens = job.ideal
    cert = prime_certificate(gens, seed=args.seed or 0, limits=limits)
    out["certificate"] = cert.to_dict()
    return out


def cmd_pipeline(job, args, limits):
    rep = theorem1_pipeline(_monomial_ideal(job), limits)
    return {
        "verdict": rep.verdict,
        "radical": rep.radical_ideal.to_strings(),
        "radical_required": rep.radical_required,
        "phi": _matrix(rep.phi),
        "h_phi": _matrix(rep.h_phi),
        "homogenization_required": rep.homogenization_required,
        "J": rep.J.to_strings(),
        "generically_ci": rep.generically_ci,
        "link_minors": _polys(rep.package.deltas),
        "gb_ok": rep.gb.ok,
        "x_leading": rep.x_leading.to_strings(),
        "in_equals_I": rep.in_equals_I,
        "radicals_equal": rep.radicals_equal,
        "timings": rep.timings,
    }


COMMANDS = {
    "gb": cmd_gb, "radical": cmd_radical, "polarize": cmd_polarize,
    "presentation": cmd_presentation, "homogenize": cmd_homogenize, "minors": cmd_minors,
    "link": cmd_link, "verify-gb": cmd_verify_gb, "hilbert": cmd_hilbert,
    "specialize": cmd_specialize, "prime-check": cmd_prime_check, "pipeline": cmd_pipeline,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="genlink", description="Generic links of monomial ideals.")
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("input", help="job file, or '-' for stdin")
        sp.add_argument("--json", action="store_true", help="structured output")
        sp.add_argument("--max-pairs", type=int, default=None)
        sp.add_argument("--max-degree", type=int, default=None)
        if name in ("link", "verify-gb"):
            sp.add_argument("--level", type=int, choices=(1, 2), default=2 if name == "verify-gb" else 1)
        if name == "link":
            sp.add_argument("--method", choices=("minors", "colon"), default="minors")
        if name in ("verify-gb", "hilbert"):
            sp.add_argument("--degree", type=int, default=10)
        if name in ("specialize", "prime-check"):
            sp.add_argument("--seed", type=int, default=None)
            sp.add_argument("--values", default=None)
    return p


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _render(obj, indent=0) -> list[str]:
    pad = "  " * indent
    out = []
    for k, v in obj.items():
        if isinstance(v, dict):
            out.append(f"{pad}{k}:")
            out.extend(_render(v, indent + 1))
        elif isinstance(v, list) and v and isinstance(v[0], list):
            out.append(f"{pad}{k}:")
            out.extend(f"{pad}  [{', '.join(map(str, r))}]" for r in v)
        elif isinstance(v, list) and v and isinstance(v[0], dict):
            out.append(f"{pad}{k}:")
            for item in v:
                out.append(f"{pad}  - " + ", ".join(f"{a}={b}" for a, b in item.items()))
        elif isinstance(v, list) and len(v) > 1 and all(isinstance(x, str) for x in v):
            out.append(f"{pad}{k}:")
            out.extend(f"{pad}  {x}" for x in v)
        else:
            if isinstance(v, list):
                v = ", ".join(map(str, v))
            out.append(f"{pad}{k}: {v}")
    return out


def run(command: str, job: JobSpec, args, limits: Limits) -> dict:
    t0 = time.perf_counter()
    report = COMMANDS[command](job, args, limits)
    report["elapsed"] = round(time.perf_counter() - t0, 4)
    return report


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    limits = Limits.from_env(args.max_pairs, args.max_degree)
    try:
        job = parse_job(_read(args.input))
        report = run(args.command, job, args, limits)
        status = 0
    except ResourceLimitError as exc:
        report = {"error": "resource limit", "message": str(exc), "pairs": exc.pairs,
                  "degree": exc.degree}
        status = exc.exit_code
    except HypothesisError as exc:
        report = {"error": "hypothesis failure", "message": str(exc), "stage": exc.stage,
                  "obstruction": exc.obstruction}
        status = exc.exit_code
    except ParseError as exc:
        report = {"error": "parse error", "message": str(exc), "line": exc.line,
                  "column": exc.column}
        status = exc.exit_code
    except GenlinkError as exc:
        report = {"error": type(exc).__name__, "message": str(exc)}
        status = exc.exit_code
    except OSError as exc:
        report = {"error": "io", "message": str(exc)}
        status = 4
    report = {"command": args.command, "status": status, **report}
    if args.json:
        print(json.dumps(report, indent=2, default=str))
    else:
        print("\n".join(_render(report)))
    return status


if __name__ == "__main__":
    sys.exit(main())
