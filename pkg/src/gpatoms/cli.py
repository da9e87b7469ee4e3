"""Command-line front end.

Every command reads one JSON file and writes a report to standard output.
Exit status: 0 on success, 1 for invalid input, 2 when an enumeration cap
is exceeded.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

from . import atoms, region, words
from .cliquepoly import CliquePolynomial
from .errors import CapExceeded, DomainError
from .graph import Graph, join_decomposition
from .numerics import DEFAULT_EPS, DEFAULT_PRECISION, format_number, format_rational, parse_rational, parse_real

COMMANDS = (
    "atoms", "meet", "region-check", "region-rho", "region-classify",
    "words-count", "words-enumerate", "words-verify", "poly", "join",
)
FLOAT_COMMANDS = {"atoms", "meet", "region-check", "region-classify"}


@dataclass(frozen=True)
class RunConfig:
    command: str
    input_path: str
    mode: str = "exact"
    eps: float = DEFAULT_EPS
    cap: Optional[int] = None
    max_len: Optional[int] = None
    length: Optional[int] = None
    precision: Fraction = DEFAULT_PRECISION
    output: str = "json"
    oracle: bool = False

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise DomainError(f"unknown command {self.command!r}")
        if self.mode not in ("exact", "float"):
            raise DomainError(f"unknown mode {self.mode!r}")
        if self.mode == "float":
            if not self.eps > 0:
                raise DomainError("float mode requires --eps > 0")
            if self.command not in FLOAT_COMMANDS:
                raise DomainError(f"{self.command} supports exact mode only")

    @property
    def parse(self) -> Callable:
        return parse_real if self.mode == "float" else parse_rational


# ---------------------------------------------------------------------------
# Input parsing


def load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise DomainError(f"{path}: cannot read input ({exc.strerror})") from None
    except json.JSONDecodeError as exc:
        raise DomainError(f"{path}: malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def _require(doc, key: str, where: str = ""):
    if not isinstance(doc, dict):
        raise DomainError(f"{where or '<root>'}: expected an object")
    if key not in doc:
        raise DomainError(f"{where + '.' if where else ''}{key}: missing")
    return doc[key]


def parse_graph(doc) -> Graph:
    raw = _require(doc, "graph")
    vertices = _require(raw, "vertices", "graph")
    if not isinstance(vertices, list):
        raise DomainError("graph.vertices: expected a list")
    edges = raw.get("edges", [])
    if not isinstance(edges, list):
        raise DomainError("graph.edges: expected a list")
    known = {str(v) for v in vertices}
    for i, e in enumerate(edges):
        if not isinstance(e, list) or len(e) != 2:
            raise DomainError(f"graph.edges[{i}]: expected a pair of vertices")
        for v in e:
            if str(v) not in known:
                raise DomainError(f"graph.edges[{i}]: unknown vertex {v!r}")
    try:
        return Graph(vertices, edges)
    except DomainError as exc:
        raise DomainError(f"graph: {exc}") from None


def parse_point(doc, key: str, g: Graph, parse: Callable) -> dict:
    raw = _require(doc, key)
    if not isinstance(raw, dict):
        raise DomainError(f"{key}: expected an object mapping vertices to numbers")
    out = {}
    for v, val in raw.items():
        if str(v) not in g:
            raise DomainError(f"{key}.{v}: unknown vertex {v!r}")
        try:
            out[str(v)] = parse(val)
        except DomainError as exc:
            raise DomainError(f"{key}.{v}: {exc}") from None
    for v in g.vertices:
        if v not in out:
            raise DomainError(f"{key}.{v}: missing")
    return out


# ---------------------------------------------------------------------------
# Commands


def _atoms(cfg: RunConfig, doc):
    g = parse_graph(doc)
    raw = _require(doc, "algebras")
    if not isinstance(raw, dict):
        raise DomainError("algebras: expected an object")
    specs = atoms.parse_specs(raw, g.vertices, cfg.parse)
    cap = cfg.cap if cfg.cap is not None else atoms.DEFAULT_SELECTION_CAP
    return atoms.enumerate_atoms(g, specs, cap, cfg.eps).to_json()


def _meet(cfg: RunConfig, doc):
    g = parse_graph(doc)
    p = parse_point(doc, "projections", g, cfg.parse)
    return atoms.projection_meet(g, p, cfg.eps).to_json()


def _region_check(cfg: RunConfig, doc):
    g = parse_graph(doc)
    x = parse_point(doc, "x", g, cfg.parse)
    out = {
        "member": region.membership(g, x, cfg.eps),
        "value": format_number(CliquePolynomial(g).evaluate(x)),
    }
    if cfg.oracle:
        out["corner_oracle"] = region.membership_corner_oracle(g, x, cfg.eps)
    return out


def _region_rho(cfg: RunConfig, doc):
    g = parse_graph(doc)
    if "rays" in doc:
        rays = doc["rays"]
        if not isinstance(rays, list):
            raise DomainError("rays: expected a list")
        us = [parse_point({"rays[%d]" % i: r}, "rays[%d]" % i, g, cfg.parse) for i, r in enumerate(rays)]
    else:
        us = [parse_point(doc, "u", g, cfg.parse)]
    results = [(u, region.rho(g, u, cfg.precision)) for u in us]
    if cfg.output == "csv":
        return results
    rows = [{"u": {v: format_rational(q) for v, q in u.items()}, **res.to_json()} for u, res in results]
    return rows[0] if "rays" not in doc else {"rays": rows}


def _region_classify(cfg: RunConfig, doc):
    g = parse_graph(doc)
    if isinstance(doc, dict) and "u" in doc and "x" not in doc:
        # the boundary point where the ray through u leaves the region
        if cfg.mode == "float":
            raise DomainError("classifying along a ray needs exact mode")
        u = parse_point(doc, "u", g, cfg.parse)
        return region.classify_ray_boundary(g, u, cfg.precision).to_json()
    x = parse_point(doc, "x", g, cfg.parse)
    return region.classify_boundary_point(g, x, cfg.eps).to_json()


def _need(value, flag: str):
    if value is None:
        raise DomainError(f"{flag} is required")
    if value < 0:
        raise DomainError(f"{flag} must be nonnegative")
    return value


def _words_count(cfg: RunConfig, doc):
    g = parse_graph(doc)
    n = _need(cfg.max_len, "--max-len")
    series = words.count_reduced_classes_series(g, n)
    return {"counts": [int(c) for c in series.coeffs]}


def _words_enumerate(cfg: RunConfig, doc):
    g = parse_graph(doc)
    n = _need(cfg.length, "--len")
    cap = cfg.cap if cfg.cap is not None else words.DEFAULT_CLASS_CAP
    ws = words.enumerate_reduced_classes(g, n, cap)
    return {"length": n, "count": len(ws), "words": [list(w) for w in ws]}


def _words_verify(cfg: RunConfig, doc):
    g = parse_graph(doc)
    n = _need(cfg.max_len, "--max-len")
    return words.cartier_foata_identity_check(g, n).to_json()


def _poly(cfg: RunConfig, doc):
    k = CliquePolynomial(parse_graph(doc))
    return {
        "polynomial": k.format(),
        "terms": [{"sign": sign, "clique": list(c)} for sign, c in k.terms()],
    }


def _join(cfg: RunConfig, doc):
    g = parse_graph(doc)
    factors = join_decomposition(g)
    return {"join_irreducible": len(factors) == 1, "factors": [f.to_json() for f in factors]}


HANDLERS = {
    "atoms": _atoms,
    "meet": _meet,
    "region-check": _region_check,
    "region-rho": _region_rho,
    "region-classify": _region_classify,
    "words-count": _words_count,
    "words-enumerate": _words_enumerate,
    "words-verify": _words_verify,
    "poly": _poly,
    "join": _join,
}


# ---------------------------------------------------------------------------
# Output


def _write_table(report, out) -> None:
    if isinstance(report, dict) and "polynomial" in report:
        print(report["polynomial"], file=out)
        for term in report["terms"]:
            print(f"{'+' if term['sign'] > 0 else '-'} {{{', '.join(term['clique'])}}}", file=out)
        return
    if isinstance(report, dict) and "atoms" in report:
        for a in report["atoms"]:
            sel = " ".join(f"{v}={i}" for v, i in a["selection"].items())
            print(f"{sel}\tweight={a['weight']}\tclique={{{', '.join(a['support_clique'])}}}", file=out)
        print(f"total_mass={report['total_mass']}", file=out)
        return
    for key, val in (report.items() if isinstance(report, dict) else enumerate(report)):
        print(f"{key}\t{json.dumps(val, ensure_ascii=False)}", file=out)


def _write_csv(results, g_vertices, out) -> None:
    w = csv.writer(out, lineterminator="\n")
    w.writerow([f"u_{v}" for v in g_vertices] + ["rho_lo", "rho_hi", "at_cap"])
    for u, res in results:
        w.writerow([format_rational(u[v]) for v in g_vertices]
                   + [format_rational(res.lower), format_rational(res.upper), int(res.at_cap)])


def run(cfg: RunConfig, out=None) -> int:
    out = out or sys.stdout
    try:
        doc = load_json(cfg.input_path)
        report = HANDLERS[cfg.command](cfg, doc)
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if cfg.command == "region-rho" and cfg.output == "csv":
        _write_csv(report, parse_graph(doc).vertices, out)
    elif cfg.output == "table":
        _write_table(report, out)
    else:
        if cfg.mode == "float" and isinstance(report, dict):
            report = {**report, "approximate": True}
        json.dump(report, out, ensure_ascii=False, indent=2)
        out.write("\n")
    return 0


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="gpatoms", description="Atoms of graph products from combinatorial data.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("input", help="input JSON file")
    p.add_argument("--mode", choices=("exact", "float"), default="exact")
    p.add_argument("--eps", type=float, default=DEFAULT_EPS, help="tolerance in float mode")
    p.add_argument("--cap", type=int, default=None, help="enumeration limit")
    p.add_argument("--max-len", type=int, default=None)
    p.add_argument("--len", dest="length", type=int, default=None)
    p.add_argument("--precision", default=None, help="root isolation width as p/q (default 2^-40)")
    p.add_argument("--output", choices=("json", "table", "csv"), default="json")
    p.add_argument("--oracle", action="store_true", help="region-check: also run the corner test")
    return p


def _normalise(argv: Sequence[str]) -> list[str]:
    # `region check` and `words count` are accepted as two words
    argv = list(argv)
    if len(argv) >= 2 and argv[0] in ("region", "words"):
        argv = [f"{argv[0]}-{argv[1]}"] + argv[2:]
    return argv


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(_normalise(sys.argv[1:] if argv is None else argv))
    try:
        precision = DEFAULT_PRECISION if args.precision is None else parse_rational(args.precision)
        if precision <= 0:
            raise DomainError("--precision must be positive")
        if args.output == "csv" and args.command != "region-rho":
            raise DomainError("--output csv is only available for region-rho")
        cfg = RunConfig(args.command, args.input, args.mode, args.eps, args.cap, args.max_len,
                        args.length, precision, args.output, args.oracle)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return run(cfg)


if __name__ == "__main__":
    raise SystemExit(main())
