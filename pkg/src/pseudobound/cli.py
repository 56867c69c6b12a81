"""Command-line front end.

Exit status: 0 success, 1 input error, 2 bound hypotheses unmet,
3 instance too large, 4 LP solver failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from . import cover as cv
from .lp_bound import DEFAULT_TOL as LP_TOL
from .lp_bound import SolverFailure, build_lp, lp_pseudodistance_bound
from .oracle import cover_plan, verify_bounds
from .pseudodist import modulated_distance_sq, pseudodistance_sq, pseudodistance_sq_batch
from .ring_code import DEFAULT_LIMIT, InstanceTooLarge, ParityCheckMatrix, is_codeword, validate_matrix
from .spectral_bound import DEFAULT_TOL as EIG_TOL
from .spectral_bound import HypothesesUnmet, eigenvalue_bound
from .tanner import from_matrix, is_connected, regularity

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_HYPOTHESES = 2
EXIT_TOO_LARGE = 3
EXIT_SOLVER = 4


class MatrixFormatError(ValueError):
    def __init__(self, line: int, msg: str):
        self.line = line
        super().__init__(f"line {line}: {msg}")


def parse_matrix_text(text: str, q_override: int | None = None) -> ParityCheckMatrix:
    """Parse ``n m q`` followed by ``m`` rows of ``n`` entries; ``#`` starts a comment line."""
    lines = [(no, ln.split()) for no, ln in enumerate(text.splitlines(), 1)]
    lines = [(no, toks) for no, toks in lines if toks and not toks[0].startswith("#")]
    if not lines:
        raise MatrixFormatError(1, "missing header 'n m q'")
    no, head = lines[0]
    if len(head) != 3:
        raise MatrixFormatError(no, f"header must be 'n m q', got {' '.join(head)!r}")
    try:
        n, m, q = (int(t) for t in head)
    except ValueError:
        raise MatrixFormatError(no, "header entries must be decimal integers") from None
    if n < 1 or m < 1 or q < 2:
        raise MatrixFormatError(no, "need n >= 1, m >= 1, q >= 2")
    if q_override is not None:
        q = q_override
    body = lines[1:]
    if len(body) != m:
        last = body[-1][0] if body else no
        raise MatrixFormatError(last, f"expected {m} matrix rows, found {len(body)}")
    rows = []
    for no, toks in body:
        if len(toks) != n:
            raise MatrixFormatError(no, f"expected {n} entries, found {len(toks)}")
        try:
            row = [int(t) for t in toks]
        except ValueError:
            raise MatrixFormatError(no, "entries must be decimal integers") from None
        for v in row:
            if not 0 <= v < q:
                raise MatrixFormatError(no, f"entry {v} outside [0, {q})")
        if not any(row):
            raise MatrixFormatError(no, "row has empty support")
        rows.append(row)
    return ParityCheckMatrix.from_rows(rows, q)


def parse_matrix_file(path, q_override: int | None = None) -> ParityCheckMatrix:
    return parse_matrix_text(Path(path).read_text(), q_override)


@dataclass
class RunConfig:
    command: str
    input: str
    bound_kind: str | None = None
    q: int | None = None
    M: list[int] = field(default_factory=lambda: [2, 3])
    covers: int = 5
    seed: int = 0
    format: str = "text"
    tol: float = LP_TOL
    eig_tol: float = EIG_TOL
    limit: int = DEFAULT_LIMIT
    codeword: list[int] | None = None
    export_lp: str | None = None
    cover_file: str | None = None


def _num(v):
    if isinstance(v, float) and math.isinf(v):
        return None
    return v


def dump_report(doc: dict) -> str:
    """Serialise a report; floats use the shortest round-tripping repr."""
    return json.dumps(doc, indent=2, allow_nan=False) + "\n"


def _text(doc, prefix: str = "") -> list[str]:
    out = []
    if isinstance(doc, dict):
        for k, v in doc.items():
            key = f"{prefix}{k}"
            if isinstance(v, dict) or (isinstance(v, list) and v and isinstance(v[0], dict)):
                out.append(f"{key}:")
                out.extend(_text(v, prefix + "  "))
            else:
                out.append(f"{key}: {v}")
    elif isinstance(doc, list):
        for n, item in enumerate(doc, 1):
            out.append(f"{prefix}[{n}]")
            out.extend(_text(item, prefix + "  "))
    else:
        out.append(f"{prefix}{doc}")
    return out


def _info(H: ParityCheckMatrix, cfg: RunConfig) -> dict:
    G = from_matrix(H)
    reg = regularity(G)
    v = validate_matrix(H)
    return {
        "n": H.n,
        "m": H.m,
        "q": H.q,
        "regularity": list(reg) if reg else None,
        "connected": is_connected(G),
        "row_weights": list(G.check_degrees),
        "column_weights": list(G.var_degrees),
        "zero_divisor_audit": {"units_only": v.ok, "offending": [[j + 1, i + 1] for j, i in v.offending]},
    }


def _distance(H: ParityCheckMatrix, cfg: RunConfig) -> dict:
    c = cfg.codeword
    if c is None:
        raise ValueError("distance needs --codeword")
    if len(c) != H.n:
        raise ValueError(f"codeword has length {len(c)}, expected {H.n}")
    if not is_codeword(H, c):
        raise ValueError("the given word violates a parity check")
    F = cv.NormalizedMatrix.from_codeword(c, H.q)
    res = pseudodistance_sq(F)
    return {
        "codeword": list(c),
        "d_squared": _num(res.d_squared),
        "S": res.S,
        "V": res.V,
        "modulated_distance_squared": modulated_distance_sq(c, H.q),
    }


def _covers(H: ParityCheckMatrix, cfg: RunConfig) -> list[cv.CoverAssignment]:
    if cfg.cover_file:
        return [cv.CoverAssignment.from_text(Path(cfg.cover_file).read_text())]
    return cover_plan(H, cfg.M, cfg.covers, cfg.seed)


def _enumerate(H: ParityCheckMatrix, cfg: RunConfig) -> dict:
    out = []
    for cov in _covers(H, cfg):
        pcws = cv.enumerate_pseudocodewords(H, cov, cfg.limit)
        counts = cv.count_matrices(pcws, H.n, cov.M, H.q)
        _, _, d2 = pseudodistance_sq_batch(counts / cov.M)
        out.append(
            {
                "M": cov.M,
                "seed": cov.seed,
                "cover": cov.to_text(),
                "pseudocodewords": [
                    {"p": p.tolist(), "counts": c.tolist(), "d_squared": _num(float(d))}
                    for p, c, d in zip(pcws, counts, d2)
                ],
            }
        )
    return {"covers": out}


def _bound(H: ParityCheckMatrix, cfg: RunConfig) -> dict:
    if cfg.bound_kind == "eig":
        return eigenvalue_bound(H, tol=cfg.eig_tol).to_dict()
    inst = build_lp(H)
    if cfg.export_lp:
        Path(cfg.export_lp).write_text(inst.to_lp_text())
    rep = lp_pseudodistance_bound(H, tol=cfg.tol, inst=inst)
    d = rep.to_dict()
    d["num_variables"] = inst.num_variables
    d["num_inequalities"] = inst.num_inequalities
    return d


def _verify(H: ParityCheckMatrix, cfg: RunConfig) -> dict:
    extra = []
    if cfg.cover_file:
        extra.append(cv.CoverAssignment.from_text(Path(cfg.cover_file).read_text()))
    rep = verify_bounds(
        H, cfg.M, cfg.covers, cfg.seed, cfg.limit, extra_covers=extra, eig_tol=cfg.eig_tol, lp_tol=cfg.tol
    )
    return rep.to_dict()


_COMMANDS = {
    "info": _info,
    "distance": _distance,
    "enumerate": _enumerate,
    "bound": _bound,
    "verify": _verify,
}


def run(cfg: RunConfig) -> tuple[int, dict]:
    """Execute ``cfg`` and return ``(exit status, report document)``."""
    doc: dict = {"tool": "pseudobound", "version": __version__, "config": asdict(cfg)}
    try:
        H = parse_matrix_file(cfg.input, cfg.q)
        v = validate_matrix(H)
        if not v.ok:
            pos = ", ".join(f"({j + 1},{i + 1})" for j, i in v.offending)
            doc["warnings"] = [f"zero-divisor entries at {pos}"]
            if cfg.command == "bound":
                raise HypothesesUnmet(f"zero-divisor entries at {pos}")
        doc["result"] = _COMMANDS[cfg.command](H, cfg)
        return EXIT_OK, doc
    except InstanceTooLarge as exc:
        doc["error"] = {"kind": "instance too large", "message": str(exc), "predicted": exc.predicted}
        return EXIT_TOO_LARGE, doc
    except HypothesesUnmet as exc:
        doc["error"] = {"kind": "hypotheses unmet", "message": str(exc)}
        return EXIT_HYPOTHESES, doc
    except SolverFailure as exc:
        doc["error"] = {"kind": "solver failure", "message": str(exc)}
        return EXIT_SOLVER, doc
    except (OSError, ValueError) as exc:
        doc["error"] = {"kind": "input error", "message": str(exc)}
        return EXIT_INPUT, doc


def _int_list(s: str) -> list[int]:
    try:
        return [int(t) for t in s.replace(" ", "").split(",") if t]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {s!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", "-i", required=True, help="parity-check matrix file")
    common.add_argument("--q", type=int, default=None, help="override the modulus in the file header")
    common.add_argument("--M", type=_int_list, default=[2, 3], help="cover sizes, comma separated (default 2,3)")
    common.add_argument("--covers", type=int, default=5, help="random covers per cover size (default 5)")
    common.add_argument("--seed", type=int, default=0, help="master seed for cover sampling (default 0)")
    common.add_argument("--limit", type=int, default=DEFAULT_LIMIT, help="enumeration size cap")
    common.add_argument("--tol", type=float, default=LP_TOL, help="LP solver tolerance")
    common.add_argument("--eig-tol", type=float, default=EIG_TOL, help="relative Jacobi stopping tolerance")
    common.add_argument("--format", choices=["text", "json", "json-like"], default="text")
    common.add_argument("--cover-file", default=None, help="cover assignment file")

    p = argparse.ArgumentParser(prog="pseudobound", description="Pseudodistance bounds for codes over Z_q with q-PSK.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("info", parents=[common], help="code parameters and zero-divisor audit")
    d = sub.add_parser("distance", parents=[common], help="modulated squared distance of a codeword")
    d.add_argument("--codeword", type=_int_list, required=True, help="comma-separated symbols")
    sub.add_parser("enumerate", parents=[common], help="list pseudocodewords of sampled covers")
    b = sub.add_parser("bound", parents=[common], help="eigenvalue or LP lower bound")
    b.add_argument("kind", choices=["eig", "lp"])
    b.add_argument("--export-lp", default=None, help="write the LP in CPLEX LP format")
    sub.add_parser("verify", parents=[common], help="check every bound against sampled pseudocodewords")
    return p


def config_from_args(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=args.command,
        input=args.input,
        bound_kind=getattr(args, "kind", None),
        q=args.q,
        M=args.M,
        covers=args.covers,
        seed=args.seed,
        format="json" if args.format == "json-like" else args.format,
        tol=args.tol,
        eig_tol=args.eig_tol,
        limit=args.limit,
        codeword=getattr(args, "codeword", None),
        export_lp=getattr(args, "export_lp", None),
        cover_file=args.cover_file,
    )


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    cfg = config_from_args(args)
    status, doc = run(cfg)
    if cfg.format == "json":
        sys.stdout.write(dump_report(doc))
    else:
        body = doc.get("result") or {}
        for line in _text(body):
            print(line)
        for w in doc.get("warnings", []):
            print(f"warning: {w}", file=sys.stderr)
    if "error" in doc:
        print(f"error ({doc['error']['kind']}): {doc['error']['message']}", file=sys.stderr)
    return status


if __name__ == "__main__":
    sys.exit(main())
