"""Command-line interface: ``qface <command> [options]``.

Exit codes: 0 success, 1 input or domain error, 2 verification mismatch.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from dataclasses import asdict, dataclass
from pathlib import Path

from qface import __version__
from qface.errors import QFaceError
from qface.faces import face_lattice, facet_masks, is_face_ranked
from qface.families import FAMILIES, gen
from qface.geometry import dim_de
from qface.oracle import verify
from qface.quiver import EdgeSubset, Quiver, components, coconnectivity, parse_quiver
from qface.rank import check_cycle_balance, find_rank_function
from qface import _kernels

EXIT_OK, EXIT_ERROR, EXIT_MISMATCH = 0, 1, 2


@dataclass
class Report:
    command: str
    input_digest: str | None
    result: dict
    elapsed_seconds: float
    version: str = __version__

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> Report:
        return cls(**json.loads(text))


def _vertex_key(v: str):
    return (0, int(v), "") if v.lstrip("-").isdigit() else (1, 0, v)


def canonical(q: Quiver) -> Quiver:
    """Relabel so vertex order no longer depends on input line order."""
    order = sorted(q.vertices, key=_vertex_key)
    return Quiver.from_edges(sorted(q.edge_ids(), key=lambda e: (_vertex_key(e[0]), _vertex_key(e[1]))), order)


def digest(q: Quiver) -> str:
    payload = json.dumps(canonical(q).to_json(), sort_keys=True)
    return hashlib.sha256(payload.encode()).hexdigest()


def _edges_json(r: EdgeSubset) -> list[list[str]]:
    return [list(e) for e in r.edge_ids()]


def _edges_text(r: EdgeSubset) -> str:
    return "{" + ", ".join(f"{t}->{h}" for t, h in r.edge_ids()) + "}"


def parse_sub(q: Quiver, text: str) -> EdgeSubset:
    """Edges written as 'tail head', separated by ';', ',' or newlines."""
    pairs = []
    for chunk in text.replace(",", ";").replace("\n", ";").split(";"):
        tokens = chunk.split()
        if not tokens:
            continue
        if len(tokens) != 2:
            raise QFaceError(f"--sub expects 'tail head' pairs, got {chunk.strip()!r}")
        pairs.append(tuple(tokens))
    return q.subset(pairs)


def load(path: str) -> Quiver:
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    return canonical(parse_quiver(text))


# -- commands ---------------------------------------------------------------------------


def cmd_dim(q: Quiver, args) -> tuple[dict, str]:
    d = dim_de(q)
    result = {
        "dim": d,
        "coconnectivity": coconnectivity(q),
        "components": len(components(q)),
        "has_rank_function": find_rank_function(q) is not None,
    }
    text = f"dim {d}"
    if q.n_edges == 0:
        result["note"] = "no edges: empty polytope, dimension -1 by convention"
        text += " (no edges: empty polytope, dimension -1 by convention)"
    return result, text


def cmd_rank(q: Quiver, args) -> tuple[dict, str]:
    rank = find_rank_function(q)
    values = None if rank is None else rank.as_dict()
    result = {"rank_function": values, "cycle_balanced": check_cycle_balance(q)}
    if values is None:
        return result, "no rank function"
    return result, "rank function: " + " ".join(f"{v}:{x}" for v, x in values.items())


def cmd_facets(q: Quiver, args) -> tuple[dict, str]:
    masks = facet_masks(q, method=args.method)
    rows = []
    lines = [f"{len(masks)} facets, dim {dim_de(q)}"]
    for m in masks:
        r = EdgeSubset(q, m)
        code = int(_kernels.facet_code(*q.kernel_args(), q.full_mask, m))
        rows.append({"edges": _edges_json(r), "condition": code})
        lines.append(f"{_edges_text(r)}  condition {code}")
    return {"dim": dim_de(q), "count": len(masks), "facets": rows}, "\n".join(lines)


def cmd_faces(q: Quiver, args) -> tuple[dict, str]:
    lattice = face_lattice(q)
    rows, lines = [], []
    for d, masks in sorted(lattice.by_dim().items()):
        if args.max_dim is not None and d > args.max_dim:
            continue
        for m in masks:
            r = EdgeSubset(q, m)
            rows.append({"dim": d, "edges": _edges_json(r)})
            lines.append(f"dim {d}: {_edges_text(r)}")
    result = {"dim": lattice.dim, "total": len(lattice), "faces": rows}
    return result, "\n".join([f"{len(lattice)} faces, dim {lattice.dim}"] + lines)


def cmd_fvector(q: Quiver, args) -> tuple[dict, str]:
    fv = face_lattice(q).f_vector()
    return {"dim": fv.dim, "f": list(fv.counts), "euler_sum": fv.euler_sum()}, str(fv)


def cmd_is_face(q: Quiver, args) -> tuple[dict, str]:
    r = parse_sub(q, args.sub)
    if r.mask == q.full_mask or r.mask == 0:
        face = True
    elif find_rank_function(q) is not None:
        face = is_face_ranked(q, r)
    else:
        face = r.mask in face_lattice(q)
    d = dim_de(r) if face else None
    return {"face": face, "dim": d, "edges": _edges_json(r)}, f"face, dim {d}" if face else "not a face"


def cmd_verify(q: Quiver, args) -> tuple[dict, str]:
    fault = args.inject_fault or bool(os.environ.get("QFACE_INJECT_FAULT"))
    report = verify(q, inject_fault=fault)
    result = {"match": report.match, "faces": report.n_faces, "dim": report.dim, "discrepancy": report.discrepancy}
    return result, str(report)


def cmd_gen(args) -> tuple[Quiver, dict, str]:
    q = gen(args.family, *args.params)
    return q, {"family": args.family, "params": list(args.params), "quiver": q.to_json()}, q.to_edgelist().rstrip("\n")


COMMANDS = {
    "dim": cmd_dim,
    "rank": cmd_rank,
    "facets": cmd_facets,
    "faces": cmd_faces,
    "fvector": cmd_fvector,
    "is-face": cmd_is_face,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qface", description="Faces of directed edge polytopes of quivers.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    sub = parser.add_subparsers(dest="command", required=True)

    def file_command(name, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("file", help="edge-list or JSON quiver file ('-' for stdin)")
        return p

    file_command("dim", "dimension of DE(Q)")
    file_command("rank", "normalized rank function, if any")
    p = file_command("facets", "list the facets")
    p.add_argument("--method", choices=("auto", "pruned", "exhaustive"), default="auto")
    p = file_command("faces", "list every face")
    p.add_argument("--max-dim", type=int, default=None, help="only print faces up to this dimension")
    file_command("fvector", "f-vector of proper nonempty faces")
    p = file_command("is-face", "test whether an edge subset spans a face")
    p.add_argument("--sub", required=True, help="edges as 'tail head' pairs separated by ';'")
    p = file_command("verify", "compare the face lattice with the LP oracle")
    p.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    p = sub.add_parser("gen", parents=[common], help=f"generate a family member ({', '.join(FAMILIES)})")
    p.add_argument("family", choices=FAMILIES)
    p.add_argument("params", nargs="*")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.perf_counter()
    try:
        if args.command == "gen":
            q, result, text = cmd_gen(args)
        else:
            q = load(args.file)
            result, text = COMMANDS[args.command](q, args)
    except (QFaceError, OSError) as exc:
        print(f"qface {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    elapsed = time.perf_counter() - start
    if args.json:
        print(Report(args.command, digest(q), result, round(elapsed, 6)).to_json())
    else:
        print(text)
    if args.command == "verify" and not result["match"]:
        return EXIT_MISMATCH
    return EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
