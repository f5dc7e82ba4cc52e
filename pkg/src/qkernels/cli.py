"""Command-line entry point: find / verify / oracle / search / gen / catalog.

Exit codes let shell pipelines tell outcomes apart:
  0  success
  1  verification failure (the candidate set is not a q-kernel)
  2  precondition violation or malformed input file
  3  a conjecture sweep found a counterexample
  4  usage error (unknown flags, ids, bad parameter syntax)

All documents are JSON with sorted keys; identical inputs give byte-identical
output regardless of --jobs.  Timing is reported only on request, so search
reports stay hash-stable.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction

from .digraph import (
    Digraph,
    DigraphFormatError,
    PreconditionError,
    digraph_to_text,
    find_bipartition,
    read_digraph,
    write_digraph,
)
from .kernels import check_q_kernel, quasikernel
from .small import small_quasikernel
from .large import large_quasikernel, three_kernel_large
from .disjoint import beta_vector, disjoint_qkernels
from .bipartite import bipartite_qkernel
from .generators import family_catalog, generate, pendant_blowup
from .digraph import closed_out_neighborhood
from .oracle import (
    CONJECTURES,
    SearchScope,
    check_conjecture,
    max_covering_quasikernel,
    min_qkernel,
    parse_filters,
    save_report,
)

OK, VERIFY_FAIL, PRECONDITION, COUNTEREXAMPLE, USAGE = 0, 1, 2, 3, 4


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would exit(2); we want 4
        raise _UsageError(message)


def certificate_document(D: Digraph, members: list[int], q: int) -> dict:
    """The canonical verification document; find embeds this verbatim."""
    result = check_q_kernel(D, members, q)
    doc: dict = {"q": q, "vertices": sorted(members), "ok": result.ok}
    if result.ok:
        doc["distances"] = [None if d == math.inf else int(d) for d in result.distances]
    else:
        doc["violation"] = {
            "reason": result.reason,
            "message": result.message(),
            "arc": list(result.arc) if result.arc is not None else None,
            "vertex": result.vertex,
            "distance": None if result.distance in (None, math.inf) else int(result.distance),
        }
    return doc


def _emit(doc: dict) -> None:
    sys.stdout.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")


def _parse_set(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(tok) for tok in text.split(",")]
    except ValueError:
        raise _UsageError(f"expected a comma-separated vertex list, got {text!r}") from None


def _parse_params(text: str | None) -> dict[str, str]:
    params: dict[str, str] = {}
    if not text:
        return params
    for item in text.split(","):
        if "=" not in item:
            raise _UsageError(f"expected key=value in --params, got {item!r}")
        key, value = item.split("=", 1)
        params[key.strip()] = value.strip()
    return params


def _cmd_find(args) -> int:
    D = read_digraph(args.input)
    n = D.n
    sets: list[dict] = []
    bounds: dict[str, str]
    if args.mode == "quasikernel":
        Q = quasikernel(D)
        sets.append({"vertices": sorted(Q), "radius": 2, "size": len(Q),
                     "verification": certificate_document(D, sorted(Q), 2)})
        bounds = {"claimed": "radius <= 2", "achieved": f"size {len(Q)}"}
    elif args.mode == "small":
        Q = small_quasikernel(D)
        cap = n - math.isqrt(n)
        sets.append({"vertices": sorted(Q), "radius": 2, "size": len(Q),
                     "verification": certificate_document(D, sorted(Q), 2)})
        bounds = {"claimed": f"size <= {cap}", "achieved": f"size {len(Q)}"}
    elif args.mode == "large-quasikernel":
        Q = large_quasikernel(D)
        cov = len(closed_out_neighborhood(D, Q))
        sets.append({"vertices": sorted(Q), "radius": 2, "size": len(Q),
                     "verification": certificate_document(D, sorted(Q), 2)})
        bounds = {"claimed": f"coverage^3 >= {n}", "achieved": f"coverage {cov}"}
    elif args.mode == "3kernel-large":
        Q, used = three_kernel_large(D)
        cov = len(closed_out_neighborhood(D, Q))
        sets.append({"vertices": sorted(Q), "radius": used, "size": len(Q),
                     "verification": certificate_document(D, sorted(Q), used)})
        bounds = {"claimed": f"3 * coverage >= {n}", "achieved": f"coverage {cov}"}
    elif args.mode == "disjoint":
        if args.r is None:
            raise _UsageError("--mode disjoint needs --r")
        found = disjoint_qkernels(D, args.r)
        for Q, radius in found:
            sets.append({"vertices": sorted(Q), "radius": radius, "size": len(Q),
                         "verification": certificate_document(D, sorted(Q), radius)})
        betas = beta_vector(args.r)
        bounds = {"claimed": f"radii {list(betas.values)}",
                  "achieved": f"sizes {[len(Q) for Q, _ in found]}"}
    elif args.mode == "bipartite":
        if args.q is None or args.girth is None:
            raise _UsageError("--mode bipartite needs --q and --girth")
        Q = bipartite_qkernel(D, args.q, args.girth)
        sets.append({"vertices": sorted(Q), "radius": args.q, "size": len(Q),
                     "verification": certificate_document(D, sorted(Q), args.q)})
        bounds = {"claimed": f"size <= {Fraction(n, args.girth)}",
                  "achieved": f"size {len(Q)}"}
    else:  # pragma: no cover - argparse choices guard this
        raise _UsageError(f"unknown mode {args.mode!r}")
    _emit({"mode": args.mode, "n": n, "arcs": D.arc_count,
           "sets": sets, "bounds": bounds})
    return OK


def _cmd_verify(args) -> int:
    D = read_digraph(args.input)
    members = _parse_set(args.set)
    doc = certificate_document(D, members, args.q)
    _emit(doc)
    return OK if doc["ok"] else VERIFY_FAIL


def _cmd_oracle(args) -> int:
    D = read_digraph(args.input)
    if args.min_qkernel:
        restrict = None
        if args.restrict is not None:
            if args.restrict in ("U", "V"):
                B = find_bipartition(D)
                if B is None:
                    raise PreconditionError("--restrict U/V needs a bipartite digraph")
                restrict = B.u if args.restrict == "U" else B.v
            else:
                restrict = frozenset(_parse_set(args.restrict))
        answer = min_qkernel(D, args.q, restrict)
        if answer is None:
            _emit({"min_qkernel": None, "q": args.q})
        else:
            size, witness = answer
            _emit({"min_qkernel": {"size": size, "vertices": sorted(witness)},
                   "q": args.q})
        return OK
    cov, witness = max_covering_quasikernel(D)
    _emit({"max_cover": {"coverage": cov, "vertices": sorted(witness)}})
    return OK


def _cmd_search(args) -> int:
    scope = SearchScope(
        n_min=args.n_min,
        n_max=args.n_max,
        samples=args.samples,
        seed=args.seed,
        arc_prob=args.arc_prob,
        filters=parse_filters(args.filters or ""),
        jobs=args.jobs,
        witness_cap=args.witness_cap,
    )
    report = check_conjecture(args.conjecture, _parse_params(args.params), scope,
                              include_timing=args.timings)
    save_report(report, args.out)
    _emit({"target": report.target,
           "digraphs_checked": report.digraphs_checked,
           "counterexamples": len(report.counterexamples),
           "extremal_witnesses": len(report.extremal_witnesses),
           "out": args.out})
    return COUNTEREXAMPLE if report.counterexamples else OK


def _cmd_gen(args) -> int:
    params = _parse_params(args.params)
    if args.family == "pendant_blowup":
        if args.input is None:
            raise _UsageError("--family pendant_blowup needs --input")
        base = read_digraph(args.input)
        D = pendant_blowup(base, int(params.get("k", "1")))
    else:
        D = generate(args.family, **params)
    if args.out:
        write_digraph(D, args.out)
        _emit({"family": args.family, "n": D.n, "arcs": D.arc_count, "out": args.out})
    else:
        sys.stdout.write(digraph_to_text(D))
    return OK


def _cmd_catalog(args) -> int:
    entries = [{
        "name": info.name,
        "params": [{"name": p, "meaning": doc} for p, doc in info.params],
        "certified": info.certified,
        "example": info.example,
    } for info in family_catalog()]
    _emit({"families": entries})
    return OK


def build_parser() -> _Parser:
    parser = _Parser(prog="qkernels",
                     description="digraph q-kernel workbench: construct, verify, search")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("find", help="run a constructive algorithm on a digraph file")
    p.add_argument("--input", required=True)
    p.add_argument("--mode", required=True,
                   choices=["quasikernel", "small", "large-quasikernel",
                            "3kernel-large", "disjoint", "bipartite"])
    p.add_argument("--q", type=int, default=None)
    p.add_argument("--r", type=int, default=None)
    p.add_argument("--girth", type=int, default=None)
    p.set_defaults(run=_cmd_find)

    p = sub.add_parser("verify", help="certify a vertex set as a q-kernel")
    p.add_argument("--input", required=True)
    p.add_argument("--set", required=True, help="comma-separated vertex list")
    p.add_argument("--q", type=int, required=True)
    p.set_defaults(run=_cmd_verify)

    p = sub.add_parser("oracle", help="brute-force ground truth")
    p.add_argument("--input", required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--min-qkernel", action="store_true")
    group.add_argument("--max-cover", action="store_true")
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--restrict", default=None,
                   help="U, V, or a comma-separated vertex list")
    p.set_defaults(run=_cmd_oracle)

    p = sub.add_parser("search", help="sweep a conjecture over small digraphs")
    p.add_argument("--conjecture", required=True, choices=sorted(CONJECTURES))
    p.add_argument("--n-min", type=int, default=2)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--arc-prob", type=float, default=0.5)
    p.add_argument("--filters", default=None)
    p.add_argument("--params", default=None, help="extra key=value parameters")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--witness-cap", type=int, default=32)
    p.add_argument("--timings", action="store_true",
                   help="record wall time in the report (breaks byte determinism)")
    p.add_argument("--out", required=True)
    p.set_defaults(run=_cmd_search)

    p = sub.add_parser("gen", help="emit a catalog family as a digraph file")
    p.add_argument("--family", required=True,
                   choices=[info.name for info in family_catalog()])
    p.add_argument("--params", default=None)
    p.add_argument("--input", default=None, help="base digraph for pendant_blowup")
    p.add_argument("--out", default=None)
    p.set_defaults(run=_cmd_gen)

    p = sub.add_parser("catalog", help="list generator families")
    p.set_defaults(run=_cmd_catalog)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.run(args)
    except _UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return USAGE
    except DigraphFormatError as exc:
        sys.stderr.write(f"malformed digraph file: {exc}\n")
        return PRECONDITION
    except PreconditionError as exc:
        sys.stderr.write(f"precondition violated: {exc}\n")
        return PRECONDITION
    except OSError as exc:
        sys.stderr.write(f"io error: {exc}\n")
        return PRECONDITION
    return OK


if __name__ == "__main__":
    sys.exit(main())
