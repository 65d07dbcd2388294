"""Command-line front end.

Exit codes: 0 success / proper verdict; 1 proper-posedness, hypothesis, or
internal cross-check failure; 2 malformed input. JSON output (--json) is
deterministic byte for byte for fixed inputs and seed: timings go to stderr
only, never into the report.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from fractions import Fraction
from typing import Dict, List, Optional

from . import construct, dimension, macaulay, nodes
from .errors import (
    HypothesisError,
    ImproperNodeSetError,
    InputError,
    InternalCheckError,
    PpsnError,
)
from .mpoly import Polynomial, as_fraction, parse_polynomial

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INPUT = 2


def _read_file(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def _digest(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()[:16]


def _infer_dimension(lines: List[str], override: Optional[int]) -> int:
    if override is not None:
        return override
    best = 0
    for line in lines:
        i = 0
        while i < len(line):
            if line[i] == "x" and i + 1 < len(line) and line[i + 1].isdigit():
                j = i + 1
                while j < len(line) and line[j].isdigit():
                    j += 1
                best = max(best, int(line[i + 1 : j]))
                i = j
            else:
                i += 1
    if best == 0:
        raise InputError("cannot infer the ambient dimension; pass --n")
    return best


def _parse_poly_lines(text: str, n_override: Optional[int]) -> List[Polynomial]:
    lines = [
        stripped
        for raw in text.splitlines()
        if (stripped := raw.split("#", 1)[0].strip())
    ]
    if not lines:
        raise InputError("no polynomials in file")
    n = _infer_dimension(lines, n_override)
    return [parse_polynomial(line, n) for line in lines]


def _load_manifold(args, required: bool = True) -> Optional[macaulay.Manifold]:
    path = getattr(args, "manifold", None)
    if path is None:
        if required:
            raise InputError("--manifold is required")
        return None
    polys = _parse_poly_lines(_read_file(path), getattr(args, "n", None))
    witnesses = ()
    wpath = getattr(args, "witnesses", None)
    if wpath:
        witnesses = tuple(_parse_poly_lines(_read_file(wpath), polys[0].n))
    return macaulay.Manifold(polys, witnesses=witnesses)


def _load_nodes(path: str, n: Optional[int] = None) -> nodes.NodeSet:
    return nodes.parse_nodes_text(_read_file(path), n)


def _load_values(path: str) -> List[Fraction]:
    vals = []
    for raw in _read_file(path).splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            vals.append(as_fraction(line))
    return vals


def _cert_dict(cert: nodes.PPSNCertificate) -> Dict:
    out = {
        "degree": cert.degree,
        "expected_count": cert.expected_count,
        "verdict": cert.verdict,
    }
    if cert.proper:
        out["witness_columns"] = list(cert.witness_columns)
    else:
        out["kernel_functional"] = [str(c) for c in cert.kernel_functional]
    return out


def _emit(args, report: Dict, human: str) -> None:
    if args.json:
        print(json.dumps(report, indent=2, sort_keys=True))
    else:
        print(human)


def _report_base(args, **inputs) -> Dict:
    return {
        "command": " ".join(sys.argv[1:]),
        "inputs": {k: _digest(v) for k, v in inputs.items()},
    }


# -- subcommands ----------------------------------------------------------------


def cmd_dim(args) -> int:
    ks = tuple(int(k) for k in args.degrees.split(","))
    profile = dimension.DegreeProfile(args.n, ks)
    mmax = args.mmax if args.mmax is not None else args.m
    table = dimension.hilbert_table(profile, mmax)
    rows = []
    for j in range(mmax + 1):
        bd = dimension.backward_diff_e(j, profile.n, profile.ks)
        dimension.dim_along(j, profile)  # raises InternalCheckError on mismatch
        rows.append(
            {"m": j, "h": table.h[j], "H": table.H[j], "d": table.d[j], "bdiff": bd}
        )
    report = _report_base(args)
    report.update({"n": profile.n, "degrees": list(profile.ks), "table": rows})
    lines = [f"{'m':>4} {'h':>8} {'H':>8} {'d':>8} {'bdiff':>8}"]
    for r in rows:
        lines.append(
            f"{r['m']:>4} {r['h']:>8} {r['H']:>8} {r['d']:>8} {r['bdiff']:>8}"
        )
    _emit(args, report, "\n".join(lines))
    return EXIT_OK


def cmd_verify(args) -> int:
    manifold = _load_manifold(args, required=False)
    node_set = _load_nodes(args.nodes)
    if manifold is not None:
        node_set = nodes.NodeSet(node_set.points, manifold)
    cert = nodes.verify_ppsn(node_set, manifold, args.m)
    report = _report_base(args, nodes=_read_file(args.nodes))
    report["certificate"] = _cert_dict(cert)
    _emit(args, report, f"{cert.verdict} at degree {args.m} ({len(node_set)} nodes)")
    return EXIT_OK if cert.proper else EXIT_FAIL


def cmd_reduce(args) -> int:
    manifold = _load_manifold(args)
    if args.poly_file:
        text = _read_file(args.poly_file)
    else:
        text = args.poly
    f = parse_polynomial(text, manifold.n)
    form = macaulay.reduce_modulo(f, manifold)
    report = _report_base(args)
    report.update(
        {
            "remainder": str(form.remainder),
            "cofactors": [str(c) for c in form.cofactors],
        }
    )
    human = "remainder: {}\n{}".format(
        form.remainder,
        "\n".join(f"cofactor {i + 1}: {c}" for i, c in enumerate(form.cofactors)),
    )
    _emit(args, report, human)
    return EXIT_OK


def cmd_hbase(args) -> int:
    manifold = _load_manifold(args)
    rep = macaulay.verify_hbase(
        manifold, args.mmax, trials=args.trials, seed=args.seed
    )
    report = _report_base(args)
    report.update(
        {
            "seed": rep.seed,
            "trials_per_degree": rep.trials_per_degree,
            "passes": [list(p) for p in rep.passes],
            "failures": list(rep.failures),
        }
    )
    human = "\n".join(
        [f"degree {m}: {ok}/{rep.trials_per_degree} passed" for m, ok in rep.passes]
        + list(rep.failures)
    )
    _emit(args, report, human)
    return EXIT_OK if rep.all_passed else EXIT_FAIL


def cmd_extract(args) -> int:
    system = nodes.parse_system_text(_read_file(args.system))
    res = nodes.intersect_factorable(system)
    if not res.sufficient:
        raise HypothesisError("; ".join(res.failures))
    manifold = res.nodes.manifold
    out = nodes.extract_nested_ppsn(res.nodes, manifold, args.m)
    cert = nodes.verify_ppsn(out, manifold, args.m)
    report = _report_base(args, system=_read_file(args.system))
    report.update(
        {
            "points": [[str(c) for c in p] for p in out.points],
            "certificate": _cert_dict(cert),
        }
    )
    _emit(args, report, nodes.format_nodes(out) + f"\n# {cert.verdict} at degree {args.m}")
    return EXIT_OK if cert.proper else EXIT_FAIL


def cmd_interpolate(args) -> int:
    manifold = _load_manifold(args, required=False)
    node_set = _load_nodes(args.nodes)
    if manifold is not None:
        node_set = nodes.NodeSet(node_set.points, manifold)
    values = _load_values(args.values)
    problem = construct.InterpolationProblem(
        manifold=manifold, m=args.m, nodes=node_set, values=tuple(values)
    )
    poly = construct.interpolate(problem)
    report = _report_base(args, nodes=_read_file(args.nodes), values=_read_file(args.values))
    report["polynomial"] = str(poly)
    _emit(args, report, str(poly))
    return EXIT_OK


def cmd_superpose(args) -> int:
    manifold = _load_manifold(args)
    sub = nodes.NodeSet(_load_nodes(args.sub).points, manifold)
    sup = _load_nodes(args.super_nodes)
    step = construct.SuperpositionStep(
        sub_manifold=manifold, sub_nodes=sub, super_nodes=sup, m=args.m
    )
    union, cert = construct.superpose_nodes(step)
    report = _report_base(args)
    report.update(
        {
            "points": [[str(c) for c in p] for p in union.points],
            "certificate": _cert_dict(cert),
        }
    )
    _emit(args, report, nodes.format_nodes(union) + f"\n# {cert.verdict} at degree {args.m}")
    return EXIT_OK


def cmd_cb_reduce(args) -> int:
    system = nodes.parse_system_text(_read_file(args.system))
    res = nodes.intersect_factorable(system)
    if not res.sufficient:
        raise HypothesisError("; ".join(res.failures))
    removed = _load_nodes(args.remove)
    partition = construct.CBPartition(full=res.nodes, removed=removed)
    remaining, cert = construct.cb_reduce(partition, res.nodes.manifold, args.m)
    report = _report_base(args, system=_read_file(args.system))
    report.update(
        {
            "points": [[str(c) for c in p] for p in remaining.points],
            "certificate": _cert_dict(cert),
        }
    )
    _emit(args, report, nodes.format_nodes(remaining) + f"\n# {cert.verdict} at degree {args.m}")
    return EXIT_OK


def cmd_cb_check(args) -> int:
    system = nodes.parse_system_text(_read_file(args.system))
    res = nodes.intersect_factorable(system)
    if not res.sufficient:
        raise HypothesisError("; ".join(res.failures))
    manifold = res.nodes.manifold
    removed = _load_nodes(args.remove)
    f = parse_polynomial(args.poly, manifold.n)
    partition = construct.CBPartition(full=res.nodes, removed=removed)
    verdict = construct.cb_check(
        f, partition, manifold, args.m, require_ppsn_removed=args.require_ppsn
    )
    report = _report_base(args, system=_read_file(args.system))
    report.update(
        {
            "vanishes_on_removed": verdict.vanishes_on_removed,
            "exception_hypersurface": (
                str(verdict.exception_hypersurface)
                if verdict.exception_hypersurface is not None
                else None
            ),
            "consistent": verdict.consistent,
        }
    )
    if verdict.vanishes_on_removed:
        human = "vanishes on the removed points"
    elif verdict.exception_hypersurface is not None:
        human = f"exception branch: removed points lie on {verdict.exception_hypersurface}"
    else:
        human = "INCONSISTENT: trichotomy violated"
    _emit(args, report, human)
    return EXIT_OK if verdict.consistent else EXIT_FAIL


def cmd_chain(args) -> int:
    system = nodes.parse_system_text(_read_file(args.system))
    x0 = tuple(as_fraction(c.strip()) for c in args.x0.split(","))
    chain = construct.build_curve_chain(system, args.t, args.mmax, x0)
    report = _report_base(args, system=_read_file(args.system))
    report["levels"] = [
        {
            "degree": e.degree,
            "points": [[str(c) for c in p] for p in e.nodes.points],
            "certificate": _cert_dict(e.certificate),
        }
        for e in chain.entries
    ]
    human_lines = []
    for e in chain.entries:
        human_lines.append(f"degree {e.degree}: {len(e.nodes)} points ({e.certificate.verdict})")
    _emit(args, report, "\n".join(human_lines))
    return EXIT_OK


# -- parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ppsn",
        description="Exact multivariate interpolation on algebraic manifolds: "
        "dimension tables, node-set certificates, and constructions.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p):
        p.add_argument("--json", action="store_true", help="emit a JSON report")
        p.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
        p.add_argument("--n", type=int, default=None, help="ambient dimension override")

    p = sub.add_parser("dim", help="dimension table for a degree profile")
    common(p)
    p.add_argument("--degrees", required=True, help="comma-separated degrees k_1..k_s")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--mmax", type=int, default=None)
    p.set_defaults(func=cmd_dim)

    p = sub.add_parser("verify", help="certify a node set at a degree")
    common(p)
    p.add_argument("--manifold", help="file: one defining polynomial per line")
    p.add_argument("--witnesses", help="file: completing hypersurfaces")
    p.add_argument("--nodes", required=True, help="file: one point per line")
    p.add_argument("--m", type=int, required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("reduce", help="canonical form modulo a manifold")
    common(p)
    p.add_argument("--manifold", required=True)
    p.add_argument("--poly", help="polynomial expression")
    p.add_argument("--poly-file", dest="poly_file", help="file with one expression")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("hbase", help="sampled H-base round-trip verification")
    common(p)
    p.add_argument("--manifold", required=True)
    p.add_argument("--witnesses")
    p.add_argument("--mmax", type=int, required=True)
    p.add_argument("--trials", type=int, default=5)
    p.set_defaults(func=cmd_hbase)

    p = sub.add_parser("extract", help="nested extraction from a factorable system")
    common(p)
    p.add_argument("--system", required=True, help="file: one factored hypersurface per line")
    p.add_argument("--m", type=int, required=True)
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("interpolate", help="exact interpolation at certified nodes")
    common(p)
    p.add_argument("--manifold")
    p.add_argument("--witnesses")
    p.add_argument("--nodes", required=True)
    p.add_argument("--values", required=True, help="file: one rational per line")
    p.add_argument("--m", type=int, required=True)
    p.set_defaults(func=cmd_interpolate)

    p = sub.add_parser("superpose", help="superposition of two node sets")
    common(p)
    p.add_argument("--manifold", required=True, help="sub-manifold; last line is the splitting polynomial")
    p.add_argument("--witnesses")
    p.add_argument("--sub", required=True, help="file: nodes on the sub-manifold")
    p.add_argument("--super", dest="super_nodes", required=True, help="file: nodes on the larger manifold")
    p.add_argument("--m", type=int, required=True)
    p.set_defaults(func=cmd_superpose)

    p = sub.add_parser("cb-reduce", help="Cayley-Bacharach reduction of an intersection")
    common(p)
    p.add_argument("--system", required=True)
    p.add_argument("--remove", required=True, help="file: points to remove")
    p.add_argument("--m", type=int, required=True)
    p.set_defaults(func=cmd_cb_reduce)

    p = sub.add_parser("cb-check", help="vanish-or-degenerate trichotomy check")
    common(p)
    p.add_argument("--system", required=True)
    p.add_argument("--remove", required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--poly", required=True)
    p.add_argument("--require-ppsn", dest="require_ppsn", action="store_true")
    p.set_defaults(func=cmd_cb_check)

    p = sub.add_parser("chain", help="PPSN chain along a curve of a factorable system")
    common(p)
    p.add_argument("--system", required=True)
    p.add_argument("--t", type=int, required=True, help="1-based index of the omitted hypersurface")
    p.add_argument("--mmax", type=int, required=True)
    p.add_argument("--x0", required=True, help="comma-separated coordinates of the seed point")
    p.set_defaults(func=cmd_chain)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.monotonic()
    try:
        code = args.func(args)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ImproperNodeSetError, HypothesisError, InternalCheckError) as exc:
        print(f"failure: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except PpsnError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    if not args.json:
        elapsed = time.monotonic() - start
        print(f"[{elapsed:.3f}s]", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
