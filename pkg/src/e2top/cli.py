"""Command line interface.

Exit codes: 0 success, 1 verification failure, 2 input error,
3 resource budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path

from . import catalog as cat
from .chains import dump_chain_complex
from .errors import E2TopError, GroupTooLarge, InvalidInput, TooLarge, UnknownGroup
from .groups import (
    abelian_subgroups,
    center,
    commutator_subgroup,
    is_abelian,
    is_transitively_commutative,
    read_group_file,
)
from .homology import HomologyGroup, all_homology, reduced
from .pi1 import TRIVIAL, commutator_hom_image, pi1_presentation, pi1_trivial_certificate
from .presentation import dump_presentation
from .simplicial import (
    DEFAULT_BUDGET,
    coset_poset_complex,
    e2_chain_complex,
    ebar_chain_complex,
)

SCHEMA = 1
MAX_DIM_CAP = 8
MODELS = ("e2", "ebar", "coset")

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3

_BUILDERS = {
    "e2": lambda G, md, budget: e2_chain_complex(G, md, budget=budget),
    "ebar": lambda G, md, budget: ebar_chain_complex(G, md, budget=budget),
    "coset": lambda G, md, budget: coset_poset_complex(G, budget=budget),
}


def resolve_budget(flag_value):
    if flag_value is not None:
        return flag_value
    env = os.environ.get("E2TOP_BUDGET")
    if env:
        try:
            return int(env)
        except ValueError:
            raise InvalidInput(f"E2TOP_BUDGET must be an integer, got {env!r}") from None
    return DEFAULT_BUDGET


def resolve_group(args):
    if getattr(args, "group_file", None):
        path = Path(args.group_file)
        if not path.exists():
            raise InvalidInput(f"no such group file: {path}")
        return read_group_file(path)
    if not args.group:
        raise InvalidInput("one of --group or --group-file is required")
    return cat.group_by_name(args.group)


def model_homology(G, model, max_dim, budget):
    """Chain complex and homology of one model in degrees ``< max_dim``."""
    C = _BUILDERS[model](G, max_dim, budget)
    H = all_homology(C, [d for d in range(max_dim) if d in C.valid_degrees])
    if C.finite:
        # a finite complex has no homology above its top dimension
        for d in range(C.max_dim + 1, max_dim):
            H[d] = HomologyGroup(0)
    return C, H


def analyze(G, max_dim, models=MODELS, budget=DEFAULT_BUDGET, timings=True,
            dump_chains=None, dump_pi1=None):
    """Build the analysis report dict for one group."""
    report = {
        "schema": SCHEMA,
        "group": G.name,
        "order": G.order,
        "is_abelian": is_abelian(G),
        "is_tc": is_transitively_commutative(G),
        "center_order": center(G).order,
        "commutator_subgroup_order": commutator_subgroup(G).order,
        "abelian_subgroups": len(abelian_subgroups(G)),
        "max_dim": max_dim,
        "models": {},
        "complete": True,
    }
    clock = {}
    for model in models:
        t0 = time.perf_counter()
        try:
            C, H = model_homology(G, model, max_dim, budget)
        except TooLarge as exc:
            report["models"][model] = {"error": str(exc), "degree_reached": exc.degree}
            report["complete"] = False
            continue
        report["models"][model] = {
            "simplex_counts": C.ranks(),
            "homology": {str(d): h.as_dict() for d, h in H.items()},
        }
        if dump_chains:
            out = Path(dump_chains)
            out.mkdir(parents=True, exist_ok=True)
            (out / f"{_safe(G.name)}.{model}.chains").write_text(dump_chain_complex(C))
        clock[model] = round(time.perf_counter() - t0, 4)
    t0 = time.perf_counter()
    try:
        cert = pi1_trivial_certificate(G, budget=budget)
        report["pi1"] = cert.as_dict()
        if dump_pi1:
            Path(dump_pi1).write_text(dump_presentation(pi1_presentation(G, budget=budget)))
    except TooLarge as exc:
        report["pi1"] = {"error": str(exc)}
        report["complete"] = False
    clock["pi1"] = round(time.perf_counter() - t0, 4)
    if timings:
        report["timings"] = clock
    return report


def _safe(name):
    return "".join(ch if ch.isalnum() or ch in "+-_" else "_" for ch in name)


def _fmt_h(h):
    parts = []
    if h["betti"]:
        parts.append("Z" if h["betti"] == 1 else f"Z^{h['betti']}")
    parts += [f"Z/{t}" for t in h["torsion"]]
    return " + ".join(parts) or "0"


def format_table(report) -> str:
    lines = [
        f"group {report['group']}  order {report['order']}  "
        f"abelian {report['is_abelian']}  TC {report['is_tc']}",
    ]
    for model, data in report["models"].items():
        if "error" in data:
            lines.append(f"  {model:6s} INCOMPLETE: {data['error']}")
            continue
        hs = "  ".join(f"H{d}={_fmt_h(h)}" for d, h in data["homology"].items())
        lines.append(f"  {model:6s} counts={data['simplex_counts']}  {hs}")
    pi1 = report.get("pi1", {})
    if "error" in pi1:
        lines.append(f"  pi1    INCOMPLETE: {pi1['error']}")
    else:
        lines.append(f"  pi1    {pi1['verdict']}: {pi1['witness']}")
    return "\n".join(lines)


def cmd_analyze(args):
    G = resolve_group(args)
    if not 1 <= args.max_dim <= MAX_DIM_CAP:
        raise InvalidInput(f"--max-dim must be in 1..{MAX_DIM_CAP}")
    models = [m.strip() for m in args.models.split(",") if m.strip()]
    for m in models:
        if m not in MODELS:
            raise InvalidInput(f"unknown model {m!r}; choose from {','.join(MODELS)}")
    report = analyze(G, args.max_dim, models, resolve_budget(args.budget_simplices),
                     timings=not args.no_timings, dump_chains=args.dump_chains,
                     dump_pi1=args.dump_pi1)
    if args.format == "json":
        print(json.dumps(report, indent=2, sort_keys=True))
    else:
        print(format_table(report))
    return EXIT_OK if report["complete"] else EXIT_BUDGET


def catalog_names(which, big):
    if which == "default":
        names = list(cat.DEFAULT_CATALOG)
    elif which == "abelian":
        names = [n for n in cat.DEFAULT_CATALOG if is_abelian(cat.group_by_name(n))]
    elif which == "nonabelian":
        names = [n for n in cat.DEFAULT_CATALOG if not is_abelian(cat.group_by_name(n))]
    else:
        names = [n.strip() for n in which.split(",") if n.strip()]
        if not names:
            raise InvalidInput("empty catalog")
    if big:
        names += [n for n in cat.BIG_CATALOG if n not in names]
    return names


def verify_group(G, max_dim=3, budget=DEFAULT_BUDGET):
    """One row of the theorem harness: abelian <=> pi1 trivial <=> acyclic."""
    abelian = is_abelian(G)
    cert = pi1_trivial_certificate(G, budget=budget)
    _, H = model_homology(G, "e2", max_dim, budget)
    acyclic = all(reduced(h, d).is_zero for d, h in H.items())
    image_ok = commutator_hom_image(G) == commutator_subgroup(G)
    trivial = cert.verdict == TRIVIAL
    ok = (abelian == trivial == acyclic) and image_ok and cert.verdict != "Unknown"
    return {
        "group": G.name,
        "order": G.order,
        "abelian": abelian,
        "pi1": cert.verdict,
        "witness": cert.witness,
        "reduced_homology_zero": acyclic,
        "homology": {str(d): h.as_dict() for d, h in H.items()},
        "pass": ok,
    }


def cmd_verify_theorem(args):
    names = catalog_names(args.catalog, args.big)
    budget = resolve_budget(args.budget_simplices)
    rows = []
    status = EXIT_OK
    for name in names:
        G = cat.group_by_name(name)
        if G.order > args.max_order:
            continue
        t0 = time.perf_counter()
        try:
            row = verify_group(G, args.max_dim, budget)
        except TooLarge as exc:
            row = {"group": name, "order": G.order, "pass": False, "error": str(exc)}
            status = max(status, EXIT_BUDGET)
        if not args.no_timings:
            row["seconds"] = round(time.perf_counter() - t0, 3)
        if not row["pass"] and status == EXIT_OK:
            status = EXIT_FAIL
        rows.append(row)
        if args.format == "table":
            verdict = "PASS" if row["pass"] else "FAIL"
            detail = row.get("error") or (
                f"abelian={row['abelian']} pi1={row['pi1']} "
                f"H~=0:{row['reduced_homology_zero']} [{row['witness']}]"
            )
            print(f"{verdict}  {row['group']:8s} |G|={row['order']:<4d} {detail}", flush=True)
    if args.format == "json":
        print(json.dumps({"schema": SCHEMA, "results": rows}, indent=2, sort_keys=True))
    else:
        npass = sum(r["pass"] for r in rows)
        print(f"{npass}/{len(rows)} groups passed")
    return status


def compare_models(G, max_deg, budget=DEFAULT_BUDGET):
    """Reduced homology of each model in degrees ``0..max_deg`` and the
    list of degrees where the models disagree."""
    table = {}
    for model in MODELS:
        _, H = model_homology(G, model, max_deg + 1, budget)
        table[model] = {d: reduced(H[d], d) for d in range(max_deg + 1)}
    differing = [d for d in range(max_deg + 1)
                 if len({table[m][d] for m in MODELS}) != 1]
    return table, differing


def cmd_compare_models(args):
    G = resolve_group(args)
    table, differing = compare_models(G, args.max_deg, resolve_budget(args.budget_simplices))
    if args.format == "json":
        out = {
            "schema": SCHEMA,
            "group": G.name,
            "reduced_homology": {m: {str(d): h.as_dict() for d, h in hs.items()}
                                 for m, hs in table.items()},
            "differing_degrees": differing,
            "agree": not differing,
        }
        print(json.dumps(out, indent=2, sort_keys=True))
    else:
        for d in range(args.max_deg + 1):
            row = "  ".join(f"{m}={table[m][d]}" for m in MODELS)
            mark = "DIFF" if d in differing else "ok"
            print(f"H~{d}: {row}  {mark}")
        print("models agree" if not differing else f"models differ in degrees {differing}")
    return EXIT_OK if not differing else EXIT_FAIL


def build_parser():
    p = argparse.ArgumentParser(
        prog="e2top",
        description="Homology and fundamental group of E(2,G) for finite groups.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, group=True):
        if group:
            sp.add_argument("--group", help="catalog name, e.g. S3, Q8, C2xC4, ES+32")
            sp.add_argument("--group-file", help="file with 'degree N' and generator lines")
        sp.add_argument("--format", choices=("json", "table"), default="table")
        sp.add_argument("--budget-simplices", type=int, default=None,
                        help=f"simplex budget (default {DEFAULT_BUDGET}, env E2TOP_BUDGET)")
        sp.add_argument("--no-timings", action="store_true")

    a = sub.add_parser("analyze", help="homology and pi1 report for one group")
    common(a)
    a.add_argument("--max-dim", type=int, default=3)
    a.add_argument("--models", default="e2,ebar,coset")
    a.add_argument("--dump-chains", metavar="DIR", help="write chain complexes as text")
    a.add_argument("--dump-pi1", metavar="FILE", help="write the pi1 presentation")
    a.set_defaults(func=cmd_analyze)

    v = sub.add_parser("verify-theorem", help="abelian <=> pi1 trivial <=> acyclic")
    common(v, group=False)
    v.add_argument("--catalog", default="default",
                   help="default | abelian | nonabelian | comma separated names")
    v.add_argument("--max-order", type=int, default=24)
    v.add_argument("--max-dim", type=int, default=3)
    v.add_argument("--big", action="store_true", help="include ES+32 and ES-32")
    v.set_defaults(func=cmd_verify_theorem)

    c = sub.add_parser("compare-models", help="compare homology of e2, ebar and coset")
    common(c)
    c.add_argument("--max-deg", type=int, default=2)
    c.set_defaults(func=cmd_compare_models)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UnknownGroup, InvalidInput) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (TooLarge, GroupTooLarge) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except E2TopError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
