"""Command-line interface: ``finmod ring-info | check | verify``.

Exit codes: 0 ok, 1 verification failure, 2 usage error, 3 bound exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass
from pathlib import Path

from . import __version__
from .catalog import Catalog, load_or_build
from .domains import (
    classify_at_scale,
    is_subinjective,
    is_subprojective,
    sier_verdict,
    sper_verdict,
    subinjectivity_witness,
    subprojectivity_witness,
)
from .envelopes import injective_hull, is_injective
from .errors import BoundExceeded, FinmodError, UnknownSelector
from .module import FiniteModule, direct_sum, regular_module
from .paperlab import CORPUS, SUITES, render_table, run_all
from .ring import BUILTIN_RINGS, FiniteRing, builtin_ring, load_ring
from .ringprops import ring_profile
from .structure import is_essential, jacobson_radical, quotient, simple_modules

SCHEMA_VERSION = "1"
EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BOUND = 0, 1, 2, 3

PREDICATES = ("subinjective", "subprojective", "sier", "sper", "injective-hull", "classify")


@dataclass
class RunConfig:
    ring: str
    max_size: int = 64
    max_gens: int = 2
    cache_dir: str | None = None
    format: str = "table"
    jobs: int = 1
    seed: int = 0

    def header(self) -> dict:
        return {"schema_version": SCHEMA_VERSION, "tool_version": __version__, "config": asdict(self)}


def resolve_ring(source: str) -> FiniteRing:
    try:
        return builtin_ring(source)
    except KeyError:
        if Path(source).exists():
            return load_ring(source)
        raise UnknownSelector(f"{source!r} is neither a built-in ring ({', '.join(BUILTIN_RINGS)}) nor a file")


def resolve_module(sel: str, ring: FiniteRing, cat: Catalog) -> list[tuple[str, FiniteModule]]:
    """Selector grammar: R, R/J, J, simple:i, sum:SEL+SEL+..., a catalog id, or all."""
    sel = sel.strip()
    if sel == "all":
        return [(cid, M) for cid, M in cat]
    if sel == "R":
        return [(sel, regular_module(ring))]
    if sel == "J":
        return [(sel, jacobson_radical(ring).module())]
    if sel == "R/J":
        return [(sel, quotient(regular_module(ring), jacobson_radical(ring))[0])]
    if sel.startswith("simple:"):
        sims = simple_modules(ring)
        try:
            return [(sel, sims[int(sel.split(":", 1)[1])])]
        except (ValueError, IndexError):
            raise UnknownSelector(f"{sel!r}: ring has {len(sims)} simple modules") from None
    if sel.startswith("sum:"):
        parts = [p for p in sel[4:].split("+") if p]
        mods = []
        for p in parts:
            got = resolve_module(p, ring, cat)
            if len(got) != 1:
                raise UnknownSelector(f"{p!r} does not name a single module")
            mods.append(got[0][1])
        if not mods:
            raise UnknownSelector("empty sum")
        return [(sel, direct_sum(*mods))]
    try:
        return [(sel, cat.module(sel))]
    except KeyError:
        raise UnknownSelector(f"unknown module selector {sel!r}") from None


def _one(sel: str, ring, cat) -> tuple[str, FiniteModule]:
    got = resolve_module(sel, ring, cat)
    if len(got) != 1:
        raise UnknownSelector(f"{sel!r} must name a single module here")
    return got[0]


# -- commands ----------------------------------------------------------------

def cmd_ring_info(cfg: RunConfig) -> dict:
    ring = resolve_ring(cfg.ring)
    cat = load_or_build(ring, cfg.max_size, cfg.max_gens, cfg.cache_dir)
    prof = ring_profile(ring, cat)
    J = jacobson_radical(ring)
    return {
        **cfg.header(),
        "command": "ring-info",
        "ring": {"name": ring.name, "m": ring.m, "rank": ring.rank, "size": ring.size, "digest": ring.digest},
        "jacobson_radical": {"size": J.size, "basis": J.W.tolist()},
        "simples": [{"label": S.label, "size": S.size} for S in simple_modules(ring)],
        "catalog": {"classes": len(cat), "bound": cat.max_size, "max_gens": cat.max_gens},
        "profile": prof.to_dict(),
    }


def _mod_summary(cat: Catalog, label: str, M: FiniteModule) -> dict:
    return {"selector": label, "id": cat.identify(M), "size": M.size}


def cmd_check(cfg: RunConfig, predicate: str, module=None, a=None, b=None) -> dict:
    ring = resolve_ring(cfg.ring)
    cat = load_or_build(ring, cfg.max_size, cfg.max_gens, cfg.cache_dir)
    results = []
    if predicate in ("subinjective", "subprojective"):
        if a is None or b is None:
            raise UnknownSelector(f"{predicate} needs --a and --b")
        for lb, B in resolve_module(b, ring, cat):
            for la, A in resolve_module(a, ring, cat):
                if predicate == "subinjective":
                    wit = subinjectivity_witness(B, A)
                    meaning = "B lies in InInv(A): every map B -> A extends along every extension of B"
                else:
                    wit = subprojectivity_witness(B, A)
                    meaning = "B lies in PrInv(A): every map A -> B lifts along every epimorphism onto B"
                row = {"b": _mod_summary(cat, lb, B), "a": _mod_summary(cat, la, A), "value": wit is None, "meaning": meaning}
                if wit is not None:
                    row["failing_hom"] = wit.images.tolist()
                results.append(row)
    else:
        if module is None:
            raise UnknownSelector(f"{predicate} needs --module")
        for lm, M in resolve_module(module, ring, cat):
            row = {"module": _mod_summary(cat, lm, M)}
            if predicate == "sier":
                row["verdict"] = sier_verdict(M, cat).to_dict()
            elif predicate == "sper":
                row["verdict"] = sper_verdict(M, cat).to_dict()
            elif predicate == "injective-hull":
                h = injective_hull(M, cfg.seed)
                row["hull"] = {
                    "size": h.hull.size,
                    "id": cat.identify(h.hull, register=False),
                    "embedding_injective": h.embedding.is_injective(),
                    "image_essential": is_essential(h.embedding.image(), h.hull),
                    "hull_injective": is_injective(h.hull),
                    "seed": h.seed,
                }
            elif predicate == "classify":
                row["classification"] = classify_at_scale(M, cat)
            else:
                raise UnknownSelector(f"unknown predicate {predicate!r}")
            results.append(row)
    return {**cfg.header(), "command": "check", "predicate": predicate, "bound": cat.max_size, "results": results}


def cmd_verify(cfg: RunConfig, selector: str, rings=None, out_dir=None, progress=None) -> tuple[int, list]:
    suites = list(SUITES) if selector == "all" else [s.strip() for s in selector.split(",")]
    for s in suites:
        if s not in SUITES:
            raise UnknownSelector(f"unknown suite {s!r}; known: {', '.join(SUITES)}")
    reports = run_all(rings or CORPUS, suites, max_size=cfg.max_size, max_gens=cfg.max_gens,
                      cache_dir=cfg.cache_dir, jobs=cfg.jobs, progress=progress)
    if out_dir is not None:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        doc = {**cfg.header(), "command": "verify", "reports": [r.to_dict() for r in reports]}
        (out / "verify-report.json").write_text(json.dumps(doc, indent=2) + "\n")
        (out / "verify-report.txt").write_text(render_table(reports) + "\n")
    code = EXIT_FAIL if any(r.status == "fail" for r in reports) else EXIT_OK
    return code, reports


# -- rendering -----------------------------------------------------------------

def _mark(v: bool) -> str:
    return "yes" if v else "no"


def _table_ring_info(doc: dict) -> str:
    r = doc["ring"]
    lines = [
        f"ring {r['name']}: |R| = {r['size']} (Z/{r['m']})^{r['rank']}  digest {r['digest'][:16]}",
        f"J(R): size {doc['jacobson_radical']['size']}",
        "simples: " + ", ".join(f"{s['label']} (size {s['size']})" for s in doc["simples"]),
        f"catalog: {doc['catalog']['classes']} classes, bound {doc['catalog']['bound']}, max_gens {doc['catalog']['max_gens']}",
    ]
    prof = doc["profile"]
    for k, v in prof["flags"].items():
        lines.append(f"  {k:<20} {_mark(v):<4} [{prof['provenance'][k]}]")
    return "\n".join(lines)


def _table_check(doc: dict) -> str:
    lines = [f"check {doc['predicate']} (bound {doc['bound']})"]
    for row in doc["results"]:
        if "value" in row:
            lines.append(f"  b={row['b']['selector']} [{row['b']['id']}]  a={row['a']['selector']} [{row['a']['id']}]  -> {row['value']}")
            continue
        head = f"  {row['module']['selector']} [{row['module']['id']}, size {row['module']['size']}]"
        if "verdict" in row:
            v = row["verdict"]
            line = f"{head}: {v['kind']}({v['bound']})"
            if "witness" in v:
                w = v["witness"]
                line += f"  0 -> {w['A_id']} -> {w['B_id']} -> {w['C_id']} -> 0  sizes {w['sizes']}"
            lines.append(line)
        elif "hull" in row:
            h = row["hull"]
            lines.append(f"{head}: hull size {h['size']} [{h['id']}], injective embedding {_mark(h['embedding_injective'])}, "
                         f"essential {_mark(h['image_essential'])}, injective hull {_mark(h['hull_injective'])}, seed {h['seed']}")
        else:
            c = row["classification"]
            flags = ", ".join(f"{k}={_mark(v)}" for k, v in c.items() if isinstance(v, bool))
            lines.append(f"{head}: {flags}")
    return "\n".join(lines)


def _emit(doc: dict, fmt: str, table) -> None:
    if fmt == "json":
        print(json.dumps(doc, indent=2))
    else:
        print(table(doc))


# -- entry point -----------------------------------------------------------------

def _positive(s: str) -> int:
    v = int(s)
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--ring", default="F2", help="built-in ring name or path to a ring JSON document")
    common.add_argument("--max-size", type=_positive, default=64)
    common.add_argument("--max-gens", type=_positive, default=2)
    common.add_argument("--jobs", type=_positive, default=1)
    common.add_argument("--cache-dir", default=None)
    common.add_argument("--format", choices=("json", "table"), default="table")
    common.add_argument("--seed", type=int, default=0)

    p = argparse.ArgumentParser(prog="finmod", description="Subinjectivity and subprojectivity over finite rings.")
    p.add_argument("--version", action="version", version=f"finmod {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    sub.add_parser("ring-info", parents=[common], help="ring size, J(R), simples and ring flags")

    c = sub.add_parser("check", parents=[common], help="run one predicate on selected modules")
    c.add_argument("predicate", choices=PREDICATES)
    c.add_argument("--module", help="selector: R, R/J, J, simple:i, sum:X+Y, a catalog id, or all")
    c.add_argument("--a", help="target module for subinjective/subprojective")
    c.add_argument("--b", help="domain module for subinjective/subprojective")

    v = sub.add_parser("verify", parents=[common], help="run verification suites")
    v.add_argument("suite", help="suite id, comma-separated ids, or all")
    v.add_argument("--corpus", choices=("builtin",), default="builtin")
    v.add_argument("--rings", default=None, help="comma-separated subset of the corpus (default: all of it)")
    v.add_argument("--out-dir", default=None, help="write verify-report.json and verify-report.txt here")
    v.add_argument("--timing", action="store_true", help="include wall times in the table")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = RunConfig(args.ring, args.max_size, args.max_gens, args.cache_dir, args.format, args.jobs, args.seed)
    try:
        if args.command == "ring-info":
            _emit(cmd_ring_info(cfg), cfg.format, _table_ring_info)
            return EXIT_OK
        if args.command == "check":
            _emit(cmd_check(cfg, args.predicate, args.module, args.a, args.b), cfg.format, _table_check)
            return EXIT_OK
        rings = args.rings.split(",") if args.rings else None
        cfg.ring = "corpus"
        code, reports = cmd_verify(cfg, args.suite, rings, args.out_dir)
        if cfg.format == "json":
            print(json.dumps({**cfg.header(), "command": "verify", "reports": [r.to_dict(args.timing) for r in reports]}, indent=2))
        else:
            print(render_table(reports, timing=args.timing))
        return code
    except UnknownSelector as exc:
        print(f"finmod: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BoundExceeded as exc:
        print(f"finmod: bound exceeded: {exc}", file=sys.stderr)
        return EXIT_BOUND
    except FinmodError as exc:
        print(f"finmod: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
