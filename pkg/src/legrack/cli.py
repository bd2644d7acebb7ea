"""Command-line surface binding the library into reproducible experiments.

Every command reads knot codes as literal text or from knot files (JSON
{"name": ..., "code": ...} or a bare code string), emits versioned JSON
("schema": 1), TSV or text, and exits 0 on success, 1 on a domain error and
2 on a usage error.  Identical invocations produce byte-identical output;
LEGRACK_WORKERS > 1 parallelizes the coloring search without changing it.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from . import __version__, coloring, fixtures, front_code, model_finder, moves, presentation
from .rack_core import FiniteRack, rack_from_descriptor, rack_to_json


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    fmt: str = "json"
    n_min: int = 0
    n_max: int = 0
    max_order: int = 5
    steps: int = 0
    seed: int = 0

    def __post_init__(self):
        for name in ("n_min", "n_max", "steps", "seed"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be >= 0")
        if self.max_order < 1:
            raise ValueError("max_order must be >= 1")
        if self.n_max < self.n_min:
            raise ValueError("n_max must be >= n_min")


def _emit(obj: dict, fmt: str, tsv_rows=None, text=None) -> None:
    if fmt == "json":
        print(json.dumps({"schema": 1, **obj}, sort_keys=True, indent=2))
    elif fmt == "tsv":
        for row in tsv_rows or ():
            print("\t".join(str(v) for v in row))
    else:
        print(text if text is not None else json.dumps(obj, sort_keys=True))


def _load_code_file(path: str) -> tuple[str, front_code.FrontCode]:
    with open(path, encoding="utf-8") as fh:
        raw = fh.read()
    try:
        obj = json.loads(raw)
    except json.JSONDecodeError:
        obj = None
    if isinstance(obj, dict):
        name = obj.get("name", os.path.splitext(os.path.basename(path))[0])
        return name, front_code.parse(obj["code"])
    if isinstance(obj, str):
        return os.path.splitext(os.path.basename(path))[0], front_code.parse(obj)
    return os.path.splitext(os.path.basename(path))[0], front_code.parse(raw.strip())


def _resolve_code(args) -> front_code.FrontCode:
    if getattr(args, "code", None) is not None:
        return front_code.parse(args.code)
    _, code = _load_code_file(args.file)
    return code


def _code_or_file(value: str) -> front_code.FrontCode:
    if os.path.exists(value):
        return _load_code_file(value)[1]
    return front_code.parse(value)


def _add_code_args(sub) -> None:
    group = sub.add_mutually_exclusive_group(required=True)
    group.add_argument("--code", help="literal front code, e.g. 'U,D'")
    group.add_argument("--file", help="knot file (JSON {name, code} or bare code)")


def _cmd_validate(args) -> int:
    code = _resolve_code(args)
    inv = front_code.invariants(code)
    _emit(
        {"ok": True, "events": len(code.events), "cusps": inv.cusp_count,
         "crossings": len(code.crossing_ids()), "code": front_code.serialize(code)},
        args.format,
        tsv_rows=[[front_code.serialize(code), "ok"]],
        text=f"ok: {front_code.serialize(code)}",
    )
    return 0


def _invariants_obj(code) -> dict:
    inv = front_code.invariants(code)
    return {
        "writhe": inv.writhe, "cusp_count": inv.cusp_count, "up_cusps": inv.up_cusps,
        "down_cusps": inv.down_cusps, "tb": inv.tb,
        "rotation_numerator": inv.rotation_numerator, "rotation": inv.rotation,
        "strand_count": inv.strand_count, "s_min": front_code.s_min(code),
    }


def _cmd_invariants(args) -> int:
    code = _resolve_code(args)
    obj = _invariants_obj(code)
    keys = list(obj)
    _emit(obj, args.format,
          tsv_rows=[keys, [obj[k] for k in keys]],
          text="\n".join(f"{k} = {v}" for k, v in obj.items()))
    return 0


def _cmd_present(args) -> int:
    code = _resolve_code(args)
    pres = presentation.extract(code)
    obj = presentation.presentation_to_json(pres)
    if args.n is not None:
        obj["n"] = args.n
    _emit(obj, args.format, text=presentation.presentation_text(pres, args.n))
    return 0


def _cmd_color(args) -> int:
    code = _resolve_code(args)
    target = rack_from_descriptor(args.target)
    report = coloring.count_colorings(presentation.extract(code), args.n, target)
    text = front_code.serialize(code)
    _emit(
        {"code": text, "n": report.n, "target": report.target, "count": report.count,
         "surjective_count": report.surjective_count,
         "sample": list(report.sample) if report.sample is not None else None},
        args.format,
        tsv_rows=[[text, report.n, report.target, report.count, report.surjective_count]],
        text=f"{text} n={report.n} target={report.target} "
             f"count={report.count} surjective={report.surjective_count}",
    )
    return 0


def _parse_budget(text: str | None) -> list[tuple[int, int]] | None:
    if text is None:
        return None
    budget = []
    for chunk in text.split(","):
        q = int(chunk)
        p = 3
        while p * p <= q and q % p != 0:
            p += 2
        p = p if p * p <= q else q
        k = 0
        while q % p == 0 and q > 1:
            q //= p
            k += 1
        if q != 1:
            raise ValueError(f"budget entry {chunk} is not a prime power")
        budget.append((p, k))
    return budget


def _cmd_distinguish(args) -> int:
    code_a = _code_or_file(args.a)
    code_b = _code_or_file(args.b)
    verdict = coloring.distinguish_unknots(code_a, code_b, _parse_budget(args.budget))
    obj = {"status": verdict.status, "p": verdict.p, "k": verdict.k, "n": verdict.n,
           "counts": list(verdict.counts) if verdict.counts else None}
    _emit(obj, args.format,
          tsv_rows=[[verdict.status, verdict.p, verdict.k, verdict.n,
                     *(verdict.counts or ("", ""))]],
          text=verdict.status if verdict.p is None else
          f"{verdict.status} p={verdict.p} k={verdict.k} n={verdict.n} counts={verdict.counts}")
    return 0


def _certificate_obj(cert: coloring.Certificate | None) -> dict | None:
    if cert is None:
        return None
    return {
        "n": cert.n, "target": cert.target.name, "reason": cert.reason,
        "assignment": list(cert.assignment),
        "target_star": [list(row) for row in cert.target.star],
    }


def _cmd_trivial_check(args) -> int:
    cfg = RunConfig("trivial-check", n_min=args.n_min, n_max=args.n_max,
                    max_order=args.max_order)
    code = _resolve_code(args)
    pres = presentation.extract(code)
    cert = coloring.nontriviality_certificate(
        pres, range(cfg.n_min, cfg.n_max + 1), cfg.max_order)
    obj = {"code": front_code.serialize(code), "n_min": cfg.n_min, "n_max": cfg.n_max,
           "max_order": cfg.max_order, "certificate": _certificate_obj(cert)}
    _emit(obj, args.format,
          tsv_rows=[[obj["code"], 0 if cert is None else 1,
                     "" if cert is None else cert.target.name]],
          text="no certificate" if cert is None else
          f"certificate: n={cert.n} target={cert.target.name} {cert.reason} "
          f"assignment={list(cert.assignment)}")
    return 0


def _cmd_enumerate(args) -> int:
    result = model_finder.enumerate_racks(
        args.order, legendrian_n=args.legendrian, quandles=args.quandle)
    if args.out_dir:
        os.makedirs(args.out_dir, exist_ok=True)
        for i, rack in enumerate(result.representatives):
            path = os.path.join(args.out_dir, f"rack_{args.order}_{i}.json")
            with open(path, "w", encoding="utf-8") as fh:
                json.dump(rack_to_json(rack), fh, sort_keys=True, indent=2)
                fh.write("\n")
    count = len(result.representatives)
    _emit(
        {"order": result.order, "constraint": result.constraint, "count": count,
         "total_labeled": result.total_labeled,
         "representatives": [[list(row) for row in r.star] for r in result.representatives]},
        args.format,
        tsv_rows=[["order", "constraint", "count"],
                  [result.order, result.constraint, count]],
        text=f"order {result.order} {result.constraint}: "
             f"{count} racks up to isomorphism ({result.total_labeled} labeled)",
    )
    return 0


def _cmd_moves_list(args) -> int:
    code = _resolve_code(args)
    sites = moves.applicable(code)
    rows = [[i, s.schema, s.direction, ",".join(map(str, s.positions))]
            for i, s in enumerate(sites)]
    _emit({"code": front_code.serialize(code),
           "sites": [{"index": i, "schema": s.schema, "direction": s.direction,
                      "positions": list(s.positions)} for i, s in enumerate(sites)]},
          args.format, tsv_rows=rows,
          text="\n".join("\t".join(map(str, row)) for row in rows))
    return 0


def _cmd_moves_apply(args) -> int:
    code = _resolve_code(args)
    sites = moves.applicable(code)
    if not 0 <= args.site < len(sites):
        raise ValueError(f"site index {args.site} out of range (0..{len(sites) - 1})")
    site = sites[args.site]
    result = moves.apply_move(code, site)
    text = front_code.serialize(result)
    _emit({"code": text, "schema_id": site.schema, "direction": site.direction,
           "positions": list(site.positions)},
          args.format, tsv_rows=[[text]], text=text)
    return 0


def _parse_check(spec: str) -> tuple[int, FiniteRack]:
    fields = dict(part.split("=", 1) for part in spec.split(","))
    if set(fields) != {"n", "target"}:
        raise ValueError(f"check spec must be n=<n>,target=<descriptor>, got {spec!r}")
    return int(fields["n"]), rack_from_descriptor(fields["target"])


def _cmd_moves_fuzz(args) -> int:
    cfg = RunConfig("moves-fuzz", steps=args.steps, seed=args.seed)
    code = _resolve_code(args)
    checks = [_parse_check(spec) for spec in args.check or []]
    pres = presentation.extract(code)
    inv0 = front_code.invariants(code)
    baseline = {f"n={n},target={t.name}": coloring.count_colorings(pres, n, t).count
                for n, t in checks}
    violations = []
    current = code
    for step, (site, current) in enumerate(moves.walk_iter(code, cfg.steps, cfg.seed)):
        inv = front_code.invariants(current)
        if (inv.tb, inv.rotation_numerator) != (inv0.tb, inv0.rotation_numerator):
            violations.append({"step": step, "kind": "classical-invariants"})
        pres_now = presentation.extract(current)
        for (n, t), (key, expected) in zip(checks, baseline.items()):
            got = coloring.count_colorings(pres_now, n, t).count
            if got != expected:
                violations.append({"step": step, "kind": "coloring", "check": key,
                                   "expected": expected, "got": got})
    final = front_code.serialize(current)
    _emit({"code": front_code.serialize(code), "steps": cfg.steps, "seed": cfg.seed,
           "final_code": final, "final_events": len(current.events),
           "checks": baseline, "violations": violations},
          args.format,
          tsv_rows=[[final, cfg.steps, cfg.seed, len(violations)]],
          text=f"{final}\nviolations: {len(violations)}")
    return 1 if violations else 0


def _lemma_obj(report: model_finder.LemmaSuiteReport) -> dict:
    return {"rack": report.rack, "n": report.n, "all_ok": report.all_ok,
            "results": [{"name": r.name, "ok": r.ok,
                         "witness": list(r.witness) if r.witness else None}
                        for r in report.results]}


def _cmd_verify_lemmas(args) -> int:
    rack = rack_from_descriptor(args.target)
    report = model_finder.check_lemma_suite(rack, args.n)
    obj = _lemma_obj(report)
    _emit(obj, args.format,
          tsv_rows=[[r["name"], int(r["ok"])] for r in obj["results"]],
          text="\n".join(f"{r['name']}: {'ok' if r['ok'] else 'FAIL ' + str(r['witness'])}"
                         for r in obj["results"]))
    return 0


def _cmd_verify_predicates(args) -> int:
    rack = rack_from_descriptor(args.target)
    report = model_finder.check_predicate_axioms(rack, args.n)
    obj = {"rack": report.rack, "n": report.n, "all_ok": report.all_ok,
           "results": [{"name": r.name, "ok": r.ok,
                        "witness": list(r.witness) if r.witness else None}
                       for r in report.results]}
    _emit(obj, args.format,
          tsv_rows=[[r["name"], int(r["ok"])] for r in obj["results"]],
          text="\n".join(f"{r['name']}: {'ok' if r['ok'] else 'FAIL ' + str(r['witness'])}"
                         for r in obj["results"]))
    return 0


def _table_inputs(args) -> list[tuple[str, front_code.FrontCode]]:
    if args.builtin:
        return [(name, fixtures.fixture(name)) for name in fixtures.FIXTURES]
    entries = []
    for fname in sorted(os.listdir(args.dir)):
        path = os.path.join(args.dir, fname)
        if os.path.isfile(path):
            entries.append(_load_code_file(path))
    if not entries:
        raise ValueError(f"no knot files found in {args.dir}")
    return entries


def _cmd_table(args) -> int:
    cfg = RunConfig("table", n_min=args.n_min, n_max=args.n_max, max_order=args.max_order)
    rows = [["name", "strands", "tb", "n", "certificate", "target", "reason"]]
    records = []
    for name, code in _table_inputs(args):
        inv = front_code.invariants(code)
        pres = presentation.extract(code)
        for n in range(cfg.n_min, cfg.n_max + 1):
            cert = coloring.nontriviality_certificate(pres, [n], cfg.max_order)
            rows.append([name, inv.strand_count, inv.tb, n,
                         0 if cert is None else 1,
                         "" if cert is None else cert.target.name,
                         "" if cert is None else cert.reason])
            records.append({"name": name, "strands": inv.strand_count, "tb": inv.tb,
                            "n": n, "certificate": _certificate_obj(cert)})
    _emit({"n_min": cfg.n_min, "n_max": cfg.n_max, "max_order": cfg.max_order,
           "rows": records},
          args.format, tsv_rows=rows,
          text="\n".join("\t".join(map(str, row)) for row in rows))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="legrack",
        description="Rack coloring invariants of Legendrian front codes",
    )
    parser.add_argument("--version", action="version", version=f"legrack {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.set_defaults(func=func)
        p.add_argument("--format", choices=("json", "tsv", "text"), default="json")
        return p

    p = add("validate", _cmd_validate, help="parse and validate a front code")
    _add_code_args(p)

    p = add("invariants", _cmd_invariants, help="writhe, cusps, tb, rotation, strands")
    _add_code_args(p)

    p = add("present", _cmd_present, help="extract the rack presentation")
    _add_code_args(p)
    p.add_argument("--n", type=int, default=None, help="instantiate cusp exponent to n+1")

    p = add("color", _cmd_color, help="count colorings into a finite target rack")
    _add_code_args(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--target", required=True,
                   help="rack descriptor: ck:<k>, dihedral:<k> or a JSON file")

    p = add("distinguish", _cmd_distinguish,
            help="separate two crossingless codes via prime-power targets")
    p.add_argument("--a", required=True, help="code text or knot file")
    p.add_argument("--b", required=True, help="code text or knot file")
    p.add_argument("--budget", default=None,
                   help="comma list of odd prime powers to try, e.g. 3,9,5")

    p = add("trivial-check", _cmd_trivial_check,
            help="search for a nontriviality certificate over a range of n")
    _add_code_args(p)
    p.add_argument("--n-min", type=int, default=1)
    p.add_argument("--n-max", type=int, default=8)
    p.add_argument("--max-order", type=int, default=5)

    p = add("enumerate", _cmd_enumerate, help="enumerate finite racks up to isomorphism")
    p.add_argument("--order", type=int, required=True)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--legendrian", type=int, default=None, metavar="N")
    group.add_argument("--quandle", action="store_true")
    p.add_argument("--out-dir", default=None, help="write one rack JSON file per class")

    p_moves = sub.add_parser("moves", help="list, apply or fuzz Reidemeister moves")
    moves_sub = p_moves.add_subparsers(dest="moves_command", required=True)

    def add_moves(name, func):
        q = moves_sub.add_parser(name)
        q.set_defaults(func=func)
        q.add_argument("--format", choices=("json", "tsv", "text"), default="json")
        _add_code_args(q)
        return q

    add_moves("list", _cmd_moves_list)
    q = add_moves("apply", _cmd_moves_apply)
    q.add_argument("--site", type=int, required=True, help="index from `moves list`")
    q = add_moves("fuzz", _cmd_moves_fuzz)
    q.add_argument("--steps", type=int, required=True)
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--check", action="append", default=None,
                   metavar="n=<n>,target=<descriptor>",
                   help="assert coloring counts stay constant (repeatable)")

    p_verify = sub.add_parser("verify", help="exhaustive identity checks on finite racks")
    verify_sub = p_verify.add_subparsers(dest="verify_command", required=True)
    q = verify_sub.add_parser("lemmas")
    q.set_defaults(func=_cmd_verify_lemmas)
    q.add_argument("--format", choices=("json", "tsv", "text"), default="json")
    q.add_argument("--target", required=True)
    q.add_argument("--n", type=int, default=None)
    q = verify_sub.add_parser("predicates")
    q.set_defaults(func=_cmd_verify_predicates)
    q.add_argument("--format", choices=("json", "tsv", "text"), default="json")
    q.add_argument("--target", required=True)
    q.add_argument("--n", type=int, required=True)

    p = add("table", _cmd_table, help="certificate grid over a directory of knot files")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--dir", help="directory of knot files")
    group.add_argument("--builtin", action="store_true", help="use the built-in fixtures")
    p.add_argument("--n-min", type=int, default=1)
    p.add_argument("--n-max", type=int, default=8)
    p.add_argument("--max-order", type=int, default=5)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
