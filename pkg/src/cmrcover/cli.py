"""Command-line front end: ``cmrcover {build,cover,check,sweep,export}``."""

from __future__ import annotations

import argparse
import json
import random
import sys
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from itertools import combinations, product
from pathlib import Path

from .checks import FAILS, run_checks
from .cmr import build_cmr_automaton, cmr_presentation, presentation_failure
from .errors import CmrError
from .graph import dump_json, from_dot, from_json_obj, serialize
from .minimize import shannon_cover
from .words import Alphabet, ForbiddenSet, is_subword, minimal_words, parse_forbidden_text, validate_forbidden_set


def _load_forbidden(args) -> ForbiddenSet:
    if args.input:
        if args.forbidden or args.alphabet:
            raise CmrError("give either --input or --alphabet/--forbidden, not both")
        return parse_forbidden_text(Path(args.input).read_text(encoding="utf-8"))
    if not args.alphabet:
        raise CmrError("an alphabet is required (--alphabet or --input)")
    return validate_forbidden_set(args.forbidden or [], Alphabet.parse(args.alphabet))


def _emit(data: bytes, out) -> None:
    if out:
        Path(out).write_bytes(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()


def cmd_build(args) -> int:
    f_set = _load_forbidden(args)
    d = build_cmr_automaton(f_set)
    gf = cmr_presentation(d)
    dfa = serialize(d.graph, args.format, d.failure)
    pres = serialize(gf, args.format, presentation_failure(d))
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / f"automaton.{args.format}").write_bytes(dfa)
        (out / f"presentation.{args.format}").write_bytes(pres)
    elif args.format == "json":
        both = {"automaton": json.loads(dfa), "presentation": json.loads(pres)}
        _emit(dump_json(both), None)
    else:
        _emit(dfa + pres, None)
    return 0


def cmd_cover(args) -> int:
    report = shannon_cover(_load_forbidden(args))
    if args.out:
        Path(args.out).write_bytes(report.to_json())
    if args.format == "json" and not args.out:
        _emit(report.to_json(), None)
    else:
        print(report.summary())
    return 0 if all(c.status != FAILS for c in report.conformance) else 1


def cmd_check(args) -> int:
    f_set = _load_forbidden(args)
    results = run_checks(f_set, args.bound, args.connector_bound)
    print(str(f_set))
    for r in results:
        print(r.line())
    failed = [r for r in results if r.status == FAILS]
    print(f"{len(results) - len(failed)}/{len(results)} predicates hold or do not apply")
    return 1 if failed else 0


def enumerate_forbidden_sets(alphabet: Alphabet, max_n: int, max_words: int):
    """Every non-redundant, non-degenerate forbidden set within the limits."""
    words = [w for n in range(1, max_n + 1) for w in product(alphabet.symbols, repeat=n)]
    words.sort(key=alphabet.shortlex)
    for k in range(1, max_words + 1):
        for combo in combinations(words, k):
            if any(is_subword(u, w) for u, w in combinations(combo, 2)):
                continue
            f_set = ForbiddenSet(alphabet, combo)
            if not f_set.is_degenerate:
                yield f_set


def sample_forbidden_sets(alphabet: Alphabet, max_n: int, max_words: int, count: int, seed: int):
    rng = random.Random(seed)
    seen = set()
    attempts = 0
    while len(seen) < count and attempts < 50 * count:
        attempts += 1
        k = rng.randint(1, max_words)
        raw = [tuple(rng.choice(alphabet.symbols) for _ in range(rng.randint(1, max_n))) for _ in range(k)]
        f_set = validate_forbidden_set(minimal_words(raw), alphabet)
        if f_set.is_degenerate or f_set.words in seen:
            continue
        seen.add(f_set.words)
        yield f_set


def _check_one(job):
    symbols, words, bound, connector_bound = job
    f_set = ForbiddenSet(Alphabet(symbols), words)
    return str(f_set), [(r.name, r.status, r.witness) for r in run_checks(f_set, bound, connector_bound)]


def cmd_sweep(args) -> int:
    alphabet = Alphabet.parse(args.alphabet or "ab")
    if args.samples:
        sets = sample_forbidden_sets(alphabet, args.max_n, args.max_words, args.samples, args.seed)
    else:
        sets = enumerate_forbidden_sets(alphabet, args.max_n, args.max_words)
    jobs = [(alphabet.symbols, f.words, args.bound, args.connector_bound) for f in sets]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_check_one, jobs, chunksize=8))
    else:
        results = [_check_one(j) for j in jobs]

    tally = {}
    failures = []
    for label, checks in results:
        for name, status, witness in checks:
            tally.setdefault(name, Counter())[status] += 1
            if status == FAILS:
                failures.append({"forbidden": label, "predicate": name, "witness": witness})
    report = {
        "alphabet": list(alphabet.symbols),
        "max_n": args.max_n,
        "max_words": args.max_words,
        "samples": args.samples,
        "seed": args.seed,
        "instances": len(results),
        "predicates": {name: {s: tally[name][s] for s in ("holds", "fails", "not-applicable")}
                       for name in sorted(tally)},
        "failures": sorted(failures, key=lambda f: (f["predicate"], f["forbidden"])),
    }
    _emit(dump_json(report), args.out)
    print(f"{len(results)} forbidden sets, {len(failures)} failed predicates", file=sys.stderr)
    return 1 if failures else 0


def cmd_export(args) -> int:
    if not args.input:
        raise CmrError("export needs --input FILE")
    text = Path(args.input).read_text(encoding="utf-8")
    if text.lstrip().startswith("{"):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise CmrError(f"invalid JSON: {exc}") from None
        g, failure = from_json_obj(obj)
    else:
        g, failure = from_dot(text)
    _emit(serialize(g, args.format, failure), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cmrcover", description="CMR presentations and Shannon covers of finite-type constraints")
    sub = parser.add_subparsers(dest="command", required=True)

    def inputs(p):
        p.add_argument("--alphabet", help="symbols, e.g. '0 1' or 'abc'")
        p.add_argument("--forbidden", action="append", help="a forbidden word (repeatable)")
        p.add_argument("--input", help="forbidden-set file ('alphabet: ...' header, one word per line)")

    def bounds(p):
        p.add_argument("--bound", type=int, default=None, help="oracle length bound L (default |G_F| + 2)")
        p.add_argument("--connector-bound", type=int, default=None, help="connector bound B (default |G_F|^2)")

    p = sub.add_parser("build", help="write D_F and G_F")
    inputs(p)
    p.add_argument("--format", choices=["dot", "json"], default="json")
    p.add_argument("--out", help="output directory")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("cover", help="compute the Shannon cover")
    inputs(p)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--out", help="write the CoverReport JSON here")
    p.set_defaults(func=cmd_cover)

    p = sub.add_parser("check", help="run every conformance predicate")
    inputs(p)
    bounds(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("sweep", help="run check over many forbidden sets")
    p.add_argument("--alphabet", help="symbols to draw from (default 'ab')")
    p.add_argument("--max-n", type=int, default=4)
    p.add_argument("--max-words", type=int, default=2)
    p.add_argument("--samples", type=int, default=0, help="random sample size; 0 enumerates exhaustively")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", help="aggregate report path (default stdout)")
    bounds(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("export", help="convert a graph between JSON and DOT")
    p.add_argument("--input", required=True)
    p.add_argument("--format", choices=["dot", "json"], required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_export)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
