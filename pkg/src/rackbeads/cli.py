"""``rackbeads`` command line.

Exit status: 0 success, 1 invalid input data, 2 verification failure,
3 malformed command.  Data file arguments that do not exist as given are
looked up in the bundled corpus (``racks/``, ``cocycles/``, ``modules/``,
``phis/``), so ``--rack dihedral3.rack`` works from any directory.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import corpus as corpus_mod
from .codes import FORMATS, parse, serialize
from .cocycles import verify_2cocycle_reduced, verify_cocycle, verify_n_reduced, verify_xmodule
from .invariants import KINDS, VerificationError, evaluate
from .io import read_cocycle, read_link, read_module, read_phi, read_rack
from .racks import RackAxiomError, verify_rack
from .report import MalformedInputError
from .search import SearchConfig, distinguishing_report, report_tsv, search_cocycles, search_modules, write_results

WORKERS_ENV = "RACKBEADS_WORKERS"

EXIT_OK, EXIT_INPUT, EXIT_VERIFY, EXIT_USAGE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _resolve(name: str, kind: str, corpus_root=None) -> Path:
    p = Path(name)
    if p.exists():
        return p
    bundled = corpus_mod.data_file(kind, name, corpus_root)
    if bundled.exists():
        return bundled
    raise MalformedInputError(f"{name}: no such file (also not in the bundled {kind}/)")


def _rack(args):
    R = read_rack(_resolve(args.rack, "racks"))
    rep = verify_rack(R.rows)
    if not rep.valid:
        raise VerificationError(rep)
    return R


def _data(args, R, kind: str):
    cocycle = getattr(args, "cocycle", None)
    module = getattr(args, "module", None)
    phi = getattr(args, "phi", None)
    need = {"dynamical": cocycle, "module": module, "cocycle2": phi}
    if kind in need and need[kind] is None:
        flag = {"dynamical": "--cocycle", "module": "--module", "cocycle2": "--phi"}[kind]
        raise UsageError(f"invariant {kind!r} needs {flag}")
    if kind == "dynamical":
        return read_cocycle(_resolve(cocycle, "cocycles"), R)
    if kind == "module":
        return read_module(_resolve(module, "modules"), R)
    if kind == "cocycle2":
        return read_phi(_resolve(phi, "phis"), R.n)
    return None


def _default_kind(args) -> str:
    if args.invariant:
        return args.invariant
    if args.cocycle:
        return "dynamical"
    if args.module:
        return "module"
    if args.phi:
        return "cocycle2"
    return "counting"


def _terms(value):
    if isinstance(value, int):
        return value
    return [[list(k) if isinstance(k, tuple) else k, c] for k, c in value.terms]


def _record(ident: str, kind: str, value) -> str:
    return json.dumps({"link": ident, "invariant": kind, "value": str(value), "terms": _terms(value)})


# ---------------------------------------------------------------- verbs


def cmd_verify(args) -> int:
    R = read_rack(_resolve(args.files[0], "racks"))
    reports = [verify_rack(R.rows)]
    if args.what != "rack":
        if len(args.files) != 2:
            raise UsageError(f"verify {args.what} needs a rack file and a data file")
        path = args.files[1]
        if args.what == "cocycle":
            alpha = read_cocycle(_resolve(path, "cocycles"), R)
            reports.append(verify_cocycle(R, alpha))
            if not args.no_n_reduced:
                reports.append(verify_n_reduced(R, alpha))
        elif args.what == "module":
            reports.append(verify_xmodule(R, read_module(_resolve(path, "modules"), R)))
        else:
            reports.append(verify_2cocycle_reduced(R, read_phi(_resolve(path, "phis"), R.n)))
    elif len(args.files) != 1:
        raise UsageError("verify rack takes exactly one file")
    for rep in reports:
        for line in rep.lines():
            print(line)
    return EXIT_OK if all(r.valid for r in reports) else EXIT_VERIFY


def cmd_invariant(args) -> int:
    R = _rack(args)
    data = _data(args, R, args.kind)
    if args.diagram:
        D = read_link(args.diagram, args.format)
        ident = D.name or Path(args.diagram).stem
    else:
        e = corpus_mod.find_link(args.link, args.corpus)
        D, ident = e.diagram, e.id
    value = evaluate(args.kind, D, R, data)
    print(_record(ident, args.kind, value) if args.json else value)
    return EXIT_OK


def _batch_one(job):
    kind, path, R, data = job
    e = corpus_mod.load_entry(path)
    return e.id, evaluate(kind, e.diagram, R, data)


def workers_from_env() -> int:
    raw = os.environ.get(WORKERS_ENV, "")
    if not raw:
        return os.cpu_count() or 1
    try:
        n = int(raw)
    except ValueError:
        raise UsageError(f"{WORKERS_ENV} must be a positive integer, got {raw!r}") from None
    if n < 1:
        raise UsageError(f"{WORKERS_ENV} must be a positive integer, got {raw!r}")
    return n


def batch_values(kind, entries, R, data, workers: int = 1):
    """``(id, value)`` in the order of ``entries``, whatever the worker count."""
    jobs = [(kind, e.path, R, data) for e in entries]
    if workers <= 1 or len(jobs) <= 1:
        return [_batch_one(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=min(workers, len(jobs))) as pool:
        return list(pool.map(_batch_one, jobs))


def cmd_batch(args) -> int:
    kind = _default_kind(args)
    R = _rack(args)
    data = _data(args, R, kind)
    if kind == "dynamical":
        for rep in (verify_cocycle(R, data), verify_n_reduced(R, data)):
            if not rep.valid:
                raise VerificationError(rep)
    entries = corpus_mod.load_entries(args.corpus, args.filter or (), args.max_crossings)
    workers = args.workers if args.workers is not None else workers_from_env()
    rows = batch_values(kind, entries, R, data, workers)
    out = []
    for ident, value in rows:
        out.append(_record(ident, kind, value) if args.json else f"{ident}\t{value}")
    sys.stdout.write("".join(line + "\n" for line in out))
    return EXIT_OK


def cmd_search(args) -> int:
    R = _rack(args)
    if (args.beads is None) == (args.modulus is None):
        raise UsageError("search needs exactly one of --beads or --modulus")
    size = args.beads if args.beads is not None else args.modulus
    try:
        cfg = SearchConfig(
            R,
            size,
            seed=args.seed,
            mode="exhaustive" if args.exhaustive else "random",
            max_candidates=args.count,
            require_n_reduced=not args.allow_unreduced,
        )
    except ValueError as e:
        raise UsageError(str(e)) from None
    if args.beads is not None:
        found, kind = search_cocycles(cfg), "cocycle"
    else:
        found, kind = search_modules(cfg), "module"
    for key, val in cfg.metadata().items():
        print(f"# {key}: {val}")
    print(f"# found: {len(found)}")
    if args.out:
        for p in write_results(found, args.out, cfg, kind):
            print(p)
    else:
        for f in found:
            print(f"candidate {f.index}")
            sys.stdout.write(f.value.to_text())
    if args.report and kind == "cocycle":
        entries = corpus_mod.load_entries(args.corpus, args.filter or (), args.max_crossings)
        sys.stdout.write(report_tsv(distinguishing_report(found, entries, R)))
    return EXIT_OK


def cmd_convert(args) -> int:
    text = sys.stdin.read() if args.file == "-" else Path(args.file).read_text()
    try:
        D = parse(text, args.source, name=args.name or ("" if args.file == "-" else Path(args.file).stem))
    except MalformedInputError as e:
        raise MalformedInputError(f"{args.file}: {e}") from None
    body = serialize(D)
    if args.output:
        Path(args.output).write_text(body)
    else:
        sys.stdout.write(body)
    return EXIT_OK


def cmd_self_test(args) -> int:
    entries = corpus_mod.load_entries(args.corpus)
    problems = corpus_mod.self_test(args.corpus)
    for p in problems:
        print(p)
    print(f"{len(entries)} corpus entries, {len(problems)} problem(s)")
    return EXIT_OK if not problems else EXIT_INPUT


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="rackbeads", description="Rack counting invariants and their enhancements.")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    v = sub.add_parser("verify", help="check axioms of a rack, cocycle, module or 2-cocycle")
    v.add_argument("what", choices=("rack", "cocycle", "module", "2cocycle"))
    v.add_argument("files", nargs="+", help="rack file, then the data file")
    v.add_argument("--no-n-reduced", action="store_true", help="skip the N-reduced check for cocycles")
    v.set_defaults(func=cmd_verify)

    def data_flags(q):
        q.add_argument("--rack", required=True)
        q.add_argument("--cocycle")
        q.add_argument("--module")
        q.add_argument("--phi")
        q.add_argument("--corpus", help="corpus root or link directory (default: bundled)")
        q.add_argument("--json", action="store_true", help="one JSON record per line")

    i = sub.add_parser("invariant", help="evaluate one invariant on one link")
    i.add_argument("kind", choices=KINDS)
    data_flags(i)
    src = i.add_mutually_exclusive_group(required=True)
    src.add_argument("--link", help="corpus link id, e.g. 3_1 or L2a1")
    src.add_argument("--diagram", help="diagram file (.link, .pd or .gauss)")
    i.add_argument("--format", choices=FORMATS, help="diagram format (default: from suffix)")
    i.set_defaults(func=cmd_invariant)

    b = sub.add_parser("batch", help="evaluate an invariant over a corpus as TSV")
    data_flags(b)
    b.add_argument("--invariant", choices=KINDS, help="default: picked from the data flags")
    b.add_argument("--filter", action="append", help="glob on link id or group; repeatable")
    b.add_argument("--max-crossings", type=int)
    b.add_argument("--workers", type=int, help=f"worker processes (default: ${WORKERS_ENV} or all cores)")
    b.set_defaults(func=cmd_batch)

    s = sub.add_parser("search", help="search for dynamical cocycles or modules")
    s.add_argument("--rack", required=True)
    s.add_argument("--beads", type=int)
    s.add_argument("--modulus", type=int)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--count", type=int, default=1000, help="random draws, or result cap when exhaustive")
    s.add_argument("--exhaustive", action="store_true")
    s.add_argument("--allow-unreduced", action="store_true")
    s.add_argument("--out", help="write one file per result into this directory")
    s.add_argument("--report", action="store_true", help="append a distinguishing report over the corpus")
    s.add_argument("--corpus")
    s.add_argument("--filter", action="append")
    s.add_argument("--max-crossings", type=int)
    s.set_defaults(func=cmd_search)

    c = sub.add_parser("convert", help="PD or Gauss code to the native diagram format")
    c.add_argument("source", choices=("pd", "gauss", "native"))
    c.add_argument("file", help="input file, or - for stdin")
    c.add_argument("--name")
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_convert)

    t = sub.add_parser("self-test", help="parse and cross-check every corpus entry")
    t.add_argument("--corpus")
    t.set_defaults(func=cmd_self_test)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as e:
        print(f"rackbeads: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (VerificationError, RackAxiomError) as e:
        print(f"rackbeads: verification failed: {e}", file=sys.stderr)
        return EXIT_VERIFY
    except (MalformedInputError, OSError) as e:
        print(f"rackbeads: invalid input: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
