import argparse
import json
import logging
import sys
from pathlib import Path
from typing import List, Optional

from pydantic import ValidationError

from charmonoid.config import Settings, configure_logging
from charmonoid.datafile import canonical_json
from charmonoid.errors import CharMonoidError, InputError
from charmonoid.pipeline import CORPUS, LFUN_COMMANDS, GroupAnalysis, Workbench, corpus_row_ok

logger = logging.getLogger("charmonoid.cli")


def _parse_vector(text: str) -> List[int]:
    try:
        return [int(x) for x in text.replace("(", "").replace(")", "").split(",") if x.strip()]
    except ValueError as exc:
        raise InputError(f"cannot read an integer vector from {text!r}") from exc


def _witness_matrix(witnesses) -> str:
    lines = []
    for i, row in enumerate(witnesses):
        cells = ["." if i == j else ("-" if t is None else str(t + 1)) for j, t in enumerate(row)]
        lines.append(f"  chi_{i + 1:<3}" + " ".join(f"{c:>3}" for c in cells))
    return "\n".join(lines)


def _classify_text(analysis: GroupAnalysis) -> str:
    s = analysis.summary()
    out = [
        f"{s['descriptor']}: order {s['order']}, {s['r']} irreducible characters",
        f"degrees: {tuple(s['degrees'])}",
        f"subgroup classes: {s['subgroup_classes']}, monomial vectors: {s['monomial_vectors']}",
        f"Hilbert basis ({len(s['hilbert_basis'])} vectors, lattice rank {s['lattice_rank']}):",
    ]
    out += [f"  sigma_{t + 1} = {tuple(v)}" for t, v in enumerate(s["hilbert_basis"])]
    out.append("flags: " + ", ".join(f"{k}={v}" for k, v in s["flags"].items()))
    out.append("WAM witnesses (row i, column j: basis index t with sigma_t(i) > sigma_t(j)):")
    out.append(_witness_matrix(s["wam_witnesses"]))
    out.append("NAM witnesses (sigma_t(i) > 0 and sigma_t(j) = 0):")
    out.append(_witness_matrix(s["nam_witnesses"]))
    cx = s["bam_counterexample"]
    if cx is not None:
        out.append(f"BAM counterexample: k = {cx['k'] + 1}, psi = {tuple(cx['psi'])}, phi = {tuple(cx['phi'])}")
    if not s["implications_hold"]:
        out.append("WARNING: the flags violate the implication lattice")
    return "\n".join(out)


def _emit(payload, fmt: str, text: Optional[str] = None):
    if fmt == "json" or text is None:
        print(canonical_json(payload) if fmt == "json" else json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="charmonoid",
                                     description="Monomial character monoids and almost monomial groups")
    parser.add_argument("--cache-dir", type=Path)
    parser.add_argument("--size-cap", type=int)
    parser.add_argument("--seed", type=int)
    parser.add_argument("--jobs", type=int)
    parser.add_argument("--format", choices=("json", "text"), default="text")
    parser.add_argument("--no-cache", action="store_true")
    parser.add_argument("--log-level")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="decide monomial / NAM / WAM / BAM")
    p.add_argument("spec")
    p.add_argument("--output", type=Path,
                   help="where to write the monomial data file (default: the group's cache directory; "
                        "nothing is written with --no-cache)")

    p = sub.add_parser("hilbert", help="Hilbert basis of the monoid of monomial characters")
    p.add_argument("spec")

    p = sub.add_parser("export", help="write the monomial data file")
    p.add_argument("spec")
    p.add_argument("--output", type=Path, required=True)

    p = sub.add_parser("lfun", help="order calculus at s0")
    p.add_argument("action", choices=LFUN_COMMANDS)
    p.add_argument("--source", help="group descriptor or monomial data file")
    p.add_argument("--d", help="order vector, e.g. --d=0,0,0,-1,2,0,0")
    p.add_argument("--k", type=int, help="1-based character index for theorem4 (default: all)")
    p.add_argument("--bound", type=int)

    p = sub.add_parser("corpus", help="classify the reference groups within the size cap")
    p.add_argument("names", nargs="*", help=f"default: {', '.join(CORPUS)}")
    return parser


def settings_from_args(args) -> Settings:
    overrides = {}
    for field in ("cache_dir", "size_cap", "seed", "jobs", "log_level"):
        value = getattr(args, field)
        if value is not None:
            overrides[field] = value
    if args.no_cache:
        overrides["use_cache"] = False
    return Settings(**overrides)


def run(args) -> int:
    settings = settings_from_args(args)
    configure_logging(settings.log_level)
    bench = Workbench(settings)
    fmt = args.format

    if args.command == "classify":
        analysis = bench.run_classify(args.spec, args.output)
        _emit(analysis.summary(), fmt, _classify_text(analysis))
    elif args.command == "hilbert":
        analysis = bench.analyze(args.spec)
        basis = [list(v) for v in analysis.basis.basis]
        text = "\n".join(str(tuple(v)) for v in basis)
        _emit({"descriptor": analysis.descriptor, "r": analysis.basis.r, "hilbert_basis": basis}, fmt, text)
    elif args.command == "export":
        data = bench.export(args.spec, args.output)
        _emit({"descriptor": data.descriptor, "output": str(args.output), "digest": data.digest}, fmt,
              f"wrote {args.output} ({data.digest[:12]})")
    elif args.command == "lfun":
        d = _parse_vector(args.d) if args.d else None
        k = args.k - 1 if args.k is not None else None
        _emit(bench.run_lfun(args.action, d, args.source, k, args.bound), fmt)
    elif args.command == "corpus":
        rows = bench.corpus(args.names or None)
        lines = []
        for row in rows:
            if "skipped" in row:
                lines.append(f"SKIP {row['descriptor']}: {row['skipped']}")
                continue
            status = "OK  " if corpus_row_ok(row) else "FAIL"
            flags = " ".join(f"{k}={int(v)}" for k, v in row["flags"].items())
            lines.append(f"{status} {row['descriptor']:<14} |G|={row['order']:<6} r={row['r']:<3} {flags}")
        _emit(rows, fmt, "\n".join(lines))
    return 0


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return run(args)
    except CharMonoidError as exc:
        logger.error("%s", exc)
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except ValidationError as exc:
        print(f"error: invalid setting: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:
        logger.exception("internal error")
        print(f"internal error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
