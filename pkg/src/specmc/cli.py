"""Command line front end: ``specmc verify`` and ``specmc bench``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from importlib import resources
from pathlib import Path

from .firing import Firing
from .generalization import GenOp
from .runner import EXIT_INPUT_ERROR, RunConfig, run_full
from .syntax import ParseError, ValidationError, parse_spec

INFINITY = "∞"


def corpus_dir() -> Path:
    return Path(str(resources.files("specmc") / "corpus"))


def _load(path: str):
    return parse_spec(Path(path).read_text())


def _choices(kind, text: str):
    if text == "all":
        return list(kind)
    return [kind.parse(t.strip()) for t in text.split(",") if t.strip()]


def cmd_verify(args) -> int:
    try:
        spec = _load(args.file)
    except (OSError, ParseError, ValidationError) as exc:
        print(f"error: {args.file}: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    config = RunConfig(firing=Firing.parse(args.firing), genop=GenOp.parse(args.gen),
                       timeout_ms=args.timeout_ms, max_bottomup_iters=args.max_bottomup_iters,
                       emit_specialized=args.emit_specialized, emit_model=args.emit_model,
                       json=args.json)
    report = run_full(spec, config).report
    if args.json:
        print(report.to_json())
    else:
        sys.stdout.write(report.to_text())
    return report.exit_code


def bench(directory: str | Path, configs, timeout_ms: int = 100_000,
          max_bottomup_iters: int = 1000, dump_dir: str | Path | None = None):
    """Run every ``.spec`` file of ``directory`` under every (firing, genop) pair.

    Returns ``(columns, rows)`` where each row is ``{"model": name, col: entry}``
    and each entry is a report dict, or ``{"verdict": "INPUT-ERROR", ...}``.
    """
    columns = [f"{f.value}/{g.value}" for f, g in configs]
    rows = []
    for path in sorted(Path(directory).glob("*.spec")):
        row = {"model": path.stem}
        try:
            spec = parse_spec(path.read_text())
        except (OSError, ParseError, ValidationError) as exc:
            for col in columns:
                row[col] = {"verdict": "INPUT-ERROR", "reason": str(exc)}
            rows.append(row)
            continue
        for (f, g), col in zip(configs, columns):
            emit = None
            if dump_dir is not None:
                Path(dump_dir).mkdir(parents=True, exist_ok=True)
                emit = str(Path(dump_dir) / f"{path.stem}.{f.value}.{g.value}.clp")
            config = RunConfig(firing=f, genop=g, timeout_ms=timeout_ms,
                               max_bottomup_iters=max_bottomup_iters, emit_specialized=emit)
            row[col] = json.loads(run_full(spec, config).report.to_json())
        rows.append(row)
    return columns, rows


def _cell_text(entry: dict) -> str:
    if entry["verdict"] == "INPUT-ERROR":
        return "input-error"
    if entry.get("reason") == "timeout":
        return INFINITY
    if entry["verdict"] == "UNKNOWN":
        return f"UNKNOWN({entry['reason']})"
    return f"{entry['verdict']} {entry['total_ms']}ms"


def bench_csv(columns, rows) -> str:
    out = io.StringIO()
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["model"] + columns)
    for row in rows:
        w.writerow([row["model"]] + [_cell_text(row[c]) for c in columns])
    return out.getvalue()


def cmd_bench(args) -> int:
    directory = args.directory or corpus_dir()
    if not Path(directory).is_dir():
        print(f"error: {directory}: not a directory", file=sys.stderr)
        return EXIT_INPUT_ERROR
    configs = [(f, g) for f in _choices(Firing, args.firing) for g in _choices(GenOp, args.gen)]
    columns, rows = bench(directory, configs, args.timeout_ms, args.max_bottomup_iters,
                          args.dump_dir)
    if args.json:
        print(json.dumps({"columns": columns, "rows": rows}, sort_keys=True, ensure_ascii=False))
    else:
        sys.stdout.write(bench_csv(columns, rows))
    return 0


class _Parser(argparse.ArgumentParser):
    # usage errors are input errors; argparse's own status 2 would read as UNKNOWN
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT_ERROR, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="specmc", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, multi: bool):
        fir = [f.value for f in Firing]
        gen = [g.value for g in GenOp]
        if multi:
            sp.add_argument("--firing", default="always",
                            help=f"comma-separated list or 'all' ({', '.join(fir)})")
            sp.add_argument("--gen", default="wm",
                            help=f"comma-separated list or 'all' ({', '.join(gen)})")
        else:
            sp.add_argument("--firing", default="always", choices=fir)
            sp.add_argument("--gen", default="wm", choices=gen)
        sp.add_argument("--timeout-ms", type=int, default=100_000)
        sp.add_argument("--max-bottomup-iters", type=int, default=1000)
        sp.add_argument("--json", action="store_true", help="machine-readable output")

    v = sub.add_parser("verify", help="verify one system description")
    v.add_argument("file")
    common(v, multi=False)
    v.add_argument("--emit-specialized", metavar="PATH")
    v.add_argument("--emit-model", metavar="PATH")
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bench", help="run a directory of descriptions (default: bundled corpus)")
    b.add_argument("directory", nargs="?")
    common(b, multi=True)
    b.add_argument("--dump-dir", metavar="DIR", help="write each specialized program here")
    b.set_defaults(func=cmd_bench)

    sub.add_parser("corpus", help="print the bundled corpus directory").set_defaults(
        func=lambda args: print(corpus_dir()) or 0)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "timeout_ms", 1) <= 0:
        parser.error("--timeout-ms must be positive")
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
