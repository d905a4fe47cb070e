"""``rolle-lab <subcommand> <file> [--verify] [--seed N] [--out path] [--format json|text] [--timing]``.

Exit status: 0 success, 1 parse error, 2 hypothesis failure, 3 bound below oracle count.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from ..curve_oscillation import DegenerateFrame, QuadratureError
from ..meandering import ChainError
from ..oracle import EnclosureError, ZeroOnContour
from .corpus import CorpusConfig, run_corpus
from .parsing import Fields, ParseError, loads, plain
from .problems import KINDS, HypothesisFailure, outcome_to_dict
from .report import build_report, to_json, to_text

EXIT_OK, EXIT_PARSE, EXIT_HYPOTHESIS, EXIT_CONTRADICTION = 0, 1, 2, 3
SUBCOMMANDS = sorted(KINDS) + ["corpus"]
COMPUTATION_ERRORS = (HypothesisFailure, ChainError, EnclosureError, DegenerateFrame, QuadratureError,
                      ZeroOnContour, ValueError, ArithmeticError, RuntimeError)


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rolle-lab", description="Certified zero-count bounds with oracle cross-checks.")
    p.add_argument("subcommand", choices=SUBCOMMANDS)
    p.add_argument("file", help="problem file (JSON); '-' reads standard input")
    p.add_argument("--verify", action="store_true", help="cross-check bounds against numerical oracles")
    p.add_argument("--seed", type=int, default=None, help="64-bit unsigned seed (overrides the file)")
    p.add_argument("--out", default=None, help="write the report here instead of standard output")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--timing", action="store_true", help="include wall-clock time (breaks byte-identity)")
    return p


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise ParseError(path, f"cannot read file: {exc.strerror}") from None


def _seed(data: Fields, override: int | None) -> int:
    seed = override if override is not None else data.integer("seed", 0)
    if not 0 <= seed < 1 << 64:
        raise ParseError(data.where("seed"), "must be a 64-bit unsigned integer")
    return seed


def execute(subcommand: str, text: str, verify: bool = False, seed: int | None = None,
            timing: bool = False, source: str = "<input>") -> tuple[dict, int]:
    """Run one problem; returns the report and the exit status. Parse errors propagate."""
    data = loads(text, source)
    start = time.perf_counter()
    if subcommand == "corpus":
        cfg = CorpusConfig.parse(data, "problem", seed)
        try:
            body = run_corpus(cfg)
        except COMPUTATION_ERRORS as exc:
            rep = build_report("corpus", plain(data), cfg.seed, {"error": f"{type(exc).__name__}: {exc}"})
            return rep, EXIT_HYPOTHESIS
        rep = build_report("corpus", plain(data), cfg.seed, body,
                           time.perf_counter() - start if timing else None)
        return rep, EXIT_OK if body["ok"] else EXIT_CONTRADICTION
    f = Fields(data, "problem")
    declared = f.raw("kind", subcommand)
    if subcommand != "verify" and declared != subcommand:
        raise ParseError(f.where("kind"), f"file declares kind {declared!r} but subcommand is {subcommand!r}")
    s = _seed(f, seed)
    payload = f.sub("payload") if f.has("payload") else f
    try:
        out = KINDS[subcommand](payload, verify, s)
    except ParseError:
        raise
    except COMPUTATION_ERRORS as exc:
        rep = build_report(subcommand, plain(data), s, {"error": f"{type(exc).__name__}: {exc}"},
                           time.perf_counter() - start if timing else None)
        return rep, EXIT_HYPOTHESIS
    body = outcome_to_dict(out)
    rep = build_report(subcommand, plain(data), s, body, time.perf_counter() - start if timing else None)
    if body.get("ok") is False:
        return rep, EXIT_CONTRADICTION
    if not all(c.valid for c in out.certificates.values()):
        failed = [h.name for c in out.certificates.values() for h in c.hypotheses if not h.holds]
        rep["error"] = "hypotheses failed: " + "; ".join(failed)
        return rep, EXIT_HYPOTHESIS
    return rep, EXIT_OK


def main(argv: list[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    try:
        rep, status = execute(args.subcommand, _read(args.file), args.verify, args.seed, args.timing, args.file)
    except ParseError as exc:
        print(f"rolle-lab: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    text = to_json(rep) if args.format == "json" else to_text(rep)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    if status == EXIT_CONTRADICTION:
        where = ""
        if rep.get("failing_indices"):
            where = f" (first failing instance index {rep['failing_indices'][0]}, seed {rep['seed']})"
        print(f"rolle-lab: CONTRADICTION: bound below oracle count{where}", file=sys.stderr)
    elif status == EXIT_HYPOTHESIS:
        print(f"rolle-lab: hypothesis failure: {rep.get('error')}", file=sys.stderr)
    return status


if __name__ == "__main__":
    sys.exit(main())
