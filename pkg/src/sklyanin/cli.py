"""Command-line driver.

    sklyanin compute --n 2 --path thm --format text
    sklyanin verify  --n 4 --path all
    sklyanin expand  --n 2 --order 2 --l 1
    sklyanin goldens --out candidates/
    sklyanin bench   --n 3

Exit status: 0 success, 1 verification mismatch, 2 bad arguments.
Ranks above 4 need ``--stress``; ``SKLYANIN_MAX_MEMORY_MB`` caps the address
space of the process when set.
"""
from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass
from importlib.resources import files
from pathlib import Path

from . import emit
from .freealg import series_word_text
from .sdetcore import PATHS, cross_check, leading, sdet, series_coeffs, specialize_modes, bench

MAX_DEFAULT_N = 4
MEMORY_ENV = "SKLYANIN_MAX_MEMORY_MB"


@dataclass
class CliConfig:
    command: str
    n: int = 2
    path: str = "thm"
    format: str = "text"
    order: int = 2
    l: int | None = None
    out: str | None = None
    goldens: str | None = None
    stress: bool = False
    timings: bool = False


def _rank(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid rank {text!r}")
    if n < 1:
        raise argparse.ArgumentTypeError("rank must be at least 1")
    return n


def _nonneg(text: str) -> int:
    try:
        k = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid integer {text!r}")
    if k < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return k


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sklyanin", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, path_default: str, allow_all: bool):
        p.add_argument("--n", type=_rank, default=2, help="rank n (default 2)")
        choices = PATHS + ("all",) if allow_all else PATHS
        p.add_argument("--path", choices=choices, default=path_default)
        p.add_argument("--stress", action="store_true", help=f"allow n > {MAX_DEFAULT_N}")

    p = sub.add_parser("compute", help="print sdet B(u) computed along one route")
    common(p, "thm", False)
    p.add_argument("--format", choices=("text", "json", "latex"), default="text")
    p.add_argument("--out", help="write to this file instead of stdout")

    p = sub.add_parser("verify", help="cross-check all routes, goldens and leading terms")
    common(p, "all", True)
    p.add_argument("--l", type=_nonneg, help="check only this split (default: every 0..n)")
    p.add_argument("--goldens", help="directory holding n2.golden and n3.golden")
    p.add_argument("--timings", action="store_true", help="append wall times to the report")

    p = sub.add_parser("expand", help="print the coefficients of sdet in powers of 1/u")
    common(p, "thm", False)
    p.add_argument("--order", type=_nonneg, default=2)
    p.add_argument("--l", type=_nonneg, help="also evaluate t^0 with b_pq^(0) = delta_pq eps_p")

    p = sub.add_parser("goldens", help="write golden-file candidates for review")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--ranks", type=_rank, nargs="+", default=[2, 3])

    p = sub.add_parser("bench", help="time each route")
    common(p, "all", True)
    return parser


def _golden_dir(cfg: CliConfig) -> Path:
    return Path(cfg.goldens) if cfg.goldens else Path(str(files("sklyanin") / "goldens"))


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _cap_memory() -> None:
    mb = os.environ.get(MEMORY_ENV)
    if not mb:
        return
    import resource

    limit = int(mb) * 1024 * 1024
    resource.setrlimit(resource.RLIMIT_AS, (limit, limit))


def cmd_compute(cfg: CliConfig) -> int:
    res = sdet(cfg.n, cfg.path)
    if cfg.format == "json":
        data = emit.to_json(res)
        if cfg.out:
            Path(cfg.out).write_bytes(data)
        else:
            sys.stdout.write(data.decode())
    elif cfg.format == "latex":
        _emit(emit.to_latex(res.value, cfg.n) + "\n", cfg.out)
    else:
        _emit(emit.to_text(res.value) + "\n", cfg.out)
    return 0


def cmd_verify(cfg: CliConfig) -> int:
    ok = True
    lines: list[str] = []
    if cfg.path == "all":
        rep = cross_check(cfg.n)
        lines.append(rep.text(timings=cfg.timings))
        ok &= rep.passed
        value = rep.values.get("def")
    else:
        value = sdet(cfg.n, cfg.path).value
        ref = sdet(cfg.n, "def").value
        same = value == ref
        ok &= same
        lines.append(f"[{'PASS' if same else 'FAIL'}] n={cfg.n} sdet def == {cfg.path}")

    gdir = _golden_dir(cfg)
    for g in (2, 3):
        S = value if (g == cfg.n and value is not None) else sdet(g, "thm" if cfg.path == "all" else cfg.path).value
        try:
            rep_g = emit.golden_compare(S, gdir / f"n{g}.golden")
            tag = "PASS" if rep_g.match else "FAIL"
            detail = f"  ({rep_g.detail})" if rep_g.detail else ""
            ok &= rep_g.match
        except (OSError, ValueError) as exc:
            tag, detail = "FAIL", f"  ({exc})"
            ok = False
        lines.append(f"[{tag}] golden n{g}.golden{detail}")

    if value is not None:
        splits = [cfg.l] if cfg.l is not None else list(range(cfg.n + 1))
        for l in splits:
            if l > cfg.n:
                lines.append(f"[FAIL] leading l={l}: split exceeds n={cfg.n}")
                ok = False
                continue
            lead = leading(value, cfg.n, l)
            good = lead == (-1) ** l
            ok &= good
            lines.append(f"[{'PASS' if good else 'FAIL'}] n={cfg.n} leading l={l}: {lead}")

    lines.append("OK" if ok else "MISMATCH")
    sys.stdout.write("\n".join(lines) + "\n")
    return 0 if ok else 1


def cmd_expand(cfg: CliConfig) -> int:
    S = sdet(cfg.n, cfg.path).value
    ser = series_coeffs(S, cfg.n, cfg.order)
    out = []
    for r, coeff in enumerate(ser.coeffs):
        body = " + ".join(f"{c} * {series_word_text(w)}" for w, c in sorted(coeff.items())) or "0"
        out.append(f"t^{r}: {body}")
    if cfg.l is not None:
        out.append(f"t^0 at b_pq^(0) = delta_pq eps_p, l={cfg.l}: {specialize_modes(ser.coeffs[0], cfg.n, cfg.l)}")
    sys.stdout.write("\n".join(out) + "\n")
    return 0


def cmd_goldens(cfg: CliConfig, ranks: list[int]) -> int:
    outdir = Path(cfg.out)
    outdir.mkdir(parents=True, exist_ok=True)
    for n in ranks:
        S = sdet(n, "thm").value
        text = emit.write_golden(S, n, header=f"candidate rank-{n} golden; review against the reference before replacing")
        (outdir / f"n{n}.golden.candidate").write_text(text)
        sys.stdout.write(f"wrote {outdir / f'n{n}.golden.candidate'} ({len(S)} terms)\n")
    return 0


def cmd_bench(cfg: CliConfig) -> int:
    paths = PATHS if cfg.path == "all" else (cfg.path,)
    rows = bench(cfg.n, paths)
    sys.stdout.write(f"{'path':<6}{'seconds':>10}{'words':>8}\n")
    for path, secs, words in rows:
        sys.stdout.write(f"{path:<6}{secs:>10.3f}{words:>8}\n")
    return 0


def run(cfg: CliConfig, extra: dict | None = None) -> int:
    if cfg.l is not None and cfg.command in ("verify", "expand") and cfg.l > cfg.n:
        sys.stderr.write(f"sklyanin: --l must lie in 0..{cfg.n}\n")
        return 2
    if cfg.n > MAX_DEFAULT_N and not cfg.stress:
        sys.stderr.write(f"sklyanin: n={cfg.n} is a stress run; pass --stress "
                         f"(and consider {MEMORY_ENV})\n")
        return 2
    _cap_memory()
    if cfg.command == "compute":
        return cmd_compute(cfg)
    if cfg.command == "verify":
        return cmd_verify(cfg)
    if cfg.command == "expand":
        return cmd_expand(cfg)
    if cfg.command == "goldens":
        return cmd_goldens(cfg, (extra or {}).get("ranks", [2, 3]))
    if cfg.command == "bench":
        return cmd_bench(cfg)
    return 2


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    cfg = CliConfig(command=ns.command)
    for name in ("n", "path", "format", "order", "l", "out", "goldens", "stress", "timings"):
        if hasattr(ns, name):
            setattr(cfg, name, getattr(ns, name))
    return run(cfg, {"ranks": getattr(ns, "ranks", None) or [2, 3]})


if __name__ == "__main__":
    sys.exit(main())
