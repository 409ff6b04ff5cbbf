"""Wall time of each route per rank, plus the operator-identity checks at rank 5.

    python3 scripts/bench_paths.py --ranks 2 3 4
"""
import argparse
import time
from dataclasses import dataclass, field

from sklyanin.sdetcore import PATHS, bench
from sklyanin.tensorop import Pi_k, R_abbrev, antisym, identity, t_prod


@dataclass
class BenchConfig:
    ranks: list = field(default_factory=lambda: [1, 2, 3, 4])
    collapse_rank: int = 5


def collapse_timing(n: int) -> float:
    t0 = time.perf_counter()
    for k in range(1, n + 1):
        A = antisym(n, "prime", n - k)
        Rs = t_prod([identity(n)] + [R_abbrev(k, i, n) for i in range(k + 1, n + 1)])
        Pk = Pi_k(k, n)
        assert A @ Rs == A @ Pk == Pk @ A, (n, k)
    return time.perf_counter() - t0


def main(cfg: BenchConfig) -> None:
    print(f"{'n':>2} " + " ".join(f"{p:>8}" for p in PATHS) + f"{'words':>7}")
    for n in cfg.ranks:
        rows = bench(n)
        print(f"{n:>2} " + " ".join(f"{s:8.3f}" for _, s, _ in rows) + f"{rows[0][2]:>7}")
    if cfg.collapse_rank:
        print(f"R-string collapse, n={cfg.collapse_rank}, all k: {collapse_timing(cfg.collapse_rank):.2f}s")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--ranks", type=int, nargs="+", default=[1, 2, 3, 4])
    ap.add_argument("--collapse-rank", type=int, default=5)
    a = ap.parse_args()
    main(BenchConfig(a.ranks, a.collapse_rank))
