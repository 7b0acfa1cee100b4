"""Search the q-shifts (a, b) for which q^a H(up side) - q^b H(down side) = [n-2k] [n choose k]
holds simultaneously for every n <= NMAX, k <= n.  The library pins (1-n, 1-n)."""
import argparse
import time
from dataclasses import dataclass

from vermacat.core import GradedSeries, PiScalar
from vermacat.dg import EF_WINDOW, ef_homology_series, gaussian_binomial, quantum_integer


@dataclass
class Config:
    nmax: int = 2
    spread: int = 4


def rhs(k, n):
    out = {}
    for e, c in quantum_integer(n - 2 * k).items():
        for q, v in gaussian_binomial(n, k).items():
            out[q + e] = out.get(q + e, 0) + c * v
    return {q: v for q, v in out.items() if v}


def flatten(s: GradedSeries, a):
    out = {}
    for (q, l), c in s.coeffs.items():
        out[q + a] = out.get(q + a, 0) + c.even - c.odd
    return out


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--nmax", type=int, default=Config.nmax)
    p.add_argument("--spread", type=int, default=Config.spread)
    cfg = Config(**vars(p.parse_args()))
    t = time.time()
    series = {(k, n): ef_homology_series(k, n, EF_WINDOW) for n in range(cfg.nmax + 1) for k in range(n + 1)}
    print(f"homology computed in {time.time() - t:.1f}s")
    for (k, n), (hu, hd) in sorted(series.items(), key=lambda kv: (kv[0][1], kv[0][0])):
        want = rhs(k, n)
        hits = []
        for a in range(-cfg.spread - n, cfg.spread + 1):
            for b in range(-cfg.spread - n, cfg.spread + 1):
                diff = flatten(hu, a)
                for q, v in flatten(hd, b).items():
                    diff[q] = diff.get(q, 0) - v
                if {q: v for q, v in diff.items() if v} == want:
                    hits.append((a, b))
        mark = "ok" if (1 - n, 1 - n) in hits else "MISSING"
        print(f"k={k} n={n}: shifts {hits[:6]}{' ...' if len(hits) > 6 else ''}  (1-n,1-n) {mark}")


if __name__ == "__main__":
    main()
