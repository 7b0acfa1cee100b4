"""Time every bimodule relation check per k; prints one line per (relation, k)."""
import argparse
import time
from dataclasses import dataclass

from vermacat.bimod import DEFAULT_WINDOW, RELATIONS, _NEEDS_K1, verify


@dataclass
class Config:
    kmax: int = 2
    qmin: int = DEFAULT_WINDOW[0]
    qmax: int = DEFAULT_WINDOW[1]
    lmax: int = DEFAULT_WINDOW[3]


def main():
    p = argparse.ArgumentParser(description=__doc__)
    for f, v in vars(Config()).items():
        p.add_argument(f"--{f}", type=int, default=v)
    cfg = Config(**vars(p.parse_args()))
    window = (cfg.qmin, cfg.qmax, 0, cfg.lmax)
    total = 0.0
    for k in range(cfg.kmax + 1):
        for rel in RELATIONS:
            if k == 0 and rel in _NEEDS_K1:
                continue
            t = time.time()
            r = verify(rel, k, window)
            dt = time.time() - t
            total += dt
            print(f"{rel:20s} k={k}  {r.status:4s}  {r.checked:6d} elements  {dt:7.2f}s", flush=True)
    print(f"total {total:.1f}s")


if __name__ == "__main__":
    main()
