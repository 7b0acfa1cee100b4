"""Print graded dimensions of Omega_k, the flag rings and the two tensor products at pi = -1."""
import argparse
from dataclasses import dataclass

from vermacat.bimod import down_side, up_side
from vermacat.core import render_series, series_from_ring
from vermacat.omega import flag, grassmann


@dataclass
class Config:
    kmax: int = 2
    qmin: int = -6
    qmax: int = 6
    lmax: int = 2


def main():
    p = argparse.ArgumentParser(description=__doc__)
    for f, v in vars(Config()).items():
        p.add_argument(f"--{f}", type=int, default=v)
    cfg = Config(**vars(p.parse_args()))
    W = (cfg.qmin, cfg.qmax, 0, cfg.lmax)
    for k in range(cfg.kmax + 1):
        print(f"Omega_{k}:        {render_series(series_from_ring(grassmann(k).ring, W))}")
        print(f"Omega_{k},{k + 1}:     {render_series(series_from_ring(flag(k).ring, W))}")
        print(f"up side k={k}:   {render_series(up_side(k).gdim(W))}")
        if k >= 1:
            print(f"down side k={k}: {render_series(down_side(k).gdim(W))}")
        print()


if __name__ == "__main__":
    main()
