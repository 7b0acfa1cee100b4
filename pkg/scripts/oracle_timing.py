"""Run the independent tensor-product oracle on the windows used by the test suite, or on a custom one."""
import argparse
import time
from dataclasses import dataclass
from typing import Optional

from vermacat.bimod import down_side, oracle_check, oracle_windows, up_side


@dataclass
class Config:
    kmax: int = 2
    window: Optional[str] = None


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--kmax", type=int, default=2)
    p.add_argument("--window", default=None, help="qmin,qmax,lmin,lmax instead of the suite windows")
    cfg = Config(**vars(p.parse_args()))
    for k in range(cfg.kmax + 1):
        if cfg.window:
            w = tuple(int(x) for x in cfg.window.split(","))
            plan = [("up", w)] + ([("down", w)] if k >= 1 else [])
        else:
            ws = oracle_windows(k)
            plan = [("up", w) for w in ws["up"]] + [("down", w) for w in ws.get("down", [])]
        for side, w in plan:
            ch = up_side(k) if side == "up" else down_side(k)
            t = time.time()
            r = oracle_check(ch, w)
            print(f"k={k} {r.chain:18s} {w}  {r.status}  {r.bidegrees} bidegrees  {time.time() - t:.1f}s", flush=True)


if __name__ == "__main__":
    main()
