"""Batch driver: ``vermacat check|gdim|homology|normalize|shapovalov``.

Reports are lists of flat records; see docs/report_schema.json.  ``check``
exits with status 1 when any record is not "pass".
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

THREADS_ENV = "VERMACAT_THREADS"
SUITES = ("bimod", "diagram", "dg", "uqsl2", "all")
CSV_FIELDS = ("suite", "check", "k", "n", "status")
DEFAULT_QWIN = (-12, 12)
DEFAULT_LWIN = (0, 6)

Record = Dict[str, object]


def parse_range(text: str) -> Tuple[int, int]:
    """"a..b" or a single integer."""
    if ".." in text:
        a, b = text.split("..", 1)
        lo, hi = int(a), int(b)
    else:
        lo = hi = int(text)
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return lo, hi


@dataclass
class CheckConfig:
    suite: str
    k_range: Tuple[int, int] = (0, 3)
    n_range: Tuple[int, int] = (0, 4)
    N_range: Tuple[int, int] = (1, 3)
    m_range: Tuple[int, int] = (0, 2)
    window: Tuple[int, int, int, int] = DEFAULT_QWIN + DEFAULT_LWIN
    word_length_cap: int = 6
    output: Optional[str] = None
    format: str = "json"

    def __post_init__(self):
        if self.suite not in SUITES:
            raise ValueError(f"unknown suite {self.suite!r}; expected one of {', '.join(SUITES)}")
        if self.format not in ("json", "csv", "text"):
            raise ValueError(f"unknown format {self.format!r}")
        for name in ("k_range", "n_range", "N_range", "m_range"):
            lo, hi = getattr(self, name)
            if lo > hi:
                raise ValueError(f"{name} is empty")
        qmin, qmax, lmin, lmax = self.window
        if qmin > qmax or lmin > lmax:
            raise ValueError("window is empty")


def _rng(r):
    return range(r[0], r[1] + 1)


def _rec(suite, check, status, k=None, n=None, **extra) -> Record:
    out: Record = {"suite": suite, "check": check, "k": k, "n": n, "status": status}
    out.update({a: b for a, b in extra.items() if b is not None})
    return out


# --------------------------------------------------------------------------
# suites; each returns a list of jobs (picklable zero-argument tasks)


def _job_bimod_verify(k, window):
    from .bimod import verify_all
    return [_rec("bimod", r.name, r.status, k=k, detail=r.counterexample,
                 bidegree=list(r.failing_bidegree) if r.failing_bidegree else None) for r in verify_all(k, window)]


def _job_bimod_oracle(k):
    from .bimod import oracle_all
    return [_rec("bimod", f"oracle {r.chain} {list(r.window)}", r.status, k=k, detail=r.detail)
            for r in oracle_all(k)]


def _job_diagram(n, m, window, cap):
    from .diagram import basis_dim, bridge_to_bimod, check_confluence, check_relations, rank_of_action
    out = []
    ok, word, count = check_confluence(n, cap)
    out.append(_rec("diagram", "confluence", "pass" if ok else "fail", n=n, m=m,
                    detail=None if ok else f"word {word}"))
    ok, why = check_relations(n, m)
    out.append(_rec("diagram", "relations", "pass" if ok else "fail", n=n, m=m, detail=why))
    qmin, qmax, lmin, lmax = window
    bad = None
    for l in range(lmin, lmax + 1):
        for q in range(qmin, qmax + 1):
            b, r = basis_dim(n, m, (q, l)), rank_of_action(n, m, (q, l))
            if b != r:
                bad = f"bidegree {(q, l)}: basis {b} vs rank {r}"
                break
        if bad:
            break
    out.append(_rec("diagram", "faithfulness", "fail" if bad else "pass", n=n, m=m, detail=bad))
    if m <= 1 and n <= 2:
        ok, why, _ = bridge_to_bimod(n, m, 3)
        out.append(_rec("diagram", "bridge_to_bimod", "pass" if ok else "fail", n=n, m=m, detail=why))
    return out


def _job_dg_qih(k, n, window):
    from .dg import check_qih, qih_window_complete
    if not qih_window_complete(k, n, window):
        return [_rec("dg", "qih", "partial", k=k, n=n, detail="window does not contain the Grassmannian degrees")]
    r = check_qih(k, n, window)
    return [_rec("dg", "qih", r.status, k=k, n=n, detail=r.detail)]


def _job_dg_dsq(k, n):
    from .dg import check_d_squared, check_intertwine, make_dn
    out = []
    for host in ("omega", "flag"):
        ok, why = check_d_squared(make_dn(host, k, n), (-8, 8, 0, 4))
        out.append(_rec("dg", f"d_squared {host}", "pass" if ok else "fail", k=k, n=n, detail=why))
    ok, why = check_intertwine(k, n)
    out.append(_rec("dg", "intertwine", "pass" if ok else "fail", k=k, n=n, detail=why))
    return out


def _job_dg_ef(k, n):
    from .dg import check_ef_homology
    r = check_ef_homology(k, n)
    return [_rec("dg", "ef_homology", r.status, k=k, n=n, detail=r.detail)]


def _job_dg_cyclo(n, N):
    from .dg import check_cyclotomic, check_diagram_leibniz, make_dN_diagram
    r = check_cyclotomic(n, N)
    ok, why = check_diagram_leibniz(make_dN_diagram(n, N), 3)
    return [_rec("dg", "cyclotomic", r.status, n=n, N=N, detail=r.detail),
            _rec("dg", "cyclotomic_leibniz", "pass" if ok else "fail", n=n, N=N, detail=why)]


def _job_uqsl2_static(kmax):
    from . import uqsl2 as U
    out = []
    for name, bad in (("sl2_relations", U.check_sl2_relations(kmax)),
                      ("sl2_relations_shifted", U.check_sl2_relations(kmax, -1)),
                      ("dual_basis", U.check_dual_basis(kmax)),
                      ("dual_pairing", U.check_dual_pairing(min(kmax, 4))),
                      ("shapovalov", U.check_shapovalov())):
        out.append(_rec("uqsl2", name, "fail" if bad else "pass", k=kmax, detail="; ".join(bad) or None))
    return out


def _job_uqsl2_groth(k, window):
    from .uqsl2 import check_groth
    return [_rec("uqsl2", r.name, r.status, k=k, detail=r.detail) for r in check_groth(k, window)]


def _job_uqsl2_eval(n):
    from .uqsl2 import check_collapsed, check_evaluation
    out = []
    bad = check_evaluation(n)
    out.append(_rec("uqsl2", "evaluation", "fail" if bad else "pass", n=n, detail="; ".join(bad) or None))
    if n >= 0:
        bad = check_collapsed(n)
        out.append(_rec("uqsl2", "collapsed", "fail" if bad else "pass", n=n, detail="; ".join(bad) or None))
    return out


def plan(cfg: CheckConfig) -> List[Tuple[Callable, tuple]]:
    suites = ("bimod", "diagram", "dg", "uqsl2") if cfg.suite == "all" else (cfg.suite,)
    W = cfg.window
    jobs: List[Tuple[Callable, tuple]] = []
    if "bimod" in suites:
        for k in _rng(cfg.k_range):
            jobs.append((_job_bimod_verify, (k, W)))
            if k <= 3:
                jobs.append((_job_bimod_oracle, (k,)))
    if "diagram" in suites:
        for n in _rng(cfg.n_range):
            if 1 <= n <= 3:
                for m in _rng(cfg.m_range):
                    jobs.append((_job_diagram, (n, m, W, cfg.word_length_cap)))
    if "dg" in suites:
        for n in _rng(cfg.n_range):
            for k in _rng(cfg.k_range):
                if n < 0 or k < 0:
                    continue
                jobs.append((_job_dg_dsq, (k, n)))
                jobs.append((_job_dg_qih, (k, n, W)))
                if k <= n <= 3:
                    jobs.append((_job_dg_ef, (k, n)))
            for N in _rng(cfg.N_range):
                if 1 <= n <= 2 and N >= 1:
                    jobs.append((_job_dg_cyclo, (n, N)))
    if "uqsl2" in suites:
        jobs.append((_job_uqsl2_static, (5,)))
        for k in _rng(cfg.k_range):
            if 0 <= k <= 3:
                jobs.append((_job_uqsl2_groth, (k, W)))
        for n in _rng(cfg.n_range):
            jobs.append((_job_uqsl2_eval, (n,)))
    return jobs


def _run_job(job):
    fn, args = job
    try:
        return fn(*args)
    except Exception as e:  # a crashing check is a failing check
        return [_rec("error", fn.__name__.lstrip("_"), "fail", detail=f"{type(e).__name__}: {e}")]


def threads() -> int:
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


def run_checks(cfg: CheckConfig) -> List[Record]:
    """Run the selected suites; records come back in plan order whatever the parallelism."""
    jobs = plan(cfg)
    workers = threads()
    if workers == 1:
        results = [_run_job(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(_run_job, jobs))
    return [r for batch in results for r in batch]


# --------------------------------------------------------------------------
# output


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (int, str, bool)) or x is None:
        return x
    return str(x)


def emit(report: Sequence[Record], fmt: str = "json") -> bytes:
    """Deterministic serialization: sorted keys, fixed formatting, trailing newline."""
    if fmt == "json":
        if not report:
            return b"[]\n"
        return (json.dumps([_jsonable(r) for r in report], sort_keys=True, indent=2) + "\n").encode()
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_FIELDS)
        for r in report:
            w.writerow(["" if r.get(f) is None else r.get(f) for f in CSV_FIELDS])
        return buf.getvalue().encode()
    if fmt == "text":
        rows = []
        for r in report:
            row = ["" if r.get(f) is None else str(r[f]) for f in CSV_FIELDS]
            extra = " ".join(f"{a}={r[a]}" for a in ("N", "m") if r.get(a) is not None)
            rows.append(row + [extra, str(r.get("detail") or "")])
        head = list(CSV_FIELDS) + ["params", "detail"]
        widths = [max([len(h)] + [len(row[i]) for row in rows]) for i, h in enumerate(head)]
        lines = ["  ".join(h.ljust(w) for h, w in zip(head, widths)).rstrip()]
        for row in rows:
            lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
        return ("\n".join(lines) + "\n").encode()
    raise ValueError(f"unknown format {fmt!r}")


def _write(data: bytes, output: Optional[str]):
    if output is None:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    else:
        with open(output, "wb") as fh:
            fh.write(data)


# --------------------------------------------------------------------------
# subcommands


def _series_records(series, name) -> List[Record]:
    out = []
    for (q, l), c in sorted(series.coeffs.items(), key=lambda kv: (kv[0][1], kv[0][0])):
        out.append({"series": name, "q": q, "l": l, "even": str(c.even), "odd": str(c.odd)})
    return out


def _series_text(series, name) -> bytes:
    from .core import render_series
    return f"{name}: {render_series(series)}\n".encode()


def cmd_gdim(a) -> int:
    from .bimod import down_side, up_side
    from .core import series_from_ring
    from .omega import chain, flag, grassmann, omega_xi, shifted_flag, shifted_grassmann
    W = a.qwin + a.lwin
    rings = {
        "omega": lambda: grassmann(a.k).ring,
        "flag": lambda: flag(a.k).ring,
        "xi": lambda: omega_xi(a.k).ring,
        "chain": lambda: chain(a.k, a.m).ring,
        "shifted": lambda: shifted_grassmann(a.k, a.n).ring,
        "shifted_flag": lambda: shifted_flag(a.k, a.n).ring,
    }
    if a.ring in rings:
        s = series_from_ring(rings[a.ring](), W)
    elif a.ring == "up_side":
        s = up_side(a.k).gdim(W)
    else:
        s = down_side(a.k).gdim(W)
    name = f"gdim {a.ring} k={a.k}"
    if a.format == "text":
        _write(_series_text(s, name), a.output)
    else:
        _write(emit(_series_records(s, name), a.format) if a.format == "json" else _series_csv(s), a.output)
    return 0


def _series_csv(s) -> bytes:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(("q", "l", "even", "odd"))
    for (q, l), c in sorted(s.coeffs.items(), key=lambda kv: (kv[0][1], kv[0][0])):
        w.writerow((q, l, c.even, c.odd))
    return buf.getvalue().encode()


def cmd_homology(a) -> int:
    from . import dg
    W = a.qwin + a.lwin
    partial = False
    if a.host in ("omega", "flag"):
        table = dg.homology(dg.make_dn(a.host, a.k, a.n), W)
        partial = a.host == "omega" and not dg.qih_window_complete(a.k, a.n, W)
    elif a.host in ("up_side", "down_side"):
        from .bimod import down_side, up_side
        ch = up_side(a.k) if a.host == "up_side" else down_side(a.k)
        table = dg.chain_homology(ch, a.n, W)
    else:
        d = dg.make_dN_diagram(a.n, a.N)
        table = dg.diagram_homology(d, W)
    rows = dg.table_to_json(table)
    if partial:
        rows.append({"status": "partial", "detail": "window does not contain the full homology"})
    if a.format == "json":
        data = emit(rows, "json")
    elif a.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(("q", "l", "parity", "dim"))
        for r in rows:
            if "dim" in r:
                w.writerow((r["q"], r["l"], r["parity"], r["dim"]))
        data = buf.getvalue().encode()
    else:
        lines = [f"H({a.host}, d) k={a.k} n={a.n}"] + [f"  q={r['q']} l={r['l']} parity={r['parity']}: {r['dim']}"
                                                        for r in rows if "dim" in r]
        if partial:
            lines.append("  partial: window does not contain the full homology")
        data = ("\n".join(lines) + "\n").encode()
    _write(data, a.output)
    return 1 if partial else 0


def cmd_normalize(a) -> int:
    from .diagram import format_terms, normalize, parse_word
    terms = normalize(parse_word(a.word, a.n, a.m))
    if a.format == "json":
        data = emit([{"word": a.word, "n": a.n, "m": a.m, "normal_form": format_terms(terms)}], "json")
    else:
        data = (format_terms(terms) + "\n").encode()
    _write(data, a.output)
    return 0


def cmd_shapovalov(a) -> int:
    from .uqsl2 import shapovalov, shapovalov_closed, shapovalov_str
    v = shapovalov(a.i, a.j)
    ok = v == shapovalov_closed(a.i, a.j)
    closed = shapovalov_str(a.i) if a.i == a.j else "0"
    if a.format == "json":
        data = emit([{"i": a.i, "j": a.j, "value": str(v), "closed_form": closed,
                      "status": "pass" if ok else "fail"}], "json")
    else:
        data = f"<F^{a.i} m_0, F^{a.j} m_0> = {closed} = {v}\n".encode()
    _write(data, a.output)
    return 0 if ok else 1


def cmd_check(a) -> int:
    cfg = CheckConfig(suite=a.suite, k_range=a.k, n_range=a.n, N_range=a.N, m_range=a.m,
                      window=a.qwin + a.lwin, word_length_cap=a.len, output=a.output, format=a.format)
    records = run_checks(cfg)
    _write(emit(records, cfg.format), cfg.output)
    return 0 if all(r["status"] == "pass" for r in records) else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="vermacat", description="Exact checks for the Verma categorification.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, qwin=DEFAULT_QWIN, lwin=DEFAULT_LWIN):
        sp.add_argument("--qwin", type=parse_range, default=qwin, help="q-degree range a..b")
        sp.add_argument("--lwin", type=parse_range, default=lwin, help="lambda-degree range a..b")
        sp.add_argument("--format", choices=("json", "csv", "text"), default="json")
        sp.add_argument("--output", default=None, help="write here instead of stdout")

    c = sub.add_parser("check", help="run check suites")
    c.add_argument("suite", choices=SUITES)
    c.add_argument("--k", type=parse_range, default=(0, 3))
    c.add_argument("--n", type=parse_range, default=(0, 4))
    c.add_argument("--N", type=parse_range, default=(1, 3))
    c.add_argument("--m", type=parse_range, default=(0, 2))
    c.add_argument("--len", type=int, default=6, help="word length cap for confluence")
    common(c)
    c.set_defaults(fn=cmd_check)

    g = sub.add_parser("gdim", help="graded dimension of a ring or bimodule")
    g.add_argument("--ring", choices=("omega", "flag", "xi", "chain", "shifted", "shifted_flag", "up_side",
                                      "down_side"), default="omega")
    g.add_argument("--k", type=int, default=1)
    g.add_argument("--n", type=int, default=0)
    g.add_argument("--m", type=int, default=1)
    common(g)
    g.set_defaults(fn=cmd_gdim)

    h = sub.add_parser("homology", help="homology table of a differential")
    h.add_argument("--host", choices=("omega", "flag", "up_side", "down_side", "cyclotomic"), default="omega")
    h.add_argument("--k", type=int, default=1)
    h.add_argument("--n", type=int, default=1)
    h.add_argument("--N", type=int, default=1)
    common(h, qwin=(-12, 24))
    h.set_defaults(fn=cmd_homology)

    nz = sub.add_parser("normalize", help="normal form of a diagram word")
    nz.add_argument("word")
    nz.add_argument("--n", type=int, required=True)
    nz.add_argument("--m", type=int, default=0)
    nz.add_argument("--format", choices=("json", "text"), default="text")
    nz.add_argument("--output", default=None)
    nz.set_defaults(fn=cmd_normalize)

    s = sub.add_parser("shapovalov", help="<F^i m_0, F^j m_0>")
    s.add_argument("--i", type=int, default=1)
    s.add_argument("--j", type=int, default=1)
    s.add_argument("--format", choices=("json", "text"), default="text")
    s.add_argument("--output", default=None)
    s.set_defaults(fn=cmd_shapovalov)
    return p


_RANGE_FLAGS = ("--qwin", "--lwin", "--k", "--n", "--N", "--m", "--i", "--j")


def _join_negative(argv: Sequence[str]) -> List[str]:
    # argparse would read "-4..4" as an option, so glue it to its flag
    out: List[str] = []
    it = iter(argv)
    for tok in it:
        if tok in _RANGE_FLAGS:
            nxt = next(it, None)
            if nxt is None:
                out.append(tok)
            else:
                out.append(f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(_join_negative(argv))
    try:
        return args.fn(args)
    except (ValueError, OSError) as e:
        print(f"vermacat: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
