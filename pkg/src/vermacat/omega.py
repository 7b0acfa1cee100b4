"""The rings Omega_k, Omega_{k,k+1}, chains of them, shifted versions and their maps."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, combinations_with_replacement
from typing import Dict, List, Optional, Tuple

from .core import (PI, GenSpec, GradedSeries, PiScalar, Ring, RingHom, SuperPoly, laurent_mul,
                   rational_series, series_from_ring)


@dataclass(frozen=True)
class OmegaRing:
    kind: str  # grassmann, flag, chain, shifted_grassmann, shifted_flag, omega_xi
    k: int
    ring: Ring = field(compare=False)
    n: Optional[int] = None
    m: Optional[int] = None

    def to_json(self) -> dict:
        return {"kind": self.kind, "k": self.k, "n": self.n, "m": self.m, "generators": self.ring.describe()}


def _xs(k):
    return [GenSpec(f"x{i}", 2 * i, 0, 0) for i in range(1, k + 1)]


def _ss(k, prefix="s", shift=0):
    # shift=0 gives deg(s_i) = (-2i, 2)
    return [GenSpec(f"{prefix}{i}", 2 * shift - 2 * i, 2, 1) for i in range(1, k + 1)]


@lru_cache(maxsize=None)
def grassmann(k: int) -> OmegaRing:
    """Omega_k = Q[x_1..x_k] (x) Lambda(s_1..s_k)."""
    return OmegaRing("grassmann", k, Ring(_xs(k) + _ss(k), f"Omega_{k}"))


@lru_cache(maxsize=None)
def flag(k: int) -> OmegaRing:
    """Omega_{k,k+1} = Q[x_1..x_k, xi] (x) Lambda(s_1..s_{k+1})."""
    gens = _xs(k) + [GenSpec("xi", 2, 0, 0)] + _ss(k + 1)
    return OmegaRing("flag", k, Ring(gens, f"Omega_{k},{k + 1}"))


@lru_cache(maxsize=None)
def omega_xi(k: int) -> OmegaRing:
    """Omega_k[xi], the target of pi and mu."""
    gens = _xs(k) + [GenSpec("xi", 2, 0, 0)] + _ss(k)
    return OmegaRing("omega_xi", k, Ring(gens, f"Omega_{k}[xi]"))


@lru_cache(maxsize=None)
def chain(k: int, m: int) -> OmegaRing:
    """Omega_{k,k+1,...,k+m} = Q[x_1..x_k, xi_1..xi_m] (x) Lambda(s_1..s_{k+m})."""
    gens = _xs(k) + [GenSpec(f"xi{j}", 2, 0, 0) for j in range(1, m + 1)] + _ss(k + m)
    return OmegaRing("chain", k, Ring(gens, f"Omega_{k}..{k + m}"), m=m)


@lru_cache(maxsize=None)
def shifted_grassmann(k: int, n: int) -> OmegaRing:
    """Omega_k^n for n >= 0: generators x_i and st_i with deg(st_i) = (2n-2i, 2)."""
    if n < 0:
        raise ValueError("use minimal_quotient for negative n")
    return OmegaRing("shifted_grassmann", k, Ring(_xs(k) + _ss(k, "st", n), f"Omega_{k}^{n}"), n=n)


@lru_cache(maxsize=None)
def shifted_flag(k: int, n: int) -> OmegaRing:
    if n < 0:
        raise ValueError("use minimal_quotient for negative n")
    gens = _xs(k) + [GenSpec("xi", 2, 0, 0)] + _ss(k + 1, "st", n)
    return OmegaRing("shifted_flag", k, Ring(gens, f"Omega_{k},{k + 1}^{n}"), n=n)


def shifted_ring(k: int, n: int) -> OmegaRing:
    return shifted_grassmann(k, n)


# --------------------------------------------------------------------------
# Chern classes


def x_of(ring: Ring, i: int, k: int) -> SuperPoly:
    """x_{i,k} with the conventions x_0 = 1 and x_j = 0 outside 0..k."""
    if i == 0:
        return ring.one()
    if i < 0 or i > k:
        return ring.zero()
    return ring.gen(f"x{i}")


def chern_Y_of(xs: List[SuperPoly], one: SuperPoly, i: int, memo: Dict[int, SuperPoly]) -> SuperPoly:
    """Y_i from the recursion Y_i = -sum_{l=1}^{i} x_l Y_{i-l}; xs[l-1] = x_l."""
    if i < 0:
        return one * 0
    if i == 0:
        return one
    if i in memo:
        return memo[i]
    r = one * 0
    for l in range(1, min(i, len(xs)) + 1):
        r = r - xs[l - 1] * chern_Y_of(xs, one, i - l, memo)
    memo[i] = r
    return r


_Y_memo: Dict[Tuple[Ring, int], Dict[int, SuperPoly]] = {}


def chern_Y(i: int, k: int, ring: Optional[Ring] = None) -> SuperPoly:
    """Y_{i,k} inside Omega_k (or any ring containing x1..xk)."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    ring = ring or grassmann(k).ring
    memo = _Y_memo.setdefault((ring, k), {})
    return chern_Y_of([x_of(ring, l, k) for l in range(1, k + 1)], ring.one(), i, memo)


def Y_xi(i: int, k: int) -> SuperPoly:
    """Y^xi_{i,k} in Omega_k[xi]: Y^xi_i = (-xi)^i - sum_l x_l Y^xi_{i-l}."""
    ring = omega_xi(k).ring
    memo = _Y_memo.setdefault((ring, -1 - k), {})
    return _yxi(ring, k, i, memo)


def _yxi(ring, k, i, memo):
    if i < 0:
        return ring.zero()
    if i in memo:
        return memo[i]
    r = (-ring.gen("xi")) ** i
    for l in range(1, min(i, k) + 1):
        r = r - ring.gen(f"x{l}") * _yxi(ring, k, i - l, memo)
    memo[i] = r
    return r


def elementary(vars_: List[SuperPoly], j: int, one: SuperPoly) -> SuperPoly:
    if j < 0 or j > len(vars_):
        return one * 0
    r = one * 0
    for c in combinations(range(len(vars_)), j):
        t = one
        for i in c:
            t = t * vars_[i]
        r = r + t
    return r


def complete(vars_: List[SuperPoly], j: int, one: SuperPoly) -> SuperPoly:
    if j < 0:
        return one * 0
    r = one * 0
    for c in combinations_with_replacement(range(len(vars_)), j):
        t = one
        for i in c:
            t = t * vars_[i]
        r = r + t
    return r


# --------------------------------------------------------------------------
# structure maps


@lru_cache(maxsize=None)
def phi_star(k: int) -> RingHom:
    """phi*_k: Omega_k -> Omega_{k,k+1}, x_i -> x_i, s_i -> s_i + xi s_{i+1}."""
    src, tgt = grassmann(k).ring, flag(k).ring
    xi = tgt.gen("xi")
    im = {f"x{i}": tgt.gen(f"x{i}") for i in range(1, k + 1)}
    for i in range(1, k + 1):
        im[f"s{i}"] = tgt.gen(f"s{i}") + xi * tgt.gen(f"s{i + 1}")
    return RingHom(src, tgt, im)


@lru_cache(maxsize=None)
def psi_star(k: int) -> RingHom:
    """psi*_{k+1}: Omega_{k+1} -> Omega_{k,k+1}, x_i -> x_i + xi x_{i-1}, s_i -> s_i.

    Indexed by the flag: psi_star(k) has source Omega_{k+1}.
    """
    src, tgt = grassmann(k + 1).ring, flag(k).ring
    xi = tgt.gen("xi")
    im = {}
    for i in range(1, k + 2):
        im[f"x{i}"] = x_of(tgt, i, k) + xi * x_of(tgt, i - 1, k)
        im[f"s{i}"] = tgt.gen(f"s{i}")
    return RingHom(src, tgt, im)


@lru_cache(maxsize=None)
def flag_homs(k: int, m: int) -> Tuple[RingHom, RingHom]:
    """(phi*_{k,m}: Omega_k -> chain, psi*_{k+m,m}: Omega_{k+m} -> chain)."""
    if m < 1:
        raise ValueError("m must be at least 1")
    tgt = chain(k, m).ring
    one = tgt.one()
    xis = [tgt.gen(f"xi{j}") for j in range(1, m + 1)]
    e = [elementary(xis, j, one) for j in range(m + 1)]
    phi = {f"x{i}": tgt.gen(f"x{i}") for i in range(1, k + 1)}
    for i in range(1, k + 1):
        r = tgt.zero()
        for j in range(m + 1):
            if i + j <= k + m:
                r = r + tgt.gen(f"s{i + j}") * e[j]
        phi[f"s{i}"] = r
    psi = {}
    for i in range(1, k + m + 1):
        r = tgt.zero()
        for j in range(0, min(i, k) + 1):
            if i - j <= m:
                r = r + x_of(tgt, j, k) * e[i - j]
        psi[f"x{i}"] = r
        psi[f"s{i}"] = tgt.gen(f"s{i}")
    return RingHom(grassmann(k).ring, tgt, phi), RingHom(grassmann(k + m).ring, tgt, psi)


@lru_cache(maxsize=None)
def iso_chain(k: int) -> RingHom:
    """Omega_{0,k} = Omega_k -> Omega_{0,1,...,k}: x_i -> e_i(xi), s_i -> s_i."""
    if k < 1:
        raise ValueError("k must be at least 1")
    tgt = chain(0, k).ring
    one = tgt.one()
    xis = [tgt.gen(f"xi{j}") for j in range(1, k + 1)]
    im = {f"x{i}": elementary(xis, i, one) for i in range(1, k + 1)}
    im.update({f"s{i}": tgt.gen(f"s{i}") for i in range(1, k + 1)})
    return RingHom(grassmann(k).ring, tgt, im)


@lru_cache(maxsize=None)
def shifted_homs(k: int, n: int) -> Tuple[RingHom, RingHom]:
    """Shifted phi*_k: Omega_k^n -> Omega_{k,k+1}^n and psi*_{k+1}: Omega_{k+1}^n -> Omega_{k,k+1}^n."""
    tgt = shifted_flag(k, n).ring
    xi = tgt.gen("xi")
    phi = {f"x{i}": tgt.gen(f"x{i}") for i in range(1, k + 1)}
    for i in range(1, k + 1):
        phi[f"st{i}"] = tgt.gen(f"st{i}") + xi * tgt.gen(f"st{i + 1}")
    psi = {}
    for i in range(1, k + 2):
        psi[f"x{i}"] = x_of(tgt, i, k) + xi * x_of(tgt, i - 1, k)
        psi[f"st{i}"] = tgt.gen(f"st{i}")
    return (RingHom(shifted_grassmann(k, n).ring, tgt, phi),
            RingHom(shifted_grassmann(k + 1, n).ring, tgt, psi))


def s_extended(i: int, k: int) -> SuperPoly:
    """s_{i,k} in Omega_k for any i <= k, using s_i = -sum_{l=1}^k x_l s_{i+l} when i <= 0."""
    ring = grassmann(k).ring
    return _s_ext(ring, k, i, {}, lambda l: x_of(ring, l, k), lambda j: ring.gen(f"s{j}"))


def sigma_extended(i: int, k: int) -> SuperPoly:
    """s_{i,k+1} in Omega_{k,k+1} for i <= k+1, recursion with the psi*-images of x_{l,k+1}."""
    ring = flag(k).ring
    xi = ring.gen("xi")
    return _s_ext(ring, k + 1, i, {}, lambda l: x_of(ring, l, k) + xi * x_of(ring, l - 1, k),
                  lambda j: ring.gen(f"s{j}"))


def _s_ext(ring, top, i, memo, xfun, sfun):
    if i > top:
        return ring.zero()
    if i >= 1:
        return sfun(i)
    if i in memo:
        return memo[i]
    r = ring.zero()
    for l in range(1, top + 1):
        r = r - xfun(l) * _s_ext(ring, top, i + l, memo, xfun, sfun)
    memo[i] = r
    return r


@lru_cache(maxsize=None)
def shifted_embedding(k: int, n: int) -> RingHom:
    """Change of variables Omega_k^n -> Omega_k, st_i -> s_{i-n,k} (recursion for indices <= 0)."""
    src, tgt = shifted_grassmann(k, n).ring, grassmann(k).ring
    im = {f"x{i}": tgt.gen(f"x{i}") for i in range(1, k + 1)}
    im.update({f"st{i}": s_extended(i - n, k) for i in range(1, k + 1)})
    return RingHom(src, tgt, im)


@lru_cache(maxsize=None)
def shifted_flag_embedding(k: int, n: int) -> RingHom:
    src, tgt = shifted_flag(k, n).ring, flag(k).ring
    im = {f"x{i}": tgt.gen(f"x{i}") for i in range(1, k + 1)}
    im["xi"] = tgt.gen("xi")
    im.update({f"st{i}": sigma_extended(i - n, k) for i in range(1, k + 2)})
    return RingHom(src, tgt, im)


# --------------------------------------------------------------------------
# minimal quotient for negative weights


@dataclass(frozen=True)
class MinimalQuotient:
    """Omega_k^min(-|n|): the presentation ring, the ideal J, and the quotient ring.

    Everything is singly graded (lambda collapsed, ldeg 0).  The large ring is
    Q[x_1..x_{|n|-1}, s_1..s_{|n|-1}] [z_1..z_k, s_{|n|}..s_{|n|+k-1}] and J is
    generated by the x's and s's of the first factor, so the quotient is the
    free superring on the remaining generators.
    """
    k: int
    n: int
    big: Ring = field(compare=False)
    ideal_generators: Tuple[str, ...]
    quotient: Ring = field(compare=False)
    flag_quotient: Ring = field(compare=False)


@lru_cache(maxsize=None)
def minimal_quotient(k: int, n: int) -> MinimalQuotient:
    if n >= 0:
        raise ValueError("minimal quotient is defined for n < 0")
    a = -n
    lower_x = [GenSpec(f"x{i}", 2 * i, 0, 0) for i in range(1, a)]
    lower_s = [GenSpec(f"s{i}", -2 * i, 0, 1) for i in range(1, a)]
    zs = [GenSpec(f"z{i}", 2 * i, 0, 0) for i in range(1, k + 1)]
    upper_s = [GenSpec(f"s{j}", -2 * j, 0, 1) for j in range(a, a + k)]
    big = Ring(lower_x + zs + lower_s + upper_s, f"Omega_{k}(-{a})")
    quotient = Ring(zs + upper_s, f"Omega_{k}^min(-{a})")
    flag_q = Ring(zs + [GenSpec("xi", 2, 0, 0)] + [GenSpec(f"s{j}", -2 * j, 0, 1) for j in range(a, a + k + 1)],
                  f"Omega_{k},{k + 1}^min(-{a})")
    return MinimalQuotient(k, n, big, tuple(g.name for g in lower_x + lower_s), quotient, flag_q)


def minimal_homs(k: int, n: int) -> Tuple[RingHom, RingHom]:
    """phi*: Omega_k^min -> Omega_{k,k+1}^min and psi*: Omega_{k+1}^min -> Omega_{k,k+1}^min."""
    a = -n
    src, nxt = minimal_quotient(k, n), minimal_quotient(k + 1, n)
    tgt = src.flag_quotient
    xi = tgt.gen("xi")

    def z(i):
        if i == 0:
            return tgt.one()
        if i < 0 or i > k:
            return tgt.zero()
        return tgt.gen(f"z{i}")

    phi = {f"z{i}": tgt.gen(f"z{i}") for i in range(1, k + 1)}
    for j in range(a, a + k):
        phi[f"s{j}"] = tgt.gen(f"s{j}") + xi * tgt.gen(f"s{j + 1}")
    psi = {f"z{i}": z(i) + xi * z(i - 1) for i in range(1, k + 2)}
    psi.update({f"s{j}": tgt.gen(f"s{j}") for j in range(a, a + k + 1)})
    return RingHom(src.quotient, tgt, phi), RingHom(nxt.quotient, tgt, psi)


# --------------------------------------------------------------------------
# graded dimensions


def gdim_omega(ring, window) -> GradedSeries:
    r = ring.ring if isinstance(ring, OmegaRing) else ring
    return series_from_ring(r, window)


def omega_formula_num(k: int) -> Dict[Tuple[int, int], PiScalar]:
    """Numerator prod_{s=1}^k (1 + pi l^2 q^{-2s}) of gdim Omega_k."""
    num = {(0, 0): PiScalar(1)}
    for s in range(1, k + 1):
        num = laurent_mul(num, {(0, 0): PiScalar(1), (-2 * s, 2): PI})
    return num


def omega_gdim_formula(k: int, window) -> GradedSeries:
    """prod_{s=1}^k (1 + pi l^2 q^{-2s}) / (1 - q^{2s}), expanded exactly."""
    return rational_series(omega_formula_num(k), [2 * s for s in range(1, k + 1)], window)


def flag_over_right_formula(k: int, window) -> GradedSeries:
    """Omega_{k,k+1} over Omega_{k+1} (via psi*): free on 1, xi, ..., xi^k."""
    num = {(2 * a, 0): PiScalar(1) for a in range(k + 1)}
    return GradedSeries.polynomial(num)


def flag_over_left_formula(k: int, window) -> GradedSeries:
    """Omega_{k,k+1} over Omega_k (via phi*): free on xi^b s_{k+1}^d, gdim (1+pi l^2 q^{-2k-2})/(1-q^2)."""
    return rational_series({(0, 0): PiScalar(1), (-2 * k - 2, 2): PI}, [2], window)
