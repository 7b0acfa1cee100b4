"""Exact sparse row reduction over Q.

Vectors are dicts from sortable column keys to exact rationals.  Rows are
kept fraction-free: each stored row is a primitive integer vector whose
pivot is its smallest column, with a positive pivot entry.  A vector is
reduced by eliminating pivot columns in increasing order.
"""
from __future__ import annotations

import heapq
from fractions import Fraction
from math import gcd, lcm
from typing import Dict, Hashable, Iterable, List, Optional, Tuple


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def _integral(v: Dict) -> Dict:
    """Scale v by a positive rational so that all entries are integers."""
    den = 1
    for c in v.values():
        if isinstance(c, Fraction):
            den = lcm(den, c.denominator)
    if den == 1:
        return {k: int(c) for k, c in v.items() if c}
    return {k: int(c * den) for k, c in v.items() if c}


def _primitive(v: Dict) -> Tuple[Dict, int]:
    g = 0
    for c in v.values():
        g = gcd(g, c)
        if g == 1:
            break
    p = v[min(v)]
    if p < 0:
        g = -g
    if g == 1:
        return v, 1
    return {k: c // g for k, c in v.items()}, g


class RowSpace:
    def __init__(self, track: bool = False):
        self.pivots: Dict[Hashable, Dict[Hashable, int]] = {}
        self.track = track
        # each pivot row as a combination of the inserted vectors (when tracking)
        self.combos: Dict[Hashable, Dict[int, object]] = {}
        self.count = 0

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def _reduce(self, v: Dict, combo: Optional[Dict[int, object]] = None):
        """Eliminate pivots; returns (remainder, scale) with remainder = scale*v + sum combo_i input_i."""
        v = _integral(v)
        scale = 1
        heap = [k for k in v if k in self.pivots]
        heapq.heapify(heap)
        while heap:
            c = heapq.heappop(heap)
            a = v.get(c)
            if not a:
                continue
            row = self.pivots[c]
            p = row[c]
            g = gcd(a, p)
            a, p = a // g, p // g
            if p != 1:
                for k in v:
                    v[k] *= p
                scale *= p
                if combo is not None:
                    for i in combo:
                        combo[i] *= p
            for k, b in row.items():
                nv = v.get(k, 0) - a * b
                if nv:
                    if k not in v and k in self.pivots:
                        heapq.heappush(heap, k)
                    v[k] = nv
                else:
                    v.pop(k, None)
            if combo is not None:
                for i, b in self.combos[c].items():
                    nv = combo.get(i, 0) - a * b
                    if nv:
                        combo[i] = nv
                    else:
                        combo.pop(i, None)
        return v, scale

    def reduce(self, v: Dict) -> Dict:
        """A nonzero multiple of the remainder of v modulo the row space (empty iff v is in the span)."""
        r, _ = self._reduce(v)
        return _primitive(r)[0] if r else r

    def contains(self, v: Dict) -> bool:
        return not self._reduce(v)[0]

    def add(self, v: Dict) -> bool:
        """Insert v; returns True when it was independent of the rows so far."""
        idx = self.count
        self.count += 1
        combo: Optional[Dict[int, object]] = {} if self.track else None
        den = 1
        if self.track:
            for c in v.values():
                if isinstance(c, Fraction):
                    den = lcm(den, c.denominator)
        r, scale = self._reduce(v, combo)
        if not r:
            return False
        row, g = _primitive(r)
        self.pivots[min(row)] = row
        if self.track:
            combo[idx] = scale * den
            self.combos[min(row)] = {i: _norm(Fraction(c) / g) for i, c in combo.items() if c}
        return True

    def express(self, v: Dict) -> Optional[Dict[int, object]]:
        """Coefficients over the inserted vectors giving v, or None if v is not in the span."""
        if not self.track:
            raise ValueError("row space does not track combinations")
        den = 1
        for c in v.values():
            if isinstance(c, Fraction):
                den = lcm(den, c.denominator)
        combo: Dict[int, object] = {}
        r, scale = self._reduce(v, combo)
        if r:
            return None
        # 0 = scale*den*v + sum combo_i input_i
        return {i: _norm(Fraction(-c) / (scale * den)) for i, c in combo.items() if c}


def rank(vectors: Iterable[Dict]) -> int:
    rs = RowSpace()
    for v in vectors:
        rs.add(v)
    return rs.rank


def independent(vectors: Iterable[Dict]) -> bool:
    rs = RowSpace()
    for v in vectors:
        if not rs.add(v):
            return False
    return True


def complement_basis(space: RowSpace, candidates: Iterable[Tuple[Hashable, Dict]]) -> List[Hashable]:
    """Greedy choice of candidates completing ``space``; mutates ``space``."""
    chosen = []
    for key, v in candidates:
        if space.add(v):
            chosen.append(key)
    return chosen


PRIME = 2 ** 31 - 1


class ModRowSpace:
    """Row reduction over Z/p.  The rank of an integer matrix mod p is a lower bound for its rank over Q."""

    def __init__(self, p: int = PRIME):
        self.p = p
        self.pivots: Dict[Hashable, Dict[Hashable, int]] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def add(self, v: Dict) -> bool:
        p = self.p
        v = {k: int(c) % p for k, c in _integral(v).items()}
        v = {k: c for k, c in v.items() if c}
        heap = [k for k in v if k in self.pivots]
        heapq.heapify(heap)
        while heap:
            c = heapq.heappop(heap)
            a = v.get(c)
            if not a:
                continue
            for k, b in self.pivots[c].items():
                nv = (v.get(k, 0) - a * b) % p
                if nv:
                    if k not in v and k in self.pivots:
                        heapq.heappush(heap, k)
                    v[k] = nv
                else:
                    v.pop(k, None)
        if not v:
            return False
        piv = min(v)
        inv = pow(v[piv], -1, p)
        self.pivots[piv] = {k: c * inv % p for k, c in v.items()}
        return True
