"""Exact scalars, super-polynomials, ring homomorphisms and truncated graded series.

Everything here is immutable after construction.  Coefficients are Python
ints or Fractions, never floats.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Iterator, List, Mapping, NamedTuple, Optional, Sequence, Tuple, Union

Number = Union[int, Fraction]
Rational = Fraction


def qnum(c) -> Number:
    """Normalize an exact number: integral Fractions become ints."""
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, str):
        return qnum(Fraction(c))
    raise TypeError(f"not an exact rational: {c!r}")


def fmt_number(c: Number) -> str:
    c = qnum(c)
    return str(c)


# --------------------------------------------------------------------------
# a + b*pi with pi^2 = 1


@dataclass(frozen=True)
class PiScalar:
    even: Number = 0
    odd: Number = 0

    @staticmethod
    def of(x) -> "PiScalar":
        if isinstance(x, PiScalar):
            return x
        return PiScalar(qnum(x), 0)

    def __add__(self, other):
        o = PiScalar.of(other)
        return PiScalar(qnum(self.even + o.even), qnum(self.odd + o.odd))

    __radd__ = __add__

    def __neg__(self):
        return PiScalar(-self.even, -self.odd)

    def __sub__(self, other):
        return self + (-PiScalar.of(other))

    def __rsub__(self, other):
        return PiScalar.of(other) - self

    def __mul__(self, other):
        o = PiScalar.of(other)
        return PiScalar(qnum(self.even * o.even + self.odd * o.odd),
                        qnum(self.even * o.odd + self.odd * o.even))

    __rmul__ = __mul__

    def __bool__(self):
        return bool(self.even) or bool(self.odd)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = PiScalar.of(other)
        if not isinstance(other, PiScalar):
            return NotImplemented
        return self.even == other.even and self.odd == other.odd

    def __hash__(self):
        return hash((self.even, self.odd))

    def at_pi(self, value: int) -> Number:
        """Specialize pi to +1 or -1."""
        return qnum(self.even + value * self.odd)

    def __str__(self):
        if not self.odd:
            return fmt_number(self.even)
        if not self.even:
            return _scaled("pi", self.odd)
        return f"({fmt_number(self.even)} + {_scaled('pi', self.odd)})"

    __repr__ = __str__


PI = PiScalar(0, 1)


def _scaled(sym: str, c: Number) -> str:
    if c == 1:
        return sym
    if c == -1:
        return "-" + sym
    return f"{fmt_number(c)}*{sym}"


# --------------------------------------------------------------------------
# rings of super-polynomials


class GenSpec(NamedTuple):
    name: str
    qdeg: int
    ldeg: int
    parity: int


class Ring:
    """An ordered list of generators; even ones commute, odd ones anticommute."""

    def __init__(self, gens: Sequence[GenSpec], label: str = ""):
        self.gens: Tuple[GenSpec, ...] = tuple(GenSpec(*g) for g in gens)
        self.label = label
        names = [g.name for g in self.gens]
        if len(set(names)) != len(names):
            raise ValueError("duplicate generator names")
        self.index = {g.name: i for i, g in enumerate(self.gens)}
        self.even = [i for i, g in enumerate(self.gens) if g.parity == 0]
        self.odd = [i for i, g in enumerate(self.gens) if g.parity == 1]
        # generator index -> slot in the exponent vector / bit in the odd mask
        self.slot = {}
        for pos, i in enumerate(self.even):
            self.slot[i] = pos
        for pos, i in enumerate(self.odd):
            self.slot[i] = pos
        self.neven = len(self.even)
        self.nodd = len(self.odd)
        self._key = self.gens

    def __eq__(self, other):
        return isinstance(other, Ring) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"Ring({self.label or ','.join(g.name for g in self.gens)})"

    def __contains__(self, name):
        return name in self.index

    def gen(self, name: str) -> "SuperPoly":
        i = self.index[name]
        g = self.gens[i]
        if g.parity == 0:
            e = [0] * self.neven
            e[self.slot[i]] = 1
            return SuperPoly(self, {(tuple(e), 0): 1})
        return SuperPoly(self, {((0,) * self.neven, 1 << self.slot[i]): 1})

    def one(self) -> "SuperPoly":
        return self.const(1)

    def zero(self) -> "SuperPoly":
        return SuperPoly(self, {})

    def const(self, c) -> "SuperPoly":
        c = qnum(c)
        if c == 0:
            return self.zero()
        return SuperPoly(self, {((0,) * self.neven, 0): c})

    def monomial_degree(self, key) -> Tuple[int, int, int]:
        exps, mask = key
        q = l = 0
        for pos, e in enumerate(exps):
            if e:
                g = self.gens[self.even[pos]]
                q += e * g.qdeg
                l += e * g.ldeg
        par = 0
        m = mask
        pos = 0
        while m:
            if m & 1:
                g = self.gens[self.odd[pos]]
                q += g.qdeg
                l += g.ldeg
                par ^= 1
            m >>= 1
            pos += 1
        return q, l, par

    def describe(self) -> List[dict]:
        return [{"name": g.name, "qdeg": g.qdeg, "ldeg": g.ldeg, "parity": g.parity} for g in self.gens]

    def monomials(self, q: int, l: int) -> List[tuple]:
        """All monomial keys of bidegree (q, l); requires even gens of positive q-degree."""
        return _monomials_at(self, q, l)


@lru_cache(maxsize=None)
def _odd_sign(a: int, b: int) -> int:
    """Sign of reordering (odd monomial a)*(odd monomial b) into canonical order."""
    if a & b:
        return 0
    s = 0
    while b:
        low = b & -b
        j = low.bit_length() - 1
        s += (a >> (j + 1)).bit_count()
        b ^= low
    return -1 if s & 1 else 1


def _add_exps(e1, e2):
    return tuple(x + y for x, y in zip(e1, e2))


class SuperPoly:
    """Finite exact linear combination of monomials in a Ring.

    A monomial key is (exponents of the even generators, bitmask of the odd
    ones); the odd factors are ordered as in the ring.
    """

    __slots__ = ("ring", "terms")

    def __init__(self, ring: Ring, terms: Mapping = None):
        self.ring = ring
        self.terms: Dict[tuple, Number] = {}
        if terms:
            for k, c in terms.items():
                if c:
                    self.terms[k] = c

    # construction helpers
    @staticmethod
    def _raw(ring, terms):
        p = SuperPoly.__new__(SuperPoly)
        p.ring = ring
        p.terms = terms
        return p

    def _coerce(self, other) -> "SuperPoly":
        if isinstance(other, SuperPoly):
            if other.ring != self.ring:
                raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")
            return other
        return self.ring.const(other)

    def __add__(self, other):
        o = self._coerce(other)
        t = dict(self.terms)
        for k, c in o.terms.items():
            v = t.get(k, 0) + c
            if v:
                t[k] = v
            else:
                t.pop(k, None)
        return SuperPoly._raw(self.ring, t)

    __radd__ = __add__

    def __neg__(self):
        return SuperPoly._raw(self.ring, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c) -> "SuperPoly":
        c = qnum(c)
        if not c:
            return self.ring.zero()
        return SuperPoly._raw(self.ring, {k: qnum(v * c) for k, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, SuperPoly):
            return self.scale(other)
        return poly_mul(self, other)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, n: int):
        r = self.ring.one()
        for _ in range(n):
            r = r * self
        return r

    def __eq__(self, other):
        if isinstance(other, SuperPoly):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == self.ring.const(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, key) -> Number:
        return self.terms.get(key, 0)

    def constant(self) -> Number:
        return self.terms.get(((0,) * self.ring.neven, 0), 0)

    def items(self):
        return self.terms.items()

    def sorted_items(self):
        return sorted(self.terms.items(), key=lambda kv: _order_key(kv[0]))

    def bidegree(self):
        return bidegree(self)

    def parity(self) -> int:
        d = bidegree(self)
        if d == "inhomogeneous":
            raise ValueError("inhomogeneous element has no parity")
        return d[2]

    def components(self) -> Dict[Tuple[int, int, int], "SuperPoly"]:
        out: Dict[tuple, dict] = {}
        for k, c in self.terms.items():
            out.setdefault(self.ring.monomial_degree(k), {})[k] = c
        return {d: SuperPoly._raw(self.ring, t) for d, t in out.items()}

    def __str__(self):
        return render_poly(self)

    __repr__ = __str__


def _order_key(key):
    exps, mask = key
    total = sum(exps) + mask.bit_count()
    odd_idx = tuple(i for i in range(mask.bit_length()) if mask >> i & 1)
    return (-total, tuple(-e for e in exps), odd_idx)


def poly_mul(a: SuperPoly, b: SuperPoly) -> SuperPoly:
    if a.ring != b.ring:
        raise ValueError(f"ring mismatch: {a.ring} vs {b.ring}")
    out: Dict[tuple, Number] = {}
    for (e1, m1), c1 in a.terms.items():
        for (e2, m2), c2 in b.terms.items():
            s = _odd_sign(m1, m2)
            if not s:
                continue
            k = (_add_exps(e1, e2), m1 | m2)
            v = out.get(k, 0) + s * c1 * c2
            if v:
                out[k] = v
            else:
                out.pop(k, None)
    return SuperPoly._raw(a.ring, {k: qnum(v) for k, v in out.items()})


def bidegree(p: SuperPoly):
    """Common (qdeg, ldeg, parity) of all terms, or "inhomogeneous".

    The zero polynomial is reported as (0, 0, 0).
    """
    degs = {p.ring.monomial_degree(k) for k in p.terms}
    if not degs:
        return (0, 0, 0)
    if len(degs) > 1:
        return "inhomogeneous"
    return degs.pop()


def render_monomial(ring: Ring, key) -> str:
    exps, mask = key
    parts = []
    for pos, e in enumerate(exps):
        if e:
            name = ring.gens[ring.even[pos]].name
            parts.append(name if e == 1 else f"{name}^{e}")
    pos = 0
    m = mask
    while m:
        if m & 1:
            parts.append(ring.gens[ring.odd[pos]].name)
        m >>= 1
        pos += 1
    return "*".join(parts)


def render_poly(p: SuperPoly) -> str:
    if not p.terms:
        return "0"
    chunks = []
    for key, c in p.sorted_items():
        mon = render_monomial(p.ring, key)
        neg = c < 0
        a = -c if neg else c
        if not mon:
            body = fmt_number(a)
        elif a == 1:
            body = mon
        else:
            body = f"{fmt_number(a)}*{mon}"
        if not chunks:
            chunks.append(("-" if neg else "") + body)
        else:
            chunks.append((" - " if neg else " + ") + body)
    return "".join(chunks)


def _monomials_at(ring: Ring, q: int, l: int) -> List[tuple]:
    """Enumerate monomial keys of exact bidegree (q, l)."""
    evens = [ring.gens[i] for i in ring.even]
    if any(g.qdeg <= 0 or g.ldeg < 0 for g in evens):
        raise ValueError("enumeration does not terminate: even generator of non-positive q-degree")
    odds = [ring.gens[i] for i in ring.odd]
    out = []
    for mask in range(1 << len(odds)):
        oq = ol = 0
        for pos, g in enumerate(odds):
            if mask >> pos & 1:
                oq += g.qdeg
                ol += g.ldeg
        for exps in _even_solutions(evens, 0, q - oq, l - ol):
            out.append((exps, mask))
    return out


def _even_solutions(evens, pos, q, l):
    if pos == len(evens):
        if q == 0 and l == 0:
            yield ()
        return
    g = evens[pos]
    e = 0
    while e * g.qdeg <= q and e * g.ldeg <= l:
        for rest in _even_solutions(evens, pos + 1, q - e * g.qdeg, l - e * g.ldeg):
            yield (e,) + rest
        e += 1


# --------------------------------------------------------------------------
# homomorphisms


class RingHom:
    """A homomorphism of superrings given by the images of the generators."""

    def __init__(self, source: Ring, target: Ring, images: Mapping[str, SuperPoly], check: bool = True):
        self.source = source
        self.target = target
        missing = [g.name for g in source.gens if g.name not in images]
        if missing:
            raise ValueError(f"generators without image: {missing}")
        self.images = {}
        for g in source.gens:
            img = images[g.name]
            if not isinstance(img, SuperPoly):
                img = target.const(img)
            if img.ring != target:
                raise ValueError(f"image of {g.name} lives in the wrong ring")
            if check and not img.is_zero():
                d = bidegree(img)
                if d != (g.qdeg, g.ldeg, g.parity):
                    raise ValueError(f"image of {g.name} has bidegree {d}, expected {(g.qdeg, g.ldeg, g.parity)}")
            self.images[g.name] = img
        self._even_imgs = [self.images[source.gens[i].name] for i in source.even]
        self._odd_imgs = [self.images[source.gens[i].name] for i in source.odd]
        self._pow: Dict[Tuple[int, int], SuperPoly] = {}
        self._mono: Dict[tuple, SuperPoly] = {}

    def _power(self, pos: int, e: int) -> SuperPoly:
        key = (pos, e)
        r = self._pow.get(key)
        if r is None:
            r = self._even_imgs[pos] if e == 1 else self._power(pos, e - 1) * self._even_imgs[pos]
            self._pow[key] = r
        return r

    def on_monomial(self, key) -> SuperPoly:
        r = self._mono.get(key)
        if r is not None:
            return r
        exps, mask = key
        r = self.target.one()
        for pos, e in enumerate(exps):
            if e:
                r = r * self._power(pos, e)
        pos = 0
        m = mask
        while m:
            if m & 1:
                r = r * self._odd_imgs[pos]
            m >>= 1
            pos += 1
        self._mono[key] = r
        return r

    def __call__(self, p: SuperPoly) -> SuperPoly:
        return apply_hom(self, p)

    def compose(self, inner: "RingHom") -> "RingHom":
        """self after inner."""
        return RingHom(inner.source, self.target, {k: self(v) for k, v in inner.images.items()}, check=False)


def apply_hom(h: RingHom, p: SuperPoly) -> SuperPoly:
    if p.ring != h.source:
        raise ValueError(f"{p.ring} is not the source {h.source}")
    out: Dict[tuple, Number] = {}
    for key, c in p.terms.items():
        for k2, c2 in h.on_monomial(key).terms.items():
            v = out.get(k2, 0) + c * c2
            if v:
                out[k2] = v
            else:
                out.pop(k2, None)
    return SuperPoly._raw(h.target, {k: qnum(v) for k, v in out.items()})


def identity_hom(ring: Ring) -> RingHom:
    return RingHom(ring, ring, {g.name: ring.gen(g.name) for g in ring.gens})


def inclusion_hom(source: Ring, target: Ring) -> RingHom:
    """Send each generator to the generator of the same name."""
    return RingHom(source, target, {g.name: target.gen(g.name) for g in source.gens})


# --------------------------------------------------------------------------
# truncated graded series


Window = Tuple[int, int, int, int]  # qmin, qmax, lmin, lmax


class GradedSeries:
    """Laurent series in q and lambda with coefficients in Z[pi]/(pi^2-1).

    Coefficients are known exactly inside ``window``; elsewhere they are
    unknown unless the series is marked ``exact`` (a polynomial, known zero
    outside).  ``lfloor`` and ``qfloor`` record support information that
    makes products of infinite series safe: nothing lives at lambda-degree
    below ``lfloor``, nor at q-degree below ``qfloor[l]``.
    """

    def __init__(self, window: Window, coeffs: Mapping[Tuple[int, int], PiScalar],
                 exact: bool = False, lfloor: Optional[int] = None,
                 qfloor: Optional[Mapping[int, int]] = None):
        qmin, qmax, lmin, lmax = window
        self.window = (qmin, qmax, lmin, lmax)
        self.coeffs: Dict[Tuple[int, int], PiScalar] = {}
        for (q, l), c in coeffs.items():
            c = PiScalar.of(c)
            if not c:
                continue
            if not exact and not (qmin <= q <= qmax and lmin <= l <= lmax):
                continue
            self.coeffs[(q, l)] = c
        self.exact = exact
        if exact:
            ls = [l for (_, l) in self.coeffs]
            self.lfloor = min(ls) if ls else 0
            self.qfloor = {}
            for (q, l) in self.coeffs:
                self.qfloor[l] = min(q, self.qfloor.get(l, q))
        else:
            self.lfloor = lfloor
            self.qfloor = dict(qfloor) if qfloor is not None else None

    # ----- construction
    @staticmethod
    def polynomial(coeffs: Mapping[Tuple[int, int], object]) -> "GradedSeries":
        cs = {k: PiScalar.of(v) for k, v in coeffs.items()}
        qs = [q for q, _ in cs] or [0]
        ls = [l for _, l in cs] or [0]
        return GradedSeries((min(qs), max(qs), min(ls), max(ls)), cs, exact=True)

    @staticmethod
    def one() -> "GradedSeries":
        return GradedSeries.polynomial({(0, 0): 1})

    @staticmethod
    def monomial(r: int, s: int, c=1) -> "GradedSeries":
        return GradedSeries.polynomial({(r, s): c})

    # ----- access
    def __getitem__(self, key) -> PiScalar:
        q, l = key
        if not self.known(q, l):
            raise KeyError(f"coefficient at {key} is outside the window {self.window}")
        return self.coeffs.get((q, l), PiScalar())

    def known(self, q: int, l: int) -> bool:
        if self.exact:
            return True
        qmin, qmax, lmin, lmax = self.window
        return qmin <= q <= qmax and lmin <= l <= lmax

    def floor_at(self, l: int) -> Optional[int]:
        """Lowest q with a possibly nonzero coefficient at lambda-degree l (None: nothing there)."""
        if self.exact:
            return self.qfloor.get(l)
        if self.lfloor is not None and l < self.lfloor:
            return None
        if self.qfloor is None or l > self.window[3]:
            return -10 ** 9
        # qfloor is authoritative on the window's lambda range
        return self.qfloor.get(l)

    def restrict(self, window: Window) -> "GradedSeries":
        qmin, qmax, lmin, lmax = window
        if not self.exact:
            a, b, c, d = self.window
            if qmin < a or qmax > b or lmin < c or lmax > d:
                raise ValueError(f"window {window} not inside {self.window}")
        return GradedSeries(window, {k: v for k, v in self.coeffs.items()
                                     if qmin <= k[0] <= qmax and lmin <= k[1] <= lmax},
                            lfloor=self.lfloor, qfloor=self.qfloor)

    def at_pi(self, value: int) -> Dict[Tuple[int, int], Number]:
        return {k: c.at_pi(value) for k, c in self.coeffs.items() if c.at_pi(value)}

    def equal_on(self, other: "GradedSeries", window: Window) -> bool:
        qmin, qmax, lmin, lmax = window
        for q in range(qmin, qmax + 1):
            for l in range(lmin, lmax + 1):
                if self[q, l] != other[q, l]:
                    return False
        return True

    def differences(self, other: "GradedSeries", window: Window) -> List[tuple]:
        qmin, qmax, lmin, lmax = window
        return [(q, l, self[q, l], other[q, l]) for q in range(qmin, qmax + 1)
                for l in range(lmin, lmax + 1) if self[q, l] != other[q, l]]

    # ----- arithmetic
    def __add__(self, other: "GradedSeries") -> "GradedSeries":
        return series_arith("add", self, other)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return series_arith("add", self, other.scale(-1))

    def __mul__(self, other):
        if isinstance(other, GradedSeries):
            return series_arith("mul", self, other)
        return self.scale(other)

    __rmul__ = __mul__

    def scale(self, c) -> "GradedSeries":
        c = PiScalar.of(c)
        return GradedSeries(self.window, {k: v * c for k, v in self.coeffs.items()}, exact=self.exact,
                            lfloor=self.lfloor, qfloor=self.qfloor)

    def shift(self, r: int, s: int) -> "GradedSeries":
        return series_arith("scale_by_monomial", self, (r, s))

    def __eq__(self, other):
        if not isinstance(other, GradedSeries):
            return NotImplemented
        return self.window == other.window and self.coeffs == other.coeffs and self.exact == other.exact

    def __str__(self):
        return render_series(self)

    __repr__ = __str__


def series_arith(op: str, a: GradedSeries, b) -> GradedSeries:
    if op == "add":
        return _series_add(a, b)
    if op == "mul":
        return _series_mul(a, b)
    if op == "scale_by_monomial":
        r, s = b[:2]
        c = PiScalar.of(b[2]) if len(b) > 2 else PiScalar(1, 0)
        qmin, qmax, lmin, lmax = a.window
        coeffs = {(q + r, l + s): v * c for (q, l), v in a.coeffs.items()}
        if a.exact:
            return GradedSeries((qmin + r, qmax + r, lmin + s, lmax + s), coeffs, exact=True)
        qf = None if a.qfloor is None else {l + s: q + r for l, q in a.qfloor.items()}
        lf = None if a.lfloor is None else a.lfloor + s
        return GradedSeries((qmin + r, qmax + r, lmin + s, lmax + s), coeffs, lfloor=lf, qfloor=qf)
    raise ValueError(f"unknown series operation {op!r}")


def _series_add(a: GradedSeries, b: GradedSeries) -> GradedSeries:
    coeffs = dict(a.coeffs)
    for k, v in b.coeffs.items():
        coeffs[k] = coeffs.get(k, PiScalar()) + v
    if a.exact and b.exact:
        return GradedSeries((0, 0, 0, 0), coeffs, exact=True)
    if a.exact or b.exact:
        inf, ex = (b, a) if a.exact else (a, b)
        window = inf.window
    else:
        inf, ex = a, None
        w1, w2 = a.window, b.window
        window = (max(w1[0], w2[0]), min(w1[1], w2[1]), max(w1[2], w2[2]), min(w1[3], w2[3]))
    lfloor = None
    qfloor = None
    parts = [s for s in (a, b)]
    if all(p.exact or p.lfloor is not None for p in parts):
        lfloor = min(p.lfloor for p in parts)
    if all(p.exact or p.qfloor is not None for p in parts):
        qfloor = {}
        for l in range(window[2], window[3] + 1):
            fs = [f for f in (p.floor_at(l) for p in parts) if f is not None]
            if fs:
                qfloor[l] = min(fs)
    return GradedSeries(window, coeffs, lfloor=lfloor, qfloor=qfloor)


def _series_mul(a: GradedSeries, b: GradedSeries) -> GradedSeries:
    if a.exact and b.exact:
        coeffs: Dict[tuple, PiScalar] = {}
        for (q1, l1), c1 in a.coeffs.items():
            for (q2, l2), c2 in b.coeffs.items():
                k = (q1 + q2, l1 + l2)
                coeffs[k] = coeffs.get(k, PiScalar()) + c1 * c2
        return GradedSeries((0, 0, 0, 0), coeffs, exact=True)
    for s in (a, b):
        if not s.exact and (s.lfloor is None or s.qfloor is None):
            raise ValueError("product of series without support information is undetermined")
    lf = a.lfloor + b.lfloor
    lcap = min(x for x in (a.window[3] + b.lfloor if not a.exact else 10 ** 9,
                           b.window[3] + a.lfloor if not b.exact else 10 ** 9))
    if a.exact:
        lcap = min(lcap, a.window[3] + b.window[3])
    if b.exact:
        lcap = min(lcap, b.window[3] + a.window[3])
    qmin = (a.window[0] if not a.exact else min(a.qfloor.values(), default=0)) + \
           (b.window[0] if not b.exact else min(b.qfloor.values(), default=0))
    qcap = None
    lmax = lf - 1
    for l in range(lf, lcap + 1):
        bound = _qbound(a, b, l)
        if bound is None:
            break
        lmax = l
        qcap = bound if qcap is None else min(qcap, bound)
    if lmax < lf or qcap is None:
        return GradedSeries((0, -1, lf, lf - 1), {}, lfloor=lf, qfloor={})
    qmax = qcap
    coeffs = {}
    for (q1, l1), c1 in a.coeffs.items():
        for (q2, l2), c2 in b.coeffs.items():
            q, l = q1 + q2, l1 + l2
            if lf <= l <= lmax and qmin <= q <= qmax:
                coeffs[(q, l)] = coeffs.get((q, l), PiScalar()) + c1 * c2
    qfloor = {}
    for l in range(lf, lmax + 1):
        fs = []
        for l1 in range(a.lfloor, l - b.lfloor + 1):
            f1, f2 = a.floor_at(l1), b.floor_at(l - l1)
            if f1 is not None and f2 is not None:
                fs.append(f1 + f2)
        if fs:
            qfloor[l] = min(fs)
    return GradedSeries((min(qmin, qmax), qmax, lf, lmax), coeffs, lfloor=lf, qfloor=qfloor)


def _qbound(a: GradedSeries, b: GradedSeries, l: int) -> Optional[int]:
    """Largest q such that all product coefficients at (q', l), q' <= q, are determined."""
    bound = 10 ** 9
    for l1 in range(a.lfloor, l - b.lfloor + 1):
        l2 = l - l1
        f1, f2 = a.floor_at(l1), b.floor_at(l2)
        if f1 is None or f2 is None:
            continue
        for s, fs, ft in ((a, f1, f2), (b, f2, f1)):
            if s.exact:
                continue
            ls = l1 if s is a else l2
            qmin, qmax, lmin, lmax = s.window
            if not (lmin <= ls <= lmax) or fs < qmin:
                return None
            bound = min(bound, qmax + ft)
    return bound


def render_series(s: GradedSeries) -> str:
    """Render like ``1 + q^2 + pi*l^2*q^-2``: ordered by lambda-degree, then q-degree."""
    items = sorted(s.coeffs.items(), key=lambda kv: (kv[0][1], kv[0][0]))
    if not items:
        return "0"
    chunks = []
    for (q, l), c in items:
        mono = []
        if l:
            mono.append("l" if l == 1 else f"l^{l}")
        if q:
            mono.append("q" if q == 1 else f"q^{q}")
        for part, sym in ((c.even, ""), (c.odd, "pi")):
            if not part:
                continue
            m = ([sym] if sym else []) + mono
            body = "*".join(m)
            neg = part < 0
            a = -part if neg else part
            if not body:
                text = fmt_number(a)
            elif a == 1:
                text = body
            else:
                text = f"{fmt_number(a)}*{body}"
            if not chunks:
                chunks.append(("-" if neg else "") + text)
            else:
                chunks.append((" - " if neg else " + ") + text)
    return "".join(chunks)


def series_from_ring(ring: Union[Ring, Sequence[GenSpec]], window: Window) -> GradedSeries:
    """Count monomials per bidegree; odd monomials contribute pi."""
    if not isinstance(ring, Ring):
        ring = Ring(ring)
    qmin, qmax, lmin, lmax = window
    evens = [ring.gens[i] for i in ring.even]
    odds = [ring.gens[i] for i in ring.odd]
    if any(g.qdeg <= 0 for g in evens):
        raise ValueError("enumeration does not terminate: even generator of non-positive q-degree")
    if any(g.ldeg < 0 for g in ring.gens):
        raise ValueError("negative lambda-degrees are not supported")
    # series of the polynomial part, lambda-free or not, up to qmax - min odd
    odd_degs: Dict[Tuple[int, int, int], int] = {}
    for mask in range(1 << len(odds)):
        q = sum(g.qdeg for i, g in enumerate(odds) if mask >> i & 1)
        l = sum(g.ldeg for i, g in enumerate(odds) if mask >> i & 1)
        par = bin(mask).count("1") & 1
        odd_degs[(q, l, par)] = odd_degs.get((q, l, par), 0) + 1
    even_counts = _even_counts(evens, qmax - min((q for q, _, _ in odd_degs), default=0), lmax)
    coeffs: Dict[tuple, PiScalar] = {}
    for (oq, ol, par), n in odd_degs.items():
        for (eq, el), m in even_counts.items():
            q, l = oq + eq, ol + el
            if qmin <= q <= qmax and lmin <= l <= lmax:
                add = PiScalar(0, n * m) if par else PiScalar(n * m, 0)
                coeffs[(q, l)] = coeffs.get((q, l), PiScalar()) + add
    qfloor = {}
    for l in range(0, lmax + 1):
        fl = [oq for (oq, ol, _) in odd_degs if ol == l]
        # even generators have positive q-degree, so lambda-free ones only raise q
        cand = [oq + eq for (oq, ol, _) in odd_degs for (eq, el) in even_counts if ol + el == l]
        if cand:
            qfloor[l] = min(cand)
        elif fl:
            qfloor[l] = min(fl)
    lf = min((l for l in qfloor), default=0)
    return GradedSeries(window, coeffs, lfloor=lf, qfloor=qfloor)


def _even_counts(evens: Sequence[GenSpec], qcap: int, lcap: int) -> Dict[Tuple[int, int], int]:
    counts: Dict[Tuple[int, int], int] = {(0, 0): 1}
    for g in evens:
        new: Dict[Tuple[int, int], int] = {}
        for (q, l), n in counts.items():
            e = 0
            while q + e * g.qdeg <= qcap and l + e * g.ldeg <= lcap:
                k = (q + e * g.qdeg, l + e * g.ldeg)
                new[k] = new.get(k, 0) + n
                e += 1
        counts = new
    return counts


def rational_series(numer: Mapping[Tuple[int, int], object], denom_qexps: Sequence[int],
                    window: Window) -> GradedSeries:
    """Expand numer / prod(1 - q^a) for positive a, exactly on the window."""
    if any(a <= 0 for a in denom_qexps):
        raise ValueError("denominator exponents must be positive")
    qmin, qmax, lmin, lmax = window
    num = {k: PiScalar.of(v) for k, v in numer.items() if PiScalar.of(v)}
    lo = min((q for q, _ in num), default=0)
    span = qmax - lo
    part = [0] * (max(span, 0) + 1)
    if span >= 0:
        part[0] = 1
        for a in denom_qexps:
            for i in range(a, span + 1):
                part[i] += part[i - a]
    coeffs: Dict[tuple, PiScalar] = {}
    for (nq, nl), c in num.items():
        if not lmin <= nl <= lmax:
            continue
        for q in range(max(qmin, nq), qmax + 1):
            n = part[q - nq]
            if n:
                coeffs[(q, nl)] = coeffs.get((q, nl), PiScalar()) + c * n
    qfloor: Dict[int, int] = {}
    for (nq, nl) in num:
        qfloor[nl] = min(nq, qfloor.get(nl, nq))
    lf = min(qfloor, default=0)
    return GradedSeries(window, coeffs, lfloor=lf, qfloor=qfloor)


def laurent_mul(a: Mapping[Tuple[int, int], PiScalar], b: Mapping[Tuple[int, int], PiScalar]) -> Dict[Tuple[int, int], PiScalar]:
    """Product of two finite (q, lambda) Laurent polynomials given as dicts."""
    out: Dict[Tuple[int, int], PiScalar] = {}
    for (q1, l1), c1 in a.items():
        for (q2, l2), c2 in b.items():
            k = (q1 + q2, l1 + l2)
            out[k] = PiScalar.of(out.get(k, 0)) + PiScalar.of(c1) * PiScalar.of(c2)
    return {k: v for k, v in out.items() if v}


def window_points(window: Window) -> Iterator[Tuple[int, int]]:
    qmin, qmax, lmin, lmax = window
    for l in range(lmin, lmax + 1):
        for q in range(qmin, qmax + 1):
            yield q, l
