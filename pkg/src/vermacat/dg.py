"""Differentials d_n on the Omega rings and chain tensors, the cyclotomic
differential on A_n(N+1), and their homology computed bidegree by bidegree."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from .core import GradedSeries, PiScalar, Ring, RingHom, SuperPoly, laurent_mul, rational_series
from .linalg import RowSpace
from .omega import (chain, chern_Y, complete, flag, flag_homs, grassmann, phi_star, psi_star, x_of)

Window = Tuple[int, int, int, int]
HomologyTable = Dict[Tuple[int, int, int], int]


# --------------------------------------------------------------------------
# differentials on supercommutative rings


class Differential:
    """Odd derivation of a superring, zero on even generators."""

    def __init__(self, ring: Ring, images: Dict[str, SuperPoly], degree: Tuple[int, int], name: str = "d"):
        self.ring = ring
        self.images = dict(images)
        self.degree = degree
        self.name = name
        for g in ring.gens:
            if g.parity == 0 and g.name in self.images and not self.images[g.name].is_zero():
                raise ValueError(f"{name} must vanish on the even generator {g.name}")
        self._cache: Dict[tuple, SuperPoly] = {}

    def on_gen(self, name: str) -> SuperPoly:
        return self.images.get(name, self.ring.zero())

    def monomial(self, key) -> SuperPoly:
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        from .bimod import _peel
        peeled = _peel(self.ring, key)
        if peeled is None:
            out = self.ring.zero()
        else:
            name, rest_key, sign = peeled
            g = self.ring.gen(name)
            rest = SuperPoly(self.ring, {rest_key: 1})
            par = self.ring.gens[self.ring.index[name]].parity
            out = self.on_gen(name) * rest + (-1) ** par * g * self.monomial(rest_key)
            out = out.scale(sign)
        self._cache[key] = out
        return out

    def __call__(self, p: SuperPoly) -> SuperPoly:
        out = self.ring.zero()
        for key, c in p.terms.items():
            out = out + self.monomial(key).scale(c)
        return out


def make_dn(kind: str, k: int, n: int, m: int = 1) -> Differential:
    """d_n(s_r) = Y_{n-r+1} on Omega_k ("omega"), pulled back by psi* on Omega_{k,k+1} ("flag")
    and on the chain ring Omega_{k,...,k+m} ("chain")."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if kind == "omega":
        R = grassmann(k).ring
        images = {f"s{r}": chern_Y(n - r + 1, k) for r in range(1, k + 1)}
    elif kind == "flag":
        R = flag(k).ring
        psi = psi_star(k)
        images = {f"s{r}": psi(chern_Y(n - r + 1, k + 1)) for r in range(1, k + 2)}
    elif kind == "chain":
        R = chain(k, m).ring
        _, psi = flag_homs(k, m)
        images = {f"s{r}": psi(chern_Y(n - r + 1, k + m)) for r in range(1, k + m + 1)}
    else:
        raise ValueError(f"unknown host {kind!r}")
    return Differential(R, images, (2 * n + 2, -2), f"d_{n}")


def check_d_squared(d: Differential, window: Optional[Window] = None) -> Tuple[bool, Optional[str]]:
    """d(d(g)) = 0 on generators, and on every monomial of the window when one is given."""
    for g in d.ring.gens:
        gg = d(d(d.ring.gen(g.name)))
        if not gg.is_zero():
            return False, f"d^2({g.name}) = {gg}"
    if window is not None:
        for q, l in _bidegrees(window):
            for key in d.ring.monomials(q, l):
                p = SuperPoly(d.ring, {key: 1})
                if not d(d(p)).is_zero():
                    return False, f"d^2({p}) != 0"
    return True, None


def check_intertwine(k: int, n: int) -> Tuple[bool, Optional[str]]:
    """phi* and psi* commute with d_n on generators."""
    dk, dk1, df = make_dn("omega", k, n), make_dn("omega", k + 1, n), make_dn("flag", k, n)
    for hom, src in ((phi_star(k), dk), (psi_star(k), dk1)):
        for g in hom.source.gens:
            p = hom.source.gen(g.name)
            a, b = hom(src(p)), df(hom(p))
            if a != b:
                return False, f"{g.name}: {a} != {b}"
    return True, None


# --------------------------------------------------------------------------
# homology


def _bidegrees(window):
    qmin, qmax, lmin, lmax = window
    for l in range(max(lmin, 0), lmax + 1):
        if l % 2 == 0:
            for q in range(qmin, qmax + 1):
                yield q, l


def _rank(vectors: Iterable[Dict]) -> int:
    rs = RowSpace()
    for v in vectors:
        rs.add(v)
    return rs.rank


def homology_generic(basis: Callable[[int, int], list], apply: Callable[[object], Dict],
                     degree: Tuple[int, int], window: Window) -> HomologyTable:
    """dim ker - dim im per bidegree; basis(q, l) lists elements, apply(e) gives d(e) as a vector."""
    dq, dl = degree
    out: HomologyTable = {}
    ranks: Dict[Tuple[int, int], int] = {}

    def rank_out(q, l):
        if (q, l) not in ranks:
            ranks[(q, l)] = _rank(apply(e) for e in basis(q, l)) if l >= 0 else 0
        return ranks[(q, l)]

    for q, l in _bidegrees(window):
        dim = len(basis(q, l))
        h = dim - rank_out(q, l) - rank_out(q - dq, l - dl)
        if h:
            out[(q, l, (l // 2) % 2)] = h
    return out


def homology(d: Differential, window: Window) -> HomologyTable:
    R = d.ring
    return homology_generic(lambda q, l: R.monomials(q, l),
                            lambda key: d.monomial(key).terms, d.degree, window)


def complex_euler(basis: Callable[[int, int], list], window: Window) -> Dict[int, int]:
    """Sum over lambda-degrees of (-1)^parity dim, per q-degree."""
    out: Dict[int, int] = {}
    for q, l in _bidegrees(window):
        out[q] = out.get(q, 0) + (-1) ** ((l // 2) % 2) * len(basis(q, l))
    return out


def table_series(table: HomologyTable, window: Window) -> GradedSeries:
    coeffs = {}
    for (q, l, p), dim in table.items():
        coeffs[(q, l)] = PiScalar(0, dim) if p else PiScalar(dim, 0)
    return GradedSeries(window, coeffs, lfloor=0)


def table_to_json(table: HomologyTable) -> List[dict]:
    return [{"q": q, "l": l, "parity": p, "dim": dim} for (q, l, p), dim in sorted(table.items())]


# --------------------------------------------------------------------------
# finite Grassmannians


def gaussian_binomial(n: int, k: int) -> Dict[int, int]:
    """[n choose k] in the variable q^2, as {q-exponent: coefficient}."""
    if k < 0 or k > n:
        return {}
    # dynamic programming on partitions in a k x (n-k) box
    poly = {0: 1}
    for i in range(1, k + 1):
        # multiply by (1 - q^{2(n-k+i)}) / (1 - q^{2i})
        num = _poly_mul(poly, {0: 1, 2 * (n - k + i): -1})
        poly = _poly_div_1mq(num, 2 * i)
    return {e: c for e, c in poly.items() if c}


def _poly_mul(a, b):
    out = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
    return out


def _poly_div_1mq(a, s):
    """Exact division of a polynomial by (1 - q^s)."""
    top = max(a) if a else 0
    out = {}
    for e in range(0, top + 1):
        c = a.get(e, 0) + out.get(e - s, 0)
        if c:
            out[e] = c
    # remainder check: the product must give back a
    if _trim(_poly_mul(out, {0: 1, s: -1})) != _trim(a):
        raise ArithmeticError("not divisible")
    return out


def _trim(p):
    return {e: c for e, c in p.items() if c}


def grassmannian_gdim(k: int, n: int, window: Window) -> GradedSeries:
    """Poincare series of Q[x_1..x_k]/(Y_{n-k+1}, ..., Y_n), by per-degree linear algebra."""
    if k > n or k < 0:
        return GradedSeries(window, {}, lfloor=0)
    qmin, qmax, lmin, lmax = window
    coeffs = {}
    if lmin <= 0 <= lmax:
        R = grassmann(k).ring
        gens = [chern_Y(r, k) for r in range(n - k + 1, n + 1)]
        for q in range(max(qmin, 0), qmax + 1):
            mons = R.monomials(q, 0)
            if not mons:
                continue
            rs = RowSpace()
            for g in gens:
                dq = g.bidegree()[0]
                for key in R.monomials(q - dq, 0):
                    rs.add((SuperPoly(R, {key: 1}) * g).terms)
            dim = len(mons) - rs.rank
            if dim:
                coeffs[(q, 0)] = PiScalar(dim)
    return GradedSeries(window, coeffs, lfloor=0)


def grassmannian_formula(k: int, n: int, window: Window) -> GradedSeries:
    coeffs = {(e, 0): c for e, c in gaussian_binomial(n, k).items()}
    return GradedSeries(window, coeffs, lfloor=0)


def flag_grassmannian_formula(k: int, n: int, window: Window) -> GradedSeries:
    """Poincare series of the partial flag variety G_{k,k+1;n}: [n choose k][n-k choose 1]."""
    if k + 1 > n:
        return GradedSeries(window, {}, lfloor=0)
    p = _poly_mul(gaussian_binomial(n, k), gaussian_binomial(n - k, 1))
    return GradedSeries(window, {(e, 0): c for e, c in p.items() if c}, lfloor=0)


@dataclass
class DGReport:
    name: str
    params: dict
    status: str
    detail: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_json(self) -> dict:
        out = {"check": self.name, **self.params, "status": self.status}
        if self.detail:
            out["detail"] = self.detail
        return out


def _series_report(name, params, got: GradedSeries, want: GradedSeries, window) -> DGReport:
    bad = got.differences(want, window)
    if bad:
        return DGReport(name, params, "fail", f"first difference {bad[0]}")
    return DGReport(name, params, "pass")


QIH_WINDOW: Window = (-4, 24, 0, 6)


def check_qih(k: int, n: int, window: Window = QIH_WINDOW, host: str = "omega") -> DGReport:
    """Homology of (Omega_k, d_n) (or the flag ring) equals the cohomology of the finite Grassmannian."""
    d = make_dn(host, k, n)
    ok, why = check_d_squared(d)
    params = {"k": k, "n": n, "host": host}
    if not ok:
        return DGReport("qih", params, "fail", why)
    H = homology(d, window)
    got = table_series(H, window)
    if host == "omega":
        want = grassmannian_gdim(k, n, window)
        formula = grassmannian_formula(k, n, window)
        if want.differences(formula, window):
            return DGReport("qih", params, "fail", "quotient presentation disagrees with the Gaussian binomial")
    else:
        want = flag_grassmannian_formula(k, n, window)
    return _series_report("qih", params, got, want, window)


def qih_window_complete(k: int, n: int, window: Window) -> bool:
    """Whether ``window`` holds every degree of the Grassmannian cohomology (q in 0..2k(n-k), l = 0)."""
    qmin, qmax, lmin, lmax = window
    top = 2 * k * (n - k) if 0 <= k <= n else 0
    return qmin <= 0 and qmax >= top and lmin <= 0 <= lmax


# --------------------------------------------------------------------------
# chain tensors


@lru_cache(maxsize=None)
def _flag_d(k: int, n: int) -> Differential:
    return make_dn("flag", k, n)


def chain_differential(ch, n: int):
    """d on a chain tensor: Leibniz over the factors with the sign of the preceding parities."""
    from .bimod import _expand
    ds = [_flag_d(M.k, n) for M in ch.factors]

    def apply(t):
        pures = []
        for s, fs in t.pures():
            for keys, c in _expand(fs, s):
                par = 0
                for i, key in enumerate(keys):
                    M = ch.factors[i]
                    dm = ds[i].monomial(key)
                    if not dm.is_zero():
                        fs2 = [SuperPoly(F.ring, {kk: 1}) for F, kk in zip(ch.factors, keys)]
                        fs2[i] = dm
                        pures.append((c * (-1) ** par, tuple(fs2)))
                    par ^= M.ring.monomial_degree(key)[2]
        return ch.reduce(pures)

    return apply


def chain_homology(ch, n: int, window: Window) -> HomologyTable:
    apply = chain_differential(ch, n)
    return homology_generic(lambda q, l: ch.basis(q, l),
                            lambda e: apply(ch.basis_element(*e)).vector(),
                            (2 * n + 2, -2), window)


def quantum_integer(m: int) -> Dict[int, int]:
    """[m] = q^{m-1} + q^{m-3} + ... + q^{1-m}, and [-m] = -[m]."""
    if m == 0:
        return {}
    s = 1 if m > 0 else -1
    m = abs(m)
    return {m - 1 - 2 * j: s for j in range(m)}


EF_WINDOW: Window = (-16, 24, 0, 4)


def ef_homology_series(k: int, n: int, window: Window = EF_WINDOW):
    """Homology series of Omega_{k(k+1)k} and Omega_{k(k-1)k} (zero for k = 0) with d_n."""
    from .bimod import down_side, up_side
    hu = table_series(chain_homology(up_side(k), n, window), window)
    hd = table_series(chain_homology(down_side(k), n, window), window) if k >= 1 else GradedSeries(window, {},
                                                                                                    lfloor=0)
    return hu, hd


def check_ef_homology(k: int, n: int, window: Window = EF_WINDOW) -> DGReport:
    """q^{1-n} gdim H(up side) - q^{1-n} gdim H(down side) = [n-2k] gdim H(G_{k;n})."""
    hu, hd = ef_homology_series(k, n, window)
    lhs, rhs, common = ef_identity_sides(k, n, hu, hd, window)
    return _series_report("ef_homology", {"k": k, "n": n}, lhs, rhs, common)


def ef_identity_sides(k, n, hu: GradedSeries, hd: GradedSeries, window: Window):
    """Both sides of the commutator identity, and the window on which both are known."""
    su, sd = ef_shifts(k, n)
    qmin, qmax, lmin, lmax = window
    common = (qmin + max(su, sd, 0), qmax + min(su, sd, 0), lmin, lmax)
    lhs = (hu.shift(su, 0) - hd.shift(sd, 0)).restrict(common)
    coeffs: Dict[Tuple[int, int], PiScalar] = {}
    for e, c in quantum_integer(n - 2 * k).items():
        for q, v in gaussian_binomial(n, k).items():
            coeffs[(q + e, 0)] = coeffs.get((q + e, 0), PiScalar()) + PiScalar(v * c)
    return lhs, GradedSeries(common, coeffs, lfloor=0), common


def ef_shifts(k: int, n: int) -> Tuple[int, int]:
    """q-shifts putting both homologies in the normalization where the identity holds with sign +.

    Found by computing both sides for n <= 3, k <= n."""
    return (1 - n, 1 - n)


# --------------------------------------------------------------------------
# the cyclotomic differential on A_n(N+1)


class DiagramDifferential:
    """d_N(w_i) = (-1)^i h_{N-i+1}(x_1..x_i), d_N(x_i) = d_N(d_i) = 0, on A_n(m)."""

    def __init__(self, n: int, N: int, m: Optional[int] = None):
        from .diagram import poly_ring
        if N < 1:
            raise ValueError("N must be at least 1")
        self.n, self.N = n, N
        self.m = N + 1 if m is None else m
        R = poly_ring(n, self.m)
        one = R.one()
        self.images = {}
        for i in range(1, n + 1):
            xs = [R.gen(f"x{j}") for j in range(1, i + 1)]
            self.images[i] = complete(xs, N - i + 1, one).scale((-1) ** i)
        self.degree = (2 * N + 2 + 2 * self.m, -2)

    def image_exponents(self, i: int) -> Dict[Tuple[int, ...], object]:
        return {exps: c for (exps, mask), c in self.images[i].terms.items()}

    def on_term(self, a: Tuple[int, ...], delta: Tuple[int, ...], w: Tuple[int, ...]) -> Dict[tuple, object]:
        """d(x^a w^delta d_w) as {(a', delta', w): coefficient}; the result is already normal."""
        out: Dict[tuple, object] = {}
        ones = [i for i, d in enumerate(delta, start=1) if d]
        for t, i in enumerate(ones):
            sign = (-1) ** t
            nd = list(delta)
            nd[i - 1] = 0
            for exps, c in self.image_exponents(i).items():
                na = tuple(x + y for x, y in zip(a, exps))
                key = (na, tuple(nd), w)
                v = out.get(key, 0) + sign * c
                if v:
                    out[key] = v
                else:
                    out.pop(key, None)
        return out

    def on_element(self, el) -> Dict[tuple, object]:
        from .diagram import _term_key
        out: Dict[tuple, object] = {}
        for word, c in el.terms.items():
            a, delta, w = _term_key(word, self.n)
            for key, v in self.on_term(a, delta, w).items():
                nv = out.get(key, 0) + c * v
                if nv:
                    out[key] = nv
                else:
                    out.pop(key, None)
        return out


def make_dN_diagram(n: int, N: int) -> DiagramDifferential:
    return DiagramDifferential(n, N)


def diagram_d_squared(d: DiagramDifferential) -> bool:
    # d(w_i) has no white dots, so d^2 vanishes on generators
    return all(mask == 0 for img in d.images.values() for (exps, mask) in img.terms)


def check_diagram_leibniz(d: DiagramDifferential, max_len: int = 3) -> Tuple[bool, Optional[str]]:
    """d(normalize(u v)) = d(u) v + (-1)^{p(u)} u d(v) for words u, v, which also shows d respects the relations."""
    from itertools import product
    from .diagram import DiagramElement, DiagramWord, letters_of, multiply, _term_key, NormalTerm
    n, m = d.n, d.m

    def elem_of(dct):
        terms = {}
        for (a, delta, w), c in dct.items():
            terms[NormalTerm(1, a, delta, w).word()] = c
        return DiagramElement(n, m, terms)

    def as_dict(el):
        out = {}
        for word, c in el.terms.items():
            out[_term_key(word, n)] = c
        return out

    letters = letters_of(n)
    words = [()]
    for L in range(1, max_len + 1):
        words += list(product(letters, repeat=L))
    shorts = [w for w in words if len(w) <= max(1, max_len // 2 + 1)]
    for u in shorts:
        U = DiagramElement.of(DiagramWord(n, m, u))
        pu = sum(1 for kind, _ in u if kind == 1) & 1
        dU = elem_of(d.on_element(U))
        for v in shorts:
            V = DiagramElement.of(DiagramWord(n, m, v))
            lhs = d.on_element(multiply(U, V))
            dV = elem_of(d.on_element(V))
            r1 = as_dict(multiply(dU, V))
            r2 = as_dict(multiply(U, dV))
            rhs = dict(r1)
            for k2, c in r2.items():
                val = rhs.get(k2, 0) + (-1) ** pu * c
                if val:
                    rhs[k2] = val
                else:
                    rhs.pop(k2, None)
            if lhs != rhs:
                return False, f"Leibniz fails for {u} * {v}"
    return True, None


def diagram_homology(d: DiagramDifferential, window: Window) -> HomologyTable:
    from .diagram import basis_terms
    n, m = d.n, d.m

    def basis(q, l):
        return [(t.a, t.delta, t.w) for t in basis_terms(n, m, q, l)]

    return homology_generic(basis, lambda e: d.on_term(*e), d.degree, window)


def nhN_oracle(n: int, N: int, window: Window) -> Dict[int, int]:
    """Graded dimension of nh_n / (x_1^N) per q-degree: the two-sided ideal spanned by a x_1^N b."""
    from .diagram import DiagramElement, basis_terms, multiply, _term_key
    qmin, qmax = window[0], window[1]
    lo = -n * (n - 1)
    elems: Dict[int, List] = {}

    def nh_basis(q):
        if q not in elems:
            elems[q] = [DiagramElement(n, 0, {t.word(): 1}) for t in basis_terms(n, 0, q, 0)]
        return elems[q]

    xN = DiagramElement(n, 0, {((0, 1),) * N: 1})
    out = {}
    for q in range(qmin, qmax + 1):
        total = len(nh_basis(q))
        if not total:
            continue
        rs = RowSpace()
        rest = q - 2 * N
        for qa in range(lo, rest - lo + 1):
            qb = rest - qa
            if qb < lo:
                continue
            A, B = nh_basis(qa), nh_basis(qb)
            if not A or not B:
                continue
            for a in A:
                ax = multiply(a, xN)
                for b in B:
                    prod_ = multiply(ax, b)
                    rs.add({_term_key(w, n): c for w, c in prod_.terms.items()})
                    if rs.rank == total:
                        break
                if rs.rank == total:
                    break
            if rs.rank == total:
                break
        dim = total - rs.rank
        if dim:
            out[q] = dim
    return out


CYCLO_WINDOW: Window = (-8, 16, 0, 4)


def check_cyclotomic(n: int, N: int, window: Window = CYCLO_WINDOW) -> DGReport:
    d = make_dN_diagram(n, N)
    params = {"n": n, "N": N}
    if not diagram_d_squared(d):
        return DGReport("cyclotomic", params, "fail", "d^2 != 0 on generators")
    H = diagram_homology(d, window)
    for (q, l, p), dim in H.items():
        if l != 0 or p != 0:
            return DGReport("cyclotomic", params, "fail", f"homology outside lambda-degree 0 at {(q, l, p)}")
    oracle = nhN_oracle(n, N, window)
    got = {q: dim for (q, l, p), dim in H.items()}
    if got != oracle:
        return DGReport("cyclotomic", params, "fail", f"homology {got} vs oracle {oracle}")
    return DGReport("cyclotomic", params, "pass")
