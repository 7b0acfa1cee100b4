"""The extended nilHecke superalgebra A_n(m).

Generators are dots x_i, white dots w_i (odd) and crossings d_i.  A word is
a product of generators written left to right, so ``[Cross(1), Dot(1)]`` is
d_1 x_1.  Words are rewritten to the basis x^a w^delta d_w by local rules;
the algebra acts faithfully on Q[x_1..x_n] (x) Lambda(w_1..w_n).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product
from typing import Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple

from .core import GenSpec, Ring, RingHom, SuperPoly, qnum
from .linalg import RowSpace

# letters: (kind, index) with kind 0 = dot, 1 = white dot, 2 = crossing
DOT, WHITE, CROSS = 0, 1, 2
Letter = Tuple[int, int]
Word = Tuple[Letter, ...]


def Dot(i: int) -> Letter:
    return (DOT, i)


def WhiteDot(i: int) -> Letter:
    return (WHITE, i)


def Cross(i: int) -> Letter:
    return (CROSS, i)


_NAMES = {DOT: "x", WHITE: "w", CROSS: "d"}


@dataclass(frozen=True)
class DiagramWord:
    n: int
    m: int
    letters: Word

    def __post_init__(self):
        for kind, i in self.letters:
            top = self.n - 1 if kind == CROSS else self.n
            if not 1 <= i <= top:
                raise ValueError(f"{_NAMES[kind]}{i} is not a generator of A_{self.n}")

    def __str__(self):
        return " ".join(f"{_NAMES[k]}{i}" for k, i in self.letters) or "1"


def parse_word(text: str, n: int, m: int = 0) -> DiagramWord:
    """Parse a word like ``"d1 x1 w2"``."""
    letters = []
    for tok in text.replace("*", " ").split():
        if tok == "1":
            continue
        kind = {"x": DOT, "w": WHITE, "d": CROSS}.get(tok[0])
        if kind is None or not tok[1:].isdigit():
            raise ValueError(f"cannot parse generator {tok!r}")
        letters.append((kind, int(tok[1:])))
    return DiagramWord(n, m, tuple(letters))


class Bidegree(NamedTuple):
    qdeg: int
    ldeg: int
    parity: int


def letter_degree(letter: Letter, m: int) -> Tuple[int, int]:
    kind, i = letter
    if kind == DOT:
        return (2, 0)
    if kind == CROSS:
        return (-2, 0)
    # the white dot on strand i sits right of the region labelled m+i-1
    return (-2 * (m + i), 2)


def degree_of(wd: DiagramWord) -> Bidegree:
    q = l = 0
    for let in wd.letters:
        a, b = letter_degree(let, wd.m)
        q += a
        l += b
    return Bidegree(q, l, (l // 2) % 2)


# --------------------------------------------------------------------------
# permutations


def perm_of(word: Sequence[int], n: int) -> Optional[Tuple[int, ...]]:
    """One-line notation of s_{i1}...s_{ir}, or None if the word is not reduced."""
    w = list(range(1, n + 1))
    for i in word:
        if w[i - 1] > w[i]:
            return None
        w[i - 1], w[i] = w[i], w[i - 1]
    return tuple(w)


def perm_length(w: Sequence[int]) -> int:
    return sum(1 for a in range(len(w)) for b in range(a + 1, len(w)) if w[a] > w[b])


@lru_cache(maxsize=None)
def reduced_word(w: Tuple[int, ...]) -> Tuple[int, ...]:
    """Lexicographically minimal reduced word of w."""
    w = list(w)
    out = []
    while True:
        pos = {v: p for p, v in enumerate(w)}
        for i in range(1, len(w)):
            if pos[i + 1] < pos[i]:
                # s_i is a left descent: w = s_i (s_i w)
                w[pos[i]], w[pos[i + 1]] = i + 1, i
                out.append(i)
                break
        else:
            return tuple(out)


def all_perms(n: int) -> List[Tuple[int, ...]]:
    from itertools import permutations
    return sorted(permutations(range(1, n + 1)))


# --------------------------------------------------------------------------
# normal terms


@dataclass(frozen=True)
class NormalTerm:
    coefficient: object
    a: Tuple[int, ...]
    delta: Tuple[int, ...]
    w: Tuple[int, ...]

    def word(self) -> Word:
        out: List[Letter] = []
        for i, e in enumerate(self.a, start=1):
            out += [(DOT, i)] * e
        out += [(WHITE, i) for i, d in enumerate(self.delta, start=1) if d]
        out += [(CROSS, i) for i in self.w]
        return tuple(out)

    def __str__(self):
        body = " ".join(f"{_NAMES[k]}{i}" for k, i in self.word()) or "1"
        return f"{self.coefficient}*{body}" if self.coefficient != 1 else body


def _term_key(word: Word, n: int):
    a = [0] * n
    delta = [0] * n
    ds = []
    for kind, i in word:
        if kind == DOT:
            a[i - 1] += 1
        elif kind == WHITE:
            delta[i - 1] = 1
        else:
            ds.append(i)
    return (tuple(a), tuple(delta), tuple(ds))


def _terms_from(acc: Dict[Word, object], n: int) -> List[NormalTerm]:
    out = []
    for word, c in acc.items():
        a, delta, w = _term_key(word, n)
        out.append(NormalTerm(c, a, delta, w))
    out.sort(key=lambda t: (sum(t.a), t.a, t.delta, len(t.w), t.w))
    return out


def format_terms(terms: Sequence[NormalTerm]) -> str:
    """Render as ``x2 d1 + 1``."""
    if not terms:
        return "0"
    parts = []
    for t in sorted(terms, key=lambda t: (-len(t.w), -sum(t.a), [-e for e in t.a], t.delta)):
        body = " ".join(f"{_NAMES[k]}{i}" for k, i in t.word())
        c = t.coefficient
        if body:
            s = body if c == 1 else ("- " + body if c == -1 else f"{c} {body}")
        else:
            s = str(c)
        parts.append(s)
    out = parts[0]
    for p in parts[1:]:
        out += " - " + p[2:] if p.startswith("- ") else (" - " + p[1:] if p.startswith("-") else " + " + p)
    return out


# --------------------------------------------------------------------------
# rewriting


def _is_normal_pair(A: Letter, B: Letter) -> bool:
    if A[0] != B[0]:
        return A[0] < B[0]
    if A[0] == DOT:
        return A[1] <= B[1]
    if A[0] == WHITE:
        return A[1] < B[1]
    return A[1] != B[1]  # crossing blocks are canonicalized separately


def _rewrite_pair(A: Letter, B: Letter) -> List[Tuple[object, Word]]:
    """Local rule for the adjacent pair A B (which is not in normal order)."""
    ka, i = A
    kb, j = B
    if ka == kb == DOT:
        return [(1, (B, A))]
    if ka == kb == WHITE:
        return [] if i == j else [(-1, (B, A))]
    if ka == kb == CROSS:  # i == j
        return []
    if ka == WHITE and kb == DOT:
        return [(1, (B, A))]
    if ka == CROSS and kb == DOT:
        # d_i x_j = s_i(x_j) d_i + d_i(x_j)
        if j == i:
            return [(1, ((DOT, i + 1), A)), (1, ())]
        if j == i + 1:
            return [(1, ((DOT, i), A)), (-1, ())]
        return [(1, (B, A))]
    if ka == CROSS and kb == WHITE:
        # d_i w_i = (w_i + (x_i - x_{i+1}) w_{i+1}) d_i - w_{i+1}
        if j == i:
            return [(1, (B, A)), (1, ((DOT, i), (WHITE, i + 1), A)), (-1, ((DOT, i + 1), (WHITE, i + 1), A)),
                    (-1, ((WHITE, i + 1),))]
        return [(1, (B, A))]
    raise AssertionError("pair already normal")


def _find_redex(word: Word, rightmost: bool) -> Optional[int]:
    rng = range(len(word) - 2, -1, -1) if rightmost else range(len(word) - 1)
    for p in rng:
        if not _is_normal_pair(word[p], word[p + 1]):
            return p
    return None


def _canonical_crossings(word: Word, n: int) -> Optional[Word]:
    p = len(word)
    while p > 0 and word[p - 1][0] == CROSS:
        p -= 1
    ds = [i for _, i in word[p:]]
    w = perm_of(ds, n)
    if w is None:
        return None
    return word[:p] + tuple((CROSS, i) for i in reduced_word(w))


def rewrite(terms: Iterable[Tuple[object, Word]], n: int, rightmost: bool = False) -> Dict[Word, object]:
    """Rewrite a linear combination of words to normal words, choosing the leftmost or rightmost redex."""
    acc: Dict[Word, object] = {}
    agenda = list(terms)
    while agenda:
        c, word = agenda.pop()
        p = _find_redex(word, rightmost)
        if p is None:
            word = _canonical_crossings(word, n)
            if word is None:
                continue
            v = qnum(acc.get(word, 0) + c)
            if v:
                acc[word] = v
            else:
                acc.pop(word, None)
            continue
        for s, mid in _rewrite_pair(word[p], word[p + 1]):
            agenda.append((c * s, word[:p] + mid + word[p + 2:]))
    return acc


def rewrite_measure(word: Word) -> Tuple[int, int, int]:
    """Lexicographic measure decreased by every rule: (d,x)-inversions, (d,w)-inversions, crossings."""
    dx = dw = 0
    for p, A in enumerate(word):
        if A[0] != CROSS:
            continue
        for B in word[p + 1:]:
            if B[0] == DOT:
                dx += 1
            elif B[0] == WHITE:
                dw += 1
    return (dx, dw, sum(1 for a in word if a[0] == CROSS))


def normalize(wd: DiagramWord, strategy: str = "leftmost") -> List[NormalTerm]:
    """Normal form x^a w^delta d_w of a word."""
    if strategy not in ("leftmost", "rightmost"):
        raise ValueError(f"unknown strategy {strategy!r}")
    return _terms_from(rewrite([(1, wd.letters)], wd.n, strategy == "rightmost"), wd.n)


class Normalizer:
    """Memoized normal forms of words, built one letter at a time.

    The "left" variant appends the last letter to the normal form of the
    prefix and rewrites leftmost-first; the "right" variant prepends the
    first letter to the normal form of the suffix and rewrites rightmost-first.
    """

    def __init__(self, n: int, side: str):
        if side not in ("left", "right"):
            raise ValueError(side)
        self.n, self.side = n, side
        self.memo: Dict[Word, Dict[Word, object]] = {(): {(): 1}}

    def __call__(self, word: Word) -> Dict[Word, object]:
        hit = self.memo.get(word)
        if hit is not None:
            return hit
        if self.side == "left":
            base = self(word[:-1])
            terms = [(c, w + word[-1:]) for w, c in base.items()]
            out = rewrite(terms, self.n, rightmost=False)
        else:
            base = self(word[1:])
            terms = [(c, word[:1] + w) for w, c in base.items()]
            out = rewrite(terms, self.n, rightmost=True)
        self.memo[word] = out
        return out


def letters_of(n: int) -> List[Letter]:
    return [(DOT, i) for i in range(1, n + 1)] + [(WHITE, i) for i in range(1, n + 1)] + \
           [(CROSS, i) for i in range(1, n)]


def check_confluence(n: int, max_len: int) -> Tuple[bool, Optional[Word], int]:
    """Compare the two strategies on every word of length <= max_len."""
    L, R = Normalizer(n, "left"), Normalizer(n, "right")
    count = 0
    for length in range(max_len + 1):
        for word in product(letters_of(n), repeat=length):
            count += 1
            if L(word) != R(word):
                return False, word, count
    return True, None, count


# --------------------------------------------------------------------------
# elements and multiplication


@dataclass
class DiagramElement:
    n: int
    m: int
    terms: Dict[Word, object]

    @staticmethod
    def of(wd: DiagramWord) -> "DiagramElement":
        return DiagramElement(wd.n, wd.m, rewrite([(1, wd.letters)], wd.n))

    def normal_terms(self) -> List[NormalTerm]:
        return _terms_from(self.terms, self.n)

    def __str__(self):
        return format_terms(self.normal_terms())


def _as_element(x, m: Optional[int] = None) -> DiagramElement:
    if isinstance(x, DiagramElement):
        return x
    if isinstance(x, DiagramWord):
        return DiagramElement.of(x)
    raise TypeError(f"cannot multiply {type(x).__name__}")


def multiply(a, b, m: Optional[int] = None, m2: Optional[int] = None) -> DiagramElement:
    """Product a*b; zero unless both live over the same region label."""
    A, B = _as_element(a), _as_element(b)
    if A.n != B.n:
        raise ValueError(f"strand counts differ: {A.n} vs {B.n}")
    ma = A.m if m is None else m
    mb = B.m if m2 is None else m2
    if ma != mb:
        return DiagramElement(A.n, ma, {})
    terms = [(c1 * c2, w1 + w2) for w1, c1 in A.terms.items() for w2, c2 in B.terms.items()]
    return DiagramElement(A.n, ma, rewrite(terms, A.n))


# --------------------------------------------------------------------------
# polynomial representation


@lru_cache(maxsize=None)
def poly_ring(n: int, m: int = 0) -> Ring:
    gens = [GenSpec(f"x{i}", 2, 0, 0) for i in range(1, n + 1)] + \
           [GenSpec(f"w{i}", -2 * (m + i), 2, 1) for i in range(1, n + 1)]
    return Ring(gens, f"P_{n}({m})")


@lru_cache(maxsize=None)
def s_action(n: int, m: int, i: int) -> RingHom:
    """s_i: swap x_i, x_{i+1}; w_i -> w_i + (x_i - x_{i+1}) w_{i+1}; other w_j fixed."""
    R = poly_ring(n, m)
    im = {g.name: R.gen(g.name) for g in R.gens}
    im[f"x{i}"], im[f"x{i + 1}"] = R.gen(f"x{i + 1}"), R.gen(f"x{i}")
    im[f"w{i}"] = R.gen(f"w{i}") + (R.gen(f"x{i}") - R.gen(f"x{i + 1}")) * R.gen(f"w{i + 1}")
    return RingHom(R, R, im)


class _Demazure:
    """d_i on P_n by the twisted Leibniz rule d(fg) = d(f) g + s_i(f) d(g)."""

    def __init__(self, n: int, m: int, i: int):
        self.R = poly_ring(n, m)
        self.n, self.i = n, i
        self.s = s_action(n, m, i)
        self.cache: Dict[tuple, SuperPoly] = {}
        R = self.R
        self.on_gen = {f"x{i}": R.one(), f"x{i + 1}": -R.one(), f"w{i}": -R.gen(f"w{i + 1}")}

    def gen_image(self, name):
        return self.on_gen.get(name, self.R.zero())

    def monomial(self, key) -> SuperPoly:
        hit = self.cache.get(key)
        if hit is not None:
            return hit
        exps, mask = key
        R = self.R
        # peel off the first generator in the stored order
        first = None
        for p, e in enumerate(exps):
            if e:
                first = (R.even[p], (exps[:p] + (e - 1,) + exps[p + 1:], mask))
                break
        if first is None:
            for b in range(R.nodd):
                if mask >> b & 1:
                    first = (R.odd[b], (exps, mask & ~(1 << b)))
                    break
        if first is None:
            return R.zero()
        gi, rest_key = first
        g = R.gen(R.gens[gi].name)
        rest = SuperPoly(R, {rest_key: 1})
        # the monomial equals g * rest up to the sign of reordering
        sign = (g * rest).coefficient(key)
        out = (self.gen_image(R.gens[gi].name) * rest + self.s(g) * self.monomial(rest_key)).scale(sign)
        self.cache[key] = out
        return out

    def __call__(self, p: SuperPoly) -> SuperPoly:
        out = self.R.zero()
        for key, c in p.terms.items():
            out = out + self.monomial(key).scale(c)
        return out


@lru_cache(maxsize=None)
def demazure(n: int, m: int, i: int) -> _Demazure:
    return _Demazure(n, m, i)


def act_letter(letter: Letter, p: SuperPoly, n: int, m: int) -> SuperPoly:
    kind, i = letter
    R = poly_ring(n, m)
    if kind == DOT:
        return R.gen(f"x{i}") * p
    if kind == WHITE:
        return R.gen(f"w{i}") * p
    return demazure(n, m, i)(p)


def act_poly(w, p: SuperPoly, m: Optional[int] = None) -> SuperPoly:
    """Action of a word, element or normal term on P_n; the rightmost letter acts first."""
    if isinstance(w, DiagramWord):
        out = p
        for let in reversed(w.letters):
            out = act_letter(let, out, w.n, w.m)
        return out
    if isinstance(w, DiagramElement):
        R = poly_ring(w.n, w.m)
        tot = R.zero()
        for word, c in w.terms.items():
            tot = tot + act_poly(DiagramWord(w.n, w.m, word), p).scale(c)
        return tot
    raise TypeError("act_poly expects a DiagramWord or DiagramElement")


def divided_difference_holds(n: int, m: int, i: int, p: SuperPoly) -> bool:
    """(x_i - x_{i+1}) d_i(p) == p - s_i(p)."""
    R = poly_ring(n, m)
    lhs = (R.gen(f"x{i}") - R.gen(f"x{i + 1}")) * demazure(n, m, i)(p)
    return lhs == p - s_action(n, m, i)(p)


# --------------------------------------------------------------------------
# basis and faithfulness


def _x_monomials(n: int, total: int) -> List[Tuple[int, ...]]:
    if n == 0:
        return [()] if total == 0 else []
    out = []
    for first in range(total + 1):
        for rest in _x_monomials(n - 1, total - first):
            out.append((first,) + rest)
    return out


def basis_terms(n: int, m: int, q: int, l: int) -> List[NormalTerm]:
    """Normal basis elements x^a w^delta d_w of bidegree (q, l)."""
    if l % 2 or l < 0:
        return []
    r = l // 2
    out = []
    perms = all_perms(n) if n else [()]
    for S in combinations(range(1, n + 1), r):
        wq = sum(-2 * (m + i) for i in S)
        delta = tuple(1 if i in S else 0 for i in range(1, n + 1))
        for w in perms:
            rest = q - wq + 2 * perm_length(w)
            if rest < 0 or rest % 2:
                continue
            rw = reduced_word(tuple(w)) if n else ()
            for a in _x_monomials(n, rest // 2):
                out.append(NormalTerm(1, a, delta, rw))
    return out


def _bideg_args(bidegree):
    q, l = bidegree[0], bidegree[1]
    if len(bidegree) > 2 and bidegree[2] != (l // 2) % 2:
        return None
    return q, l


def basis_dim(n: int, m: int, bidegree) -> int:
    args = _bideg_args(bidegree)
    if args is None:
        return 0
    return len(basis_terms(n, m, *args))


def staircase_inputs(n: int, m: int) -> List[SuperPoly]:
    """x^b with b_i <= n-i: a basis of P over symmetric polynomials, enough to separate operators."""
    R = poly_ring(n, m)
    out = []
    for b in product(*[range(n - i + 1) for i in range(1, n + 1)]):
        out.append(SuperPoly(R, {(tuple(b), 0): 1}) if n else R.one())
    return out


def rank_of_action(n: int, m: int, bidegree) -> int:
    """Rank of the basis elements of a bidegree viewed as operators on P_n."""
    args = _bideg_args(bidegree)
    if args is None:
        return 0
    terms = basis_terms(n, m, *args)
    inputs = staircase_inputs(n, m)
    rs = RowSpace()
    for t in terms:
        el = DiagramElement(n, m, {t.word(): 1})
        vec = {}
        for j, p in enumerate(inputs):
            for key, c in act_poly(el, p).terms.items():
                vec[(j, key)] = c
        rs.add(vec)
    return rs.rank


def defining_relations(n: int) -> List[Tuple[str, List[Tuple[object, Word]], List[Tuple[object, Word]]]]:
    """The nilHecke, braid and white-dot relations of A_n as (name, lhs, rhs)."""
    X, W, D = Dot, WhiteDot, Cross
    rels = []
    for i in range(1, n):
        rels.append((f"d{i}^2", [(1, (D(i), D(i)))], []))
        rels.append((f"x{i} d{i} - d{i} x{i + 1}", [(1, (X(i), D(i))), (-1, (D(i), X(i + 1)))], [(1, ())]))
        rels.append((f"d{i} x{i} - x{i + 1} d{i}", [(1, (D(i), X(i))), (-1, (X(i + 1), D(i)))], [(1, ())]))
        rels.append((f"d{i} w{i}", [(1, (D(i), W(i)))],
                     [(1, (W(i), D(i))), (1, (X(i), W(i + 1), D(i))), (-1, (X(i + 1), W(i + 1), D(i))),
                      (-1, (W(i + 1),))]))
        rels.append((f"d{i} w{i + 1}", [(1, (D(i), W(i + 1)))], [(1, (W(i + 1), D(i)))]))
        for j in range(1, n + 1):
            if j not in (i, i + 1):
                rels.append((f"d{i} x{j}", [(1, (D(i), X(j)))], [(1, (X(j), D(i)))]))
                rels.append((f"d{i} w{j}", [(1, (D(i), W(j)))], [(1, (W(j), D(i)))]))
        for j in range(i + 2, n):
            rels.append((f"d{i} d{j}", [(1, (D(i), D(j)))], [(1, (D(j), D(i)))]))
        if i + 1 < n:
            rels.append((f"braid {i}", [(1, (D(i), D(i + 1), D(i)))], [(1, (D(i + 1), D(i), D(i + 1)))]))
    for i in range(1, n + 1):
        rels.append((f"w{i}^2", [(1, (W(i), W(i)))], []))
        for j in range(1, n + 1):
            if i < j:
                rels.append((f"x{i} x{j}", [(1, (X(i), X(j)))], [(1, (X(j), X(i)))]))
                rels.append((f"w{i} w{j}", [(1, (W(i), W(j)))], [(-1, (W(j), W(i)))]))
            if i != j:
                rels.append((f"x{i} w{j}", [(1, (X(i), W(j)))], [(1, (W(j), X(i)))]))
        rels.append((f"x{i} w{i}", [(1, (X(i), W(i)))], [(1, (W(i), X(i)))]))
    return rels


def check_relations(n: int, m: int) -> Tuple[bool, Optional[str]]:
    """Every defining relation holds in the normal form and as operators on P_n."""
    R = poly_ring(n, m)
    inputs = list(staircase_inputs(n, m))
    for j in range(1, n + 1):
        inputs += [p * R.gen(f"w{j}") for p in staircase_inputs(n, m)]
    if n >= 2:
        inputs.append(R.gen("w1") * R.gen("w2"))
    for name, lhs, rhs in defining_relations(n):
        if rewrite(lhs, n) != rewrite(rhs, n):
            return False, f"normal form violates {name}"
        for p in inputs:
            a = R.zero()
            for c, w in lhs:
                a = a + act_poly(DiagramWord(n, m, w), p).scale(c)
            b = R.zero()
            for c, w in rhs:
                b = b + act_poly(DiagramWord(n, m, w), p).scale(c)
            if a != b:
                return False, f"operators violate {name} on {p}"
    return True, None


# --------------------------------------------------------------------------
# correspondence with the flag bimodules


def bridge_chain(n: int, m: int):
    from .bimod import Chain, up
    return Chain([up(m + i) for i in range(n)])


def act_on_chain(letter: Letter, t, n: int, m: int):
    """Dot on strand i: xi in factor i; white dot: s_{m+i} in factor i; crossing: X^- on factors i, i+1."""
    from .bimod import Chain, map_X, nil_chain
    ch = bridge_chain(n, m)
    kind, i = letter
    pures = t.pures()
    if kind in (DOT, WHITE):
        F = ch.factors[i - 1].ring
        g = F.gen("xi") if kind == DOT else F.gen(f"s{m + i}")
        out = []
        for s, fs in pures:
            sign = 1
            if kind == WHITE:
                par = sum(f.parity() for f in fs[:i - 1]) & 1
                sign = -1 if par else 1
            fs = list(fs)
            fs[i - 1] = g * fs[i - 1]
            out.append((s * sign, tuple(fs)))
        return ch.reduce(out)
    pair = nil_chain(m + i - 1, "-")
    out = []
    for s, fs in pures:
        x = map_X("-", m + i - 1, pair.pure(fs[i - 1], fs[i]))
        for (a, b), c in x.coeffs.items():
            nf = list(fs)
            nf[i - 1] = pair.factors[0].element(a)
            nf[i] = pair.factors[1].element(b) * pair.factors[1].rhom(c)
            out.append((s, tuple(nf)))
    return ch.reduce(out)


def bridge_to_bimod(n: int, m: int, max_len: int = 3, inputs=None) -> Tuple[bool, Optional[str], int]:
    """Acting letter by letter agrees with acting by the normal form, on chain tensors."""
    ch = bridge_chain(n, m)
    if inputs is None:
        inputs = []
        for exps in product(range(2), repeat=n):
            fs = [M.ring.gen("xi") ** e for M, e in zip(ch.factors, exps)]
            inputs.append(ch.pure(*fs))
        F = ch.factors[-1].ring
        inputs.append(ch.pure(*([M.ring.one() for M in ch.factors[:-1]] + [F.gen(f"s{m + n}")])))
    norm = Normalizer(n, "left")
    count = 0
    for length in range(max_len + 1):
        for word in product(letters_of(n), repeat=length):
            nf = norm(word)
            for t in inputs:
                direct = t
                for let in reversed(word):
                    direct = act_on_chain(let, direct, n, m)
                via = ch.zero()
                for w2, c in nf.items():
                    r = t
                    for let in reversed(w2):
                        r = act_on_chain(let, r, n, m)
                    via = via + r.scale(c)
                count += 1
                if direct != via:
                    return False, f"{' '.join(_NAMES[k] + str(i) for k, i in word)} on {t}", count
    return True, None, count
