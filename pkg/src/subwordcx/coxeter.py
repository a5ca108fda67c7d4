"""Finite Coxeter systems with exact arithmetic on the root set.

A system is built from its Coxeter matrix by closing the simple roots under
the generator reflections.  Root coordinates live in Z[t]/(p(t)) where t is
2*cos(pi/m) for the largest bond label m of the diagram, so every computation
is exact; crystallographic types reduce to rational arithmetic.  Group
elements are stored as permutations of the (positive and negative) roots,
which makes products, lengths and equality cheap integer work.

Generators are 0-indexed internally; all I/O (words as JSON arrays, type
strings like ``A3`` or ``I2(7)``) is 1-indexed to match the usual conventions.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import InvalidType, InvalidWord

Word = tuple[int, ...]

_FAMILIES = ("A", "B", "D", "E6", "E7", "E8", "F4", "H3", "H4", "I2")

# ---------------------------------------------------------------------------
# Coxeter types


@dataclass(frozen=True)
class CoxeterType:
    """A finite Coxeter type such as A3, B4, H3 or I2(7)."""

    family: str
    rank: int
    m: int = 0  # bond label, only meaningful for I2

    def __post_init__(self) -> None:
        fam, rank = self.family, self.rank
        ok = (
            (fam == "A" and rank >= 1)
            or (fam == "B" and rank >= 2)
            or (fam == "D" and rank >= 4)
            or (fam == "E6" and rank == 6)
            or (fam == "E7" and rank == 7)
            or (fam == "E8" and rank == 8)
            or (fam == "F4" and rank == 4)
            or (fam == "H3" and rank == 3)
            or (fam == "H4" and rank == 4)
            or (fam == "I2" and rank == 2 and self.m >= 3)
        )
        if not ok:
            raise InvalidType(f"not a finite Coxeter type: {fam} rank={rank} m={self.m}")

    def __str__(self) -> str:
        if self.family == "I2":
            return f"I2({self.m})"
        if self.family in ("E6", "E7", "E8", "F4", "H3", "H4"):
            return self.family
        return f"{self.family}{self.rank}"

    @staticmethod
    def parse(text: str) -> "CoxeterType":
        """Parse a type string such as ``A3``, ``F4`` or ``I2(7)``.

        >>> str(CoxeterType.parse("I2(5)"))
        'I2(5)'
        """
        text = text.strip()
        m = re.fullmatch(r"I2\((\d+)\)", text)
        if m:
            return CoxeterType("I2", 2, int(m.group(1)))
        m = re.fullmatch(r"([ABD])(\d+)", text)
        if m:
            return CoxeterType(m.group(1), int(m.group(2)))
        if text in ("E6", "E7", "E8"):
            return CoxeterType(text, int(text[1]))
        if text == "F4":
            return CoxeterType("F4", 4)
        if text in ("H3", "H4"):
            return CoxeterType(text, int(text[1]))
        raise InvalidType(f"cannot parse Coxeter type {text!r}")


def coxeter_matrix(ctype: CoxeterType) -> tuple[tuple[int, ...], ...]:
    """Coxeter matrix (m_ij) of the given finite type, 0-indexed."""
    n = ctype.rank
    m = [[2] * n for _ in range(n)]
    for i in range(n):
        m[i][i] = 1

    def bond(i: int, j: int, label: int) -> None:
        m[i][j] = m[j][i] = label

    fam = ctype.family
    if fam in ("A", "H3", "H4", "B", "F4"):
        for i in range(n - 1):
            bond(i, i + 1, 3)
        if fam == "B":
            bond(n - 2, n - 1, 4)
        elif fam == "F4":
            bond(1, 2, 4)
        elif fam in ("H3", "H4"):
            bond(0, 1, 5)
    elif fam == "D":
        for i in range(n - 2):
            bond(i, i + 1, 3)
        bond(n - 3, n - 1, 3)
    elif fam in ("E6", "E7", "E8"):
        # Bourbaki numbering: chain 1-3-4-5-..., extra node 2 attached to 4.
        chain = [0, 2, 3, 4, 5, 6, 7][: n - 1]
        for a, b in zip(chain, chain[1:]):
            bond(a, b, 3)
        bond(1, 3, 3)
    elif fam == "I2":
        bond(0, 1, ctype.m)
    return tuple(tuple(row) for row in m)


# ---------------------------------------------------------------------------
# Exact coefficient ring Z[t]/(minimal polynomial of 2cos(pi/m))


def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _poly_divexact(a: list[int], b: list[int]) -> list[int]:
    # exact division of integer polynomials, used for cyclotomic recursion
    a = a[:]
    out = [0] * (len(a) - len(b) + 1)
    for k in range(len(out) - 1, -1, -1):
        c = a[k + len(b) - 1] // b[-1]
        out[k] = c
        for j, y in enumerate(b):
            a[k + j] -= c * y
    assert all(x == 0 for x in a), "non-exact polynomial division"
    return out


@lru_cache(maxsize=None)
def _cyclotomic(n: int) -> tuple[int, ...]:
    poly = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divexact(poly, list(_cyclotomic(d)))
    return tuple(poly)


@lru_cache(maxsize=None)
def minpoly_two_cos_pi_over(m: int) -> tuple[int, ...]:
    """Minimal polynomial of 2*cos(pi/m) over Q, as integer coefficients.

    Obtained from the cyclotomic polynomial of order 2m: for n >= 3 the
    polynomial Phi_n is palindromic of even degree d and factors through the
    substitution y = x + 1/x, whose inverse expansion uses the Chebyshev-like
    basis V_k with V_k(2cos u) = 2cos(ku).

    >>> minpoly_two_cos_pi_over(5)
    (-1, -1, 1)
    """
    phi = list(_cyclotomic(2 * m))
    d = len(phi) - 1
    half = d // 2
    # V_0 = 2, V_1 = y, V_{k+1} = y*V_k - V_{k-1}
    v: list[list[int]] = [[2], [0, 1]]
    for _ in range(2, half + 1):
        v.append([0] + v[-1])
        for i, c in enumerate(v[-3]):
            v[-1][i] -= c
    out = [0] * (half + 1)
    out[0] = phi[half]
    for k in range(1, half + 1):
        for i, c in enumerate(v[k]):
            out[i] += phi[half + k] * c
    assert out[-1] == 1, "expected a monic minimal polynomial"
    return tuple(out)


class _Ring:
    """Arithmetic in Q[t]/(p(t)), elements stored as coefficient tuples."""

    def __init__(self, modulus: Sequence[int]):
        self.degree = len(modulus) - 1
        self.zero = (Fraction(0),) * self.degree
        self.one = (Fraction(1),) + (Fraction(0),) * (self.degree - 1)
        if self.degree == 1:
            # t is rational, equal to the root of the linear modulus
            self.t = (Fraction(-modulus[0], modulus[1]),)
        else:
            self.t = tuple(
                Fraction(1) if i == 1 else Fraction(0) for i in range(self.degree)
            )
        # reduction table: t^k for k in [degree, 2*degree-2]
        self._red: list[tuple[Fraction, ...]] = []
        prev = tuple(Fraction(-c, modulus[-1]) for c in modulus[:-1])
        self._red.append(prev)
        for _ in range(self.degree - 2):
            shifted = [Fraction(0)] + list(prev[:-1])
            top = prev[-1]
            nxt = [shifted[i] + top * self._red[0][i] for i in range(self.degree)]
            prev = tuple(nxt)
            self._red.append(prev)

    def add(self, a: tuple, b: tuple) -> tuple:
        return tuple(x + y for x, y in zip(a, b))

    def neg(self, a: tuple) -> tuple:
        return tuple(-x for x in a)

    def mul(self, a: tuple, b: tuple) -> tuple:
        d = self.degree
        if d == 1:
            return (a[0] * b[0],)
        conv = [Fraction(0)] * (2 * d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        conv[i + j] += x * y
        out = conv[:d]
        for k in range(d, 2 * d - 1):
            c = conv[k]
            if c:
                row = self._red[k - d]
                for i in range(d):
                    out[i] += c * row[i]
        return tuple(out)

    def scale(self, a: tuple, c: Fraction) -> tuple:
        return tuple(c * x for x in a)


# ---------------------------------------------------------------------------
# Systems and group elements


class CoxeterSystem:
    """A finite Coxeter system acting faithfully on its root set.

    Roots are indexed 0..2N-1 with the N positive roots first; the negative
    of root i is i+N mod 2N, and the simple root of generator i has index i.
    """

    def __init__(self, ctype: CoxeterType):
        self.ctype = ctype
        self.n_generators = ctype.rank
        self.coxeter_matrix = coxeter_matrix(ctype)
        self._build_roots()
        self._identity = GroupElement(self, tuple(range(2 * self.n_positive_roots)))

    def _build_roots(self) -> None:
        n = self.n_generators
        mmax = max((self.coxeter_matrix[i][j] for i in range(n) for j in range(i + 1, n)), default=3)
        ring = _Ring(minpoly_two_cos_pi_over(max(mmax, 3)))
        # bond constants 2cos(pi/m_ij): 0 for m=2, 1 for m=3, t for the top bond
        const = {2: ring.zero, 3: ring.one, max(mmax, 3): ring.t}
        neighbors = [
            [(j, const[self.coxeter_matrix[i][j]]) for j in range(n) if j != i and self.coxeter_matrix[i][j] >= 3]
            for i in range(n)
        ]

        def reflect(i: int, vec: tuple) -> tuple:
            acc = ring.neg(vec[i])
            for j, c in neighbors[i]:
                acc = ring.add(acc, ring.mul(c, vec[j]))
            return vec[:i] + (acc,) + vec[i + 1 :]

        simple = [
            tuple(ring.one if k == i else ring.zero for k in range(n)) for i in range(n)
        ]
        index: dict[tuple, int] = {v: i for i, v in enumerate(simple)}
        roots = list(simple)
        head = 0
        while head < len(roots):
            vec = roots[head]
            for i in range(n):
                if vec == simple[i]:
                    continue  # s_i negates its own simple root
                img = reflect(i, vec)
                if img not in index:
                    index[img] = len(roots)
                    roots.append(img)
            head += 1
            if len(roots) > 20000:
                raise InvalidType(f"root system of {self.ctype} did not close")

        npos = len(roots)
        self.n_positive_roots = npos
        self.positive_roots = tuple(roots)

        def root_index(vec: tuple) -> int:
            j = index.get(vec)
            if j is not None:
                return j
            return npos + index[tuple(ring.neg(c) for c in vec)]

        perms = []
        for i in range(n):
            perm = [0] * (2 * npos)
            for j, vec in enumerate(roots):
                k = npos + i if vec == simple[i] else root_index(reflect(i, vec))
                perm[j] = k
                perm[npos + j] = (k + npos) % (2 * npos)
            perms.append(tuple(perm))
        self.generator_perms = tuple(perms)

    @property
    def identity(self) -> "GroupElement":
        return self._identity

    def generator(self, i: int) -> "GroupElement":
        return GroupElement(self, self.generator_perms[i])

    def __repr__(self) -> str:
        return f"CoxeterSystem({self.ctype})"


class GroupElement:
    """Group element represented by its permutation of the root indices."""

    __slots__ = ("system", "perm", "_hash")

    def __init__(self, system: CoxeterSystem, perm: tuple[int, ...]):
        self.system = system
        self.perm = perm
        self._hash = hash(perm)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, GroupElement)
            and self.system is other.system
            and self.perm == other.perm
        )

    def __hash__(self) -> int:
        return self._hash

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        # (uv)(root) = u(v(root))
        p, q = self.perm, other.perm
        return GroupElement(self.system, tuple(p[q[x]] for x in range(len(p))))

    def inverse(self) -> "GroupElement":
        inv = [0] * len(self.perm)
        for x, y in enumerate(self.perm):
            inv[y] = x
        return GroupElement(self.system, tuple(inv))

    def __repr__(self) -> str:
        word = lex_min_reduced_word(self.system, self)
        letters = "*".join(f"s{i + 1}" for i in word) or "e"
        return f"<{letters} in {self.system.ctype}>"


@lru_cache(maxsize=None)
def build_system(ctype: CoxeterType) -> CoxeterSystem:
    """Build (and cache) the Coxeter system of a finite type."""
    return CoxeterSystem(ctype)


def check_word(sys: CoxeterSystem, word: Iterable[int]) -> Word:
    """Validate letters and return the word as a tuple of 0-indexed generators."""
    w = tuple(word)
    for q in w:
        if not (0 <= q < sys.n_generators):
            raise InvalidWord(f"letter {q} outside [0, {sys.n_generators})")
    return w


def evaluate(sys: CoxeterSystem, word: Iterable[int]) -> GroupElement:
    """Left-to-right product of the generators named by the word."""
    acc = sys.identity
    for q in check_word(sys, word):
        acc = acc * sys.generator(q)
    return acc


def length(sys: CoxeterSystem, g: GroupElement) -> int:
    """Coxeter length: the number of positive roots sent to negative roots."""
    npos = sys.n_positive_roots
    return sum(1 for i in range(npos) if g.perm[i] >= npos)


def is_reduced(sys: CoxeterSystem, word: Iterable[int]) -> bool:
    """True iff the word is a reduced expression of its own product."""
    w = check_word(sys, word)
    return length(sys, evaluate(sys, w)) == len(w)


def has_right_ascent(sys: CoxeterSystem, g: GroupElement, s: int) -> bool:
    """True iff l(g s) > l(g), i.e. g maps the simple root of s to a positive root."""
    return g.perm[s] < sys.n_positive_roots


def right_descents(sys: CoxeterSystem, g: GroupElement) -> list[int]:
    return [s for s in range(sys.n_generators) if not has_right_ascent(sys, g, s)]


def left_descents(sys: CoxeterSystem, g: GroupElement) -> list[int]:
    return right_descents(sys, g.inverse())


def longest_element(sys: CoxeterSystem) -> GroupElement:
    """The unique element of maximal length, found by greedy ascent."""
    cached = getattr(sys, "_w0", None)
    if cached is not None:
        return cached
    w = sys.identity
    while True:
        for s in range(sys.n_generators):
            if has_right_ascent(sys, w, s):
                w = w * sys.generator(s)
                break
        else:
            sys._w0 = w
            return w


def psi(sys: CoxeterSystem, s: int) -> int:
    """The diagram involution t with w0^-1 s w0 = t, where w0 is the longest element."""
    w0 = longest_element(sys)
    conj = w0.inverse() * sys.generator(s) * w0
    for t in range(sys.n_generators):
        if conj.perm == sys.generator_perms[t]:
            return t
    raise AssertionError("conjugation by the longest element must permute the generators")


def bruhat_leq(sys: CoxeterSystem, u: GroupElement, v: GroupElement) -> bool:
    """Bruhat order test via the subword property, peeling right descents of v."""
    e = sys.identity
    while v != e:
        s = right_descents(sys, v)[0]
        gen = sys.generator(s)
        v = v * gen
        if not has_right_ascent(sys, u, s):
            u = u * gen
    return u == e


def demazure_product(sys: CoxeterSystem, word: Iterable[int]) -> GroupElement:
    """Length-monotone fold: extend by each letter only when the length grows."""
    acc = sys.identity
    for q in check_word(sys, word):
        if has_right_ascent(sys, acc, q):
            acc = acc * sys.generator(q)
    return acc


def demazure_extend(sys: CoxeterSystem, start: GroupElement, word: Iterable[int]) -> GroupElement:
    """Demazure fold seeded at an arbitrary element instead of the identity."""
    acc = start
    for q in check_word(sys, word):
        if has_right_ascent(sys, acc, q):
            acc = acc * sys.generator(q)
    return acc


def lex_min_reduced_word(sys: CoxeterSystem, g: GroupElement) -> Word:
    """The lexicographically smallest reduced word of g (by generator index)."""
    letters: list[int] = []
    x = g
    while x != sys.identity:
        s = left_descents(sys, x)[0]
        letters.append(s)
        x = sys.generator(s) * x
    return tuple(letters)


def all_elements(sys: CoxeterSystem) -> list[GroupElement]:
    """Every group element, by breadth-first closure from the identity."""
    seen = {sys.identity}
    frontier = [sys.identity]
    order = [sys.identity]
    while frontier:
        nxt = []
        for g in frontier:
            for s in range(sys.n_generators):
                h = g * sys.generator(s)
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
                    order.append(h)
        frontier = nxt
    return order


# 1-indexed word helpers for the JSON/CLI surfaces


def word_from_one_indexed(sys: CoxeterSystem, letters: Iterable[int]) -> Word:
    return check_word(sys, (q - 1 for q in letters))


def word_to_one_indexed(word: Word) -> list[int]:
    return [q + 1 for q in word]
