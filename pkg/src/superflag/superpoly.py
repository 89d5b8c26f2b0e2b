"""Free supercommutative polynomial algebra over the rationals.

Monomials are indexed by a MultiExponent: a {0,1}-vector I over the
anticommuting generators xi_1..xi_q together with a natural-number vector m
over the commuting generators x_1..x_n.  The canonical monomial form is the
descending product xi_q^{I_q} ... xi_1^{I_1} * x^m, and all products are
sign-normalized to that form, with signs governed by the inversion count
``koszul_count``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from typing import Iterable, Iterator, Mapping

from .linalg import Rat

__all__ = [
    "MultiExponent",
    "MonomialOrder",
    "SuperPolynomial",
    "koszul_sign",
    "koszul_count",
    "multiply",
    "compare",
    "enumerate_monomials",
]


@dataclass(frozen=True, order=False)
class MultiExponent:
    """Exponent pair (I, m): odd bits I in {0,1}^q, even exponents m in N^n."""

    odd: tuple[int, ...]
    even: tuple[int, ...]

    def __post_init__(self):
        if any(b not in (0, 1) for b in self.odd):
            raise ValueError(f"odd exponents must be 0 or 1: {self.odd}")
        if any(e < 0 for e in self.even):
            raise ValueError(f"even exponents must be >= 0: {self.even}")

    @classmethod
    def zero(cls, n: int, q: int) -> "MultiExponent":
        return cls((0,) * q, (0,) * n)

    @property
    def q(self) -> int:
        return len(self.odd)

    @property
    def n(self) -> int:
        return len(self.even)

    @property
    def degree(self) -> int:
        return sum(self.odd) + sum(self.even)

    @property
    def odd_degree(self) -> int:
        return sum(self.odd)

    @property
    def parity(self) -> int:
        return sum(self.odd) % 2

    def is_zero(self) -> bool:
        return not any(self.odd) and not any(self.even)

    def combine(self, other: "MultiExponent") -> "MultiExponent | None":
        """Componentwise sum, or None when an odd coordinate would exceed 1."""
        if self.q != other.q or self.n != other.n:
            raise ValueError("ambient mismatch")
        if any(a and b for a, b in zip(self.odd, other.odd)):
            return None
        return MultiExponent(
            tuple(a + b for a, b in zip(self.odd, other.odd)),
            tuple(a + b for a, b in zip(self.even, other.even)),
        )

    def splittings(self) -> Iterator[tuple["MultiExponent", "MultiExponent"]]:
        """All ordered pairs (a, b) with a.combine(b) == self."""
        odd_parts = itertools.product(*[range(b + 1) for b in self.odd])
        even_parts = itertools.product(*[range(e + 1) for e in self.even])
        even_list = list(even_parts)
        for op in odd_parts:
            oc = tuple(b - a for a, b in zip(op, self.odd))
            for ep in even_list:
                ec = tuple(e - a for a, e in zip(ep, self.even))
                yield (MultiExponent(op, ep), MultiExponent(oc, ec))

    def as_vector(self) -> tuple[int, ...]:
        """Flat exponent vector, even block first then odd block."""
        return self.even + self.odd

    def __str__(self) -> str:
        bits = "".join(str(b) for b in self.odd)
        return f"I={bits or '-'} m=({','.join(str(e) for e in self.even)})"


def koszul_count(first: Iterable[int], second: Iterable[int]) -> int:
    """Inversion count K between two odd bit-vectors of equal length.

    K = sum over index pairs j < i of first[j] * second[i]; (-1)^K is the
    sign produced when the product of the two canonical descending odd
    monomials is reordered into a single canonical descending monomial.
    """
    a, b = tuple(first), tuple(second)
    if len(a) != len(b):
        raise ValueError("bit-vectors must have equal length")
    count = 0
    running = 0
    # running = sum of a[j] for j < i
    for i in range(len(a)):
        if b[i]:
            count += running
        running += a[i]
    return count


def koszul_sign(first: Iterable[int], second: Iterable[int]) -> tuple[int, int]:
    """Return (K, K mod 2) for the inversion count of the two bit-vectors."""
    k = koszul_count(first, second)
    return k, k % 2


# ---------------------------------------------------------------------------
# Monomial orders
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MonomialOrder:
    """A monomial order on N^{n+q} restricted to {0,1}^q x N^n.

    kind: "graded-lex", "graded-revlex", or "weighted".  The flat variable
    vector is (even block, then odd block); ``priority`` permutes it before
    the lex/revlex tie-break (priority[0] is the most significant variable).
    Weighted orders compare the weight functional first and break ties with
    graded-lex; essential-monomial scans additionally require all weights
    strictly positive so that degree truncation is sound.
    """

    kind: str = "graded-lex"
    weights: tuple[int, ...] | None = None
    priority: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.kind not in ("graded-lex", "graded-revlex", "weighted"):
            raise ValueError(f"unknown order kind: {self.kind}")
        if self.kind == "weighted" and self.weights is None:
            raise ValueError("weighted order needs a weight vector")

    def _vec(self, e: MultiExponent) -> tuple[int, ...]:
        v = e.as_vector()
        if self.priority is not None:
            if len(self.priority) != len(v):
                raise ValueError("priority permutation has wrong length")
            v = tuple(v[i] for i in self.priority)
        return v

    def describe(self) -> str:
        parts = [self.kind]
        if self.weights is not None:
            parts.append("w=" + ",".join(str(w) for w in self.weights))
        if self.priority is not None:
            parts.append("perm=" + ",".join(str(p) for p in self.priority))
        return " ".join(parts)


def compare(order: MonomialOrder, a: MultiExponent, b: MultiExponent) -> int:
    """Total order comparison: -1 if a < b, 0 if equal, +1 if a > b."""
    if a.q != b.q or a.n != b.n:
        raise ValueError("ambient mismatch")
    if a == b:
        return 0
    va, vb = order._vec(a), order._vec(b)
    if order.kind == "weighted":
        wa = sum(w * x for w, x in zip(order.weights, a.as_vector()))
        wb = sum(w * x for w, x in zip(order.weights, b.as_vector()))
        if wa != wb:
            return -1 if wa < wb else 1
        # fall through to graded-lex tie-break
    da, db = sum(va), sum(vb)
    if da != db:
        return -1 if da < db else 1
    if order.kind == "graded-revlex":
        for x, y in zip(reversed(va), reversed(vb)):
            if x != y:
                return 1 if x < y else -1
        return 0
    for x, y in zip(va, vb):
        if x != y:
            return -1 if x < y else 1
    return 0


def sort_key(order: MonomialOrder):
    """Key function sorting MultiExponents ascending in the given order."""
    return cmp_to_key(lambda a, b: compare(order, a, b))


def enumerate_monomials(
    order: MonomialOrder, degree_bound: int, n: int, q: int
) -> list[MultiExponent]:
    """All exponents with total degree <= degree_bound, ascending in order."""
    if degree_bound < 0:
        raise ValueError("degree bound must be >= 0")
    out: list[MultiExponent] = []
    for bits in itertools.product((0, 1), repeat=q):
        rem = degree_bound - sum(bits)
        if rem < 0:
            continue
        for m in _compositions_upto(n, rem):
            out.append(MultiExponent(bits, m))
    out.sort(key=sort_key(order))
    return out


def _compositions_upto(n: int, bound: int) -> Iterator[tuple[int, ...]]:
    """All vectors in N^n with coordinate sum <= bound."""
    if n == 0:
        yield ()
        return
    for first in range(bound + 1):
        for rest in _compositions_upto(n - 1, bound - first):
            yield (first,) + rest


# ---------------------------------------------------------------------------
# Polynomials
# ---------------------------------------------------------------------------


class SuperPolynomial:
    """Sparse rational polynomial in n commuting and q anticommuting variables.

    Terms map MultiExponent -> nonzero Fraction; monomials are stored in the
    canonical descending-odd form, so the term map determines the element.
    Instances are treated as immutable.
    """

    __slots__ = ("n", "q", "terms")

    def __init__(
        self,
        n: int,
        q: int,
        terms: Mapping[MultiExponent, Rat] | Iterable[tuple[MultiExponent, Rat]] = (),
    ):
        self.n = n
        self.q = q
        data = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[MultiExponent, Rat] = {}
        for e, c in data:
            if e.n != n or e.q != q:
                raise ValueError("exponent has wrong ambient dimensions")
            c = Rat(c)
            if c == 0:
                continue
            val = acc.get(e, Rat(0)) + c
            if val == 0:
                acc.pop(e, None)
            else:
                acc[e] = val
        self.terms: dict[MultiExponent, Rat] = acc

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, n: int, q: int) -> "SuperPolynomial":
        return cls(n, q)

    @classmethod
    def one(cls, n: int, q: int) -> "SuperPolynomial":
        return cls(n, q, {MultiExponent.zero(n, q): Rat(1)})

    @classmethod
    def monomial(
        cls, n: int, q: int, exp: MultiExponent, coeff: Rat | int = 1
    ) -> "SuperPolynomial":
        return cls(n, q, {exp: Rat(coeff)})

    @classmethod
    def variable(cls, n: int, q: int, index: int, odd: bool) -> "SuperPolynomial":
        """The generator x_{index+1} (odd=False) or xi_{index+1} (odd=True)."""
        if odd:
            bits = tuple(1 if i == index else 0 for i in range(q))
            return cls.monomial(n, q, MultiExponent(bits, (0,) * n))
        ev = tuple(1 if i == index else 0 for i in range(n))
        return cls.monomial(n, q, MultiExponent((0,) * q, ev))

    # -- ring operations ----------------------------------------------------

    def _check(self, other: "SuperPolynomial") -> None:
        if self.n != other.n or self.q != other.q:
            raise ValueError("mismatched ambient dimensions")

    def __add__(self, other: "SuperPolynomial") -> "SuperPolynomial":
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            val = out.get(e, Rat(0)) + c
            if val == 0:
                out.pop(e, None)
            else:
                out[e] = val
        return SuperPolynomial(self.n, self.q, out)

    def __neg__(self) -> "SuperPolynomial":
        return SuperPolynomial(
            self.n, self.q, {e: -c for e, c in self.terms.items()}
        )

    def __sub__(self, other: "SuperPolynomial") -> "SuperPolynomial":
        return self + (-other)

    def scaled(self, c: Rat | int) -> "SuperPolynomial":
        c = Rat(c)
        return SuperPolynomial(
            self.n, self.q, {e: c * x for e, x in self.terms.items()}
        )

    def __mul__(self, other: "SuperPolynomial") -> "SuperPolynomial":
        return multiply(self, other)

    def is_zero(self) -> bool:
        return not self.terms

    def degree_part(self, d: int) -> "SuperPolynomial":
        return SuperPolynomial(
            self.n, self.q,
            {e: c for e, c in self.terms.items() if e.degree == d},
        )

    def max_degree(self) -> int:
        return max((e.degree for e in self.terms), default=0)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, SuperPolynomial)
            and self.n == other.n
            and self.q == other.q
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.n, self.q, frozenset(self.terms.items())))

    # -- serialization -------------------------------------------------------

    def to_text(self, even_prefix: str = "x", odd_prefix: str = "xi") -> str:
        """Render terms joined by ' + '/' - ', e.g. ``3/2*x1^2*xi2*xi1``."""
        if not self.terms:
            return "0"
        order = MonomialOrder("graded-lex")
        exps = sorted(self.terms, key=sort_key(order), reverse=True)
        pieces: list[str] = []
        for idx, e in enumerate(exps):
            c = self.terms[e]
            sign = "-" if c < 0 else "+"
            mag = -c if c < 0 else c
            factors: list[str] = []
            if mag != 1 or (not any(e.odd) and not any(e.even)):
                factors.append(str(mag))
            for i in range(e.q - 1, -1, -1):  # canonical descending odd part
                if e.odd[i]:
                    factors.append(f"{odd_prefix}{i + 1}")
            for i, m in enumerate(e.even):
                if m == 1:
                    factors.append(f"{even_prefix}{i + 1}")
                elif m > 1:
                    factors.append(f"{even_prefix}{i + 1}^{m}")
            body = "*".join(factors)
            if idx == 0:
                pieces.append(body if sign == "+" else f"-{body}")
            else:
                pieces.append(f" {sign} {body}")
        return "".join(pieces)

    @classmethod
    def parse(
        cls, text: str, n: int, q: int,
        even_prefix: str = "x", odd_prefix: str = "xi",
    ) -> "SuperPolynomial":
        """Parse the to_text format; arbitrary odd-factor orders are accepted
        and normalized to the canonical form with the appropriate sign."""
        text = text.strip()
        if text in ("0", ""):
            return cls.zero(n, q)
        token = re.compile(r"([+-])|([^+\-\s]+)")
        result = cls.zero(n, q)
        sign = 1
        pending: str | None = None
        for m in token.finditer(text):
            if m.group(1):
                if pending is not None:
                    result = result + cls._parse_term(
                        pending, sign, n, q, even_prefix, odd_prefix
                    )
                    pending = None
                sign = 1 if m.group(1) == "+" else -1
            else:
                if pending is not None:
                    raise ValueError(f"malformed polynomial text: {text!r}")
                pending = m.group(2)
        if pending is not None:
            result = result + cls._parse_term(
                pending, sign, n, q, even_prefix, odd_prefix
            )
        return result

    @classmethod
    def _parse_term(
        cls, term: str, sign: int, n: int, q: int,
        even_prefix: str, odd_prefix: str,
    ) -> "SuperPolynomial":
        poly = cls.monomial(
            n, q, MultiExponent.zero(n, q), Rat(sign)
        )
        for factor in term.split("*"):
            factor = factor.strip()
            if not factor:
                continue
            if factor[0].isdigit():
                poly = poly.scaled(Rat(factor))
                continue
            name, _, power = factor.partition("^")
            exp = int(power) if power else 1
            if name.startswith(odd_prefix) and name[len(odd_prefix):].isdigit():
                i = int(name[len(odd_prefix):]) - 1
                if not 0 <= i < q:
                    raise ValueError(f"unknown odd variable {name!r}")
                gen = cls.variable(n, q, i, odd=True)
                for _ in range(exp):
                    poly = multiply(poly, gen)
            elif name.startswith(even_prefix) and name[len(even_prefix):].isdigit():
                i = int(name[len(even_prefix):]) - 1
                if not 0 <= i < n:
                    raise ValueError(f"unknown even variable {name!r}")
                gen = cls.variable(n, q, i, odd=False)
                for _ in range(exp):
                    poly = multiply(poly, gen)
            else:
                raise ValueError(f"unknown variable {name!r}")
        return poly

    def __repr__(self) -> str:
        return f"SuperPolynomial({self.to_text()})"


def multiply(p: SuperPolynomial, r: SuperPolynomial) -> SuperPolynomial:
    """Product with Koszul signs; odd squares vanish.

    For monomials with disjoint odd supports I and J, xi^I * xi^J equals
    (-1)^{koszul_count(I, J)} xi^{I+J} in canonical descending form.
    """
    p._check(r)
    out: dict[MultiExponent, Rat] = {}
    for e1, c1 in p.terms.items():
        for e2, c2 in r.terms.items():
            combined = e1.combine(e2)
            if combined is None:
                continue
            k = koszul_count(e1.odd, e2.odd)
            c = c1 * c2 if k % 2 == 0 else -c1 * c2
            val = out.get(combined, Rat(0)) + c
            if val == 0:
                out.pop(combined, None)
            else:
                out[combined] = val
    return SuperPolynomial(p.n, p.q, out)
