"""Scan-independent (essential) exponents, semigroup checks, favourability.

The essential exponents of a cyclic module, taken with respect to a monomial
order, are those whose images are independent from all strictly smaller
monomial images.  Across tensor levels they generate a semigroup with a
distinguished absorbing bottom element; favourability asks every higher-level
essential exponent to split off a level-one essential summand.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .linalg import Independent, Rat, SpanAccumulator
from .liesuper import AlgebraContext, NegativeBasis, negative_basis
from .modules import (
    CyclicModule,
    HighestWeightRealization,
    NotConvergedError,
    cyclic_span,
    exponent_weight,
    pbw_act,
)
from .superpoly import MonomialOrder, MultiExponent, sort_key

__all__ = [
    "EssentialSet",
    "BOTTOM",
    "essential_monomials",
    "semigroup_add",
    "SemigroupReport",
    "check_semigroup_property",
    "FavourabilityReport",
    "is_favourable",
    "decompose_to_chain",
    "CatalogMatch",
    "search_order_catalog",
    "serialize_essential_set",
    "parse_essential_set",
]


@dataclass
class EssentialSet:
    """Essential exponents of a level-``level`` cyclic module, scan order
    ascending, plus the monomial order and variable labels used."""

    level: int
    n: int
    q: int
    monomials: list[MultiExponent]
    order: MonomialOrder
    labels: dict[str, str] = field(default_factory=dict)

    @property
    def size(self) -> int:
        return len(self.monomials)

    def as_set(self) -> set[MultiExponent]:
        return set(self.monomials)

    def __contains__(self, exp: MultiExponent) -> bool:
        return exp in self.as_set()


class _Bottom:
    """Absorbing bottom element of the exponent semigroup."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "BOTTOM"


BOTTOM = _Bottom()

SemigroupElement = "tuple[MultiExponent, int] | _Bottom"


def essential_monomials(
    real: HighestWeightRealization,
    basis: NegativeBasis,
    order: MonomialOrder | None = None,
    degree_cap: int | None = None,
) -> tuple[EssentialSet, CyclicModule]:
    """Essential exponents of the cyclic module generated inside ``real``.

    For graded orders a single degree-by-degree scan is simultaneously
    ascending in the order, so the cyclic-span scan already yields the
    essential exponents.  For weighted orders (positive integer weights
    required) the module dimension is found by a graded pre-pass and the
    scan is redone along ascending weighted value.
    """
    if order is None:
        order = MonomialOrder("graded-lex")
    if order.kind in ("graded-lex", "graded-revlex"):
        module = cyclic_span(real, basis, order=order, degree_cap=degree_cap)
        es = EssentialSet(
            level=real.level,
            n=basis.n,
            q=basis.q,
            monomials=module.essential_exponents(),
            order=order,
            labels=basis.labels(),
        )
        return es, module
    if order.kind != "weighted":
        raise ValueError(f"unknown order kind {order.kind!r}")
    weights = order.weights
    if weights is None or len(weights) != basis.n + basis.q:
        raise ValueError("weighted order needs one weight per variable")
    if any((not isinstance(w, int)) or w < 1 for w in weights):
        raise ValueError(
            "weighted scans require positive integer weights; otherwise "
            "ascending-value truncation is unsound"
        )
    pre = cyclic_span(
        real, basis, order=MonomialOrder("graded-lex"), degree_cap=degree_cap
    )
    target_dim = pre.dimension
    vmax = pre.stabilization_degree * max(weights) + max(weights)

    module = _weighted_scan(real, basis, order, weights, target_dim, vmax)
    es = EssentialSet(
        level=real.level,
        n=basis.n,
        q=basis.q,
        monomials=module.essential_exponents(),
        order=order,
        labels=basis.labels(),
    )
    return es, module


def _weighted_value(exp: MultiExponent, weights: Sequence[int]) -> int:
    vec = exp.as_vector()
    return sum(w * m for w, m in zip(weights, vec))


def _exponents_of_value(
    n: int, q: int, weights: Sequence[int], value: int
) -> list[MultiExponent]:
    """All exponents with exact weighted value (even weights first)."""
    out: list[MultiExponent] = []
    we, wo = weights[:n], weights[n:]

    def rec_even(idx: int, rem: int, acc: list[int]):
        if idx == n:
            rec_odd(0, rem, acc, [])
            return
        top = rem // we[idx]
        for m in range(top + 1):
            rec_even(idx + 1, rem - m * we[idx], acc + [m])

    def rec_odd(idx: int, rem: int, evens: list[int], acc: list[int]):
        if idx == q:
            if rem == 0:
                out.append(MultiExponent(tuple(acc), tuple(evens)))
            return
        rec_odd(idx + 1, rem, evens, acc + [0])
        if wo[idx] <= rem:
            rec_odd(idx + 1, rem - wo[idx], evens, acc + [1])

    rec_even(0, value, [])
    return out


def _weighted_scan(real, basis, order, weights, target_dim, vmax) -> CyclicModule:
    n, q = basis.n, basis.q
    blocks: dict = {}
    essentials: list[tuple[MultiExponent, object]] = []
    key = sort_key(order)

    def insert(exp: MultiExponent, vec) -> bool:
        w = exponent_weight(basis, real.weight, exp)
        acc, idxs = blocks.setdefault(w, (SpanAccumulator(), []))
        if isinstance(acc.insert(vec), Independent):
            idxs.append(len(essentials))
            essentials.append((exp, vec))
            return True
        return False

    insert(MultiExponent.zero(n, q), real.hw_vector)
    stab = 0
    v = 0
    while len(essentials) < target_dim:
        v += 1
        if v > vmax:
            raise NotConvergedError(
                "weighted scan failed to reach the module dimension within "
                f"weighted value {vmax}"
            )
        for exp in sorted(_exponents_of_value(n, q, weights, v), key=key):
            vec = pbw_act(real, basis, exp, divided=True)
            if vec.is_zero():
                continue
            if insert(exp, vec):
                stab = max(stab, exp.degree)
    return CyclicModule(
        realization=real,
        basis=basis,
        order=order,
        essentials=essentials,
        dimension=len(essentials),
        stabilization_degree=stab,
        blocks=blocks,
        divided=True,
    )


# ---------------------------------------------------------------------------
# Semigroup structure
# ---------------------------------------------------------------------------


def semigroup_add(a, b):
    """Add two (exponent, level) pairs; odd collisions give BOTTOM."""
    if a is BOTTOM or b is BOTTOM:
        return BOTTOM
    (ea, ka), (eb, kb) = a, b
    combined = ea.combine(eb)
    if combined is None:
        return BOTTOM
    return (combined, ka + kb)


@dataclass
class SemigroupReport:
    checked: int
    violations: list[tuple[MultiExponent, MultiExponent]]

    @property
    def passed(self) -> bool:
        return not self.violations


def check_semigroup_property(
    es1: EssentialSet, es2: EssentialSet, es_sum: EssentialSet
) -> SemigroupReport:
    """Verify es(k1) + es(k2) lands inside es(k1+k2) (bottom absorbs)."""
    target = es_sum.as_set()
    violations = []
    checked = 0
    for a in es1.monomials:
        for b in es2.monomials:
            checked += 1
            s = semigroup_add((a, es1.level), (b, es2.level))
            if s is BOTTOM:
                continue
            exp, level = s
            if level != es_sum.level:
                raise ValueError("level bookkeeping mismatch in semigroup check")
            if exp not in target:
                violations.append((a, b))
    return SemigroupReport(checked=checked, violations=violations)


@dataclass
class FavourabilityReport:
    max_level: int
    failures: list[tuple[int, MultiExponent]]
    chains: dict[tuple[int, MultiExponent], list[MultiExponent]]

    @property
    def favourable(self) -> bool:
        return not self.failures


def decompose_to_chain(
    exp: MultiExponent,
    level: int,
    es_by_level: dict[int, EssentialSet],
    _memo: dict | None = None,
) -> list[MultiExponent] | None:
    """A list of level-1 essential summands of ``exp`` whose partial sums are
    essential at every level, or None when no such chain exists."""
    if _memo is None:
        _memo = {}
    key = (level, exp)
    if key in _memo:
        return _memo[key]
    if level == 1:
        result = [exp] if exp in es_by_level[1].as_set() else None
        _memo[key] = result
        return result
    result = None
    if exp in es_by_level[level].as_set():
        for a in es_by_level[1].monomials:
            rest_odd = tuple(x - y for x, y in zip(exp.odd, a.odd))
            rest_even = tuple(x - y for x, y in zip(exp.even, a.even))
            if any(v < 0 for v in rest_odd) or any(v < 0 for v in rest_even):
                continue
            rest = MultiExponent(rest_odd, rest_even)
            chain = decompose_to_chain(rest, level - 1, es_by_level, _memo)
            if chain is not None:
                result = chain + [a]
                break
    _memo[key] = result
    return result


def is_favourable(es_levels: Sequence[EssentialSet]) -> FavourabilityReport:
    """Check that every essential exponent at level k >= 2 splits as a
    level-(k-1) essential plus a level-1 essential (hence admits a full
    chain of essential partial sums)."""
    es_by_level = {es.level: es for es in es_levels}
    max_level = max(es_by_level)
    if set(es_by_level) != set(range(1, max_level + 1)):
        raise ValueError("need essential sets for every level 1..K")
    failures: list[tuple[int, MultiExponent]] = []
    chains: dict[tuple[int, MultiExponent], list[MultiExponent]] = {}
    memo: dict = {}
    for k in range(2, max_level + 1):
        for exp in es_by_level[k].monomials:
            chain = decompose_to_chain(exp, k, es_by_level, memo)
            if chain is None:
                failures.append((k, exp))
            else:
                chains[(k, exp)] = chain
    return FavourabilityReport(
        max_level=max_level, failures=failures, chains=chains
    )


# ---------------------------------------------------------------------------
# Order catalog search
# ---------------------------------------------------------------------------


@dataclass
class CatalogMatch:
    kind: str
    permutation: tuple[int, ...]
    essential: EssentialSet


def search_order_catalog(
    context: AlgebraContext,
    real: HighestWeightRealization,
    target_labeled: set[frozenset],
    kinds: Sequence[str] = ("graded-lex", "graded-revlex"),
    stop_at_first: bool = False,
) -> list[CatalogMatch]:
    """Scan all basis permutations x {graded-lex, graded-revlex} and return
    the combinations whose essential exponents match ``target_labeled``
    (as sets of label -> multiplicity dictionaries)."""
    size = len(context.basis.elements)
    matches: list[CatalogMatch] = []
    for perm in itertools.permutations(range(size)):
        basis_p = negative_basis(context.borel, perm)
        for kind in kinds:
            es, _ = essential_monomials(real, basis_p, MonomialOrder(kind))
            labeled = {basis_p.exponent_as_labeled(e) for e in es.monomials}
            if labeled == target_labeled:
                matches.append(
                    CatalogMatch(kind=kind, permutation=tuple(perm), essential=es)
                )
                if stop_at_first:
                    return matches
    return matches


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------


def serialize_essential_set(es: EssentialSet) -> str:
    lines = [f"# ambient n={es.n} q={es.q}"]
    if es.labels:
        pairs = " ".join(f"{k}={v}" for k, v in sorted(es.labels.items()))
        lines.append(f"# labels {pairs}")
    lines.append(f"# order {es.order.describe()}")
    for exp in es.monomials:
        lines.append(f"{exp} k={es.level}")
    return "\n".join(lines) + "\n"


def parse_essential_set(text: str) -> EssentialSet:
    n = q = None
    labels: dict[str, str] = {}
    order = MonomialOrder("graded-lex")
    monomials: list[MultiExponent] = []
    level = None
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if body.startswith("ambient"):
                parts = dict(p.split("=") for p in body.split()[1:])
                n, q = int(parts["n"]), int(parts["q"])
            elif body.startswith("labels"):
                labels = dict(p.split("=", 1) for p in body.split()[1:])
            continue
        fields = dict(p.split("=", 1) for p in line.split())
        bits = fields["I"]
        evens = fields["m"].strip("()")
        even = tuple(int(x) for x in evens.split(",")) if evens else ()
        odd = tuple(int(c) for c in bits) if bits != "-" else ()
        k = int(fields["k"])
        if level is None:
            level = k
        elif level != k:
            raise ValueError("mixed levels in essential-set file")
        monomials.append(MultiExponent(odd, even))
    if n is None or q is None:
        if not monomials:
            raise ValueError("empty essential-set file without ambient header")
        n, q = monomials[0].n, monomials[0].q
    return EssentialSet(
        level=level if level is not None else 1,
        n=n,
        q=q,
        monomials=monomials,
        order=order,
        labels=labels,
    )
