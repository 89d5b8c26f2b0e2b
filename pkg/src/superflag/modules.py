"""Finite-dimensional weight representations and cyclic highest-weight data.

Representations act on graded coordinate spaces with a diagonal Cartan
action.  Cyclic modules are generated from an even highest-weight vector by
ordered products of negative-root generators; the scan simultaneously
produces the module dimension, the stabilization degree, and the set of
leading (scan-independent) exponents together with per-weight-block span
accumulators reused by the expansion machinery downstream.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .linalg import Independent, Rat, SparseVector, SpanAccumulator
from .liesuper import AlgebraContext, LieSuperalgebra, NegativeBasis
from .superpoly import MonomialOrder, MultiExponent, koszul_count

__all__ = [
    "Representation",
    "HighestWeightRealization",
    "CyclicModule",
    "NotConvergedError",
    "natural",
    "dual_natural",
    "flip_parities",
    "tensor_representations",
    "BLOCK_BUILDERS",
    "single_block_realization",
    "tensor",
    "tensor_power",
    "build_realization",
    "pbw_act",
    "exponent_weight",
    "cyclic_span",
    "cartan_expand",
    "act_via_expansion",
]

Weight = tuple[Rat, ...]


class NotConvergedError(RuntimeError):
    """Cyclic span failed to stabilize below the degree cap."""


@dataclass
class Representation:
    """Exact matrix representation with diagonal Cartan and graded basis.

    ``action[g]`` maps a column index to a sparse column {row: coeff} for the
    g-th algebra basis element.  ``weights[j]`` lists the Cartan eigenvalues
    of basis vector j (the Cartan must act diagonally).
    """

    algebra: LieSuperalgebra
    dim: int
    parities: tuple[int, ...]
    weights: tuple[Weight, ...]
    action: list[dict[int, dict[int, Rat]]]
    _element_cache: dict = field(default_factory=dict, repr=False)

    def element_action(
        self, coords: tuple[tuple[int, Rat], ...]
    ) -> dict[int, dict[int, Rat]]:
        """Sparse matrix of a general algebra element given by basis coords."""
        cached = self._element_cache.get(coords)
        if cached is not None:
            return cached
        out: dict[int, dict[int, Rat]] = {}
        for g, c in coords:
            for j, col in self.action[g].items():
                dst = out.setdefault(j, {})
                for i, a in col.items():
                    val = dst.get(i, Rat(0)) + c * a
                    if val == 0:
                        dst.pop(i, None)
                    else:
                        dst[i] = val
        out = {j: col for j, col in out.items() if col}
        self._element_cache[coords] = out
        return out

    def apply(self, op: dict[int, dict[int, Rat]], v: SparseVector) -> SparseVector:
        out = SparseVector()
        for j, c in v.entries.items():
            col = op.get(j)
            if not col:
                continue
            for i, a in col.items():
                out = out.add_scaled(SparseVector.unit(i), c * a)
        return out

    def apply_element(
        self, coords: tuple[tuple[int, Rat], ...], v: SparseVector
    ) -> SparseVector:
        return self.apply(self.element_action(coords), v)

    def validate(self) -> None:
        """Check homogeneity, diagonal Cartan action, and the bracket axiom."""
        alg = self.algebra
        # homogeneity of each generator's action
        for g in range(alg.dim):
            pg = alg.parities[g]
            for j, col in self.action[g].items():
                for i in col:
                    if (self.parities[i] - self.parities[j] - pg) % 2 != 0:
                        raise ValueError(
                            f"action of generator {g} is not parity-homogeneous"
                        )
        # diagonal Cartan
        for rank_pos, h_idx in enumerate(alg.cartan_indices):
            for j, col in self.action[h_idx].items():
                for i, c in col.items():
                    if i != j:
                        raise ValueError("Cartan does not act diagonally")
                    if c != self.weights[j][rank_pos]:
                        raise ValueError("stored weights disagree with the action")
        # bracket axiom on all pairs of basis elements
        def compose(a, b):
            out: dict[int, dict[int, Rat]] = {}
            for j, col in b.items():
                dst: dict[int, Rat] = {}
                for k, c in col.items():
                    for i, d in a.get(k, {}).items():
                        val = dst.get(i, Rat(0)) + c * d
                        if val == 0:
                            dst.pop(i, None)
                        else:
                            dst[i] = val
                if dst:
                    out[j] = dst
            return out

        def mat_eq(a, b):
            keys = set(a) | set(b)
            for j in keys:
                ca, cb = a.get(j, {}), b.get(j, {})
                idx = set(ca) | set(cb)
                for i in idx:
                    if ca.get(i, Rat(0)) != cb.get(i, Rat(0)):
                        return False
            return True

        for gi in range(alg.dim):
            for gj in range(alg.dim):
                lhs_coords = alg.bracket_coords(gi, gj)
                lhs = self.element_action(
                    tuple((k, c) for k, c in enumerate(lhs_coords) if c != 0)
                )
                ab = compose(self.action[gi], self.action[gj])
                ba = compose(self.action[gj], self.action[gi])
                sign = -1 if (alg.parities[gi] and alg.parities[gj]) else 1
                rhs: dict[int, dict[int, Rat]] = {}
                for j in set(ab) | set(ba):
                    col: dict[int, Rat] = {}
                    for i in set(ab.get(j, {})) | set(ba.get(j, {})):
                        val = ab.get(j, {}).get(i, Rat(0)) - sign * ba.get(j, {}).get(
                            i, Rat(0)
                        )
                        if val != 0:
                            col[i] = val
                    if col:
                        rhs[j] = col
                if not mat_eq(lhs, rhs):
                    raise ValueError(
                        f"bracket axiom fails on generator pair ({gi}, {gj})"
                    )


def natural(algebra: LieSuperalgebra) -> Representation:
    """The defining column representation of the matrix realization."""
    p, q = algebra.space
    dim = p + q
    parities = tuple(0 if i < p else 1 for i in range(dim))
    weights = tuple(
        tuple(h.rows[j][j] for h in algebra.cartan) for j in range(dim)
    )
    action = []
    for mat in algebra.basis:
        cols: dict[int, dict[int, Rat]] = {}
        for i, row in enumerate(mat.rows):
            for j, c in enumerate(row):
                if c != 0:
                    cols.setdefault(j, {})[i] = c
        action.append(cols)
    return Representation(
        algebra=algebra, dim=dim, parities=parities, weights=weights, action=action
    )


def dual_natural(algebra: LieSuperalgebra) -> Representation:
    """Graded dual of the natural representation.

    rho*(x)_{ij} = -(-1)^{|x||e_j|} rho(x)_{ji}, with unchanged basis parities
    and negated weights.
    """
    base = natural(algebra)
    action = []
    for g, mat in enumerate(algebra.basis):
        pg = algebra.parities[g]
        cols: dict[int, dict[int, Rat]] = {}
        for jj, row in enumerate(mat.rows):  # rho(x)_{ji} indexed (jj, ii)
            for ii, c in enumerate(row):
                if c == 0:
                    continue
                sign = -1 if (pg and base.parities[jj]) else 1
                cols.setdefault(jj, {})[ii] = -sign * c
        action.append(cols)
    weights = tuple(tuple(-w for w in ws) for ws in base.weights)
    return Representation(
        algebra=algebra, dim=base.dim, parities=base.parities,
        weights=weights, action=action,
    )


def flip_parities(rep: Representation) -> Representation:
    """Parity shift: identical action and weights, all basis parities flipped."""
    return Representation(
        algebra=rep.algebra, dim=rep.dim,
        parities=tuple(1 - p for p in rep.parities),
        weights=rep.weights, action=rep.action,
    )


BLOCK_BUILDERS: dict[str, Callable[[LieSuperalgebra], Representation]] = {
    "natural": natural,
    "dual-natural": dual_natural,
    "flip-natural": lambda a: flip_parities(natural(a)),
    "flip-dual-natural": lambda a: flip_parities(dual_natural(a)),
}


def tensor_representations(r1: Representation, r2: Representation) -> Representation:
    """Graded tensor product; flat index (i1, i2) -> i1 * dim2 + i2."""
    if r1.algebra is not r2.algebra:
        raise ValueError("tensor factors must share the algebra object")
    d1, d2 = r1.dim, r2.dim
    dim = d1 * d2
    parities = tuple(
        (r1.parities[i1] + r2.parities[i2]) % 2
        for i1 in range(d1)
        for i2 in range(d2)
    )
    weights = tuple(
        tuple(a + b for a, b in zip(r1.weights[i1], r2.weights[i2]))
        for i1 in range(d1)
        for i2 in range(d2)
    )
    action = []
    for g in range(r1.algebra.dim):
        pg = r1.algebra.parities[g]
        cols: dict[int, dict[int, Rat]] = {}
        a1, a2 = r1.action[g], r2.action[g]
        for j1 in range(d1):
            for j2 in range(d2):
                col: dict[int, Rat] = {}
                for i1, c in a1.get(j1, {}).items():
                    col[i1 * d2 + j2] = col.get(i1 * d2 + j2, Rat(0)) + c
                sign = -1 if (pg and r1.parities[j1]) else 1
                for i2, c in a2.get(j2, {}).items():
                    key = j1 * d2 + i2
                    col[key] = col.get(key, Rat(0)) + sign * c
                col = {i: c for i, c in col.items() if c != 0}
                if col:
                    cols[j1 * d2 + j2] = col
        action.append(cols)
    return Representation(
        algebra=r1.algebra, dim=dim, parities=parities, weights=weights, action=action
    )


@dataclass
class HighestWeightRealization:
    """A concrete cyclic highest-weight module inside a representation.

    ``level`` counts how many copies of the base weight the realization
    represents (tensor powers add levels).
    """

    rep: Representation
    hw_index: int
    weight: Weight
    level: int = 1

    @property
    def hw_vector(self) -> SparseVector:
        return SparseVector.unit(self.hw_index)


def single_block_realization(
    context: AlgebraContext, block: str, hw_index: int, validate: bool = True
) -> HighestWeightRealization:
    if block not in BLOCK_BUILDERS:
        raise ValueError(
            f"unknown block {block!r}; expected one of {sorted(BLOCK_BUILDERS)}"
        )
    rep = BLOCK_BUILDERS[block](context.algebra)
    real = HighestWeightRealization(
        rep=rep, hw_index=hw_index, weight=rep.weights[hw_index], level=1
    )
    if validate:
        _validate_highest_weight(context, real)
    return real


def _validate_highest_weight(
    context: AlgebraContext, real: HighestWeightRealization
) -> None:
    rep = real.rep
    if rep.parities[real.hw_index] != 0:
        raise ValueError("highest-weight vector must be even")
    v = real.hw_vector
    for root in context.borel.positive_roots:
        coords = context.algebra.coordinates(root.vector)
        out = rep.apply_element(
            tuple((i, c) for i, c in enumerate(coords) if c != 0), v
        )
        if not out.is_zero():
            raise ValueError(
                f"candidate vector is not annihilated by the raising "
                f"operator of root {root.label}"
            )
    if rep.weights[real.hw_index] != real.weight:
        raise ValueError("stored weight disagrees with the Cartan action")


def tensor(
    r1: HighestWeightRealization,
    r2: HighestWeightRealization,
    level: int | None = None,
) -> HighestWeightRealization:
    rep = tensor_representations(r1.rep, r2.rep)
    hw_index = r1.hw_index * r2.rep.dim + r2.hw_index
    return HighestWeightRealization(
        rep=rep,
        hw_index=hw_index,
        weight=tuple(a + b for a, b in zip(r1.weight, r2.weight)),
        level=(r1.level + r2.level) if level is None else level,
    )


def tensor_power(real: HighestWeightRealization, k: int) -> HighestWeightRealization:
    if k < 1:
        raise ValueError("tensor power needs k >= 1")
    out = real
    for _ in range(k - 1):
        out = tensor(out, real)
    return out


def build_realization(
    context: AlgebraContext,
    blocks: Sequence[tuple[str, int]],
    validate: bool = True,
) -> HighestWeightRealization:
    """Tensor of single blocks, treated as one level-1 base realization."""
    parts = [
        single_block_realization(context, name, idx, validate=validate)
        for name, idx in blocks
    ]
    out = parts[0]
    for p in parts[1:]:
        out = tensor(out, p, level=1)
    if validate and len(parts) > 1:
        _validate_highest_weight(context, out)
    return out


def pbw_act(
    real: HighestWeightRealization,
    basis: NegativeBasis,
    exp: MultiExponent,
    divided: bool = True,
) -> SparseVector:
    """Apply the ordered monomial of negative generators to the hw vector.

    The generator at the lowest position acts first; ``divided`` divides by
    the factorial of each even multiplicity (divided-power normalization).
    """
    v = real.hw_vector
    denom = 1
    for mult, element in basis.exponent_items(exp):
        op = real.rep.element_action(element.algebra_coords)
        for _ in range(mult):
            v = real.rep.apply(op, v)
            if v.is_zero():
                return v
        if divided:
            denom *= math.factorial(mult)
    if denom != 1:
        v = v.scaled(Rat(1, denom))
    return v


def exponent_weight(
    basis: NegativeBasis, base_weight: Weight, exp: MultiExponent
) -> Weight:
    out = list(base_weight)
    for mult, element in basis.exponent_items(exp):
        for k, c in enumerate(element.coords):
            out[k] += mult * c
    return tuple(out)


@dataclass
class CyclicModule:
    """Result of scanning ordered monomials against a cyclic hw module."""

    realization: HighestWeightRealization
    basis: NegativeBasis
    order: MonomialOrder
    essentials: list[tuple[MultiExponent, SparseVector]]
    dimension: int
    stabilization_degree: int
    blocks: dict[Weight, tuple[SpanAccumulator, list[int]]]
    divided: bool = True

    def essential_exponents(self) -> list[MultiExponent]:
        return [e for e, _ in self.essentials]

    def expand(self, exp: MultiExponent) -> dict[MultiExponent, Rat]:
        """Expansion of the (possibly non-essential) monomial vector over the
        essential vectors of its weight block.

        The monomial image always lies in the cyclic span, so failure to
        express it indicates an internal inconsistency and raises.
        """
        vec = pbw_act(self.realization, self.basis, exp, divided=self.divided)
        if vec.is_zero():
            return {}
        w = exponent_weight(self.basis, self.realization.weight, exp)
        entry = self.blocks.get(w)
        if entry is None:
            raise RuntimeError(
                f"monomial {exp} lands in an unknown weight block {w}"
            )
        acc, idxs = entry
        coeffs = acc.express(vec)
        if coeffs is None:
            raise RuntimeError(
                f"monomial {exp} is outside the recorded cyclic span"
            )
        out: dict[MultiExponent, Rat] = {}
        for pos, c in enumerate(coeffs):
            if c != 0:
                out[self.essentials[idxs[pos]][0]] = c
        return out


def cyclic_span(
    real: HighestWeightRealization,
    basis: NegativeBasis,
    order: MonomialOrder | None = None,
    degree_cap: int | None = None,
    divided: bool = True,
) -> CyclicModule:
    """Scan ordered monomials degree by degree (within a degree, ascending in
    the monomial order) and collect the scan-independent exponents.

    Stops once a full degree layer contributes no new vectors (the span of
    monomial images of degree <= d generates all higher layers once layer d
    stalls) or once the span fills the weight blocks it can reach.  Raises
    NotConvergedError if the cap (default ambient dimension + 1) is hit.
    """
    from .superpoly import enumerate_monomials

    n, q = basis.n, basis.q
    if order is None:
        order = MonomialOrder("graded-lex")
    if degree_cap is None:
        degree_cap = real.rep.dim + 1
    blocks: dict[Weight, tuple[SpanAccumulator, list[int]]] = {}
    essentials: list[tuple[MultiExponent, SparseVector]] = []

    def insert(exp: MultiExponent, vec: SparseVector) -> bool:
        w = exponent_weight(basis, real.weight, exp)
        acc, idxs = blocks.setdefault(w, (SpanAccumulator(), []))
        if isinstance(acc.insert(vec), Independent):
            idxs.append(len(essentials))
            essentials.append((exp, vec))
            return True
        return False

    insert(MultiExponent.zero(n, q), real.hw_vector)
    stab = 0
    d = 0
    while True:
        d += 1
        if d > degree_cap:
            raise NotConvergedError(
                f"cyclic span did not stabilize within degree {degree_cap}"
            )
        layer = [
            e
            for e in enumerate_monomials(order, d, n, q)
            if e.degree == d
        ]
        added = 0
        for exp in layer:
            vec = pbw_act(real, basis, exp, divided=divided)
            if vec.is_zero():
                continue
            if insert(exp, vec):
                added += 1
        if added == 0:
            break
        stab = d
    return CyclicModule(
        realization=real,
        basis=basis,
        order=order,
        essentials=essentials,
        dimension=len(essentials),
        stabilization_degree=stab,
        blocks=blocks,
        divided=divided,
    )


def cartan_expand(
    exp: MultiExponent, divided: bool = False
) -> list[tuple[tuple[MultiExponent, MultiExponent], Rat]]:
    """Expansion of an ordered monomial acting on a two-factor tensor.

    Returns ((first, second), coeff) pairs: ``first`` acts on the first
    tensor factor.  The coefficient is the parity-reordering sign times a
    product of binomials (the binomials are absorbed when ``divided``).
    """
    out: list[tuple[tuple[MultiExponent, MultiExponent], Rat]] = []
    for a, b in exp.splittings():
        sign = -1 if koszul_count(a.odd, b.odd) % 2 else 1
        coeff = Rat(sign)
        if not divided:
            for m, ma in zip(exp.even, a.even):
                if ma:
                    coeff *= math.comb(m, ma)
        out.append(((a, b), coeff))
    return out


def act_via_expansion(
    real1: HighestWeightRealization,
    real2: HighestWeightRealization,
    basis: NegativeBasis,
    exp: MultiExponent,
    divided: bool = False,
) -> SparseVector:
    """Tensor-action of a monomial computed factorwise via cartan_expand."""
    d2 = real2.rep.dim
    total = SparseVector()
    for (a, b), coeff in cartan_expand(exp, divided=divided):
        u1 = pbw_act(real1, basis, a, divided=divided)
        if u1.is_zero():
            continue
        u2 = pbw_act(real2, basis, b, divided=divided)
        if u2.is_zero():
            continue
        for i1, c1 in u1.entries.items():
            for i2, c2 in u2.entries.items():
                total = total.add_scaled(
                    SparseVector.unit(i1 * d2 + i2), coeff * c1 * c2
                )
    return total
