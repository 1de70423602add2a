"""Finite abelian groups, subgroups, quotients, and Cayley-table semigroups.

Every carrier in gammalib is a finite abelian group whose elements are flat
integer tuples of a fixed length (``arity``).  Carriers are enumerated in
lexicographic order, so "first witness" always means lexicographically least.
"""

from __future__ import annotations

import itertools
import math
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import (
    InvalidSubgroupError,
    MalformedElementError,
    NonAssociativeError,
    NotCommutativeError,
    NotHomomorphismError,
    PreconditionError,
    UnsupportedStructureError,
)
from .verdict import Verdict

Element = tuple


class AbelianGroup:
    """Shared surface of all finite abelian carriers.

    Subclasses define ``arity``, ``_enumerate``, ``zero``, ``add`` and ``neg``.
    """

    arity: int

    def _enumerate(self):
        raise NotImplementedError

    def add(self, x, y):
        raise NotImplementedError

    def neg(self, x):
        raise NotImplementedError

    @cached_property
    def elements(self) -> tuple:
        return tuple(sorted(self._enumerate()))

    @cached_property
    def _positions(self) -> dict:
        return {x: i for i, x in enumerate(self.elements)}

    def index(self, x) -> int:
        try:
            return self._positions[x]
        except KeyError:
            raise MalformedElementError(f"{x!r} is not an element of {self!r}", x) from None

    def check(self, x) -> tuple:
        """Normalize ``x`` to a tuple and verify membership."""
        t = tuple(int(v) for v in x)
        if t not in self._positions:
            raise MalformedElementError(f"{x!r} is not an element of {self!r}", t)
        return t

    def __contains__(self, x) -> bool:
        return x in self._positions

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def total(self, xs: Iterable) -> tuple:
        acc = self.zero
        for x in xs:
            acc = self.add(acc, x)
        return acc

    def scale(self, k: int, x):
        acc = self.zero
        if k < 0:
            k, x = -k, self.neg(x)
        for _ in range(k):
            acc = self.add(acc, x)
        return acc

    def element_order(self, x) -> int:
        n, acc = 1, x
        while acc != self.zero:
            acc = self.add(acc, x)
            n += 1
        return n

    @cached_property
    def add_table(self) -> np.ndarray:
        els = self.elements
        idx = self._positions
        n = len(els)
        table = np.empty((n, n), dtype=np.int64)
        for i, x in enumerate(els):
            for j in range(i, n):
                table[i, j] = table[j, i] = idx[self.add(x, els[j])]
        return table

    @cached_property
    def neg_table(self) -> np.ndarray:
        return np.array([self._positions[self.neg(x)] for x in self.elements], dtype=np.int64)

    @property
    def zero_index(self) -> int:
        return self._positions[self.zero]

    def _key(self):
        raise NotImplementedError

    def __eq__(self, other):
        return type(self) is type(other) and self._key() == other._key()

    def __hash__(self):
        return hash((type(self).__name__, self._key()))


class FiniteAbelianGroup(AbelianGroup):
    """Z_{n1} x ... x Z_{nk} with residue-tuple elements."""

    def __init__(self, moduli: Sequence[int]):
        moduli = tuple(int(n) for n in moduli)
        if any(n < 1 for n in moduli):
            raise ValueError(f"moduli must be >= 1, got {moduli}")
        self.moduli = moduli
        self.arity = len(moduli)
        self.zero = (0,) * self.arity

    def _enumerate(self):
        return itertools.product(*(range(n) for n in self.moduli))

    @cached_property
    def elements(self) -> tuple:
        # itertools.product is already lexicographic
        return tuple(self._enumerate())

    @property
    def order(self) -> int:
        return math.prod(self.moduli)

    def check(self, x) -> tuple:
        t = tuple(int(v) for v in x)
        if len(t) != self.arity or any(not 0 <= v < n for v, n in zip(t, self.moduli)):
            raise MalformedElementError(f"{x!r} is not an element of Z{list(self.moduli)}", t)
        return t

    def add(self, x, y):
        return tuple((a + b) % n for a, b, n in zip(x, y, self.moduli))

    def neg(self, x):
        return tuple((-a) % n for a, n in zip(x, self.moduli))

    def _key(self):
        return self.moduli

    def __repr__(self):
        return f"FiniteAbelianGroup({list(self.moduli)})"


class ProductGroup(AbelianGroup):
    """External direct product; elements are concatenations of factor elements."""

    def __init__(self, factors: Sequence[AbelianGroup]):
        self.factors = tuple(factors)
        self.arity = sum(f.arity for f in self.factors)
        self.zero = tuple(v for f in self.factors for v in f.zero)
        offsets = [0]
        for f in self.factors:
            offsets.append(offsets[-1] + f.arity)
        self._offsets = tuple(offsets)

    def _enumerate(self):
        for parts in itertools.product(*(f.elements for f in self.factors)):
            yield self.join(parts)

    @cached_property
    def elements(self) -> tuple:
        return tuple(self._enumerate())

    def split(self, x) -> tuple:
        o = self._offsets
        return tuple(tuple(x[o[i]:o[i + 1]]) for i in range(len(self.factors)))

    @staticmethod
    def join(parts) -> tuple:
        return tuple(v for p in parts for v in p)

    def embed(self, i: int, x) -> tuple:
        parts = [f.zero for f in self.factors]
        parts[i] = tuple(x)
        return self.join(parts)

    def add(self, x, y):
        return self.join(f.add(a, b) for f, a, b in zip(self.factors, self.split(x), self.split(y)))

    def neg(self, x):
        return self.join(f.neg(a) for f, a in zip(self.factors, self.split(x)))

    def _key(self):
        return self.factors

    def __repr__(self):
        return f"ProductGroup({list(self.factors)!r})"


class Subgroup(AbelianGroup):
    """A subgroup of ``parent`` stored extensionally."""

    def __init__(self, parent: AbelianGroup, elements: Iterable, *, verify: bool = True):
        self.parent = parent
        self.arity = parent.arity
        self.zero = parent.zero
        members = frozenset(parent.check(x) for x in elements)
        self._members = members
        if verify:
            v = subgroup_verdict(parent, members)
            if not v:
                raise InvalidSubgroupError(f"not a subgroup of {parent!r}: {v}", v.witness)

    def _enumerate(self):
        return self._members

    @property
    def members(self) -> frozenset:
        return self._members

    def add(self, x, y):
        return self.parent.add(x, y)

    def neg(self, x):
        return self.parent.neg(x)

    def issubset(self, other) -> bool:
        other_members = other.members if isinstance(other, Subgroup) else set(other)
        return self._members <= other_members

    def is_trivial(self) -> bool:
        return len(self._members) == 1

    def _key(self):
        return (self.parent, self._members)

    def __repr__(self):
        return f"Subgroup({sorted(self._members)})"


class QuotientGroup(AbelianGroup):
    """``parent / kernel`` represented by lexicographically least coset representatives."""

    def __init__(self, parent: AbelianGroup, kernel):
        if not isinstance(kernel, Subgroup) or kernel.parent != parent:
            kernel = Subgroup(parent, kernel.elements if isinstance(kernel, AbelianGroup) else kernel)
        self.parent = parent
        self.kernel = kernel
        self.arity = parent.arity
        rep_of = {}
        reps = []
        for x in parent.elements:
            if x in rep_of:
                continue
            reps.append(x)
            for k in kernel.elements:
                rep_of[parent.add(x, k)] = x
        self._rep_of = rep_of
        self._reps = tuple(reps)
        self.zero = rep_of[parent.zero]

    def _enumerate(self):
        return self._reps

    @cached_property
    def elements(self) -> tuple:
        return self._reps

    def reduce(self, x) -> tuple:
        try:
            return self._rep_of[x]
        except KeyError:
            raise MalformedElementError(f"{x!r} is not an element of {self.parent!r}", x) from None

    def coset(self, x) -> tuple:
        r = self.reduce(x)
        return tuple(sorted(self.parent.add(r, k) for k in self.kernel.elements))

    def add(self, x, y):
        return self._rep_of[self.parent.add(x, y)]

    def neg(self, x):
        return self._rep_of[self.parent.neg(x)]

    def _key(self):
        return (self.parent, self.kernel)

    def __repr__(self):
        return f"QuotientGroup({self.parent!r} / {self.kernel!r})"


def group_arith(group: AbelianGroup, op: str, *args):
    """Dispatch ``add``, ``neg``, ``zero`` or ``enumerate`` on ``group``."""
    args = tuple(group.check(a) for a in args)
    if op == "add":
        if len(args) != 2:
            raise MalformedElementError("add takes two elements", args)
        return group.add(*args)
    if op == "neg":
        if len(args) != 1:
            raise MalformedElementError("neg takes one element", args)
        return group.neg(args[0])
    if op == "zero":
        return group.zero
    if op == "enumerate":
        return list(group.elements)
    raise ValueError(f"unknown group operation {op!r}")


def subgroup_verdict(group: AbelianGroup, elements) -> Verdict:
    members = set(elements)
    if group.zero not in members:
        return Verdict.failed("zero", (group.zero,))
    ordered = sorted(members)
    for x in ordered:
        for y in ordered:
            if group.add(x, y) not in members:
                return Verdict.failed("closure", (x, y))
    return Verdict.passed()


def subgroup_generated(group: AbelianGroup, generators: Iterable) -> Subgroup:
    """Smallest subgroup containing ``generators``, by additive closure."""
    members = {group.zero}
    for g in sorted({group.check(x) for x in generators}):
        if g in members:
            continue
        layer = set(members)
        step = g
        while step not in members:
            members |= {group.add(s, step) for s in layer}
            step = group.add(step, g)
    return Subgroup(group, members, verify=False)


def zero_subgroup(group: AbelianGroup) -> Subgroup:
    return Subgroup(group, [group.zero], verify=False)


def whole_subgroup(group: AbelianGroup) -> Subgroup:
    return Subgroup(group, group.elements, verify=False)


def subgroup_sum(group: AbelianGroup, subgroups: Iterable) -> Subgroup:
    return subgroup_generated(group, (x for s in subgroups for x in s.elements))


def subgroup_intersection(group: AbelianGroup, subgroups: Sequence[Subgroup]) -> Subgroup:
    members = frozenset(group.elements)
    for s in subgroups:
        members &= s.members
    return Subgroup(group, members, verify=False)


def quotient_group(group: AbelianGroup, kernel) -> QuotientGroup:
    return QuotientGroup(group, kernel)


def subgroups_between(lower: Subgroup, upper: Subgroup) -> list:
    """All subgroups S with lower <= S <= upper, found by upward closure."""
    group = lower.parent
    seen = {lower.members: lower}
    frontier = [lower]
    while frontier:
        nxt = []
        for s in frontier:
            for x in upper.elements:
                if x in s.members:
                    continue
                t = subgroup_generated(group, list(s.members) + [x])
                if t.members not in seen:
                    seen[t.members] = t
                    nxt.append(t)
        frontier = nxt
    return sorted(seen.values(), key=lambda s: (len(s), sorted(s.members)))


def cyclic_decomposition(group: AbelianGroup) -> list:
    """Independent generators ``[(b, n), ...]`` with ``group = <b1> + ... + <bk>``.

    Greedy: take an element of maximal order in the quotient by the span so
    far and lift it to an element of the same order; such a lift always
    exists and keeps the span a direct summand.
    """
    basis = []
    span = zero_subgroup(group)
    while len(span) < len(group):
        q = QuotientGroup(group, span)
        best, best_order = None, 0
        for x in q.elements:
            o = q.element_order(x)
            if o > best_order:
                best, best_order = x, o
        lift = None
        for s in span.elements:
            y = group.add(best, s)
            if group.element_order(y) == best_order:
                lift = y
                break
        if lift is None:
            raise AssertionError("no equal-order lift; carrier is not an abelian group")
        basis.append((lift, best_order))
        span = subgroup_generated(group, [b for b, _ in basis])
    return basis


def native_moduli(group: AbelianGroup):
    """Moduli if ``group``'s elements already are residue tuples, else None."""
    if isinstance(group, FiniteAbelianGroup):
        return group.moduli
    if isinstance(group, ProductGroup):
        parts = [native_moduli(f) for f in group.factors]
        if all(p is not None for p in parts):
            return tuple(m for p in parts for m in p)
    return None


def to_cyclic(group: AbelianGroup):
    """An isomorphic FiniteAbelianGroup with maps ``(cyclic, forward, backward)``."""
    moduli = native_moduli(group)
    if moduli is not None:
        target = FiniteAbelianGroup(moduli)
        ident = {x: x for x in group.elements}
        return target, ident, dict(ident)
    basis = cyclic_decomposition(group)
    target = FiniteAbelianGroup([n for _, n in basis])
    backward = {}
    for coeffs in target.elements:
        backward[coeffs] = group.total(group.scale(c, b) for c, (b, _) in zip(coeffs, basis))
    forward = {v: k for k, v in backward.items()}
    if len(forward) != len(group):
        raise AssertionError("cyclic decomposition is not a bijection")
    return target, forward, backward


# --- semigroups -------------------------------------------------------------


class FiniteSemigroup:
    """A finite semigroup given by its Cayley table over string labels.

    The table is verified associative on construction.  ``require_abelian``
    additionally rejects non-commutative tables.
    """

    def __init__(self, labels: Sequence, table: Sequence[Sequence], *, require_abelian: bool = False):
        labels = tuple(str(l) for l in labels)
        if len(set(labels)) != len(labels) or not labels:
            raise ValueError(f"labels must be distinct and nonempty: {labels}")
        pos = {l: i for i, l in enumerate(labels)}
        n = len(labels)
        if len(table) != n or any(len(row) != n for row in table):
            raise ValueError(f"Cayley table must be {n}x{n}")
        rows = []
        for row in table:
            r = []
            for v in row:
                if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
                    if not 0 <= v < n:
                        raise ValueError(f"table index {v} out of range")
                    r.append(int(v))
                else:
                    if str(v) not in pos:
                        raise ValueError(f"unknown label {v!r} in table")
                    r.append(pos[str(v)])
            rows.append(tuple(r))
        self.labels = labels
        self.table = tuple(rows)
        self._pos = pos
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    if rows[rows[a][b]][c] != rows[a][rows[b][c]]:
                        raise NonAssociativeError(
                            f"table not associative at ({labels[a]}, {labels[b]}, {labels[c]})",
                            (labels[a], labels[b], labels[c]),
                        )
        self.is_commutative = True
        self.noncommuting_pair = None
        for a in range(n):
            for b in range(a + 1, n):
                if rows[a][b] != rows[b][a]:
                    self.is_commutative = False
                    self.noncommuting_pair = (labels[a], labels[b])
                    break
            if not self.is_commutative:
                break
        if require_abelian and not self.is_commutative:
            raise NotCommutativeError(
                f"semigroup not commutative at {self.noncommuting_pair}", self.noncommuting_pair
            )
        self.identity = None
        for e in range(n):
            if all(rows[e][a] == a and rows[a][e] == a for a in range(n)):
                self.identity = labels[e]
                break
        self._inverse = {}
        if self.identity is not None:
            ei = pos[self.identity]
            for a in range(n):
                for b in range(n):
                    if rows[a][b] == ei and rows[b][a] == ei:
                        self._inverse[labels[a]] = labels[b]
                        break
        self.is_group = self.identity is not None and len(self._inverse) == n

    def __len__(self):
        return len(self.labels)

    def __iter__(self):
        return iter(self.labels)

    def __contains__(self, label):
        return label in self._pos

    def __eq__(self, other):
        return isinstance(other, FiniteSemigroup) and (self.labels, self.table) == (other.labels, other.table)

    def __hash__(self):
        return hash((self.labels, self.table))

    def __repr__(self):
        return f"FiniteSemigroup({list(self.labels)})"

    def index(self, label) -> int:
        try:
            return self._pos[str(label)]
        except KeyError:
            raise MalformedElementError(f"{label!r} is not in {self!r}", label) from None

    def mul(self, a, b) -> str:
        return self.labels[self.table[self.index(a)][self.index(b)]]

    def inverse(self, a) -> str:
        if a not in self._inverse:
            raise PreconditionError(f"{a!r} has no inverse", a)
        return self._inverse[a]

    def label_table(self) -> list:
        return [[self.labels[v] for v in row] for row in self.table]

    def is_closed(self, labels) -> bool:
        s = set(labels)
        return all(self.mul(a, b) in s for a in s for b in s)

    def subsemigroup(self, labels) -> FiniteSemigroup:
        keep = [l for l in self.labels if l in set(map(str, labels))]
        if len(keep) != len(set(map(str, labels))):
            raise PreconditionError(f"unknown labels in {labels}", labels)
        if not self.is_closed(keep):
            bad = next((a, b) for a in keep for b in keep if self.mul(a, b) not in keep)
            raise PreconditionError(f"{keep} not closed under the product", bad)
        return FiniteSemigroup(keep, [[self.mul(a, b) for b in keep] for a in keep])

    def is_subgroup(self, labels) -> bool:
        s = [l for l in self.labels if l in set(labels)]
        if not s or not self.is_closed(s) or self.identity not in s:
            return False
        return all(a in self._inverse and self._inverse[a] in s for a in s)


def semigroup_check(labels, table, *, require_abelian: bool = False) -> FiniteSemigroup:
    return FiniteSemigroup(labels, table, require_abelian=require_abelian)


def cyclic_group(n: int, generator: str = "g") -> FiniteSemigroup:
    """C_n with labels e, g, g^2, ..., g^(n-1)."""
    labels = ["e"] + [generator if k == 1 else f"{generator}^{k}" for k in range(1, n)]
    return FiniteSemigroup(labels, [[(i + j) % n for j in range(n)] for i in range(n)])


def trivial_group() -> FiniteSemigroup:
    return FiniteSemigroup(["e"], [[0]])


def segment_monoid(D: int) -> FiniteSemigroup:
    """{0, ..., D} under addition clamped at D; the index set of truncated N-gradings."""
    return FiniteSemigroup([str(i) for i in range(D + 1)], [[min(i + j, D) for j in range(D + 1)] for i in range(D + 1)])


def segment_degree(G: FiniteSemigroup):
    """D when G is ``segment_monoid(D)``, else None."""
    D = len(G) - 1
    if G.labels != tuple(str(i) for i in range(D + 1)):
        return None
    return D if G == segment_monoid(D) else None


def product_semigroup(G: FiniteSemigroup, H: FiniteSemigroup) -> FiniteSemigroup:
    labels = [f"({a},{b})" for a in G.labels for b in H.labels]
    pairs = [(a, b) for a in G.labels for b in H.labels]
    pos = {p: i for i, p in enumerate(pairs)}
    table = [[pos[(G.mul(a, c), H.mul(b, d))] for (c, d) in pairs] for (a, b) in pairs]
    return FiniteSemigroup(labels, table)


class SemigroupMap:
    """A verified semigroup homomorphism ``domain -> codomain``."""

    def __init__(self, domain: FiniteSemigroup, codomain: FiniteSemigroup, images: Mapping):
        self.domain = domain
        self.codomain = codomain
        imgs = {str(k): str(v) for k, v in images.items()}
        if set(imgs) != set(domain.labels):
            raise PreconditionError("images must be given for every domain label", sorted(set(domain.labels) ^ set(imgs)))
        for v in imgs.values():
            codomain.index(v)
        self.images = {l: imgs[l] for l in domain.labels}
        for a in domain.labels:
            for b in domain.labels:
                if self.images[domain.mul(a, b)] != codomain.mul(self.images[a], self.images[b]):
                    raise NotHomomorphismError(f"map not multiplicative at ({a}, {b})", (a, b))
        self.is_onto = set(self.images.values()) == set(codomain.labels)

    def __call__(self, label) -> str:
        return self.images[str(label)]

    def fiber(self, h) -> tuple:
        return tuple(g for g in self.domain.labels if self.images[g] == h)

    def then(self, other: SemigroupMap) -> SemigroupMap:
        """Composite ``other o self``."""
        return SemigroupMap(self.domain, other.codomain, {g: other(self(g)) for g in self.domain.labels})


def semigroup_map_check(domain, codomain, images) -> SemigroupMap:
    return SemigroupMap(domain, codomain, images)


def quotient_semigroup(G: FiniteSemigroup, N) -> tuple:
    """G/N for a group G and subgroup N; cosets are labelled by their first member.

    Returns ``(G/N, projection)``.
    """
    if not G.is_group:
        raise UnsupportedStructureError("quotients are supported only for groups", G.labels)
    N = [l for l in G.labels if l in set(map(str, N))]
    if not G.is_subgroup(N):
        raise PreconditionError(f"{N} is not a subgroup", tuple(N))
    coset_label = {}
    reps = []
    for g in G.labels:
        if g in coset_label:
            continue
        reps.append(g)
        for n in N:
            coset_label[G.mul(g, n)] = g
    table = [[coset_label[G.mul(a, b)] for b in reps] for a in reps]
    Q = FiniteSemigroup(reps, table)
    return Q, SemigroupMap(G, Q, coset_label)
