"""Finite groups as dense Cayley tables, with the identity pinned at index 0.

Everything downstream works with element indices; all structural checks are
exhaustive, which is fine at the desk-scale orders this package targets.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

from .errors import (
    IdentityNotAtZero,
    ImageNotNormal,
    MissingInverse,
    NotAssociative,
    NotHomomorphism,
    NotLatinSquare,
    NotNormal,
    NotSubgroup,
    OrderBoundExceeded,
    SearchBoundExceeded,
)

DEFAULT_AUT_BOUND = 24


@dataclass(frozen=True)
class FiniteGroup:
    """A finite group on elements 0..order-1 given by its multiplication table.

    table[a][b] is the index of a*b; index 0 is the identity.  Build instances
    through validate_group, which checks all axioms exhaustively.
    """

    order: int
    table: tuple[tuple[int, ...], ...]
    inv: tuple[int, ...]
    labels: tuple[str, ...] | None = field(default=None, compare=False)
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "table", tuple(tuple(row) for row in self.table))
        object.__setattr__(self, "inv", tuple(self.inv))
        if self.labels is not None:
            object.__setattr__(self, "labels", tuple(str(x) for x in self.labels))

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inverse(self, a: int) -> int:
        return self.inv[a]

    def conjugate(self, g: int, a: int) -> int:
        """g * a * g^-1."""
        return self.table[self.table[g][a]][self.inv[g]]

    def elements(self) -> range:
        return range(self.order)

    def label(self, a: int) -> str:
        return self.labels[a] if self.labels else str(a)

    def is_abelian(self) -> bool:
        t = self.table
        return all(t[a][b] == t[b][a] for a in range(self.order) for b in range(a))

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != 0:
            x = self.table[x][a]
            k += 1
        return k

    def order_profile(self) -> tuple[int, ...]:
        """Sorted multiset of element orders; an isomorphism invariant."""
        return tuple(sorted(self.element_order(a) for a in self.elements()))

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name or f'order {self.order}'})"


def validate_group(table, labels=None, name: str = "") -> FiniteGroup:
    """Validate a Cayley table exhaustively and return the group.

    The identity must already sit at index 0; inverses are computed here.
    """
    n = len(table)
    if n == 0:
        raise ValueError("empty table")
    rows = [list(row) for row in table]
    for a, row in enumerate(rows):
        if len(row) != n:
            raise ValueError(f"row {a} has length {len(row)}, expected {n}")
        for b, x in enumerate(row):
            if not isinstance(x, int) or not 0 <= x < n:
                raise ValueError(f"entry table[{a}][{b}] = {x!r} out of range")
    for b in range(n):
        if rows[0][b] != b:
            raise IdentityNotAtZero(f"table[0][{b}] = {rows[0][b]}, expected {b}")
    for a in range(n):
        if rows[a][0] != a:
            raise IdentityNotAtZero(f"table[{a}][0] = {rows[a][0]}, expected {a}")
    full = set(range(n))
    for a in range(n):
        if set(rows[a]) != full:
            raise NotLatinSquare(f"row {a} is not a permutation")
    for b in range(n):
        if {rows[a][b] for a in range(n)} != full:
            raise NotLatinSquare(f"column {b} is not a permutation")
    for a in range(n):
        ra = rows[a]
        for b in range(n):
            rab = rows[ra[b]]
            rb = rows[b]
            for c in range(n):
                if rab[c] != ra[rb[c]]:
                    raise NotAssociative(f"({a}*{b})*{c} != {a}*({b}*{c})")
    inv = [0] * n
    for a in range(n):
        b = rows[a].index(0)
        if rows[b][a] != 0:
            raise MissingInverse(f"element {a} has no two-sided inverse")
        inv[a] = b
    return FiniteGroup(order=n, table=tuple(tuple(r) for r in rows),
                       inv=tuple(inv), labels=labels, name=name)


@dataclass(frozen=True)
class Homomorphism:
    """A total map between groups preserving the operation (checked eagerly)."""

    source: FiniteGroup
    target: FiniteGroup
    map: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "map", tuple(self.map))
        m = self.map
        if len(m) != self.source.order:
            raise NotHomomorphism(
                f"map has length {len(m)}, expected {self.source.order}")
        for a, x in enumerate(m):
            if not 0 <= x < self.target.order:
                raise NotHomomorphism(f"map[{a}] = {x} out of range")
        if m[0] != 0:
            raise NotHomomorphism("identity is not sent to identity")
        s, t = self.source.table, self.target.table
        for a in range(self.source.order):
            ma = m[a]
            for b in range(self.source.order):
                if m[s[a][b]] != t[ma][m[b]]:
                    raise NotHomomorphism(f"map({a}*{b}) != map({a})*map({b})")

    def __call__(self, a: int) -> int:
        return self.map[a]


# An automorphism is just a bijective endomorphism; no separate type is needed.
Automorphism = Homomorphism


def identity_hom(g: FiniteGroup) -> Homomorphism:
    return Homomorphism(g, g, tuple(range(g.order)))


def trivial_hom(source: FiniteGroup, target: FiniteGroup) -> Homomorphism:
    return Homomorphism(source, target, (0,) * source.order)


def compose(outer: Homomorphism, inner: Homomorphism) -> Homomorphism:
    """outer after inner."""
    if inner.target != outer.source:
        raise ValueError("homomorphisms are not composable")
    return Homomorphism(inner.source, outer.target,
                        tuple(outer.map[x] for x in inner.map))


def is_injective(f: Homomorphism) -> bool:
    return len(set(f.map)) == f.source.order


def is_surjective(f: Homomorphism) -> bool:
    return len(set(f.map)) == f.target.order


def is_bijective(f: Homomorphism) -> bool:
    return f.source.order == f.target.order and is_injective(f)


def inverse_hom(f: Homomorphism) -> Homomorphism:
    if not is_bijective(f):
        raise ValueError("homomorphism is not bijective")
    inv = [0] * f.target.order
    for a, x in enumerate(f.map):
        inv[x] = a
    return Homomorphism(f.target, f.source, tuple(inv))


@dataclass(frozen=True)
class Subgroup:
    """A sorted, closed set of indices of a parent group, containing 0."""

    parent: FiniteGroup
    members: tuple[int, ...]

    def __post_init__(self):
        members = tuple(sorted(set(self.members)))
        object.__setattr__(self, "members", members)
        if not members or members[0] != 0:
            raise NotSubgroup("subgroup does not contain the identity")
        inside = set(members)
        for a in members:
            if self.parent.inv[a] not in inside:
                raise NotSubgroup(f"not closed under inverse at {a}")
            for b in members:
                if self.parent.table[a][b] not in inside:
                    raise NotSubgroup(f"not closed under product at ({a}, {b})")

    @property
    def order(self) -> int:
        return len(self.members)

    def __contains__(self, a: int) -> bool:
        return a in self.members


def center(g: FiniteGroup) -> Subgroup:
    t = g.table
    members = [z for z in g.elements()
               if all(t[z][a] == t[a][z] for a in g.elements())]
    return Subgroup(g, tuple(members))


def subgroup_closure(g: FiniteGroup, gens) -> Subgroup:
    members = {0}
    frontier = [0]
    for x in gens:
        if x not in members:
            members.add(x)
            frontier.append(x)
    while frontier:
        new = []
        for a in list(members):
            for b in frontier:
                for p in (g.table[a][b], g.table[b][a]):
                    if p not in members:
                        members.add(p)
                        new.append(p)
        frontier = new
    return Subgroup(g, tuple(sorted(members)))


def is_normal(h: Subgroup) -> bool:
    g = h.parent
    inside = set(h.members)
    return all(g.conjugate(a, x) in inside for a in g.elements() for x in h.members)


@dataclass(frozen=True)
class QuotientData:
    """A quotient group together with its projection and coset representatives.

    Cosets are indexed by least representative, the identity coset first, so
    the construction is canonical and reproducible.
    """

    parent: FiniteGroup
    normal: Subgroup
    quotient: FiniteGroup
    projection: Homomorphism
    reps: tuple[int, ...]


def quotient(g: FiniteGroup, n: Subgroup) -> QuotientData:
    if n.parent != g:
        raise ValueError("subgroup does not belong to the given group")
    if not is_normal(n):
        raise NotNormal("subgroup is not normal")
    coset_of = [-1] * g.order
    reps: list[int] = []
    for a in g.elements():
        if coset_of[a] == -1:
            idx = len(reps)
            reps.append(a)
            for h in n.members:
                coset_of[g.table[a][h]] = idx
    k = len(reps)
    table = [[coset_of[g.table[reps[i]][reps[j]]] for j in range(k)] for i in range(k)]
    labels = tuple(f"[{g.label(r)}]" for r in reps)
    name = f"{g.name}/" + "{" + ",".join(str(m) for m in n.members) + "}" if g.name else ""
    q = validate_group(table, labels=labels, name=name)
    projection = Homomorphism(g, q, tuple(coset_of))
    return QuotientData(parent=g, normal=n, quotient=q,
                        projection=projection, reps=tuple(reps))


def kernel(f: Homomorphism) -> Subgroup:
    return Subgroup(f.source, tuple(a for a in f.source.elements() if f.map[a] == 0))


def image(f: Homomorphism) -> Subgroup:
    return Subgroup(f.target, tuple(sorted(set(f.map))))


def cokernel(f: Homomorphism) -> QuotientData:
    img = image(f)
    if not is_normal(img):
        raise ImageNotNormal("image is not a normal subgroup of the target")
    return quotient(f.target, img)


def generating_set(g: FiniteGroup) -> tuple[int, ...]:
    """Greedy small generating set: repeatedly adjoin the least missing element."""
    gens: list[int] = []
    closed = subgroup_closure(g, gens)
    while closed.order < g.order:
        inside = set(closed.members)
        gens.append(min(a for a in g.elements() if a not in inside))
        closed = subgroup_closure(g, gens)
    return tuple(gens)


def _closure_schedule(g: FiniteGroup, gens):
    """Construction order for <gens> with, per element, how to rebuild it.

    Returns a list of (element, kind, data) where kind is "id", "gen" (data is
    the position in gens) or "mul" (data is a pair of earlier elements).
    """
    schedule = [(0, "id", None)]
    known = {0}
    for pos, x in enumerate(gens):
        if x not in known:
            schedule.append((x, "gen", pos))
            known.add(x)
    changed = True
    while changed:
        changed = False
        for a, _, _ in list(schedule):
            for b, _, _ in list(schedule):
                p = g.table[a][b]
                if p not in known:
                    schedule.append((p, "mul", (a, b)))
                    known.add(p)
                    changed = True
    return schedule


def all_homomorphisms(source: FiniteGroup, target: FiniteGroup, *,
                      injective_only: bool = False,
                      fixed: dict[int, int] | None = None,
                      max_candidates: int = 500000) -> tuple[Homomorphism, ...]:
    """All homomorphisms source -> target by backtracking over generator images.

    `fixed` pins the image of some elements in advance (their consistency is
    checked by the final homomorphism validation).  Results are sorted by map
    array, so the enumeration order is deterministic.
    """
    fixed = dict(fixed or {})
    pinned = sorted(k for k in fixed if k != 0)
    gens = list(pinned)
    closed = subgroup_closure(source, gens)
    while closed.order < source.order:
        inside = set(closed.members)
        gens.append(min(a for a in source.elements() if a not in inside))
        closed = subgroup_closure(source, gens)
    schedule = _closure_schedule(source, gens)

    candidate_lists: list[list[int]] = []
    for pos, x in enumerate(gens):
        if x in fixed:
            candidate_lists.append([fixed[x]])
            continue
        ox = source.element_order(x)
        if injective_only:
            cands = [t for t in target.elements() if target.element_order(t) == ox]
        else:
            cands = [t for t in target.elements() if ox % target.element_order(t) == 0]
        candidate_lists.append(cands)

    total = 1
    for c in candidate_lists:
        total *= len(c)
        if total > max_candidates:
            raise SearchBoundExceeded(
                f"homomorphism search space exceeds {max_candidates}")

    n, nt = source.order, target.order
    found: list[tuple[int, ...]] = []
    for images in itertools.product(*candidate_lists):
        m = [-1] * n
        for elem, kind, data in schedule:
            if kind == "id":
                m[elem] = 0
            elif kind == "gen":
                m[elem] = images[data]
            else:
                a, b = data
                m[elem] = target.table[m[a]][m[b]]
        if injective_only and len(set(m)) != n:
            continue
        ok = True
        for a in range(n):
            ma = m[a]
            row = source.table[a]
            for b in range(n):
                if m[row[b]] != target.table[ma][m[b]]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            found.append(tuple(m))
    found.sort()
    return tuple(Homomorphism(source, target, m) for m in found)


def automorphism_group(g: FiniteGroup,
                       max_order: int = DEFAULT_AUT_BOUND) -> tuple[Homomorphism, ...]:
    """All automorphisms, in lexicographic order of their map arrays."""
    if g.order > max_order:
        raise OrderBoundExceeded(
            f"group order {g.order} exceeds automorphism bound {max_order}")
    return all_homomorphisms(g, g, injective_only=True)


@lru_cache(maxsize=None)
def automorphism_group_table(g: FiniteGroup, max_order: int = DEFAULT_AUT_BOUND):
    """The automorphism group as a FiniteGroup, plus its index-aligned maps.

    Index 0 is the identity automorphism; the product of indices i, j is the
    automorphism a -> aut_i(aut_j(a)).
    """
    auts = automorphism_group(g, max_order)
    index = {a.map: i for i, a in enumerate(auts)}
    k = len(auts)
    table = [[index[tuple(auts[i].map[auts[j].map[x]] for x in g.elements())]
              for j in range(k)] for i in range(k)]
    group = validate_group(table, name=f"Aut({g.name})" if g.name else "Aut")
    return group, auts


def inner_automorphism(g: FiniteGroup, b: int) -> Homomorphism:
    return Homomorphism(g, g, tuple(g.conjugate(b, a) for a in g.elements()))


def enumerate_subgroups(g: FiniteGroup, max_gens: int = 3) -> tuple[Subgroup, ...]:
    """All subgroups generated by at most max_gens elements, sorted by size.

    max_gens = 3 is exhaustive for every group of order <= 15 and for all the
    shipped fixtures.
    """
    seen: set[tuple[int, ...]] = set()
    out: list[Subgroup] = []
    elems = list(g.elements())
    for k in range(max_gens + 1):
        for gens in itertools.combinations(elems, k):
            sub = subgroup_closure(g, gens)
            if sub.members not in seen:
                seen.add(sub.members)
                out.append(sub)
    out.sort(key=lambda s: (s.order, s.members))
    return tuple(out)


def subgroup_as_group(sub: Subgroup, name: str = "") -> tuple[FiniteGroup, Homomorphism]:
    """The abstract group of a subgroup plus its inclusion homomorphism."""
    g = sub.parent
    members = sub.members
    pos = {m: i for i, m in enumerate(members)}
    table = [[pos[g.table[a][b]] for b in members] for a in members]
    labels = tuple(g.label(m) for m in members)
    grp = validate_group(table, labels=labels, name=name)
    return grp, Homomorphism(grp, g, members)


def direct_product(g1: FiniteGroup, g2: FiniteGroup, name: str = "") -> FiniteGroup:
    """Direct product with pairs (a, b) indexed lexicographically."""
    n2 = g2.order
    n = g1.order * n2

    def idx(a, b):
        return a * n2 + b

    table = [[0] * n for _ in range(n)]
    for a1 in g1.elements():
        for b1 in g2.elements():
            i = idx(a1, b1)
            for a2 in g1.elements():
                row1 = g1.table[a1]
                for b2 in g2.elements():
                    table[i][idx(a2, b2)] = idx(row1[a2], g2.table[b1][b2])
    labels = tuple(f"({g1.label(a)},{g2.label(b)})"
                   for a in g1.elements() for b in g2.elements())
    return validate_group(table, labels=labels,
                          name=name or f"{g1.name}x{g2.name}")
