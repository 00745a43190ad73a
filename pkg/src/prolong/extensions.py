"""Short exact sequences, sections and factor sets, pullbacks, and ladders.

A ladder (Prolongation) is a pair of short exact sequences connected by
vertical maps alpha, beta, gamma with commuting squares; the top row is
required to be central, alpha surjective and gamma an injection with normal
image.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import (
    CheckItem,
    InvalidProlongation,
    NotExact,
    NotInjective,
    NotSurjective,
    ValidationReport,
    ValueOutsideExpectedSubgroup,
)
from .groups import (
    FiniteGroup,
    Homomorphism,
    QuotientData,
    Subgroup,
    center,
    cokernel,
    compose,
    image,
    is_injective,
    is_normal,
    is_surjective,
    kernel,
    quotient,
    validate_group,
)


@dataclass(frozen=True)
class ShortExtension:
    """0 -> a -j-> b -p-> g -> 1 (exactness is checked by make_extension)."""

    a: FiniteGroup
    b: FiniteGroup
    g: FiniteGroup
    j: Homomorphism
    p: Homomorphism


def extension_checks(ext: ShortExtension, prefix: str = "") -> list[CheckItem]:
    items = []
    wired = (ext.j.source == ext.a and ext.j.target == ext.b
             and ext.p.source == ext.b and ext.p.target == ext.g)
    items.append(CheckItem(prefix + "wiring", wired))
    if not wired:
        return items
    items.append(CheckItem(prefix + "j_injective", is_injective(ext.j)))
    items.append(CheckItem(prefix + "p_surjective", is_surjective(ext.p)))
    exact = set(ext.j.map) == set(kernel(ext.p).members)
    items.append(CheckItem(prefix + "exact_at_b", exact,
                           "" if exact else "image(j) != kernel(p)"))
    return items


def make_extension(j: Homomorphism, p: Homomorphism) -> ShortExtension:
    if j.target != p.source:
        raise ValueError("j and p are not composable")
    if not is_injective(j):
        raise NotInjective("kernel map is not injective")
    if not is_surjective(p):
        raise NotSurjective("projection is not surjective")
    if set(j.map) != set(kernel(p).members):
        raise NotExact("image(j) != kernel(p)")
    return ShortExtension(a=j.source, b=j.target, g=p.target, j=j, p=p)


def is_central(ext: ShortExtension) -> bool:
    zb = set(center(ext.b).members)
    return all(x in zb for x in ext.j.map)


@dataclass(frozen=True)
class Section:
    """A set-theoretic section of p, stored as the representative array u."""

    ext: ShortExtension
    u: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "u", tuple(self.u))
        if self.u[0] != 0:
            raise ValueError("sections must send the identity to the identity")
        for g, b in enumerate(self.u):
            if self.ext.p.map[b] != g:
                raise ValueError(f"u[{g}] = {b} is not in the fiber over {g}")


def choose_section(ext: ShortExtension, rng: random.Random | None = None) -> Section:
    """Least-index representative per fiber; a seeded rng picks random ones.

    u[0] = 0 always, so factor sets built from the section are normalized.
    """
    u = []
    for g in ext.g.elements():
        fiber = [b for b in ext.b.elements() if ext.p.map[b] == g]
        if g == 0 or rng is None:
            u.append(fiber[0])
        else:
            u.append(rng.choice(fiber))
    return Section(ext=ext, u=tuple(u))


@dataclass(frozen=True)
class FactorSet:
    """f(x, y) = u_x u_y (u_{xy})^-1, translated to kernel-side indices."""

    ext: ShortExtension
    section: Section
    f: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "f", tuple(tuple(row) for row in self.f))


def factor_set(ext: ShortExtension, section: Section) -> FactorSet:
    if section.ext != ext:
        raise ValueError("section does not belong to this extension")
    b, g = ext.b, ext.g
    j_index = {ext.j.map[a]: a for a in ext.a.elements()}
    u = section.u
    f = []
    for x in g.elements():
        row = []
        for y in g.elements():
            val = b.mul(b.mul(u[x], u[y]), b.inv[u[g.mul(x, y)]])
            if val not in j_index:
                raise ValueOutsideExpectedSubgroup(
                    f"factor set value at ({x}, {y}) lies outside image(j)")
            row.append(j_index[val])
        f.append(tuple(row))
    return FactorSet(ext=ext, section=section, f=tuple(f))


def check_factor_identity(ext: ShortExtension, section: Section, fs: FactorSet) -> bool:
    """The associativity identity mu_{u_x} f(y,z) * f(x,yz) = f(x,y) * f(xy,z)."""
    b, g = ext.b, ext.g
    u = section.u
    jf = [[ext.j.map[fs.f[x][y]] for y in g.elements()] for x in g.elements()]
    for x in g.elements():
        for y in g.elements():
            xy = g.mul(x, y)
            for z in g.elements():
                lhs = b.mul(b.conjugate(u[x], jf[y][z]), jf[x][g.mul(y, z)])
                rhs = b.mul(jf[x][y], jf[xy][z])
                if lhs != rhs:
                    return False
    return True


@dataclass(frozen=True)
class PullbackExtension:
    """The pulled-back extension along a map into the quotient.

    pairs[i] is the (b, c) pair represented by index i of ext.b; to_base is the
    first projection back to the original middle group.
    """

    ext: ShortExtension
    to_base: Homomorphism
    pairs: tuple[tuple[int, int], ...]


def pullback(ext: ShortExtension, along: Homomorphism) -> PullbackExtension:
    if along.target != ext.g:
        raise ValueError("pullback map must land in the quotient of the extension")
    cprime = along.source
    pairs = [(b, c) for b in ext.b.elements() for c in cprime.elements()
             if ext.p.map[b] == along.map[c]]
    index = {pc: i for i, pc in enumerate(pairs)}
    n = len(pairs)
    table = [[0] * n for _ in range(n)]
    for i, (b1, c1) in enumerate(pairs):
        for k, (b2, c2) in enumerate(pairs):
            table[i][k] = index[(ext.b.mul(b1, b2), cprime.mul(c1, c2))]
    labels = tuple(f"({ext.b.label(b)},{cprime.label(c)})" for b, c in pairs)
    bprime = validate_group(table, labels=labels,
                            name=f"{ext.b.name}x_{{{ext.g.name}}}{cprime.name}")
    jprime = Homomorphism(ext.a, bprime,
                          tuple(index[(ext.j.map[a], 0)] for a in ext.a.elements()))
    pprime = Homomorphism(bprime, cprime, tuple(c for _, c in pairs))
    to_base = Homomorphism(bprime, ext.b, tuple(b for b, _ in pairs))
    return PullbackExtension(ext=make_extension(jprime, pprime),
                             to_base=to_base, pairs=tuple(pairs))


@dataclass(frozen=True)
class Prolongation:
    """The full two-row ladder: e0 on top, e below, joined by alpha/beta/gamma."""

    e0: ShortExtension
    e: ShortExtension
    alpha: Homomorphism
    beta: Homomorphism
    gamma: Homomorphism


def validate_prolongation(p: Prolongation) -> ValidationReport:
    """Full report of the ladder invariants; never raises."""
    items: list[CheckItem] = []
    wired = (p.alpha.source == p.e0.a and p.alpha.target == p.e.a
             and p.beta.source == p.e0.b and p.beta.target == p.e.b
             and p.gamma.source == p.e0.g and p.gamma.target == p.e.g)
    items.append(CheckItem("wiring", wired))
    if not wired:
        return ValidationReport(tuple(items))
    items.extend(extension_checks(p.e0, "e0_"))
    items.extend(extension_checks(p.e, "e_"))
    if not all(item.ok for item in items):
        return ValidationReport(tuple(items))
    items.append(CheckItem("e0_central", is_central(p.e0)))
    items.append(CheckItem("alpha_epi", is_surjective(p.alpha)))
    gamma_mono = is_injective(p.gamma)
    items.append(CheckItem("gamma_mono", gamma_mono))
    if gamma_mono:
        items.append(CheckItem("gamma_image_normal", is_normal(image(p.gamma))))
    else:
        items.append(CheckItem("gamma_image_normal", False, "gamma not injective"))
    left = all(p.beta.map[p.e0.j.map[a0]] == p.e.j.map[p.alpha.map[a0]]
               for a0 in p.e0.a.elements())
    items.append(CheckItem("left_square", left,
                           "" if left else "beta . j0 != j . alpha"))
    right = all(p.e.p.map[p.beta.map[b0]] == p.gamma.map[p.e0.p.map[b0]]
                for b0 in p.e0.b.elements())
    items.append(CheckItem("right_square", right,
                           "" if right else "p . beta != gamma . p0"))
    ker_beta = set(kernel(p.beta).members)
    j0_ker_alpha = {p.e0.j.map[a0] for a0 in kernel(p.alpha).members}
    items.append(CheckItem("kernel_beta", ker_beta == j0_ker_alpha,
                           "" if ker_beta == j0_ker_alpha
                           else "kernel(beta) != j0(kernel(alpha))"))
    return ValidationReport(tuple(items))


@dataclass(frozen=True, eq=False)
class InducedSequence:
    """The sequence 0 -> E0 -> B -> Pi0 -> 1 induced by a valid ladder.

    E0 = B0 / j0(ker alpha) with eps(b0 + ker) = beta(b0); i and pi form the
    identified top row 0 -> A -> E0 -> G0 -> 0, and coker is the cokernel data
    of gamma with its natural projection sigma.
    """

    seq: ShortExtension
    eps: Homomorphism
    i: Homomorphism
    pi: Homomorphism
    e0_data: QuotientData
    coker: QuotientData
    top: ShortExtension


def induced_sequence(p: Prolongation) -> InducedSequence:
    report = validate_prolongation(p)
    if not report.ok:
        raise InvalidProlongation(report)
    b0 = p.e0.b
    ker_members = tuple(sorted(p.e0.j.map[a0] for a0 in kernel(p.alpha).members))
    e0_data = quotient(b0, Subgroup(b0, ker_members))
    e0 = e0_data.quotient
    eps = Homomorphism(e0, p.e.b, tuple(p.beta.map[r] for r in e0_data.reps))
    for x in b0.elements():
        assert eps.map[e0_data.projection.map[x]] == p.beta.map[x]
    coker = cokernel(p.gamma)
    seq = make_extension(eps, compose(coker.projection, p.e.p))
    a = p.e.a
    i_map = []
    for aa in a.elements():
        a0 = min(x for x in p.e0.a.elements() if p.alpha.map[x] == aa)
        i_map.append(e0_data.projection.map[p.e0.j.map[a0]])
    i = Homomorphism(a, e0, tuple(i_map))
    pi = Homomorphism(e0, p.e0.g, tuple(p.e0.p.map[r] for r in e0_data.reps))
    top = make_extension(i, pi)
    assert compose(eps, i).map == p.e.j.map
    assert compose(p.e.p, eps).map == compose(p.gamma, pi).map
    return InducedSequence(seq=seq, eps=eps, i=i, pi=pi,
                           e0_data=e0_data, coker=coker, top=top)
