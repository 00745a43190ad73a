"""Pre-prolongation data, factor-set lifting, the degree-3 obstruction class,
and the crossed-product construction that realizes a covering when it vanishes.

The obstruction cocycle k is materialized inside the (possibly nonabelian)
quotient group E0 and only then transported into the coefficients: both the
left and the right subtraction of the defining relation are computed and
compared, turning the centrality of k into an executable assertion.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache

from .cohomology import (
    Cochain,
    CohomologyGroup,
    cohomology_group,
    is_coboundary,
    is_cocycle,
    PiModule,
)
from .crossed import (
    CrossedModule,
    check_crossed_module,
    induce_crossed_module,
    induced_module_action,
    make_crossed_module,
)
from .errors import (
    CheckItem,
    MismatchedBase,
    NotCentralValue,
    NotCocycle,
    NotInKernel,
    ObstructionNonzero,
    PairingNotAssociative,
    PreconditionFailed,
    ValidationReport,
)
from .extensions import (
    Prolongation,
    ShortExtension,
    extension_checks,
    is_central,
    make_extension,
    validate_prolongation,
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
class PreProlongation:
    """The data (alpha, gamma, theta) over a central row e0.

    theta is indexed by the big quotient group (gamma's target) and acts on
    E0 = B0 / j0(ker alpha) through its canonical coset indexing.
    """

    e0: ShortExtension
    alpha: Homomorphism
    gamma: Homomorphism
    theta: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "theta", tuple(tuple(p) for p in self.theta))

    @property
    def g(self) -> FiniteGroup:
        return self.gamma.target

    @property
    def a(self) -> FiniteGroup:
        return self.alpha.target


@dataclass(frozen=True, eq=False)
class PreDerived:
    """Everything derived from a pre-prolongation, computed once and cached."""

    pre: PreProlongation
    e0_data: QuotientData
    e0: FiniteGroup
    pi: Homomorphism          # E0 -> G0
    i: Homomorphism           # A -> E0, image = ker pi
    top: ShortExtension       # 0 -> A -> E0 -> G0 -> 0
    coker: QuotientData       # G / gamma(G0), projection sigma
    pi0: FiniteGroup
    gammapi: Homomorphism     # E0 -> G
    cm: CrossedModule
    module: PiModule


def _kernel_in_b0(pre: PreProlongation) -> Subgroup:
    members = tuple(sorted(pre.e0.j.map[a0]
                           for a0 in kernel(pre.alpha).members))
    return Subgroup(pre.e0.b, members)


@lru_cache(maxsize=None)
def derive(pre: PreProlongation) -> PreDerived:
    if pre.alpha.source != pre.e0.a:
        raise ValueError("alpha must start at the kernel group of the base row")
    if pre.gamma.source != pre.e0.g:
        raise ValueError("gamma must start at the quotient group of the base row")
    e0_data = quotient(pre.e0.b, _kernel_in_b0(pre))
    e0 = e0_data.quotient
    pi = Homomorphism(e0, pre.e0.g, tuple(pre.e0.p.map[r] for r in e0_data.reps))
    a = pre.a
    i_map = []
    for aa in a.elements():
        a0 = min(x for x in pre.e0.a.elements() if pre.alpha.map[x] == aa)
        i_map.append(e0_data.projection.map[pre.e0.j.map[a0]])
    i = Homomorphism(a, e0, tuple(i_map))
    top = make_extension(i, pi)
    coker = cokernel(pre.gamma)
    gammapi = compose(pre.gamma, pi)
    cm = make_crossed_module(e0, pre.g, gammapi, pre.theta)
    module = induced_module_action(cm, i, coker)
    return PreDerived(pre=pre, e0_data=e0_data, e0=e0, pi=pi, i=i, top=top,
                      coker=coker, pi0=coker.quotient, gammapi=gammapi,
                      cm=cm, module=module)


def validate_pre(pre: PreProlongation) -> ValidationReport:
    """Itemized report of all the pre-prolongation invariants; never raises."""
    items: list[CheckItem] = []
    wired = (pre.alpha.source == pre.e0.a and pre.gamma.source == pre.e0.g)
    items.append(CheckItem("wiring", wired))
    if not wired:
        return ValidationReport(tuple(items))
    items.extend(extension_checks(pre.e0, "e0_"))
    items.append(CheckItem("e0_central", is_central(pre.e0)))
    items.append(CheckItem("alpha_epi", is_surjective(pre.alpha)))
    gamma_mono = is_injective(pre.gamma)
    items.append(CheckItem("gamma_mono", gamma_mono))
    if not gamma_mono or not all(item.ok for item in items):
        return ValidationReport(tuple(items))
    items.append(CheckItem("gamma_image_normal", is_normal(image(pre.gamma))))
    if not items[-1].ok:
        return ValidationReport(tuple(items))
    e0_data = quotient(pre.e0.b, _kernel_in_b0(pre))
    e0 = e0_data.quotient
    pi = Homomorphism(e0, pre.e0.g, tuple(pre.e0.p.map[r] for r in e0_data.reps))
    gammapi = compose(pre.gamma, pi)
    shape_ok = (len(pre.theta) == pre.g.order
                and all(len(p) == e0.order for p in pre.theta))
    items.append(CheckItem("theta_shape", shape_ok))
    if not shape_ok:
        return ValidationReport(tuple(items))
    cm = CrossedModule(b=e0, d_group=pre.g, d=gammapi, theta=pre.theta)
    cm_report = check_crossed_module(cm)
    for item in cm_report.items:
        items.append(CheckItem("crossed_" + item.name, item.ok, item.detail))
    if not cm_report.ok:
        return ValidationReport(tuple(items))
    ze0 = set(center(e0).members)
    a = pre.a
    i_map = []
    for aa in a.elements():
        a0 = min(x for x in pre.e0.a.elements() if pre.alpha.map[x] == aa)
        i_map.append(e0_data.projection.map[pre.e0.j.map[a0]])
    items.append(CheckItem("kernel_central_in_e0",
                           all(x in ze0 for x in i_map)))
    try:
        derive(pre)
        items.append(CheckItem("module_action", True))
    except Exception as exc:  # report-style: fold any derivation failure in
        items.append(CheckItem("module_action", False, str(exc)))
    return ValidationReport(tuple(items))


@dataclass(frozen=True)
class LiftedFactorSet:
    """A section u of sigma, its factor set f, and a lift h of f into E0.

    f takes values in gamma(G0) inside the big group; h satisfies
    gammapi(h(x, y)) = f(x, y) and is normalized like f.
    """

    pre: PreProlongation
    u: tuple[int, ...]
    f: tuple[tuple[int, ...], ...]
    h: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "u", tuple(self.u))
        object.__setattr__(self, "f", tuple(tuple(r) for r in self.f))
        object.__setattr__(self, "h", tuple(tuple(r) for r in self.h))


def _coset_members(coker: QuotientData) -> list[list[int]]:
    members: list[list[int]] = [[] for _ in coker.quotient.elements()]
    for g in coker.parent.elements():
        members[coker.projection.map[g]].append(g)
    return members


def lift_factor_set(pre: PreProlongation,
                    rng: random.Random | None = None) -> LiftedFactorSet:
    """Build u, f and a lift h; canonical choices are least-index everywhere.

    A seeded rng replaces both the section and the lift by random fiber picks
    (still normalized), for choice-independence tests.
    """
    d = derive(pre)
    g = pre.g
    pi0 = d.pi0
    cosets = _coset_members(d.coker)
    u = []
    for x in pi0.elements():
        if x == 0 or rng is None:
            u.append(cosets[x][0])
        else:
            u.append(rng.choice(cosets[x]))
    gamma_image = set(image(pre.gamma).members)
    f = []
    for x in pi0.elements():
        row = []
        for y in pi0.elements():
            val = g.mul(g.mul(u[x], u[y]), g.inv[u[pi0.mul(x, y)]])
            assert val in gamma_image, "factor set must land in the image of gamma"
            row.append(val)
        f.append(tuple(row))
    fibers: dict[int, list[int]] = {}
    for e in d.e0.elements():
        fibers.setdefault(d.gammapi.map[e], []).append(e)
    h = []
    for x in pi0.elements():
        row = []
        for y in pi0.elements():
            if x == 0 or y == 0:
                row.append(0)
            elif rng is None:
                row.append(fibers[f[x][y]][0])
            else:
                row.append(rng.choice(fibers[f[x][y]]))
        h.append(tuple(row))
    return LiftedFactorSet(pre=pre, u=tuple(u), f=tuple(f), h=tuple(h))


def obstruction_cocycle(lfs: LiftedFactorSet) -> Cochain:
    """The degree-3 cochain measuring the failure of h to be a cocycle.

    For each triple, L = phi(x)h(y,z) * h(x,yz) and R = h(x,y) * h(xy,z) are
    formed in E0; the two subtractions R^-1 L and L R^-1 must agree (k is
    central), land in the identified kernel, and assemble into a 3-cocycle.
    """
    d = derive(lfs.pre)
    e0, pi0 = d.e0, d.pi0
    phi = tuple(lfs.pre.theta[lfs.u[x]] for x in pi0.elements())
    i_index = {d.i.map[a]: a for a in d.module.a.elements()}
    h = lfs.h
    for x in pi0.elements():
        for y in pi0.elements():
            if d.gammapi.map[h[x][y]] != lfs.f[x][y]:
                raise NotInKernel(
                    f"lift value at ({x}, {y}) lies outside its fiber")
    values = []
    for x in pi0.elements():
        for y in pi0.elements():
            xy = pi0.mul(x, y)
            for z in pi0.elements():
                left = e0.mul(phi[x][h[y][z]], h[x][pi0.mul(y, z)])
                right = e0.mul(h[x][y], h[xy][z])
                k_left = e0.mul(left, e0.inv[right])
                k_right = e0.mul(e0.inv[right], left)
                if k_left != k_right:
                    raise NotCentralValue(
                        f"obstruction value at ({x}, {y}, {z}) is not central")
                if k_left not in i_index:
                    raise NotInKernel(
                        f"obstruction value at ({x}, {y}, {z}) lies outside i(A)")
                values.append(i_index[k_left])
    c = Cochain(d.module, 3, tuple(values))
    if not is_cocycle(c):
        raise NotCocycle("obstruction cochain fails the cocycle identity")
    return c


@dataclass(frozen=True, eq=False)
class ObstructionResult:
    h3: CohomologyGroup
    coordinates: tuple[int, ...]
    cocycle: Cochain
    lift: LiftedFactorSet

    @property
    def vanishes(self) -> bool:
        return all(c == 0 for c in self.coordinates)


def obstruction_class(pre: PreProlongation,
                      rng: random.Random | None = None) -> ObstructionResult:
    """Class coordinates of the obstruction in H^3 of the induced module."""
    lfs = lift_factor_set(pre, rng=rng)
    k = obstruction_cocycle(lfs)
    h3 = cohomology_group(3, derive(pre).module)
    return ObstructionResult(h3=h3, coordinates=h3.coordinates(k),
                             cocycle=k, lift=lfs)


# ---------------------------------------------------------------------------
# Crossed products
# ---------------------------------------------------------------------------

def pairing_table(e0: FiniteGroup, npi: int, pi0_table, phi, h) -> list[list[int]]:
    """Raw Cayley table of the twisted pairing on pairs (e, x), lex-indexed.

    (e, x) * (e', y) = (e * phi(x)e' * h(x, y), x y); no axioms are checked.
    """
    n = e0.order * npi
    table = [[0] * n for _ in range(n)]
    for e in e0.elements():
        for x in range(npi):
            row = table[e * npi + x]
            phix = phi[x]
            for e2 in e0.elements():
                left = e0.mul(e, phix[e2])
                for y in range(npi):
                    row[e2 * npi + y] = (e0.mul(left, h[x][y]) * npi
                                         + pi0_table[x][y])
    return table


def associativity_witness(table) -> tuple[int, int, int] | None:
    n = len(table)
    for a in range(n):
        ra = table[a]
        for b in range(n):
            rab = table[ra[b]]
            rb = table[b]
            for c in range(n):
                if rab[c] != ra[rb[c]]:
                    return (a, b, c)
    return None


@dataclass(frozen=True, eq=False)
class CrossedProductExtension:
    """A crossed product together with its extension maps and beta into it."""

    ext: ShortExtension       # 0 -> A -> B_h -> G -> 0
    beta: Homomorphism        # B0 -> B_h
    u: tuple[int, ...]
    h: tuple[tuple[int, ...], ...]

    def pair(self, index: int) -> tuple[int, int]:
        """Decode an element index of B_h into its (e0, x) pair."""
        npi = len(self.h)
        return divmod(index, npi)


def crossed_product(pre: PreProlongation, u, h) -> CrossedProductExtension:
    """Build B_h = pairs (e0, x) under the twisted operation, plus j', p', beta.

    Preconditions checked first: phi is a homomorphism twisted by inner
    automorphisms of h, and h satisfies the cocycle identity.  Violations
    raise PreconditionFailed with the offending tuple; a pairing that still
    fails associativity raises PairingNotAssociative.
    """
    d = derive(pre)
    e0, pi0, g = d.e0, d.pi0, pre.g
    npi = pi0.order
    u = tuple(u)
    h = tuple(tuple(row) for row in h)
    phi = tuple(pre.theta[u[x]] for x in pi0.elements())
    for x in pi0.elements():
        for y in pi0.elements():
            xy = pi0.mul(x, y)
            composed = tuple(phi[x][phi[y][e]] for e in e0.elements())
            twisted = tuple(e0.conjugate(h[x][y], phi[xy][e]) for e in e0.elements())
            if composed != twisted:
                raise PreconditionFailed("twisted-homomorphism", (x, y))
    for x in pi0.elements():
        for y in pi0.elements():
            xy = pi0.mul(x, y)
            for z in pi0.elements():
                lhs = e0.mul(phi[x][h[y][z]], h[x][pi0.mul(y, z)])
                rhs = e0.mul(h[x][y], h[xy][z])
                if lhs != rhs:
                    raise PreconditionFailed("cocycle", (x, y, z))
    table = pairing_table(e0, npi, pi0.table, phi, h)
    witness = associativity_witness(table)
    if witness is not None:
        raise PairingNotAssociative(witness)
    labels = tuple(f"({e0.label(e)},{pi0.label(x)})"
                   for e in e0.elements() for x in pi0.elements())
    bh = validate_group(table, labels=labels,
                        name=f"[{e0.name or 'E0'};{pi0.name or 'Pi0'}]")
    jmap = tuple(d.i.map[a] * npi for a in d.module.a.elements())
    pmap = tuple(g.mul(d.gammapi.map[e], u[x])
                 for e in e0.elements() for x in pi0.elements())
    ext = make_extension(Homomorphism(d.module.a, bh, jmap),
                         Homomorphism(bh, g, pmap))
    beta = Homomorphism(pre.e0.b, bh,
                        tuple(d.e0_data.projection.map[b0] * npi
                              for b0 in pre.e0.b.elements()))
    return CrossedProductExtension(ext=ext, beta=beta, u=u, h=h)


@dataclass(frozen=True, eq=False)
class BuildResult:
    prolongation: Prolongation
    crossed: CrossedProductExtension
    obstruction: ObstructionResult
    h_adjusted: tuple[tuple[int, ...], ...]


def build_prolongation(pre: PreProlongation,
                       rng: random.Random | None = None) -> BuildResult:
    """Realize a covering when the obstruction vanishes, else raise.

    When the class is zero, k = d(l) is solved exactly, h is corrected to
    h' = h - i(l), and the crossed product on h' is assembled into a full
    ladder with beta'(b0) = (b0 + ker, 1).
    """
    d = derive(pre)
    res = obstruction_class(pre, rng=rng)
    if not res.vanishes:
        raise ObstructionNonzero(res.coordinates, res.h3.invariant_factors)
    correction = is_coboundary(res.cocycle)
    assert correction is not None, "a vanishing class must be a coboundary"
    e0, pi0 = d.e0, d.pi0
    h = res.lift.h
    h_adj = tuple(
        tuple(e0.mul(h[x][y], e0.inv[d.i.map[correction.value((x, y))]])
              for y in pi0.elements())
        for x in pi0.elements())
    cp = crossed_product(pre, res.lift.u, h_adj)
    p = Prolongation(e0=pre.e0, e=cp.ext, alpha=pre.alpha,
                     beta=cp.beta, gamma=pre.gamma)
    assert validate_prolongation(p).ok, "constructed ladder must validate"
    assert verify_covering(p, pre), "constructed ladder must induce theta"
    return BuildResult(prolongation=p, crossed=cp, obstruction=res,
                       h_adjusted=h_adj)


def verify_covering(p: Prolongation, pre: PreProlongation) -> bool:
    """True iff the ladder induces exactly the theta of the pre-prolongation."""
    if p.e0 != pre.e0 or p.alpha != pre.alpha or p.gamma != pre.gamma:
        raise MismatchedBase("ladder and pre-prolongation share no common base")
    icm = induce_crossed_module(p)
    return icm.cm.theta == pre.theta
