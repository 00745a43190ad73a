"""Equivalence of prolongations, reduction to crossed products, the torsor
action of H^2, class enumeration, and the exhaustive brute-force oracle.

Classification is anchored on differences h2 - h1 of lifts over one shared
canonical section (these are rigorously coefficient-valued); no absolute
class is assigned to a single lift.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .cohomology import Cochain, cohomology_group, is_cocycle
from .crossed import InducedCrossedModule, induce_crossed_module
from .errors import (
    MismatchedFrame,
    NotCocycle,
    NotInKernel,
        ProlongError,
    SearchBoundExceeded,
)
from .extensions import Prolongation, ShortExtension, validate_prolongation
from .groups import Homomorphism, is_bijective
from .obstruction import (
    PreProlongation,
    associativity_witness,
    build_prolongation,
    crossed_product,
    derive,
    lift_factor_set,
    pairing_table,
    verify_covering,
)

DEFAULT_SEARCH_BOUND = 4096
DEFAULT_BRUTE_ORDER = 16
DEFAULT_BRUTE_CANDIDATES = 1 << 20


@dataclass(frozen=True, eq=False)
class EquivalenceWitness:
    """An isomorphism of middle groups realizing an equivalence of ladders."""

    beta_star: Homomorphism
    first: Prolongation
    second: Prolongation


def witness_is_valid(w: EquivalenceWitness) -> bool:
    p1, p2 = w.first, w.second
    bs = w.beta_star
    if bs.source != p1.e.b or bs.target != p2.e.b or not is_bijective(bs):
        return False
    if any(bs.map[p1.e.j.map[a]] != p2.e.j.map[a] for a in p1.e.a.elements()):
        return False
    if any(p2.e.p.map[bs.map[b]] != p1.e.p.map[b] for b in p1.e.b.elements()):
        return False
    if any(bs.map[p1.beta.map[b0]] != p2.beta.map[b0] for b0 in p1.e0.b.elements()):
        return False
    return True


def _require_same_frame(p1: Prolongation, p2: Prolongation) -> None:
    if (p1.e0 != p2.e0 or p1.alpha != p2.alpha or p1.gamma != p2.gamma
            or p1.e.a != p2.e.a or p1.e.g != p2.e.g):
        raise MismatchedFrame("prolongations do not share kernel, base and quotient")


@dataclass(frozen=True, eq=False)
class _Reduction:
    """Canonical section data of a ladder: v over the cokernel, lift h in E0."""

    icm: InducedCrossedModule
    u: tuple[int, ...]
    v: tuple[int, ...]
    h: tuple[tuple[int, ...], ...]
    eps_index: dict


def _reduce(p: Prolongation) -> _Reduction:
    icm = induce_crossed_module(p)
    ind = icm.induced
    u = ind.coker.reps
    b = p.e.b
    pi0 = ind.coker.quotient
    v = []
    for x in pi0.elements():
        v.append(min(bb for bb in b.elements() if p.e.p.map[bb] == u[x]))
    eps_index = {ind.eps.map[e]: e for e in ind.e0_data.quotient.elements()}
    h = []
    for x in pi0.elements():
        row = []
        for y in pi0.elements():
            word = b.mul(b.mul(v[x], v[y]), b.inv[v[pi0.mul(x, y)]])
            row.append(eps_index[word])
        h.append(tuple(row))
    return _Reduction(icm=icm, u=tuple(u), v=tuple(v),
                      h=tuple(tuple(r) for r in h), eps_index=eps_index)


def _pre_of(p: Prolongation, red: _Reduction) -> PreProlongation:
    return PreProlongation(e0=p.e0, alpha=p.alpha, gamma=p.gamma,
                           theta=red.icm.cm.theta)


def to_crossed_product(p: Prolongation) -> tuple[Prolongation, EquivalenceWitness]:
    """An equivalent crossed-product ladder plus the explicit witness.

    The witness sends eps(e0) * v_x to the pair (e0, x); when p already is a
    crossed product over the canonical section this is the identity.
    """
    red = _reduce(p)
    pre = _pre_of(p, red)
    cp = crossed_product(pre, red.u, red.h)
    target = Prolongation(e0=p.e0, e=cp.ext, alpha=p.alpha,
                          beta=cp.beta, gamma=p.gamma)
    ind = red.icm.induced
    pi0 = ind.coker.quotient
    npi = pi0.order
    b = p.e.b
    bmap = []
    for bb in b.elements():
        x = ind.coker.projection.map[p.e.p.map[bb]]
        e = red.eps_index[b.mul(bb, b.inv[red.v[x]])]
        bmap.append(e * npi + x)
    witness = EquivalenceWitness(
        beta_star=Homomorphism(b, cp.ext.b, tuple(bmap)),
        first=p, second=target)
    assert witness_is_valid(witness)
    return target, witness


def are_equivalent(p1: Prolongation, p2: Prolongation,
                   max_candidates: int = DEFAULT_SEARCH_BOUND
                   ) -> EquivalenceWitness | None:
    """Search for an equivalence witness; None when the ladders are inequivalent.

    beta_star is forced on the image of eps by beta_star . beta = beta', so the
    backtracking ranges only over images of the canonical section elements,
    pruned by the section product constraints.
    """
    _require_same_frame(p1, p2)
    red1 = _reduce(p1)
    ind1 = red1.icm.induced
    ind2 = induce_crossed_module(p2).induced
    pi0 = ind1.coker.quotient
    npi = pi0.order
    b1, b2 = p1.e.b, p2.e.b
    eps2 = ind2.eps.map
    # forced part: eps1(e) -> eps2(e)
    candidates: list[list[int]] = [[0]]
    for x in range(1, npi):
        target_g = p1.e.p.map[red1.v[x]]
        candidates.append(sorted(bb for bb in b2.elements()
                                 if p2.e.p.map[bb] == target_g))
    total = 1
    for c in candidates:
        total *= len(c)
    if total > max_candidates:
        raise SearchBoundExceeded(
            f"equivalence search space {total} exceeds {max_candidates}")
    proj1 = ind1.coker.projection.map
    eps_h1 = [[eps2[red1.h[x][y]] for y in range(npi)] for x in range(npi)]

    def assemble(ws: list[int]) -> EquivalenceWitness | None:
        bmap = [0] * b1.order
        for bb in b1.elements():
            x = proj1[p1.e.p.map[bb]]
            e = red1.eps_index[b1.mul(bb, b1.inv[red1.v[x]])]
            bmap[bb] = b2.mul(eps2[e], ws[x])
        if len(set(bmap)) != b1.order:
            return None
        t1, t2 = b1.table, b2.table
        for a in b1.elements():
            ma = bmap[a]
            for bb in b1.elements():
                if bmap[t1[a][bb]] != t2[ma][bmap[bb]]:
                    return None
        witness = EquivalenceWitness(
            beta_star=Homomorphism(b1, b2, tuple(bmap)), first=p1, second=p2)
        return witness if witness_is_valid(witness) else None

    def backtrack(ws: list[int], x: int) -> EquivalenceWitness | None:
        if x == npi:
            return assemble(ws)
        for w in candidates[x]:
            ws.append(w)
            ok = True
            for y in range(1, x + 1):
                for (s, t) in ((x, y), (y, x)):
                    st = pi0.mul(s, t)
                    if st <= x:
                        # v_s v_t = eps(h(s,t)) v_st must be preserved
                        if b2.mul(ws[s], ws[t]) != b2.mul(eps_h1[s][t], ws[st]):
                            ok = False
                            break
                if not ok:
                    break
            if ok:
                found = backtrack(ws, x + 1)
                if found is not None:
                    return found
            ws.pop()
        return None

    return backtrack([0], 1)


def equivalent_extensions(e1: ShortExtension, e2: ShortExtension,
                          max_candidates: int = DEFAULT_SEARCH_BOUND
                          ) -> Homomorphism | None:
    """Equivalence of bare extensions (identity on kernel and quotient)."""
    if e1.a != e2.a or e1.g != e2.g:
        raise MismatchedFrame("extensions do not share kernel and quotient")
    g = e1.g
    b1, b2 = e1.b, e2.b
    v = [min(bb for bb in b1.elements() if e1.p.map[bb] == x) for x in g.elements()]
    j1_index = {e1.j.map[a]: a for a in e1.a.elements()}
    candidates = [[0]] + [sorted(bb for bb in b2.elements() if e2.p.map[bb] == x)
                          for x in list(g.elements())[1:]]
    total = 1
    for c in candidates:
        total *= len(c)
    if total > max_candidates:
        raise SearchBoundExceeded(
            f"equivalence search space {total} exceeds {max_candidates}")
    for ws in itertools.product(*candidates):
        bmap = [0] * b1.order
        for bb in b1.elements():
            x = e1.p.map[bb]
            a = j1_index[b1.mul(bb, b1.inv[v[x]])]
            bmap[bb] = b2.mul(e2.j.map[a], ws[x])
        if len(set(bmap)) != b1.order:
            continue
        ok = True
        for aa in b1.elements():
            for bb in b1.elements():
                if bmap[b1.table[aa][bb]] != b2.table[bmap[aa]][bmap[bb]]:
                    ok = False
                    break
            if not ok:
                break
        if not ok:
            continue
        if any(bmap[e1.j.map[a]] != e2.j.map[a] for a in e1.a.elements()):
            continue
        if any(e2.p.map[bmap[bb]] != e1.p.map[bb] for bb in b1.elements()):
            continue
        return Homomorphism(b1, b2, tuple(bmap))
    return None


def difference_cocycle(p1: Prolongation, p2: Prolongation) -> Cochain:
    """The class difference r = h2 - h1 of two coverings of one pre-prolongation.

    Both ladders are reduced over the same canonical section, so r lands in
    the identified kernel; it is verified to be a 2-cocycle of the induced
    module.
    """
    _require_same_frame(p1, p2)
    red1, red2 = _reduce(p1), _reduce(p2)
    if red1.icm.cm.theta != red2.icm.cm.theta:
        raise MismatchedFrame("prolongations induce different theta")
    pre = _pre_of(p1, red1)
    d = derive(pre)
    e0, pi0 = d.e0, d.pi0
    i_index = {d.i.map[a]: a for a in d.module.a.elements()}
    values = []
    for x in pi0.elements():
        for y in pi0.elements():
            r = e0.mul(red2.h[x][y], e0.inv[red1.h[x][y]])
            if r not in i_index:
                raise NotInKernel(
                    f"difference at ({x}, {y}) lies outside the identified kernel")
            values.append(i_index[r])
    c = Cochain(d.module, 2, tuple(values))
    if not is_cocycle(c):
        raise NotCocycle("difference of lifts fails the 2-cocycle identity")
    return c


def classifying_cocycle_relative(p: Prolongation, base: Prolongation) -> Cochain:
    """The class of p relative to a chosen base covering.

    Single lifts carry no well-defined coefficient-valued class of their own
    (their values only lie in the kernel after taking differences), so the
    relative form is the only absolute-style invariant exposed.
    """
    return difference_cocycle(base, p)


def torsor_act(tau, p: Prolongation) -> Prolongation:
    """Act on a covering by an H^2 class given in basis coordinates.

    Reduces p to crossed-product form, shifts the lift by the representative
    cocycle of tau transported into E0, and rebuilds.
    """
    red = _reduce(p)
    pre = _pre_of(p, red)
    d = derive(pre)
    h2 = cohomology_group(2, d.module)
    rep = h2.from_coordinates(tau)
    e0, pi0 = d.e0, d.pi0
    h_new = tuple(
        tuple(e0.mul(red.h[x][y], d.i.map[rep.value((x, y))])
              for y in pi0.elements())
        for x in pi0.elements())
    cp = crossed_product(pre, red.u, h_new)
    return Prolongation(e0=p.e0, e=cp.ext, alpha=p.alpha,
                        beta=cp.beta, gamma=p.gamma)


@dataclass(frozen=True, eq=False)
class ProlongationClass:
    """A canonical crossed-product representative with its H^2 coordinates
    relative to the enumeration's base covering."""

    representative: Prolongation
    coordinates: tuple[int, ...]


def enumerate_classes(pre: PreProlongation,
                      verify_distinct: bool = False) -> tuple[ProlongationClass, ...]:
    """One class per element of H^2, obtained by acting on the base covering."""
    base = build_prolongation(pre).prolongation
    h2 = cohomology_group(2, derive(pre).module)
    classes = []
    for coords in itertools.product(*(range(d) for d in h2.invariant_factors)):
        rep = torsor_act(coords, base)
        classes.append(ProlongationClass(representative=rep, coordinates=coords))
    if verify_distinct:
        for i in range(len(classes)):
            for j in range(i + 1, len(classes)):
                if are_equivalent(classes[i].representative,
                                  classes[j].representative) is not None:
                    raise ProlongError(
                        f"classes {classes[i].coordinates} and "
                        f"{classes[j].coordinates} are equivalent")
    return tuple(classes)


def brute_force_coverings(pre: PreProlongation,
                          max_order: int = DEFAULT_BRUTE_ORDER,
                          max_candidates: int = DEFAULT_BRUTE_CANDIDATES
                          ) -> tuple[Prolongation, ...]:
    """Exhaustive covering search, independent of the H^2/torsor machinery.

    Enumerates every normalized lift h of the canonical factor set, keeps the
    ones whose twisted pairing is associative, assembles the ladders, filters
    by the induced theta, and deduplicates with the equivalence search.
    """
    d = derive(pre)
    total_order = d.module.a.order * pre.g.order
    if total_order > max_order:
        raise SearchBoundExceeded(
            f"middle group order {total_order} exceeds {max_order}")
    lfs = lift_factor_set(pre)
    e0, pi0 = d.e0, d.pi0
    npi = pi0.order
    fibers: dict[int, list[int]] = {}
    for e in e0.elements():
        fibers.setdefault(d.gammapi.map[e], []).append(e)
    positions = [(x, y) for x in range(1, npi) for y in range(1, npi)]
    count = 1
    for (x, y) in positions:
        count *= len(fibers[lfs.f[x][y]])
        if count > max_candidates:
            raise SearchBoundExceeded(
                f"lift enumeration exceeds {max_candidates} candidates")
    phi = tuple(pre.theta[lfs.u[x]] for x in pi0.elements())
    found = []
    for combo in itertools.product(*(fibers[lfs.f[x][y]] for (x, y) in positions)):
        h = [[0] * npi for _ in range(npi)]
        for (x, y), e in zip(positions, combo):
            h[x][y] = e
        table = pairing_table(e0, npi, pi0.table, phi, h)
        if associativity_witness(table) is not None:
            continue
        cp = crossed_product(pre, lfs.u, h)
        p = Prolongation(e0=pre.e0, e=cp.ext, alpha=pre.alpha,
                         beta=cp.beta, gamma=pre.gamma)
        assert validate_prolongation(p).ok
        if not verify_covering(p, pre):
            continue
        found.append(p)
    found.sort(key=lambda p: p.e.b.table)
    reps: list[Prolongation] = []
    for p in found:
        if not any(are_equivalent(p, q) is not None for q in reps):
            reps.append(p)
    return tuple(reps)
