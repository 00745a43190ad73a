"""Systematic generation of small pre-prolongations for exhaustive testing.

Enumerates central rows from the fixture groups, injections gamma with small
cokernel, and every homomorphism theta passing the crossed-module axioms.
The enumeration is deterministic, so sweep results are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidCrossedModule, KernelNotPreserved, FiberDependentAction
from .extensions import ShortExtension, make_extension
from .fixtures import builtin, builtin_names
from .groups import (
    FiniteGroup,
    Homomorphism,
    Subgroup,
    all_homomorphisms,
    automorphism_group_table,
    center,
    compose,
    enumerate_subgroups,
    image,
    is_normal,
    kernel,
    quotient,
    subgroup_as_group,
)
from .obstruction import PreProlongation, derive


@dataclass(frozen=True)
class SweepConfig:
    """Bounds of the generated sweep (inclusive)."""

    max_kernel: int = 3      # |A|
    max_cokernel: int = 3    # |Pi0|
    max_e0: int = 8          # |E0| (enforced through |B0|)
    max_total: int = 16      # |A| * |G| = order of any covering
    base_names: tuple[str, ...] = ()   # default: all fixtures of order <= max_e0


def _central_rows(cfg: SweepConfig):
    """(row, a0_group) pairs: central extensions A0 -> B0 -> G0 from fixtures."""
    names = cfg.base_names or tuple(
        n for n in builtin_names() if builtin(n).order <= cfg.max_e0)
    for name in names:
        b0 = builtin(name)
        zb0 = set(center(b0).members)
        for sub in enumerate_subgroups(b0):
            if not all(m in zb0 for m in sub.members):
                continue
            a0, inclusion = subgroup_as_group(sub, name=f"{name}^sub")
            q = quotient(b0, sub)
            yield make_extension(inclusion, q.projection), a0


def _gammas(g0: FiniteGroup, cfg: SweepConfig):
    """Injective normal-image maps out of g0, one per image subgroup."""
    targets = [builtin(n) for n in builtin_names()
               if builtin(n).order % g0.order == 0]
    for g in targets:
        seen_images = set()
        try:
            homs = all_homomorphisms(g0, g, injective_only=True)
        except Exception:
            continue
        for gamma in homs:
            img = image(gamma)
            if img.members in seen_images:
                continue
            seen_images.add(img.members)
            if not is_normal(img):
                continue
            if g.order // g0.order > cfg.max_cokernel:
                continue
            yield gamma


def _thetas(pre_frame: tuple[ShortExtension, Homomorphism, Homomorphism]):
    """All homomorphisms theta with the C1-forced values on the image of gamma."""
    e0row, alpha, gamma = pre_frame
    members = tuple(sorted(e0row.j.map[a0] for a0 in kernel(alpha).members))
    e0_data = quotient(e0row.b, Subgroup(e0row.b, members))
    e0 = e0_data.quotient
    pi = Homomorphism(e0, e0row.g, tuple(e0row.p.map[r] for r in e0_data.reps))
    gammapi = compose(gamma, pi)
    aut_group, auts = automorphism_group_table(e0)
    aut_index = {a.map: i for i, a in enumerate(auts)}
    # C1 forces theta on gamma(G0): theta[gammapi(e)] = conjugation by e
    fixed: dict[int, int] = {}
    consistent = True
    for e in e0.elements():
        mu = tuple(e0.conjugate(e, x) for x in e0.elements())
        key = gammapi.map[e]
        idx = aut_index.get(mu)
        if idx is None:
            consistent = False
            break
        if key in fixed and fixed[key] != idx:
            consistent = False
            break
        fixed[key] = idx
    if not consistent:
        return
    g = gamma.target
    try:
        homs = all_homomorphisms(g, aut_group, fixed=fixed)
    except Exception:
        return
    for hom in homs:
        yield tuple(auts[hom.map[x]].map for x in g.elements())


def generate_pre_prolongations(cfg: SweepConfig = SweepConfig()
                               ) -> tuple[PreProlongation, ...]:
    """Every valid pre-prolongation inside the configured bounds."""
    found: list[PreProlongation] = []
    for e0row, a0 in _central_rows(cfg):
        kernels = enumerate_subgroups(a0)
        for ker_sub in kernels:
            if a0.order // ker_sub.order > cfg.max_kernel:
                continue
            alpha = quotient(a0, ker_sub).projection
            a = alpha.target
            for gamma in _gammas(e0row.g, cfg):
                if a.order * gamma.target.order > cfg.max_total:
                    continue
                for theta in _thetas((e0row, alpha, gamma)):
                    pre = PreProlongation(e0=e0row, alpha=alpha,
                                          gamma=gamma, theta=theta)
                    try:
                        derive(pre)
                    except (InvalidCrossedModule, KernelNotPreserved,
                            FiberDependentAction):
                        continue
                    found.append(pre)
    return tuple(found)
