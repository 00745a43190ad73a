"""Normalized inhomogeneous cochains of a finite group with abelian coefficients.

Cochains are dense tables Pi0^n -> A (A-indices) that vanish whenever an
argument is the identity.  The coefficient group is decomposed once into
cyclic factors by a Smith normal form of its own presentation; every decision
procedure (coboundary solving, H^n) is then exact integer linear algebra.

Sign convention, fixed throughout:

    (d c)(x1, ..., x_{n+1}) = x1 . c(x2, ..., x_{n+1})
                              + sum_i (-1)^i c(..., x_i x_{i+1}, ...)
                              + (-1)^{n+1} c(x1, ..., x_n)

so in degree 1, (d t)(x, y) = x.t_y - t_{xy} + t_x, and in degree 2,
(d h)(x, y, z) = x.h(y, z) - h(xy, z) + h(x, yz) - h(x, y).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from math import prod

from .errors import (
    DegreeOutOfRange,
    NotAbelian,
    NotCocycle,
    NotHomomorphism,
    NotNormalized,
    SizeBoundExceeded,
)
from .groups import FiniteGroup, Homomorphism, generating_set
from . import snf

MAX_DEGREE = 4
DEFAULT_SIZE_BOUND = 4096


# ---------------------------------------------------------------------------
# Coefficient decomposition
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class AbelianStructure:
    """A fixed isomorphism of an abelian group with a product of cyclic groups.

    factors are the invariant factors > 1 in divisibility order; vec/element
    translate between element indices and coordinate tuples mod the factors.
    """

    group: FiniteGroup
    factors: tuple[int, ...]
    _to_vec: tuple[tuple[int, ...], ...]
    _index: dict

    @property
    def rank(self) -> int:
        return len(self.factors)

    def vec(self, a: int) -> tuple[int, ...]:
        return self._to_vec[a]

    def element(self, coords) -> int:
        key = tuple(c % d for c, d in zip(coords, self.factors))
        return self._index[key]


@lru_cache(maxsize=None)
def abelian_structure(a: FiniteGroup) -> AbelianStructure:
    if not a.is_abelian():
        raise NotAbelian("coefficient group must be abelian")
    n = a.order
    if n == 1:
        return AbelianStructure(group=a, factors=(), _to_vec=((),), _index={(): 0})
    gens = generating_set(a)
    # presentation on all n elements: e_x + e_y - e_{x*y} = 0 for y a generator
    rows = []
    for x in a.elements():
        for y in gens:
            row = [0] * n
            row[x] += 1
            row[y] += 1
            row[a.table[x][y]] -= 1
            rows.append(row)
    sf = snf.smith_normal_form(rows, len(rows), n, track="v")
    diag = sf.diagonal()
    assert len(diag) == n and all(d > 0 for d in diag), "presentation has full rank"
    kept = [i for i, d in enumerate(diag) if d > 1]
    factors = tuple(diag[i] for i in kept)
    assert prod(factors) == n
    to_vec = tuple(tuple(sf.v[x][i] % diag[i] for i in kept) for x in a.elements())
    index = {v: x for x, v in enumerate(to_vec)}
    assert len(index) == n, "coordinates fail to separate elements"
    return AbelianStructure(group=a, factors=factors, _to_vec=to_vec, _index=index)


# ---------------------------------------------------------------------------
# Modules and cochains
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PiModule:
    """A finite abelian group acted on by a finite group, both as tables.

    action[x] is the permutation of coefficient indices implementing x; it is
    checked to be a left action by automorphisms.
    """

    pi: FiniteGroup
    a: FiniteGroup
    action: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "action", tuple(tuple(p) for p in self.action))
        if not self.a.is_abelian():
            raise NotAbelian("coefficients of a module must be abelian")
        if len(self.action) != self.pi.order:
            raise NotHomomorphism("action table must have one entry per group element")
        for x, perm in enumerate(self.action):
            Homomorphism(self.a, self.a, perm)  # validates the map
            if len(set(perm)) != self.a.order:
                raise NotHomomorphism(f"action[{x}] is not bijective")
        if self.action[0] != tuple(range(self.a.order)):
            raise NotHomomorphism("identity must act trivially")
        for x in self.pi.elements():
            for y in self.pi.elements():
                xy = self.pi.mul(x, y)
                for v in self.a.elements():
                    if self.action[xy][v] != self.action[x][self.action[y][v]]:
                        raise NotHomomorphism(
                            f"action[{x}]·action[{y}] != action[{x}*{y}]")


def trivial_module(pi: FiniteGroup, a: FiniteGroup) -> PiModule:
    ident = tuple(range(a.order))
    return PiModule(pi=pi, a=a, action=(ident,) * pi.order)


def pi_module(pi: FiniteGroup, a: FiniteGroup, action=None) -> PiModule:
    if action is None:
        return trivial_module(pi, a)
    return PiModule(pi=pi, a=a, action=tuple(tuple(p) for p in action))


def _flat(npi: int, args: tuple[int, ...]) -> int:
    idx = 0
    for x in args:
        idx = idx * npi + x
    return idx


def _tuples(npi: int, degree: int):
    return itertools.product(range(npi), repeat=degree)


def free_positions(npi: int, degree: int) -> tuple[tuple[int, ...], ...]:
    """Argument tuples a normalized cochain is free on (no identity entries)."""
    return tuple(itertools.product(range(1, npi), repeat=degree))


@dataclass(frozen=True)
class Cochain:
    """A normalized n-cochain stored densely in row-major argument order."""

    module: PiModule
    degree: int
    values: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))
        if not 0 <= self.degree <= MAX_DEGREE:
            raise DegreeOutOfRange(f"degree {self.degree} outside 0..{MAX_DEGREE}")
        npi = self.module.pi.order
        if len(self.values) != npi ** self.degree:
            raise ValueError("value table has the wrong size")
        na = self.module.a.order
        for args in _tuples(npi, self.degree):
            v = self.values[_flat(npi, args)]
            if not 0 <= v < na:
                raise ValueError(f"value at {args} out of range")
            if 0 in args and v != 0:
                raise NotNormalized(f"nonzero value at {args}")

    def value(self, args: tuple[int, ...]) -> int:
        return self.values[_flat(self.module.pi.order, args)]

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.values)


def zero_cochain(module: PiModule, degree: int) -> Cochain:
    return Cochain(module, degree, (0,) * module.pi.order ** degree)


def cochain_from_values(module: PiModule, degree: int, assignment) -> Cochain:
    """Build a cochain from a mapping of free argument tuples to A-indices."""
    npi = module.pi.order
    values = [0] * npi ** degree
    for args, v in assignment.items():
        values[_flat(npi, args)] = v
    return Cochain(module, degree, tuple(values))


def cochain_sub(c1: Cochain, c2: Cochain) -> Cochain:
    if c1.module != c2.module or c1.degree != c2.degree:
        raise ValueError("cochains live in different complexes")
    a = c1.module.a
    return Cochain(c1.module, c1.degree,
                   tuple(a.mul(x, a.inv[y]) for x, y in zip(c1.values, c2.values)))


def cochain_add(c1: Cochain, c2: Cochain) -> Cochain:
    if c1.module != c2.module or c1.degree != c2.degree:
        raise ValueError("cochains live in different complexes")
    a = c1.module.a
    return Cochain(c1.module, c1.degree,
                   tuple(a.mul(x, y) for x, y in zip(c1.values, c2.values)))


def coboundary(c: Cochain) -> Cochain:
    if c.degree >= MAX_DEGREE:
        raise DegreeOutOfRange(f"cannot take the coboundary of degree {c.degree}")
    module = c.module
    npi = module.pi.order
    a = module.a
    n = c.degree
    pi_table = module.pi.table
    out = []
    for t in _tuples(npi, n + 1):
        acc = module.action[t[0]][c.value(t[1:])]
        sign = 1
        for j in range(n):
            merged = t[:j] + (pi_table[t[j]][t[j + 1]],) + t[j + 2:]
            v = c.value(merged)
            sign = -sign
            acc = a.mul(acc, v if sign > 0 else a.inv[v])
        v = c.value(t[:n])
        last_sign = 1 if (n + 1) % 2 == 0 else -1
        acc = a.mul(acc, v if last_sign > 0 else a.inv[v])
        out.append(acc)
    return Cochain(module, n + 1, tuple(out))


def is_cocycle(c: Cochain) -> bool:
    return coboundary(c).is_zero()


def iter_normalized_cochains(module: PiModule, degree: int):
    """Every normalized cochain of the given degree, in lexicographic order."""
    npi = module.pi.order
    positions = free_positions(npi, degree)
    for combo in itertools.product(module.a.elements(), repeat=len(positions)):
        yield cochain_from_values(module, degree, dict(zip(positions, combo)))


# ---------------------------------------------------------------------------
# The complex as integer matrices
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _delta_matrix(module: PiModule, degree: int):
    """Matrix of d: C^degree -> C^{degree+1} on free-position coordinates.

    Built column by column by evaluating the coboundary on elementary
    cochains, so the matrix and the direct evaluation agree by construction.
    """
    struct = abelian_structure(module.a)
    r = struct.rank
    npi = module.pi.order
    pos_in = free_positions(npi, degree)
    pos_out = free_positions(npi, degree + 1)
    rows = len(pos_out) * r
    cols = len(pos_in) * r
    matrix = [[0] * cols for _ in range(rows)]
    unit_elems = [struct.element(tuple(1 if t == k else 0 for t in range(r)))
                  for k in range(r)]
    for ci, (pos, k) in enumerate(itertools.product(pos_in, range(r))):
        elem = cochain_from_values(module, degree, {pos: unit_elems[k]})
        d = coboundary(elem)
        for ri, (opos, kk) in enumerate(itertools.product(pos_out, range(r))):
            matrix[ri][ci] = struct.vec(d.value(opos))[kk]
    return matrix, rows, cols


def _vectorize(c: Cochain) -> list[int]:
    struct = abelian_structure(c.module.a)
    npi = c.module.pi.order
    out = []
    for pos in free_positions(npi, c.degree):
        out.extend(struct.vec(c.value(pos)))
    return out


def _devectorize(module: PiModule, degree: int, vec: list[int]) -> Cochain:
    struct = abelian_structure(module.a)
    r = struct.rank
    assignment = {}
    for idx, pos in enumerate(free_positions(module.pi.order, degree)):
        assignment[pos] = struct.element(tuple(vec[idx * r + k] for k in range(r)))
    return cochain_from_values(module, degree, assignment)


def is_coboundary(c: Cochain) -> Cochain | None:
    """A witness t with d t == c, or None.

    Solved as an integer linear system over the cyclic decomposition of the
    coefficients; the witness is the solver's canonical solution.
    """
    if not 1 <= c.degree <= 3:
        raise DegreeOutOfRange("coboundary witnesses exist for degrees 1..3 only")
    module = c.module
    struct = abelian_structure(module.a)
    r = struct.rank
    npi = module.pi.order
    if r == 0 or npi == 1:
        witness = zero_cochain(module, c.degree - 1)
        return witness if c.is_zero() else None
    matrix, rows, cols = _delta_matrix(module, c.degree - 1)
    target = _vectorize(c)
    if rows == 0:
        return zero_cochain(module, c.degree - 1) if c.is_zero() else None
    moduli_out = [struct.factors[i % r] for i in range(rows)]
    aug = [matrix[i] + [moduli_out[i] if k == i else 0 for k in range(rows)]
           for i in range(rows)]
    sol = snf.solve_integer(aug, target, rows, cols + rows)
    if sol is None:
        return None
    witness = _devectorize(module, c.degree - 1, sol[:cols])
    assert coboundary(witness).values == c.values
    return witness


def same_class(c1: Cochain, c2: Cochain) -> bool:
    if c1.module != c2.module or c1.degree != c2.degree:
        raise ValueError("cochains live in different complexes")
    for c in (c1, c2):
        if not is_cocycle(c):
            raise NotCocycle("same_class compares cocycles only")
    return is_coboundary(cochain_sub(c1, c2)) is not None


# ---------------------------------------------------------------------------
# Cohomology groups
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class CohomologyGroup:
    """H^degree with invariant factors, basis cocycles, and coordinates.

    coordinates(c) expresses the class of a cocycle c with respect to basis;
    distinct coordinate tuples are non-cohomologous classes.
    """

    module: PiModule
    degree: int
    invariant_factors: tuple[int, ...]
    basis: tuple[Cochain, ...]
    _k_basis: list = field(repr=False)
    _u: list = field(repr=False)
    _kept: tuple[int, ...] = field(repr=False)
    _diag: tuple[int, ...] = field(repr=False)

    @property
    def order(self) -> int:
        return prod(self.invariant_factors)

    def coordinates(self, c: Cochain) -> tuple[int, ...]:
        if c.module != self.module or c.degree != self.degree:
            raise ValueError("cochain lives in a different complex")
        if not is_cocycle(c):
            raise NotCocycle("only cocycles have class coordinates")
        if not self.invariant_factors:
            return ()
        n = len(self._k_basis)
        x = snf.solve_integer(self._k_basis, _vectorize(c), n, n)
        assert x is not None, "cocycle vector must lie in the cocycle lattice"
        w = snf.matvec(self._u, x)
        return tuple(w[i] % self._diag[i] for i in self._kept)

    def from_coordinates(self, coords) -> Cochain:
        """The basis combination sum_k coords[k] * basis[k]."""
        coords = tuple(coords)
        if len(coords) != len(self.invariant_factors):
            raise ValueError("coordinate tuple has the wrong length")
        coords = tuple(c % d for c, d in zip(coords, self.invariant_factors))
        a = self.module.a
        values = []
        for idx in range(self.module.pi.order ** self.degree):
            acc = 0
            for coeff, b in zip(coords, self.basis):
                v = b.values[idx]
                for _ in range(coeff):
                    acc = a.mul(acc, v)
            values.append(acc)
        return Cochain(self.module, self.degree, tuple(values))


@lru_cache(maxsize=None)
def cohomology_group(degree: int, module: PiModule,
                     max_cells: int = DEFAULT_SIZE_BOUND) -> CohomologyGroup:
    """H^degree = ker d / im d, computed by integer Smith normal form.

    Combines the cocycle-kernel lattice with the coboundary image (plus the
    coefficient moduli) and reads invariant factors and basis representatives
    off the diagonalization.  Deterministic for fixed inputs.
    """
    if not 1 <= degree <= 3:
        raise DegreeOutOfRange("cohomology is computed in degrees 1..3")
    struct = abelian_structure(module.a)
    r = struct.rank
    npi = module.pi.order
    if npi ** degree * max(r, 1) > max_cells:
        raise SizeBoundExceeded(
            f"complex size {npi ** degree * max(r, 1)} exceeds bound {max_cells}")

    def trivial():
        return CohomologyGroup(module=module, degree=degree, invariant_factors=(),
                               basis=(), _k_basis=[], _u=[], _kept=(), _diag=())

    if r == 0 or npi == 1:
        return trivial()
    dn, out_rows, n_unknowns = _delta_matrix(module, degree)
    dm, _, prev_cols = _delta_matrix(module, degree - 1)
    if n_unknowns == 0:
        return trivial()
    moduli_n = [struct.factors[i % r] for i in range(n_unknowns)]
    # cocycle lattice K = {v : dn v == 0 modulo the coefficient moduli}
    if out_rows:
        moduli_out = [struct.factors[i % r] for i in range(out_rows)]
        aug = [dn[i] + [moduli_out[i] if k == i else 0 for k in range(out_rows)]
               for i in range(out_rows)]
        full_kernel = snf.kernel_basis(aug, out_rows, n_unknowns + out_rows)
        k_gens = [col[:n_unknowns] for col in full_kernel]
    else:
        k_gens = [[1 if i == j else 0 for i in range(n_unknowns)]
                  for j in range(n_unknowns)]
    k_basis_cols = snf.lattice_column_basis(k_gens, n_unknowns)
    assert len(k_basis_cols) == n_unknowns, "cocycle lattice must have full rank"
    k_basis = [[col[i] for col in k_basis_cols] for i in range(n_unknowns)]
    # coboundary image plus coefficient moduli, expressed in K-coordinates
    b_gens = []
    for j in range(prev_cols):
        b_gens.append([dm[i][j] for i in range(n_unknowns)])
    for i in range(n_unknowns):
        b_gens.append([moduli_n[i] if k == i else 0 for k in range(n_unknowns)])
    q_cols = []
    for b in b_gens:
        x = snf.solve_integer(k_basis, b, n_unknowns, n_unknowns)
        assert x is not None, "coboundaries must lie in the cocycle lattice"
        q_cols.append(x)
    q = [[col[i] for col in q_cols] for i in range(n_unknowns)]
    sf = snf.smith_normal_form(q, n_unknowns, len(q_cols), track="uU")
    diag = sf.diagonal()
    assert len(diag) == n_unknowns and all(d > 0 for d in diag)
    kept = tuple(i for i, d in enumerate(diag) if d > 1)
    factors = tuple(diag[i] for i in kept)
    new_basis = snf.matmul(k_basis, sf.u_inv)
    basis = []
    for i in kept:
        vec = [new_basis[row][i] % moduli_n[row] for row in range(n_unknowns)]
        rep = _devectorize(module, degree, vec)
        assert is_cocycle(rep)
        basis.append(rep)
    return CohomologyGroup(module=module, degree=degree,
                           invariant_factors=factors, basis=tuple(basis),
                           _k_basis=k_basis, _u=sf.u, _kept=kept,
                           _diag=tuple(diag))
