"""Exact integer linear algebra: Smith normal form, solving, kernels, lattices.

Matrices are plain lists of row lists of Python ints, so everything is exact
and overflow-free.  Shapes are passed explicitly wherever an empty matrix
would make them ambiguous.
"""

from __future__ import annotations

from dataclasses import dataclass


def identity_matrix(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def matmul(a: list[list[int]], b: list[list[int]]) -> list[list[int]]:
    """a @ b; both matrices must be nonempty and compatible."""
    cols = len(b[0])
    out = []
    for row in a:
        acc = [0] * cols
        for k, x in enumerate(row):
            if x:
                brow = b[k]
                for j in range(cols):
                    acc[j] += x * brow[j]
        out.append(acc)
    return out


def matvec(a: list[list[int]], v: list[int]) -> list[int]:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


@dataclass(frozen=True, eq=False)
class SmithForm:
    """u @ a @ v == d with d diagonal, nonnegative, d[i] | d[i+1].

    u and v are unimodular; u_inv and v_inv are their exact integer inverses.
    Transforms the caller opted out of (track=...) are None.
    """

    rows: int
    cols: int
    d: list[list[int]]
    u: list[list[int]] | None
    v: list[list[int]] | None
    u_inv: list[list[int]] | None
    v_inv: list[list[int]] | None

    def diagonal(self) -> list[int]:
        return [self.d[i][i] for i in range(min(self.rows, self.cols))]


def smith_normal_form(a, rows: int | None = None, cols: int | None = None,
                      track: str = "uUvV") -> SmithForm:
    """Diagonalize over the integers.

    track selects which transforms to carry along: "u" for u, "U" for u_inv,
    "v" for v, "V" for v_inv.  Skipping unused ones saves most of the work on
    large matrices.
    """
    m = [list(row) for row in a]
    r = len(m) if rows is None else rows
    c = (len(m[0]) if m else 0) if cols is None else cols
    if len(m) != r or any(len(row) != c for row in m):
        raise ValueError("matrix shape disagrees with declared dimensions")

    u = identity_matrix(r) if "u" in track else None
    ui = identity_matrix(r) if "U" in track else None
    v = identity_matrix(c) if "v" in track else None
    vi = identity_matrix(c) if "V" in track else None

    def swap_rows(i, j):
        m[i], m[j] = m[j], m[i]
        if u is not None:
            u[i], u[j] = u[j], u[i]
        if ui is not None:
            for t in range(r):
                ui[t][i], ui[t][j] = ui[t][j], ui[t][i]

    def negate_row(i):
        m[i] = [-x for x in m[i]]
        if u is not None:
            u[i] = [-x for x in u[i]]
        if ui is not None:
            for t in range(r):
                ui[t][i] = -ui[t][i]

    def add_row(i, j, q):
        # row_i += q * row_j
        mi, mj = m[i], m[j]
        for t in range(c):
            mi[t] += q * mj[t]
        if u is not None:
            uin, ujn = u[i], u[j]
            for t in range(r):
                uin[t] += q * ujn[t]
        if ui is not None:
            for t in range(r):
                ui[t][j] -= q * ui[t][i]

    def swap_cols(i, j):
        for row in m:
            row[i], row[j] = row[j], row[i]
        if v is not None:
            for row in v:
                row[i], row[j] = row[j], row[i]
        if vi is not None:
            vi[i], vi[j] = vi[j], vi[i]

    def add_col(i, j, q):
        # col_i += q * col_j
        for row in m:
            row[i] += q * row[j]
        if v is not None:
            for row in v:
                row[i] += q * row[j]
        if vi is not None:
            vj = vi[j]
            vii = vi[i]
            for t in range(c):
                vj[t] -= q * vii[t]

    t = 0
    limit = min(r, c)
    while t < limit:
        # move the absolutely smallest nonzero entry of the trailing block to (t, t)
        best = None
        for i in range(t, r):
            for j in range(t, c):
                x = m[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
        if best is None:
            break
        _, bi, bj = best
        if bi != t:
            swap_rows(t, bi)
        if bj != t:
            swap_cols(t, bj)
        if m[t][t] < 0:
            negate_row(t)

        while True:
            restart = False
            for i in range(t + 1, r):
                if m[i][t]:
                    q = m[i][t] // m[t][t]
                    if q:
                        add_row(i, t, -q)
                    if m[i][t]:
                        # remainder is a strictly smaller positive pivot
                        swap_rows(t, i)
                        restart = True
                        break
            if restart:
                continue
            for j in range(t + 1, c):
                if m[t][j]:
                    q = m[t][j] // m[t][t]
                    if q:
                        add_col(j, t, -q)
                    if m[t][j]:
                        swap_cols(t, j)
                        restart = True
                        break
            if restart:
                continue
            if any(m[i][t] for i in range(t + 1, r)):
                continue
            # cross is clear; enforce divisibility of the trailing block
            viol = None
            for i in range(t + 1, r):
                for j in range(t + 1, c):
                    if m[i][j] % m[t][t]:
                        viol = i
                        break
                if viol is not None:
                    break
            if viol is None:
                break
            add_row(t, viol, 1)
        t += 1

    return SmithForm(rows=r, cols=c, d=m, u=u, v=v, u_inv=ui, v_inv=vi)


def solve_integer(a, b: list[int], rows: int | None = None,
                  cols: int | None = None) -> list[int] | None:
    """One integer solution x of a @ x == b, or None when unsolvable."""
    sf = smith_normal_form(a, rows, cols, track="uv")
    r, c = sf.rows, sf.cols
    if len(b) != r:
        raise ValueError("right-hand side length disagrees with the matrix")
    if r:
        rhs = matvec(sf.u, b)
    else:
        rhs = []
    y = [0] * c
    for i in range(min(r, c)):
        d = sf.d[i][i]
        if d:
            if rhs[i] % d:
                return None
            y[i] = rhs[i] // d
        elif rhs[i]:
            return None
    for i in range(min(r, c), r):
        if rhs[i]:
            return None
    if c == 0:
        return []
    return matvec(sf.v, y)


def kernel_basis(a, rows: int | None = None, cols: int | None = None) -> list[list[int]]:
    """Column vectors spanning the integer kernel of a."""
    sf = smith_normal_form(a, rows, cols, track="v")
    r, c = sf.rows, sf.cols
    diag = sf.diagonal() + [0] * (c - min(r, c))
    return [[sf.v[i][j] for i in range(c)] for j in range(c) if diag[j] == 0]


def lattice_column_basis(columns: list[list[int]], dim: int) -> list[list[int]]:
    """A basis (as column vectors) of the lattice spanned by the given columns."""
    if not columns or dim == 0:
        return []
    a = [[col[i] for col in columns] for i in range(dim)]
    sf = smith_normal_form(a, dim, len(columns), track="U")
    w = matmul(sf.u_inv, sf.d)
    basis = []
    for j in range(len(columns)):
        col = [w[i][j] for i in range(dim)]
        if any(col):
            basis.append(col)
    return basis
