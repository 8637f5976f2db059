"""Exact integer matrix algorithms on lists of lists of Python ints."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

Matrix = list[list[int]]


def zeros(r: int, c: int) -> Matrix:
    return [[0] * c for _ in range(r)]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def copy(a: Matrix) -> Matrix:
    return [list(row) for row in a]


def shape(a: Matrix, cols: int | None = None) -> tuple[int, int]:
    return len(a), (len(a[0]) if a else (cols or 0))


def transpose(a: Matrix, cols: int | None = None) -> Matrix:
    r, c = shape(a, cols)
    return [[a[i][j] for i in range(r)] for j in range(c)]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    bt = list(zip(*b)) if b else []
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matvec(a: Matrix, v: list[int]) -> list[int]:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def vgcd(v) -> int:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g


def primitive(v: list[int]) -> list[int]:
    """Divide by the gcd and make the first nonzero entry positive."""
    g = vgcd(v)
    if g == 0:
        return list(v)
    v = [x // g for x in v]
    lead = next(x for x in v if x)
    return v if lead > 0 else [-x for x in v]


# ---------------------------------------------------------------------------
# determinant / rank / adjugate


def det(a: Matrix) -> int:
    """Bareiss fraction-free elimination."""
    n = len(a)
    if n == 0:
        return 1
    m = copy(a)
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            piv = next((i for i in range(k + 1, n) if m[i][k]), None)
            if piv is None:
                return 0
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def rank(a: Matrix) -> int:
    m = [[Fraction(x) for x in row] for row in a]
    r = 0
    cols = len(m[0]) if m else 0
    for c in range(cols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c] / m[r][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        r += 1
    return r


def minor(a: Matrix, i: int, j: int) -> Matrix:
    return [row[:j] + row[j + 1 :] for k, row in enumerate(a) if k != i]


def adjugate(a: Matrix) -> Matrix:
    n = len(a)
    if n == 1:
        return [[1]]
    return [[(-1) ** (i + j) * det(minor(a, j, i)) for j in range(n)] for i in range(n)]


def charpoly(a: Matrix) -> list[int]:
    """Coefficients of det(tI - A), leading coefficient first (Faddeev-LeVerrier)."""
    n = len(a)
    coeffs = [1]
    m = zeros(n, n)
    for k in range(1, n + 1):
        m = matmul(a, m)
        for i in range(n):
            m[i][i] += coeffs[-1]
        am = matmul(a, m)
        tr = sum(am[i][i] for i in range(n))
        coeffs.append(-tr // k)
    return coeffs


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class SmithForm:
    """``U @ A @ V == D`` with ``D`` diagonal and each entry dividing the next."""

    D: Matrix
    U: Matrix
    V: Matrix
    diagonal: tuple[int, ...]

    @property
    def rank(self) -> int:
        return sum(1 for x in self.diagonal if x)


def smith_normal_form(a: Matrix, cols: int | None = None) -> SmithForm:
    r, c = shape(a, cols)
    D = copy(a) if r else []
    U, V = identity(r), identity(c)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for M in (D, V):
            for row in M:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, f):  # row dst += f * row src
        D[dst] = [x + f * y for x, y in zip(D[dst], D[src])]
        U[dst] = [x + f * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, f):
        for M in (D, V):
            for row in M:
                row[dst] += f * row[src]

    def neg_row(i):
        D[i] = [-x for x in D[i]]
        U[i] = [-x for x in U[i]]

    t = 0
    while t < min(r, c):
        cands = [(abs(D[i][j]), i, j) for i in range(t, r) for j in range(t, c) if D[i][j]]
        if not cands:
            break
        _, i, j = min(cands)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = D[t][t]
            bad = False
            for i in range(t + 1, r):
                q = D[i][t] // p
                if q:
                    add_row(i, t, -q)
                if D[i][t]:
                    bad = True
            for j in range(t + 1, c):
                q = D[t][j] // p
                if q:
                    add_col(j, t, -q)
                if D[t][j]:
                    bad = True
            if not bad:
                # pivot must divide the rest of the block
                hit = next(
                    ((i, j) for i in range(t + 1, r) for j in range(t + 1, c) if D[i][j] % p),
                    None,
                )
                if hit is None:
                    break
                add_row(t, hit[0], 1)
                continue
            cands = [(abs(D[i][t]), i, t) for i in range(t, r) if D[i][t]]
            cands += [(abs(D[t][j]), t, j) for j in range(t, c) if D[t][j]]
            _, i, j = min(cands)
            swap_rows(t, i)
            swap_cols(t, j)
        if D[t][t] < 0:
            neg_row(t)
        t += 1
    diag = tuple(D[i][i] for i in range(min(r, c)))
    return SmithForm(D, U, V, diag)


# ---------------------------------------------------------------------------
# kernels and Hermite form


def hermite_rows(rows: list[list[int]]) -> list[list[int]]:
    """Row-style Hermite normal form of the lattice spanned by ``rows``: positive
    pivots, entries above each pivot reduced into [0, pivot)."""
    m = [list(r) for r in rows]
    if not m:
        return []
    n = len(m[0])
    out_row = 0
    for c in range(n):
        while True:
            nz = [i for i in range(out_row, len(m)) if m[i][c]]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(m[i][c]))
            m[out_row], m[piv] = m[piv], m[out_row]
            done = True
            for i in range(out_row + 1, len(m)):
                if m[i][c]:
                    q = m[i][c] // m[out_row][c]
                    m[i] = [x - q * y for x, y in zip(m[i], m[out_row])]
                    if m[i][c]:
                        done = False
            if done:
                break
        if out_row < len(m) and m[out_row][c]:
            if m[out_row][c] < 0:
                m[out_row] = [-x for x in m[out_row]]
            p = m[out_row][c]
            for i in range(out_row):
                q = m[i][c] // p
                if q:
                    m[i] = [x - q * y for x, y in zip(m[i], m[out_row])]
            out_row += 1
    return [r for r in m[:out_row]]


def integer_kernel(a: Matrix, cols: int | None = None) -> list[list[int]]:
    """A basis of {x in Z^n : A x = 0}, returned in Hermite normal form."""
    r, c = shape(a, cols)
    if c == 0:
        return []
    sf = smith_normal_form(a, c) if r else None
    if sf is None:
        return hermite_rows(identity(c))
    k = sf.rank
    basis = [[sf.V[i][j] for i in range(c)] for j in range(k, c)]
    return hermite_rows(basis)


def solve_rational(a: Matrix, b: list[int]) -> list[Fraction] | None:
    """One rational solution of A x = b, or None."""
    r, c = shape(a)
    m = [[Fraction(x) for x in row] + [Fraction(y)] for row, y in zip(a, b)]
    piv_cols = []
    row = 0
    for col in range(c):
        p = next((i for i in range(row, r) if m[i][col]), None)
        if p is None:
            continue
        m[row], m[p] = m[p], m[row]
        m[row] = [x / m[row][col] for x in m[row]]
        for i in range(r):
            if i != row and m[i][col]:
                f = m[i][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[row])]
        piv_cols.append(col)
        row += 1
    if any(all(x == 0 for x in m[i][:c]) and m[i][c] for i in range(r)):
        return None
    x = [Fraction(0)] * c
    for i, col in enumerate(piv_cols):
        x[col] = m[i][c]
    return x
