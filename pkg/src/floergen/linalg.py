"""Exact dense linear algebra over a Field.

Matrices are lists of rows of field elements.  Everything here is fraction-
or modular-exact; no pivot thresholds, no floating point.
"""

from __future__ import annotations

from .errors import UsageError
from .scalar import UniPoly


def zeros(field, rows, cols):
    return [[field.zero] * cols for _ in range(rows)]


def identity(field, n):
    m = zeros(field, n, n)
    for i in range(n):
        m[i][i] = field.one
    return m


def mat_mul(field, a, b):
    if a and b and len(a[0]) != len(b):
        raise UsageError("matrix dimension mismatch")
    rows, inner, cols = len(a), len(b), len(b[0]) if b else 0
    out = zeros(field, rows, cols)
    for i in range(rows):
        ai = a[i]
        oi = out[i]
        for k in range(inner):
            c = ai[k]
            if c == field.zero:
                continue
            bk = b[k]
            for j in range(cols):
                if bk[j] != field.zero:
                    oi[j] = field.add(oi[j], field.mul(c, bk[j]))
    return out


def mat_vec(field, a, v):
    if a and len(a[0]) != len(v):
        raise UsageError("matrix/vector dimension mismatch")
    out = [field.zero] * len(a)
    for i, row in enumerate(a):
        acc = field.zero
        for c, x in zip(row, v):
            if c != field.zero and x != field.zero:
                acc = field.add(acc, field.mul(c, x))
        out[i] = acc
    return out


def mat_add(field, a, b):
    return [[field.add(x, y) for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(field, a, b):
    return [[field.sub(x, y) for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_eq(a, b):
    return a == b


def transpose(a):
    return [list(col) for col in zip(*a)] if a else []


def rref(field, mat):
    """Reduced row echelon form; returns (rref matrix, pivot column list)."""
    m = [row[:] for row in mat]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        pivot = None
        for i in range(r, rows):
            if m[i][c] != field.zero:
                pivot = i
                break
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = field.inv(m[r][c])
        m[r] = [field.mul(inv, x) for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != field.zero:
                f = m[i][c]
                m[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def rank(field, mat):
    return len(rref(field, mat)[1])


def kernel_basis(field, mat):
    """Basis of the right kernel {v : mat v = 0}, one vector per free column."""
    rows = len(mat)
    cols = len(mat[0]) if rows else 0
    if rows == 0:
        return [
            [field.one if i == j else field.zero for i in range(cols)]
            for j in range(cols)
        ]
    r, pivots = rref(field, mat)
    pivot_set = set(pivots)
    basis = []
    for free in range(cols):
        if free in pivot_set:
            continue
        v = [field.zero] * cols
        v[free] = field.one
        for row_idx, pc in enumerate(pivots):
            v[pc] = field.neg(r[row_idx][free])
        basis.append(v)
    return basis


def image_basis(field, mat):
    """Basis of the column space, as column vectors."""
    _, pivots = rref(field, mat)
    cols = transpose(mat)
    return [cols[c] for c in pivots]


def solve(field, mat, rhs):
    """One solution of mat x = rhs, or None if inconsistent."""
    rows = len(mat)
    cols = len(mat[0]) if rows else 0
    aug = [mat[i][:] + [rhs[i]] for i in range(rows)]
    r, pivots = rref(field, aug)
    if cols in pivots:
        return None
    x = [field.zero] * cols
    for row_idx, pc in enumerate(pivots):
        x[pc] = r[row_idx][cols]
    return x


def invert(field, mat):
    """Matrix inverse, or None if singular."""
    n = len(mat)
    aug = [mat[i][:] + identity(field, n)[i] for i in range(n)]
    r, pivots = rref(field, aug)
    if pivots != list(range(n)):
        return None
    return [row[n:] for row in r]


def span_contains(field, basis_vectors, v):
    """Is v in the span of basis_vectors (vectors as lists)?"""
    if not basis_vectors:
        return all(x == field.zero for x in v)
    mat = transpose(basis_vectors)
    return solve(field, mat, v) is not None


def subspace_contained(field, vectors_a, vectors_b):
    """span(vectors_a) <= span(vectors_b)?"""
    return all(span_contains(field, vectors_b, v) for v in vectors_a)


def charpoly(field, mat) -> UniPoly:
    """Characteristic polynomial det(tI - M) by the Samuelson-Berkowitz
    division-free recursion; valid over any field including small F_p."""
    n = len(mat)
    if n == 0:
        return UniPoly(field, [field.one])
    # Berkowitz: iteratively build the coefficient vector via Toeplitz products.
    poly = [field.one, field.neg(mat[0][0])]  # charpoly of the 1x1 leading block
    for k in range(1, n):
        # principal k+1 x k+1 block data
        a = mat[k][k]
        row = [mat[k][j] for j in range(k)]  # R
        col = [mat[j][k] for j in range(k)]  # C
        block = [r[:k] for r in mat[:k]]  # A (k x k)
        # powers of A applied to C
        powers = [col]
        for _ in range(k - 1):
            powers.append(mat_vec(field, block, powers[-1]))
        # Toeplitz column: [1, -a, -R C, -R A C, ..., -R A^{ k-1 } C]
        tcol = [field.one, field.neg(a)]
        for p in powers:
            acc = field.zero
            for x, y in zip(row, p):
                acc = field.add(acc, field.mul(x, y))
            tcol.append(field.neg(acc))
        new = [field.zero] * (len(poly) + 1)
        for i, pc in enumerate(poly):
            if pc == field.zero:
                continue
            for j, tc in enumerate(tcol):
                if i + j <= len(poly):
                    new[i + j] = field.add(new[i + j], field.mul(pc, tc))
        poly = new
    # poly holds coefficients highest degree first
    return UniPoly(field, list(reversed(poly)))


def minimal_polynomial(field, mat) -> UniPoly:
    """Minimal polynomial of a square matrix via first linear dependence of
    the flattened power sequence I, M, M^2, ..."""
    n = len(mat)
    if n == 0:
        return UniPoly(field, [field.one])
    flat_powers = []
    power = identity(field, n)
    for _ in range(n + 1):
        flat_powers.append([x for row in power for x in row])
        # find dependence c_0 I + ... + c_d M^d = 0 with c_d = 1
        k = len(flat_powers)
        mat_cols = transpose(flat_powers[: k - 1]) if k > 1 else []
        if k > 1:
            sol = solve(field, mat_cols, [field.neg(x) for x in flat_powers[-1]])
            if sol is not None:
                return UniPoly(field, sol + [field.one])
        power = mat_mul(field, power, mat)
    raise AssertionError("minimal polynomial not found below dimension bound")


def mat_pow(field, mat, e):
    n = len(mat)
    result = identity(field, n)
    base = mat
    while e:
        if e & 1:
            result = mat_mul(field, result, base)
        base = mat_mul(field, base, base)
        e >>= 1
    return result


def eval_poly_at_matrix(field, poly: UniPoly, mat):
    n = len(mat)
    acc = zeros(field, n, n)
    for c in reversed(poly.coeffs):
        acc = mat_mul(field, acc, mat)
        for i in range(n):
            acc[i][i] = field.add(acc[i][i], c)
    return acc
