"""Exact linear algebra over the integers and rationals.

Matrices are lists of lists holding ints or Fractions.  Everything here is
small (at most a few dozen rows), so simple cubic algorithms with exact
arithmetic are fine.  The integer normal forms (HNF/SNF) carry the whole
lattice/abelian-group machinery of the package.
"""

from fractions import Fraction


def dims(a):
    return len(a), len(a[0]) if a else 0


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def zeros(m, n):
    return [[0] * n for _ in range(m)]


def copy(a):
    return [row[:] for row in a]


def transpose(a):
    return [list(col) for col in zip(*a)]


def mat_mul(a, b):
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def mat_vec(a, v):
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def vec_mat(v, a):
    return [sum(x * row[j] for x, row in zip(v, a)) for j in range(len(a[0]))]


def scale(a, c):
    return [[c * x for x in row] for row in a]


def add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def is_integral(a):
    return all(Fraction(x).denominator == 1 for row in a for x in row)


def to_int(a):
    return [[int(x) for x in row] for row in a]


def det(a):
    """Exact determinant via fraction-free-ish Gaussian elimination."""
    n = len(a)
    m = [[Fraction(x) for x in row] for row in a]
    d = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            d = -d
        d *= m[c][c]
        inv = 1 / m[c][c]
        for r in range(c + 1, n):
            if m[r][c]:
                f = m[r][c] * inv
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return d


def inverse(a):
    """Exact inverse of a square rational matrix."""
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(a)]
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            raise ValueError("matrix is singular")
        m[c], m[piv] = m[piv], m[c]
        inv = 1 / m[c][c]
        m[c] = [x * inv for x in m[c]]
        for r in range(n):
            if r != c and m[r][c]:
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return [row[n:] for row in m]


def solve_left(a, b):
    """Solve x·a = b for each row of b; a must have full row rank."""
    at = transpose(a)
    g = mat_mul(a, at)
    gi = inverse(g)
    return mat_mul(mat_mul(b, at), gi)


def hnf(a):
    """Row Hermite normal form of an integer matrix.

    Returns (h, u) with h = u·a, u unimodular, h in row-echelon HNF with
    zero rows removed and entries above each pivot reduced into [0, pivot).
    """
    m, n = dims(a)
    h = [list(map(int, row)) for row in a]
    u = identity(m)
    row = 0
    for col in range(n):
        piv = next((r for r in range(row, m) if h[r][col] != 0), None)
        if piv is None:
            continue
        h[row], h[piv] = h[piv], h[row]
        u[row], u[piv] = u[piv], u[row]
        for r in range(row + 1, m):
            while h[r][col] != 0:
                q = h[row][col] // h[r][col]
                h[row] = [x - q * y for x, y in zip(h[row], h[r])]
                u[row] = [x - q * y for x, y in zip(u[row], u[r])]
                h[row], h[r] = h[r], h[row]
                u[row], u[r] = u[r], u[row]
        if h[row][col] < 0:
            h[row] = [-x for x in h[row]]
            u[row] = [-x for x in u[row]]
        for r in range(row):
            q = h[r][col] // h[row][col]
            if q:
                h[r] = [x - q * y for x, y in zip(h[r], h[row])]
                u[r] = [x - q * y for x, y in zip(u[r], u[row])]
        row += 1
    return h[:row] + h[row:], u


def hnf_basis(a):
    """Nonzero rows of the HNF: a canonical basis of the row lattice."""
    h, _ = hnf(a)
    return [row for row in h if any(row)]


def int_kernel(a):
    """Basis (rows) of {z : z·a = 0} over the integers."""
    h, u = hnf(a)
    return [u[i] for i, row in enumerate(h) if not any(row)]


def snf(a):
    """Smith normal form: returns (d, u, v) with d = u·a·v diagonal,
    d[i] | d[i+1], u and v unimodular."""
    m, n = dims(a)
    d = [list(map(int, row)) for row in a]
    u = identity(m)
    v = identity(n)

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def addmul_row(dst, src, q):
        d[dst] = [x + q * y for x, y in zip(d[dst], d[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def addmul_col(dst, src, q):
        for row in d:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    def diagonalize():
        t = 0
        while t < min(m, n):
            # move an entry of minimal absolute value to the pivot slot
            piv = None
            for i in range(t, m):
                for j in range(t, n):
                    if d[i][j] != 0 and (piv is None
                                         or abs(d[i][j]) < abs(d[piv[0]][piv[1]])):
                        piv = (i, j)
            if piv is None:
                break
            swap_rows(t, piv[0])
            swap_cols(t, piv[1])
            while True:
                dirty = False
                for i in range(t + 1, m):
                    if d[i][t] != 0:
                        q = d[i][t] // d[t][t]
                        addmul_row(i, t, -q)
                        if d[i][t] != 0:  # remainder smaller than pivot
                            swap_rows(t, i)
                            dirty = True
                for j in range(t + 1, n):
                    if d[t][j] != 0:
                        q = d[t][j] // d[t][t]
                        addmul_col(j, t, -q)
                        if d[t][j] != 0:
                            swap_cols(t, j)
                            dirty = True
                if not dirty and all(d[i][t] == 0 for i in range(t + 1, m)):
                    break
            if d[t][t] < 0:
                d[t] = [-x for x in d[t]]
                u[t] = [-x for x in u[t]]
            t += 1
        return t

    # Diagonalize; whenever d[i]∤d[i+1], fold column i+1 into column i and
    # re-diagonalize.  Each fix replaces d[i][i] by gcd(d[i][i], d[i+1][i+1]),
    # which strictly shrinks the product of leading principal divisors, so
    # this terminates.
    while True:
        t = diagonalize()
        bad = next((i for i in range(t - 1)
                    if d[i][i] and d[i + 1][i + 1] % d[i][i] != 0), None)
        if bad is None:
            break
        addmul_col(bad, bad + 1, 1)
    return d, u, v


def snf_diagonal(a):
    d, _, _ = snf(a)
    return [d[i][i] for i in range(min(len(d), len(d[0]) if d else 0))]
