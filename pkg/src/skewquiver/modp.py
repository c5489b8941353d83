"""Dense exact linear algebra over F_p on int64 numpy arrays.

All routines require p < 2**31 so that products of two reduced entries fit in int64.
"""

import numpy as np

__all__ = [
    "SingularMatrix",
    "as_mod",
    "rref_mod",
    "rank_mod",
    "nullspace_mod",
    "solve_mod",
    "inv_mod",
    "matmul_mod",
    "charpoly_mod",
    "poly_roots_mod",
]


class SingularMatrix(ArithmeticError):
    pass


def as_mod(a, p):
    arr = np.asarray(a, dtype=object) if not isinstance(a, np.ndarray) else a
    return np.asarray(np.mod(arr, p), dtype=np.int64)


def matmul_mod(a, b, p):
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if a.shape[1] == 0 or b.shape[0] == 0:
        return np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    # chunk the inner dimension so partial sums stay below 2**63
    step = max(1, (2**62) // ((p - 1) ** 2 or 1))
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for k in range(0, a.shape[1], step):
        out = (out + a[:, k:k + step] @ b[k:k + step, :]) % p
    return out


def rref_mod(a, p):
    """Reduced row echelon form and pivot columns."""
    m = as_mod(a, p).copy()
    rows, cols = m.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            m[[r, piv]] = m[[piv, r]]
        m[r] = m[r] * pow(int(m[r, c]), -1, p) % p
        others = np.nonzero(m[:, c])[0]
        others = others[others != r]
        if others.size:
            m[others] = (m[others] - np.outer(m[others, c], m[r]) % p) % p
        pivots.append(c)
        r += 1
    return m, pivots


def rank_mod(a, p) -> int:
    a = np.asarray(a)
    if a.size == 0:
        return 0
    return len(rref_mod(a, p)[1])


def nullspace_mod(a, p):
    """Columns form a basis of the right kernel."""
    a = np.asarray(a)
    n = a.shape[1]
    if a.shape[0] == 0:
        return np.eye(n, dtype=np.int64)
    r, pivots = rref_mod(a, p)
    free = [j for j in range(n) if j not in set(pivots)]
    basis = np.zeros((n, len(free)), dtype=np.int64)
    for k, f in enumerate(free):
        basis[f, k] = 1
        for row, pc in enumerate(pivots):
            basis[pc, k] = (-r[row, f]) % p
    return basis


def solve_mod(a, b, p):
    """One solution x of a @ x = b (b may be a matrix); raises if inconsistent."""
    a = as_mod(a, p)
    b = as_mod(b, p)
    vec = b.ndim == 1
    if vec:
        b = b[:, None]
    n = a.shape[1]
    r, pivots = rref_mod(np.hstack([a, b]), p)
    if any(pc >= n for pc in pivots):
        raise SingularMatrix("inconsistent linear system")
    x = np.zeros((n, b.shape[1]), dtype=np.int64)
    for row, pc in enumerate(pivots):
        x[pc] = r[row, n:]
    return x[:, 0] if vec else x


def inv_mod(a, p):
    a = as_mod(a, p)
    n = a.shape[0]
    if a.shape != (n, n):
        raise SingularMatrix("not square")
    r, pivots = rref_mod(np.hstack([a, np.eye(n, dtype=np.int64)]), p)
    if n and (len(pivots) < n or pivots[n - 1] != n - 1):
        raise SingularMatrix("matrix is singular mod %d" % p)
    return r[:, n:]


def charpoly_mod(a, p):
    """Characteristic polynomial det(xI - a), coefficients constant term first.

    Hessenberg reduction followed by the standard recurrence; no division by
    anything but pivots, so any p works.
    """
    h = as_mod(a, p).copy()
    n = h.shape[0]
    for c in range(n - 2):
        nz = np.nonzero(h[c + 1:, c])[0]
        if nz.size == 0:
            continue
        piv = c + 1 + nz[0]
        if piv != c + 1:
            h[[c + 1, piv]] = h[[piv, c + 1]]
            h[:, [c + 1, piv]] = h[:, [piv, c + 1]]
        inv = pow(int(h[c + 1, c]), -1, p)
        for r in range(c + 2, n):
            f = int(h[r, c]) * inv % p
            if f:
                h[r] = (h[r] - f * h[c + 1]) % p
                h[:, c + 1] = (h[:, c + 1] + f * h[:, r]) % p
    # polys[k] = charpoly of leading k x k block
    polys = [[1]]
    for k in range(1, n + 1):
        nxt = [0] + polys[k - 1]
        hk = int(h[k - 1, k - 1])
        for i, c in enumerate(polys[k - 1]):
            nxt[i] = (nxt[i] - hk * c) % p
        prod = 1
        for i in range(1, k):
            prod = prod * int(h[k - i, k - i - 1]) % p
            coef = prod * int(h[k - i - 1, k - 1]) % p
            if coef:
                for j, c in enumerate(polys[k - i - 1]):
                    nxt[j] = (nxt[j] - coef * c) % p
        polys.append(nxt)
    return polys[n]


def poly_roots_mod(poly, p):
    """All roots in F_p with multiplicity (exhaustive evaluation)."""
    roots = []
    coeffs = [c % p for c in poly]
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    if len(coeffs) <= 1:
        return roots
    xs = np.arange(p, dtype=np.int64)
    acc = np.zeros(p, dtype=np.int64)
    for c in reversed(coeffs):
        acc = (acc * xs + c) % p
    for r in np.nonzero(acc == 0)[0]:
        r = int(r)
        # deflate repeatedly to count multiplicity
        while True:
            q, rem = _synthetic_div(coeffs, r, p)
            if rem:
                break
            roots.append(r)
            coeffs = q
            if len(coeffs) <= 1:
                break
    return roots


def _synthetic_div(coeffs, r, p):
    # divide by (x - r); coeffs constant term first
    n = len(coeffs) - 1
    q = [0] * n
    carry = 0
    for k in range(n, 0, -1):
        carry = (coeffs[k] + carry * r) % p
        q[k - 1] = carry
    rem = (coeffs[0] + carry * r) % p
    return q, rem
