"""Linear algebra and polynomial roots over a prime field GF(p).

Matrices are numpy int64 arrays with entries in [0, p); p stays below 2**31
so products never overflow.
"""

from __future__ import annotations

import random
from functools import lru_cache

import numpy as np

from .primes import factorize, is_prime


@lru_cache(maxsize=None)
def choose_prime(modulus: int, lower: int) -> int:
    """Smallest prime p = 1 (mod modulus) with p > lower."""
    p = (lower // modulus + 1) * modulus + 1
    while not is_prime(p):
        p += modulus
    if p >= 2 ** 31:
        raise OverflowError(f"prime {p} too large for int64 linear algebra")
    return p


@lru_cache(maxsize=None)
def primitive_root(p: int) -> int:
    qs = [q for q, _ in factorize(p - 1)]
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in qs):
            return g
    return 1


def root_of_unity(p: int, n: int) -> int:
    """A primitive n-th root of unity mod p (requires n | p - 1)."""
    if (p - 1) % n:
        raise ValueError(f"{n} does not divide {p - 1}")
    return pow(primitive_root(p), (p - 1) // n, p)


def rref(A: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    A = np.array(A, dtype=np.int64) % p
    rows, cols = A.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(A[r:, c])
        if len(nz) == 0:
            continue
        k = r + nz[0]
        if k != r:
            A[[r, k]] = A[[k, r]]
        A[r] = (A[r] * pow(int(A[r, c]), -1, p)) % p
        others = np.flatnonzero(A[:, c])
        others = others[others != r]
        if len(others):
            A[others] = (A[others] - A[others, c][:, None] * A[r]) % p
        pivots.append(c)
        r += 1
    return A[:r], pivots


def nullspace(A: np.ndarray, p: int) -> np.ndarray:
    """Basis of {x : A x = 0} as columns of a (cols x dim) matrix."""
    A = np.asarray(A)
    cols = A.shape[1]
    R, pivots = rref(A, p)
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((cols, len(free)), dtype=np.int64)
    for j, f in enumerate(free):
        basis[f, j] = 1
        for i, c in enumerate(pivots):
            basis[c, j] = (-R[i, f]) % p
    return basis


def charpoly(A: np.ndarray, p: int) -> list[int]:
    """Characteristic polynomial, coefficients from the constant term up (monic)."""
    H = np.array(A, dtype=np.int64) % p
    n = H.shape[0]
    # reduce to upper Hessenberg form by similarity transforms
    for m in range(1, n - 1):
        nz = np.flatnonzero(H[m:, m - 1])
        if len(nz) == 0:
            continue
        i = m + nz[0]
        if i != m:
            H[[i, m]] = H[[m, i]]
            H[:, [i, m]] = H[:, [m, i]]
        inv = pow(int(H[m, m - 1]), -1, p)
        for r in range(m + 1, n):
            t = (H[r, m - 1] * inv) % p
            if t:
                H[r] = (H[r] - t * H[m]) % p
                H[:, m] = (H[:, m] + t * H[:, r]) % p
    # polynomial recurrence on leading principal submatrices
    polys = [[1]]
    for k in range(1, n + 1):
        a = int(H[k - 1, k - 1])
        prev = polys[k - 1]
        cur = [0] + prev  # x * prev
        for i, c in enumerate(prev):
            cur[i] = (cur[i] - a * c) % p
        prod = 1
        for i in range(1, k):
            prod = prod * int(H[k - i, k - i - 1]) % p
            h = int(H[k - i - 1, k - 1])
            coef = prod * h % p
            if coef:
                for j, c in enumerate(polys[k - i - 1]):
                    cur[j] = (cur[j] - coef * c) % p
        polys.append(cur)
    return polys[n]


def _trim(f: list[int]) -> list[int]:
    while len(f) > 1 and f[-1] == 0:
        f.pop()
    return f


def _mod(f: list[int], g: list[int], p: int) -> list[int]:
    f = list(f)
    inv = pow(g[-1], -1, p)
    while len(f) >= len(g) and any(f):
        c = f[-1] * inv % p
        shift = len(f) - len(g)
        for i, gc in enumerate(g):
            f[shift + i] = (f[shift + i] - c * gc) % p
        f.pop()
        _trim(f)
        if len(f) < len(g):
            break
    return _trim(f) if f else [0]


def _mulmod(a: list[int], b: list[int], g: list[int], p: int) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _mod(out, g, p)


def _powmod(base: list[int], e: int, g: list[int], p: int) -> list[int]:
    out = [1]
    base = _mod(base, g, p)
    while e:
        if e & 1:
            out = _mulmod(out, base, g, p)
        base = _mulmod(base, base, g, p)
        e >>= 1
    return out


def _gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while any(b):
        a, b = b, _mod(a, b, p)
    inv = pow(a[-1], -1, p)
    return [c * inv % p for c in a]


def _sub(a: list[int], b: list[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    a = a + [0] * (n - len(a))
    b = b + [0] * (n - len(b))
    return _trim([(x - y) % p for x, y in zip(a, b)])


def roots(f: list[int], p: int, seed: int = 0) -> list[int]:
    """Distinct roots in GF(p) of f (coefficients from the constant term up)."""
    f = _trim([c % p for c in f])
    if len(f) <= 1:
        return []
    # split off the product of distinct linear factors: gcd(f, x^p - x)
    xp = _powmod([0, 1], p, f, p)
    g = _gcd(f, _sub(xp, [0, 1], p), p)
    rng = random.Random(seed)
    out: list[int] = []
    stack = [g]
    while stack:
        h = stack.pop()
        d = len(h) - 1
        if d == 0:
            continue
        if d == 1:
            out.append((-h[0]) * pow(h[1], -1, p) % p)
            continue
        if p == 2:
            out.extend(x for x in (0, 1) if sum(c * pow(x, i, p) for i, c in enumerate(h)) % p == 0)
            continue
        while True:
            a = rng.randrange(p)
            w = _powmod([a, 1], (p - 1) // 2, h, p)
            s = _gcd(h, _sub(w, [1], p), p)
            if 0 < len(s) - 1 < d:
                break
        q = _divide(h, s, p)
        stack.extend([s, q])
    return sorted(out)


def _divide(f: list[int], g: list[int], p: int) -> list[int]:
    f = list(f)
    inv = pow(g[-1], -1, p)
    q = [0] * (len(f) - len(g) + 1)
    for k in range(len(q) - 1, -1, -1):
        c = f[k + len(g) - 1] * inv % p
        q[k] = c
        for i, gc in enumerate(g):
            f[k + i] = (f[k + i] - c * gc) % p
    return q
