"""Slow reference implementations used as independent test oracles.

Nothing here touches the package's lookup tables: field arithmetic is
schoolbook polynomial arithmetic on coefficient lists, determinants use
Laplace expansion and distances re-enumerate every codeword in reverse
message order.
"""

from __future__ import annotations

import itertools


class PolyField:
    """GF(p^m) by polynomial arithmetic modulo ``modulus`` (low to high)."""

    def __init__(self, p: int, modulus):
        self.p = p
        self.mod = [int(c) % p for c in modulus]
        self.m = len(self.mod) - 1
        self.q = p**self.m

    def coeffs(self, a: int) -> list[int]:
        out = []
        for _ in range(self.m):
            out.append(a % self.p)
            a //= self.p
        return out

    def index(self, c) -> int:
        v = 0
        for x in reversed(list(c)):
            v = v * self.p + x % self.p
        return v

    def add(self, a, b):
        return self.index([x + y for x, y in zip(self.coeffs(a), self.coeffs(b))])

    def neg(self, a):
        return self.index([-x for x in self.coeffs(a)])

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        x, y = self.coeffs(a), self.coeffs(b)
        prod = [0] * (2 * self.m)
        for i, xi in enumerate(x):
            for j, yj in enumerate(y):
                prod[i + j] += xi * yj
        prod = [c % self.p for c in prod]
        lead_inv = pow(self.mod[-1], self.p - 2, self.p)
        for d in range(len(prod) - 1, self.m - 1, -1):
            c = prod[d] * lead_inv % self.p
            if c:
                for i, mc in enumerate(self.mod):
                    prod[d - self.m + i] = (prod[d - self.m + i] - c * mc) % self.p
        return self.index(prod[: self.m])

    def pow(self, a, e):
        if e < 0:
            a, e = self.inv(a), -e
        r = 1
        for _ in range(e):
            r = self.mul(r, a)
        return r

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError
        for b in range(1, self.q):
            if self.mul(a, b) == 1:
                return b
        raise AssertionError("no inverse")


def naive_matmul(F: PolyField, A, B):
    n, k, m = len(A), len(B), len(B[0])
    out = [[0] * m for _ in range(n)]
    for i in range(n):
        for j in range(m):
            s = 0
            for t in range(k):
                s = F.add(s, F.mul(A[i][t], B[t][j]))
            out[i][j] = s
    return out


def laplace_det(F: PolyField, A):
    n = len(A)
    if n == 1:
        return A[0][0]
    total = 0
    for j in range(n):
        if A[0][j] == 0:
            continue
        minor = [row[:j] + row[j + 1:] for row in A[1:]]
        term = F.mul(A[0][j], laplace_det(F, minor))
        total = F.add(total, term if j % 2 == 0 else F.neg(term))
    return total


def naive_rank(F: PolyField, A) -> int:
    M = [list(r) for r in A]
    if not M:
        return 0
    rows, cols = len(M), len(M[0])
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = F.inv(M[r][c])
        M[r] = [F.mul(inv, x) for x in M[r]]
        for i in range(rows):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(M[i], M[r])]
        r += 1
    return r


def naive_codewords(F: PolyField, G):
    """Every codeword, messages visited in reverse lexicographic order."""
    k = len(G)
    n = len(G[0])
    for msg in itertools.product(range(F.q - 1, -1, -1), repeat=k):
        word = [0] * n
        for coef, row in zip(msg, G):
            if coef:
                word = [F.add(w, F.mul(coef, g)) for w, g in zip(word, row)]
        yield msg, word


def naive_min_distance(F: PolyField, G) -> int:
    best = len(G[0]) + 1
    for msg, word in naive_codewords(F, G):
        if any(msg):
            best = min(best, sum(1 for x in word if x))
    return best


def naive_dual_distance(F: PolyField, G) -> int:
    """Smallest number of linearly dependent columns of ``G``."""
    n = len(G[0])
    k = len(G)
    cols = [[G[r][c] for r in range(k)] for c in range(n)]
    for t in range(1, n + 1):
        for sub in itertools.combinations(range(n), t):
            M = [[cols[c][r] for c in sub] for r in range(k)]
            if naive_rank(F, M) < t:
                return t
    return n + 1


def conj(F: PolyField, q: int, a: int) -> int:
    return F.pow(a, q)


def naive_hermitian_gram(F: PolyField, q: int, G):
    return [[_herm(F, q, u, v) for v in G] for u in G]


def _herm(F, q, u, v):
    s = 0
    for a, b in zip(u, v):
        s = F.add(s, F.mul(a, conj(F, q, b)))
    return s
