"""Slow, independent reference implementations used only by the tests.

Nothing here imports the package's arithmetic; inputs and outputs are plain
Python lists, ints, Fractions and complex numbers.
"""

from __future__ import annotations

import cmath
import itertools
from fractions import Fraction


def naive_basic_check(rows):
    """(is_solution, theta, D) for a list-of-lists matrix, by triple loops in Fractions."""
    S = [[Fraction(x) for x in row] for row in rows]
    n = len(S)
    for i in range(n):
        if S[i][i] != 0:
            return False, None, None
        for j in range(n):
            if S[i][j] != S[j][i]:
                return False, None, None
    if any(sum(row) != 0 for row in S):
        return False, None, None
    sq = [[sum(S[i][k] * S[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
    theta = None
    for i in range(n):
        for j in range(i + 1, n):
            lhs = S[i][j] ** 2 + sq[i][j]
            if S[i][j] == 0:
                if sq[i][j] != 0:
                    return False, None, None
                continue
            t = lhs / S[i][j]
            if theta is None:
                theta = t
            elif t != theta:
                return False, None, None
    D = [sq[i][i] for i in range(n)]
    return True, (theta if theta is not None else Fraction(0)), D


def naive_srg(adj):
    """(n, r, lambda, mu) by counting, or None; lambda/mu are 0 when no such pair exists."""
    n = len(adj)
    degs = {sum(row) for row in adj}
    if len(degs) != 1:
        return None
    r = degs.pop()
    lam = mu = None
    for i, j in itertools.combinations(range(n), 2):
        c = sum(1 for k in range(n) if adj[i][k] and adj[j][k])
        if adj[i][j]:
            if lam is None:
                lam = c
            elif lam != c:
                return None
        else:
            if mu is None:
                mu = c
            elif mu != c:
                return None
    return n, r, lam or 0, mu or 0


class NaiveGF:
    """GF(p^k) with elements as coefficient tuples (low degree first), given a modulus."""

    def __init__(self, p: int, modulus):
        self.p = p
        self.mod = list(modulus)  # monic, low degree first, length k + 1
        self.k = len(self.mod) - 1

    def mul(self, a, b):
        p, k = self.p, self.k
        prod = [0] * (2 * k)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
        for d in range(2 * k - 1, k - 1, -1):
            c = prod[d]
            if c:
                for i in range(k + 1):
                    prod[d - k + i] = (prod[d - k + i] - c * self.mod[i]) % p
        return tuple(prod[:k])

    def encode(self, a) -> int:
        return sum(c * self.p**i for i, c in enumerate(a))

    def decode(self, x: int):
        return tuple((x // self.p**i) % self.p for i in range(self.k))

    def sub(self, x: int, y: int) -> int:
        a, b = self.decode(x), self.decode(y)
        return self.encode(tuple((u - v) % self.p for u, v in zip(a, b)))

    def powers(self, g):
        """Encoded g^0, g^1, ... until the cycle closes."""
        one = tuple([1] + [0] * (self.k - 1))
        out, cur = [], one
        while True:
            out.append(self.encode(cur))
            cur = self.mul(cur, g)
            if cur == one:
                return out


def brute_jacobi(q: int, powers, sub, a: int, b: int) -> complex:
    """Sum over t != 0, 1 of alpha(t) beta(1 - t) with alpha(g^j) = zeta_{q-1}^(a j), beta likewise with b."""
    log = {x: j for j, x in enumerate(powers)}
    z = cmath.exp(2j * cmath.pi / (q - 1))
    total = 0j
    for t in range(q):
        if t in (0, 1):
            continue
        u = sub(1, t)
        if u == 0:
            continue
        total += z ** ((a * log[t] + b * log[u]) % (q - 1))
    return total


def naive_convolution(orders, f, g):
    """(f * g)(x) = sum_h f(h) g(x - h) on the product of Z/orders, values indexed in C order."""
    elems = list(itertools.product(*(range(o) for o in orders)))
    index = {e: i for i, e in enumerate(elems)}
    out = []
    for x in elems:
        s = 0
        for h in elems:
            d = tuple((xi - hi) % o for xi, hi, o in zip(x, h, orders))
            s += f[index[h]] * g[index[d]]
        out.append(s)
    return out


def jordan_formula(r, t):
    """1/2 sum_k (r_ik t_jk + t_ik r_jk) off the diagonal, by loops."""
    n = len(r)
    return [
        [0 if i == j else sum(r[i][k] * t[j][k] + t[i][k] * r[j][k] for k in range(n)) / 2 for j in range(n)]
        for i in range(n)
    ]
