"""Seeded generators of test inputs shared by several test modules."""

from __future__ import annotations

import random
from fractions import Fraction

from ctw.group_ring import FinAbelianGroup, GroupFunction, composite_solution, srg_function_to_solution


def _factorizations(n: int) -> list[list[int]]:
    """Ordered factorizations of n into factors >= 2 (the cyclic-order lists)."""
    if n == 1:
        return [[]]
    out = []
    for d in range(2, n + 1):
        if n % d == 0:
            out += [[d] + rest for rest in _factorizations(n // d)]
    return out


GROUPS = [FinAbelianGroup(f) for n in range(2, 25) for f in _factorizations(n) if len(f) <= 3]


def _orbits(G: FinAbelianGroup) -> list[list[int]]:
    seen, out = set(), []
    for g in range(1, G.n):
        if g not in seen:
            orb = sorted({g, int(G.neg_table[g])})
            seen.update(orb)
            out.append(orb)
    return out


def random_symmetric(G: FinAbelianGroup, rng: random.Random, zero_sum: bool = True) -> GroupFunction:
    """Random rational phi with phi(0) = 0, phi(-g) = phi(g) and (optionally) zero sum."""
    vals = [Fraction(0)] * G.n
    orbits = _orbits(G)
    for orb in orbits:
        v = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
        for g in orb:
            vals[g] = v
    if zero_sum and orbits:
        orb = orbits[-1]
        others = sum(vals) - sum(vals[g] for g in orb)
        for g in orb:
            vals[g] = -others / len(orb)
    return GroupFunction(G, vals)


def known_solution(rng: random.Random) -> GroupFunction:
    """A scaled composite or Cayley-srg solution on a group of order <= 24."""
    kind = rng.choice(["composite", "composite", "rook", "paley5", "paley13"])
    if kind == "composite":
        l, m = rng.choice([(l, m) for l in range(2, 13) for m in range(2, 13) if l * m <= 24])
        phi, _ = composite_solution(l, m, rng.choice([1, 2, 3]))
    elif kind == "rook":
        m = rng.choice([2, 3, 4])
        G = FinAbelianGroup([m, m])
        supp = [G.index((i, j)) for i in range(m) for j in range(m) if (i == 0) != (j == 0)]
        phi, _ = srg_function_to_solution(GroupFunction.indicator(G, supp))
    else:
        q = 5 if kind == "paley5" else 13
        G = FinAbelianGroup([q])
        squares = sorted({(x * x) % q for x in range(1, q)})
        phi, _ = srg_function_to_solution(GroupFunction.indicator(G, squares))
    t = Fraction(rng.choice([-3, -2, -1, 1, 2, 5]), rng.choice([1, 2, 7]))
    return phi * t


def mixed_phi_cases(count: int = 200, seed: int = 2024) -> list[GroupFunction]:
    """Solutions, perturbed solutions, random symmetric functions and zero, in a fixed order."""
    rng = random.Random(seed)
    out = []
    for i in range(count):
        r = i % 5
        if r in (0, 1):
            out.append(known_solution(rng))
        elif r == 2:
            phi = known_solution(rng)
            G = phi.group
            orbs = _orbits(G)
            if len(orbs) >= 2:
                a, b = rng.sample(orbs, 2)
                eps = Fraction(1, rng.randint(2, 9))
                vals = list(phi.values)
                # move mass between two orbits, keeping the linear conditions
                for g in a:
                    vals[g] += eps / len(a)
                for g in b:
                    vals[g] -= eps / len(b)
                phi = GroupFunction(G, vals)
            out.append(phi)
        elif r == 3:
            out.append(random_symmetric(rng.choice(GROUPS), rng))
        else:
            G = rng.choice(GROUPS)
            out.append(GroupFunction.zeros(G) if rng.random() < 0.2 else random_symmetric(G, rng, zero_sum=False))
    assert all(phi.n <= 24 for phi in out)
    return out
