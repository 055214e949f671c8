"""Seeded random unimodular matrices."""

from __future__ import annotations

import random

from .intmatrix import IntMatrix


def random_unimodular_pair(
    n: int, rng: random.Random, steps: int | None = None, bound: int = 2
) -> tuple[IntMatrix, IntMatrix]:
    """``(U, U^-1)`` with ``U`` a product of ``steps`` elementary matrices.

    Off-diagonal multipliers lie in ``[-bound, bound]``.  Row swaps and sign
    flips are mixed in so that the result is not always unipotent.
    """
    if steps is None:
        steps = 3 * n
    a = [[int(i == j) for j in range(n)] for i in range(n)]
    inv = [row[:] for row in a]
    if n < 2:
        if n == 1 and rng.random() < 0.5:
            a[0][0] = inv[0][0] = -1
        return IntMatrix(a, n), IntMatrix(inv, n)
    for _ in range(steps):
        kind = rng.random()
        i, j = rng.sample(range(n), 2)
        if kind < 0.8:
            c = rng.randint(-bound, bound) or 1
            a[i] = [x + c * y for x, y in zip(a[i], a[j])]
            for row in inv:
                row[j] -= c * row[i]
        elif kind < 0.9:
            a[i], a[j] = a[j], a[i]
            for row in inv:
                row[i], row[j] = row[j], row[i]
        else:
            a[i] = [-x for x in a[i]]
            for row in inv:
                row[i] = -row[i]
    return IntMatrix(a, n), IntMatrix(inv, n)


def random_unimodular(n: int, rng: random.Random, steps: int | None = None, bound: int = 2) -> IntMatrix:
    """Random matrix of determinant ``+-1``; see ``random_unimodular_pair``."""
    return random_unimodular_pair(n, rng, steps, bound)[0]
