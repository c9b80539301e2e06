"""Small prime-power fields for the quadratic-residue constructions.

Only the handful of fields the construction catalog needs: GF(p) for any
prime p, plus GF(q) for q in {9, 25, 27, 49, 81, 121, 125} via hardcoded
irreducible polynomials.  Elements are integers 0..q-1 encoding base-p
coefficient vectors; addition/multiplication go through small tables.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["FiniteFieldSpec", "PrimePowerField", "is_prime", "field_for"]

# monic irreducible polynomials over GF(p), constant term first
_IRREDUCIBLE = {
    9: (3, 2, (1, 0, 1)),        # x^2 + 1
    25: (5, 2, (1, 1, 1)),       # x^2 + x + 1
    27: (3, 3, (1, 2, 0, 1)),    # x^3 + 2x + 1
    49: (7, 2, (1, 0, 1)),       # x^2 + 1
    81: (3, 4, (2, 0, 0, 2, 1)), # x^4 + 2x^3 + 2
    121: (11, 2, (1, 0, 1)),     # x^2 + 1
    125: (5, 3, (1, 1, 0, 1)),   # x^3 + x + 1
}


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class FiniteFieldSpec:
    """q = p^k with the defining polynomial when k > 1."""

    q: int
    p: int
    k: int
    irreducible_poly: tuple[int, ...] | None = None

    @classmethod
    def of(cls, q: int) -> "FiniteFieldSpec":
        if is_prime(q):
            return cls(q=q, p=q, k=1)
        if q in _IRREDUCIBLE:
            p, k, poly = _IRREDUCIBLE[q]
            return cls(q=q, p=p, k=k, irreducible_poly=poly)
        raise ValueError(
            f"unsupported field order {q}: must be prime or one of "
            f"{sorted(_IRREDUCIBLE)}"
        )


class PrimePowerField:
    """GF(q) arithmetic with precomputed add/sub tables and square set."""

    def __init__(self, spec: FiniteFieldSpec):
        self.spec = spec
        q, p, k = spec.q, spec.p, spec.k
        self.q = q
        if k == 1:
            grid = np.arange(q)
            self.sub = (grid[:, None] - grid[None, :]) % q
            squares = {(x * x) % q for x in range(1, q)}
        else:
            poly = spec.irreducible_poly
            to_vec = lambda x: [(x // p**i) % p for i in range(k)]
            from_vec = lambda v: sum(c * p**i for i, c in enumerate(v))

            def mul(x, y):
                vx, vy = to_vec(x), to_vec(y)
                prod = [0] * (2 * k - 1)
                for i, a in enumerate(vx):
                    for j, b in enumerate(vy):
                        prod[i + j] = (prod[i + j] + a * b) % p
                while len(prod) > k:
                    lead = prod[-1]
                    for i in range(k + 1):
                        prod[len(prod) - 1 - k + i] = (
                            prod[len(prod) - 1 - k + i] - lead * poly[i]
                        ) % p
                    prod.pop()
                return from_vec(prod)

            sub = np.zeros((q, q), dtype=np.int64)
            for x in range(q):
                vx = to_vec(x)
                for y in range(q):
                    vy = to_vec(y)
                    sub[x, y] = from_vec([(a - b) % p for a, b in zip(vx, vy)])
            self.sub = sub
            squares = {mul(x, x) for x in range(1, q)}
        self._squares = frozenset(squares)

    def quadratic_character(self, x: int) -> int:
        """chi(0) = 0; chi(x) = +1 iff x is a nonzero square."""
        if x == 0:
            return 0
        return 1 if x in self._squares else -1

    def jacobsthal(self) -> np.ndarray:
        """Matrix Q with Q[a, b] = chi(a - b) over the element enumeration."""
        q = self.q
        chi = np.zeros(q, dtype=np.int64)
        for x in range(1, q):
            chi[x] = 1 if x in self._squares else -1
        return chi[self.sub]


def field_for(q: int) -> PrimePowerField:
    return PrimePowerField(FiniteFieldSpec.of(q))
