"""Per-matrix condition number lower bounds from sign cliques in the Gram.

The signs of the off-diagonal Gram entries color the complete graph on
the columns.  A monochromatic k-clique exposes a poorly conditioned
principal submatrix: all-positive cliques give
kappa >= sqrt(1 + k/(n-1)), all-negative cliques give
kappa >= sqrt(1 + k/(n+1-k)).  For orders not divisible by 4 there is no
zero-colored triangle (three mutually orthogonal +-1 columns require
4 | n), which guarantees a monochromatic edge among any three columns.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .linalg import GramMatrix, SignMatrix, gram

__all__ = [
    "CliqueCertificate",
    "sign_coloring",
    "best_clique_certificate",
    "verify_certificate",
    "check_orthogonal_triple_obstruction",
    "kappa_floor",
    "max_clique",
    "orthogonal_triple_exists",
]

EXACT_CLIQUE_LIMIT = 20


@dataclass(frozen=True)
class CliqueCertificate:
    """Columns whose pairwise Gram entries share a strict sign.

    k = 1 is the vacuous certificate with bound 1 (a single column says
    nothing); it is still emitted so downstream reports have a uniform
    shape.
    """

    indices: tuple[int, ...]
    sign: str  # "positive" | "negative"
    k: int
    n: int
    bound: float

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "sign": self.sign,
            "indices": list(self.indices),
            "bound": self.bound,
            "verified": True,
        }


def _bound(sign: str, k: int, n: int) -> float:
    if k <= 1:
        return 1.0
    if sign == "positive":
        return math.sqrt(1.0 + k / (n - 1.0))
    if n + 1 - k <= 0:
        return math.inf
    return math.sqrt(1.0 + k / (n + 1.0 - k))


def sign_coloring(G: GramMatrix) -> np.ndarray:
    """Entrywise sign of the Gram: -1/0/+1, diagonal zeroed.

    For odd orders the 0 color never appears off the diagonal (dot
    products of +-1 vectors share the parity of n).
    """
    colors = np.sign(G.entries).astype(np.int64)
    np.fill_diagonal(colors, 0)
    return colors


def max_clique(adjacency: np.ndarray) -> list[int]:
    """Maximum clique of a small undirected graph.

    Exact branch and bound with greedy-coloring pruning up to
    EXACT_CLIQUE_LIMIT vertices; greedy plus single-swap augmentation
    beyond that.  Deterministic for a fixed adjacency.
    """
    n = adjacency.shape[0]
    if n == 0:
        return []
    neighbors = [frozenset(np.flatnonzero(adjacency[v]).tolist()) for v in range(n)]
    if n <= EXACT_CLIQUE_LIMIT:
        return _max_clique_exact(n, neighbors)
    return _max_clique_greedy(n, neighbors)


def _greedy_color_order(cand: list[int], neighbors) -> tuple[list[int], list[int]]:
    # classes of mutually nonadjacent vertices; clique size within cand is
    # at most the number of classes used
    classes: list[list[int]] = []
    color_of = {}
    for v in cand:
        placed = False
        for ci, cls in enumerate(classes):
            if not any(u in neighbors[v] for u in cls):
                cls.append(v)
                color_of[v] = ci
                placed = True
                break
        if not placed:
            classes.append([v])
            color_of[v] = len(classes) - 1
    order = [v for cls in classes for v in cls]
    return order, [color_of[v] + 1 for v in order]


def _max_clique_exact(n: int, neighbors) -> list[int]:
    best: list[int] = []

    def expand(current: list[int], cand: list[int]):
        nonlocal best
        order, bounds = _greedy_color_order(cand, neighbors)
        for i in range(len(order) - 1, -1, -1):
            if len(current) + bounds[i] <= len(best):
                return
            v = order[i]
            new_cand = [u for u in order[:i] if u in neighbors[v]]
            current.append(v)
            if len(current) > len(best):
                best = sorted(current)
            if new_cand:
                expand(current, new_cand)
            current.pop()

    expand([], list(range(n)))
    return best


def _max_clique_greedy(n: int, neighbors) -> list[int]:
    degree = [len(neighbors[v]) for v in range(n)]
    best: list[int] = []
    for start in sorted(range(n), key=lambda v: -degree[v]):
        clique = [start]
        cand = sorted(neighbors[start])
        while cand:
            v = max(cand, key=lambda u: (len(neighbors[u] & set(cand)), -u))
            clique.append(v)
            cand = [u for u in cand if u in neighbors[v]]
        improved = True
        while improved:  # single swap: drop one, add two
            improved = False
            cset = set(clique)
            for drop in list(clique):
                rest = cset - {drop}
                adds = [
                    u for u in range(n)
                    if u not in cset and rest <= neighbors[u]
                ]
                for a, b in itertools.combinations(adds, 2):
                    if b in neighbors[a]:
                        clique = sorted(rest | {a, b})
                        cset = set(clique)
                        improved = True
                        break
                if improved:
                    break
        if len(clique) > len(best):
            best = sorted(clique)
    return best


def best_clique_certificate(A: SignMatrix) -> CliqueCertificate:
    """The sign-clique certificate with the largest bound.

    Searches both color classes; the returned certificate is re-verified
    independently of the search, so it is sound regardless of whether the
    clique is maximum.
    """
    n = A.n
    colors = sign_coloring(gram(A))
    best = CliqueCertificate(indices=(0,), sign="positive", k=1, n=n, bound=1.0)
    for sign_name, value in (("positive", 1), ("negative", -1)):
        adj = colors == value
        np.fill_diagonal(adj, False)
        clique = max_clique(adj)
        if len(clique) < 2:
            continue
        cert = CliqueCertificate(
            indices=tuple(clique),
            sign=sign_name,
            k=len(clique),
            n=n,
            bound=_bound(sign_name, len(clique), n),
        )
        if cert.bound > best.bound:
            best = cert
    verify_certificate(best, A)
    return best


def verify_certificate(cert: CliqueCertificate, A: SignMatrix) -> None:
    """Independent check: strict common sign on every pair, bound formula."""
    if cert.k != len(cert.indices):
        raise AssertionError("certificate size mismatch")
    if cert.k == 1:
        if cert.bound != 1.0:
            raise AssertionError("vacuous certificate must have bound 1")
        return
    g = gram(A).entries
    want = 1 if cert.sign == "positive" else -1
    for i, j in itertools.combinations(cert.indices, 2):
        entry = int(g[i, j])
        if entry == 0 or (1 if entry > 0 else -1) != want:
            raise AssertionError(
                f"Gram entry ({i}, {j}) = {entry} breaks the {cert.sign} clique"
            )
    expected = _bound(cert.sign, cert.k, cert.n)
    if abs(cert.bound - expected) > 1e-12:
        raise AssertionError("certificate bound does not match its formula")


@dataclass(frozen=True)
class TripleObstructionReport:
    n: int
    multiple_of_4: bool
    zero_triangle: tuple[int, int, int] | None

    @property
    def confirmed(self) -> bool:
        """True when the order forbids zero triangles and none was found."""
        return self.multiple_of_4 or self.zero_triangle is None


def check_orthogonal_triple_obstruction(A: SignMatrix) -> TripleObstructionReport:
    """Search the columns for a mutually orthogonal triple.

    For n not divisible by 4 a found triple would be a contradiction (and
    indicate a bug); for multiples of 4 triples are allowed.
    """
    n = A.n
    colors = sign_coloring(gram(A))
    zero = colors == 0
    np.fill_diagonal(zero, False)
    triangle = None
    for i, j in itertools.combinations(range(n), 2):
        if not zero[i, j]:
            continue
        both = np.flatnonzero(zero[i] & zero[j])
        both = both[both > j]
        if both.size:
            triangle = (i, j, int(both[0]))
            break
    return TripleObstructionReport(
        n=n, multiple_of_4=(n % 4 == 0), zero_triangle=triangle
    )


def kappa_floor(n: int) -> float:
    """Unconditional lower bound on the best kappa at order n != 0 mod 4.

    Odd orders have no zero-sign column pairs at all; orders 2 mod 4 have
    no zero triangle among any three columns.  Either way some pair shares
    a strict sign, giving the k = 2 bound sqrt(1 + 2/(n-1)).  Requires
    n >= 3: both arguments need three columns or a nonzero pair, and
    Hadamard matrices exist at n = 1, 2.
    """
    if n % 4 == 0:
        raise ValueError(f"n = {n}: no unconditional floor above 1")
    if n < 3:
        raise ValueError(f"n = {n}: Hadamard matrices exist, the floor is 1")
    return math.sqrt(1.0 + 2.0 / (n - 1.0))


def orthogonal_triple_exists(n: int) -> bool:
    """Whether three mutually orthogonal vectors exist in {+-1}^n.

    Exhaustive for n <= 12: coordinate sign flips allow fixing the first
    vector to all-ones, so the other two run over balanced vectors.
    """
    if n > 12:
        raise ValueError("exhaustive check supported for n <= 12 only")
    if n % 2 == 1:
        return False  # odd dot products: not even one orthogonal pair
    half = n // 2
    cands = []
    for pos in itertools.combinations(range(n), half):
        v = -np.ones(n, dtype=np.int64)
        v[list(pos)] = 1
        cands.append(v)
    B = np.stack(cands)
    dots = B @ B.T
    np.fill_diagonal(dots, 1)
    return bool((dots == 0).any())
