"""Flat orthogonal matrices of arbitrary order via submatrix orthogonalization.

A scaled Hadamard matrix of order m, split as [[A, B], [C, D]] with A of
size k x k, collapses to the orthogonal matrix D + C (I - A)^-1 B of order
m - k.  When k < sqrt(m) every entry of the result is at most
1/(sqrt(m) - k) in absolute value, so picking the smallest constructible
m >= n yields flat orthogonal matrices at every order n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constructions import CatalogGapError, HadamardOrderCatalog, build_catalog

__all__ = [
    "OrthMatrix",
    "FlatCertificate",
    "SingularSplitError",
    "submatrix_orthogonalize",
    "flat_orthogonal",
    "u_upper_bound_table",
]

ORTH_DEFECT_PER_N = 1e-10


class SingularSplitError(ValueError):
    """I - A is numerically singular for the requested split."""

    def __init__(self, sigma_min: float):
        super().__init__(
            f"I - A is numerically singular: smallest singular value "
            f"{sigma_min:.3e} <= 1e-08"
        )
        self.sigma_min = sigma_min


@dataclass(frozen=True)
class OrthMatrix:
    """Real orthogonal matrix with cached max-entry and orthogonality defect."""

    entries: np.ndarray
    max_abs_entry: float
    orthogonality_defect: float

    @classmethod
    def from_array(cls, m: np.ndarray, defect_tol_per_n: float = ORTH_DEFECT_PER_N):
        m = np.asarray(m, dtype=np.float64)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {m.shape}")
        n = m.shape[0]
        defect = float(np.abs(m.T @ m - np.eye(n)).max())
        if defect > defect_tol_per_n * n:
            raise ValueError(
                f"matrix is not orthogonal: defect {defect:.3e} > "
                f"{defect_tol_per_n * n:.3e}"
            )
        m = m.copy()
        m.setflags(write=False)
        return cls(
            entries=m,
            max_abs_entry=float(np.abs(m).max()),
            orthogonality_defect=defect,
        )

    @property
    def n(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True)
class FlatCertificate:
    """Achieved flatness of an order-n matrix cut from an order-m Hadamard."""

    n: int
    m: int
    k: int
    max_entry: float
    bound: float  # 1 / (sqrt(m) - k)

    def holds(self, slack: float = 1e-12) -> bool:
        return self.k < math.sqrt(self.m) and self.max_entry <= self.bound + slack


def submatrix_orthogonalize(M: OrthMatrix, k: int) -> OrthMatrix:
    """Collapse the leading k x k block: returns D + C (I - A)^-1 B.

    The output has order n - k and is orthogonal whenever I - A is
    invertible (checked: smallest singular value above 1e-8).
    """
    n = M.n
    if not 0 < k < n:
        raise ValueError(f"block size k={k} must be in [1, {n - 1}]")
    E = M.entries
    A, B = E[:k, :k], E[:k, k:]
    C, D = E[k:, :k], E[k:, k:]
    IA = np.eye(k) - A
    smin = float(np.linalg.svd(IA, compute_uv=False)[-1])
    if smin <= 1e-8:
        raise SingularSplitError(smin)
    out = D + C @ np.linalg.solve(IA, B)
    # output defect tolerance scales with the input order, not the output's
    return OrthMatrix.from_array(out, defect_tol_per_n=1e-9 * n / (n - k))


def flat_orthogonal(
    n: int,
    catalog: HadamardOrderCatalog | None = None,
    seed: int | None = None,
) -> tuple[OrthMatrix, FlatCertificate]:
    """Orthogonal matrix of order n with max entry <= 1/(sqrt(m) - k).

    Uses the smallest constructible Hadamard order m >= n with
    k = m - n < sqrt(m).  With a seed, the Hadamard rows/columns are
    permuted before the split (different splits give different flat
    matrices); the default split is the deterministic leading block.
    """
    if catalog is None:
        catalog = build_catalog(max(256, 2 * n))
    chosen = None
    for m in catalog.orders():
        if m >= n and (m - n) < math.sqrt(m):
            chosen = m
            break
    if chosen is None:
        below = max((o for o in catalog.orders() if o < n), default=None)
        above = min((o for o in catalog.orders() if o >= n), default=None)
        raise CatalogGapError(
            f"catalog gap at n={n}: no order m >= n with m - n < sqrt(m) "
            f"(nearest orders: {below}, {above})",
            below=below,
            above=above,
        )
    m = chosen
    k = m - n
    H = catalog.build(m).entries
    if seed is not None:
        rng = np.random.Generator(np.random.Philox(key=[seed, 0]))
        H = H[rng.permutation(m), :][:, rng.permutation(m)]
    M = OrthMatrix.from_array(H / math.sqrt(m))
    out = M if k == 0 else submatrix_orthogonalize(M, k)
    cert = FlatCertificate(
        n=n, m=m, k=k, max_entry=out.max_abs_entry, bound=1.0 / (math.sqrt(m) - k)
    )
    return out, cert


def u_upper_bound_table(
    n_min: int,
    n_max: int,
    catalog: HadamardOrderCatalog | None = None,
) -> list[dict]:
    """Per-order achieved flatness vs the pipeline bound vs 1/sqrt(n).

    Rows where the catalog has no usable order are flagged, not fatal.
    """
    if catalog is None:
        catalog = build_catalog(max(256, 2 * n_max))
    rows = []
    for n in range(n_min, n_max + 1):
        try:
            orth, cert = flat_orthogonal(n, catalog)
        except CatalogGapError:
            rows.append(
                {"n": n, "gap": True, "max_entry": None, "bound": None,
                 "lower": 1.0 / math.sqrt(n)}
            )
            continue
        rows.append(
            {
                "n": n,
                "gap": False,
                "m": cert.m,
                "k": cert.k,
                "max_entry": cert.max_entry,
                "bound": cert.bound,
                "lower": 1.0 / math.sqrt(n),
            }
        )
    return rows
