"""Exact integer Gram algebra and floating spectral computations.

Condition numbers are always derived from the exact integer Gram matrix
A^T A: its entries are computed in integer arithmetic, and kappa is
sqrt(lambda_max / lambda_min) of a symmetric eigendecomposition.  This
gives ~1e-12 relative accuracy at the orders we care about (n <= 64),
which is what the 10-significant-digit reporting convention needs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

__all__ = [
    "SignMatrix",
    "GramMatrix",
    "SpectralReport",
    "IntPolynomial",
    "PerturbationReport",
    "SINGULAR_TOLERANCE_PER_N",
    "gram",
    "condition_number",
    "condition_number_orth_perturbed",
    "charpoly_exact",
    "minpoly_residual",
    "kronecker",
    "operator_norm",
]

# lambda_min <= n * 2^-40 is treated as exact singularity (kappa = inf);
# nonsingular integer Grams at desk scale have lambda_min >> this.
SINGULAR_TOLERANCE_PER_N = 2.0 ** -40


@dataclass(frozen=True)
class SignMatrix:
    """Square matrix with every entry in {-1, +1}."""

    entries: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.entries, dtype=np.int64)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {a.shape}")
        if a.shape[0] < 1:
            raise ValueError("order must be >= 1")
        if not np.isin(a, (-1, 1)).all():
            bad = np.argwhere(~np.isin(a, (-1, 1)))[0]
            raise ValueError(
                f"entry at ({bad[0]}, {bad[1]}) is {a[bad[0], bad[1]]}, not +-1"
            )
        a.setflags(write=False)
        object.__setattr__(self, "entries", a)

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def sign_normalized(self) -> "SignMatrix":
        """Flip rows/columns so the first row and column are all +1.

        Used for registry deduplication; kappa is invariant under sign
        flips.  Full canonicalization over permutations is deliberately
        not attempted.
        """
        a = self.entries.copy()
        a = a * a[0, :][None, :]      # column flips: first row -> +1
        a = a * a[:, 0][:, None]      # row flips: first column -> +1
        return SignMatrix(a)


@dataclass(frozen=True)
class GramMatrix:
    """Exact integer A^T A of a sign matrix: symmetric PSD, diagonal n,
    off-diagonal entries congruent to n mod 2."""

    entries: np.ndarray

    def __post_init__(self):
        g = np.asarray(self.entries, dtype=np.int64)
        if g.ndim != 2 or g.shape[0] != g.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {g.shape}")
        n = g.shape[0]
        if not np.array_equal(g, g.T):
            raise ValueError("Gram matrix must be symmetric")
        if not (np.diag(g) == n).all():
            raise ValueError("Gram diagonal must equal the order")
        off = g[~np.eye(n, dtype=bool)]
        if off.size and ((np.abs(off) > n).any() or ((off - n) % 2 != 0).any()):
            raise ValueError("off-diagonal entries must be |e| <= n and e == n mod 2")
        g.setflags(write=False)
        object.__setattr__(self, "entries", g)

    @property
    def n(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True)
class SpectralReport:
    sigma_min: float
    sigma_max: float
    kappa: float
    eigenvalues_of_gram: tuple[float, ...]


@dataclass(frozen=True)
class IntPolynomial:
    """Integer polynomial, constant term first."""

    coefficients: tuple[int, ...]

    def __post_init__(self):
        coeffs = tuple(int(c) for c in self.coefficients)
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs = coeffs[:-1]
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, x: float) -> float:
        """Evaluate at a binary64 point, exactly in rational arithmetic."""
        if math.isinf(x) or math.isnan(x):
            return math.inf
        xf = Fraction(x)
        acc = Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * xf + c
        return float(acc)

    @classmethod
    def parse(cls, text: str) -> "IntPolynomial":
        """Parse comma-separated integer coefficients, constant first."""
        return cls(tuple(int(t.strip()) for t in text.split(",")))

    def __str__(self) -> str:
        return ",".join(str(c) for c in self.coefficients)


@dataclass(frozen=True)
class PerturbationReport:
    """Spectral report of a rounded matrix plus the singular-value sandwich
    [1/u - ||E||_op, 1/u + ||E||_op] obtained from Weyl's inequality."""

    report: SpectralReport
    error_norm: float
    sigma_lo: float
    sigma_hi: float
    kappa_bound: float


def gram(A: SignMatrix) -> GramMatrix:
    """Exact integer A^T A."""
    a = A.entries
    return GramMatrix(a.T @ a)


def _spectral_from_gram(g: np.ndarray) -> SpectralReport:
    n = g.shape[0]
    ev = np.linalg.eigvalsh(g.astype(np.float64))
    lmin = float(ev[0])
    lmax = float(ev[-1])
    sigma_max = math.sqrt(max(lmax, 0.0))
    if lmin <= n * SINGULAR_TOLERANCE_PER_N:
        sigma_min = 0.0
        kappa = math.inf
    else:
        sigma_min = math.sqrt(lmin)
        kappa = sigma_max / sigma_min
    return SpectralReport(
        sigma_min=sigma_min,
        sigma_max=sigma_max,
        kappa=kappa,
        eigenvalues_of_gram=tuple(float(x) for x in ev),
    )


def condition_number(A: SignMatrix) -> SpectralReport:
    """kappa(A) = sigma_max/sigma_min via eigenvalues of the exact Gram."""
    return _spectral_from_gram(gram(A).entries)


def gram_condition_number(G: GramMatrix) -> SpectralReport:
    """Spectral report of the sign matrix underlying an exact Gram."""
    return _spectral_from_gram(G.entries)


def operator_norm(E: np.ndarray, tol: float = 1e-10, max_iter: int = 2000) -> float:
    """Largest singular value of a dense matrix.

    Power iteration on E^T E from a fixed start vector; falls back to a
    full SVD if the Rayleigh quotient has not settled within max_iter.
    """
    E = np.asarray(E, dtype=np.float64)
    if E.size == 0:
        return 0.0
    G = E.T @ E
    v = np.ones(G.shape[0]) / math.sqrt(G.shape[0])
    lam = 0.0
    for _ in range(max_iter):
        w = G @ v
        norm = np.linalg.norm(w)
        if norm == 0.0:
            return 0.0
        v = w / norm
        lam_new = float(v @ (G @ v))
        if abs(lam_new - lam) <= tol * max(lam_new, 1.0):
            return math.sqrt(max(lam_new, 0.0))
        lam = lam_new
    return float(np.linalg.svd(E, compute_uv=False)[0])


def condition_number_orth_perturbed(M: np.ndarray, X: SignMatrix) -> PerturbationReport:
    """Report kappa(X) together with the Weyl sandwich around 1/||M||_max.

    M is an orthogonal matrix whose entrywise rescaling M/||M||_max is the
    expectation of the rounding that produced X.  Every singular value of X
    lies within ||X - M/||M||_max||_op of 1/||M||_max.
    """
    M = np.asarray(M, dtype=np.float64)
    if M.shape != X.entries.shape:
        raise ValueError(f"order mismatch: {M.shape} vs {X.entries.shape}")
    u = float(np.abs(M).max())
    E = X.entries - M / u
    err = operator_norm(E)
    report = condition_number(X)
    sigma_lo = 1.0 / u - err
    sigma_hi = 1.0 / u + err
    kappa_bound = sigma_hi / sigma_lo if sigma_lo > 0 else math.inf
    return PerturbationReport(
        report=report,
        error_norm=err,
        sigma_lo=sigma_lo,
        sigma_hi=sigma_hi,
        kappa_bound=kappa_bound,
    )


def charpoly_exact(G: GramMatrix) -> IntPolynomial:
    """Monic characteristic polynomial of G with exact integer coefficients.

    Faddeev-LeVerrier recurrence over Python ints: the trace divisions are
    exact for integer matrices, and coefficients beyond 64-bit range (they
    exceed it near n = 30) stay exact.
    """
    n = G.n
    a = [[int(x) for x in row] for row in G.entries]

    def matmul(p, q):
        return [
            [sum(p[i][k] * q[k][j] for k in range(n)) for j in range(n)]
            for i in range(n)
        ]

    m = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    coeffs_desc = [1]  # leading coefficient of t^n
    for k in range(1, n + 1):
        am = matmul(a, m)
        tr = sum(am[i][i] for i in range(n))
        c, rem = divmod(-tr, k)
        if rem:
            raise ArithmeticError("trace recurrence produced a non-integer")
        coeffs_desc.append(c)
        m = [[am[i][j] + (c if i == j else 0) for j in range(n)] for i in range(n)]
    return IntPolynomial(tuple(reversed(coeffs_desc)))


def minpoly_residual(p: IntPolynomial, kappa: float) -> float:
    """p(kappa) evaluated exactly over the rationals (signed value)."""
    if not any(p.coefficients):
        raise ValueError("polynomial must be nonzero")
    return p(kappa)


def kronecker(A: SignMatrix, B: SignMatrix) -> SignMatrix:
    """Kronecker product; singular values multiply pairwise, so
    kappa(A (x) B) = kappa(A) * kappa(B)."""
    return SignMatrix(np.kron(A.entries, B.entries))
