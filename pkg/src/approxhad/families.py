"""Explicit infinite families with closed-form condition numbers.

Three families, each certified by an exact integer Gram identity:

* conference-plus-identity: C + I for a symmetric conference matrix C,
  kappa = (sqrt(n-1) + 1)/(sqrt(n-1) - 1);
* Barba matrices: A^T A = (n-1) I + J, kappa = sqrt((2n-1)/(n-1));
* two-circulant block matrices [[R, S], [S^T, -R^T]] whose first rows
  satisfy the autocorrelation identity PAF_r(t) + PAF_s(t) = 2, giving
  A^T A = I_2 (x) ((n-2) I + 2 J) and kappa = sqrt((2n-2)/(n-2)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constructions import paley_conference
from .linalg import SignMatrix, condition_number, gram

__all__ = [
    "SdsPair",
    "FamilyMatrix",
    "BarbaRejection",
    "circulant",
    "paf",
    "conference_plus_identity",
    "verify_barba",
    "sds_search",
    "sds_block_matrix",
]

_KAPPA_RTOL = 1e-10


def circulant(first_row) -> np.ndarray:
    """Row i is the first row cyclically right-shifted by i."""
    row = np.asarray(first_row, dtype=np.int64)
    L = len(row)
    idx = (np.arange(L)[None, :] - np.arange(L)[:, None]) % L
    return row[idx]


def paf(x, t: int) -> int:
    """Periodic autocorrelation sum_i x_i x_(i+t mod L)."""
    x = np.asarray(x, dtype=np.int64)
    return int(np.dot(x, np.roll(x, -t)))


@dataclass(frozen=True)
class SdsPair:
    """Two +-1 sequences of equal length whose periodic autocorrelations
    sum to 2 at every nonzero shift."""

    r: tuple[int, ...]
    s: tuple[int, ...]

    def __post_init__(self):
        r, s = tuple(self.r), tuple(self.s)
        if len(r) != len(s):
            raise ValueError("sequences must have equal length")
        if not all(v in (-1, 1) for v in r + s):
            raise ValueError("sequence entries must be +-1")
        for t in range(1, len(r)):
            total = paf(r, t) + paf(s, t)
            if total != 2:
                raise ValueError(
                    f"autocorrelation identity fails at shift {t}: "
                    f"{paf(r, t)} + {paf(s, t)} = {total} != 2"
                )
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "s", s)

    @property
    def half(self) -> int:
        return len(self.r)

    def serialize(self) -> str:
        to_txt = lambda seq: "".join("+" if v > 0 else "-" for v in seq)
        return f"{to_txt(self.r)} {to_txt(self.s)}"


@dataclass(frozen=True)
class FamilyMatrix:
    family: str  # "conference_plus_identity" | "barba" | "sds_block"
    matrix: SignMatrix
    n: int
    kappa_closed_form: float
    gram_identity: str


class BarbaRejection(ValueError):
    """The Gram is not (n-1) I + J; carries the first offending entry."""

    def __init__(self, i: int, j: int, got: int, expected: int):
        super().__init__(
            f"Gram entry ({i}, {j}) is {got}, expected {expected}"
        )
        self.position = (i, j)
        self.got = got
        self.expected = expected


def _check_closed_form(A: SignMatrix, closed: float, family: str) -> None:
    kappa = condition_number(A).kappa
    if not math.isfinite(kappa) or abs(kappa - closed) > _KAPPA_RTOL * closed:
        raise AssertionError(
            f"{family}: computed kappa {kappa!r} does not match the closed "
            f"form {closed!r}"
        )


def conference_plus_identity(n: int) -> FamilyMatrix:
    """C + I for the symmetric conference matrix of order n = q + 1.

    Verifies C = C^T, tr C = 0 and C^2 = (n-1) I in exact integers, which
    pins the eigenvalues of C at +-sqrt(n-1) with multiplicity n/2 each.
    """
    q = n - 1
    try:
        C = paley_conference(q)
    except ValueError as exc:
        raise ValueError(f"no supported conference matrix of order {n}: {exc}")
    if not np.array_equal(C, C.T):
        raise AssertionError("conference matrix is not symmetric")
    if int(np.trace(C)) != 0:
        raise AssertionError("conference matrix has nonzero trace")
    if not np.array_equal(C @ C, q * np.eye(n, dtype=np.int64)):
        raise AssertionError("C^2 != (n-1) I")
    A = SignMatrix(C + np.eye(n, dtype=np.int64))
    closed = (math.sqrt(q) + 1.0) / (math.sqrt(q) - 1.0)
    _check_closed_form(A, closed, "conference_plus_identity")
    return FamilyMatrix(
        family="conference_plus_identity",
        matrix=A,
        n=n,
        kappa_closed_form=closed,
        gram_identity="A^T A = n I + 2 C",
    )


def verify_barba(A: SignMatrix) -> FamilyMatrix:
    """Accept A iff its Gram is exactly (n-1) I + J."""
    n = A.n
    g = gram(A).entries
    expected = (n - 1) * np.eye(n, dtype=np.int64) + 1
    if not np.array_equal(g, expected):
        diff = np.argwhere(g != expected)
        i, j = (int(v) for v in diff[0])
        raise BarbaRejection(i, j, int(g[i, j]), int(expected[i, j]))
    closed = math.sqrt((2 * n - 1) / (n - 1))
    _check_closed_form(A, closed, "barba")
    return FamilyMatrix(
        family="barba",
        matrix=A,
        n=n,
        kappa_closed_form=closed,
        gram_identity="A^T A = (n-1) I + J",
    )


def _canonical_sequence(seq: tuple[int, ...]) -> tuple[int, ...]:
    # rotations and global negation preserve the autocorrelation; pick the
    # lexicographically largest representative (starts with +1)
    L = len(seq)
    best = None
    for sign in (1, -1):
        for shift in range(L):
            cand = tuple(sign * seq[(i + shift) % L] for i in range(L))
            if best is None or cand > best:
                best = cand
    return best


def sds_search(half: int) -> list[SdsPair]:
    """All sequence pairs of length `half` satisfying the autocorrelation
    identity, up to cyclic rotation and global negation of each sequence.

    Exhaustive over 2^(half-1) sequences per side (the first entry is
    pinned to +1, which negation symmetry allows), matching complementary
    autocorrelation vectors through a hash bucket.
    """
    if half < 1:
        raise ValueError("length must be >= 1")
    if half > 16:
        raise ValueError("exhaustive search supports lengths up to 16")
    if half == 1:
        return [SdsPair((1,), (1,))]
    n_shifts = half // 2  # PAF(t) = PAF(half - t)
    count = 1 << (half - 1)
    bits = ((np.arange(count)[:, None] >> np.arange(half - 1)) & 1) * 2 - 1
    seqs = np.hstack([np.ones((count, 1), dtype=np.int64), bits])
    pafs = np.stack(
        [np.einsum("ij,ij->i", seqs, np.roll(seqs, -t, axis=1)) for t in range(1, n_shifts + 1)],
        axis=1,
    )
    buckets: dict[tuple[int, ...], list[int]] = {}
    for i in range(count):
        buckets.setdefault(tuple(int(v) for v in pafs[i]), []).append(i)
    found = set()
    for i in range(count):
        want = tuple(2 - int(v) for v in pafs[i])
        for j in buckets.get(want, ()):
            r = _canonical_sequence(tuple(int(v) for v in seqs[i]))
            s = _canonical_sequence(tuple(int(v) for v in seqs[j]))
            found.add((r, s))
    return [SdsPair(r, s) for r, s in sorted(found)]


def sds_block_matrix(pair: SdsPair) -> FamilyMatrix:
    """Assemble [[R, S], [S^T, -R^T]] and certify its Gram identity."""
    R = circulant(pair.r)
    S = circulant(pair.s)
    A = SignMatrix(np.block([[R, S], [S.T, -R.T]]))
    n = A.n
    half = pair.half
    g = gram(A).entries
    block = (n - 2) * np.eye(half, dtype=np.int64) + 2
    expected = np.kron(np.eye(2, dtype=np.int64), block)
    if not np.array_equal(g, expected):
        raise AssertionError("block Gram identity failed despite a valid pair")
    closed = math.sqrt((2 * n - 2) / (n - 2))
    _check_closed_form(A, closed, "sds_block")
    return FamilyMatrix(
        family="sds_block",
        matrix=A,
        n=n,
        kappa_closed_form=closed,
        gram_identity="A^T A = I_2 (x) ((n-2) I + 2 J)",
    )
