"""Minimize kappa over +-1 matrices and structured subclasses.

Three search surfaces:

* exhaustive enumeration of sign-normalized matrices (exact optimum,
  n <= 5 by default, n = 6 behind a long-running flag);
* simulated annealing over a structure class's bit vector, deterministic
  given (class, seed, budget);
* a persistent registry of best-known matrices per (order, class).

Structure classes parameterize matrices by bit vectors: general and
symmetric matrices are sign-normalized (all-+1 first row and column),
circulant classes store first rows.  The objective orders candidates by
kappa, then by larger |det| (determinant maximizers tend to condition
well), then lexicographically.
"""

from __future__ import annotations

import json
import math
import os
import sys
import time
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from .linalg import SINGULAR_TOLERANCE_PER_N, SignMatrix, condition_number

__all__ = [
    "StructureClass",
    "SearchRecord",
    "Registry",
    "RegistryRejection",
    "exhaustive_min",
    "anneal",
    "format_kappa",
    "DEFAULT_BUDGET",
    "SEED_PANEL",
]

DEFAULT_BUDGET = 20000
SEED_PANEL = tuple(range(16))

_KAPPA_TIE = 1e-12


def format_kappa(x: float) -> str:
    """10 significant digits, trailing zeros kept (the table convention)."""
    if math.isinf(x):
        return "inf"
    return f"{x:#.10g}"


@dataclass(frozen=True)
class StructureClass:
    """A bit-vector parameterization of a family of +-1 matrices."""

    kind: str
    block_size: int | None = None

    _KINDS = (
        "general",
        "symmetric",
        "circulant",
        "circulant_core",
        "two_block_circulant",
        "block_circulant",
    )

    def __post_init__(self):
        if self.kind not in self._KINDS:
            raise ValueError(f"unknown structure class {self.kind!r}")
        if self.kind == "block_circulant" and not self.block_size:
            raise ValueError("block_circulant needs a block_size")

    @property
    def name(self) -> str:
        if self.kind == "block_circulant":
            return f"block_circulant{self.block_size}"
        return self.kind

    @classmethod
    def parse(cls, name: str) -> "StructureClass":
        if name.startswith("block_circulant") and name != "block_circulant":
            return cls("block_circulant", block_size=int(name[len("block_circulant"):]))
        return cls(name)

    def n_bits(self, n: int) -> int:
        if self.kind == "general":
            return (n - 1) * (n - 1)
        if self.kind == "symmetric":
            return (n - 1) * n // 2
        if self.kind == "circulant":
            return n
        if self.kind == "circulant_core":
            return n - 1
        if self.kind == "two_block_circulant":
            if n % 2:
                raise ValueError("two_block_circulant needs an even order")
            return n
        if n % self.block_size:
            raise ValueError(f"order {n} is not a multiple of block size {self.block_size}")
        return n

    def build(self, n: int, bits: np.ndarray) -> np.ndarray:
        """Map a 0/1 vector to the matrix it encodes (int64 entries)."""
        bits = np.asarray(bits, dtype=np.int64)
        if bits.shape != (self.n_bits(n),):
            raise ValueError(
                f"expected {self.n_bits(n)} bits for {self.name} at n={n}, "
                f"got {bits.shape}"
            )
        pm = bits * 2 - 1
        if self.kind == "general":
            a = np.ones((n, n), dtype=np.int64)
            a[1:, 1:] = pm.reshape(n - 1, n - 1)
            return a
        if self.kind == "symmetric":
            a = np.ones((n, n), dtype=np.int64)
            core = np.ones((n - 1, n - 1), dtype=np.int64)
            iu = np.triu_indices(n - 1)
            core[iu] = pm
            core.T[iu] = core[iu]
            a[1:, 1:] = core
            return a
        if self.kind == "circulant":
            return _circulant(pm)
        if self.kind == "circulant_core":
            a = np.ones((n, n), dtype=np.int64)
            a[1:, 1:] = _circulant(pm)
            return a
        if self.kind == "two_block_circulant":
            half = n // 2
            r = _circulant(pm[:half])
            s = _circulant(pm[half:])
            return np.block([[r, s], [s.T, -r.T]])
        # block_circulant: b x b circulant arrangement of s x s circulant blocks
        s = self.block_size
        b = n // s
        rows = pm.reshape(b, s)
        blocks = [_circulant(rows[t]) for t in range(b)]
        out = np.zeros((n, n), dtype=np.int64)
        for i in range(b):
            for j in range(b):
                blk = blocks[(j - i) % b]
                out[i * s:(i + 1) * s, j * s:(j + 1) * s] = blk
        return out


def _circulant(row: np.ndarray) -> np.ndarray:
    L = len(row)
    idx = (np.arange(L)[None, :] - np.arange(L)[:, None]) % L
    return row[idx]


@dataclass(frozen=True)
class SearchRecord:
    n: int
    structure: str
    kappa: float
    matrix: SignMatrix
    seed: int
    effort: dict
    timestamp: str = field(default="", compare=False)

    def __post_init__(self):
        if not self.timestamp:
            object.__setattr__(
                self,
                "timestamp",
                datetime.now(timezone.utc).isoformat(timespec="seconds"),
            )

    @property
    def kappa_str(self) -> str:
        return format_kappa(self.kappa)


def _kappa_of(a: np.ndarray) -> float:
    n = a.shape[0]
    ev = np.linalg.eigvalsh((a.T @ a).astype(np.float64))
    if ev[0] <= n * SINGULAR_TOLERANCE_PER_N:
        return math.inf
    return math.sqrt(ev[-1] / ev[0])


def _logabsdet(a: np.ndarray) -> float:
    sign, logdet = np.linalg.slogdet(a.astype(np.float64))
    return logdet if sign != 0 else -math.inf


class _Best:
    """Tracks the incumbent under (kappa, -|det|, lexicographic bits)."""

    def __init__(self):
        self.kappa = math.inf
        self.logdet = -math.inf
        self.bits: tuple[int, ...] | None = None

    def offer(self, kappa: float, bits: np.ndarray, matrix: np.ndarray) -> bool:
        if self.bits is None:
            self._take(kappa, bits, matrix)
            return True
        if kappa > self.kappa + _KAPPA_TIE:
            return False
        if kappa < self.kappa - _KAPPA_TIE:
            self._take(kappa, bits, matrix)
            return True
        logdet = _logabsdet(matrix)
        key_new = (-logdet, tuple(int(b) for b in bits))
        key_old = (-self.logdet, self.bits)
        if key_new < key_old:
            self._take(kappa, bits, matrix, logdet)
            return True
        return False

    def _take(self, kappa, bits, matrix, logdet=None):
        self.kappa = kappa
        self.logdet = _logabsdet(matrix) if logdet is None else logdet
        self.bits = tuple(int(b) for b in bits)


def exhaustive_min(n: int, long_running: bool = False, chunk: int = 1 << 14) -> SearchRecord:
    """Exact minimum kappa over all +-1 matrices of order n.

    Enumerates sign-normalized matrices (all-+1 first row and column);
    kappa is invariant under row/column sign flips, so the normalized
    minimum is the global one.  n = 5 is 2^16 Gram spectra; n = 6 (2^25)
    runs only with long_running=True and reports progress on stderr.
    """
    limit = 6 if long_running else 5
    if not 1 <= n <= limit:
        raise ValueError(
            f"exhaustive search supports n <= 5 (n = 6 with long_running)"
        )
    sclass = StructureClass("general")
    nbits = sclass.n_bits(n)
    total = 1 << nbits
    best = _Best()
    powers = np.arange(nbits, dtype=np.int64)
    t0 = time.time()
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        bits = ((idx[:, None] >> powers) & 1).astype(np.int64)
        mats = np.ones((len(idx), n, n), dtype=np.float64)
        if n > 1:
            mats[:, 1:, 1:] = (bits * 2 - 1).reshape(-1, n - 1, n - 1)
        grams = np.matmul(mats.transpose(0, 2, 1), mats)
        ev = np.linalg.eigvalsh(grams)
        lmin, lmax = ev[:, 0], ev[:, -1]
        ok = lmin > n * SINGULAR_TOLERANCE_PER_N
        with np.errstate(divide="ignore", invalid="ignore"):
            kap = np.where(ok, np.sqrt(lmax / np.where(ok, lmin, 1.0)), np.inf)
        near = np.flatnonzero(kap <= best.kappa + _KAPPA_TIE)
        for i in near:
            best.offer(float(kap[i]), bits[i], mats[i])
        if long_running and start % (chunk * 64) == 0 and start:
            done = start / total
            print(
                f"exhaustive n={n}: {done:.1%} ({time.time() - t0:.0f}s)",
                flush=True,
                file=sys.stderr,
            )
    matrix = SignMatrix(sclass.build(n, np.array(best.bits)))
    return SearchRecord(
        n=n,
        structure="general",
        kappa=best.kappa,
        matrix=matrix,
        seed=0,
        effort={"mode": "exhaustive", "candidates": total},
    )


def anneal(
    n: int,
    sclass: StructureClass,
    seed: int,
    budget: int = DEFAULT_BUDGET,
) -> SearchRecord:
    """Simulated annealing over the class's bit vector.

    Single-bit-flip moves; the initial temperature is calibrated so about
    80% of uphill moves are accepted over a 256-move probe, decay is 0.995
    per step, and the chain restarts from a fresh random state after
    10 n^2 moves without improvement.  Deterministic given
    (n, class, seed, budget).
    """
    if budget < 1:
        raise ValueError("budget must be >= 1")
    nbits = sclass.n_bits(n)
    rng = np.random.Generator(np.random.Philox(key=[seed, 0]))
    best = _Best()
    restarts = 0

    def fresh_state():
        bits = rng.integers(0, 2, nbits)
        mat = sclass.build(n, bits)
        return bits, mat, _kappa_of(mat)

    state, mat, cur = fresh_state()
    best.offer(cur, state, mat)

    uphill = []
    for _ in range(256):
        i = int(rng.integers(nbits))
        cand = state.copy()
        cand[i] ^= 1
        k = _kappa_of(sclass.build(n, cand))
        if math.isfinite(k) and math.isfinite(cur) and k > cur:
            uphill.append(k - cur)
    t0 = (sum(uphill) / len(uphill)) / -math.log(0.8) if uphill else 1.0
    temperature = t0
    stall_limit = 10 * n * n
    stall = 0

    def as_energy(k: float) -> float:
        return k if math.isfinite(k) else 1e18

    for _ in range(budget):
        i = int(rng.integers(nbits))
        cand = state.copy()
        cand[i] ^= 1
        cand_mat = sclass.build(n, cand)
        cand_kappa = _kappa_of(cand_mat)
        delta = as_energy(cand_kappa) - as_energy(cur)
        if delta <= 0 or rng.random() < math.exp(-delta / max(temperature, 1e-300)):
            state, mat, cur = cand, cand_mat, cand_kappa
        if best.offer(cur, state, mat):
            stall = 0
        else:
            stall += 1
        temperature *= 0.995
        if stall >= stall_limit:
            state, mat, cur = fresh_state()
            best.offer(cur, state, mat)
            temperature = t0
            stall = 0
            restarts += 1

    matrix = SignMatrix(sclass.build(n, np.array(best.bits)))
    return SearchRecord(
        n=n,
        structure=sclass.name,
        kappa=best.kappa,
        matrix=matrix,
        seed=seed,
        effort={"mode": "anneal", "budget": budget, "restarts": restarts},
    )


# --- registry --------------------------------------------------------------


class RegistryRejection(ValueError):
    pass


class Registry:
    """Best-known matrices per (n, class), one directory per order.

    Files are named <class>-<kappa-10digits>-<seed>.mat in the +-/ text
    format next to an index.json holding the current best per class and
    an append-only history.  Writes go through a lock file so concurrent
    searchers serialize their commits.
    """

    def __init__(self, root: str | Path):
        self.root = Path(root)

    def _dir(self, n: int) -> Path:
        return self.root / str(n)

    def _index(self, n: int) -> dict:
        path = self._dir(n) / "index.json"
        if path.exists():
            return json.loads(path.read_text())
        return {"best": {}, "history": []}

    def best(self, n: int, structure: str | None = None) -> dict | None:
        index = self._index(n)
        entries = index["best"]
        if structure is not None:
            return entries.get(structure)
        if not entries:
            return None
        return min(entries.values(), key=lambda e: e["kappa"])

    def load_matrix(self, n: int, entry: dict) -> SignMatrix:
        from .matrixio import parse_sign_matrix

        return parse_sign_matrix((self._dir(n) / entry["file"]).read_text())

    def orders(self) -> list[int]:
        if not self.root.exists():
            return []
        return sorted(int(p.name) for p in self.root.iterdir() if p.name.isdigit())

    def update(self, record: SearchRecord) -> bool:
        """Persist the record iff it strictly improves its (n, class) slot.

        The record's kappa is recomputed from the matrix first; a mismatch
        beyond 1e-9 is rejected outright.
        """
        from .matrixio import write_sign_matrix

        recomputed = condition_number(record.matrix).kappa
        if not (
            math.isinf(recomputed)
            and math.isinf(record.kappa)
            or abs(recomputed - record.kappa) <= 1e-9
        ):
            raise RegistryRejection(
                f"stored kappa {record.kappa!r} does not match recomputed "
                f"{recomputed!r}"
            )
        d = self._dir(record.n)
        d.mkdir(parents=True, exist_ok=True)
        lock = d / ".lock"
        acquired = False
        for _ in range(2000):
            try:
                fd = os.open(lock, os.O_CREAT | os.O_EXCL | os.O_WRONLY)
                os.close(fd)
                acquired = True
                break
            except FileExistsError:
                time.sleep(0.005)
        if not acquired:
            raise RegistryRejection(f"could not acquire registry lock {lock}")
        try:
            index = self._index(record.n)
            current = index["best"].get(record.structure)
            if current is not None and record.kappa >= current["kappa"] - 1e-10:
                return False
            fname = f"{record.structure}-{record.kappa_str}-{record.seed}.mat"
            (d / fname).write_text(write_sign_matrix(record.matrix))
            entry = {
                "structure": record.structure,
                "kappa": record.kappa,
                "kappa_str": record.kappa_str,
                "seed": record.seed,
                "file": fname,
                "effort": record.effort,
                "timestamp": record.timestamp,
            }
            index["best"][record.structure] = entry
            index["history"].append(entry)
            (d / "index.json").write_text(json.dumps(index, indent=2) + "\n")
            return True
        finally:
            lock.unlink()
