"""Best-known condition numbers for small orders and their reproduction.

TARGETS holds the published best-known kappa per order (10 significant
digits) together with the minimal polynomial of kappa and the structure
class the winner lives in.  reproduce_table gathers candidates from the
bundled fixture witnesses, the closed-form families, exhaustive search
at tiny orders, an optional registry, and optional fresh annealing, then
reports the best kappa per order and whether it matches the target.

A row can legitimately fail to match in two ways: the searches may simply
not reach the target (larger orders are best effort), or they may beat
it -- the two-circulant-block search at n = 22 finds 1.497493087, below
the published 1.511424872.  Either way the row reports what was found.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from importlib import resources

from .families import circulant, sds_block_matrix, sds_search, verify_barba
from .linalg import IntPolynomial, SignMatrix, condition_number, minpoly_residual
from .matrixio import parse_sign_matrix
from .search import Registry, StructureClass, anneal, exhaustive_min, format_kappa

__all__ = ["TableTarget", "TARGETS", "TableRow", "reproduce_table", "table_csv",
           "bundled_fixtures", "MATCH_TOLERANCE"]

MATCH_TOLERANCE = 5e-10
# residual threshold scales with the polynomial's coefficients
RESIDUAL_REL = 1e-6


@dataclass(frozen=True)
class TableTarget:
    n: int
    kappa: str                # 10 significant digits
    minpoly: IntPolynomial
    structure: str            # class of the published winner
    comment: str

    @property
    def kappa_value(self) -> float:
        return float(self.kappa)


def _t(n, kappa, coeffs, structure, comment):
    return TableTarget(n, kappa, IntPolynomial(tuple(coeffs)), structure, comment)


TARGETS: dict[int, TableTarget] = {
    t.n: t
    for t in [
        _t(3, "2.000000000", (-2, 1), "circulant", "circulant, symmetric, max determinant"),
        _t(5, "1.500000000", (-3, 2), "circulant", "Barba, circulant, symmetric, max determinant"),
        _t(6, "1.581138830", (-5, 0, 2), "two_block_circulant", "SDS, circulant 3x3 blocks, symmetric, max determinant"),
        _t(7, "1.732050808", (-3, 0, 1), "symmetric", "symmetric, max determinant"),
        _t(9, "1.850781059", (-5, -1, 2), "symmetric", "symmetric"),
        _t(10, "1.500000000", (-3, 2), "two_block_circulant", "SDS, circulant 5x5 blocks, max determinant"),
        _t(11, "1.767766953", (-25, 0, 8), "symmetric", "symmetric, max determinant"),
        _t(13, "1.443375673", (-25, 0, 12), "symmetric", "Barba, symmetric, max determinant"),
        _t(14, "1.471960144", (-13, 0, 6), "two_block_circulant", "SDS, circulant 7x7 blocks, max determinant"),
        _t(15, "1.527525232", (-7, 0, 3), "symmetric", "symmetric, max determinant"),
        _t(17, "1.700930833", (256, 0, -1152, 0, 1661, 0, -936, 0, 169), "symmetric", "symmetric"),
        _t(18, "1.457737974", (-17, 0, 8), "two_block_circulant", "SDS, circulant 9x9 blocks, max determinant"),
        _t(19, "1.662877383", (-77, 0, 288, 0, -307, 0, 77), "circulant", "circulant"),
        _t(21, "1.732050808", (-3, 0, 1), "circulant_core", "circulant core"),
        _t(22, "1.511424872", (-3719, 0, 21191, 0, -45561, 0, 45825, 0, -21466, 0, 3719), "two_block_circulant", "circulant 11x11 blocks"),
        _t(23, "1.702109681", (-6029, 0, 40001, 0, -93367, 0, 93950, 0, -40331, 0, 6029), "circulant_core", "circulant core"),
        _t(25, "1.428869017", (-49, 0, 24), "general", "Barba, max determinant"),
        _t(26, "1.329508134", (3, 0, -7, 0, 3), "two_block_circulant", "circulant 13x13 blocks"),
        _t(27, "1.603484352", (-271, 0, 1029, 0, -1056, 0, 271), "block_circulant9", "block circulant with circulant 9x9 blocks"),
        _t(29, "1.666939342", (354061, 0, -1045624, 0, 1266560, 0, -806784, 0, 285440, 0, -53248, 0, 4096), "circulant_core", "circulant core"),
        _t(30, "1.379101101", (59, 0, -109, 0, 41), "two_block_circulant", "circulant 15x15 blocks"),
    ]
}


@dataclass(frozen=True)
class TableRow:
    n: int
    kappa: float
    target_kappa: str
    matched: bool
    structure: str
    minpoly_residual: float
    seed: int


def bundled_fixtures() -> dict[int, dict]:
    """Witness matrices shipped with the package, keyed by order."""
    root = resources.files("approxhad") / "fixtures"
    index_file = root / "index.json"
    try:
        index = json.loads(index_file.read_text())
    except FileNotFoundError:
        return {}
    out = {}
    for entry in index:
        matrix = parse_sign_matrix((root / entry["file"]).read_text())
        out[entry["n"]] = {**entry, "matrix": matrix}
    return out


def _candidates(n: int, target: TableTarget, registry: Registry | None,
                anneal_budget: int, seeds: tuple[int, ...], fixtures: dict):
    """(kappa, structure-label, seed, matrix) candidates for one order."""
    cands = []
    fx = fixtures.get(n)
    if fx is not None:
        kappa = condition_number(fx["matrix"]).kappa
        cands.append((kappa, f"fixture:{fx['class']}", fx.get("seed", 0), fx["matrix"]))
    if n == 5:
        barba5 = verify_barba(SignMatrix(circulant([1, 1, 1, 1, -1])))
        cands.append((barba5.kappa_closed_form, "circulant", 0, barba5.matrix))
    if n <= 5:
        rec = exhaustive_min(n)
        cands.append((rec.kappa, "exhaustive", 0, rec.matrix))
    if n % 2 == 0:
        pairs = sds_search(n // 2)
        if pairs:
            fam = sds_block_matrix(pairs[0])
            cands.append((condition_number(fam.matrix).kappa, "sds_block", 0, fam.matrix))
    if n % 4 == 2:
        from .families import conference_plus_identity

        try:
            fam = conference_plus_identity(n)
            cands.append((fam.kappa_closed_form, "conference_plus_identity", 0, fam.matrix))
        except ValueError:
            pass
    if registry is not None:
        entry = registry.best(n)
        if entry is not None:
            cands.append(
                (entry["kappa"], f"registry:{entry['structure']}",
                 entry["seed"], registry.load_matrix(n, entry))
            )
    if anneal_budget > 0:
        sclass = StructureClass.parse(target.structure)
        for seed in seeds:
            rec = anneal(n, sclass, seed, anneal_budget)
            cands.append((rec.kappa, rec.structure, seed, rec.matrix))
    if not cands:
        # no witness from any cheap source: fall back to one fresh search so
        # the row still reports an honest best effort
        from .search import DEFAULT_BUDGET

        rec = anneal(n, StructureClass.parse(target.structure), 0,
                     max(anneal_budget, DEFAULT_BUDGET))
        cands.append((rec.kappa, rec.structure, 0, rec.matrix))
    return cands


def reproduce_table(
    n_min: int,
    n_max: int,
    registry: Registry | None = None,
    anneal_budget: int = 0,
    seeds: tuple[int, ...] = (),
) -> list[TableRow]:
    fixtures = bundled_fixtures()
    rows = []
    for n in sorted(TARGETS):
        if not n_min <= n <= n_max:
            continue
        target = TARGETS[n]
        cands = _candidates(n, target, registry, anneal_budget, seeds, fixtures)
        kappa, structure, seed, _ = min(cands, key=lambda c: (c[0], c[1]))
        residual = minpoly_residual(target.minpoly, kappa)
        scale = max(abs(c) for c in target.minpoly.coefficients)
        matched = (
            math.isfinite(kappa)
            and abs(kappa - target.kappa_value) <= MATCH_TOLERANCE
            and abs(residual) <= RESIDUAL_REL * scale
        )
        rows.append(
            TableRow(
                n=n,
                kappa=kappa,
                target_kappa=target.kappa,
                matched=matched,
                structure=structure,
                minpoly_residual=residual,
                seed=seed,
            )
        )
    return rows


def table_csv(rows: list[TableRow]) -> str:
    out = io.StringIO()
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["n", "kappa", "target_kappa", "matched", "structure",
                "minpoly_residual", "seed"])
    for r in rows:
        w.writerow([
            r.n,
            format_kappa(r.kappa),
            r.target_kappa,
            str(r.matched).lower(),
            r.structure,
            f"{r.minpoly_residual:.6e}",
            r.seed,
        ])
    return out.getvalue()
