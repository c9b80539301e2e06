"""The certification pipeline: everything we can prove about one matrix.

A certificate bundles the spectral report (kappa to 10 digits plus an
exact hex-float), the detected exact Gram identity if any, the best
sign-clique lower bound, an optional minimal-polynomial residual, and an
optional Bernstein certificate when the matrix came from rounding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import (
    IntPolynomial,
    SignMatrix,
    SpectralReport,
    condition_number,
    gram,
    minpoly_residual,
)
from .lower_bound import CliqueCertificate, best_clique_certificate
from .rounding import BernsteinCertificate
from .search import format_kappa

__all__ = ["CertifyReport", "certify", "detect_gram_class", "float_field", "SCHEMA"]

SCHEMA = "approxhad.certify/1"


def float_field(x: float) -> dict:
    """A float as both a 10-significant-digit decimal and an exact hex."""
    if math.isinf(x):
        return {"dec": "inf", "hex": "inf"}
    return {"dec": format_kappa(x), "hex": float(x).hex()}


def detect_gram_class(A: SignMatrix) -> str:
    """Which exact Gram identity the matrix satisfies, if any."""
    n = A.n
    g = gram(A).entries
    eye = np.eye(n, dtype=np.int64)
    if np.array_equal(g, n * eye):
        return "hadamard"
    if np.array_equal(g, (n - 1) * eye + 1):
        return "barba"
    if n % 2 == 0:
        half = n // 2
        block = (n - 2) * np.eye(half, dtype=np.int64) + 2
        if np.array_equal(g, np.kron(np.eye(2, dtype=np.int64), block)):
            return "sds_block"
    if (np.diag(A.entries) == 1).all():
        c = A.entries - eye
        if (
            np.array_equal(c, c.T)
            and np.isin(c[~np.eye(n, dtype=bool)], (-1, 1)).all()
            and np.array_equal(c.T @ c, (n - 1) * eye)
        ):
            return "conference_plus_I"
    return "none"


@dataclass(frozen=True)
class CertifyReport:
    n: int
    report: SpectralReport
    gram_class: str
    clique: CliqueCertificate
    minpoly: IntPolynomial | None = None
    minpoly_residual: float | None = None
    bernstein: BernsteinCertificate | None = None

    def to_dict(self) -> dict:
        rep = self.report
        out = {
            "schema": SCHEMA,
            "n": self.n,
            "kappa": float_field(rep.kappa),
            "sigma_min": float_field(rep.sigma_min),
            "sigma_max": float_field(rep.sigma_max),
            "gram_class": self.gram_class,
            "clique_certificate": {
                **self.clique.to_dict(),
                "bound": float_field(self.clique.bound),
            },
            "minpoly": None,
            "bernstein": None,
        }
        if self.minpoly is not None:
            out["minpoly"] = {
                "coefficients": list(self.minpoly.coefficients),
                "residual": float_field(self.minpoly_residual),
            }
        if self.bernstein is not None:
            b = self.bernstein
            out["bernstein"] = {
                "n": b.n,
                "u": float_field(b.u),
                "e_n": float_field(b.e_n),
                "kappa_bound": float_field(b.kappa_bound),
                "kappa_bound_doubled": float_field(b.kappa_bound_doubled),
            }
        return out


def certify(
    A: SignMatrix,
    minpoly: IntPolynomial | None = None,
    bernstein: BernsteinCertificate | None = None,
) -> CertifyReport:
    report = condition_number(A)
    clique = best_clique_certificate(A)
    if math.isfinite(report.kappa) and clique.bound > report.kappa + 1e-9:
        raise AssertionError(
            f"clique bound {clique.bound} exceeds kappa {report.kappa}: "
            "lower-bound certificate is unsound"
        )
    residual = None
    if minpoly is not None:
        residual = minpoly_residual(minpoly, report.kappa)
    return CertifyReport(
        n=A.n,
        report=report,
        gram_class=detect_gram_class(A),
        clique=clique,
        minpoly=minpoly,
        minpoly_residual=residual,
        bernstein=bernstein,
    )
