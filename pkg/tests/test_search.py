import itertools
import math

import numpy as np
import pytest

from approxhad.linalg import SignMatrix, condition_number
from approxhad.search import (
    Registry,
    RegistryRejection,
    SearchRecord,
    StructureClass,
    anneal,
    exhaustive_min,
    format_kappa,
)


class TestFormatKappa:
    def test_trailing_zeros_kept(self):
        assert format_kappa(1.5) == "1.500000000"
        assert format_kappa(2.0) == "2.000000000"
        assert format_kappa(1.4433756729740645) == "1.443375673"

    def test_inf(self):
        assert format_kappa(math.inf) == "inf"


class TestStructureClasses:
    @pytest.mark.parametrize(
        "name,n,expected_bits",
        [
            ("general", 5, 16),
            ("symmetric", 7, 21),
            ("circulant", 9, 9),
            ("circulant_core", 21, 20),
            ("two_block_circulant", 10, 10),
            ("block_circulant9", 27, 27),
        ],
    )
    def test_bit_counts(self, name, n, expected_bits):
        sclass = StructureClass.parse(name)
        assert sclass.n_bits(n) == expected_bits

    def test_parse_roundtrip(self):
        for name in ("general", "symmetric", "circulant", "circulant_core",
                     "two_block_circulant", "block_circulant9"):
            assert StructureClass.parse(name).name == name

    def test_general_bijective(self):
        sclass = StructureClass("general")
        rng = np.random.default_rng(0)
        seen = set()
        for _ in range(50):
            bits = rng.integers(0, 2, sclass.n_bits(4))
            a = sclass.build(4, bits)
            assert (a[0] == 1).all() and (a[:, 0] == 1).all()
            # recover the bits from the matrix: the map is injective
            rec = tuple(((a[1:, 1:].ravel() + 1) // 2).tolist())
            assert rec == tuple(bits.tolist())
            seen.add(rec)

    def test_symmetric_builds_symmetric(self):
        sclass = StructureClass("symmetric")
        rng = np.random.default_rng(1)
        for n in (3, 7, 9):
            bits = rng.integers(0, 2, sclass.n_bits(n))
            a = sclass.build(n, bits)
            assert np.array_equal(a, a.T)
            assert (a[0] == 1).all()

    def test_two_block_structure(self):
        sclass = StructureClass("two_block_circulant")
        rng = np.random.default_rng(2)
        a = sclass.build(10, rng.integers(0, 2, 10))
        R, S = a[:5, :5], a[:5, 5:]
        assert np.array_equal(a[5:, :5], S.T)
        assert np.array_equal(a[5:, 5:], -R.T)
        for i in range(5):
            assert np.array_equal(R[i], np.roll(R[0], i))

    def test_block_circulant_structure(self):
        sclass = StructureClass.parse("block_circulant3")
        rng = np.random.default_rng(3)
        a = sclass.build(9, rng.integers(0, 2, 9))
        blocks = {(i, j): a[3 * i:3 * i + 3, 3 * j:3 * j + 3] for i in range(3) for j in range(3)}
        # block-circulant arrangement
        assert np.array_equal(blocks[(0, 1)], blocks[(1, 2)])
        assert np.array_equal(blocks[(0, 0)], blocks[(2, 2)])
        # each block circulant
        b = blocks[(0, 1)]
        assert np.array_equal(b[1], np.roll(b[0], 1))

    def test_wrong_bit_count_rejected(self):
        with pytest.raises(ValueError, match="expected"):
            StructureClass("circulant").build(5, np.zeros(4, dtype=np.int64))


class TestExhaustive:
    @pytest.mark.parametrize("n,expected", [(1, 1.0), (2, 1.0), (3, 2.0), (4, 1.0)])
    def test_known_optima(self, n, expected):
        rec = exhaustive_min(n)
        assert rec.kappa == pytest.approx(expected, abs=1e-9)
        assert condition_number(rec.matrix).kappa == pytest.approx(expected, abs=1e-9)

    def test_n5(self):
        rec = exhaustive_min(5)
        assert rec.kappa == pytest.approx(1.5, abs=1e-9)

    def test_rejects_large(self):
        with pytest.raises(ValueError):
            exhaustive_min(6)

    def test_normalization_soundness_n3(self):
        # full 2^9 enumeration matches the 2^4 sign-normalized one
        best = math.inf
        for bits in itertools.product((-1, 1), repeat=9):
            A = SignMatrix(np.array(bits).reshape(3, 3))
            kappa = condition_number(A).kappa
            if kappa < best:
                best = kappa
        assert exhaustive_min(3).kappa == pytest.approx(best, abs=1e-10)


class TestAnneal:
    def test_deterministic(self):
        sclass = StructureClass("two_block_circulant")
        a = anneal(6, sclass, seed=4, budget=2000)
        b = anneal(6, sclass, seed=4, budget=2000)
        assert a.kappa == b.kappa
        assert np.array_equal(a.matrix.entries, b.matrix.entries)
        assert a.effort == b.effort

    def test_seed_changes_trajectory(self):
        sclass = StructureClass("general")
        a = anneal(5, sclass, seed=0, budget=300)
        b = anneal(5, sclass, seed=1, budget=300)
        assert not np.array_equal(a.matrix.entries, b.matrix.entries) or a.kappa != b.kappa

    def test_reaches_sds_optimum_at_6(self):
        rec = anneal(6, StructureClass("two_block_circulant"), seed=0, budget=5000)
        assert rec.kappa == pytest.approx(1.5811388301, abs=1e-8)

    def test_matches_exhaustive_at_small_order(self):
        target = exhaustive_min(4).kappa
        hits = [
            anneal(4, StructureClass("general"), seed=s, budget=4000).kappa
            for s in range(4)
        ]
        assert min(hits) == pytest.approx(target, abs=1e-10)

    def test_panel_matches_exhaustive_n5(self):
        from approxhad.search import DEFAULT_BUDGET, SEED_PANEL

        target = exhaustive_min(5).kappa
        best = math.inf
        for s in SEED_PANEL:
            best = min(best, anneal(5, StructureClass("general"), seed=s,
                                    budget=DEFAULT_BUDGET).kappa)
            if best <= target + 1e-10:
                break
        assert best == pytest.approx(target, abs=1e-10)

    def test_record_recomputes(self):
        rec = anneal(5, StructureClass("circulant"), seed=2, budget=1000)
        assert condition_number(rec.matrix).kappa == pytest.approx(rec.kappa, abs=1e-9)


class TestRegistry:
    def _record(self, n=6, kappa=None, seed=0):
        rec = anneal(n, StructureClass("two_block_circulant"), seed=seed, budget=1500)
        return rec

    def test_store_and_reject_duplicate(self, tmp_path):
        reg = Registry(tmp_path)
        rec = self._record()
        assert reg.update(rec) is True
        assert reg.update(rec) is False  # not strictly better
        entry = reg.best(6)
        assert entry["kappa"] == pytest.approx(rec.kappa)
        assert (tmp_path / "6" / entry["file"]).exists()

    def test_strict_improvement_stored(self, tmp_path):
        reg = Registry(tmp_path)
        worse = SearchRecord(
            n=6, structure="two_block_circulant", kappa=condition_number(
                SignMatrix(np.ones((6, 6)) - 2 * np.eye(6))).kappa,
            matrix=SignMatrix(np.ones((6, 6)) - 2 * np.eye(6)), seed=1,
            effort={},
        )
        assert reg.update(worse) is True
        better = self._record()
        assert reg.update(better) is True
        assert reg.best(6)["kappa"] == pytest.approx(better.kappa)
        # history keeps both
        index = reg._index(6)
        assert len(index["history"]) == 2

    def test_tampered_kappa_rejected(self, tmp_path):
        reg = Registry(tmp_path)
        rec = self._record()
        tampered = SearchRecord(
            n=rec.n, structure=rec.structure, kappa=1.0,
            matrix=rec.matrix, seed=rec.seed, effort=rec.effort,
        )
        with pytest.raises(RegistryRejection, match="recomputed"):
            reg.update(tampered)

    def test_roundtrip_matrix(self, tmp_path):
        reg = Registry(tmp_path)
        rec = self._record()
        reg.update(rec)
        loaded = reg.load_matrix(6, reg.best(6))
        assert np.array_equal(loaded.entries, rec.matrix.entries)

    def test_class_containment_circulant_vs_general(self, tmp_path):
        # the circulant optimum cannot beat the general best-found
        reg = Registry(tmp_path)
        for s in range(3):
            reg.update(anneal(5, StructureClass("circulant"), seed=s, budget=2000))
            reg.update(anneal(5, StructureClass("general"), seed=s, budget=2000))
        circ = reg.best(5, "circulant")
        gen = reg.best(5, "general")
        assert circ["kappa"] >= gen["kappa"] - 1e-10
