import math

import numpy as np
import pytest

from approxhad.families import (
    BarbaRejection,
    SdsPair,
    circulant,
    conference_plus_identity,
    paf,
    sds_block_matrix,
    sds_search,
    verify_barba,
)
from approxhad.linalg import SignMatrix, condition_number, charpoly_exact, gram
from approxhad.constructions import sylvester


class TestCirculant:
    def test_right_shift_convention(self):
        c = circulant([1, 2, 3])
        assert c.tolist() == [[1, 2, 3], [3, 1, 2], [2, 3, 1]]

    def test_paf(self):
        assert paf([1, 1, -1], 0) == 3
        assert paf([1, 1, -1], 1) == -1
        assert paf([1, 1, 1, 1, -1], 1) == 1
        assert paf([1, 1, 1, 1, -1], 2) == 1


class TestConferencePlusIdentity:
    def test_n6(self):
        fam = conference_plus_identity(6)
        golden = (3 + math.sqrt(5)) / 2
        assert fam.kappa_closed_form == pytest.approx(golden, rel=1e-12)
        assert condition_number(fam.matrix).kappa == pytest.approx(golden, rel=1e-10)

    def test_n10_kappa_2(self):
        fam = conference_plus_identity(10)
        assert fam.kappa_closed_form == pytest.approx(2.0, rel=1e-12)
        assert condition_number(fam.matrix).kappa == pytest.approx(2.0, rel=1e-10)

    def test_n8_rejected(self):
        with pytest.raises(ValueError):
            conference_plus_identity(8)

    @pytest.mark.parametrize("n", [6, 10, 14, 18, 26, 30])
    def test_closed_form_across_supported_orders(self, n):
        fam = conference_plus_identity(n)
        expected = (math.sqrt(n - 1) + 1) / (math.sqrt(n - 1) - 1)
        assert fam.kappa_closed_form == pytest.approx(expected, rel=1e-12)
        assert condition_number(fam.matrix).kappa == pytest.approx(expected, rel=1e-10)


class TestBarba:
    @staticmethod
    def _barba_charpoly(n):
        # (t - (2n-1)) (t - (n-1))^(n-1), built by exact convolution
        poly = [-(2 * n - 1), 1]
        for _ in range(n - 1):
            nxt = [0] * (len(poly) + 1)
            for i, c in enumerate(poly):
                nxt[i] += c * -(n - 1)
                nxt[i + 1] += c
            poly = nxt
        return tuple(poly)

    def test_n5_circulant_accepted(self):
        fam = verify_barba(SignMatrix(circulant([1, 1, 1, 1, -1])))
        assert fam.kappa_closed_form == pytest.approx(1.5, abs=1e-15)
        p = charpoly_exact(gram(fam.matrix))
        assert p.coefficients == self._barba_charpoly(5)

    def test_n13_fixture_charpoly(self):
        from approxhad.table import bundled_fixtures

        fam = verify_barba(bundled_fixtures()[13]["matrix"])
        p = charpoly_exact(gram(fam.matrix))
        assert p.coefficients == self._barba_charpoly(13)

    def test_hadamard_rejected(self):
        with pytest.raises(BarbaRejection) as exc:
            verify_barba(sylvester(2))
        assert exc.value.got == 0
        assert exc.value.expected == 1

    def test_rejection_names_first_entry(self):
        A = SignMatrix(np.ones((3, 3)))
        with pytest.raises(BarbaRejection) as exc:
            verify_barba(A)
        assert exc.value.position == (0, 1)


class TestSdsSearch:
    def test_half_1_vacuous(self):
        pairs = sds_search(1)
        assert pairs == [SdsPair((1,), (1,))]

    def test_half_3_contains_known_pair(self):
        pairs = sds_search(3)
        canon = {(p.r, p.s) for p in pairs}
        assert ((1, 1, 1), (1, 1, -1)) in canon

    def test_half_5_gives_kappa_15(self):
        pairs = sds_search(5)
        assert pairs
        fam = sds_block_matrix(pairs[0])
        assert condition_number(fam.matrix).kappa == pytest.approx(1.5, rel=1e-10)

    def test_pair_invariant_enforced(self):
        with pytest.raises(ValueError, match="autocorrelation"):
            SdsPair((1, 1, 1), (1, 1, 1))

    def test_too_large(self):
        with pytest.raises(ValueError):
            sds_search(17)

    @pytest.mark.parametrize("half", [2, 3, 4, 5, 6, 7, 8, 9])
    def test_all_returned_pairs_valid(self, half):
        for pair in sds_search(half):
            for t in range(1, half):
                assert paf(pair.r, t) + paf(pair.s, t) == 2


class TestSdsBlockMatrix:
    @pytest.mark.parametrize(
        "half,expected",
        [(3, 1.5811388301), (5, 1.5), (7, 1.4719601444), (9, 1.4577379737)],
    )
    def test_table_rows(self, half, expected):
        pairs = sds_search(half)
        assert pairs, f"no pair at half={half}"
        fam = sds_block_matrix(pairs[0])
        assert fam.n == 2 * half
        assert condition_number(fam.matrix).kappa == pytest.approx(expected, abs=5e-10)
        closed = math.sqrt((2 * fam.n - 2) / (fam.n - 2))
        assert fam.kappa_closed_form == pytest.approx(closed, rel=1e-12)

    def test_circulants_commute(self):
        pair = sds_search(7)[0]
        R, S = circulant(pair.r), circulant(pair.s)
        assert np.array_equal(R @ S, S @ R)

    def test_block_gram_identity_exact(self):
        pair = sds_search(9)[0]
        fam = sds_block_matrix(pair)
        n, half = fam.n, pair.half
        block = (n - 2) * np.eye(half, dtype=np.int64) + 2
        expected = np.kron(np.eye(2, dtype=np.int64), block)
        assert np.array_equal(gram(fam.matrix).entries, expected)

    def test_sds_beats_conference_at_same_order(self):
        # both exist at n = 6, 10, 14, 18; the block construction wins
        for n in (6, 10, 14, 18):
            sds = sds_block_matrix(sds_search(n // 2)[0])
            conf = conference_plus_identity(n)
            assert sds.kappa_closed_form < conf.kappa_closed_form
