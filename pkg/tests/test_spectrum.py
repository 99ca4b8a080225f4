"""Tests for spectrum enumeration, multiplicities, labeling, and Weyl counts."""

from __future__ import annotations

import json
import math

import pytest

from ballspec import spectrum, zeros
from ballspec.errors import DegenerateOrdering, RangeError
from ballspec.spectrum import (
    BoundaryCondition,
    EigenvalueRecord,
    SpectrumTable,
    enumerate_spectrum,
    label_of,
    multiplicity,
    weyl_count,
)

from tests import _frozen

D = BoundaryCondition.DIRICHLET
N = BoundaryCondition.NEUMANN


def rel_err(got: float, want: float) -> float:
    return abs(got - want) / abs(want)


# ---------------------------------------------------------------------------
# multiplicity


class TestMultiplicity:
    @pytest.mark.parametrize(
        "l,d,want",
        [
            (0, 5, 1),
            (3, 3, 7),   # equals 2l+1 on the 2-sphere
            (2, 4, 9),   # C(5,3) - C(3,3)
            (0, 2, 1),
            (1, 2, 2),
            (7, 2, 2),   # every positive degree on the circle doubles
            (1, 3, 3),
        ],
    )
    def test_examples(self, l, d, want):
        got = multiplicity(l, d)
        assert got == want and isinstance(got, int)

    def test_telescoping_sum(self):
        # partial sums collapse to two binomials (exact integers)
        for d in range(2, 9):
            for L in range(0, 31):
                total = sum(multiplicity(l, d) for l in range(L + 1))
                want = math.comb(L + d - 1, d - 1) + math.comb(L + d - 2, d - 1)
                assert total == want, (d, L)

    def test_rejects_bad_args(self):
        with pytest.raises(RangeError):
            multiplicity(-1, 3)
        with pytest.raises(RangeError):
            multiplicity(0, 1)


# ---------------------------------------------------------------------------
# record invariants


class TestEigenvalueRecord:
    def _good(self, **overrides):
        kw = dict(d=2, bc=D, l=1, m=1, zero=3.831705970207512,
                  lam=3.831705970207512 ** 2, multiplicity=2,
                  label_first=2, label_last=3)
        kw.update(overrides)
        return EigenvalueRecord(**kw)

    def test_valid_record_constructs(self):
        rec = self._good()
        assert rec.lam == rec.zero * rec.zero

    def test_lambda_must_be_square_of_zero(self):
        with pytest.raises(RangeError):
            self._good(lam=14.682)

    def test_multiplicity_must_match_formula(self):
        with pytest.raises(RangeError):
            self._good(multiplicity=3, label_last=4)

    def test_labels_must_tile_block(self):
        with pytest.raises(RangeError):
            self._good(label_last=5)

    def test_serialized_field_order(self):
        rec = self._good()
        assert list(rec.as_dict()) == [
            "d", "bc", "l", "m", "zero", "lambda", "multiplicity",
            "label_first", "label_last",
        ]
        assert rec.as_dict()["bc"] == "Dirichlet"


# ---------------------------------------------------------------------------
# enumeration examples


class TestEnumerationExamples:
    def test_disc_neumann_low_spectrum_ordering(self):
        table = enumerate_spectrum(2, N, 18.0)
        got = [(r.l, r.m, r.label_first, r.label_last) for r in table.records]
        assert got == [
            (0, 1, 1, 1),
            (1, 1, 2, 3),
            (2, 1, 4, 5),
            (0, 2, 6, 6),
            (3, 1, 7, 8),
        ]
        want_zeros = [
            0.0,
            float(_frozen.BESSEL_DERIV_ZEROS[(2, 1)]),
            float(_frozen.BESSEL_DERIV_ZEROS[(4, 1)]),
            float(_frozen.BESSEL_ZEROS[(2, 1)]),
            float(_frozen.BESSEL_DERIV_ZEROS[(6, 1)]),
        ]
        for rec, want in zip(table.records, want_zeros):
            if want == 0.0:
                assert rec.zero == 0.0
            else:
                assert rel_err(rec.zero, want) <= 1e-11

    def test_disc_neumann_ninth_label(self):
        # the next eigenvalue after the list above enters at larger cutoffs
        table = enumerate_spectrum(2, N, 30.0)
        rec = table.record_for(4, 1)
        assert rec.label_first == 9
        assert rel_err(rec.zero, float(_frozen.BESSEL_DERIV_ZEROS[(8, 1)])) <= 1e-11

    def test_ball_dirichlet_low_spectrum(self):
        table = enumerate_spectrum(3, D, 40.0)
        first, second = table.records[0], table.records[1]
        assert (first.l, first.m, first.multiplicity) == (0, 1, 1)
        assert rel_err(first.lam, math.pi ** 2) <= 1e-12
        assert (second.l, second.m) == (1, 1)
        assert rel_err(second.zero, 4.493409457909064) <= 1e-12
        assert second.multiplicity == 3
        assert (second.label_first, second.label_last) == (2, 4)

    def test_disc_dirichlet_tiny_cutoff(self):
        table = enumerate_spectrum(2, D, 6.0)
        assert len(table.records) == 1
        rec = table.records[0]
        assert (rec.l, rec.m, rec.multiplicity) == (0, 1, 1)
        assert rel_err(rec.lam, 5.783185962946785) <= 1e-12

    def test_neumann_table_starts_at_zero_mode(self):
        for d in (2, 3, 4, 5, 6):
            table = enumerate_spectrum(d, N, 1.0)
            first = table.records[0]
            assert (first.l, first.m, first.zero, first.lam) == (0, 1, 0.0, 0.0)
            assert first.multiplicity == 1 and first.label_first == 1

    def test_cutoff_is_inclusive(self):
        lam = zeros.dirichlet_zero(0, 2, 1) ** 2
        table = enumerate_spectrum(2, D, lam)
        assert len(table.records) == 1

    def test_empty_table_below_first_eigenvalue(self):
        table = enumerate_spectrum(2, D, 1.0)
        assert table.records == () and table.n_labels == 0


# ---------------------------------------------------------------------------
# ordering and labeling invariants


def _assert_labels_tile(table: SpectrumTable) -> None:
    covered = []
    for rec in table.records:
        covered.extend(range(rec.label_first, rec.label_last + 1))
    assert covered == list(range(1, table.n_labels + 1))


class TestTableInvariants:
    @pytest.mark.parametrize(
        "d,bc,lam_max",
        [(2, D, 300.0), (2, N, 300.0), (3, D, 150.0), (4, N, 100.0)],
    )
    def test_labels_tile_and_lambdas_increase(self, d, bc, lam_max):
        table = enumerate_spectrum(d, bc, lam_max)
        assert len(table.records) > 3
        _assert_labels_tile(table)
        lams = [r.lam for r in table.records]
        assert all(a < b for a, b in zip(lams, lams[1:]))
        for rec in table.records:
            assert rec.lam <= lam_max + spectrum.CUTOFF_SLACK
            assert rec.multiplicity == multiplicity(rec.l, d)

    def test_radial_modes_of_ball_are_pi_multiples(self):
        for m in range(1, 11):
            assert rel_err(zeros.dirichlet_zero(0, 3, m), m * math.pi) <= 1e-12

    def test_first_degree_one_mode_below_second_radial_dirichlet(self):
        for d in range(3, 21):
            assert zeros.dirichlet_zero(1, d, 1) < zeros.dirichlet_zero(0, d, 2)

    def test_first_degree_one_mode_below_second_radial_neumann(self):
        for d in range(2, 21):
            assert zeros.neumann_zero(1, d, 1) < zeros.neumann_zero(0, d, 2)

    def test_near_degenerate_pair_raises(self, monkeypatch):
        synthetic = {0: [(1, 3.0)], 1: [(1, 3.0 + 1e-13)]}
        monkeypatch.setattr(spectrum, "_candidate_degrees",
                            lambda d, bc, r_cut: [0, 1])
        monkeypatch.setattr(spectrum, "_modes_upto",
                            lambda l, d, bc, r_cut, lam_cut: synthetic[l])
        with pytest.raises(DegenerateOrdering):
            enumerate_spectrum(2, D, 100.0)


# ---------------------------------------------------------------------------
# label_of


class TestLabelOf:
    @pytest.mark.parametrize(
        "d,bc,l,m,want",
        [
            (2, N, 0, 1, 1),
            (2, N, 1, 1, 2),
            (2, N, 2, 1, 4),
            (2, N, 0, 2, 6),
            (2, N, 3, 1, 7),
            (2, N, 4, 1, 9),
            (3, D, 0, 1, 1),
            (3, D, 1, 1, 2),
        ],
    )
    def test_examples(self, d, bc, l, m, want):
        assert label_of(d, bc, l, m) == want

    def test_accepts_string_bc(self):
        assert label_of(2, "neumann", 2, 1) == 4
        assert label_of(3, "Dirichlet", 0, 1) == 1

    def test_matches_enumeration(self):
        table = enumerate_spectrum(3, N, 60.0)
        for rec in table.records:
            assert label_of(3, N, rec.l, rec.m) == rec.label_first

    def test_rejects_bad_args(self):
        with pytest.raises(RangeError):
            label_of(2, "robin", 0, 1)
        with pytest.raises(RangeError):
            label_of(2, N, 0, 0)


# ---------------------------------------------------------------------------
# Weyl counting


class TestWeyl:
    def test_closed_forms(self):
        assert weyl_count(2, 0.0) == 0.0
        assert rel_err(weyl_count(2, 100.0), 25.0) <= 1e-14
        want3 = (4.0 * math.pi / 3.0) ** 2 / (2.0 * math.pi) ** 3 * 1000.0
        assert rel_err(weyl_count(3, 100.0), want3) <= 1e-14

    def test_rejects_negative(self):
        with pytest.raises(RangeError):
            weyl_count(2, -1.0)

    @pytest.mark.parametrize(
        "d,lam_max", [(2, 2000.0), (3, 900.0)]
    )
    def test_enumeration_tracks_weyl_law(self, d, lam_max):
        lead = weyl_count(d, lam_max)
        for bc in (D, N):
            n = enumerate_spectrum(d, bc, lam_max).n_labels
            assert abs(n / lead - 1.0) <= 0.15, (d, bc, n, lead)


# ---------------------------------------------------------------------------
# serialization and determinism


class TestSerialization:
    def test_json_field_order_and_roundtrip(self):
        table = enumerate_spectrum(2, D, 40.0)
        text = table.to_json()
        pairs = json.loads(text, object_pairs_hook=list)
        top_keys = [k for k, _ in pairs]
        assert top_keys == ["d", "bc", "lambda_max", "records"]
        records = dict(pairs)["records"]
        assert [k for k, _ in records[0]] == [
            "d", "bc", "l", "m", "zero", "lambda", "multiplicity",
            "label_first", "label_last",
        ]
        parsed = json.loads(text)
        assert parsed["records"][0]["lambda"] == table.records[0].lam

    def test_csv_header_and_rows(self):
        table = enumerate_spectrum(2, D, 40.0)
        lines = table.to_csv().splitlines()
        assert lines[0] == ("d,bc,l,m,zero,lambda,multiplicity,"
                            "label_first,label_last")
        assert len(lines) == 1 + len(table.records)
        first = lines[1].split(",")
        assert first[0] == "2" and first[1] == "Dirichlet"
        assert float(first[5]) == table.records[0].lam

    def test_threaded_enumeration_is_byte_identical(self, monkeypatch):
        base = enumerate_spectrum(5, D, 120.0, threads=1).to_json()
        assert enumerate_spectrum(5, D, 120.0, threads=3).to_json() == base
        monkeypatch.setenv("BALLSPEC_THREADS", "4")
        assert enumerate_spectrum(5, D, 120.0).to_json() == base
        monkeypatch.setenv("BALLSPEC_THREADS", "0")  # auto
        assert enumerate_spectrum(5, D, 120.0).to_json() == base

    def test_invalid_thread_env_rejected(self, monkeypatch):
        monkeypatch.setenv("BALLSPEC_THREADS", "many")
        with pytest.raises(RangeError):
            enumerate_spectrum(2, D, 10.0)

    def test_enumerate_alias(self):
        assert spectrum.enumerate is enumerate_spectrum


# ---------------------------------------------------------------------------
# argument validation


class TestEnumerationValidation:
    def test_lambda_max_range(self):
        with pytest.raises(RangeError):
            enumerate_spectrum(2, D, -1.0)
        with pytest.raises(RangeError):
            enumerate_spectrum(2, D, 40001.0)
        with pytest.raises(RangeError):
            enumerate_spectrum(2, D, float("nan"))

    def test_bad_bc_rejected(self):
        with pytest.raises(RangeError):
            enumerate_spectrum(2, "periodic", 10.0)

    def test_bad_d_rejected(self):
        with pytest.raises(RangeError):
            enumerate_spectrum(1, D, 10.0)

    def test_cutoff_beyond_order_box_is_reported(self):
        # completeness would need degrees past the kernel's order range
        with pytest.raises(RangeError):
            enumerate_spectrum(2, D, 40000.0)

    def test_record_for_missing_mode(self):
        table = enumerate_spectrum(2, D, 40.0)
        with pytest.raises(RangeError):
            table.record_for(9, 9)
