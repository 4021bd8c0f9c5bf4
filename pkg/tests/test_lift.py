#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
測試提升步驟代數模組 lift.py。

主要測試內容：
- 2×2 多項式矩陣、行列式與 `pr_check()`。
- 五種步驟的矩陣、文字輸出與 JSON。
- γ、‡ 與增益／交換的移動規則。
- `lifting_update()`、`Factorization.verify()` 與 `summary()`。
- `normalize_standard()` 在 Haar 與 LGT 換列分解上的結果，以及提升之間延遲通道的調整。
- 缺欄位的分解 JSON 轉成 `CorpusError`。
"""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from errors import (
    CorpusError,
    EeaError,
    LiftingError,
    NotPerfectReconstructionError,
    RationalError,
    ReconstructionMismatchError,
)
from lift import (
    DelayDiag,
    DetMonomial,
    Factorization,
    GainDiag,
    LowerLift,
    PolyMatrix2,
    Swap,
    UpperLift,
    double_transpose,
    format_factorization,
    gain_pushed_left,
    gamma,
    lifting_update,
    normalize_standard,
    pr_check,
    product,
    step_from_json,
    step_to_json,
    swap_conjugate,
)
from poly import Poly


def P(*coeffs) -> Poly:
    return Poly(c if isinstance(c, str) else Fraction(c) for c in coeffs)


J = Swap()

small_polys = st.lists(st.integers(-3, 3), min_size=0, max_size=3).map(Poly)
gains = st.builds(Fraction, st.integers(1, 5), st.integers(1, 5)).flatmap(
    lambda q: st.sampled_from([q, -q])
)
steps = st.one_of(
    small_polys.map(UpperLift),
    small_polys.map(LowerLift),
    st.builds(DelayDiag, st.integers(1, 3), st.integers(0, 1)),
    st.builds(GainDiag, gains, gains),
)


class TestPolyMatrix2:
    """矩陣與行列式。"""

    def test_multiplication_and_det(self):
        A = PolyMatrix2.from_rows([[[1], [0, 1]], [[0], [1]]])
        B = PolyMatrix2.from_rows([[[1], [0]], [[2], [1]]])
        assert A * B == PolyMatrix2.from_rows([[[1, 2], [0, 1]], [[2], [1]]])
        assert (A * B).det() == A.det() * B.det()

    def test_adjugate(self, lgt):
        assert lgt * lgt.adjugate() == PolyMatrix2(lgt.det(), Poly.zero(), Poly.zero(), lgt.det())

    def test_pr_check_corpus(self, lgt, cdf, haar):
        assert pr_check(lgt) == DetMonomial(Fraction(1), 1), "|H| = z^-1"
        assert pr_check(cdf) == DetMonomial(Fraction(-1), 2), "|H| = −z^-2"
        assert pr_check(haar) == DetMonomial(Fraction(1), 0)

    def test_pr_check_rejects(self):
        with pytest.raises(NotPerfectReconstructionError) as excinfo:
            pr_check(PolyMatrix2.from_rows([[[1], [1]], [[1], [1]]]))
        assert excinfo.value.code == "not-pr"
        with pytest.raises(NotPerfectReconstructionError):
            pr_check(PolyMatrix2.from_rows([[[1, 1], [0]], [[0], [1]]]))

    def test_json(self, cdf):
        assert PolyMatrix2.from_json(cdf.to_json()) == cdf

    def test_row_col_helpers(self, lgt):
        assert lgt.with_row(1, lgt.row(1)) == lgt
        assert lgt.with_col(0, lgt.col(0)) == lgt
        assert lgt.entry(1, 1) == P(1)
        assert not lgt.has_zero_entry()
        assert lgt.max_degree() == 2


class TestSteps:
    """步驟變體。"""

    def test_matrices(self):
        assert UpperLift(P(2)).matrix() == PolyMatrix2.from_rows([[[1], [2]], [[0], [1]]])
        assert LowerLift(P(2)).matrix() == PolyMatrix2.from_rows([[[1], [0]], [[2], [1]]])
        assert DelayDiag(2, 1).matrix() == PolyMatrix2.from_rows([[[1], [0]], [[0], [0, 0, 1]]])
        assert J.matrix() == PolyMatrix2.from_rows([[[0], [1]], [[1], [0]]])

    def test_render(self):
        assert str(UpperLift(P("-7/4", "1/4"))) == "[1, (-7 + 1z^-1)/4; 0, 1]"
        assert str(LowerLift(P(-1))) == "[1, 0; -1, 1]"
        assert str(DelayDiag(1, 0)) == "diag(z^-1, 1)"
        assert str(GainDiag("1/4", -4)) == "diag(1/4, -4)"
        assert str(J) == "J"

    def test_invalid_steps(self):
        with pytest.raises(LiftingError):
            DelayDiag(0, 0)
        with pytest.raises(LiftingError):
            DelayDiag(1, 2)
        with pytest.raises(RationalError):
            GainDiag(0, 1)

    def test_json(self):
        step = GainDiag("2", "-1/2")
        assert step_to_json(step) == {"kind": "gain", "payload": {"k0": "2", "k1": "-1/2"}}
        assert step_from_json(step_to_json(step)) == step
        assert step_from_json({"kind": "swap", "payload": {}}) == J
        with pytest.raises(CorpusError):
            step_from_json({"kind": "rotate"})

    def test_product_order(self):
        U, L = UpperLift(P(1)), LowerLift(P(1))
        assert product([U, L]) == U.matrix() * L.matrix(), "第一個步驟是最左邊的因子"
        assert product([]) == PolyMatrix2.identity()


class TestOperators:
    """γ、‡ 與步驟的移動規則。"""

    def test_gamma(self):
        A = UpperLift(P(1, 1)).matrix()
        assert gamma(2, "1/2", A) == UpperLift(P(4, 4)).matrix()
        with pytest.raises(RationalError):
            gamma(0, 1, A)

    def test_double_transpose(self):
        A = PolyMatrix2.from_rows([[[1], [2]], [[3], [4]]])
        assert double_transpose(A) == J.matrix() * A * J.matrix()

    @pytest.mark.property
    @given(steps, gains, gains)
    def test_gain_moves_left(self, step, k0, k1):
        D = GainDiag(k0, k1)
        assert step.matrix() * D.matrix() == D.matrix() * gain_pushed_left(step, D).matrix()

    @pytest.mark.property
    @given(steps)
    def test_swap_moves_right(self, step):
        assert J.matrix() * step.matrix() == swap_conjugate(step).matrix() * J.matrix()

    def test_swap_cannot_pass_gain_directly(self):
        with pytest.raises(TypeError):
            gain_pushed_left(J, GainDiag(1, 2))


class TestLiftingUpdate:
    """由兩個矩陣解出提升步驟。"""

    def test_left_update(self, lgt):
        H = UpperLift(P(1, 1)).matrix() * lgt
        assert lifting_update(lgt, H) == (UpperLift(P(1, 1)), "left")

    def test_right_update(self, lgt):
        H = lgt * LowerLift(P("1/2")).matrix()
        assert lifting_update(lgt, H) == (LowerLift(P("1/2")), "right")

    def test_different_determinants(self, lgt, cdf):
        with pytest.raises(EeaError):
            lifting_update(lgt, cdf)


class TestFactorization:
    """分解物件。"""

    @pytest.fixture
    def haar_raw(self, haar):
        return Factorization((UpperLift(P("-1/2")), GainDiag(1, -1), LowerLift(P(-1)), J), haar)

    def test_verify(self, haar_raw):
        haar_raw.verify()
        assert haar_raw.is_valid()

    def test_verify_reports_diff(self, haar_raw):
        broken = haar_raw.with_steps((UpperLift(P("-1/3")),) + haar_raw.steps[1:])
        with pytest.raises(ReconstructionMismatchError) as excinfo:
            broken.verify()
        assert excinfo.value.diff["entry"] == "H00"
        assert excinfo.value.to_dict()["error"] == "mismatch"

    def test_json_round_trip(self, haar_raw):
        data = haar_raw.to_json()
        assert data["schema"] == "liftcausal/factorization"
        assert Factorization.from_json(data) == haar_raw

    def test_normalize_haar(self, haar_raw):
        standard = normalize_standard(haar_raw)
        assert standard.steps == (GainDiag(1, -1), UpperLift(P("1/2")), LowerLift(P(-1)), J)
        assert standard.meta["form"] == "standard"
        assert format_factorization(standard) == "H(z) = diag(1, -1) · [1, 1/2; 0, 1] · [1, 0; -1, 1] · J"

    def test_normalize_moves_swap_right(self, lgt):
        raw = Factorization(
            (
                GainDiag("1/4", -4),
                UpperLift(P(-4)),
                J,
                DelayDiag(1, 1),
                UpperLift(P("-1/4")),
                LowerLift(P("7/2", "-1/2")),
            ),
            lgt,
        )
        raw.verify()
        standard = normalize_standard(raw)
        assert standard.steps == (
            GainDiag("1/4", -4),
            UpperLift(P(-4)),
            DelayDiag(1, 0),
            LowerLift(P("-1/4")),
            UpperLift(P("7/2", "-1/2")),
            J,
        )
        assert standard.summary() == {
            "lifting_steps": 3,
            "max_filter_degree": 1,
            "total_delay": 1,
            "swaps": 1,
            "max_numerator": 7,
            "max_denominator": 4,
        }

    def test_normalize_merges_and_drops(self):
        H = product([UpperLift(P(1)), UpperLift(P(0, 1)), DelayDiag(1, 0), DelayDiag(2, 0)])
        raw = Factorization(
            (UpperLift(P(1)), LowerLift(Poly.zero()), UpperLift(P(0, 1)), DelayDiag(1, 0), DelayDiag(2, 0)),
            H,
        )
        standard = normalize_standard(raw)
        assert standard.steps == (UpperLift(P(1, 1)), DelayDiag(3, 0))

    def test_normalize_moves_mismatched_delay_left(self):
        steps = (
            UpperLift(P(1)),
            DelayDiag(1, 0),
            LowerLift(P("16/13")),
            DelayDiag(1, 0),
            LowerLift(P(1)),
            UpperLift(P(2)),
        )
        raw = Factorization(steps, product(steps))
        standard = normalize_standard(raw)
        # λ 右邊通道 0 的延遲移到 λ 左邊後，兩個 λ 相鄰而合併
        assert standard.steps == (
            UpperLift(P(1)),
            DelayDiag(2, 0),
            LowerLift(P(1, "16/13")),
            UpperLift(P(2)),
        )
        assert normalize_standard(standard).steps == standard.steps

    def test_normalize_upper_delay_on_channel_one(self):
        steps = (UpperLift(P(1)), DelayDiag(1, 1), LowerLift(P(3)))
        standard = normalize_standard(Factorization(steps, product(steps)))
        assert standard.steps == (DelayDiag(1, 1), UpperLift(P(0, 1)), LowerLift(P(3)))

    def test_normalize_merges_across_matching_delay(self):
        steps = (UpperLift(P(1)), DelayDiag(1, 0), UpperLift(P(2)), LowerLift(P(3)))
        standard = normalize_standard(Factorization(steps, product(steps)))
        assert standard.steps == (UpperLift(P(1, 2)), DelayDiag(1, 0), LowerLift(P(3)))

    @pytest.mark.parametrize(
        "data",
        [
            {"schema": "liftcausal/factorization", "source": [[["1"], ["0"]], [["0"], ["1"]]]},
            {"schema": "liftcausal/factorization", "steps": []},
            {"schema": "liftcausal/factorization", "steps": [{"kind": "upper"}], "source": [[["1"], ["0"]], [["0"], ["1"]]]},
        ],
    )
    def test_from_json_missing_fields(self, data):
        with pytest.raises(CorpusError) as excinfo:
            Factorization.from_json(data)
        assert excinfo.value.to_dict()["error"] == "corpus"

    def test_multiline_format(self, haar_raw):
        text = format_factorization(haar_raw, multiline=True)
        assert text.splitlines()[0] == "H(z) ="
        assert len(text.splitlines()) == 5


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
