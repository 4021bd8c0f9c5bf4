#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
測試線性丟番圖方程式模組 lde.py。

主要測試內容：
- 擴展歐幾里得、齊次解、提升更新與可解性。
- 降次解的手算範例與 `solutions_coincide()`。
- 一般化除法 `gda()`。
- 因果補數：LGT 第 1 列的兩個相異補數。
- hypothesis：以 sympy 解線性方程組，確認降次解存在且唯一。
"""

from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from errors import LdeError, LdeUnsolvableError
from lde import (
    LdeProblem,
    LdeSolution,
    ReducedIn,
    causal_complements,
    classify,
    degree_reducing,
    extended_gcd,
    gda,
    homogeneous_basis,
    is_causal_complement,
    lift_update,
    solutions_coincide,
    solvable,
)
from poly import Poly, gcd

ZETA = sympy.Symbol("zeta")

int_polys = st.lists(st.integers(-3, 3), min_size=0, max_size=5).map(Poly)
nonzero_int_polys = int_polys.filter(lambda p: not p.is_zero())


def P(*coeffs) -> Poly:
    return Poly(c if isinstance(c, str) else Fraction(c) for c in coeffs)


def _sympy_expr(p: Poly):
    return sum(sympy.Rational(c.numerator, c.denominator) * ZETA**i for i, c in enumerate(p.coeffs))


def brute_force_reducing_in_a(a: Poly, b: Poly, c: Poly) -> list[tuple[Poly, Poly]]:
    """
    把 deg(y) < deg(a) − deg(h) 的所有解寫成係數的線性方程組，交給 sympy 求解。
    唯一解時傳回一個元素的列表。
    """
    h = gcd(a, b)
    ny = a.degree - h.degree
    top = max(0 if c.is_zero() else c.degree, b.degree + ny - 1 if ny > 0 else 0)
    nx = max(top - a.degree + 1, 0)
    xs = sympy.symbols(f"x0:{nx}") if nx else ()
    ys = sympy.symbols(f"y0:{ny}") if ny else ()
    X = sum(xs[i] * ZETA**i for i in range(nx))
    Y = sum(ys[i] * ZETA**i for i in range(ny))
    expr = sympy.expand(_sympy_expr(a) * X + _sympy_expr(b) * Y - _sympy_expr(c))
    unknowns = list(xs) + list(ys)
    if not unknowns:
        return [(Poly.zero(), Poly.zero())] if expr == 0 else []
    equations = sympy.Poly(expr, ZETA).all_coeffs() if expr != 0 else []
    solutions = sympy.linsolve(equations, unknowns)
    result = []
    for values in solutions:
        if any(v.free_symbols for v in values):
            # 有自由變數：解不唯一
            result.extend([None, None])
            continue
        fractions = [Fraction(int(v.p), int(v.q)) for v in values]
        result.append((Poly(fractions[:nx]), Poly(fractions[nx:])))
    return result


class TestLdeBasics:
    """基本工具。"""

    def test_extended_gcd(self):
        a, b = P(1, 0, -1), P(1, 1)
        h, u, v = extended_gcd(a, b)
        assert h == P(1, 1)
        assert u * a + v * b == h, "Bezout 等式"

    def test_extended_gcd_both_zero(self):
        with pytest.raises(LdeError):
            extended_gcd(Poly.zero(), Poly.zero())
        with pytest.raises(LdeError):
            LdeProblem(Poly.zero(), Poly.zero(), P(1))

    def test_homogeneous_basis_constants(self):
        assert homogeneous_basis(P(4), P(6)) == (P(6), P(4))

    def test_problem_properties(self):
        problem = LdeProblem(P(1, 0, -1), P(1, 1), P(1, 1))
        assert problem.h == P(1, 1)
        assert problem.a_tilde == P(1, -1)
        assert problem.b_tilde == P(1)
        assert problem.residual(Poly.zero(), P(1)).is_zero()

    def test_solvable(self):
        assert solvable(P(1, 1), P(1), P(0, 1))
        assert not solvable(P(0, 1), P(0, 0, 1), P(1))

    def test_unsolvable_raises(self):
        with pytest.raises(LdeUnsolvableError) as excinfo:
            degree_reducing(P(0, 1), P(0, 0, 1), P(1), "A")
        assert excinfo.value.code == "lde-unsolvable"


class TestDegreeReducing:
    """降次解的手算範例。"""

    def test_reducing_in_a_and_b_differ(self):
        a, b, c = P(1, 1), P(1), P(0, 1)
        sol_a = degree_reducing(a, b, c, "A")
        sol_b = degree_reducing(a, b, c, ReducedIn.B)
        assert (sol_a.x, sol_a.y) == (P(1), P(-1))
        assert sol_a.reduced_in is ReducedIn.A
        assert (sol_b.x, sol_b.y) == (Poly.zero(), P(0, 1))
        assert sol_b.reduced_in is ReducedIn.B
        assert not solutions_coincide(a, b, c)

    def test_coinciding_solutions(self):
        a, b, c = P(1, 0, 1), P(1), P(0, 1)
        sol_a = degree_reducing(a, b, c, "a")
        sol_b = degree_reducing(a, b, c, "b")
        assert sol_a == sol_b
        assert (sol_a.x, sol_a.y) == (Poly.zero(), P(0, 1))
        assert sol_a.reduced_in is ReducedIn.BOTH
        assert solutions_coincide(a, b, c)

    def test_lift_update_moves_between_solutions(self):
        a, b = P(1, 1), P(1)
        start = LdeSolution(P(1), P(-1), ReducedIn.A)
        moved = lift_update(start, P(-1), a, b)
        assert (moved.x, moved.y) == (Poly.zero(), P(0, 1))
        assert moved.reduced_in is ReducedIn.B

    def test_classify_none(self):
        assert classify(P(1, 1), P(1), P(1, 1), P(0, 0, 1)) is ReducedIn.NONE

    def test_target_errors(self):
        with pytest.raises(LdeError):
            degree_reducing(Poly.zero(), P(1), P(1), "A")
        with pytest.raises(LdeError):
            degree_reducing(P(1), P(1), P(1), "BOTH")

    def test_coincide_on_cdf_rows(self, cdf):
        f0, f1 = cdf.row(1)
        det = P(0, 0, -1)
        assert solutions_coincide(f1, -f0, det), "deg 2 < 1 + 2"
        assert not solutions_coincide(P(1, 1), P(1), det), "deg 2 不小於 1 + 0"

    def test_to_json(self):
        sol = degree_reducing(P(1, 1), P(1), P(0, 1), "A")
        assert sol.to_json() == {"x": ["1"], "y": ["-1"], "reduced_in": "A"}

    @pytest.mark.property
    @pytest.mark.slow
    @settings(max_examples=500)
    @given(nonzero_int_polys, nonzero_int_polys, int_polys, int_polys)
    def test_unique_against_linear_system(self, a, b, x0, y0):
        c = a * x0 + b * y0
        sol_a = degree_reducing(a, b, c, "A")
        sol_b = degree_reducing(a, b, c, "B")
        assert a * sol_a.x + b * sol_a.y == c, "代入驗證（a 中降次）"
        assert a * sol_b.x + b * sol_b.y == c, "代入驗證（b 中降次）"
        assert brute_force_reducing_in_a(a, b, c) == [(sol_a.x, sol_a.y)], "線性方程組只有這一個解"
        swapped = brute_force_reducing_in_a(b, a, c)
        assert swapped == [(sol_b.y, sol_b.x)], "交換 a、b 後同樣唯一"
        assert solutions_coincide(a, b, c) == (sol_a == sol_b), "重合判準與直接比較一致"


class TestGda:
    def test_lgt_example(self):
        q, r = gda(P("-1/8", "3/4", "-1/8"), P("-1/2", "-1/2"), P(0, 1))
        assert q == P("1/4", "1/4")
        assert r == P(0, 1)

    def test_general_divisor(self):
        e, f, g = P(1, 2, 3, 4), P(1, 1), P(1, 0, 1)
        q, r = gda(e, f, g)
        assert f * q + r == e
        assert g.divides(r)
        assert r.degree < f.degree - gcd(f, g).degree + g.degree

    def test_zero_arguments(self):
        with pytest.raises(LdeError):
            gda(P(1), Poly.zero(), P(1))


class TestCausalComplements:
    """因果補數。"""

    def test_lgt_row1(self, lgt):
        f0, f1 = lgt.row(1)
        det = P(0, 1)
        complements = causal_complements(f0, f1, det)
        assert len(complements) == 2, "兩種降次補數不同"
        first, second = complements
        assert (first.r0, first.r1, first.reduces_in) == (P(-1), P(2), (0,))
        assert (second.r0, second.r1, second.reduces_in) == (P(0, 1), Poly.zero(), (1,))
        for item in complements:
            assert is_causal_complement((item.r0, item.r1), (f0, f1), det)

    def test_original_row_is_complement(self, lgt):
        assert is_causal_complement(lgt.row(0), lgt.row(1), P(0, 1))

    def test_zero_filter(self):
        with pytest.raises(LdeError):
            causal_complements(Poly.zero(), P(1), P(1))

    def test_to_json(self, lgt):
        f0, f1 = lgt.row(1)
        data = causal_complements(f0, f1, P(0, 1))[0].to_json()
        assert data == {"r0": ["-1"], "r1": ["2"], "reduces_in": [0]}


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
