#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
線性丟番圖方程式模組 (lde.py)

在多項式環 ℚ[ζ]（ζ = z⁻¹）上求解兩個未知數的線性丟番圖方程式 a·x + b·y = c。

主要功能：
- `extended_gcd()`: 擴展歐幾里得演算法，傳回首一的 h = gcd(a, b) 與係數 (u, v)，u·a + v·b = h。
- `homogeneous_basis()`: 齊次方程式 a·x + b·y = 0 的解集合為 {(s·b̃, −s·ã)}。
- `lift_update()`: 以任意 s 更新一組解，得到同一方程式的另一組解。
- `solvable()`: 若且唯若 gcd(a, b) 整除 c 時有解。
- `degree_reducing()`: 唯一的「在 a 中降次」或「在 b 中降次」的解。
- `solutions_coincide()`: 兩種降次解是否相同（deg c < deg a + deg b − deg h）。
- `gda()`: 一般化除法，餘式可被任意非零 g 整除。
- `causal_complements()` / `is_causal_complement()`: 濾波器對 (F0, F1) 的因果補數。

記號：h 為首一 gcd，ã = a/h、b̃ = b/h、c̃ = c/h。
"""

import logging
from dataclasses import dataclass
from enum import Enum

from errors import LdeError, LdeUnsolvableError
from poly import Poly, divide, gcd

logger = logging.getLogger(__name__)


class ReducedIn(str, Enum):
    """解在哪個係數中是降次的。"""

    A = "A"
    B = "B"
    BOTH = "BOTH"
    NONE = "NONE"


@dataclass(frozen=True)
class LdeProblem:
    """方程式 a·x + b·y = c；a 與 b 不可同時為零。"""

    a: Poly
    b: Poly
    c: Poly

    def __post_init__(self):
        if self.a.is_zero() and self.b.is_zero():
            raise LdeError("a 與 b 不可同時為零")

    @property
    def h(self) -> Poly:
        return gcd(self.a, self.b)

    @property
    def a_tilde(self) -> Poly:
        return self.a.exact_div(self.h)

    @property
    def b_tilde(self) -> Poly:
        return self.b.exact_div(self.h)

    def residual(self, x: Poly, y: Poly) -> Poly:
        """a·x + b·y − c，解正確時為零。"""
        return self.a * x + self.b * y - self.c


@dataclass(frozen=True)
class LdeSolution:
    x: Poly
    y: Poly
    reduced_in: ReducedIn

    def to_json(self) -> dict:
        return {"x": self.x.to_json(), "y": self.y.to_json(), "reduced_in": self.reduced_in.value}


def _check_not_both_zero(a: Poly, b: Poly) -> None:
    if a.is_zero() and b.is_zero():
        raise LdeError("a 與 b 不可同時為零")


def extended_gcd(a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    """
    擴展歐幾里得演算法。

    Returns:
        tuple[Poly, Poly, Poly]: (h, u, v)，h 首一且 u·a + v·b = h。

    Raises:
        LdeError: a 與 b 同時為零。
    """
    _check_not_both_zero(a, b)
    r0, r1 = a, b
    s0, s1 = Poly.one(), Poly.zero()
    t0, t1 = Poly.zero(), Poly.one()
    while not r1.is_zero():
        q, r = divide(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    lead_inv = 1 / r0.leading_coefficient
    return r0.scale(lead_inv), s0.scale(lead_inv), t0.scale(lead_inv)


def homogeneous_basis(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    """
    齊次方程式 a·x + b·y = 0 的參數化。

    Returns:
        tuple[Poly, Poly]: (b̃, ã)；所有解為 (s·b̃, −s·ã)，s 為任意多項式。
    """
    _check_not_both_zero(a, b)
    h = gcd(a, b)
    return b.exact_div(h), a.exact_div(h)


def classify(a: Poly, b: Poly, x: Poly, y: Poly) -> ReducedIn:
    """判斷 (x, y) 在 a、在 b、兩者或皆非中是降次的。"""
    h_degree = gcd(a, b).degree
    in_a = not a.is_zero() and y.degree < a.degree - h_degree
    in_b = not b.is_zero() and x.degree < b.degree - h_degree
    if in_a and in_b:
        return ReducedIn.BOTH
    if in_a:
        return ReducedIn.A
    if in_b:
        return ReducedIn.B
    return ReducedIn.NONE


def lift_update(sol: LdeSolution, s: Poly, a: Poly, b: Poly) -> LdeSolution:
    """
    一般化提升定理：x′ = x + s·b̃、y′ = y − s·ã 仍是同一方程式的解，
    且每一組解都恰好對應一個 s。
    """
    b_tilde, a_tilde = homogeneous_basis(a, b)
    x = sol.x + s * b_tilde
    y = sol.y - s * a_tilde
    return LdeSolution(x, y, classify(a, b, x, y))


def solvable(a: Poly, b: Poly, c: Poly) -> bool:
    """若且唯若 gcd(a, b) | c。"""
    _check_not_both_zero(a, b)
    return gcd(a, b).divides(c)


def particular_solution(a: Poly, b: Poly, c: Poly) -> tuple[Poly, Poly]:
    """由擴展歐幾里得係數得到一組特解 (u·c̃, v·c̃)。"""
    h, u, v = extended_gcd(a, b)
    if not h.divides(c):
        raise LdeUnsolvableError(f"gcd(a, b) = {h} 不整除 c = {c}", a=a, b=b, c=c)
    c_tilde = c.exact_div(h)
    return u * c_tilde, v * c_tilde


def degree_reducing(a: Poly, b: Poly, c: Poly, target: ReducedIn | str) -> LdeSolution:
    """
    線性丟番圖降次定理的建構。

    target 為 A 時傳回唯一滿足 deg(y) < deg(a) − deg(h) 的解；
    為 B 時傳回唯一滿足 deg(x) < deg(b) − deg(h) 的解。

    Args:
        a (Poly), b (Poly), c (Poly): 方程式係數。
        target (ReducedIn | str): "A" 或 "B"。

    Raises:
        LdeUnsolvableError: gcd(a, b) 不整除 c。
        LdeError: target 對應的係數為零，或 target 不是 A/B。
    """
    target = ReducedIn(target.upper() if isinstance(target, str) else target)
    if target not in (ReducedIn.A, ReducedIn.B):
        raise LdeError(f"target 必須是 A 或 B: {target.value}")
    if target is ReducedIn.A and a.is_zero():
        raise LdeError("a = 0 時沒有在 a 中降次的解")
    if target is ReducedIn.B and b.is_zero():
        raise LdeError("b = 0 時沒有在 b 中降次的解")

    x_star, y_star = particular_solution(a, b, c)
    b_tilde, a_tilde = homogeneous_basis(a, b)

    if target is ReducedIn.A:
        q, y = divide(y_star, a_tilde)
        x = x_star + q * b_tilde
    else:
        q, x = divide(x_star, b_tilde)
        y = y_star + q * a_tilde

    solution = LdeSolution(x, y, classify(a, b, x, y))
    logger.debug("degree_reducing(%s): x=%s, y=%s, %s", target.value, x, y, solution.reduced_in.value)
    return solution


def solutions_coincide(a: Poly, b: Poly, c: Poly) -> bool:
    """
    兩個降次解相同若且唯若 deg(c) < deg(a) + deg(b) − deg(h)。

    c = 0 時兩者皆為 (0, 0)，傳回 True。
    """
    if a.is_zero() or b.is_zero():
        raise LdeError("a 與 b 都必須非零")
    h = gcd(a, b)
    if not h.divides(c):
        raise LdeUnsolvableError(f"gcd(a, b) = {h} 不整除 c = {c}")
    return c.degree < a.degree + b.degree - h.degree


def gda(e: Poly, f: Poly, g: Poly) -> tuple[Poly, Poly]:
    """
    一般化除法：唯一的 q 使 r = e − f·q 可被 g 整除，
    且 deg(r) < deg(f) − deg(gcd(f, g)) + deg(g)。

    以 f·q + g·p = e 在 f 中降次的解求得，r = g·p。

    Raises:
        LdeError: f 或 g 為零。
        LdeUnsolvableError: gcd(f, g) 不整除 e。
    """
    if f.is_zero() or g.is_zero():
        raise LdeError("gda 的 f 與 g 都必須非零")
    solution = degree_reducing(f, g, e, ReducedIn.A)
    return solution.x, g * solution.y


# --- 因果補數 ---

@dataclass(frozen=True)
class CausalComplement:
    """
    濾波器對 (F0, F1) 的因果補數 (R0, R1)：矩陣 [[R0, R1], [F0, F1]] 的行列式等於指定單項式。

    `reduces_in` 列出在哪些索引 ℓ 上 deg(R_ℓ) < deg(F_ℓ) − deg gcd(F0, F1)。
    """

    r0: Poly
    r1: Poly
    reduces_in: tuple[int, ...]

    def to_json(self) -> dict:
        return {"r0": self.r0.to_json(), "r1": self.r1.to_json(), "reduces_in": list(self.reduces_in)}


def is_causal_complement(r: tuple[Poly, Poly], f: tuple[Poly, Poly], det: Poly) -> bool:
    """R0·F1 − R1·F0 是否等於 det。"""
    return r[0] * f[1] - r[1] * f[0] == det


def causal_complements(f0: Poly, f1: Poly, det: Poly) -> list[CausalComplement]:
    """
    列出 (F0, F1) 的所有相異降次因果補數。

    解 F1·R0 + (−F0)·R1 = det：在 a = F1 中降次即 deg(R1) 受限，
    在 b = −F0 中降次即 deg(R0) 受限。兩者相同時只傳回一個。

    Raises:
        LdeError: F0 或 F1 為零。
        LdeUnsolvableError: gcd(F0, F1) 不整除 det。
    """
    if f0.is_zero() or f1.is_zero():
        raise LdeError("F0 與 F1 都必須非零")
    a, b = f1, -f0
    found: list[CausalComplement] = []
    for target in (ReducedIn.B, ReducedIn.A):
        solution = degree_reducing(a, b, det, target)
        if any(item.r0 == solution.x and item.r1 == solution.y for item in found):
            continue
        reduces_in = {
            ReducedIn.A: (1,),
            ReducedIn.B: (0,),
            ReducedIn.BOTH: (0, 1),
            ReducedIn.NONE: (),
        }[solution.reduced_in]
        found.append(CausalComplement(solution.x, solution.y, reduces_in))
    return found
