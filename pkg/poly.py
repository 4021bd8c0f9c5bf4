#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
多項式模組 (poly.py)

以 z⁻¹ 為變數的因果多項式（內部即 ζ = z⁻¹）與 Laurent 多項式，係數為精確有理數。

主要功能：
- `Poly`: 因果多項式，索引 i 存放 z^(-i) 的係數，永遠保持去除尾端零的標準形式。
- `LaurentPoly`: 允許負次方的 Laurent 多項式，以 `offset` 記錄最低的 z⁻¹ 次方。
- `NEG_INF`: 零多項式的次數，比任何自然數都小，且 NEG_INF + n = NEG_INF。
- `divide()`: 經典多項式除法，deg(r) < deg(f)。
- `sgda()`: 略為推廣的除法，餘式可被 z^(-M) 整除且 deg(r) < deg(f) + M。
- `gcd()`: 首一（leading coefficient 為 1）的最大公因式。
- `monomial_multiplicity()`: 最低非零係數的索引，也就是可提出的 z⁻¹ 次方數。
- `laurent_order()`: Laurent 多項式的大小（最高次方減最低次方）。
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from errors import PolyDivisionError, PolyError, SgdaPreconditionError
from exactnum import ONE, ZERO, as_rational, render_rational

logger = logging.getLogger(__name__)


class _NegInf:
    """零多項式的次數哨兵值。"""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "NEG_INF"

    def __str__(self) -> str:
        return "-inf"

    def __hash__(self) -> int:
        return hash("NEG_INF")

    def __eq__(self, other) -> bool:
        return other is self

    def __lt__(self, other) -> bool:
        return other is not self

    def __le__(self, other) -> bool:
        return True

    def __gt__(self, other) -> bool:
        return False

    def __ge__(self, other) -> bool:
        return other is self

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __sub__(self, other):
        if other is self:
            raise PolyError("NEG_INF - NEG_INF 沒有定義")
        return self

    def __rsub__(self, other):
        raise PolyError("自然數減去 NEG_INF 沒有定義")


NEG_INF = _NegInf()

# 次數的型別：自然數或 NEG_INF
Degree = int | _NegInf


def _trim(coeffs: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """去除尾端（高次方）的零係數。"""
    end = len(coeffs)
    while end > 0 and coeffs[end - 1] == 0:
        end -= 1
    return tuple(coeffs[:end])


def _power_label(exponent: int) -> str:
    """z⁻¹ 次方的文字標籤：0 次方不輸出，負的 z⁻¹ 次方輸出成正的 z 次方。"""
    if exponent == 0:
        return ""
    if exponent > 0:
        return f"z^-{exponent}"
    return f"z^{-exponent}"


def _render_terms(terms: list[tuple[int, Fraction]]) -> str:
    """
    將 (z⁻¹ 次方, 係數) 列表輸出成提出公分母的文字，
    例如 (−1 + 6z^-1 − 1z^-2)/8。
    """
    if not terms:
        return "0"
    common = lcm(*(c.denominator for _, c in terms))
    pieces = []
    for index, (exponent, coeff) in enumerate(terms):
        numerator = coeff.numerator * (common // coeff.denominator)
        magnitude = f"{abs(numerator)}{_power_label(exponent)}"
        if index == 0:
            pieces.append(magnitude if numerator > 0 else f"-{magnitude}")
        else:
            pieces.append(f"{'+' if numerator > 0 else '-'} {magnitude}")
    body = " ".join(pieces)
    if common == 1:
        return body
    if len(terms) > 1:
        return f"({body})/{common}"
    return f"{body}/{common}"


@dataclass(frozen=True)
class Poly:
    """
    z⁻¹ 的因果多項式。

    `coeffs[i]` 是 z^(-i) 的係數；建構時自動轉成 `Fraction` 並去除尾端的零，
    因此兩個多項式相等若且唯若係數元組相等。
    """

    coeffs: tuple[Fraction, ...] = ()

    def __init__(self, coeffs: Iterable = ()):
        object.__setattr__(self, "coeffs", _trim([as_rational(c) for c in coeffs]))

    # --- 建構輔助 ---

    @classmethod
    def zero(cls) -> "Poly":
        return cls(())

    @classmethod
    def one(cls) -> "Poly":
        return cls((ONE,))

    @classmethod
    def constant(cls, value) -> "Poly":
        return cls((value,))

    @classmethod
    def monomial(cls, coeff, exponent: int) -> "Poly":
        """coeff · z^(-exponent)。"""
        if exponent < 0:
            raise PolyError(f"因果多項式不允許 z 的正次方: {exponent}")
        return cls([ZERO] * exponent + [as_rational(coeff)])

    @classmethod
    def from_json(cls, data: Sequence) -> "Poly":
        """由 ["p/q", ...] 係數列表建構。"""
        return cls(as_rational(c) for c in data)

    @classmethod
    def from_text(cls, text: str) -> "Poly":
        """由逗號分隔的係數文字建構，例如 "-1/8,3/4,-1/8"。"""
        text = text.strip()
        if not text or text == "0":
            return cls.zero()
        return cls(as_rational(part) for part in text.split(","))

    def to_json(self) -> list[str]:
        return [render_rational(c) for c in self.coeffs]

    # --- 基本性質 ---

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    @property
    def degree(self) -> Degree:
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def coeff(self, index: int) -> Fraction:
        if 0 <= index < len(self.coeffs):
            return self.coeffs[index]
        return ZERO

    @property
    def constant_term(self) -> Fraction:
        return self.coeff(0)

    @property
    def leading_coefficient(self) -> Fraction:
        if not self.coeffs:
            raise PolyError("零多項式沒有領導係數")
        return self.coeffs[-1]

    def is_monomial(self) -> bool:
        """恰好只有一個非零係數。"""
        return sum(1 for c in self.coeffs if c != 0) == 1

    def as_monomial(self) -> tuple[Fraction, int]:
        """把單項式拆成 (係數, z⁻¹ 次方)。"""
        if not self.is_monomial():
            raise PolyError(f"不是單項式: {self}")
        return self.leading_coefficient, len(self.coeffs) - 1

    # --- 環運算 ---

    def __neg__(self) -> "Poly":
        return Poly(-c for c in self.coeffs)

    def __add__(self, other: "Poly") -> "Poly":
        if not isinstance(other, Poly):
            return NotImplemented
        size = max(len(self.coeffs), len(other.coeffs))
        return Poly(self.coeff(i) + other.coeff(i) for i in range(size))

    def __sub__(self, other: "Poly") -> "Poly":
        if not isinstance(other, Poly):
            return NotImplemented
        size = max(len(self.coeffs), len(other.coeffs))
        return Poly(self.coeff(i) - other.coeff(i) for i in range(size))

    def __mul__(self, other) -> "Poly":
        if isinstance(other, Poly):
            if not self.coeffs or not other.coeffs:
                return Poly.zero()
            out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                if a == 0:
                    continue
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
            return Poly(out)
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    __rmul__ = __mul__

    def scale(self, factor) -> "Poly":
        factor = as_rational(factor)
        return Poly(c * factor for c in self.coeffs)

    def shift(self, k: int) -> "Poly":
        """乘上 z^(-k)，即係數向量右移 k 格（τ_k）。"""
        if k < 0:
            raise PolyError(f"位移量必須是自然數: {k}")
        if not self.coeffs:
            return self
        return Poly((ZERO,) * k + self.coeffs)

    def unshift(self, k: int) -> "Poly":
        """除以 z^(-k)；前 k 個係數必須為零。"""
        if k < 0:
            raise PolyError(f"位移量必須是自然數: {k}")
        if any(c != 0 for c in self.coeffs[:k]):
            raise PolyError(f"{self} 無法被 z^-{k} 整除")
        return Poly(self.coeffs[k:])

    def monic(self) -> "Poly":
        """除以領導係數；零多項式原樣傳回。"""
        if not self.coeffs:
            return self
        return self.scale(ONE / self.leading_coefficient)

    def exact_div(self, divisor: "Poly") -> "Poly":
        """整除；有餘式時拋出 `PolyError`。"""
        quotient, remainder = divide(self, divisor)
        if remainder:
            raise PolyError(f"{divisor} 不整除 {self}", remainder=remainder)
        return quotient

    def divides(self, other: "Poly") -> bool:
        """self | other。零只整除零。"""
        if self.is_zero():
            return other.is_zero()
        return divide(other, self)[1].is_zero()

    # --- 輸出 ---

    def __str__(self) -> str:
        return _render_terms([(i, c) for i, c in enumerate(self.coeffs) if c != 0])

    def __repr__(self) -> str:
        return f"Poly({self})"


@dataclass(frozen=True)
class LaurentPoly:
    """
    Laurent 多項式：`coeffs[i]` 是 z^-(offset + i) 的係數。

    首尾係數都非零（零多項式例外，此時 offset 固定為 0），
    因此相等比較只需比較 (coeffs, offset)。
    """

    coeffs: tuple[Fraction, ...] = ()
    offset: int = 0

    def __init__(self, coeffs: Iterable = (), offset: int = 0):
        values = [as_rational(c) for c in coeffs]
        start = 0
        while start < len(values) and values[start] == 0:
            start += 1
        trimmed = _trim(values[start:])
        object.__setattr__(self, "coeffs", trimmed)
        object.__setattr__(self, "offset", offset + start if trimmed else 0)

    @classmethod
    def from_poly(cls, poly: Poly) -> "LaurentPoly":
        return cls(poly.coeffs, 0)

    @classmethod
    def from_json(cls, data: dict) -> "LaurentPoly":
        """由 {"start": k, "coeffs": ["p/q", ...]} 建構，k 為最低的 z⁻¹ 次方。"""
        return cls((as_rational(c) for c in data["coeffs"]), int(data.get("start", 0)))

    def to_json(self) -> dict:
        return {"start": self.offset, "coeffs": [render_rational(c) for c in self.coeffs]}

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lowest_exponent(self) -> int:
        return self.offset

    @property
    def highest_exponent(self) -> int:
        return self.offset + len(self.coeffs) - 1

    def coeff(self, exponent: int) -> Fraction:
        index = exponent - self.offset
        if 0 <= index < len(self.coeffs):
            return self.coeffs[index]
        return ZERO

    def items(self) -> list[tuple[int, Fraction]]:
        """非零項的 (z⁻¹ 次方, 係數) 列表。"""
        return [(self.offset + i, c) for i, c in enumerate(self.coeffs) if c != 0]

    def is_causal(self) -> bool:
        return self.is_zero() or self.offset >= 0

    def to_poly(self) -> Poly:
        if not self.is_causal():
            raise PolyError(f"非因果的 Laurent 多項式無法轉成 Poly: {self}")
        if self.is_zero():
            return Poly.zero()
        return Poly((ZERO,) * self.offset + self.coeffs)

    def shift(self, k: int) -> "LaurentPoly":
        """乘上 z^(-k)，k 可為負。"""
        return LaurentPoly(self.coeffs, self.offset + k)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly((-c for c in self.coeffs), self.offset)

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        low = min(self.lowest_exponent, other.lowest_exponent)
        high = max(self.highest_exponent, other.highest_exponent)
        return LaurentPoly((self.coeff(e) + other.coeff(e) for e in range(low, high + 1)), low)

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            product = Poly(self.coeffs) * Poly(other.coeffs)
            return LaurentPoly(product.coeffs, self.offset + other.offset)
        if isinstance(other, (int, Fraction)):
            factor = as_rational(other)
            return LaurentPoly((c * factor for c in self.coeffs), self.offset)
        return NotImplemented

    __rmul__ = __mul__

    def __str__(self) -> str:
        return _render_terms(self.items())

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"


# --- 模組層級的運算（與規格中的操作名稱一一對應） ---

def degree(f: Poly) -> Degree:
    """多項式次數；零多項式為 NEG_INF。"""
    return f.degree


def add(f: Poly, g: Poly) -> Poly:
    return f + g


def mul(f: Poly, g: Poly) -> Poly:
    return f * g


def scale(f: Poly, c) -> Poly:
    return f.scale(c)


def shift(f: Poly, k: int) -> Poly:
    return f.shift(k)


def divide(e: Poly, f: Poly) -> tuple[Poly, Poly]:
    """
    經典多項式除法。

    Args:
        e (Poly): 被除式。
        f (Poly): 除式，不可為零。

    Returns:
        tuple[Poly, Poly]: 唯一的 (q, r)，滿足 e = f·q + r 且 deg(r) < deg(f)。
    """
    return sgda(e, f, 0)


def sgda(e: Poly, f: Poly, multiplicity: int) -> tuple[Poly, Poly]:
    """
    略為推廣的除法 (Slightly Generalized Division Algorithm)。

    先由高次往低次消去，只消到 deg(r) < deg(f) + M 為止；
    再由低次往高次消去前 M 個係數，使 z^(-M) 整除餘式。

    Args:
        e (Poly): 被除式。
        f (Poly): 除式，不可為零；M > 0 時常數項必須非零。
        multiplicity (int): M，餘式需含有的 z⁻¹ 次方數，M = 0 即經典除法。

    Returns:
        tuple[Poly, Poly]: 唯一的 (q, r)，e = f·q + r，z^(-M) | r，deg(r) < deg(f) + M。

    Raises:
        PolyDivisionError: f 為零。
        SgdaPreconditionError: M < 0，或 M > 0 而 f 的常數項為 0。
    """
    if f.is_zero():
        raise PolyDivisionError("除式不可為零多項式", dividend=e)
    if multiplicity < 0:
        raise SgdaPreconditionError(f"M 必須是自然數: {multiplicity}")
    if multiplicity > 0 and f.constant_term == 0:
        raise SgdaPreconditionError(
            f"M = {multiplicity} > 0 時除式常數項必須非零", divisor=f
        )

    m = f.degree
    n = e.degree if not e.is_zero() else -1
    fc = f.coeffs
    lead_inv = ONE / fc[m]

    # 餘式暫存區，長度足以容納兩個迴圈會動到的所有係數
    r = list(e.coeffs) + [ZERO] * max(0, m + multiplicity - len(e.coeffs) + 1)
    q = [ZERO] * max(n - m + 1, multiplicity, 0)

    # 由高次往低次：只需消到 k = M
    for k in range(n - m, multiplicity - 1, -1):
        if r[m + k] != 0:
            q[k] = r[m + k] * lead_inv
            for i, c in enumerate(fc):
                r[i + k] -= q[k] * c

    # 由低次往高次：消去前 M 個係數
    if multiplicity > 0:
        const_inv = ONE / fc[0]
        for k in range(multiplicity):
            if r[k] != 0:
                q[k] = r[k] * const_inv
                for i, c in enumerate(fc):
                    r[i + k] -= q[k] * c

    quotient, remainder = Poly(q), Poly(r)
    logger.debug("sgda(M=%d): (%s) = (%s)(%s) + (%s)", multiplicity, e, f, quotient, remainder)
    return quotient, remainder


def gcd(f: Poly, g: Poly) -> Poly:
    """
    首一的最大公因式。

    Raises:
        PolyError: f 與 g 同時為零。
    """
    if f.is_zero() and g.is_zero():
        raise PolyError("gcd(0, 0) 沒有定義")
    a, b = f, g
    while not b.is_zero():
        a, b = b, divide(a, b)[1]
    return a.monic()


def monomial_multiplicity(f: Poly) -> int:
    """最大的 i 使得 z^(-i) 整除 f，即最低非零係數的索引。"""
    if f.is_zero():
        raise PolyError("零多項式的單項式重數沒有定義")
    for index, c in enumerate(f.coeffs):
        if c != 0:
            return index
    raise AssertionError("unreachable")


def laurent_order(f: LaurentPoly) -> Degree:
    """Lord(f) = 最高次方 − 最低次方；零多項式為 NEG_INF。"""
    if f.is_zero():
        return NEG_INF
    return f.highest_exponent - f.lowest_exponent
