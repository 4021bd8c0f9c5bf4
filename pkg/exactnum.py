#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
精確有理數模組 (exactnum.py)

係數體固定為有理數 ℚ，底層直接使用標準函式庫的 `fractions.Fraction`：
任意精度整數、永遠保持最簡分數、分母為正、零表示為 0/1。

主要功能：
- `Rational`: 係數型別（`Fraction` 的別名）。
- `as_rational()`: 將 int / str / Fraction 統一轉成 `Rational`。
- `parse_rational()` / `render_rational()`: "p/q" 文字格式的解析與輸出，
  q = 1 時省略 "/q"，正負號放在分子。
- `add()` / `sub()` / `mul()` / `div()`: 精確的體運算；除以零會拋出 `RationalError`。
"""

import re
from fractions import Fraction

from errors import RationalError

# 係數型別
Rational = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)

# 只接受整數或 "p/q"，不接受小數點表示法，避免浮點數誤入
_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


def parse_rational(text: str) -> Fraction:
    """
    解析 "p/q" 或 "p" 格式的文字。

    Args:
        text (str): 例如 "-13/16"、"3"。

    Returns:
        Fraction: 最簡分數。

    Raises:
        RationalError: 格式不符或分母為 0。
    """
    match = _RATIONAL_RE.match(text)
    if match is None:
        raise RationalError(f"無法解析的有理數文字: {text!r}")
    numerator = int(match.group(1))
    denominator = int(match.group(2)) if match.group(2) is not None else 1
    if denominator == 0:
        raise RationalError(f"分母不可為 0: {text!r}")
    return Fraction(numerator, denominator)


def render_rational(value: Fraction) -> str:
    """輸出標準文字格式，分母為 1 時只輸出分子。"""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def as_rational(value) -> Fraction:
    """
    將常見的輸入型別轉成 `Fraction`。

    接受 `Fraction`、`int` 與 "p/q" 字串；`float` 一律拒絕，
    因為二進位浮點數無法精確表示 1/3 這類係數。
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise RationalError(f"不支援的係數型別: {type(value).__name__}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise RationalError(f"不支援的係數型別: {type(value).__name__}")


def add(a, b) -> Fraction:
    return as_rational(a) + as_rational(b)


def sub(a, b) -> Fraction:
    return as_rational(a) - as_rational(b)


def mul(a, b) -> Fraction:
    return as_rational(a) * as_rational(b)


def div(a, b) -> Fraction:
    """精確除法；除數為 0 時拋出 `RationalError` 而不是 `ZeroDivisionError`。"""
    divisor = as_rational(b)
    if divisor == 0:
        raise RationalError("有理數除以零", dividend=a)
    return as_rational(a) / divisor
