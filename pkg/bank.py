#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
濾波器組模組 (bank.py)

兩通道多速率濾波器組的訊號層：濾波器與多相位矩陣的轉換、分析／合成，
以及在訊號上驗證完美重建。所有運算都是精確的有理數運算。

主要功能：
- `FilterBank` / `Signal`: 濾波器組與有限長度、帶起始索引的訊號。
- `polyphase_decompose()` / `polyphase_compose()`: 含延遲的多相位 (PWD) 表示法，
  H_i0(z) = Σ h_i(2n) z^-n、H_i1(z) = Σ h_i(2n+1) z^-n。
- `analyze()`: 解多工成 x(2n) 與 x(2n−1) 兩相，再套用矩陣或逐步套用提升梯形。
- `synthesize()`: 矩陣路徑使用因果的 adj(H)；梯形路徑逐步精確反轉（延遲改為超前）。
- `pr_verify()`: 以脈衝與隨機訊號執行分析→合成，量測單一的 (增益, 延遲)。
- `synthesis_bank()`: 因果合成多相位矩陣 adj(H)。

邊界一律以零延伸處理。
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from config import DEFAULT_SEED, DEFAULT_TRIALS, RANDOM_COEFF_RANGE, SIGNAL_LENGTH
from errors import LiftingError, PolyError, ReconstructionMismatchError
from exactnum import ONE, ZERO, as_rational, render_rational
from lift import (
    DelayDiag,
    Factorization,
    GainDiag,
    LowerLift,
    PolyMatrix2,
    Swap,
    UpperLift,
    pr_check,
)
from poly import LaurentPoly, Poly

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FilterBank:
    """分析濾波器組：h0 為低通、h1 為高通，兩者都不可為零。"""

    name: str
    h0: LaurentPoly
    h1: LaurentPoly

    def __post_init__(self):
        if self.h0.is_zero() or self.h1.is_zero():
            raise LiftingError(f"濾波器組 {self.name} 的濾波器不可為零")

    def to_json(self) -> dict:
        return {"name": self.name, "h0": self.h0.to_json(), "h1": self.h1.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> "FilterBank":
        return cls(
            data.get("name", "bank"),
            LaurentPoly.from_json(data["h0"]),
            LaurentPoly.from_json(data["h1"]),
        )


@dataclass(frozen=True)
class Signal:
    """x(start), x(start+1), …；範圍以外的樣本視為零。"""

    samples: tuple[Fraction, ...]
    start: int = 0

    def __init__(self, samples: Sequence = (), start: int = 0):
        object.__setattr__(self, "samples", tuple(as_rational(s) for s in samples))
        object.__setattr__(self, "start", start)

    @classmethod
    def impulse(cls, position: int = 0) -> "Signal":
        return cls((ONE,), position)

    @classmethod
    def random(
        cls,
        seed: int = DEFAULT_SEED,
        length: int = SIGNAL_LENGTH,
        coeff_range: int = RANDOM_COEFF_RANGE,
    ) -> "Signal":
        """以固定種子產生有理數樣本，分子在 [−R, R]、分母在 [1, R]。"""
        rng = np.random.default_rng(seed)
        numerators = rng.integers(-coeff_range, coeff_range + 1, size=length)
        denominators = rng.integers(1, coeff_range + 1, size=length)
        return cls(Fraction(int(p), int(q)) for p, q in zip(numerators, denominators))

    @classmethod
    def from_laurent(cls, poly: LaurentPoly) -> "Signal":
        return cls(poly.coeffs, poly.offset)

    def to_laurent(self) -> LaurentPoly:
        """X(z) = Σ x(i) z^-i。"""
        return LaurentPoly(self.samples, self.start)

    def sample(self, index: int) -> Fraction:
        offset = index - self.start
        if 0 <= offset < len(self.samples):
            return self.samples[offset]
        return ZERO

    def canonical(self) -> "Signal":
        """去除首尾的零樣本，方便比較。"""
        return Signal.from_laurent(self.to_laurent())

    def shifted(self, k: int) -> "Signal":
        """延遲 k 個樣本。"""
        return Signal(self.samples, self.start + k)

    def scaled(self, c) -> "Signal":
        c = as_rational(c)
        return Signal((s * c for s in self.samples), self.start)

    def to_json(self) -> dict:
        return {"start": self.start, "samples": [render_rational(s) for s in self.samples]}

    @classmethod
    def from_json(cls, data: dict) -> "Signal":
        return cls((as_rational(s) for s in data["samples"]), int(data.get("start", 0)))


# --- 多相位轉換 ---

def polyphase_decompose(fb: FilterBank) -> PolyMatrix2:
    """
    濾波器組 → 多相位矩陣。

    Raises:
        PolyError: 濾波器不是因果的（含 z 的正次方）。
    """
    rows = []
    for h in (fb.h0, fb.h1):
        if not h.is_causal():
            raise PolyError(f"濾波器不是因果的: {h}", bank=fb.name)
        even = [h.coeff(2 * n) for n in range(h.highest_exponent // 2 + 1)]
        odd = [h.coeff(2 * n + 1) for n in range((h.highest_exponent - 1) // 2 + 1)]
        rows.append((Poly(even), Poly(odd)))
    return PolyMatrix2(rows[0][0], rows[0][1], rows[1][0], rows[1][1])


def polyphase_compose(H: PolyMatrix2, name: str = "bank") -> FilterBank:
    """多相位矩陣 → 濾波器組：h_i(z) = H_i0(z²) + z⁻¹·H_i1(z²)。"""
    filters = []
    for even, odd in (H.row(0), H.row(1)):
        size = 2 * max(len(even.coeffs), len(odd.coeffs))
        coeffs = [ZERO] * size
        for n, c in enumerate(even.coeffs):
            coeffs[2 * n] = c
        for n, c in enumerate(odd.coeffs):
            coeffs[2 * n + 1] = c
        filters.append(LaurentPoly(coeffs, 0))
    return FilterBank(name, filters[0], filters[1])


def synthesis_bank(H: PolyMatrix2) -> PolyMatrix2:
    """因果合成矩陣 adj(H)，adj(H)·H = â·z^-d̂·I。"""
    return H.adjugate()


# --- 解多工與多工 ---

def _demux(x: Signal) -> tuple[LaurentPoly, LaurentPoly]:
    """傳回 (X_e, X_d)：x_e(n) = x(2n)、x_d(n) = x(2n−1)。"""
    even: dict[int, Fraction] = {}
    delayed: dict[int, Fraction] = {}
    for offset, value in enumerate(x.samples):
        i = x.start + offset
        if i % 2 == 0:
            even[i // 2] = value
        else:
            delayed[(i + 1) // 2] = value
    return _laurent_from_dict(even), _laurent_from_dict(delayed)


def _mux(u0: LaurentPoly, u1: LaurentPoly) -> Signal:
    """out(2n) = u1(n)、out(2n+1) = u0(n)。"""
    values: dict[int, Fraction] = {}
    for n, c in u1.items():
        values[2 * n] = c
    for n, c in u0.items():
        values[2 * n + 1] = c
    return Signal.from_laurent(_laurent_from_dict(values))


def _laurent_from_dict(values: dict[int, Fraction]) -> LaurentPoly:
    if not values:
        return LaurentPoly()
    low, high = min(values), max(values)
    return LaurentPoly((values.get(e, ZERO) for e in range(low, high + 1)), low)


# --- 套用矩陣與步驟 ---

def _apply_matrix(M: PolyMatrix2, v: tuple[LaurentPoly, LaurentPoly]) -> tuple[LaurentPoly, LaurentPoly]:
    a, b, c, d = (LaurentPoly.from_poly(e) for e in M.entries())
    return a * v[0] + b * v[1], c * v[0] + d * v[1]


def _apply_inverse_step(step, v: tuple[LaurentPoly, LaurentPoly]) -> tuple[LaurentPoly, LaurentPoly]:
    """每個步驟都有封閉形式的反矩陣：提升取負號、增益取倒數、延遲改為超前。"""
    if isinstance(step, UpperLift):
        return v[0] - LaurentPoly.from_poly(step.filter) * v[1], v[1]
    if isinstance(step, LowerLift):
        return v[0], v[1] - LaurentPoly.from_poly(step.filter) * v[0]
    if isinstance(step, DelayDiag):
        if step.channel == 0:
            return v[0].shift(-step.m), v[1]
        return v[0], v[1].shift(-step.m)
    if isinstance(step, GainDiag):
        return v[0] * (ONE / step.k0), v[1] * (ONE / step.k1)
    if isinstance(step, Swap):
        return v[1], v[0]
    raise LiftingError(f"未知的步驟: {step!r}")


def analyze(target: PolyMatrix2 | Factorization, x: Signal) -> tuple[Signal, Signal]:
    """
    分析：解多工後乘上 H。

    傳入 `Factorization` 時走梯形路徑，由最後一個步驟開始逐一套用；
    兩條路徑的輸出逐樣本完全相同。
    """
    v = _demux(x)
    if isinstance(target, Factorization):
        for step in reversed(target.steps):
            v = _apply_matrix(step.matrix(), v)
    else:
        v = _apply_matrix(target, v)
    return Signal.from_laurent(v[0]), Signal.from_laurent(v[1])


def synthesize(target: PolyMatrix2 | Factorization, y0: Signal, y1: Signal) -> Signal:
    """
    合成：矩陣路徑乘上 adj(H)，輸出為 â·x 延遲 2d̂+1；
    梯形路徑依序反轉每個步驟，輸出為 x 延遲 1（只剩解多工與多工的延遲）。
    """
    v = (y0.to_laurent(), y1.to_laurent())
    if isinstance(target, Factorization):
        for step in target.steps:
            v = _apply_inverse_step(step, v)
    else:
        v = _apply_matrix(synthesis_bank(target), v)
    return _mux(v[0], v[1])


# --- 完美重建驗證 ---

@dataclass(frozen=True)
class PrReport:
    gain: Fraction
    delay: int
    path: str
    signals: int
    seed: int

    def to_json(self) -> dict:
        return {
            "gain": render_rational(self.gain),
            "delay": self.delay,
            "path": self.path,
            "signals": self.signals,
            "seed": self.seed,
        }


def _align(x: Signal, out: Signal) -> tuple[Fraction, int]:
    """由第一個非零樣本找出 (增益, 延遲)。"""
    x, out = x.canonical(), out.canonical()
    if not x.samples or not out.samples:
        raise ReconstructionMismatchError("輸入或輸出為零訊號，無法對齊")
    return out.samples[0] / x.samples[0], out.start - x.start


def _check_reconstruction(x: Signal, out: Signal, gain: Fraction, delay: int) -> None:
    expected = x.scaled(gain).shifted(delay).canonical()
    got = out.canonical()
    if expected == got:
        return
    low = min(expected.start, got.start)
    high = max(expected.start + len(expected.samples), got.start + len(got.samples))
    for i in range(low, high):
        if expected.sample(i) != got.sample(i):
            raise ReconstructionMismatchError(
                f"重建訊號在索引 {i} 不一致",
                diff={"index": i, "expected": expected.sample(i), "got": got.sample(i)},
                gain=gain,
                delay=delay,
            )


def pr_verify(
    target: FilterBank | PolyMatrix2 | Factorization,
    trials: int = DEFAULT_TRIALS,
    seed: int = DEFAULT_SEED,
    length: int = SIGNAL_LENGTH,
    extra: Sequence[Signal] = (),
) -> PrReport:
    """
    以脈衝、`trials` 個隨機訊號與 `extra` 中的訊號執行分析→合成，
    確認輸出恰為 gain·x 延遲 delay。

    (gain, delay) 由脈衝的對齊掃描量測，所有訊號都必須符合同一組值。

    Raises:
        NotPerfectReconstructionError: 多相位矩陣不符合完美重建條件。
        ReconstructionMismatchError: 任何一個樣本不一致，`diff` 記錄位置與數值。
    """
    if isinstance(target, FilterBank):
        target = polyphase_decompose(target)
    matrix = target.source if isinstance(target, Factorization) else target
    pr_check(matrix)
    path = "ladder" if isinstance(target, Factorization) else "matrix"

    impulse = Signal.impulse()
    gain, delay = _align(impulse, synthesize(target, *analyze(target, impulse)))
    signals = [impulse] + [Signal.random(seed + k, length) for k in range(trials)] + list(extra)
    for x in signals:
        out = synthesize(target, *analyze(target, x))
        _check_reconstruction(x, out, gain, delay)
    logger.debug("pr_verify(%s): gain=%s, delay=%d over %d signals", path, gain, delay, len(signals))
    return PrReport(gain, delay, path, len(signals), seed)
