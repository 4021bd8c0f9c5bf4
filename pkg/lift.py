#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
提升步驟代數模組 (lift.py)

2×2 多相位矩陣、五種提升步驟、γ 與 ‡ 兩個交織運算子，
以及把任意分解整理成標準因果提升形式的正規化程序。

主要功能：
- `PolyMatrix2`: 以列為主的 2×2 多項式矩陣 [[a, b], [c, d]]。
- `UpperLift` / `LowerLift` / `DelayDiag` / `GainDiag` / `Swap`: 提升步驟的五種變體。
- `Factorization`: 依序相乘等於來源矩陣的步驟序列，附帶來源紀錄。
- `det()` / `pr_check()`: 行列式與完美重建檢查，傳回 (â, d̂)。
- `step_matrix()` / `product()`: 步驟轉矩陣與連乘；序列第一個元素是最左邊的因子。
- `gamma()` / `double_transpose()`: 對角交織運算子 γ 與雙轉置 ‡。
- `lifting_update()`: 由兩個只差一個提升步驟的矩陣解出該步驟。
- `normalize_standard()`: 增益推到最左、交換推到最右、調整提升之間的延遲通道並合併同型步驟。
- `format_factorization()`: 文字輸出。
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from errors import (
    CorpusError,
    EeaError,
    LiftingError,
    NotPerfectReconstructionError,
    RationalError,
    ReconstructionMismatchError,
)
from exactnum import ONE, as_rational, render_rational
from poly import Poly

logger = logging.getLogger(__name__)


# --- 矩陣 ---

@dataclass(frozen=True)
class PolyMatrix2:
    """2×2 多項式矩陣，欄位依列為主的順序 H00、H01、H10、H11。"""

    a: Poly
    b: Poly
    c: Poly
    d: Poly

    @classmethod
    def identity(cls) -> "PolyMatrix2":
        return cls(Poly.one(), Poly.zero(), Poly.zero(), Poly.one())

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "PolyMatrix2":
        """由 [[H00, H01], [H10, H11]] 建構；元素可以是 Poly 或係數列表。"""
        (a, b), (c, d) = rows
        return cls(*(e if isinstance(e, Poly) else Poly(e) for e in (a, b, c, d)))

    @classmethod
    def from_json(cls, data: Sequence[Sequence]) -> "PolyMatrix2":
        (a, b), (c, d) = data
        return cls(*(Poly.from_json(e) for e in (a, b, c, d)))

    def to_json(self) -> list[list[list[str]]]:
        return [[self.a.to_json(), self.b.to_json()], [self.c.to_json(), self.d.to_json()]]

    def entry(self, i: int, j: int) -> Poly:
        return (self.a, self.b, self.c, self.d)[2 * i + j]

    def row(self, i: int) -> tuple[Poly, Poly]:
        return (self.a, self.b) if i == 0 else (self.c, self.d)

    def col(self, j: int) -> tuple[Poly, Poly]:
        return (self.a, self.c) if j == 0 else (self.b, self.d)

    def entries(self) -> tuple[Poly, Poly, Poly, Poly]:
        return self.a, self.b, self.c, self.d

    def with_row(self, i: int, values: tuple[Poly, Poly]) -> "PolyMatrix2":
        if i == 0:
            return PolyMatrix2(values[0], values[1], self.c, self.d)
        return PolyMatrix2(self.a, self.b, values[0], values[1])

    def with_col(self, j: int, values: tuple[Poly, Poly]) -> "PolyMatrix2":
        if j == 0:
            return PolyMatrix2(values[0], self.b, values[1], self.d)
        return PolyMatrix2(self.a, values[0], self.c, values[1])

    def __mul__(self, other: "PolyMatrix2") -> "PolyMatrix2":
        if not isinstance(other, PolyMatrix2):
            return NotImplemented
        return PolyMatrix2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def det(self) -> Poly:
        return self.a * self.d - self.b * self.c

    def adjugate(self) -> "PolyMatrix2":
        """adj(H) = [[d, −b], [−c, a]]，H·adj(H) = det(H)·I。"""
        return PolyMatrix2(self.d, -self.b, -self.c, self.a)

    def has_zero_entry(self) -> bool:
        return any(e.is_zero() for e in self.entries())

    def max_degree(self) -> int:
        return max((e.degree for e in self.entries() if not e.is_zero()), default=0)

    def __str__(self) -> str:
        return f"[[{self.a}, {self.b}], [{self.c}, {self.d}]]"


@dataclass(frozen=True)
class DetMonomial:
    """det H(z) = â·z^(−d̂)。"""

    gain: Fraction
    delay: int

    def __post_init__(self):
        if self.gain == 0:
            raise NotPerfectReconstructionError("行列式增益不可為零")

    def as_poly(self) -> Poly:
        return Poly.monomial(self.gain, self.delay)

    def to_json(self) -> dict:
        return {"gain": render_rational(self.gain), "delay": self.delay}

    @classmethod
    def from_json(cls, data: dict) -> "DetMonomial":
        return cls(as_rational(data["gain"]), int(data["delay"]))


def det(H: PolyMatrix2) -> Poly:
    return H.det()


def pr_check(H: PolyMatrix2) -> DetMonomial:
    """
    檢查 H 是否為具 FIR 反矩陣的完美重建多相位矩陣。

    Raises:
        NotPerfectReconstructionError: 行列式為零或不是單項式。
    """
    determinant = H.det()
    if not determinant.is_monomial():
        raise NotPerfectReconstructionError(
            f"行列式不是非零單項式: {determinant}", det=determinant
        )
    gain, delay = determinant.as_monomial()
    return DetMonomial(gain, delay)


# --- 提升步驟 ---

@dataclass(frozen=True)
class UpperLift:
    """υ(S) = [[1, S], [0, 1]]。"""

    filter: Poly
    kind = "upper"

    def matrix(self) -> PolyMatrix2:
        return PolyMatrix2(Poly.one(), self.filter, Poly.zero(), Poly.one())

    def payload(self) -> dict:
        return {"filter": self.filter.to_json()}

    def __str__(self) -> str:
        return f"[1, {self.filter}; 0, 1]"


@dataclass(frozen=True)
class LowerLift:
    """λ(S) = [[1, 0], [S, 1]]。"""

    filter: Poly
    kind = "lower"

    def matrix(self) -> PolyMatrix2:
        return PolyMatrix2(Poly.one(), Poly.zero(), self.filter, Poly.one())

    def payload(self) -> dict:
        return {"filter": self.filter.to_json()}

    def __str__(self) -> str:
        return f"[1, 0; {self.filter}, 1]"


@dataclass(frozen=True)
class DelayDiag:
    """channel 0 為 diag(z^-m, 1)，channel 1 為 diag(1, z^-m)，m ≥ 1。"""

    m: int
    channel: int
    kind = "delay"

    def __post_init__(self):
        if self.m < 1:
            raise LiftingError(f"延遲次方必須 ≥ 1: {self.m}")
        if self.channel not in (0, 1):
            raise LiftingError(f"通道必須是 0 或 1: {self.channel}")

    def matrix(self) -> PolyMatrix2:
        delay = Poly.monomial(ONE, self.m)
        if self.channel == 0:
            return PolyMatrix2(delay, Poly.zero(), Poly.zero(), Poly.one())
        return PolyMatrix2(Poly.one(), Poly.zero(), Poly.zero(), delay)

    def payload(self) -> dict:
        return {"m": self.m, "channel": self.channel}

    def __str__(self) -> str:
        term = f"z^-{self.m}"
        return f"diag({term}, 1)" if self.channel == 0 else f"diag(1, {term})"


@dataclass(frozen=True)
class GainDiag:
    """diag(k0, k1)，兩個增益都不可為零。"""

    k0: Fraction
    k1: Fraction
    kind = "gain"

    def __post_init__(self):
        object.__setattr__(self, "k0", as_rational(self.k0))
        object.__setattr__(self, "k1", as_rational(self.k1))
        if self.k0 == 0 or self.k1 == 0:
            raise RationalError(f"增益不可為零: ({self.k0}, {self.k1})")

    def is_identity(self) -> bool:
        return self.k0 == 1 and self.k1 == 1

    def matrix(self) -> PolyMatrix2:
        return PolyMatrix2(Poly.constant(self.k0), Poly.zero(), Poly.zero(), Poly.constant(self.k1))

    def payload(self) -> dict:
        return {"k0": render_rational(self.k0), "k1": render_rational(self.k1)}

    def __str__(self) -> str:
        return f"diag({render_rational(self.k0)}, {render_rational(self.k1)})"


@dataclass(frozen=True)
class Swap:
    """J = [[0, 1], [1, 0]]。"""

    kind = "swap"

    def matrix(self) -> PolyMatrix2:
        return PolyMatrix2(Poly.zero(), Poly.one(), Poly.one(), Poly.zero())

    def payload(self) -> dict:
        return {}

    def __str__(self) -> str:
        return "J"


LiftingStep = UpperLift | LowerLift | DelayDiag | GainDiag | Swap

_STEP_KINDS = {
    "upper": lambda p: UpperLift(Poly.from_json(p["filter"])),
    "lower": lambda p: LowerLift(Poly.from_json(p["filter"])),
    "delay": lambda p: DelayDiag(int(p["m"]), int(p["channel"])),
    "gain": lambda p: GainDiag(as_rational(p["k0"]), as_rational(p["k1"])),
    "swap": lambda p: Swap(),
}


def step_to_json(step: LiftingStep) -> dict:
    return {"kind": step.kind, "payload": step.payload()}


def step_from_json(data: dict) -> LiftingStep:
    kind = data.get("kind")
    if kind not in _STEP_KINDS:
        raise CorpusError(f"未知的步驟種類: {kind!r}")
    return _STEP_KINDS[kind](data.get("payload", {}))


def step_matrix(step: LiftingStep) -> PolyMatrix2:
    return step.matrix()


def product(steps: Iterable[LiftingStep]) -> PolyMatrix2:
    """依序相乘；第一個步驟是最左邊的因子。"""
    result = PolyMatrix2.identity()
    for step in steps:
        result = result * step.matrix()
    return result


def is_lift(step: LiftingStep) -> bool:
    return isinstance(step, (UpperLift, LowerLift))


# --- γ 與 ‡ ---

def gamma(k0, k1, A: PolyMatrix2) -> PolyMatrix2:
    """
    γ_{k0,k1}(A) = diag(k0, k1)·A·diag(k0, k1)⁻¹。

    Raises:
        RationalError: 增益為零。
    """
    k0, k1 = as_rational(k0), as_rational(k1)
    if k0 == 0 or k1 == 0:
        raise RationalError(f"增益不可為零: ({k0}, {k1})")
    return PolyMatrix2(A.a, A.b.scale(k0 / k1), A.c.scale(k1 / k0), A.d)


def double_transpose(A: PolyMatrix2) -> PolyMatrix2:
    """A‡ = J·A·J：a↔d、b↔c。"""
    return PolyMatrix2(A.d, A.c, A.b, A.a)


def gain_pushed_left(step: LiftingStep, gain: GainDiag) -> LiftingStep:
    """
    X·D = D·X′ 中的 X′，D = diag(k0, k1)。

    提升步驟依 γ⁻¹ 縮放；對角步驟與 D 交換；Swap 不適用（由呼叫端處理）。
    """
    if isinstance(step, UpperLift):
        return UpperLift(step.filter.scale(gain.k1 / gain.k0))
    if isinstance(step, LowerLift):
        return LowerLift(step.filter.scale(gain.k0 / gain.k1))
    if isinstance(step, Swap):
        raise TypeError("Swap 需要交換增益的順序，不能直接通過")
    return step


def swap_conjugate(step: LiftingStep) -> LiftingStep:
    """J·X = X‡·J 中的 X‡。"""
    if isinstance(step, UpperLift):
        return LowerLift(step.filter)
    if isinstance(step, LowerLift):
        return UpperLift(step.filter)
    if isinstance(step, DelayDiag):
        return DelayDiag(step.m, 1 - step.channel)
    if isinstance(step, GainDiag):
        return GainDiag(step.k1, step.k0)
    return step


# --- 提升更新 ---

def _solve_multiple(diff: tuple[Poly, Poly], pivot: tuple[Poly, Poly]) -> Poly | None:
    """找出多項式 S 使 diff = S·pivot，不存在時傳回 None。"""
    if diff[0].is_zero() and diff[1].is_zero():
        return Poly.zero()
    base = 0 if not pivot[0].is_zero() else 1
    if pivot[base].is_zero() or not pivot[base].divides(diff[base]):
        return None
    S = diff[base].exact_div(pivot[base])
    if S * pivot[0] != diff[0] or S * pivot[1] != diff[1]:
        return None
    return S


def lifting_update(H_prime: PolyMatrix2, H: PolyMatrix2) -> tuple[LiftingStep, str]:
    """
    解出唯一的提升步驟 L 使 H = L·H′（side = "left"）或 H = H′·L（side = "right"）。

    兩個矩陣的行列式必須相同，而且要在某一列或某一欄完全一致。

    Returns:
        tuple[LiftingStep, str]: (L, side)。

    Raises:
        EeaError: 行列式不同，或不存在因果的提升步驟。
    """
    if H_prime.det() != H.det():
        raise EeaError("兩個矩陣的行列式不同，無法以提升步驟連接", det=H.det(), det_prime=H_prime.det())

    # (步驟類別, 側, 差量, 樞紐向量, 不變的列或欄是否一致)
    candidates = [
        (UpperLift, "left", (H.a - H_prime.a, H.b - H_prime.b), H_prime.row(1), H.row(1) == H_prime.row(1)),
        (LowerLift, "left", (H.c - H_prime.c, H.d - H_prime.d), H_prime.row(0), H.row(0) == H_prime.row(0)),
        (UpperLift, "right", (H.b - H_prime.b, H.d - H_prime.d), H_prime.col(0), H.col(0) == H_prime.col(0)),
        (LowerLift, "right", (H.a - H_prime.a, H.c - H_prime.c), H_prime.col(1), H.col(1) == H_prime.col(1)),
    ]
    for step_cls, side, diff, pivot, fixed_part_equal in candidates:
        if not fixed_part_equal:
            continue
        S = _solve_multiple(diff, pivot)
        if S is not None:
            logger.debug("lifting_update: %s(%s) on the %s", step_cls.__name__, S, side)
            return step_cls(S), side
    raise EeaError("找不到因果的提升步驟連接兩個矩陣", H=H, H_prime=H_prime)


# --- 分解 ---

@dataclass(frozen=True)
class Factorization:
    """
    提升分解：`steps` 依序相乘必須等於 `source`。

    `trace` 是每個步驟的人類可讀來源紀錄；`meta` 記錄引擎、策略等資訊。
    """

    steps: tuple
    source: PolyMatrix2
    trace: tuple[str, ...] = field(default=(), compare=False)
    meta: dict = field(default_factory=dict, compare=False)

    def product(self) -> PolyMatrix2:
        return product(self.steps)

    def verify(self) -> None:
        """
        重新相乘並與來源比較。

        Raises:
            ReconstructionMismatchError: 第一個不一致的元素記錄在 `diff`。
        """
        rebuilt = self.product()
        for i in range(2):
            for j in range(2):
                expected, got = self.source.entry(i, j), rebuilt.entry(i, j)
                if expected != got:
                    raise ReconstructionMismatchError(
                        f"分解重建後 H{i}{j} 不一致",
                        diff={"entry": f"H{i}{j}", "expected": expected, "got": got},
                    )

    def is_valid(self) -> bool:
        return self.product() == self.source

    def lifts(self) -> list:
        return [s for s in self.steps if is_lift(s)]

    def summary(self) -> dict:
        """步驟數、濾波器最大次數、總延遲與最大係數等可供比較的指標。"""
        lifts = self.lifts()
        coefficients = [c for s in lifts for c in s.filter.coeffs if c != 0]
        for s in self.steps:
            if isinstance(s, GainDiag):
                coefficients.extend([s.k0, s.k1])
        return {
            "lifting_steps": len(lifts),
            "max_filter_degree": max((s.filter.degree for s in lifts if not s.filter.is_zero()), default=0),
            "total_delay": sum(s.m for s in self.steps if isinstance(s, DelayDiag)),
            "swaps": sum(1 for s in self.steps if isinstance(s, Swap)),
            "max_numerator": max((abs(c.numerator) for c in coefficients), default=0),
            "max_denominator": max((c.denominator for c in coefficients), default=1),
        }

    def with_steps(self, steps: Sequence, trace: Sequence[str] | None = None, **meta) -> "Factorization":
        return Factorization(
            tuple(steps),
            self.source,
            tuple(trace) if trace is not None else self.trace,
            {**self.meta, **meta},
        )

    def to_json(self) -> dict:
        return {
            "schema": "liftcausal/factorization",
            "version": 1,
            "source": self.source.to_json(),
            "steps": [step_to_json(s) for s in self.steps],
            "trace": list(self.trace),
            "meta": dict(self.meta),
        }

    @classmethod
    def from_json(cls, data: dict) -> "Factorization":
        """
        Raises:
            CorpusError: 缺少 `steps` 或 `source`，或內容格式錯誤。
        """
        try:
            return cls(
                tuple(step_from_json(s) for s in data["steps"]),
                PolyMatrix2.from_json(data["source"]),
                tuple(data.get("trace", ())),
                dict(data.get("meta", {})),
            )
        except CorpusError:
            raise
        except (LiftingError, KeyError, TypeError, ValueError) as e:
            raise CorpusError(f"分解檔格式錯誤: {e!r}") from e


# --- 標準形式 ---

def _push_gains_left(steps: Sequence[LiftingStep]) -> list[LiftingStep]:
    """由右往左掃描，把所有增益合併並移到最左。"""
    k0, k1 = ONE, ONE
    out_reversed: list[LiftingStep] = []
    for step in reversed(steps):
        if isinstance(step, GainDiag):
            k0, k1 = k0 * step.k0, k1 * step.k1
        elif isinstance(step, Swap):
            # J·diag(k0, k1) = diag(k1, k0)·J
            out_reversed.append(step)
            k0, k1 = k1, k0
        else:
            out_reversed.append(gain_pushed_left(step, GainDiag(k0, k1)))
    result = list(reversed(out_reversed))
    if not (k0 == 1 and k1 == 1):
        result.insert(0, GainDiag(k0, k1))
    return result


def _push_swaps_right(steps: Sequence[LiftingStep]) -> list[LiftingStep]:
    """由左往右掃描，J·X = X‡·J，兩個 J 互相抵銷。"""
    parity = False
    result: list[LiftingStep] = []
    for step in steps:
        if isinstance(step, Swap):
            parity = not parity
        else:
            result.append(swap_conjugate(step) if parity else step)
    if parity:
        result.append(Swap())
    return result


def _emit_delays(totals: list[int]) -> list[DelayDiag]:
    return [DelayDiag(m, ch) for ch, m in enumerate(totals) if m > 0]


def _merge_adjacent(steps: Sequence[LiftingStep]) -> list[LiftingStep]:
    """合併相鄰的同型提升步驟與延遲，並去掉零提升。"""
    stack: list[LiftingStep] = []
    for step in steps:
        if is_lift(step):
            if step.filter.is_zero():
                continue
            if stack and type(stack[-1]) is type(step):
                merged = stack.pop().filter + step.filter
                if merged.is_zero():
                    continue
                step = type(step)(merged)
            stack.append(step)
        elif isinstance(step, DelayDiag):
            totals = [0, 0]
            while stack and isinstance(stack[-1], DelayDiag):
                previous = stack.pop()
                totals[previous.channel] += previous.m
            totals[step.channel] += step.m
            stack.extend(_emit_delays(totals))
        else:
            stack.append(step)
    return stack


def _matching_channel(lift: LiftingStep) -> int:
    """Λ 緊接在提升右邊時的通道：上三角配通道 0，下三角配通道 1。"""
    return 0 if isinstance(lift, UpperLift) else 1


def _align_delays(steps: Sequence[LiftingStep]) -> list[LiftingStep]:
    """
    把與左側提升不相配的延遲移到該提升的左邊：

    υ(S)·diag(1, z^-m) = diag(1, z^-m)·υ(z^-m·S)，λ(S)·diag(z^-m, 1) = diag(z^-m, 1)·λ(z^-m·S)。

    相配的延遲後面若是同型提升，延遲改往右移再合併：
    diag(z^-m, 1)·υ(T) = υ(z^-m·T)·diag(z^-m, 1)（λ 與通道 1 同理）。
    """
    result = list(steps)
    i = 0
    while i < len(result):
        step = result[i]
        if is_lift(step):
            j = i + 1
            while j < len(result) and isinstance(result[j], DelayDiag):
                j += 1
            group = result[i + 1:j]
            wrong = [s for s in group if s.channel != _matching_channel(step)]
            if wrong:
                m = sum(s.m for s in wrong)
                kept = [s for s in group if s.channel == _matching_channel(step)]
                result[i:j] = [DelayDiag(m, wrong[0].channel), type(step)(step.filter.shift(m)), *kept]
                i += 1
            elif j < len(result) and type(result[j]) is type(step):
                m = sum(s.m for s in group)
                result[i:j + 1] = [type(step)(step.filter + result[j].filter.shift(m)), *group]
                continue
        i += 1
    return result


def _split_trailing(body: list[LiftingStep]) -> tuple[list[LiftingStep], list[LiftingStep]]:
    last_lift = max((i for i, s in enumerate(body) if is_lift(s)), default=-1)
    if last_lift < 0:
        return body, []
    return body[:last_lift + 1], body[last_lift + 1:]


def normalize_standard(fact: Factorization) -> Factorization:
    """
    整理成標準因果提升形式：

    diag(k0, k1)·[ρ 延遲]·U_{N−1}·Λ_{N−1}·…·U_0·[J]·[c 延遲]

    增益經 γ 推到最左，J 經 ‡ 推到最右，相鄰的同型提升與同通道延遲合併，
    提升之間的延遲通道與左側提升一致（上三角配通道 0），
    被相配延遲隔開的同型提升把延遲往右移後合併，因此提升上下交替，
    最後一個提升之後的延遲移到 J 之後（通道互換）。乘積保持不變。
    """
    steps = _push_gains_left(fact.steps)
    steps = _push_swaps_right(steps)

    gain = steps[0] if steps and isinstance(steps[0], GainDiag) else None
    swap = bool(steps) and isinstance(steps[-1], Swap)
    body = steps[(1 if gain else 0):(len(steps) - 1 if swap else len(steps))]
    # 延遲移動後可能出現新的相鄰同型提升，重複到不再變動
    while True:
        body, trailing = _split_trailing(_merge_adjacent(body))
        aligned = _align_delays(body)
        if aligned == body:
            break
        body = aligned + trailing

    # 最後一個提升之後的延遲成為尾端的 c 項
    totals = [0, 0]
    for step in trailing:
        channel = 1 - step.channel if swap else step.channel
        totals[channel] += step.m

    result: list[LiftingStep] = []
    if gain is not None:
        result.append(gain)
    result.extend(body)
    if swap:
        result.append(Swap())
    result.extend(_emit_delays(totals))

    normalized = fact.with_steps(result, form="standard")
    if not normalized.is_valid():
        raise ReconstructionMismatchError("正規化後乘積改變", steps=len(result))
    logger.debug("normalize_standard: %d -> %d steps", len(fact.steps), len(result))
    return normalized


def format_factorization(fact: Factorization, multiline: bool = False) -> str:
    """
    以方括號矩陣的寫法輸出分解，例如
    `H(z) = diag(-1, -1) · [1, (-7 + 1z^-1)/4; 0, 1] · ...`。
    """
    if not fact.steps:
        return "H(z) = I"
    if multiline:
        lines = ["H(z) ="]
        lines.extend(f"  {i:>2}. {step}" for i, step in enumerate(fact.steps))
        return "\n".join(lines)
    return "H(z) = " + " · ".join(str(step) for step in fact.steps)
