#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
分解引擎模組 (factor.py)

把因果 FIR 完美重建多相位矩陣分解成因果提升步驟。

主要功能：
- `cca_step()`: 因果補數演算法 (CCA) 的單一步驟：在指定的列或欄做（推廣）除法，
  產生一個提升步驟，再提出餘式對共同的 z⁻¹ 次方作為延遲矩陣。
- `cca_terminate()`: 把含有零元素的終止矩陣拆成增益、延遲、最多一個提升與最多一個交換。
- `factor_cca()`: 依策略字串（例如 "C1@M=1,C1"）執行完整的 CCA。
- `factor_eea()`: 因果擴展歐幾里得演算法 (EEA) 路徑，最後以提升更新補上一步。
- `enumerate_factorizations()`: 深度優先列舉所有相異的降次提升分解。

步驟方向：
- 欄位 (C0/C1) 的除法是列運算，產生左因子：Q = L·Δ·Q_next。
- 列位 (R0/R1) 的除法是欄運算，產生右因子：Q = Q_next·Δ·L。
"""

import logging
import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator

from config import DEFAULT_MAX_DEPTH, DEFAULT_MAX_LEAVES, VERIFY_DIVISIONS
from errors import (
    CcaStepError,
    EeaError,
    LiftingError,
    NotTerminalError,
    StrategyError,
)
from lift import (
    DelayDiag,
    Factorization,
    GainDiag,
    LowerLift,
    PolyMatrix2,
    Swap,
    UpperLift,
    lifting_update,
    normalize_standard,
    pr_check,
    product,
    step_from_json,
    step_to_json,
)
from poly import Poly, divide, gcd, monomial_multiplicity, sgda

logger = logging.getLogger(__name__)


# --- 策略 ---

class Site(str, Enum):
    """除法位置：R 為列、C 為欄，數字為索引。"""

    R0 = "R0"
    R1 = "R1"
    C0 = "C0"
    C1 = "C1"

    @property
    def is_row(self) -> bool:
        return self.value[0] == "R"

    @property
    def index(self) -> int:
        return int(self.value[1])


# 列舉時子節點的固定順序
SITE_ORDER = (Site.R0, Site.R1, Site.C0, Site.C1)

_TOKEN_RE = re.compile(r"^(R0|R1|C0|C1)(?:@M=(\d+))?(\*)?$")


@dataclass(frozen=True)
class StepDirective:
    site: Site
    multiplicity: int = 0
    repeat: bool = False

    @classmethod
    def parse(cls, token: str) -> "StepDirective":
        match = _TOKEN_RE.match(token.strip().upper())
        if match is None:
            raise StrategyError(f"無法解析的策略片段: {token!r}", token=token)
        return cls(Site(match.group(1)), int(match.group(2) or 0), match.group(3) is not None)

    def __str__(self) -> str:
        text = self.site.value
        if self.multiplicity:
            text += f"@M={self.multiplicity}"
        if self.repeat:
            text += "*"
        return text


@dataclass(frozen=True)
class Strategy:
    """逗號分隔的指令序列；只有最後一個指令可以加上 `*`（重複到終止為止）。"""

    directives: tuple[StepDirective, ...]

    @classmethod
    def parse(cls, text: str) -> "Strategy":
        tokens = [t for t in (part.strip() for part in text.split(",")) if t]
        if not tokens:
            raise StrategyError("策略字串是空的")
        directives = tuple(StepDirective.parse(t) for t in tokens)
        if any(d.repeat for d in directives[:-1]):
            raise StrategyError(f"只有最後一個指令可以使用 '*': {text!r}")
        return cls(directives)

    @classmethod
    def repeated(cls, site: Site | str) -> "Strategy":
        """在同一位置一直除到終止，對應 EEA 的餘式序列。"""
        return cls((StepDirective(Site(site), 0, True),))

    def iter_directives(self) -> Iterator[StepDirective]:
        for directive in self.directives:
            yield directive
        if self.directives and self.directives[-1].repeat:
            last = self.directives[-1]
            while True:
                yield last

    def __str__(self) -> str:
        return ",".join(str(d) for d in self.directives)


def _as_strategy(strat: "Strategy | str") -> Strategy:
    return strat if isinstance(strat, Strategy) else Strategy.parse(strat)


# --- CCA 單一步驟 ---

@dataclass(frozen=True)
class PivotState:
    """最近一次被更新的列與欄，用於次數相同時決定樞紐。"""

    last_row: int | None = None
    last_col: int | None = None


@dataclass(frozen=True)
class CcaStepResult:
    directive: StepDirective
    side: str
    steps: tuple
    next_matrix: PolyMatrix2
    quotient: Poly
    remainders: tuple[Poly, Poly]
    dividend: int
    pivot: int
    delay: int
    pivot_delay: int = 0

    def describe(self) -> str:
        line = "列" if self.side == "left" else "欄"
        text = (
            f"{self.directive}: 以{line} {self.pivot} 除{line} {self.dividend}，"
            f"S = {self.quotient}"
        )
        if self.pivot_delay:
            text += f"，樞紐先提出 z^-{self.pivot_delay}（通道 {self.pivot}）"
        if self.delay:
            text += f"，提出 z^-{self.delay}（通道 {self.dividend}）"
        return text


def _next_state(previous: PivotState, result: CcaStepResult) -> PivotState:
    if result.side == "left":
        return PivotState(result.dividend, previous.last_col)
    return PivotState(previous.last_row, result.dividend)


def _choose_dividend(e0: Poly, e1: Poly, last: int | None) -> tuple[int, int]:
    """傳回 (被除數索引, 樞紐索引)。次數較大者為被除數；相同時樞紐是最近更新的那一個，起始時為 1。"""
    if e0.degree > e1.degree:
        return 0, 1
    if e1.degree > e0.degree:
        return 1, 0
    pivot = last if last is not None else 1
    return 1 - pivot, pivot


def cca_step(
    Q: PolyMatrix2,
    d: StepDirective,
    state: PivotState | None = None,
    verify: bool | None = None,
) -> CcaStepResult:
    """
    CCA 的單一步驟。

    Args:
        Q (PolyMatrix2): 目前的商矩陣，行列式必須是單項式。
        d (StepDirective): 除法位置與 SGDA 重數 M。
        state (PivotState | None): 樞紐狀態，None 表示在根節點。
        verify (bool | None): 是否檢查降次界限與乘積；None 時使用 `VERIFY_DIVISIONS`。

    Returns:
        CcaStepResult: `steps` 為這一步產生的提升與延遲步驟，`next_matrix` 為 Q_next。

    Raises:
        CcaStepError: 樞紐為零、M 超過剩餘延遲，或餘式無法被 z^-M 整除。
        SgdaPreconditionError: M > 0 但樞紐常數項為零。
        NotPerfectReconstructionError: 行列式不是單項式。
    """
    state = state or PivotState()
    verify = VERIFY_DIVISIONS if verify is None else verify
    pr_check(Q)
    original = Q
    M = d.multiplicity

    j = d.site.index
    if d.site.is_row:
        dividend, pivot = _choose_dividend(Q.entry(j, 0), Q.entry(j, 1), state.last_col)
    else:
        dividend, pivot = _choose_dividend(Q.entry(0, j), Q.entry(1, j), state.last_row)

    # 樞紐列（欄）的公因式 z^-k 先提出成延遲，之後的除法才會是降次的
    pivot_line = Q.col(pivot) if d.site.is_row else Q.row(pivot)
    if pivot_line[j].is_zero():
        raise CcaStepError(f"{d.site.value} 的樞紐為零", directive=str(d), matrix=Q)
    k = min(monomial_multiplicity(x) for x in pivot_line if not x.is_zero())
    pivot_delay = (DelayDiag(k, pivot),) if k else ()
    if k:
        pivot_line = (pivot_line[0].unshift(k), pivot_line[1].unshift(k))
        Q = Q.with_col(pivot, pivot_line) if d.site.is_row else Q.with_row(pivot, pivot_line)

    residual = pr_check(Q)
    if M > residual.delay:
        raise CcaStepError(
            f"M = {M} 超過剩餘的行列式延遲 {residual.delay}", directive=str(d)
        )

    if d.site.is_row:
        e0, e1 = Q.entry(j, 0), Q.entry(j, 1)
    else:
        e0, e1 = Q.entry(0, j), Q.entry(1, j)
    e, f = (e0, e1) if dividend == 0 else (e1, e0)

    q, r = sgda(e, f, M)

    # 另一個位置的餘式
    o = 1 - j
    if d.site.is_row:
        r_other = Q.entry(o, dividend) - Q.entry(o, pivot) * q
        new_line = (r, r_other) if j == 0 else (r_other, r)
    else:
        r_other = Q.entry(dividend, o) - q * Q.entry(pivot, o)
        new_line = (r, r_other) if j == 0 else (r_other, r)

    if M > 0 and any(any(c != 0 for c in x.coeffs[:M]) for x in new_line):
        raise CcaStepError(
            f"餘式對無法被 z^-{M} 整除", directive=str(d), remainders=new_line
        )

    if verify:
        check_degree_reducing(r, pivot_line, j, M, directive=str(d))

    g = min(monomial_multiplicity(x) for x in new_line if not x.is_zero())
    if g:
        new_line = (new_line[0].unshift(g), new_line[1].unshift(g))

    if d.site.is_row:
        next_matrix = Q.with_col(dividend, new_line)
        lift = LowerLift(q) if dividend == 0 else UpperLift(q)
        steps = ((DelayDiag(g, dividend),) if g else ()) + (lift,) + pivot_delay
        side = "right"
    else:
        next_matrix = Q.with_row(dividend, new_line)
        lift = UpperLift(q) if dividend == 0 else LowerLift(q)
        steps = pivot_delay + (lift,) + ((DelayDiag(g, dividend),) if g else ())
        side = "left"

    result = CcaStepResult(d, side, steps, next_matrix, q, new_line, dividend, pivot, g, k)
    if verify:
        rebuilt = product(steps) * next_matrix if side == "left" else next_matrix * product(steps)
        if rebuilt != original:
            raise CcaStepError("單一步驟的乘積與商矩陣不一致", directive=str(d))
    logger.debug("cca_step %s", result.describe())
    return result


def check_degree_reducing(r: Poly, pivot_line: tuple[Poly, Poly], index: int, M: int, **details) -> None:
    """
    降次條件 deg(R) < deg(F) − deg gcd(F0, F1) + M，F 為樞紐列（欄），index 為除法位置。

    Raises:
        CcaStepError: 餘式不滿足降次條件。
    """
    f = pivot_line[index]
    bound = f.degree - gcd(*pivot_line).degree + M
    if not r.degree < bound:
        raise CcaStepError(
            f"除法不是降次的: deg(R) = {r.degree}, deg(F) - deg gcd + M = {bound}",
            bound=bound,
            **details,
        )


# --- 終止 ---

def _monomial(entry: Poly) -> tuple:
    if not entry.is_monomial():
        raise NotTerminalError(f"終止矩陣的對角元素不是單項式: {entry}")
    return entry.as_monomial()


def _delay(m: int, channel: int) -> list:
    return [DelayDiag(m, channel)] if m else []


def _gain(k0, k1) -> list:
    gain = GainDiag(k0, k1)
    return [] if gain.is_identity() else [gain]


def _lift(cls, S: Poly) -> list:
    return [] if S.is_zero() else [cls(S)]


def cca_terminate(Q: PolyMatrix2) -> list:
    """
    把含零元素的終止矩陣拆成步驟序列，乘積等於 Q。

    對角或反對角的非零元素必定是單項式（行列式是單項式）。
    單位增益、零提升與零延遲都會省略，因此單位矩陣傳回空序列。

    Raises:
        NotTerminalError: Q 沒有任何零元素。
    """
    if not Q.has_zero_entry():
        raise NotTerminalError(f"矩陣尚未終止: {Q}", matrix=Q)
    pr_check(Q)
    a, b, c, d = Q.entries()

    if b.is_zero() and c.is_zero():
        (alpha, p), (delta, q) = _monomial(a), _monomial(d)
        return _gain(alpha, delta) + _delay(p, 0) + _delay(q, 1)
    if a.is_zero() and d.is_zero():
        (beta, p), (gamma_, q) = _monomial(b), _monomial(c)
        return _gain(beta, gamma_) + _delay(p, 0) + [Swap()] + _delay(q, 0)
    if c.is_zero():
        (alpha, p), (delta, q) = _monomial(a), _monomial(d)
        return _delay(q, 1) + _gain(alpha, delta) + _lift(UpperLift, b.scale(1 / alpha)) + _delay(p, 0)
    if b.is_zero():
        (alpha, p), (delta, q) = _monomial(a), _monomial(d)
        return _delay(p, 0) + _gain(alpha, delta) + _lift(LowerLift, c.scale(1 / delta)) + _delay(q, 1)
    if d.is_zero():
        (beta, p), (gamma_, q) = _monomial(b), _monomial(c)
        return _gain(beta, gamma_) + _delay(q, 1) + _lift(UpperLift, a.scale(1 / beta)) + [Swap()] + _delay(p, 1)
    # a = 0
    (beta, p), (gamma_, q) = _monomial(b), _monomial(c)
    return _gain(beta, gamma_) + _delay(p, 0) + _lift(LowerLift, d.scale(1 / gamma_)) + [Swap()] + _delay(q, 0)


# --- 完整 CCA ---

def factor_cca(
    H: PolyMatrix2,
    strat: Strategy | str,
    verify: bool | None = None,
) -> Factorization:
    """
    依策略執行因果補數演算法，傳回原始（未正規化）的分解。

    Raises:
        StrategyError: 指令用完時矩陣尚未終止，或矩陣已終止仍有多餘指令。
        NotPerfectReconstructionError: H 的行列式不是單項式。
        CcaStepError: 由 `cca_step` 傳出。
    """
    strategy = _as_strategy(strat)
    pr_check(H)

    left: list = []
    right: list = []
    trace: list[str] = []
    state = PivotState()
    Q = H
    directives = strategy.iter_directives()
    used = 0

    while not Q.has_zero_entry():
        directive = next(directives, None)
        if directive is None:
            raise StrategyError(
                f"策略 {strategy} 用完時矩陣尚未終止", strategy=str(strategy), matrix=Q
            )
        result = cca_step(Q, directive, state, verify)
        used += 1
        if result.side == "left":
            left.extend(result.steps)
        else:
            right[:0] = result.steps
        trace.append(result.describe())
        state = _next_state(state, result)
        Q = result.next_matrix

    if used < len(strategy.directives) and not strategy.directives[used].repeat:
        raise StrategyError(
            f"矩陣已終止，但策略 {strategy} 還剩下 {len(strategy.directives) - used} 個指令",
            strategy=str(strategy),
        )

    terminal = cca_terminate(Q)
    trace.append(f"終止: {Q}")
    fact = Factorization(
        tuple(left + terminal + right),
        H,
        tuple(trace),
        {"engine": "cca", "strategy": str(strategy), "form": "raw"},
    )
    if VERIFY_DIVISIONS if verify is None else verify:
        fact.verify()
    return fact


# --- 因果 EEA ---

def factor_eea(H: PolyMatrix2, site: Site | str) -> Factorization:
    """
    在指定位置的兩個元素上執行歐幾里得餘式序列，
    把每個 M_i = [[q_i, 1], [1, 0]] 寫成 υ(q_i)·J，
    以分配好行列式的矩陣 A 補齊，最後由提升更新解出收尾的提升步驟。
    結果以標準形式傳回。

    Raises:
        EeaError: 位置上有零元素、最後的非零餘式不是單項式，或收尾步驟不是因果的。
    """
    site = Site(site)
    det_h = pr_check(H).as_poly()
    j = site.index
    r0, r1 = (H.row(j) if site.is_row else H.col(j))
    if r0.is_zero() or r1.is_zero():
        raise EeaError(f"{site.value} 含有零元素", site=site.value)

    remainders = [r0, r1]
    quotients: list[Poly] = []
    while not remainders[-1].is_zero():
        q, r = divide(remainders[-2], remainders[-1])
        quotients.append(q)
        remainders.append(r)
    r_n = remainders[-2]
    if not r_n.is_monomial():
        raise EeaError(f"最後的非零餘式不是單項式: {r_n}", site=site.value)
    n = len(quotients)
    sign = 1 if n % 2 == 0 else -1
    co = det_h.scale(sign).exact_div(r_n)

    zero = Poly.zero()
    if site in (Site.C0, Site.R0):
        A = PolyMatrix2(r_n, zero, zero, co)
    elif site is Site.C1:
        A = PolyMatrix2(zero, r_n, -co, zero)
    else:
        A = PolyMatrix2(zero, -co, r_n, zero)

    m_steps: list = []
    if site.is_row:
        for q in reversed(quotients):
            m_steps.extend([UpperLift(q), Swap()])
    else:
        for q in quotients:
            m_steps.extend([UpperLift(q), Swap()])

    body = (m_steps + cca_terminate(A)) if not site.is_row else (cca_terminate(A) + m_steps)
    H_prime = Factorization(tuple(body), H).product()
    closing, side = lifting_update(H_prime, H)
    steps = body + [closing] if side == "right" else [closing] + body

    trace = [f"EEA {site.value}: q_{i} = {q}" for i, q in enumerate(quotients)]
    trace.append(f"r_{n} = {r_n}, A = {A}")
    trace.append(f"收尾提升（{'右' if side == 'right' else '左'}）: {closing}")
    fact = Factorization(
        tuple(steps), H, tuple(trace), {"engine": "eea", "site": site.value}
    )
    fact.verify()
    return normalize_standard(fact)


# --- 列舉 ---

@dataclass
class TreeNode:
    """列舉樹的節點。根節點沒有 directive；葉節點帶有完整的分解。"""

    matrix: PolyMatrix2
    depth: int = 0
    directive: str | None = None
    aliases: list[str] = field(default_factory=list)
    side: str | None = None
    steps: tuple = ()
    children: list["TreeNode"] = field(default_factory=list)
    factorization: Factorization | None = None
    truncated: bool = False

    @property
    def is_leaf(self) -> bool:
        return self.factorization is not None

    def to_json(self) -> dict:
        return {
            "directive": self.directive,
            "aliases": list(self.aliases),
            "side": self.side,
            "steps": [step_to_json(s) for s in self.steps],
            "matrix": self.matrix.to_json(),
            "depth": self.depth,
            "truncated": self.truncated,
            "factorization": self.factorization.to_json() if self.factorization else None,
            "children": [child.to_json() for child in self.children],
        }

    @classmethod
    def from_json(cls, data: dict) -> "TreeNode":
        return cls(
            matrix=PolyMatrix2.from_json(data["matrix"]),
            depth=int(data.get("depth", 0)),
            directive=data.get("directive"),
            aliases=list(data.get("aliases", [])),
            side=data.get("side"),
            steps=tuple(step_from_json(s) for s in data.get("steps", [])),
            children=[cls.from_json(child) for child in data.get("children", [])],
            factorization=Factorization.from_json(data["factorization"]) if data.get("factorization") else None,
            truncated=bool(data.get("truncated", False)),
        )


@dataclass
class FactorizationTree:
    root: TreeNode
    source: PolyMatrix2
    max_depth: int
    max_leaves: int

    def iter_nodes(self) -> Iterator[TreeNode]:
        stack = [self.root]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children))

    def leaves(self) -> list[Factorization]:
        return [node.factorization for node in self.iter_nodes() if node.is_leaf]

    @property
    def leaf_count(self) -> int:
        return len(self.leaves())

    @property
    def node_count(self) -> int:
        return sum(1 for _ in self.iter_nodes())

    @property
    def truncated(self) -> bool:
        return any(node.truncated for node in self.iter_nodes())

    def find(self, path: list[str]) -> TreeNode | None:
        """依指令標籤（含合併的別名）由根往下找節點。"""
        node = self.root
        for label in path:
            node = next(
                (c for c in node.children if c.directive == label or label in c.aliases),
                None,
            )
            if node is None:
                return None
        return node

    def to_json(self) -> dict:
        return {
            "schema": "liftcausal/tree",
            "version": 1,
            "source": self.source.to_json(),
            "max_depth": self.max_depth,
            "max_leaves": self.max_leaves,
            "leaf_count": self.leaf_count,
            "root": self.root.to_json(),
        }

    @classmethod
    def from_json(cls, data: dict) -> "FactorizationTree":
        return cls(
            TreeNode.from_json(data["root"]),
            PolyMatrix2.from_json(data["source"]),
            int(data["max_depth"]),
            int(data["max_leaves"]),
        )


def _candidate_directives(Q: PolyMatrix2) -> Iterator[StepDirective]:
    budget = pr_check(Q).delay
    for site in SITE_ORDER:
        for M in range(budget + 1):
            yield StepDirective(site, M)


def enumerate_factorizations(
    H: PolyMatrix2,
    max_depth: int = DEFAULT_MAX_DEPTH,
    max_leaves: int = DEFAULT_MAX_LEAVES,
    verify: bool | None = None,
) -> FactorizationTree:
    """
    深度優先列舉所有相異的降次提升分解。

    子節點依 R0、R1、C0、C1 的順序，同一位置再依 M 由小到大。
    產生相同 (側, 步驟, 商矩陣) 的指令合併為一個子節點，其餘標籤記在 `aliases`。
    超過 `max_depth` 或葉節點數達到 `max_leaves` 時，未展開的節點標記為 truncated。
    """
    pr_check(H)
    root = TreeNode(H)
    tree = FactorizationTree(root, H, max_depth, max_leaves)
    leaf_total = 0

    def expand(node: TreeNode, state: PivotState, left: list, right: list, path: list[str]) -> None:
        nonlocal leaf_total
        Q = node.matrix
        if Q.has_zero_entry():
            steps = tuple(left + cca_terminate(Q) + right)
            node.factorization = Factorization(
                steps, H, tuple(path), {"engine": "cca", "strategy": ",".join(path), "form": "raw"}
            )
            leaf_total += 1
            return
        if node.depth >= max_depth or leaf_total >= max_leaves:
            node.truncated = True
            return

        expanded: list[tuple[tuple, TreeNode, PivotState]] = []
        for directive in _candidate_directives(Q):
            try:
                result = cca_step(Q, directive, state, verify)
            except LiftingError as e:
                logger.debug("skip %s: %s", directive, e)
                continue
            key = (result.side, result.steps, result.next_matrix)
            match = next((child for k, child, _ in expanded if k == key), None)
            if match is not None:
                match.aliases.append(str(directive))
                logger.debug("merge %s into %s", directive, match.directive)
                continue
            child = TreeNode(
                result.next_matrix,
                node.depth + 1,
                str(directive),
                side=result.side,
                steps=result.steps,
            )
            expanded.append((key, child, _next_state(state, result)))
            node.children.append(child)

        for _, child, child_state in expanded:
            if leaf_total >= max_leaves:
                child.truncated = True
                continue
            if child.side == "left":
                child_left, child_right = left + list(child.steps), right
            else:
                child_left, child_right = left, list(child.steps) + right
            expand(child, child_state, child_left, child_right, path + [child.directive])

    expand(root, PivotState(), [], [], [])
    logger.debug("enumerate: %d leaves, %d nodes", leaf_total, tree.node_count)
    return tree
