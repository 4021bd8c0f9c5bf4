#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
主程式：liftcausal 命令列工具

把兩通道 FIR 完美重建濾波器組的因果多相位矩陣分解成因果提升步驟，
並提供驗證、列舉、訊號模擬與線性丟番圖方程求解。

子指令：
- `factor <bank>`: 以 CCA（`--strategy`）或因果 EEA（`--site`）分解，輸出原始或標準形式。
- `enumerate <bank>`: 列舉所有降次提升分解，結果可快取。
- `verify <file>`: 重新相乘分解檔並與來源矩陣比較；語料庫名稱則驗證所有黃金分解。
- `simulate <bank>`: 以脈衝與隨機訊號驗證完美重建，回報 (增益, 延遲)。
- `solve-lde a b c`: 求 a·x + b·y = c 的降次解，或 `--complements` 列出因果補數。
- `report <bank>`: 產生 Markdown / HTML 分解報表。
- `corpus`: 列出語料庫內容。

<bank> 可以是語料庫名稱（例如 lgt53）或 JSON 檔路徑。
`--output json` 時 stdout 只輸出 JSON，狀態訊息改寫到 stderr。
錯誤以 `{"error": code, "message": ...}` 寫到 stderr，結束碼為 2。
"""

import argparse
import json
import logging
import os
import sys

from bank import Signal, pr_verify
from cache_utils import get_cache_key, load_from_cache, save_to_cache
from config import (
    DEFAULT_MAX_DEPTH,
    DEFAULT_MAX_LEAVES,
    DEFAULT_SEED,
    DEFAULT_TRIALS,
    LOG_LEVEL,
)
from corpus import dumps, list_entries, load_entry, read_json, resolve_matrix
from errors import CorpusError, LiftingError
from exactnum import render_rational
from factor import FactorizationTree, Strategy, enumerate_factorizations, factor_cca, factor_eea
from lde import causal_complements, degree_reducing, solutions_coincide
from lift import Factorization, format_factorization, normalize_standard, pr_check
from log_utils import initialize_logger
from poly import Poly
from report import FactorizationReport

logger = logging.getLogger(__name__)

DEFAULT_STRATEGY = "C0*"


def _status(args, message: str) -> None:
    """狀態訊息：JSON 模式寫到 stderr，避免污染機器輸出。"""
    json_mode = getattr(args, "output", "text") == "json"
    print(message, file=sys.stderr if json_mode else sys.stdout)


def _emit_json(data) -> None:
    print(dumps(data))


def _factorize(entry, args) -> Factorization:
    if args.engine == "eea":
        return factor_eea(entry.matrix, args.site)
    return factor_cca(entry.matrix, Strategy.parse(args.strategy))


# --- 子指令 ---

def cmd_factor(args) -> None:
    entry = resolve_matrix(args.bank)
    _status(args, f"🔄 分解 {entry.name}（{args.engine}，{args.strategy if args.engine == 'cca' else args.site}）")
    fact = _factorize(entry, args)
    if args.form == "standard":
        fact = normalize_standard(fact)
    fact.verify()

    if args.output == "json":
        _emit_json(fact.to_json())
        return
    det = pr_check(entry.matrix)
    print(f"📊 |H(z)| = {render_rational(det.gain)}·z^-{det.delay}")
    print(format_factorization(fact, multiline=args.multiline))
    if args.trace:
        for line in fact.trace:
            print(f"  - {line}")
    print("✅ 乘積與來源矩陣一致")


def render_tree(tree: FactorizationTree) -> str:
    """以縮排列出樹的節點，葉節點附上分解。"""
    lines = [f"H(z) = {tree.source}"]
    stack = [(child, 1) for child in reversed(tree.root.children)]
    while stack:
        node, level = stack.pop()
        indent = "  " * level
        label = node.directive
        if node.aliases:
            label += f" (= {', '.join(node.aliases)})"
        line = f"{indent}{label} [{node.side}] Q = {node.matrix}"
        if node.truncated:
            line += " ⚠️  已截斷"
        lines.append(line)
        if node.factorization is not None:
            lines.append(f"{indent}  🎯 {format_factorization(node.factorization)}")
        stack.extend((child, level + 1) for child in reversed(node.children))
    return "\n".join(lines)


def cmd_enumerate(args) -> None:
    entry = resolve_matrix(args.bank)
    params = {
        "matrix": entry.matrix.to_json(),
        "max_depth": args.max_depth,
        "max_leaves": args.max_leaves,
    }
    cache_key = get_cache_key(params)
    cached = None if args.no_cache else load_from_cache(cache_key)

    if cached is not None:
        _status(args, f"✅ 使用快取結果 ({cache_key})")
        tree = FactorizationTree.from_json(cached)
    else:
        _status(args, f"🔄 列舉 {entry.name} 的提升分解（深度上限 {args.max_depth}）")
        tree = enumerate_factorizations(entry.matrix, args.max_depth, args.max_leaves)
        if not args.no_cache:
            save_to_cache(cache_key, tree.to_json())

    if args.output == "json":
        _emit_json(tree.to_json())
        _status(args, f"🎯 共 {tree.leaf_count} 個分解")
        return
    print(render_tree(tree))
    print("=" * 50)
    print(f"🎯 共 {tree.leaf_count} 個分解，{tree.node_count} 個節點")
    if tree.truncated:
        print("⚠️  部分節點因深度或葉節點上限而截斷")


def cmd_verify(args) -> None:
    if os.path.isfile(args.target):
        data = read_json(args.target)
        facts = {os.path.basename(args.target): Factorization.from_json(data)}
    else:
        entry = load_entry(args.target)
        facts = {strategy: entry.golden_factorization(strategy) for strategy in entry.golden}
        if not facts:
            print(f"⚠️  {entry.name} 沒有黃金分解")

    for label, fact in facts.items():
        fact.verify()
        print(f"✅ {label}: {len(fact.steps)} 個步驟，乘積一致")


def _parse_signal(text: str, trials: int) -> tuple[int, int, list[Signal]]:
    """--signal 參數轉成 (trials, seed, 額外訊號)。"""
    if text == "impulse":
        return 0, DEFAULT_SEED, []
    if text.startswith("random:"):
        try:
            seed = int(text.split(":", 1)[1])
        except ValueError as e:
            raise CorpusError(f"無效的種子: {text}", signal=text) from e
        return trials, seed, []
    if text == "random":
        return trials, DEFAULT_SEED, []
    data = read_json(text)
    try:
        return 0, DEFAULT_SEED, [Signal.from_json(data)]
    except (LiftingError, KeyError, TypeError, ValueError) as e:
        raise CorpusError(f"訊號檔格式錯誤: {text}: {e!r}", signal=text) from e


def cmd_simulate(args) -> None:
    target = None
    if os.path.isfile(args.bank):
        data = read_json(args.bank)
        if data.get("schema") == "liftcausal/factorization":
            target = Factorization.from_json(data)
    if target is None:
        entry = resolve_matrix(args.bank)
        if args.strategy:
            target = normalize_standard(factor_cca(entry.matrix, Strategy.parse(args.strategy)))
        else:
            target = entry.matrix

    trials, seed, extra = _parse_signal(args.signal, args.trials)
    _status(args, f"🔄 模擬分析→合成（種子 {seed}）")
    report = pr_verify(target, trials=trials, seed=seed, extra=extra)

    if args.output == "json":
        _emit_json(report.to_json())
        return
    print(f"📊 路徑: {report.path}，訊號數: {report.signals}，種子: {report.seed}")
    print(f"✅ 完美重建: y(n) = {render_rational(report.gain)}·x(n - {report.delay})")


def cmd_solve_lde(args) -> None:
    a, b, c = Poly.from_text(args.a), Poly.from_text(args.b), Poly.from_text(args.c)

    if args.complements:
        complements = causal_complements(a, b, c)
        if args.output == "json":
            _emit_json([item.to_json() for item in complements])
            return
        for item in complements:
            print(f"🎯 R = ({item.r0}, {item.r1})，降次於 F{list(item.reduces_in)}")
        return

    solution = degree_reducing(a, b, c, args.target.upper())
    # a 或 b 為零時只有一個降次解，不比較
    coincide = solutions_coincide(a, b, c) if not (a.is_zero() or b.is_zero()) else None
    if args.output == "json":
        _emit_json({**solution.to_json(), "coincide": coincide})
        return
    print(f"🎯 x = {solution.x}")
    print(f"🎯 y = {solution.y}")
    if coincide is None:
        print(f"📊 降次於: {solution.reduced_in.value}")
    else:
        print(f"📊 降次於: {solution.reduced_in.value}，兩個降次解{'相同' if coincide else '不同'}")


def cmd_report(args) -> None:
    entry = resolve_matrix(args.bank)
    print(f"📊 正在生成 {entry.name} 的報表...")
    fact = _factorize(entry, args)
    md_path, html_path, chart_path = FactorizationReport(entry, fact).generate()
    print("=" * 50)
    print(f"📄 Markdown 報表: {md_path}")
    print(f"🌐 HTML 報表: {html_path}")
    print(f"📈 幅度響應圖: {chart_path}")


def cmd_corpus(args) -> None:
    rows = []
    for name in list_entries():
        entry = load_entry(name)
        rows.append({
            "name": entry.name,
            "source": entry.source_kind,
            "expected_det": entry.expected_det.to_json(),
            "golden": sorted(entry.golden),
        })
    if args.output == "json":
        _emit_json(rows)
        return
    for row in rows:
        det = row["expected_det"]
        print(f"- {row['name']:<8} {row['source']:<8} |H| = {det['gain']}·z^-{det['delay']}  黃金分解 {len(row['golden'])} 個")


# --- 參數解析 ---

def _add_engine_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--engine", choices=["cca", "eea"], default="cca", help="分解引擎")
    parser.add_argument("--strategy", default=DEFAULT_STRATEGY, help="CCA 策略，例如 C0,C1 或 C1@M=1,C1")
    parser.add_argument("--site", choices=["R0", "R1", "C0", "C1"], default="C0", help="EEA 的位置")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="liftcausal",
        description="兩通道 FIR 完美重建濾波器組的因果提升分解工具。",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="輸出 DEBUG 日誌")
    parser.add_argument("--log-file", default=None, help="日誌檔案名稱")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("factor", help="分解多相位矩陣")
    p.add_argument("bank")
    _add_engine_arguments(p)
    p.add_argument("--form", choices=["raw", "standard"], default="raw")
    p.add_argument("--output", choices=["text", "json"], default="text")
    p.add_argument("--multiline", action="store_true", help="每個步驟一行")
    p.add_argument("--trace", action="store_true", help="列出每一步的計算過程")
    p.set_defaults(func=cmd_factor)

    p = sub.add_parser("enumerate", help="列舉所有降次提升分解")
    p.add_argument("bank")
    p.add_argument("--max-depth", type=int, default=DEFAULT_MAX_DEPTH)
    p.add_argument("--max-leaves", type=int, default=DEFAULT_MAX_LEAVES)
    p.add_argument("--no-cache", action="store_true", help="不讀寫快取")
    p.add_argument("--output", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("verify", help="驗證分解檔或語料庫的黃金分解")
    p.add_argument("target", help="分解 JSON 檔或語料庫名稱")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("simulate", help="訊號層的完美重建模擬")
    p.add_argument("bank", help="語料庫名稱、濾波器組檔或分解檔")
    p.add_argument("--signal", default="random", help="impulse、random、random:<seed> 或訊號 JSON 檔")
    p.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    p.add_argument("--strategy", default=None, help="改用此 CCA 策略的提升梯形路徑")
    p.add_argument("--output", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("solve-lde", help="求 a·x + b·y = c 的降次解")
    p.add_argument("a", help="係數列表，例如 1,1 表示 1 + z^-1；以負號開頭時先加上 --")
    p.add_argument("b")
    p.add_argument("c")
    p.add_argument("--target", choices=["a", "b"], default="a", help="在哪一個係數中降次")
    p.add_argument("--complements", action="store_true", help="把 a, b, c 視為 F0, F1, 行列式，列出因果補數")
    p.add_argument("--output", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_solve_lde)

    p = sub.add_parser("report", help="產生分解報表")
    p.add_argument("bank")
    _add_engine_arguments(p)
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("corpus", help="列出語料庫")
    p.add_argument("--output", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_corpus)

    return parser


def main(argv: list[str] | None = None) -> None:
    """
    主程式入口函式。
    """
    parser = build_parser()
    args = parser.parse_args(argv)
    initialize_logger(logging.DEBUG if args.verbose else LOG_LEVEL, log_filename=args.log_file)

    try:
        args.func(args)
    except LiftingError as e:
        print(f"❌ {e.message}", file=sys.stderr)
        print(json.dumps(e.to_dict(), ensure_ascii=False), file=sys.stderr)
        sys.exit(2)
    except KeyboardInterrupt:
        print("\n❌ 使用者中斷執行", file=sys.stderr)
        sys.exit(1)
    except Exception as e:
        print(f"\n❌ 執行過程中發生錯誤: {e}", file=sys.stderr)
        sys.exit(1)


if __name__ == "__main__":
    main()
