#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
分解報表模組 (report.py)

把一個濾波器組的提升分解整理成 Markdown 報表，再轉成 HTML。

主要功能：
- 濾波器係數、多相位矩陣與行列式。
- 原始分解與標準形式分解的步驟表格，以及 `Factorization.summary()` 指標。
- 完美重建驗證結果（脈衝與隨機訊號）。
- 以 Mermaid 流程圖畫出分析端的提升梯形結構。
- 以 matplotlib 畫出 h0、h1 的幅度響應（只用浮點數作圖，不回饋到精確計算）。

輸出檔案放在 `REPORTS_DIR`：`<bank>_<timestamp>.md`、`.html` 與 `_response.png`。
"""

import logging
import os
from datetime import datetime

import matplotlib.pyplot as plt
import numpy as np

from bank import PrReport, pr_verify
from config import REPORTS_DIR
from corpus import CorpusEntry
from errors import LiftingError
from exactnum import render_rational
from lift import (
    DelayDiag,
    Factorization,
    GainDiag,
    LowerLift,
    Swap,
    UpperLift,
    normalize_standard,
    pr_check,
)
from markdown2html import convert_markdown_to_html
from poly import LaurentPoly

logger = logging.getLogger(__name__)

# 圖表中的中文字型與負號
plt.rcParams["font.sans-serif"] = ["Arial Unicode MS", "SimHei", "DejaVu Sans"]
plt.rcParams["axes.unicode_minus"] = False

# 幅度響應的取樣點數
RESPONSE_POINTS = 512

_STEP_LABELS = {
    UpperLift: "上三角提升 υ",
    LowerLift: "下三角提升 λ",
    DelayDiag: "延遲",
    GainDiag: "增益",
    Swap: "交換 J",
}


def magnitude_response(filt: LaurentPoly, points: int = RESPONSE_POINTS) -> tuple[np.ndarray, np.ndarray]:
    """
    計算 |H(e^{jω})|，ω 取 [0, π] 上的 `points` 個點。

    係數轉成 float 只用於作圖。
    """
    omega = np.linspace(0.0, np.pi, points)
    exponents = np.arange(filt.lowest_exponent, filt.highest_exponent + 1)
    coeffs = np.array([float(filt.coeff(int(k))) for k in exponents])
    response = np.exp(-1j * np.outer(omega, exponents)) @ coeffs
    return omega, np.abs(response)


def steps_table(fact: Factorization) -> str:
    """Markdown 表格：每一列是一個步驟。"""
    lines = ["| # | 類型 | 矩陣 |", "|---|------|------|"]
    for i, step in enumerate(fact.steps):
        lines.append(f"| {i} | {_STEP_LABELS[type(step)]} | `{step}` |")
    return "\n".join(lines)


def ladder_flowchart(fact: Factorization) -> str:
    """
    Mermaid 流程圖：分析端的訊號 x 先經過多工分解，
    再由最右邊的步驟開始依序通過每個因子。
    """
    lines = ["flowchart LR", '    x(["x(n)"]) --> demux["多相位分解"]']
    previous = "demux"
    for i in reversed(range(len(fact.steps))):
        node = f"s{i}"
        label = str(fact.steps[i]).replace('"', "'")
        lines.append(f'    {previous} --> {node}["{label}"]')
        previous = node
    lines.append(f'    {previous} --> y(["y0, y1"])')
    return "\n".join(lines)


class FactorizationReport:
    """
    一份分解報表。

    `factorization` 可以是原始或標準形式；報表會同時列出兩者。
    `pr` 若為 None，產生報表時才執行 `pr_verify`。
    """

    def __init__(
        self,
        entry: CorpusEntry,
        factorization: Factorization,
        pr: PrReport | None = None,
        reports_dir: str | None = None,
    ):
        self.entry = entry
        self.raw = factorization
        self.standard = (
            factorization
            if factorization.meta.get("form") == "standard"
            else normalize_standard(factorization)
        )
        self.pr = pr
        self.reports_dir = reports_dir or REPORTS_DIR

    def _run_pr(self) -> PrReport | None:
        if self.pr is None:
            try:
                self.pr = pr_verify(self.standard)
            except LiftingError as e:
                logger.warning("⚠️  完美重建驗證失敗: %s", e)
                return None
        return self.pr

    def create_markdown_report(self, chart_name: str | None = None) -> str:
        entry = self.entry
        det = pr_check(entry.matrix)
        meta = self.raw.meta
        current_time = datetime.now().strftime("%Y-%m-%d %H:%M:%S")

        content = f"# 提升分解報表：{entry.name}\n\n"
        content += f"**生成時間**: {current_time}\n\n"
        if entry.description:
            content += f"{entry.description}\n\n"

        content += "## 濾波器\n\n"
        content += "| 濾波器 | 起始指數 | 係數 |\n|--------|----------|------|\n"
        for label, filt in (("h0", entry.bank.h0), ("h1", entry.bank.h1)):
            coeffs = ", ".join(render_rational(c) for c in filt.coeffs)
            content += f"| {label} | {filt.lowest_exponent} | {coeffs} |\n"

        content += "\n## 多相位矩陣\n\n"
        content += "| | 第 0 行 | 第 1 行 |\n|---|---|---|\n"
        for i in range(2):
            a, b = entry.matrix.row(i)
            content += f"| 第 {i} 列 | `{a}` | `{b}` |\n"
        content += f"\n- **行列式**: `{entry.matrix.det()}`"
        content += f"（增益 {render_rational(det.gain)}，延遲 {det.delay}）\n"

        content += "\n## 分解\n\n"
        content += f"- **引擎**: {meta.get('engine', '-')}\n"
        content += f"- **策略**: `{meta.get('strategy', meta.get('site', '-'))}`\n\n"
        content += "### 原始形式\n\n" + steps_table(self.raw) + "\n\n"
        content += "### 標準形式\n\n" + steps_table(self.standard) + "\n\n"

        if self.raw.trace:
            content += "### 計算過程\n\n"
            for line in self.raw.trace:
                content += f"- {line}\n"
            content += "\n"

        content += "## 指標\n\n"
        content += "| 指標 | 原始 | 標準 |\n|------|------|------|\n"
        raw_summary, std_summary = self.raw.summary(), self.standard.summary()
        for key in raw_summary:
            content += f"| {key} | {raw_summary[key]} | {std_summary[key]} |\n"

        content += "\n## 完美重建驗證\n\n"
        pr = self._run_pr()
        if pr is None:
            content += "❌ 驗證失敗，詳見日誌。\n"
        else:
            content += f"- **路徑**: {pr.path}\n"
            content += f"- **訊號數**: {pr.signals}（種子 {pr.seed}）\n"
            content += f"- **輸出**: {render_rational(pr.gain)} · x(n − {pr.delay})\n"

        content += "\n## 分析端梯形結構\n\n"
        content += "```mermaid\n" + ladder_flowchart(self.standard) + "\n```\n"

        if chart_name:
            content += "\n## 幅度響應\n\n"
            content += f"![{entry.name} 幅度響應]({chart_name})\n"
        return content

    def create_chart(self, path: str) -> str:
        """畫出 h0、h1 的幅度響應並存成 PNG。"""
        fig, ax = plt.subplots(figsize=(10, 6))
        for label, filt in (("h0 (低通)", self.entry.bank.h0), ("h1 (高通)", self.entry.bank.h1)):
            omega, magnitude = magnitude_response(filt)
            ax.plot(omega / np.pi, magnitude, label=label)
        ax.set_xlabel("ω / π")
        ax.set_ylabel("|H(e^{jω})|")
        ax.set_title(f"{self.entry.name} 分析濾波器幅度響應")
        ax.grid(True, alpha=0.3)
        ax.legend()
        plt.tight_layout()
        plt.savefig(path, dpi=150, bbox_inches="tight")
        plt.close(fig)
        return path

    def generate(self, timestamp: str | None = None) -> tuple[str, str, str]:
        """
        產生 Markdown、HTML 與 PNG 三個檔案。

        Returns:
            tuple[str, str, str]: (md 路徑, html 路徑, png 路徑)
        """
        timestamp = timestamp or datetime.now().strftime("%Y%m%d%H%M")
        os.makedirs(self.reports_dir, exist_ok=True)
        base = os.path.join(self.reports_dir, f"{self.entry.name}_{timestamp}")

        chart_path = self.create_chart(f"{base}_response.png")
        content = self.create_markdown_report(os.path.basename(chart_path))
        md_path = f"{base}.md"
        with open(md_path, "w", encoding="utf-8") as f:
            f.write(content)
        html_path = convert_markdown_to_html(md_path, f"{base}.html")
        logger.info("report written: %s", md_path)
        return md_path, html_path, chart_path
