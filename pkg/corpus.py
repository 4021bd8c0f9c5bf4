#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
語料庫與序列化模組 (corpus.py)

濾波器組、多相位矩陣、分解與分解樹共用一套自我描述的 JSON 格式，
有理數一律寫成 "p/q" 字串，因此序列化不會損失精度。

主要功能：
- `CorpusEntry`: 語料庫中的一個濾波器組（濾波器或矩陣、預期行列式、黃金分解）。
- `load_entry()` / `load_corpus()` / `list_entries()`: 讀取 `CORPUS_DIR` 下的 JSON 檔。
- `resolve_matrix()`: 命令列的 <bank> 參數可以是語料庫名稱或 JSON 檔路徑。
- `read_json()` / `dumps()`: 讀檔與穩定（位元組相同）的 JSON 輸出。

語料庫檔案格式（以 lgt53.json 為參考範例）：

    {
      "schema": "liftcausal/bank", "version": 1,
      "name": "lgt53",
      "filters": {"h0": {"start": 0, "coeffs": ["-1/8", ...]}, "h1": {...}},
      "expected_det": {"gain": "1", "delay": 1},
      "golden": {"C0,C0": [{"kind": "upper", "payload": {"filter": [...]}}, ...]}
    }

`filters` 也可以換成 `"matrix": [[H00, H01], [H10, H11]]`，每個元素是係數列表。
"""

import json
import logging
import os
from dataclasses import dataclass, field

from bank import FilterBank, polyphase_compose, polyphase_decompose
from config import CORPUS_DIR
from errors import CorpusError, LiftingError, NotPerfectReconstructionError
from lift import DetMonomial, Factorization, PolyMatrix2, pr_check, step_from_json, step_to_json

logger = logging.getLogger(__name__)

BANK_SCHEMA = "liftcausal/bank"


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    matrix: PolyMatrix2
    bank: FilterBank
    expected_det: DetMonomial
    source_kind: str
    description: str = ""
    golden: dict = field(default_factory=dict, compare=False)

    def golden_factorization(self, strategy: str) -> Factorization:
        if strategy not in self.golden:
            raise CorpusError(f"{self.name} 沒有策略 {strategy} 的黃金分解", strategy=strategy)
        return Factorization(tuple(self.golden[strategy]), self.matrix, (), {"strategy": strategy})

    def to_json(self) -> dict:
        data = {
            "schema": BANK_SCHEMA,
            "version": 1,
            "name": self.name,
            "description": self.description,
        }
        if self.source_kind == "filters":
            data["filters"] = {"h0": self.bank.h0.to_json(), "h1": self.bank.h1.to_json()}
        else:
            data["matrix"] = self.matrix.to_json()
        data["expected_det"] = self.expected_det.to_json()
        data["golden"] = {k: [step_to_json(s) for s in v] for k, v in self.golden.items()}
        return data


def entry_from_json(data: dict, name: str | None = None) -> CorpusEntry:
    """
    由 JSON 物件建構語料庫項目並檢查預期行列式。

    Raises:
        CorpusError: 格式錯誤或預期行列式與矩陣不符。
        NotPerfectReconstructionError: 矩陣的行列式不是單項式。
    """
    name = data.get("name") or name or "bank"
    try:
        if "filters" in data:
            bank = FilterBank.from_json({"name": name, **data["filters"]})
            matrix = polyphase_decompose(bank)
            source_kind = "filters"
        elif "matrix" in data:
            matrix = PolyMatrix2.from_json(data["matrix"])
            bank = polyphase_compose(matrix, name)
            source_kind = "matrix"
        else:
            raise CorpusError(f"{name} 需要 filters 或 matrix 欄位")
        actual = pr_check(matrix)
        expected = DetMonomial.from_json(data["expected_det"]) if "expected_det" in data else actual
        golden = {
            strategy: tuple(step_from_json(s) for s in steps)
            for strategy, steps in data.get("golden", {}).items()
        }
    except (CorpusError, NotPerfectReconstructionError):
        raise
    except (LiftingError, KeyError, TypeError, ValueError) as e:
        raise CorpusError(f"語料庫項目 {name} 格式錯誤: {e}", name=name) from e

    if expected != actual:
        raise CorpusError(
            f"{name} 的預期行列式 {expected.to_json()} 與實際 {actual.to_json()} 不符", name=name
        )
    return CorpusEntry(name, matrix, bank, expected, source_kind, data.get("description", ""), golden)


def read_json(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as f:
            return json.load(f)
    except FileNotFoundError as e:
        raise CorpusError(f"找不到檔案: {path}", path=path) from e
    except json.JSONDecodeError as e:
        raise CorpusError(f"JSON 格式錯誤: {path}: {e}", path=path) from e


def dumps(data) -> str:
    """穩定的 JSON 輸出：保留插入順序、縮排 2、不轉義中文。"""
    return json.dumps(data, ensure_ascii=False, indent=2)


def list_entries(corpus_dir: str | None = None) -> list[str]:
    corpus_dir = corpus_dir or CORPUS_DIR
    if not os.path.isdir(corpus_dir):
        raise CorpusError(f"找不到語料庫目錄: {corpus_dir}", path=corpus_dir)
    return sorted(os.path.splitext(f)[0] for f in os.listdir(corpus_dir) if f.endswith(".json"))


def load_entry(name: str, corpus_dir: str | None = None) -> CorpusEntry:
    """依名稱（不含 .json）讀取語料庫項目。"""
    corpus_dir = corpus_dir or CORPUS_DIR
    path = os.path.join(corpus_dir, f"{name}.json")
    if not os.path.exists(path):
        raise CorpusError(f"語料庫中沒有 {name}（目錄: {corpus_dir}）", name=name)
    logger.debug("load corpus entry %s from %s", name, path)
    return entry_from_json(read_json(path), name)


def load_corpus(corpus_dir: str | None = None) -> dict[str, CorpusEntry]:
    return {name: load_entry(name, corpus_dir) for name in list_entries(corpus_dir)}


def resolve_matrix(argument: str, corpus_dir: str | None = None) -> CorpusEntry:
    """
    命令列 <bank> 參數：存在的 JSON 檔路徑，或語料庫中的名稱。
    分解檔（schema liftcausal/factorization）會以其 source 矩陣建構項目。
    """
    if os.path.isfile(argument):
        data = read_json(argument)
        if data.get("schema") == "liftcausal/factorization":
            data = {"name": os.path.splitext(os.path.basename(argument))[0], "matrix": data["source"]}
        return entry_from_json(data, os.path.splitext(os.path.basename(argument))[0])
    return load_entry(argument, corpus_dir)
