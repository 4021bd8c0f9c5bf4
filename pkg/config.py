#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
設定檔 (config.py)

所有模組共用的常數。可以直接修改本檔，或以環境變數覆寫；
命令列參數只影響單次執行。範本請見 `config.py.example`。
"""

import os

_HERE = os.path.dirname(os.path.abspath(__file__))


def _env_flag(name: str, default: bool) -> bool:
    value = os.environ.get(name)
    if value is None:
        return default
    return value.strip().lower() not in ("0", "off", "false", "no", "")


def _env_int(name: str, default: int) -> int:
    value = os.environ.get(name)
    return default if value is None or not value.strip() else int(value)


# --- 目錄 ---

# 濾波器組語料庫 (lgt53.json、cdf75.json、haar.json)
CORPUS_DIR = os.environ.get("LIFTCAUSAL_CORPUS_DIR", os.path.join(_HERE, "corpus"))
# Markdown / HTML / PNG 報表輸出目錄
REPORTS_DIR = os.environ.get("LIFTCAUSAL_REPORTS_DIR", "reports")
# 列舉結果的快取目錄
CACHE_DIR = os.environ.get("LIFTCAUSAL_CACHE_DIR", "cache")

# --- 訊號模擬 ---

# 隨機訊號的種子，輸出標頭會記錄實際使用的值
DEFAULT_SEED = _env_int("LIFTCAUSAL_SEED", 20240101)
# pr_verify 除了脈衝之外的隨機訊號數量
DEFAULT_TRIALS = _env_int("LIFTCAUSAL_TRIALS", 8)
SIGNAL_LENGTH = _env_int("LIFTCAUSAL_SIGNAL_LENGTH", 64)
# 隨機有理數樣本：分子在 [-R, R]，分母在 [1, R]
RANDOM_COEFF_RANGE = _env_int("LIFTCAUSAL_COEFF_RANGE", 9)

# --- 列舉 ---

DEFAULT_MAX_DEPTH = _env_int("LIFTCAUSAL_MAX_DEPTH", 12)
DEFAULT_MAX_LEAVES = _env_int("LIFTCAUSAL_MAX_LEAVES", 256)

# 每次 CCA 除法都檢查降次界限與乘積
VERIFY_DIVISIONS = _env_flag("LIFTCAUSAL_VERIFY", True)

# --- 日誌 ---

LOG_LEVEL = os.environ.get("LIFTCAUSAL_LOG_LEVEL", "WARNING").upper()
