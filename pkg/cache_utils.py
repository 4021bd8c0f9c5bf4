#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
快取工具模組 (cache_utils.py)

列舉所有提升分解的成本隨矩陣次數快速成長，因此 `enumerate` 指令會把序列化後的
分解樹存進快取。快取鍵由矩陣、列舉上限與資料格式版本組成，任何一項改變都會產生新的鍵。

主要功能：
- `get_cache_key()`: 對排序後的參數做 JSON 編碼，再取 MD5 雜湊值。
- `load_from_cache()`: 讀取快取內容；檔案不存在或損壞時傳回 None（視為未命中）。
- `save_to_cache()`: 將內容與時間戳以 JSON 格式寫入 `CACHE_DIR/<key>.json`。

快取目錄由 `config.CACHE_DIR` 決定（環境變數 LIFTCAUSAL_CACHE_DIR）。
"""

import hashlib
import json
import logging
import os
import time

from config import CACHE_DIR

logger = logging.getLogger(__name__)

# 分解樹 JSON 格式變動時遞增，舊的快取自動失效
SCHEMA_VERSION = 1


def get_cache_key(params: dict, schema_version: int = SCHEMA_VERSION) -> str:
    """
    根據參數字典生成 MD5 快取鍵。

    參數先依鍵排序，因此相同的參數組合（不論順序）會得到相同的鍵。

    Args:
        params (dict): 影響結果的所有參數，值必須可以 JSON 序列化。
        schema_version (int): 資料格式版本。

    Returns:
        str: 32 個字元的十六進位字串。
    """
    all_params = dict(params)
    all_params["schema_version"] = schema_version
    sorted_params = sorted(all_params.items())
    encoded = json.dumps(sorted_params, ensure_ascii=False, separators=(",", ":")).encode("utf-8")
    return hashlib.md5(encoded).hexdigest()


def _cache_path(key: str) -> str:
    return os.path.join(CACHE_DIR, f"{key}.json")


def load_from_cache(key: str):
    """
    讀取快取內容。

    Returns:
        快取中的 "content"；未命中或檔案損壞時傳回 None。
    """
    cache_file_path = _cache_path(key)
    if not os.path.exists(cache_file_path):
        return None
    try:
        with open(cache_file_path, "r", encoding="utf-8") as f:
            data = json.load(f)
        logger.debug("cache hit: %s", key)
        return data.get("content")
    except Exception as e:
        logger.warning("⚠️  讀取快取檔案 %s 時發生錯誤: %s", cache_file_path, e)
        return None


def save_to_cache(key: str, data) -> bool:
    """
    寫入快取。失敗時只記錄警告，不中斷主流程。

    Returns:
        bool: 是否成功寫入。
    """
    try:
        os.makedirs(CACHE_DIR, exist_ok=True)
    except OSError as e:
        logger.warning("❌ 建立快取目錄 %s 時發生錯誤: %s", CACHE_DIR, e)
        return False

    cache_file_path = _cache_path(key)
    try:
        with open(cache_file_path, "w", encoding="utf-8") as f:
            json.dump({"content": data, "timestamp": time.time()}, f, ensure_ascii=False, indent=2)
        return True
    except Exception as e:
        logger.warning("⚠️  儲存快取檔案 %s 時發生錯誤: %s", cache_file_path, e)
        return False
