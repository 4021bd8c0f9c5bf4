#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
conftest.py：pytest 的共用設定

主要功能：
- 把專案根目錄加入 `sys.path`，測試可以直接 `from poly import Poly`。
- 共用 fixtures：語料庫項目與多相位矩陣、臨時快取目錄、臨時報表目錄。
- hypothesis 設定檔：精確運算沒有時間上限的意義，因此關閉 deadline。
- 自訂標記，未標記的測試自動加上 `unit`。
"""

import os
import shutil
import sys
import tempfile
from unittest.mock import patch

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
os.environ.setdefault("MPLBACKEND", "Agg")

from corpus import load_entry  # noqa: E402

settings.register_profile(
    "liftcausal",
    deadline=None,
    max_examples=100,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "liftcausal"))


# --- 語料庫 ---

@pytest.fixture(scope="session")
def lgt_entry():
    return load_entry("lgt53")


@pytest.fixture(scope="session")
def cdf_entry():
    return load_entry("cdf75")


@pytest.fixture(scope="session")
def haar_entry():
    return load_entry("haar")


@pytest.fixture(scope="session")
def lgt(lgt_entry):
    """LGT(5,3) 的多相位矩陣，|H| = z^-1。"""
    return lgt_entry.matrix


@pytest.fixture(scope="session")
def cdf(cdf_entry):
    """CDF(7,5) 的多相位矩陣，|H| = −z^-2。"""
    return cdf_entry.matrix


@pytest.fixture(scope="session")
def haar(haar_entry):
    return haar_entry.matrix


# --- 暫存目錄 ---

@pytest.fixture
def temp_cache_dir():
    """臨時快取目錄，並把 cache_utils.CACHE_DIR 指過去。"""
    temp_dir = tempfile.mkdtemp(prefix="test_cache_")
    with patch("cache_utils.CACHE_DIR", temp_dir):
        yield temp_dir
    shutil.rmtree(temp_dir, ignore_errors=True)


@pytest.fixture
def temp_reports_dir():
    temp_dir = tempfile.mkdtemp(prefix="test_reports_")
    yield temp_dir
    shutil.rmtree(temp_dir, ignore_errors=True)


@pytest.fixture(autouse=True)
def setup_test_environment():
    """每個測試都在 TESTING=1 下執行，結束後還原。"""
    os.environ["TESTING"] = "1"
    yield
    os.environ.pop("TESTING", None)


# --- Pytest Hooks ---

def pytest_configure(config):
    config.addinivalue_line("markers", "slow: marks tests as slow (deselect with '-m \"not slow\"')")
    config.addinivalue_line("markers", "integration: marks tests as integration tests")
    config.addinivalue_line("markers", "unit: marks tests as unit tests")
    config.addinivalue_line("markers", "golden: step-for-step comparison against worked examples")
    config.addinivalue_line("markers", "property: hypothesis property suites")
    config.addinivalue_line("markers", "report: Markdown / HTML / PNG report generation")
    config.addinivalue_line("markers", "cli: command-line entry point")


def pytest_collection_modifyitems(config, items):
    """沒有 unit / integration / slow 標記的測試自動加上 unit。"""
    for item in items:
        if not any(mark.name in ("unit", "integration", "slow") for mark in item.iter_markers()):
            item.add_marker(pytest.mark.unit)


def pytest_sessionstart(session):
    print("\n🚀 開始執行 liftcausal 測試...")


def pytest_sessionfinish(session, exitstatus):
    if exitstatus == 0:
        print("\n✅ 所有測試通過！")
    else:
        print(f"\n❌ 測試失敗，退出代碼: {exitstatus}")
