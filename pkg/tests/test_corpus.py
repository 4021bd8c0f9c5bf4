#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
測試語料庫模組 corpus.py。

主要測試內容：
- 讀取內建語料庫與預期行列式。
- 格式錯誤與行列式不符時的 `CorpusError`。
- `resolve_matrix()`：語料庫名稱、濾波器組檔案與分解檔案。
"""

import json
import os

import pytest

from config import CORPUS_DIR
from corpus import (
    dumps,
    entry_from_json,
    list_entries,
    load_corpus,
    load_entry,
    read_json,
    resolve_matrix,
)
from errors import CorpusError, NotPerfectReconstructionError
from factor import factor_cca
from lift import DetMonomial


class TestLoad:
    """內建語料庫。"""

    def test_list_entries(self):
        assert list_entries() == ["cdf75", "haar", "lgt53"]

    def test_lgt_entry(self, lgt_entry):
        assert lgt_entry.name == "lgt53"
        assert lgt_entry.source_kind == "filters"
        assert lgt_entry.expected_det == DetMonomial(1, 1)
        assert len(lgt_entry.golden) == 6

    def test_matrix_entry(self, haar_entry):
        assert haar_entry.source_kind == "matrix"
        assert haar_entry.bank.h0.coeffs
        assert haar_entry.expected_det == DetMonomial(1, 0)

    def test_load_corpus(self):
        corpus = load_corpus()
        assert set(corpus) == {"cdf75", "haar", "lgt53"}
        assert corpus["cdf75"].expected_det == DetMonomial(-1, 2)

    def test_missing_entry(self):
        with pytest.raises(CorpusError) as excinfo:
            load_entry("no-such-bank")
        assert excinfo.value.code == "corpus"

    def test_missing_directory(self, tmp_path):
        with pytest.raises(CorpusError):
            list_entries(str(tmp_path / "absent"))

    def test_missing_golden(self, lgt_entry):
        with pytest.raises(CorpusError):
            lgt_entry.golden_factorization("R1,R1")

    def test_golden_factorizations_rebuild(self):
        for entry in load_corpus().values():
            for strategy in entry.golden:
                assert entry.golden_factorization(strategy).is_valid(), f"{entry.name} {strategy}"


class TestEntryFromJson:
    """由 JSON 建構項目。"""

    def test_round_trip(self, cdf_entry):
        assert entry_from_json(cdf_entry.to_json()) == cdf_entry

    def test_expected_det_mismatch(self, lgt_entry):
        data = lgt_entry.to_json()
        data["expected_det"] = {"gain": "1", "delay": 2}
        with pytest.raises(CorpusError):
            entry_from_json(data)

    def test_missing_source(self):
        with pytest.raises(CorpusError):
            entry_from_json({"name": "empty"})

    def test_bad_coefficient(self):
        data = {"name": "bad", "matrix": [[["1.5"], ["0"]], [["0"], ["1"]]]}
        with pytest.raises(CorpusError):
            entry_from_json(data)

    def test_not_pr_matrix(self):
        with pytest.raises(NotPerfectReconstructionError):
            entry_from_json({"matrix": [[["1"], ["1"]], [["1"], ["1"]]]})

    def test_det_defaults_to_actual(self):
        entry = entry_from_json({"matrix": [[["1"], ["0", "1"]], [["0"], ["2"]]]})
        assert entry.name == "bank"
        assert entry.expected_det == DetMonomial(2, 0)


class TestFiles:
    """檔案讀寫與命令列參數解析。"""

    def test_resolve_name(self):
        assert resolve_matrix("lgt53").name == "lgt53"

    def test_resolve_bank_file(self, tmp_path, cdf_entry):
        path = tmp_path / "mybank.json"
        path.write_text(dumps(cdf_entry.to_json()), encoding="utf-8")
        entry = resolve_matrix(str(path))
        assert entry.matrix == cdf_entry.matrix

    def test_resolve_factorization_file(self, tmp_path, lgt):
        path = tmp_path / "lgt_c1.json"
        path.write_text(dumps(factor_cca(lgt, "C1").to_json()), encoding="utf-8")
        entry = resolve_matrix(str(path))
        assert entry.name == "lgt_c1"
        assert entry.matrix == lgt

    def test_read_json_errors(self, tmp_path):
        with pytest.raises(CorpusError):
            read_json(str(tmp_path / "missing.json"))
        broken = tmp_path / "broken.json"
        broken.write_text("{", encoding="utf-8")
        with pytest.raises(CorpusError):
            read_json(str(broken))

    def test_dumps_is_stable(self, lgt_entry):
        first = dumps(lgt_entry.to_json())
        assert first == dumps(entry_from_json(json.loads(first)).to_json())
        assert dumps({"說明": 1}) == '{\n  "說明": 1\n}'

    def test_shipped_files_use_bank_schema(self):
        for name in list_entries():
            data = read_json(os.path.join(CORPUS_DIR, f"{name}.json"))
            assert data["schema"] == "liftcausal/bank"
            assert data["version"] == 1


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
