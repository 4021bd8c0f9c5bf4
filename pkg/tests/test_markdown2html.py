#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
測試 markdown2html.py 的功能。

主要測試內容：
- 表格、程式碼區塊與中文內容的轉換。
- ```mermaid 區塊保留為 `<pre class="mermaid">`，並載入 Mermaid.js。
- 輸出路徑的預設值與找不到輸入檔案的錯誤。
"""

import os

import pytest

from markdown2html import (
    MERMAID_CDN,
    convert_markdown_to_html,
    create_full_html_doc,
    render_markdown,
)

pytestmark = pytest.mark.report

SAMPLE = """# 提升分解報表：lgt53

## 分解

| # | 類型 | 矩陣 |
|---|------|------|
| 0 | 上三角提升 υ | `[1, (1 + 1z^-1)/4; 0, 1]` |

```mermaid
flowchart LR
    demux --> s0["J"]
```

```python
print("H(z)")
```
"""


class TestRenderMarkdown:
    """Markdown 片段轉換。"""

    def test_table_and_headings(self):
        html = render_markdown(SAMPLE)
        assert "<table>" in html
        assert "上三角提升 υ" in html
        assert 'id="分解"' in html or "<h2" in html

    def test_mermaid_block_kept(self):
        html = render_markdown(SAMPLE)
        assert '<pre class="mermaid">' in html
        assert "flowchart LR" in html

    def test_other_code_blocks_highlighted_normally(self):
        html = render_markdown(SAMPLE)
        assert "<code" in html
        assert 'print' in html


class TestHtmlDocument:
    """HTML 骨架。"""

    def test_full_document(self):
        doc = create_full_html_doc("lgt53", "<p>內容</p>")
        assert doc.startswith("<!DOCTYPE html>")
        assert "<title>lgt53</title>" in doc
        assert MERMAID_CDN in doc
        assert "<p>內容</p>" in doc


class TestConvertFile:
    """檔案轉換。"""

    def test_default_output_path(self, tmp_path):
        md_path = tmp_path / "report.md"
        md_path.write_text(SAMPLE, encoding="utf-8")
        out = convert_markdown_to_html(str(md_path))
        assert out == str(tmp_path / "report.html")
        with open(out, encoding="utf-8") as f:
            html = f.read()
        assert "<title>report</title>" in html
        assert "提升分解報表" in html

    def test_explicit_output_path(self, tmp_path):
        md_path = tmp_path / "a.md"
        md_path.write_text("# 標題\n", encoding="utf-8")
        target = tmp_path / "out" / "b.html"
        os.makedirs(target.parent)
        assert convert_markdown_to_html(str(md_path), str(target)) == str(target)
        assert target.exists()

    def test_empty_file(self, tmp_path):
        md_path = tmp_path / "empty.md"
        md_path.write_text("", encoding="utf-8")
        out = convert_markdown_to_html(str(md_path))
        assert os.path.getsize(out) > 0

    def test_missing_input(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            convert_markdown_to_html(str(tmp_path / "missing.md"))


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
