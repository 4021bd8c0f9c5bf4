#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
Markdown 到 HTML 轉換工具 (markdown2html.py)

把 `report.py` 產生的分解報表轉成單一、可離線閱讀的 HTML 檔案。

主要功能：
- `render_markdown()`: 以 python-markdown 轉換，啟用 tables、toc、sane_lists，
  並以 `pymdownx.superfences` 把 ```mermaid 區塊保留給前端的 Mermaid.js 繪製。
- `create_full_html_doc()`: 包上 HTML 骨架、閱讀用的 CSS 與 Mermaid.js。
- `convert_markdown_to_html()`: 讀檔、轉換、寫檔，傳回輸出路徑。

命令列：
```bash
python markdown2html.py reports/lgt53_202401011200.md
```
"""

import argparse
import logging
import os
import sys

from markdown import markdown

logger = logging.getLogger(__name__)

MARKDOWN_EXTENSIONS = [
    "tables",
    "toc",
    "sane_lists",
    "pymdownx.superfences",
]

MERMAID_CDN = "https://cdn.jsdelivr.net/npm/mermaid/dist/mermaid.min.js"

STYLE = """
        body {
            font-family: -apple-system, BlinkMacSystemFont, "Segoe UI", Roboto, Arial, sans-serif;
            line-height: 1.6;
            color: #333;
            max-width: 1100px;
            margin: 20px auto;
            padding: 0 20px;
        }
        h1, h2 { border-bottom: 1px solid #eee; padding-bottom: 0.3em; }
        code {
            background-color: #f4f4f4;
            padding: 2px 4px;
            border-radius: 4px;
            font-family: "Courier New", Courier, monospace;
            white-space: nowrap;
        }
        pre:not(.mermaid) { background-color: #f4f4f4; padding: 1rem; overflow-x: auto; }
        pre.mermaid { text-align: center; }
        table { border-collapse: collapse; margin: 1em 0; font-size: 0.9em; }
        th, td { border: 1px solid #ddd; padding: 6px 10px; text-align: left; }
        th { background-color: #f2f2f2; }
        tr:nth-child(even) { background-color: #f9f9f9; }
        img { max-width: 100%; height: auto; }
"""


def _mermaid_fence(source, language, css_class, options, md, **kwargs):
    # 原樣保留，交給 Mermaid.js 在瀏覽器端繪製
    return f'<pre class="{css_class}">{source}</pre>'


def render_markdown(text: str) -> str:
    """Markdown 文字轉成 HTML 片段。"""
    extension_configs = {
        "pymdownx.superfences": {
            "custom_fences": [
                {"name": "mermaid", "class": "mermaid", "format": _mermaid_fence},
            ]
        }
    }
    return markdown(text, extensions=MARKDOWN_EXTENSIONS, extension_configs=extension_configs)


def create_full_html_doc(title: str, body_content: str) -> str:
    """
    建立完整的 HTML 文件。

    Args:
        title (str): `<title>` 內容。
        body_content (str): `<body>` 內的 HTML 片段。

    Returns:
        str: 完整的 HTML 文件。
    """
    return f"""<!DOCTYPE html>
<html lang="zh-TW">
<head>
    <meta charset="UTF-8">
    <meta name="viewport" content="width=device-width, initial-scale=1.0">
    <title>{title}</title>
    <style>{STYLE}    </style>
</head>
<body>
{body_content}
<script src="{MERMAID_CDN}"></script>
<script>
    mermaid.initialize({{ startOnLoad: true, theme: 'default' }});
</script>
</body>
</html>"""


def convert_markdown_to_html(input_path: str, output_path: str | None = None) -> str:
    """
    將 Markdown 檔案轉換為 HTML 檔案。

    Args:
        input_path (str): Markdown 檔案路徑。
        output_path (str | None): 輸出路徑，預設為同檔名的 .html。

    Returns:
        str: 實際寫入的 HTML 路徑。

    Raises:
        FileNotFoundError: 找不到輸入檔案。
    """
    if not os.path.exists(input_path):
        raise FileNotFoundError(f"找不到輸入檔案 '{input_path}'")

    base_name = os.path.splitext(input_path)[0]
    if output_path is None:
        output_path = f"{base_name}.html"

    logger.debug("convert %s -> %s", input_path, output_path)
    with open(input_path, "r", encoding="utf-8") as f_in:
        html_fragment = render_markdown(f_in.read())

    full_html = create_full_html_doc(os.path.basename(base_name), html_fragment)
    with open(output_path, "w", encoding="utf-8") as f_out:
        f_out.write(full_html)
    return output_path


if __name__ == "__main__":
    parser = argparse.ArgumentParser(
        description="將分解報表 Markdown（含 Mermaid 圖）轉換為單一 HTML 檔案。",
        epilog="範例: python markdown2html.py reports/lgt53.md reports/lgt53.html",
    )
    parser.add_argument("input_file", help="要轉換的 Markdown 檔案路徑。")
    parser.add_argument("output_file", nargs="?", default=None, help="輸出的 HTML 檔案路徑（可選）。")
    args = parser.parse_args()

    try:
        path = convert_markdown_to_html(args.input_file, args.output_file)
        print(f"✅ 轉換成功: {path}")
    except Exception as e:
        print(f"❌ 轉換過程中發生錯誤：{e}", file=sys.stderr)
        sys.exit(1)
