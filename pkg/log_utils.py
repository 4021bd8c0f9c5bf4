#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
日誌工具模組 (log_utils.py)

函式庫模組各自使用 `logging.getLogger(__name__)`；
由 `main.py` 在啟動時呼叫 `initialize_logger()` 設定輸出目的地與等級。
"""

import logging

DEFAULT_FORMAT = "%(asctime)s - %(levelname)s - %(message)s"


def initialize_logger(
    log_level=logging.WARNING,
    log_filename: str | None = None,
    propagate: bool = False,
    scope: str | None = None,
    formatter: str = DEFAULT_FORMAT,
) -> logging.Logger:
    """
    設定主控台（stderr）與選用的檔案輸出。

    Args:
        log_level: logging 等級，可以是整數或 "DEBUG" 之類的名稱。
        log_filename (str | None): 檔案名稱，沒有 .log 副檔名時自動補上。
        propagate (bool): 是否傳遞給上層 logger。
        scope (str | None): logger 名稱，None 表示 root。
        formatter (str): 訊息格式；DEBUG 模式會在前面加上模組名稱。

    Returns:
        logging.Logger: 設定好的 logger。
    """
    if isinstance(log_level, str):
        log_level = logging.getLevelName(log_level.upper())
        if not isinstance(log_level, int):
            log_level = logging.WARNING

    # DEBUG 時加上來源模組，方便分辨 poly / factor / bank 的訊息
    if log_level == logging.DEBUG:
        formatter = f"[%(name)s] {formatter}"

    logger = logging.getLogger(scope)
    logger.setLevel(log_level)
    logger.propagate = propagate

    # 重複呼叫時不要疊加 handler
    for handler in list(logger.handlers):
        if getattr(handler, "_liftcausal", False):
            logger.removeHandler(handler)
            handler.close()

    console_handler = logging.StreamHandler()
    console_handler.setLevel(log_level)
    console_handler.setFormatter(logging.Formatter(formatter))
    console_handler._liftcausal = True
    logger.addHandler(console_handler)

    if log_filename is not None:
        if not log_filename.endswith(".log"):
            log_filename = log_filename + ".log"
        file_handler = logging.FileHandler(log_filename, "w", encoding="utf-8", delay=True)
        file_handler.setLevel(log_level)
        file_handler.setFormatter(logging.Formatter(formatter))
        file_handler._liftcausal = True
        logger.addHandler(file_handler)

    return logger
