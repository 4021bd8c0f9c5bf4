#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
例外類別模組 (errors.py)

所有函式庫層級的錯誤都繼承自 `LiftingError`，並帶有一個固定的 `code` 屬性，
命令列介面會把它輸出成機器可讀的錯誤物件。

函式庫程式只負責拋出例外，不會自行印出訊息或結束程式；
訊息的呈現與結束代碼統一交給 `main.py` 處理。
"""


class LiftingError(Exception):
    """所有提升分解相關錯誤的共同基底類別。"""

    code = "lifting"

    def __init__(self, message: str, **details):
        super().__init__(message)
        self.message = message
        # 額外的診斷資訊，例如出錯的矩陣元素或步驟索引
        self.details = details

    def to_dict(self) -> dict:
        """轉成可序列化為 JSON 的錯誤物件。"""
        payload = {"error": self.code, "message": self.message}
        if self.details:
            payload["details"] = {k: str(v) for k, v in self.details.items()}
        return payload


class RationalError(LiftingError, ValueError):
    """有理數文字格式錯誤，或除以零。"""

    code = "rational"


class PolyError(LiftingError, ValueError):
    """多項式運算的參數不合法（例如對零多項式求最低次方）。"""

    code = "poly"


class PolyDivisionError(PolyError, ZeroDivisionError):
    """以零多項式作為除數。"""

    code = "zero-divisor"


class SgdaPreconditionError(PolyError):
    """SGDA 的前置條件不成立（M > 0 但除數常數項為 0）。"""

    code = "sgda-precondition"


class LdeError(LiftingError, ValueError):
    """線性丟番圖方程式的參數不合法。"""

    code = "lde"


class LdeUnsolvableError(LdeError):
    """gcd(a, b) 不整除 c，方程式無解。"""

    code = "lde-unsolvable"


class NotPerfectReconstructionError(LiftingError, ValueError):
    """行列式不是非零單項式，矩陣不具備 FIR 完美重建性質。"""

    code = "not-pr"


class CcaStepError(LiftingError, ValueError):
    """CCA 單一步驟無法執行（樞紐為零、前置條件不成立等）。"""

    code = "cca-step"


class NotTerminalError(CcaStepError):
    """矩陣尚未到達終止狀態（沒有任何零元素）。"""

    code = "not-terminal"


class StrategyError(LiftingError, ValueError):
    """策略字串語法錯誤，或策略與分解過程不相符。"""

    code = "strategy"


class EeaError(LiftingError, ValueError):
    """因果 EEA 路徑無法完成。"""

    code = "eea"


class ReconstructionMismatchError(LiftingError):
    """重建結果與預期不符，`diff` 記錄第一個不一致的位置。"""

    code = "mismatch"

    def __init__(self, message: str, diff: dict | None = None, **details):
        super().__init__(message, **details)
        self.diff = diff or {}

    def to_dict(self) -> dict:
        payload = super().to_dict()
        if self.diff:
            payload["diff"] = {k: str(v) for k, v in self.diff.items()}
        return payload


class CorpusError(LiftingError, ValueError):
    """語料庫檔案不存在或格式錯誤。"""

    code = "corpus"
