"""
ワークベンチ共通の例外
"""
from typing import FrozenSet, Optional, Tuple


class WorkbenchError(Exception):
    """ワークベンチの全エラーの基底クラス"""


class FormulaSyntaxError(WorkbenchError):
    """
    論理式の構文エラー

    Attributes:
        offset: 入力先頭からのバイトオフセット
        expected: その位置で期待されたトークンの集合
    """

    def __init__(self, text: str, offset: int, expected: FrozenSet[str]):
        self.text = text
        self.offset = offset
        self.expected = expected
        super().__init__(
            f"構文エラー: オフセット {offset} で {', '.join(sorted(expected))} のいずれかが必要です"
        )


class LanguageError(WorkbenchError):
    """論理の言語に含まれない結合子が使われた"""


class LatticeDefect(WorkbenchError):
    """束の定義に欠陥がある"""

    def __init__(self, defect: str, witness: Tuple = ()):
        self.defect = defect
        self.witness = witness
        super().__init__(f"束の欠陥: {defect} {witness}")


class PreconditionError(WorkbenchError):
    """表現定理の前提条件を満たさない"""

    def __init__(self, report):
        self.report = report
        super().__init__(f"前提条件違反: {report.property} (witness={report.witness})")


class CapExceededError(WorkbenchError):
    """設定された上限を超えた"""

    def __init__(self, what: str, limit: int, actual: int):
        self.limit = limit
        self.actual = actual
        super().__init__(f"{what} が上限を超えています: {actual} > {limit}")


class UnboundAtomError(WorkbenchError):
    """付値に含まれない原子式"""

    def __init__(self, atom: str):
        self.atom = atom
        super().__init__(f"付値に原子式 {atom} がありません")


class ModelError(WorkbenchError):
    """フレーム・付値・束の入力が不正"""

    def __init__(self, message: str, detail: Optional[str] = None):
        self.detail = detail
        super().__init__(message if detail is None else f"{message}: {detail}")
