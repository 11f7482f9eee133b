"""
論理式（Formula）と帰結（Consecution）のデータモデル
"""
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import List, Set, Tuple

from logic_workbench.errors import LanguageError


class LogicId(str, Enum):
    """判定対象の論理"""

    FUNDAMENTAL = "fundamental"
    ORTHO = "ortho"
    INTUITIONISTIC = "intuitionistic"
    CLASSICAL = "classical"
    FUNDAMENTAL_MODAL = "fundamental-modal"

    @property
    def modal(self) -> bool:
        """□, ◇, ⊥, ⊤ を言語に含むか"""
        return self is LogicId.FUNDAMENTAL_MODAL


@dataclass(frozen=True)
class Formula:
    """論理式の基底クラス（不変）"""

    def __str__(self) -> str:
        return render(self)


@dataclass(frozen=True)
class Atom(Formula):
    name: str


@dataclass(frozen=True)
class Bot(Formula):
    pass


@dataclass(frozen=True)
class Top(Formula):
    pass


@dataclass(frozen=True)
class Neg(Formula):
    sub: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Box(Formula):
    sub: Formula


@dataclass(frozen=True)
class Dia(Formula):
    sub: Formula


BOT = Bot()
TOP = Top()

UNARY = (Neg, Box, Dia)
BINARY = (And, Or)
_UNARY_SYMBOL = {Neg: "~", Box: "[]", Dia: "<>"}
_BINARY_SYMBOL = {And: "&", Or: "|"}
# 結合の強さ（大きいほど強い）
_PRECEDENCE = {Or: 1, And: 2, Neg: 3, Box: 3, Dia: 3}


def _precedence(f: Formula) -> int:
    return _PRECEDENCE.get(type(f), 4)


def _wrap(f: Formula, minimum: int) -> str:
    text = render(f)
    return f"({text})" if _precedence(f) < minimum else text


@lru_cache(maxsize=65536)
def render(f: Formula) -> str:
    """
    最小限の括弧で具象構文に変換

    二項演算子は左結合なので、右の子が同じ優先度なら括弧を付ける。

    Args:
        f: 論理式

    Returns:
        parse で元の AST に戻る文字列
    """
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Bot):
        return "_|_"
    if isinstance(f, Top):
        return "T"
    if isinstance(f, UNARY):
        return _UNARY_SYMBOL[type(f)] + _wrap(f.sub, 3)
    prec = _PRECEDENCE[type(f)]
    return f"{_wrap(f.left, prec)} {_BINARY_SYMBOL[type(f)]} {_wrap(f.right, prec + 1)}"


def children(f: Formula) -> Tuple[Formula, ...]:
    """直下の部分式"""
    if isinstance(f, UNARY):
        return (f.sub,)
    if isinstance(f, BINARY):
        return (f.left, f.right)
    return ()


@lru_cache(maxsize=65536)
def size(f: Formula) -> int:
    """ノード数"""
    return 1 + sum(size(c) for c in children(f))


def formula_key(f: Formula) -> Tuple[int, str]:
    """探索順序のキー（サイズ、表示文字列）"""
    return (size(f), render(f))


def subformulas(f: Formula) -> Set[Formula]:
    """
    全部分式の集合（f 自身を含む）

    Args:
        f: 論理式

    Returns:
        部分式の集合
    """
    result: Set[Formula] = set()
    stack = [f]
    while stack:
        g = stack.pop()
        if g in result:
            continue
        result.add(g)
        stack.extend(children(g))
    return result


def atoms(f: Formula) -> List[str]:
    """原子式の名前（辞書順）"""
    return sorted({g.name for g in subformulas(f) if isinstance(g, Atom)})


def is_propositional(f: Formula) -> bool:
    """命題言語 ℒ（⊥, ⊤, □, ◇ を含まない）の式か"""
    return not any(isinstance(g, (Bot, Top, Box, Dia)) for g in subformulas(f))


def check_language(f: Formula, logic: LogicId) -> None:
    """
    論理式が論理の言語に属するか確認

    Raises:
        LanguageError: 様相言語でない論理に □, ◇, ⊥, ⊤ が現れた場合
    """
    if not logic.modal and not is_propositional(f):
        raise LanguageError(f"{render(f)} は {logic.value} の言語に含まれません（□, ◇, ⊥, ⊤ は様相論理のみ）")


@dataclass(frozen=True)
class Consecution:
    """
    帰結 φ ⊢ ψ

    Attributes:
        lhs: 前件
        rhs: 後件
        logic: 対象の論理
    """

    lhs: Formula
    rhs: Formula
    logic: LogicId = LogicId.FUNDAMENTAL

    def __post_init__(self):
        check_language(self.lhs, self.logic)
        check_language(self.rhs, self.logic)

    def __str__(self) -> str:
        return f"{render(self.lhs)} |- {render(self.rhs)}"

    def atoms(self) -> List[str]:
        return sorted(set(atoms(self.lhs)) | set(atoms(self.rhs)))

    def to_dict(self) -> dict:
        """辞書形式に変換"""
        return {"lhs": render(self.lhs), "rhs": render(self.rhs), "logic": self.logic.value}
