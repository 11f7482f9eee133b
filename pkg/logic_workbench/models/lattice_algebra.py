"""
有限有界束と単項演算 ¬, □, ◇ の表（LatticeAlgebra）のデータモデル
"""
from dataclasses import dataclass, replace
from functools import cached_property
from typing import Iterable, List, Optional, Sequence, Tuple

from logic_workbench.errors import LatticeDefect, ModelError

Table = Tuple[int, ...]


@dataclass(frozen=True)
class LatticeAlgebra:
    """
    有限有界束 (L, ≤) と単項演算の表

    Attributes:
        elements: 要素名（添字が要素）
        leq: 順序行列 leq[i][j] は i ≤ j
        neg: ¬ の表（添字の配列）
        box: □ の表
        dia: ◇ の表
    """

    elements: Tuple[str, ...]
    leq: Tuple[Tuple[bool, ...], ...]
    neg: Optional[Table] = None
    box: Optional[Table] = None
    dia: Optional[Table] = None

    @property
    def size(self) -> int:
        return len(self.elements)

    def name(self, i: int) -> str:
        return self.elements[i]

    def index(self, name: str) -> int:
        try:
            return self.elements.index(name)
        except ValueError:
            raise ModelError(f"未知の要素です: {name}") from None

    def le(self, a: int, b: int) -> bool:
        return self.leq[a][b]

    def find_defect(self) -> Optional[Tuple[str, Tuple[str, ...]]]:
        """
        束として最初に見つかった欠陥

        Returns:
            (欠陥の種類, 関係する要素名) または None
        """
        n = self.size
        if n == 0:
            return ("empty", ())
        if len(self.leq) != n or any(len(row) != n for row in self.leq):
            return ("leq_not_square", ())
        for label, table in (("neg", self.neg), ("box", self.box), ("dia", self.dia)):
            if table is not None:
                if len(table) != n:
                    return (f"{label}_not_total", ())
                for i, v in enumerate(table):
                    if not 0 <= v < n:
                        return (f"{label}_out_of_range", (self.name(i),))
        le, name = self.le, self.name
        for a in range(n):
            if not le(a, a):
                return ("not_reflexive", (name(a),))
        for a in range(n):
            for b in range(n):
                if a != b and le(a, b) and le(b, a):
                    return ("not_antisymmetric", (name(a), name(b)))
                for c in range(n):
                    if le(a, b) and le(b, c) and not le(a, c):
                        return ("not_transitive", (name(a), name(b), name(c)))
        if not any(all(le(a, b) for b in range(n)) for a in range(n)):
            return ("no_bottom", ())
        if not any(all(le(b, a) for b in range(n)) for a in range(n)):
            return ("no_top", ())
        for a in range(n):
            for b in range(a + 1, n):
                if self._least_upper(a, b) is None:
                    return ("no_join", (name(a), name(b)))
                if self._greatest_lower(a, b) is None:
                    return ("no_meet", (name(a), name(b)))
        return None

    def _least_upper(self, a: int, b: int) -> Optional[int]:
        uppers = [c for c in range(self.size) if self.le(a, c) and self.le(b, c)]
        for c in uppers:
            if all(self.le(c, d) for d in uppers):
                return c
        return None

    def _greatest_lower(self, a: int, b: int) -> Optional[int]:
        lowers = [c for c in range(self.size) if self.le(c, a) and self.le(c, b)]
        for c in lowers:
            if all(self.le(d, c) for d in lowers):
                return c
        return None

    @cached_property
    def tables(self) -> Tuple[Tuple[Table, ...], Tuple[Table, ...], int, int]:
        """
        (meet 表, join 表, 0, 1)

        Raises:
            LatticeDefect: 束でない場合
        """
        defect = self.find_defect()
        if defect is not None:
            raise LatticeDefect(*defect)
        n = self.size
        meet = tuple(tuple(self._greatest_lower(a, b) for b in range(n)) for a in range(n))
        join = tuple(tuple(self._least_upper(a, b) for b in range(n)) for a in range(n))
        bottom = next(a for a in range(n) if all(self.le(a, b) for b in range(n)))
        top = next(a for a in range(n) if all(self.le(b, a) for b in range(n)))
        return meet, join, bottom, top

    @property
    def bottom(self) -> int:
        return self.tables[2]

    @property
    def top(self) -> int:
        return self.tables[3]

    def meet(self, a: int, b: int) -> int:
        return self.tables[0][a][b]

    def join(self, a: int, b: int) -> int:
        return self.tables[1][a][b]

    def meet_all(self, items: Iterable[int]) -> int:
        result = self.top
        for a in items:
            result = self.meet(result, a)
        return result

    def join_all(self, items: Iterable[int]) -> int:
        result = self.bottom
        for a in items:
            result = self.join(result, a)
        return result

    def require_lattice(self) -> None:
        """
        束であることを確認（meet/join 表をここで計算してキャッシュする）

        Raises:
            LatticeDefect: 束でない場合
        """
        _ = self.tables

    def require(self, *tables: str) -> None:
        """
        必要な演算表があるか確認

        Raises:
            LatticeDefect: 表がない場合
        """
        for label in tables:
            if getattr(self, label) is None:
                raise LatticeDefect(f"missing_{label}_table")

    def with_tables(self, neg: Optional[Sequence[int]] = None, box: Optional[Sequence[int]] = None,
                    dia: Optional[Sequence[int]] = None) -> "LatticeAlgebra":
        """演算表を差し替えた束"""
        return replace(
            self,
            neg=tuple(neg) if neg is not None else self.neg,
            box=tuple(box) if box is not None else self.box,
            dia=tuple(dia) if dia is not None else self.dia,
        )

    def to_dict(self) -> dict:
        """辞書形式に変換（JSON 形式）"""
        n = self.size
        data = {
            "elements": list(self.elements),
            "leq": [[a, b] for a in range(n) for b in range(n) if a != b and self.le(a, b)],
        }
        for label in ("neg", "box", "dia"):
            if getattr(self, label) is not None:
                data[label] = list(getattr(self, label))
        return data

    @classmethod
    def from_dict(cls, data: dict) -> "LatticeAlgebra":
        """
        辞書から生成

        "leq" の対は反射推移閉包をとってから順序行列にする。
        """
        try:
            elements = tuple(str(e) for e in data["elements"])
            pairs = [(int(a), int(b)) for a, b in data.get("leq", [])]
            tables = {label: tuple(int(v) for v in data[label]) if data.get(label) is not None else None
                      for label in ("neg", "box", "dia")}
        except (KeyError, TypeError, ValueError) as exc:
            raise ModelError("束 JSON が不正です", str(exc)) from None
        n = len(elements)
        for a, b in pairs:
            if not (0 <= a < n and 0 <= b < n):
                raise ModelError("leq の添字が範囲外です", f"({a}, {b})")
        return cls(elements, reflexive_transitive_closure(n, pairs), **tables)


def reflexive_transitive_closure(n: int, pairs: Iterable[Tuple[int, int]]) -> Tuple[Tuple[bool, ...], ...]:
    """対の集合から順序行列を作る（Warshall 法）"""
    matrix: List[List[bool]] = [[a == b for b in range(n)] for a in range(n)]
    for a, b in pairs:
        matrix[a][b] = True
    for k in range(n):
        for a in range(n):
            if matrix[a][k]:
                for b in range(n):
                    if matrix[k][b]:
                        matrix[a][b] = True
    return tuple(tuple(row) for row in matrix)
