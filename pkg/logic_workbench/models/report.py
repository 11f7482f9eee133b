"""
検査結果（性質・フレーム条件・埋め込み）のデータモデル
"""
from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple


@dataclass(frozen=True)
class PropertyReport:
    """
    性質の検査結果

    Attributes:
        property: 性質名（束の性質、公理名、フレーム条件名）
        holds: 成り立つか
        witness: 成り立たない場合の反例（要素名・状態名の組）
        chain: 公理の反例を等式・不等式の連鎖で示した文字列
    """

    property: str
    holds: bool
    witness: Optional[Tuple[str, ...]] = None
    chain: Optional[str] = None

    def __post_init__(self):
        if self.holds != (self.witness is None):
            raise ValueError("witness は holds が False のときだけ必要です")

    def __bool__(self) -> bool:
        return self.holds

    def to_dict(self) -> dict:
        """辞書形式に変換"""
        data = {"property": self.property, "holds": self.holds}
        if self.witness is not None:
            data["witness"] = list(self.witness)
        if self.chain is not None:
            data["chain"] = self.chain
        return data

    @classmethod
    def ok(cls, name: str) -> "PropertyReport":
        return cls(name, True)

    @classmethod
    def fail(cls, name: str, *witness: str, chain: Optional[str] = None) -> "PropertyReport":
        return cls(name, False, tuple(witness), chain)


@dataclass
class MorphismReport:
    """
    束から不動点束への写像 f の検査結果

    Attributes:
        flavor: 構成の種類（pairs / unified / filter-ideal）
        injective: 単射か
        surjective: 不動点全体への全射か
        preserves: 演算ごとの保存結果
    """

    flavor: str
    injective: PropertyReport
    surjective: PropertyReport
    preserves: Dict[str, PropertyReport] = field(default_factory=dict)

    @property
    def is_isomorphism(self) -> bool:
        return bool(self.injective and self.surjective and all(self.preserves.values()))

    def to_dict(self) -> dict:
        """辞書形式に変換"""
        return {
            "flavor": self.flavor,
            "isomorphism": self.is_isomorphism,
            "injective": self.injective.to_dict(),
            "surjective": self.surjective.to_dict(),
            "preserves": {name: report.to_dict() for name, report in self.preserves.items()},
        }
