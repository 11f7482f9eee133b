"""
関係フレーム（ModalFrame）と反例モデル（CounterModel）のデータモデル
"""
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from logic_workbench.errors import ModelError
from logic_workbench.utils.bits import StateSet, full_mask, iter_bits, mask_of

Pair = Tuple[int, int]


class FrameClass(Enum):
    """健全性の成り立つフレームクラス（満たすべき条件の組）"""

    RELATIONAL = ("pseudo_reflexive", "pseudo_symmetric")
    ORTHO = ("reflexive", "symmetric")
    MODAL = ("unified", "modal_frame", "additive", "pseudo_reflexive", "pseudo_symmetric")

    @property
    def conditions(self) -> Tuple[str, ...]:
        return self.value

    @property
    def is_modal(self) -> bool:
        return self is FrameClass.MODAL


@dataclass(frozen=True)
class ModalFrame:
    """
    有限フレーム (X, ◁, R, Q)

    Attributes:
        states: 状態名（添字が状態）
        open_rel: ◁ の対 (x, y) は x◁y（x は y に開いている）
        acc_r: □ の到達関係 R
        acc_q: ◇ の到達関係 Q
    """

    states: Tuple[str, ...]
    open_rel: FrozenSet[Pair] = frozenset()
    acc_r: FrozenSet[Pair] = frozenset()
    acc_q: FrozenSet[Pair] = frozenset()

    def __post_init__(self):
        if not self.states:
            raise ModelError("フレームには少なくとも一つの状態が必要です")
        n = len(self.states)
        for name, rel in (("open", self.open_rel), ("R", self.acc_r), ("Q", self.acc_q)):
            for x, y in rel:
                if not (0 <= x < n and 0 <= y < n):
                    raise ModelError(f"関係 {name} の添字が範囲外です", f"({x}, {y})")

    @property
    def size(self) -> int:
        return len(self.states)

    @property
    def universe(self) -> StateSet:
        return full_mask(self.size)

    @property
    def is_modal(self) -> bool:
        return bool(self.acc_r or self.acc_q)

    @property
    def is_unified(self) -> bool:
        return self.acc_r == self.acc_q

    # ビットマスク表（初回アクセス時に計算）
    @cached_property
    def open_to(self) -> Tuple[StateSet, ...]:
        """open_to[x] = {y : y◁x}"""
        table = [0] * self.size
        for y, x in self.open_rel:
            table[x] |= 1 << y
        return tuple(table)

    @cached_property
    def opens(self) -> Tuple[StateSet, ...]:
        """opens[y] = {z : y◁z}"""
        table = [0] * self.size
        for y, z in self.open_rel:
            table[y] |= 1 << z
        return tuple(table)

    @cached_property
    def r_succ(self) -> Tuple[StateSet, ...]:
        """R(x)"""
        return _successors(self.size, self.acc_r)

    @cached_property
    def q_succ(self) -> Tuple[StateSet, ...]:
        """Q(x)"""
        return _successors(self.size, self.acc_q)

    @cached_property
    def absurd(self) -> StateSet:
        """◁-前者を持たない状態（⊥ を強制する状態）"""
        return mask_of(x for x in range(self.size) if not self.open_to[x])

    def relational(self) -> "ModalFrame":
        """R, Q を落とした関係フレーム"""
        return ModalFrame(self.states, self.open_rel)

    def state_names(self, mask: StateSet) -> List[str]:
        return [self.states[i] for i in iter_bits(mask)]

    def mask_from_names(self, names: Sequence[str]) -> StateSet:
        index = {name: i for i, name in enumerate(self.states)}
        try:
            return mask_of(index[name] for name in names)
        except KeyError as exc:
            raise ModelError("未知の状態名です", str(exc)) from None

    def to_dict(self) -> dict:
        """辞書形式に変換（JSON 形式）"""
        data = {"states": list(self.states), "open": sorted([x, y] for x, y in self.open_rel)}
        if self.is_modal:
            data["R"] = sorted([x, y] for x, y in self.acc_r)
            if not self.is_unified:
                data["Q"] = sorted([x, y] for x, y in self.acc_q)
        return data

    @classmethod
    def from_dict(cls, data: dict) -> "ModalFrame":
        """
        辞書から生成

        "Q" がなければ Q := R、"R" もなければ様相なしのフレーム。
        """
        try:
            states = tuple(str(s) for s in data["states"])
            open_rel = frozenset((int(x), int(y)) for x, y in data.get("open", []))
            acc_r = frozenset((int(x), int(y)) for x, y in data.get("R", []))
            acc_q = frozenset((int(x), int(y)) for x, y in data["Q"]) if "Q" in data else acc_r
        except (KeyError, TypeError, ValueError) as exc:
            raise ModelError("フレーム JSON が不正です", str(exc)) from None
        return cls(states, open_rel, acc_r, acc_q)

    @classmethod
    def from_masks(
        cls,
        n: int,
        open_to: Sequence[StateSet],
        r_succ: Optional[Sequence[StateSet]] = None,
        q_succ: Optional[Sequence[StateSet]] = None,
    ) -> "ModalFrame":
        """open_to[x] = {y : y◁x} と後続集合の表から生成"""
        open_rel = frozenset((y, x) for x in range(n) for y in iter_bits(open_to[x]))
        acc_r = _pairs_from_succ(r_succ) if r_succ is not None else frozenset()
        acc_q = _pairs_from_succ(q_succ) if q_succ is not None else acc_r
        return cls(tuple(f"s{i}" for i in range(n)), open_rel, acc_r, acc_q)


def _successors(n: int, rel: FrozenSet[Pair]) -> Tuple[StateSet, ...]:
    table = [0] * n
    for x, y in rel:
        table[x] |= 1 << y
    return tuple(table)


def _pairs_from_succ(succ: Sequence[StateSet]) -> FrozenSet[Pair]:
    return frozenset((x, y) for x, mask in enumerate(succ) for y in iter_bits(mask))


@dataclass(frozen=True)
class CounterModel:
    """
    反例モデル

    Attributes:
        frame: フレーム
        valuation: 原子式 → 不動点（状態集合）
        witness: 前件を強制し後件を強制しない状態
    """

    frame: ModalFrame
    valuation: Dict[str, StateSet] = field(default_factory=dict)
    witness: int = 0

    def __hash__(self):
        return hash((self.frame, tuple(sorted(self.valuation.items())), self.witness))

    def to_dict(self) -> dict:
        """辞書形式に変換"""
        return {
            "frame": self.frame.to_dict(),
            "valuation": {atom: self.frame.state_names(mask) for atom, mask in sorted(self.valuation.items())},
            "witness": self.frame.states[self.witness],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "CounterModel":
        """
        辞書から生成

        Raises:
            ModelError: "frame" がない、または状態名が不正な場合
        """
        if not isinstance(data, dict) or "frame" not in data:
            raise ModelError("モデル JSON には \"frame\" が必要です")
        frame = ModalFrame.from_dict(data["frame"])
        try:
            valuation = {str(atom): frame.mask_from_names(names) for atom, names in data.get("valuation", {}).items()}
            witness = frame.states.index(data["witness"]) if "witness" in data else 0
        except (AttributeError, TypeError, ValueError) as exc:
            raise ModelError("モデル JSON が不正です", str(exc)) from None
        return cls(frame, valuation, witness)
