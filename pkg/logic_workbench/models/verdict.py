"""
判定結果（Verdict）と証明の記録（RuleInstance）のデータモデル
"""
from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple, Union

from logic_workbench.config.settings import MAX_MODELS, MAX_STATES, MAX_STEPS, MAX_UNIVERSE
from logic_workbench.models.formula import Consecution
from logic_workbench.models.frame import CounterModel


@dataclass(frozen=True)
class RuleInstance:
    """
    推論規則の適用一回分

    Attributes:
        rule_id: 規則番号 "1".."20" または追加規則のタグ（dne, pc, side, axiom）
        conclusion: 結論
        premises: 前提
    """

    rule_id: str
    conclusion: Consecution
    premises: Tuple[Consecution, ...] = ()


def format_trace(trace: Sequence[RuleInstance]) -> List[str]:
    """
    証明を行指向のテキストにする

    各行は `<id>: <lhs> |- <rhs> FROM <前提の行番号>`。行番号は 0 始まり。
    """
    first_index: Dict[Consecution, int] = {}
    lines = []
    for i, step in enumerate(trace):
        refs = ",".join(str(first_index[p]) for p in step.premises)
        lines.append(f"{step.rule_id}: {step.conclusion} FROM {refs}".rstrip())
        first_index.setdefault(step.conclusion, i)
    return lines


@dataclass(frozen=True)
class SaturationBudget:
    """
    飽和の予算

    Attributes:
        max_universe: 式の集合 U の大きさの上限
        max_steps: 導出する帰結の個数の上限
    """

    max_universe: int = MAX_UNIVERSE
    max_steps: int = MAX_STEPS

    def __post_init__(self):
        if self.max_universe <= 0 or self.max_steps <= 0:
            raise ValueError("予算は正の整数で指定してください")


@dataclass(frozen=True)
class SearchBudget:
    """
    反例探索の予算

    Attributes:
        max_states: フレームの状態数の上限
        max_models: 調べる（フレーム, 付値）の組の上限
    """

    max_states: int = MAX_STATES
    max_models: int = MAX_MODELS

    def __post_init__(self):
        if self.max_states < 1 or self.max_models <= 0:
            raise ValueError("予算は正の整数で指定してください")


@dataclass(frozen=True)
class Proved:
    """証明できた"""

    trace: Tuple[RuleInstance, ...]
    status = "proved"
    exit_code = 0

    def to_dict(self) -> dict:
        """辞書形式に変換"""
        return {"status": self.status, "trace": format_trace(self.trace)}


@dataclass(frozen=True)
class Exhausted:
    """飽和が予算内で目標に届かなかった"""

    stats: Dict[str, object] = field(default_factory=dict)
    status = "exhausted"
    exit_code = 2

    def to_dict(self) -> dict:
        return {"status": self.status, "stats": dict(self.stats)}


@dataclass(frozen=True)
class Refuted:
    """健全なフレームクラスの反例モデルが見つかった"""

    model: CounterModel
    status = "refuted"
    exit_code = 1

    def to_dict(self) -> dict:
        return {"status": self.status, "model": self.model.to_dict()}


@dataclass(frozen=True)
class Unknown:
    """予算内では判定できなかった"""

    report: Dict[str, object] = field(default_factory=dict)
    status = "unknown"
    exit_code = 2

    def to_dict(self) -> dict:
        return {"status": self.status, "report": dict(self.report)}


Verdict = Union[Proved, Refuted, Unknown]
