"""
帰結の判定

証明探索（前向き飽和）と反例探索を交互に実行し、Proved / Refuted / Unknown を返す。
古典論理は真理値表で判定する。
"""
import logging
import random
from itertools import product
from typing import Dict, Mapping, Optional, Sequence

from logic_workbench.analyzers.semantics import FormulaProgram, denotation
from logic_workbench.config.settings import SPOT_CHECK_MODELS
from logic_workbench.errors import LanguageError, ModelError
from logic_workbench.models.formula import And, Atom, Bot, Consecution, Formula, LogicId, Neg, Or, Top, atoms, render
from logic_workbench.models.frame import CounterModel, FrameClass, ModalFrame
from logic_workbench.models.verdict import (
    Exhausted,
    Proved,
    Refuted,
    RuleInstance,
    SaturationBudget,
    SearchBudget,
    Unknown,
    Verdict,
)
from logic_workbench.services.countermodel import CounterModelSearch, sample_models
from logic_workbench.services.fixture_library import unified_seed_frames
from logic_workbench.services.saturation import saturate
from logic_workbench.utils.bits import lowest

logger = logging.getLogger(__name__)

# 最初の段の飽和の予算（小さい U で済む目標を先に片付ける）
QUICK_UNIVERSE = 64
QUICK_STEPS = 20000
# 最初の段の反例探索の状態数
QUICK_STATES = 2

SOUND_CLASSES: Dict[LogicId, FrameClass] = {
    LogicId.FUNDAMENTAL: FrameClass.RELATIONAL,
    LogicId.ORTHO: FrameClass.ORTHO,
    LogicId.FUNDAMENTAL_MODAL: FrameClass.MODAL,
}

# 不動点束が二元ブール代数になる一点フレーム
CLASSICAL_FRAME = ModalFrame(("s0",), frozenset({(0, 0)}))


def sound_frame_class(logic: LogicId) -> Optional[FrameClass]:
    """反例探索に使うフレームクラス（直観主義の断片では None）"""
    return SOUND_CLASSES.get(logic)


# --- 古典論理 -------------------------------------------------------------


def _truth(f: Formula, env: Mapping[str, bool]) -> bool:
    if isinstance(f, Atom):
        return env[f.name]
    if isinstance(f, Neg):
        return not _truth(f.sub, env)
    if isinstance(f, And):
        return _truth(f.left, env) and _truth(f.right, env)
    if isinstance(f, Or):
        return _truth(f.left, env) or _truth(f.right, env)
    if isinstance(f, Top):
        return True
    if isinstance(f, Bot):
        return False
    raise LanguageError(f"真理値表は命題言語の式に限られます: {render(f)}")


def falsifying_assignment(phi: Formula, psi: Formula) -> Optional[Dict[str, bool]]:
    """φ を真、ψ を偽にする最初の付値（辞書順、偽が先）"""
    variables = sorted(set(atoms(phi)) | set(atoms(psi)))
    for values in product((False, True), repeat=len(variables)):
        env = dict(zip(variables, values))
        if _truth(phi, env) and not _truth(psi, env):
            return env
    return None


def classical_entails(phi: Formula, psi: Formula) -> bool:
    """
    φ を満たす全ての二値付値が ψ を満たすか

    Args:
        phi: 前件（命題言語）
        psi: 後件（命題言語）

    Returns:
        古典論理で φ ⊨ ψ なら True
    """
    return falsifying_assignment(phi, psi) is None


def classical_countermodel(goal: Consecution) -> Optional[CounterModel]:
    """偽にする付値を一点反射フレーム上の反例モデルとして返す"""
    env = falsifying_assignment(goal.lhs, goal.rhs)
    if env is None:
        return None
    valuation = {name: CLASSICAL_FRAME.universe if value else 0 for name, value in env.items()}
    return CounterModel(CLASSICAL_FRAME, valuation, 0)


# --- 判定 -----------------------------------------------------------------


class Decider:
    """
    一つの帰結の判定

    段階: 小さい U での飽和 → 2 状態までの反例探索 → 予算いっぱいの飽和
    → 残りの状態数（と種フレーム）での反例探索。
    """

    def __init__(
        self,
        goal: Consecution,
        saturation_budget: Optional[SaturationBudget] = None,
        search_budget: Optional[SearchBudget] = None,
    ):
        self.goal = goal
        self.saturation_budget = saturation_budget or SaturationBudget()
        self.search_budget = search_budget or SearchBudget()
        self.frame_class = sound_frame_class(goal.logic)
        self.searcher: Optional[CounterModelSearch] = None
        if self.frame_class is not None:
            self.searcher = CounterModelSearch(goal, self.frame_class, self.search_budget.max_models)
        self.last_exhausted: Optional[Exhausted] = None

    def _saturate(self, budget: SaturationBudget) -> Optional[Proved]:
        result = saturate(self.goal, budget)
        if isinstance(result, Proved):
            return result
        self.last_exhausted = result
        return None

    def _search(self, min_states: int, max_states: int, seeds: Sequence[ModalFrame] = ()) -> Optional[Refuted]:
        if self.searcher is None or min_states > max_states and not seeds:
            return None
        model = self.searcher.search(min_states, max_states, seeds)
        return Refuted(model) if model is not None else None

    def _unknown(self, **extra) -> Unknown:
        report = {
            "logic": self.goal.logic.value,
            "saturation": dict(self.last_exhausted.stats) if self.last_exhausted else None,
            "countermodel": self.searcher.stats() if self.searcher else None,
        }
        report.update(extra)
        return Unknown(report)

    def run(self) -> Verdict:
        """
        判定を実行

        Returns:
            Proved / Refuted / Unknown のいずれか
        """
        if self.goal.logic is LogicId.CLASSICAL:
            return self._run_classical()
        full = self.saturation_budget
        quick = SaturationBudget(min(QUICK_UNIVERSE, full.max_universe), min(QUICK_STEPS, full.max_steps))
        max_states = self.search_budget.max_states
        seeds = unified_seed_frames() if self.frame_class is FrameClass.MODAL else ()

        # 証明と反例探索を予算の小さい順に交互に実行する。健全なので両方が成功することはなく、
        # 並行に競わせた場合と同じ判定になる
        verdict = self._saturate(quick)
        if verdict is None:
            verdict = self._search(1, min(QUICK_STATES, max_states))
        if verdict is None and quick != full:
            verdict = self._saturate(full)
        if verdict is None:
            verdict = self._search(QUICK_STATES + 1, max_states, seeds)
        if verdict is None:
            verdict = self._unknown(countermodel_search=self.searcher is not None)
        logger.info("decide %s [%s]: %s", self.goal, self.goal.logic.value, verdict.status)
        return verdict

    def _run_classical(self) -> Verdict:
        model = classical_countermodel(self.goal)
        if model is not None:
            return Refuted(model)
        verdict = self._saturate(self.saturation_budget)
        if verdict is not None:
            return verdict
        # 真理値表では成り立つが、予算内で証明が見つからなかった
        return self._unknown(classical_entails=True)


def decide(
    goal: Consecution,
    saturation_budget: Optional[SaturationBudget] = None,
    search_budget: Optional[SearchBudget] = None,
) -> Verdict:
    """
    帰結 φ ⊢ ψ を判定

    Args:
        goal: 帰結
        saturation_budget: 飽和の予算
        search_budget: 反例探索の予算

    Returns:
        Proved（証明つき）、Refuted（健全なクラスの反例モデルつき）、Unknown（統計つき）
    """
    return Decider(goal, saturation_budget, search_budget).run()


def refute(goal: Consecution, search_budget: Optional[SearchBudget] = None) -> Optional[CounterModel]:
    """
    健全なフレームクラスで反例モデルを探す

    直観主義の断片には対応するクラスがないので常に None。
    """
    if goal.logic is LogicId.CLASSICAL:
        return classical_countermodel(goal)
    frame_class = sound_frame_class(goal.logic)
    if frame_class is None:
        logger.info("no countermodel search for %s", goal.logic.value)
        return None
    budget = search_budget or SearchBudget()
    seeds = unified_seed_frames() if frame_class is FrameClass.MODAL else ()
    return CounterModelSearch(goal, frame_class, budget.max_models).search(1, budget.max_states, seeds)


# --- 健全性の確認 ---------------------------------------------------------


def spot_check(
    goal: Consecution,
    count: int = SPOT_CHECK_MODELS,
    rng: Optional[random.Random] = None,
    max_states: Optional[int] = None,
) -> Optional[CounterModel]:
    """
    健全なクラスから無作為に選んだモデルで φ ⊢ ψ が成り立つか確かめる

    Args:
        goal: 帰結（通常は Proved になったもの）
        count: 調べるモデルの数
        rng: 乱数生成器（省略時は固定シード）
        max_states: フレームの状態数の上限

    Returns:
        反例になったモデル（なければ None）

    Raises:
        ModelError: 論理に健全なフレームクラスがない場合
    """
    rng = rng or random.Random(0)
    names = goal.atoms()
    if goal.logic is LogicId.CLASSICAL:
        models = [
            CounterModel(CLASSICAL_FRAME, {name: rng.choice((0, 1)) for name in names}, 0)
            for _ in range(count)
        ]
    else:
        frame_class = sound_frame_class(goal.logic)
        if frame_class is None:
            raise ModelError(f"{goal.logic.value} には健全なフレームクラスがありません")
        kwargs = {} if max_states is None else {"max_states": max_states}
        models = sample_models(frame_class, names, count, rng, **kwargs)
    program = FormulaProgram([goal.lhs, goal.rhs])
    for model in models:
        left, right = program.run(model.frame, [model.valuation[name] for name in program.atoms])
        failing = left & ~right
        if failing:
            return CounterModel(model.frame, model.valuation, lowest(failing))
    return None


def consecution_valid(model: CounterModel, consecution: Consecution) -> bool:
    """モデルの全状態で、前件を強制すれば後件も強制するか"""
    left = denotation(model.frame, model.valuation, consecution.lhs)
    right = denotation(model.frame, model.valuation, consecution.rhs)
    return not left & ~right


def rule_instance_holds(instance: RuleInstance, model: CounterModel) -> bool:
    """
    規則の具体例がモデルで妥当か（前提がすべて妥当なら結論も妥当）

    Raises:
        UnboundAtomError: 付値にない原子式がある場合
    """
    if all(consecution_valid(model, p) for p in instance.premises):
        return consecution_valid(model, instance.conclusion)
    return True
