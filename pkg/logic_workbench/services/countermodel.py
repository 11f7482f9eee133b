"""
有限フレーム上の反例モデル探索

健全なフレームクラスのフレームを状態数の小さい順に列挙し、
原子式に不動点を割り当てる全付値で前件を強制し後件を強制しない状態を探す。
"""
import logging
import random
from functools import lru_cache
from itertools import permutations
from typing import Iterable, List, Optional, Sequence, Tuple

from logic_workbench.analyzers.frame_conditions import (
    additive_failure,
    in_class,
    modal_failure,
    pseudo_reflexive_failure,
    pseudo_symmetric_failure,
    reflexive_failure,
    symmetric_failure,
)
from logic_workbench.analyzers.semantics import FormulaProgram, fixpoints, valuations
from logic_workbench.config.settings import MAX_MODAL_STATES, MAX_MODELS, MAX_STATES
from logic_workbench.errors import CapExceededError
from logic_workbench.models.formula import Consecution
from logic_workbench.models.frame import CounterModel, FrameClass, ModalFrame
from logic_workbench.models.verdict import SearchBudget
from logic_workbench.utils.bits import StateSet, full_mask, lowest

logger = logging.getLogger(__name__)

# ◁ の全列挙は 2^(n²) 通りなので、これを超える状態数は列挙しない
RELATIONAL_STATE_LIMIT = 4

_RAW_CONDITIONS = {
    FrameClass.RELATIONAL: (pseudo_reflexive_failure, pseudo_symmetric_failure),
    FrameClass.ORTHO: (reflexive_failure, symmetric_failure),
}


def state_limit(frame_class: FrameClass) -> int:
    """列挙できる状態数の上限"""
    return min(MAX_MODAL_STATES, RELATIONAL_STATE_LIMIT) if frame_class.is_modal else RELATIONAL_STATE_LIMIT


def _rows(code: int, n: int) -> Tuple[StateSet, ...]:
    row = full_mask(n)
    return tuple((code >> (x * n)) & row for x in range(n))


def _code(rows: Sequence[StateSet], n: int) -> int:
    code = 0
    for x, mask in enumerate(rows):
        code |= mask << (x * n)
    return code


@lru_cache(maxsize=None)
def _permutation_tables(n: int) -> Tuple[Tuple[Tuple[int, ...], Tuple[int, ...]], ...]:
    """置換ごとに (状態の行き先, 行マスクの写し先の表)"""
    tables = []
    for perm in permutations(range(n)):
        image = []
        for mask in range(1 << n):
            mapped = 0
            for y in range(n):
                if mask >> y & 1:
                    mapped |= 1 << perm[y]
            image.append(mapped)
        tables.append((perm, tuple(image)))
    return tuple(tables)


def canonical_code(open_to: Sequence[StateSet], n: int) -> int:
    """状態の付け替えで得られる ◁ の符号のうち最小のもの"""
    best = None
    for perm, image in _permutation_tables(n):
        rows = [0] * n
        for x in range(n):
            rows[perm[x]] = image[open_to[x]]
        code = _code(rows, n)
        if best is None or code < best:
            best = code
    return best


def _relational_frames(frame_class: FrameClass, n: int) -> List[ModalFrame]:
    checks = _RAW_CONDITIONS[frame_class]
    frames = []
    for code in range(1 << (n * n)):
        open_to = _rows(code, n)
        if any(check(n, open_to) is not None for check in checks):
            continue
        # 同型類の代表は符号が最小のもの
        if canonical_code(open_to, n) != code:
            continue
        frames.append(ModalFrame.from_masks(n, open_to))
    return frames


def _modal_frames(n: int) -> List[ModalFrame]:
    frames = []
    for base in enumerate_frames(FrameClass.RELATIONAL, n):
        open_to, opens = base.open_to, base.opens
        for code in range(1 << (n * n)):
            r_succ = _rows(code, n)
            if modal_failure(n, open_to, opens, r_succ) is not None:
                continue
            if additive_failure(n, open_to, opens, r_succ) is not None:
                continue
            frames.append(ModalFrame.from_masks(n, open_to, r_succ))
    return frames


@lru_cache(maxsize=None)
def enumerate_frames(frame_class: FrameClass, n: int) -> Tuple[ModalFrame, ...]:
    """
    フレームクラスに属する n 状態のフレームの一覧

    ◁ は同型を除いた代表（符号の昇順）。様相クラスでは代表ごとに R を全列挙し、Q = R とする。

    Args:
        frame_class: フレームクラス
        n: 状態数

    Returns:
        フレームのタプル（決定的な順序）

    Raises:
        CapExceededError: 列挙できる状態数を超えた場合
    """
    limit = state_limit(frame_class)
    if not 1 <= n <= limit:
        raise CapExceededError("フレーム列挙の状態数", limit, n)
    frames = _modal_frames(n) if frame_class.is_modal else _relational_frames(frame_class, n)
    logger.debug("enumerated %d %s frames on %d states", len(frames), frame_class.name, n)
    return tuple(frames)


class CounterModelSearch:
    """
    一つの帰結に対する反例探索

    Attributes:
        frames_examined: 調べたフレームの数
        models_examined: 調べた（フレーム, 付値）の組の数
        sizes_searched: 列挙し終えた状態数
        budget_hit: max_models に達して打ち切ったか
    """

    def __init__(self, goal: Consecution, frame_class: FrameClass, max_models: int = MAX_MODELS):
        self.goal = goal
        self.frame_class = frame_class
        self.max_models = max_models
        self.program = FormulaProgram([goal.lhs, goal.rhs])
        self.frames_examined = 0
        self.models_examined = 0
        self.sizes_searched: List[int] = []
        self.budget_hit = False

    def search_frame(self, frame: ModalFrame) -> Optional[CounterModel]:
        """一つのフレームの全付値を調べる"""
        algebra = fixpoints(frame)
        self.frames_examined += 1
        names = self.program.atoms
        for values in valuations(algebra, names):
            if self.models_examined >= self.max_models:
                self.budget_hit = True
                return None
            self.models_examined += 1
            left, right = self.program.run(frame, values)
            failing = left & ~right
            if failing:
                return CounterModel(frame, dict(zip(names, values)), lowest(failing))
        return None

    def search(self, min_states: int, max_states: int, seeds: Iterable[ModalFrame] = ()) -> Optional[CounterModel]:
        """
        状態数 min_states..max_states のフレーム、続いて seeds のうちクラスに属するものを調べる

        Returns:
            最初に見つかった反例モデル（なければ None）
        """
        top = min(max_states, state_limit(self.frame_class))
        if top < max_states:
            logger.info("countermodel search for %s clamped to %d states", self.frame_class.name, top)
        for n in range(max(min_states, 1), top + 1):
            for frame in enumerate_frames(self.frame_class, n):
                model = self.search_frame(frame)
                if model is not None or self.budget_hit:
                    return model
            self.sizes_searched.append(n)
        for frame in seeds:
            if not in_class(frame, self.frame_class):
                continue
            model = self.search_frame(frame)
            if model is not None or self.budget_hit:
                return model
        return None

    def stats(self) -> dict:
        return {
            "frame_class": self.frame_class.name.lower(),
            "frames_examined": self.frames_examined,
            "models_examined": self.models_examined,
            "sizes_searched": list(self.sizes_searched),
            "model_budget_hit": self.budget_hit,
        }


def countermodel_search(
    goal: Consecution,
    frame_class: FrameClass,
    budget: Optional[SearchBudget] = None,
    min_states: int = 1,
    seeds: Sequence[ModalFrame] = (),
) -> Optional[CounterModel]:
    """
    反例モデルを探す

    Args:
        goal: 帰結
        frame_class: 探索するフレームクラス
        budget: 状態数と付値数の予算（省略時は設定値）
        min_states: 最小の状態数
        seeds: 追加で調べるフレーム（クラスの条件で絞り込む）

    Returns:
        反例モデル（見つからなければ None）
    """
    budget = budget or SearchBudget()
    searcher = CounterModelSearch(goal, frame_class, budget.max_models)
    model = searcher.search(min_states, budget.max_states, seeds)
    logger.debug("countermodel search for %s: %s", goal, searcher.stats())
    return model


def sample_models(
    frame_class: FrameClass,
    names: Sequence[str],
    count: int,
    rng: random.Random,
    max_states: int = MAX_STATES,
) -> List[CounterModel]:
    """
    クラスのフレームと不動点付値を無作為に選んだモデル

    witness は使わないので 0 とする。
    """
    top = min(max_states, state_limit(frame_class))
    catalogue = [frame for n in range(1, top + 1) for frame in enumerate_frames(frame_class, n)]
    models = []
    for _ in range(count):
        frame = rng.choice(catalogue)
        algebra = fixpoints(frame)
        valuation = {name: rng.choice(algebra.fixpoints) for name in names}
        models.append(CounterModel(frame, valuation, 0))
    return models
