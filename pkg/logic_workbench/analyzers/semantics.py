"""
有限フレーム上の意味論（閉包作用素、不動点束、否定・様相演算、強制関係）
"""
import logging
from dataclasses import dataclass, field
from itertools import product
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

from logic_workbench.config.settings import BRUTE_FORCE_STATE_CAP, FIXPOINT_STATE_CAP
from logic_workbench.errors import CapExceededError, ModelError, UnboundAtomError
from logic_workbench.models.formula import Atom, Bot, Box, Dia, Formula, Neg, Top, atoms, render
from logic_workbench.models.frame import CounterModel, ModalFrame
from logic_workbench.utils.bits import StateSet

logger = logging.getLogger(__name__)

# 不動点の個数の上限（状態数の上限とは別に、指数的な爆発を止める）
MAX_FIXPOINT_COUNT = 1 << 16


def closure(frame: ModalFrame, subset: StateSet) -> StateSet:
    """
    閉包 c(A) = {x ∣ ∀y◁x ∃z▷y: z∈A}

    Args:
        frame: フレーム
        subset: 状態集合 A

    Returns:
        c(A)
    """
    # A のどの元にも開いていない状態 y
    rejecting = 0
    for y in range(frame.size):
        if not frame.opens[y] & subset:
            rejecting |= 1 << y
    result = 0
    for x in range(frame.size):
        if not frame.open_to[x] & rejecting:
            result |= 1 << x
    return result


def neg_op(frame: ModalFrame, subset: StateSet) -> StateSet:
    """¬A = {x ∣ ∀y◁x, y∉A}"""
    result = 0
    for x in range(frame.size):
        if not frame.open_to[x] & subset:
            result |= 1 << x
    return result


def box_op(frame: ModalFrame, subset: StateSet) -> StateSet:
    """□A = {x ∣ R(x) ⊆ A}"""
    result = 0
    for x in range(frame.size):
        if not frame.r_succ[x] & ~subset:
            result |= 1 << x
    return result


def dia_op(frame: ModalFrame, subset: StateSet) -> StateSet:
    """◇A = {x ∣ ∀x′◁x ∃y′∈Q(x′) ∃y▷y′: y∈A}"""
    reaching = 0
    for y in range(frame.size):
        if frame.opens[y] & subset:
            reaching |= 1 << y
    supported = 0
    for x in range(frame.size):
        if frame.q_succ[x] & reaching:
            supported |= 1 << x
    result = 0
    for x in range(frame.size):
        if not frame.open_to[x] & ~supported:
            result |= 1 << x
    return result


def join(frame: ModalFrame, family: Iterable[StateSet]) -> StateSet:
    """不動点族の上限 c(⋃A)。空の族なら c(∅)"""
    union = 0
    for member in family:
        union |= member
    return closure(frame, union)


def meet(frame: ModalFrame, family: Iterable[StateSet]) -> StateSet:
    """不動点族の下限 ⋂A。空の族なら X"""
    result = frame.universe
    for member in family:
        result &= member
    return result


def is_fixpoint(frame: ModalFrame, subset: StateSet) -> bool:
    return closure(frame, subset) == subset


@dataclass
class FixpointAlgebra:
    """
    フレームの不動点束 𝔏(X,◁) と演算 ¬, □, ◇

    Attributes:
        frame: フレーム
        fixpoints: 不動点の一覧（要素数、マスク値の順）
    """

    frame: ModalFrame
    fixpoints: Tuple[StateSet, ...]
    _index: Dict[StateSet, int] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self._index = {a: i for i, a in enumerate(self.fixpoints)}

    def __len__(self) -> int:
        return len(self.fixpoints)

    def __contains__(self, subset: StateSet) -> bool:
        return subset in self._index

    def index(self, subset: StateSet) -> int:
        return self._index[subset]

    @property
    def zero(self) -> StateSet:
        return closure(self.frame, 0)

    @property
    def one(self) -> StateSet:
        return self.frame.universe

    def meet(self, a: StateSet, b: StateSet) -> StateSet:
        return a & b

    def join(self, a: StateSet, b: StateSet) -> StateSet:
        return closure(self.frame, a | b)

    def neg(self, a: StateSet) -> StateSet:
        return neg_op(self.frame, a)

    def box(self, a: StateSet) -> StateSet:
        return box_op(self.frame, a)

    def dia(self, a: StateSet) -> StateSet:
        return dia_op(self.frame, a)

    def to_dict(self) -> dict:
        """辞書形式に変換"""
        return {"fixpoints": [self.frame.state_names(a) for a in self.fixpoints]}


def _sorted_family(family: Iterable[StateSet]) -> Tuple[StateSet, ...]:
    return tuple(sorted(family, key=lambda a: (a.bit_count(), a)))


def fixpoints(frame: ModalFrame) -> FixpointAlgebra:
    """
    不動点束を計算

    不動点はちょうど集合 {x ∣ y◁x でない}（y ごとに一つ）の共通部分で表せるので、
    それらの交わりで閉じた族を生成する。

    Args:
        frame: フレーム

    Returns:
        不動点代数

    Raises:
        CapExceededError: 状態数または不動点数が上限を超えた場合
    """
    if frame.size > FIXPOINT_STATE_CAP:
        raise CapExceededError("不動点計算の状態数", FIXPOINT_STATE_CAP, frame.size)
    universe = frame.universe
    generators = {universe & ~frame.opens[y] for y in range(frame.size)}
    found = {universe}
    frontier = [universe]
    while frontier:
        current = frontier.pop()
        for g in generators:
            candidate = current & g
            if candidate not in found:
                found.add(candidate)
                frontier.append(candidate)
                if len(found) > MAX_FIXPOINT_COUNT:
                    raise CapExceededError("不動点の個数", MAX_FIXPOINT_COUNT, len(found))
    logger.debug("不動点 %d 個（状態数 %d）", len(found), frame.size)
    return FixpointAlgebra(frame, _sorted_family(found))


def fixpoints_by_closure(frame: ModalFrame) -> FixpointAlgebra:
    """全部分集合の閉包を列挙して重複を除く（小さいフレームでの照合用）"""
    if frame.size > BRUTE_FORCE_STATE_CAP:
        raise CapExceededError("全部分集合列挙の状態数", BRUTE_FORCE_STATE_CAP, frame.size)
    found = {closure(frame, subset) for subset in range(1 << frame.size)}
    return FixpointAlgebra(frame, _sorted_family(found))


class FormulaProgram:
    """
    論理式の集まりを共有部分式つきの命令列にコンパイルしたもの

    反例探索では同じ式を多数の付値で評価するので、木を毎回たどらずに済ませる。
    """

    def __init__(self, formulas: Sequence[Formula]):
        names = set()
        for f in formulas:
            names.update(atoms(f))
        self.atoms: List[str] = sorted(names)
        self._atom_slot = {name: i for i, name in enumerate(self.atoms)}
        self._slots: Dict[Formula, int] = {}
        self.code: List[Tuple[str, int, int]] = []
        self.roots = [self._emit(f) for f in formulas]

    def _emit(self, f: Formula) -> int:
        if f in self._slots:
            return self._slots[f]
        if isinstance(f, Atom):
            instruction = ("atom", self._atom_slot[f.name], 0)
        elif isinstance(f, Bot):
            instruction = ("bot", 0, 0)
        elif isinstance(f, Top):
            instruction = ("top", 0, 0)
        elif isinstance(f, (Neg, Box, Dia)):
            instruction = (type(f).__name__.lower(), self._emit(f.sub), 0)
        else:
            instruction = (type(f).__name__.lower(), self._emit(f.left), self._emit(f.right))
        self.code.append(instruction)
        self._slots[f] = len(self.code) - 1
        return self._slots[f]

    def run(self, frame: ModalFrame, values: Sequence[StateSet]) -> List[StateSet]:
        """
        各根の式の外延を計算

        Args:
            frame: フレーム
            values: self.atoms の順に並べた原子式の値

        Returns:
            根の式ごとの状態集合
        """
        regs: List[StateSet] = []
        for op, a, b in self.code:
            if op == "atom":
                regs.append(values[a])
            elif op == "and":
                regs.append(regs[a] & regs[b])
            elif op == "or":
                regs.append(closure(frame, regs[a] | regs[b]))
            elif op == "neg":
                regs.append(neg_op(frame, regs[a]))
            elif op == "box":
                regs.append(box_op(frame, regs[a]))
            elif op == "dia":
                regs.append(dia_op(frame, regs[a]))
            elif op == "bot":
                regs.append(frame.absurd)
            else:
                regs.append(frame.universe)
        return [regs[r] for r in self.roots]


def _values_for(program: FormulaProgram, valuation: Mapping[str, StateSet]) -> List[StateSet]:
    try:
        return [valuation[name] for name in program.atoms]
    except KeyError as exc:
        raise UnboundAtomError(exc.args[0]) from None


def denotation(frame: ModalFrame, valuation: Mapping[str, StateSet], f: Formula) -> StateSet:
    """
    f を強制する状態の集合

    Raises:
        UnboundAtomError: 付値にない原子式がある場合
    """
    program = FormulaProgram([f])
    return program.run(frame, _values_for(program, valuation))[0]


def forcing(model: CounterModel, state: int, f: Formula) -> bool:
    """
    状態 x が f を強制するか

    Args:
        model: フレームと付値（CounterModel と同じ形）
        state: 状態の添字
        f: 論理式

    Returns:
        強制すれば True
    """
    return bool(denotation(model.frame, model.valuation, f) >> state & 1)


def failing_states(frame: ModalFrame, valuation: Mapping[str, StateSet], lhs: Formula, rhs: Formula) -> StateSet:
    """lhs を強制し rhs を強制しない状態の集合"""
    program = FormulaProgram([lhs, rhs])
    left, right = program.run(frame, _values_for(program, valuation))
    return left & ~right


def check_valuation(frame: ModalFrame, valuation: Mapping[str, StateSet]) -> None:
    """
    付値の値がすべて不動点であることを確認

    Raises:
        ModelError: 不動点でない値がある場合
    """
    for name, subset in valuation.items():
        if subset & ~frame.universe:
            raise ModelError(f"原子式 {name} の値がフレームの外にあります")
        if not is_fixpoint(frame, subset):
            raise ModelError(f"原子式 {name} の値 {frame.state_names(subset)} は c の不動点ではありません")


def valuations(algebra: FixpointAlgebra, names: Sequence[str]) -> Iterable[Tuple[StateSet, ...]]:
    """原子式に不動点を割り当てる全付値（辞書順）"""
    return product(algebra.fixpoints, repeat=len(names))


def analyze_model(model: CounterModel, formulas: Sequence[Formula]) -> dict:
    """
    モデル上で各式を強制する状態をまとめる

    Returns:
        式の表示文字列 → 状態名のリスト
    """
    program = FormulaProgram(list(formulas))
    results = program.run(model.frame, _values_for(program, model.valuation))
    return {render(f): model.frame.state_names(mask) for f, mask in zip(formulas, results)}
