"""
前向き飽和による証明探索

有限の式集合 U の上で、論理の規則で閉じた最小の関係を作業リスト方式で計算する。
導出した対はすべて制限のない論理でも導出できるので、証明は健全。
"""
import logging
from collections import deque
from typing import Deque, Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple, Union

from logic_workbench.analyzers.rules import RULE_SETS, match_rule
from logic_workbench.models.formula import (
    BOT,
    TOP,
    And,
    Box,
    Consecution,
    Dia,
    Formula,
    LogicId,
    Neg,
    Or,
    formula_key,
    subformulas,
)
from logic_workbench.models.verdict import Exhausted, Proved, RuleInstance, SaturationBudget
from logic_workbench.utils.bits import iter_bits

logger = logging.getLogger(__name__)

Pair = Tuple[int, int]


def build_universe(roots: Iterable[Formula], logic: LogicId, max_universe: int) -> Tuple[List[Formula], bool]:
    """
    飽和に使う式の集合 U を段階的に作る

    段階: 部分式閉包（様相論理では ⊥, ⊤ も）→ ¬χ, ¬¬χ →（様相論理）□χ, ◇χ
    → U の要素の対の ∧, ∨。各段階は (サイズ, 表示) の順に上限まで加える。

    Returns:
        (U の式のリスト, 上限で打ち切ったか)
    """
    admitted: List[Formula] = []
    seen: Set[Formula] = set()

    def admit(candidates: Set[Formula]) -> bool:
        for f in sorted(candidates - seen, key=formula_key):
            if len(admitted) >= max_universe:
                return False
            seen.add(f)
            admitted.append(f)
        return True

    base: Set[Formula] = set()
    for root in roots:
        base |= subformulas(root)
    if logic.modal:
        base |= {BOT, TOP}
    stages = [
        base,
        {Neg(f) for f in base} | {Neg(Neg(f)) for f in base},
    ]
    if logic.modal:
        stages.append({Box(f) for f in base} | {Dia(f) for f in base})
    for stage in stages:
        if not admit(stage):
            return admitted, True
    current = list(admitted)
    combined = {op(a, b) for a in current for b in current for op in (And, Or)}
    complete = admit(combined)
    return admitted, not complete


class _GoalReached(Exception):
    pass


class _BudgetExceeded(Exception):
    pass


class Saturator:
    """
    一つの目標に対する飽和の実行

    関係は行ごとのビットマスク（succ[i] = {j ∣ U[i] ⊢ U[j]}）で持つ。
    U の式を先頭から一つずつ加え、加えるたびにそこまでの式の範囲で閉包を取る。
    U では部分式が先に並び、上限の小さい U は上限の大きい U の先頭部分になる。
    したがって小さい予算での実行は、大きい予算での実行の先頭部分と一致する。
    """

    def __init__(self, goal: Consecution, budget: SaturationBudget, axioms: Sequence[Consecution] = ()):
        """
        Args:
            goal: 目標の帰結
            budget: 予算
            axioms: 前提なしで使ってよい追加の帰結
        """
        self.goal = goal
        self.logic = goal.logic
        self.budget = budget
        self.rules: FrozenSet[str] = RULE_SETS[goal.logic]
        self.axioms = tuple(axioms)
        roots = [goal.lhs, goal.rhs] + [f for ax in self.axioms for f in (ax.lhs, ax.rhs)]
        self.universe, self.truncated = build_universe(roots, goal.logic, budget.max_universe)
        self.index: Dict[Formula, int] = {f: i for i, f in enumerate(self.universe)}
        n = len(self.universe)
        self.size = 0  # 加えた式の数
        self.succ = [0] * n
        self.pred = [0] * n
        self.justification: Dict[Pair, Tuple[str, Tuple[Pair, ...]]] = {}
        self.queue: Deque[Pair] = deque()
        self.steps = 0
        self.goal_pair: Optional[Pair] = None
        if goal.lhs in self.index and goal.rhs in self.index:
            self.goal_pair = (self.index[goal.lhs], self.index[goal.rhs])
        self._build_indexes()
        self._collect_seeds()

    def _build_indexes(self) -> None:
        n = len(self.universe)
        idx = self.index
        self.neg_of = [-1] * n
        self.box_of = [-1] * n
        self.dia_of = [-1] * n
        self.and_by_left: List[List[Pair]] = [[] for _ in range(n)]
        self.and_by_right: List[List[Pair]] = [[] for _ in range(n)]
        self.or_by_left: List[List[Pair]] = [[] for _ in range(n)]
        self.or_by_right: List[List[Pair]] = [[] for _ in range(n)]
        self.pc_triggers: Dict[Pair, Pair] = {}
        self.side_by_part: List[List[Tuple[int, int, bool]]] = [[] for _ in range(n)]
        # 式を加えた時点で使えるようになる pc, side の具体例（添字は最後に加わる式）
        self.pc_at: List[List[Tuple[int, int, int, int]]] = [[] for _ in range(n)]
        self.side_at: List[List[Tuple[int, int, int]]] = [[] for _ in range(n)]
        for m, f in enumerate(self.universe):
            if isinstance(f, Neg):
                self.neg_of[idx[f.sub]] = m
            elif isinstance(f, Box):
                self.box_of[idx[f.sub]] = m
            elif isinstance(f, Dia):
                self.dia_of[idx[f.sub]] = m
            elif isinstance(f, And):
                left, right = idx[f.left], idx[f.right]
                self.and_by_left[left].append((m, right))
                self.and_by_right[right].append((m, left))
                contradiction = idx.get(And(f.left, Neg(f.left)))
                negated = idx.get(Neg(f.right))
                if contradiction is not None and negated is not None:
                    self.pc_triggers[(m, contradiction)] = (left, negated)
                    self.pc_at[max(m, contradiction, negated)].append((m, contradiction, left, negated))
                if isinstance(f.right, Or):
                    l_part = idx.get(And(f.left, f.right.left))
                    r_part = idx.get(And(f.left, f.right.right))
                    if l_part is not None and r_part is not None:
                        self.side_by_part[l_part].append((m, r_part, True))
                        self.side_by_part[r_part].append((m, l_part, False))
                        self.side_at[max(m, l_part, r_part)].append((m, l_part, r_part))
            elif isinstance(f, Or):
                left, right = idx[f.left], idx[f.right]
                self.or_by_left[left].append((m, right))
                self.or_by_right[right].append((m, left))

    def _collect_seeds(self) -> None:
        """前提のない規則の具体例を、後に加わる方の式の添字ごとに分けておく"""
        rules, idx, n = self.rules, self.index, len(self.universe)
        self.seeds_at: List[List[Tuple[int, int, str]]] = [[] for _ in range(n)]
        for i in range(n):
            self._seed(i, i, "1")
        for m, f in enumerate(self.universe):
            if isinstance(f, And):
                self._seed(m, idx[f.left], "2")
                self._seed(m, idx[f.right], "3")
                if f.right == Neg(f.left):
                    for k in range(n):
                        self._seed(m, k, "7")
            elif isinstance(f, Or):
                self._seed(idx[f.left], m, "4")
                self._seed(idx[f.right], m, "5")
            elif isinstance(f, Neg) and isinstance(f.sub, Neg):
                inner = idx[f.sub.sub]
                self._seed(inner, m, "6")
                if "dne" in rules:
                    self._seed(m, inner, "dne")
            if "12" in rules:
                self._seed_modal(m, f)
        for ax in self.axioms:
            self._seed(idx[ax.lhs], idx[ax.rhs], "axiom")

    def _seed(self, i: int, j: int, rule: str) -> None:
        self.seeds_at[max(i, j)].append((i, j, rule))

    def _seed_modal(self, m: int, f: Formula) -> None:
        idx, n = self.index, len(self.universe)
        if f == BOT:
            for k in range(n):
                self._seed(m, k, "12")
        elif f == TOP:
            for k in range(n):
                self._seed(k, m, "12")
            if Box(TOP) in idx:
                self._seed(m, idx[Box(TOP)], "17")
        elif f == Neg(TOP) and BOT in idx:
            self._seed(m, idx[BOT], "13")
        elif isinstance(f, And) and isinstance(f.left, Box) and isinstance(f.right, Box):
            target = idx.get(Box(And(f.left.sub, f.right.sub)))
            if target is not None:
                self._seed(m, target, "14")
        elif isinstance(f, Dia) and isinstance(f.sub, Or):
            target = idx.get(Or(Dia(f.sub.left), Dia(f.sub.right)))
            if target is not None:
                self._seed(m, target, "15")
        elif isinstance(f, Dia) and isinstance(f.sub, Neg):
            target = idx.get(Neg(Box(f.sub.sub)))
            if target is not None:
                self._seed(m, target, "16")
        if f == Dia(BOT) and BOT in idx:
            self._seed(m, idx[BOT], "18")

    def _add(self, i: int, j: int, rule: str, premises: Tuple[Pair, ...] = ()) -> None:
        if self.succ[i] >> j & 1:
            return
        self.succ[i] |= 1 << j
        self.pred[j] |= 1 << i
        self.justification[(i, j)] = (rule, premises)
        self.queue.append((i, j))
        self.steps += 1
        if (i, j) == self.goal_pair:
            raise _GoalReached
        if self.steps >= self.budget.max_steps:
            raise _BudgetExceeded

    def _admitted(self, m: int) -> bool:
        return 0 <= m < self.size

    def _admit(self, k: int) -> None:
        """U[k] を加え、U[:k+1] の上の閉包まで導出する"""
        self.size = k + 1
        for i, j, rule in self.seeds_at[k]:
            self._add(i, j, rule)
        self._catch_up(k)
        while self.queue:
            self._fire(*self.queue.popleft())

    def _catch_up(self, k: int) -> None:
        """U[k] が加わったことで使えるようになった規則を、既存の対に適用"""
        f, idx, succ, pred, rules = self.universe[k], self.index, self.succ, self.pred, self.rules
        if isinstance(f, Neg):
            x = idx[f.sub]
            for i in iter_bits(pred[x]):
                if self._admitted(self.neg_of[i]):
                    self._add(k, self.neg_of[i], "11", ((i, x),))
            for j in iter_bits(succ[x]):
                if self._admitted(self.neg_of[j]):
                    self._add(self.neg_of[j], k, "11", ((x, j),))
        elif isinstance(f, (Box, Dia)) and "19" in rules:
            x = idx[f.sub]
            rule, image = ("19", self.box_of) if isinstance(f, Box) else ("20", self.dia_of)
            for j in iter_bits(succ[x]):
                if self._admitted(image[j]):
                    self._add(k, image[j], rule, ((x, j),))
            for i in iter_bits(pred[x]):
                if self._admitted(image[i]):
                    self._add(image[i], k, rule, ((i, x),))
        elif isinstance(f, And):
            a, b = idx[f.left], idx[f.right]
            for i in iter_bits(pred[a] & pred[b]):
                self._add(i, k, "9", ((i, a), (i, b)))
        elif isinstance(f, Or):
            a, b = idx[f.left], idx[f.right]
            for j in iter_bits(succ[a] & succ[b]):
                self._add(k, j, "10", ((a, j), (b, j)))
        if "pc" in rules:
            for m, contradiction, a, negated in self.pc_at[k]:
                if succ[m] >> contradiction & 1:
                    self._add(a, negated, "pc", ((m, contradiction),))
        if "side" in rules:
            for m, l_part, r_part in self.side_at[k]:
                for j in iter_bits(succ[l_part] & succ[r_part]):
                    self._add(m, j, "side", ((l_part, j), (r_part, j)))

    def _fire(self, i: int, j: int) -> None:
        """新しい対 (i, j) を前提に持つ規則を適用"""
        succ, pred, rules, size = self.succ, self.pred, self.rules, self.size
        # 8: カット（推移閉包）
        for k in iter_bits(succ[j] & ~succ[i]):
            self._add(i, k, "8", ((i, j), (j, k)))
        for h in iter_bits(pred[i] & ~pred[j]):
            self._add(h, j, "8", ((h, i), (i, j)))
        # 9: 右の連言導入
        for m, k in self.and_by_left[j]:
            if m < size and succ[i] >> k & 1:
                self._add(i, m, "9", ((i, j), (i, k)))
        for m, h in self.and_by_right[j]:
            if m < size and succ[i] >> h & 1:
                self._add(i, m, "9", ((i, h), (i, j)))
        # 10: 場合分け
        for m, k in self.or_by_left[i]:
            if m < size and succ[k] >> j & 1:
                self._add(m, j, "10", ((i, j), (k, j)))
        for m, h in self.or_by_right[i]:
            if m < size and succ[h] >> j & 1:
                self._add(m, j, "10", ((h, j), (i, j)))
        # 11: 対偶
        if self._admitted(self.neg_of[i]) and self._admitted(self.neg_of[j]):
            self._add(self.neg_of[j], self.neg_of[i], "11", ((i, j),))
        if "19" in rules:
            if self._admitted(self.box_of[i]) and self._admitted(self.box_of[j]):
                self._add(self.box_of[i], self.box_of[j], "19", ((i, j),))
            if self._admitted(self.dia_of[i]) and self._admitted(self.dia_of[j]):
                self._add(self.dia_of[i], self.dia_of[j], "20", ((i, j),))
        if "pc" in rules and (i, j) in self.pc_triggers:
            a, negated = self.pc_triggers[(i, j)]
            if negated < size:
                self._add(a, negated, "pc", ((i, j),))
        if "side" in rules:
            for m, other, is_left in self.side_by_part[i]:
                if m < size and other < size and succ[other] >> j & 1:
                    premises = ((i, j), (other, j)) if is_left else ((other, j), (i, j))
                    self._add(m, j, "side", premises)

    def _stats(self, reason: str) -> Dict[str, object]:
        return {
            "reason": reason,
            "universe": len(self.universe),
            "universe_truncated": self.truncated,
            "steps": self.steps,
            "max_universe": self.budget.max_universe,
            "max_steps": self.budget.max_steps,
        }

    def run(self) -> Union[Proved, Exhausted]:
        """
        飽和を実行

        Returns:
            目標に届けば Proved、届かなければ Exhausted
        """
        if self.goal_pair is None:
            logger.info("goal %s is outside the universe (%d formulas)", self.goal, len(self.universe))
            return Exhausted(self._stats("goal_outside_universe"))
        try:
            for k in range(len(self.universe)):
                self._admit(k)
        except _GoalReached:
            logger.debug("proved %s in %d steps over %d formulas", self.goal, self.steps, self.size)
            return Proved(self._trace(self.goal_pair))
        except _BudgetExceeded:
            logger.info("step budget %d exhausted for %s", self.budget.max_steps, self.goal)
            return Exhausted(self._stats("steps"))
        logger.debug("fixpoint reached without %s (%d steps)", self.goal, self.steps)
        return Exhausted(self._stats("fixpoint"))

    def _trace(self, goal_pair: Pair) -> Tuple[RuleInstance, ...]:
        """目標の導出に使った対だけを、前提が先に来る順に並べる"""
        order: List[Pair] = []
        visited: Set[Pair] = set()
        stack: List[Tuple[Pair, bool]] = [(goal_pair, False)]
        while stack:
            pair, expanded = stack.pop()
            if expanded:
                order.append(pair)
                continue
            if pair in visited:
                continue
            visited.add(pair)
            stack.append((pair, True))
            for premise in reversed(self.justification[pair][1]):
                if premise not in visited:
                    stack.append((premise, False))
        return tuple(
            RuleInstance(
                self.justification[pair][0],
                self._consecution(pair),
                tuple(self._consecution(p) for p in self.justification[pair][1]),
            )
            for pair in order
        )

    def _consecution(self, pair: Pair) -> Consecution:
        return Consecution(self.universe[pair[0]], self.universe[pair[1]], self.logic)


def saturate(
    goal: Consecution,
    budget: Optional[SaturationBudget] = None,
    axioms: Sequence[Consecution] = (),
) -> Union[Proved, Exhausted]:
    """
    前向き飽和で φ ⊢ ψ の証明を探す

    Args:
        goal: 目標の帰結
        budget: 予算（省略時は設定値）
        axioms: 追加の公理として使う帰結

    Returns:
        Proved（再生可能な証明つき）または Exhausted（統計つき）
    """
    return Saturator(goal, budget or SaturationBudget(), axioms).run()


def check_trace(trace: Sequence[RuleInstance], axioms: Sequence[Consecution] = ()) -> bool:
    """
    証明の各段が規則のスキーマに一致し、前提が先に現れているか

    Args:
        trace: 証明
        axioms: axiom 段として認める帰結

    Returns:
        正しければ True
    """
    allowed = set(axioms)
    established: Set[Consecution] = set()
    for step in trace:
        if step.rule_id == "axiom":
            valid = not step.premises and step.conclusion in allowed
        else:
            valid = match_rule(step.rule_id, step.conclusion, step.premises)
        if not valid or any(p not in established for p in step.premises):
            return False
        established.add(step.conclusion)
    return True
