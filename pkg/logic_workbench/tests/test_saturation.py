"""
前向き飽和による証明探索のテスト
"""
import random
from dataclasses import replace

import pytest
from hypothesis import given, settings

from logic_workbench.models.formula import Atom, Consecution, LogicId, render
from logic_workbench.models.verdict import Exhausted, Proved, SaturationBudget
from logic_workbench.services.saturation import build_universe, check_trace, saturate
from logic_workbench.services.syntax import parse_consecution
from logic_workbench.tests.strategies import formulas, rule_instances
from logic_workbench.utils.random_structures import random_formula

p, q, r = Atom("p"), Atom("q"), Atom("r")


class TestUniverse:
    """式の集合 U の構成のテスト"""

    def test_stage_order(self):
        """部分式、否定の順に加え、上限で打ち切る"""
        universe, truncated = build_universe([p], LogicId.FUNDAMENTAL, 3)
        assert [render(f) for f in universe] == ["p", "~p", "~~p"]
        assert truncated

    def test_pairs_complete(self):
        """上限に余裕があれば ∧, ∨ の対も全て入る"""
        universe, truncated = build_universe([p], LogicId.FUNDAMENTAL, 100)
        assert len(universe) == 21
        assert not truncated

    def test_modal_constants(self):
        """様相論理では ⊥, ⊤ と □, ◇ を加える"""
        universe, _ = build_universe([p], LogicId.FUNDAMENTAL_MODAL, 256)
        rendered = {render(f) for f in universe}
        assert {"_|_", "T", "[]p", "<>p"} <= rendered


class TestSaturate:
    """飽和の結果のテスト"""

    def test_double_negation_introduction(self):
        """p ⊢ ¬¬p は規則 6 の一段"""
        result = saturate(parse_consecution("p |- ~~p"))
        assert isinstance(result, Proved)
        assert [step.rule_id for step in result.trace] == ["6"]
        assert check_trace(result.trace)
        assert result.to_dict() == {"status": "proved", "trace": ["6: p |- ~~p FROM"]}

    def test_explosion(self):
        """p∧¬p からは何でも導ける"""
        result = saturate(parse_consecution("p & ~p |- q"))
        assert isinstance(result, Proved)
        assert result.trace[-1].rule_id == "7"

    def test_modal_rule(self):
        """◇¬p ⊢ ¬□p は様相論理で証明できる"""
        result = saturate(parse_consecution("<>~p |- ~[]p", LogicId.FUNDAMENTAL_MODAL))
        assert isinstance(result, Proved)
        assert check_trace(result.trace)

    def test_double_negation_elimination_fails(self):
        """基本論理では ¬¬p ⊢ p に届かず不動点で止まる"""
        result = saturate(parse_consecution("~~p |- p"), SaturationBudget(64, 20000))
        assert isinstance(result, Exhausted)
        assert result.stats["reason"] == "fixpoint"
        assert result.stats["universe_truncated"] is False

    def test_ortho_double_negation(self):
        """オルソ論理では dne で証明できる"""
        result = saturate(parse_consecution("~~p |- p", LogicId.ORTHO))
        assert isinstance(result, Proved)
        assert "dne" in {step.rule_id for step in result.trace}
        assert check_trace(result.trace)

    def test_goal_outside_universe(self):
        """目標の式が U に入らなければその旨を返す"""
        result = saturate(parse_consecution("p |- q"), SaturationBudget(max_universe=1))
        assert isinstance(result, Exhausted)
        assert result.stats["reason"] == "goal_outside_universe"

    def test_step_budget(self):
        """導出数の上限で打ち切る"""
        result = saturate(parse_consecution("~~p |- p"), SaturationBudget(64, 1))
        assert result.stats["reason"] == "steps"
        assert result.stats["steps"] == 1

    def test_invalid_budget(self):
        """予算は正の整数"""
        with pytest.raises(ValueError):
            SaturationBudget(0, 10)


class TestTrace:
    """証明の再生のテスト"""

    AXIOMS = (Consecution(p, q), Consecution(q, r))

    def test_axioms(self):
        """追加の公理からカットで p ⊢ r"""
        result = saturate(Consecution(p, r), axioms=self.AXIOMS)
        assert isinstance(result, Proved)
        lines = result.to_dict()["trace"]
        assert "axiom: p |- q FROM" in lines
        assert lines[-1].startswith("8: p |- r FROM ")
        assert check_trace(result.trace, self.AXIOMS)
        assert not check_trace(result.trace)

    def test_reordered_trace_rejected(self):
        """前提より先に結論が来る証明は不正"""
        result = saturate(Consecution(p, r), axioms=self.AXIOMS)
        assert not check_trace(tuple(reversed(result.trace)), self.AXIOMS)

    def test_wrong_rule_rejected(self):
        """規則 ID を書き換えた証明は不正"""
        result = saturate(parse_consecution("p |- ~~p"))
        tampered = (replace(result.trace[0], rule_id="dne"),)
        assert not check_trace(tampered)

    def test_rule_outside_logic_rejected(self):
        """論理に属さない規則は使えない"""
        result = saturate(parse_consecution("~~p |- p", LogicId.ORTHO))
        moved = tuple(
            replace(
                step,
                conclusion=replace(step.conclusion, logic=LogicId.FUNDAMENTAL),
                premises=tuple(replace(c, logic=LogicId.FUNDAMENTAL) for c in step.premises),
            )
            for step in result.trace
        )
        assert not check_trace(moved)


class TestMonotoneBudgets:
    """予算を増やしても証明が失われないことのテスト"""

    UNIVERSES = (8, 16, 32, 64, 128, 256)
    STEPS = (100, 500, 2000, 20000)

    def test_proved_for_every_larger_budget(self):
        """¬¬⊥ ⊢ q は全ての予算で同じ証明になる"""
        goal = parse_consecution("~~_|_ |- q", LogicId.FUNDAMENTAL_MODAL)
        traces = set()
        for universe in self.UNIVERSES:
            for steps in self.STEPS:
                result = saturate(goal, SaturationBudget(universe, steps))
                assert isinstance(result, Proved), (universe, steps)
                traces.add(result.trace)
        assert len(traces) == 1
        assert check_trace(traces.pop())

    @pytest.mark.parametrize("text, logic", [
        ("p |- ~~p", LogicId.FUNDAMENTAL),
        ("p & ~p |- q", LogicId.FUNDAMENTAL),
        ("~~p |- p", LogicId.ORTHO),
        ("<>~p |- ~[]p", LogicId.FUNDAMENTAL_MODAL),
        ("[]p & []q |- [](p & q)", LogicId.FUNDAMENTAL_MODAL),
    ])
    def test_grid(self, text, logic):
        """ある予算で証明できれば、それ以上の予算でも同じ証明を返す"""
        goal = parse_consecution(text, logic)
        results = {
            (universe, steps): saturate(goal, SaturationBudget(universe, steps))
            for universe in self.UNIVERSES[:4]
            for steps in self.STEPS[:3]
        }
        assert any(isinstance(result, Proved) for result in results.values())
        for (universe, steps), result in results.items():
            if not isinstance(result, Proved):
                continue
            for (larger_universe, larger_steps), other in results.items():
                if larger_universe >= universe and larger_steps >= steps:
                    assert isinstance(other, Proved), (universe, steps, larger_universe, larger_steps)
                    assert other.trace == result.trace

    @settings(deadline=None)
    @given(formulas(names=("p", "q"), modal=True, max_leaves=4),
           formulas(names=("p", "q"), modal=True, max_leaves=4))
    def test_random_goals(self, lhs, rhs):
        """無作為な帰結でも、小さい予算の証明は大きい予算で保たれる"""
        goal = Consecution(lhs, rhs, LogicId.FUNDAMENTAL_MODAL)
        small = saturate(goal, SaturationBudget(16, 300))
        if isinstance(small, Proved):
            large = saturate(goal, SaturationBudget(48, 3000))
            assert isinstance(large, Proved)
            assert large.trace == small.trace


class TestRuleClosure:
    """規則の具体例を、前提を公理として飽和で証明できることのテスト"""

    def test_every_rule(self):
        """規則 1–20 の結論は前提から導ける"""
        rng = random.Random(5)
        for _ in range(30):
            a, b, c = (random_formula(rng, ("p", "q"), 2, LogicId.FUNDAMENTAL_MODAL) for _ in range(3))
            for rule_id, instance in rule_instances(a, b, c).items():
                result = saturate(instance.conclusion, SaturationBudget(64, 20000), axioms=instance.premises)
                assert isinstance(result, Proved), (rule_id, instance.conclusion)
                assert check_trace(result.trace, instance.premises), rule_id

    def test_ortho_double_negation_elimination(self):
        """オルソ論理の dne も同じく一段で導ける"""
        result = saturate(parse_consecution("~~(p | q) |- p | q", LogicId.ORTHO), SaturationBudget(16, 1000))
        assert isinstance(result, Proved)
        assert check_trace(result.trace)
