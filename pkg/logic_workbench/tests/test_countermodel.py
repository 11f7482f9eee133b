"""
フレームの列挙と反例モデル探索のテスト
"""
import random

import pytest

from logic_workbench.analyzers.frame_conditions import in_class
from logic_workbench.analyzers.semantics import forcing, is_fixpoint
from logic_workbench.errors import CapExceededError
from logic_workbench.models.formula import LogicId
from logic_workbench.models.frame import FrameClass
from logic_workbench.models.verdict import SearchBudget
from logic_workbench.services.countermodel import (
    CounterModelSearch,
    canonical_code,
    countermodel_search,
    enumerate_frames,
    sample_models,
)
from logic_workbench.services.syntax import parse_consecution

BUDGET = SearchBudget(max_states=3, max_models=200000)


class TestEnumerateFrames:
    """フレームの列挙のテスト"""

    def test_one_state(self):
        """一状態では ◁ が空か反射的かの二通り"""
        assert len(enumerate_frames(FrameClass.RELATIONAL, 1)) == 2
        assert len(enumerate_frames(FrameClass.ORTHO, 1)) == 1

    def test_frames_belong_to_class(self):
        """列挙したフレームはクラスの条件を満たす"""
        for frame_class in FrameClass:
            for n in (1, 2):
                for frame in enumerate_frames(frame_class, n):
                    assert in_class(frame, frame_class)

    def test_modal_frames_are_unified(self):
        """様相クラスでは Q = R"""
        assert all(frame.is_unified for frame in enumerate_frames(FrameClass.MODAL, 2))

    def test_state_cap(self):
        """列挙できる状態数を超えるとエラー"""
        with pytest.raises(CapExceededError):
            enumerate_frames(FrameClass.RELATIONAL, 5)
        with pytest.raises(CapExceededError):
            enumerate_frames(FrameClass.MODAL, 4)
        with pytest.raises(CapExceededError):
            enumerate_frames(FrameClass.ORTHO, 0)

    def test_canonical_code_ignores_relabelling(self):
        """状態を入れ替えても同じ符号"""
        assert canonical_code((0b01, 0b11), 2) == canonical_code((0b11, 0b10), 2)

    def test_no_isomorphic_duplicates(self):
        """代表は同型類ごとに一つ"""
        frames = enumerate_frames(FrameClass.RELATIONAL, 3)
        codes = [canonical_code(frame.open_to, 3) for frame in frames]
        assert len(codes) == len(set(codes))


class TestCountermodelSearch:
    """反例探索のテスト"""

    def test_double_negation_elimination(self):
        """¬¬p ⊢ p は二状態の関係フレームで反証される"""
        goal = parse_consecution("~~p |- p")
        model = countermodel_search(goal, FrameClass.RELATIONAL, BUDGET)
        assert model is not None
        assert model.frame.size == 2
        assert forcing(model, model.witness, goal.lhs)
        assert not forcing(model, model.witness, goal.rhs)

    def test_no_countermodel_for_valid_goal(self):
        """p ⊢ ¬¬p には三状態まで反例がない"""
        assert countermodel_search(parse_consecution("p |- ~~p"), FrameClass.RELATIONAL, BUDGET) is None

    def test_ortho_double_negation(self):
        """オルソフレームでは ¬¬p ⊢ p の反例はない"""
        goal = parse_consecution("~~p |- p", LogicId.ORTHO)
        assert countermodel_search(goal, FrameClass.ORTHO, BUDGET) is None

    def test_ortho_distributivity(self):
        """分配律は四状態までのオルソフレームで反証される"""
        goal = parse_consecution("p & (q | r) |- p & q | p & r", LogicId.ORTHO)
        model = countermodel_search(goal, FrameClass.ORTHO, SearchBudget(4, 1000000))
        assert model is not None
        assert model.frame.size <= 4
        assert not forcing(model, model.witness, goal.rhs)

    def test_modal_countermodel(self):
        """¬□p ⊢ ◇¬p は二状態の様相フレームで反証される"""
        goal = parse_consecution("~[]p |- <>~p", LogicId.FUNDAMENTAL_MODAL)
        model = countermodel_search(goal, FrameClass.MODAL, SearchBudget(2, 200000))
        assert model is not None
        assert in_class(model.frame, FrameClass.MODAL)
        assert forcing(model, model.witness, goal.lhs)

    def test_model_budget(self):
        """付値数の上限で打ち切る"""
        searcher = CounterModelSearch(parse_consecution("~~p |- p"), FrameClass.RELATIONAL, max_models=1)
        assert searcher.search(1, 3) is None
        assert searcher.budget_hit
        assert searcher.stats()["models_examined"] == 1

    def test_stats(self):
        """列挙し終えた状態数を記録する"""
        searcher = CounterModelSearch(parse_consecution("p |- ~~p"), FrameClass.RELATIONAL)
        searcher.search(1, 2)
        stats = searcher.stats()
        assert stats["sizes_searched"] == [1, 2]
        assert stats["frame_class"] == "relational"
        assert not stats["model_budget_hit"]


class TestSampleModels:
    """無作為なモデルのテスト"""

    def test_valuations_are_fixpoints(self):
        """付値は全て不動点"""
        models = sample_models(FrameClass.RELATIONAL, ["p", "q"], 30, random.Random(7), max_states=3)
        assert len(models) == 30
        for model in models:
            assert in_class(model.frame, FrameClass.RELATIONAL)
            for value in model.valuation.values():
                assert is_fixpoint(model.frame, value)

    def test_deterministic(self):
        """同じシードなら同じモデル"""
        first = sample_models(FrameClass.ORTHO, ["p"], 10, random.Random(3), max_states=3)
        second = sample_models(FrameClass.ORTHO, ["p"], 10, random.Random(3), max_states=3)
        assert first == second
