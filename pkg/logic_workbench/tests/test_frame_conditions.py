"""
フレーム条件とフレームの入出力のテスト
"""
import json

import pytest

from logic_workbench.analyzers.frame_conditions import (
    CONDITIONS,
    analyze_frame,
    check_condition,
    in_class,
    pre_refines,
)
from logic_workbench.errors import ModelError
from logic_workbench.models.frame import CounterModel, FrameClass, ModalFrame
from logic_workbench.services.frame_io import dump_json, frame_to_dot, load_frame

CHAIN = ModalFrame(("s0", "s1"), frozenset({(0, 0), (1, 1), (0, 1)}))
SWAP = ModalFrame(("s0", "s1"), frozenset({(0, 1), (1, 0)}))


class TestConditions:
    """条件ごとの検査のテスト"""

    def test_reflexive(self):
        """前者のない状態は反射性の反例"""
        report = check_condition(ModalFrame(("s0",)), "reflexive")
        assert not report.holds
        assert report.witness == ("s0",)

    def test_symmetric(self):
        """s0◁s1 だけでは対称でない"""
        report = check_condition(CHAIN, "symmetric")
        assert report.witness == ("s0", "s1")

    def test_pseudo_conditions(self):
        """鎖フレームは擬反射・擬対称"""
        assert check_condition(CHAIN, "pseudo_reflexive").holds
        assert check_condition(CHAIN, "pseudo_symmetric").holds

    def test_pseudo_reflexive_failure(self):
        """互いに開いているだけの二状態は擬反射でない"""
        report = check_condition(SWAP, "pseudo_reflexive")
        assert report.witness == ("s0",)
        assert check_condition(SWAP, "pseudo_symmetric").holds

    def test_modal_failure(self):
        """R の後続が ◁ で追えないと modal_frame が破れる"""
        frame = ModalFrame(CHAIN.states, CHAIN.open_rel, frozenset({(0, 1)}), frozenset({(0, 1)}))
        report = check_condition(frame, "modal_frame")
        assert not report.holds
        assert len(report.witness) == 3

    def test_unified(self):
        """R と Q が異なる対を返す"""
        frame = ModalFrame(("s0",), frozenset({(0, 0)}), frozenset({(0, 0)}), frozenset())
        assert check_condition(frame, "unified").witness == ("s0", "s0")

    def test_unknown_condition(self):
        """未知の条件名はエラー"""
        with pytest.raises(ValueError):
            check_condition(CHAIN, "transitive")

    def test_pre_refines(self):
        """z の前者が全て x の前者なら z は x を前精密化する"""
        assert pre_refines(CHAIN, 0, 1)
        assert not pre_refines(CHAIN, 1, 0)

    def test_frame_classes(self):
        """クラスの条件をまとめて検査する"""
        assert in_class(CHAIN, FrameClass.RELATIONAL)
        assert not in_class(CHAIN, FrameClass.ORTHO)
        assert not in_class(SWAP, FrameClass.RELATIONAL)

    def test_analyze_frame(self):
        """既定では全条件を検査する"""
        results = analyze_frame(CHAIN)
        assert set(results) == set(CONDITIONS)
        assert results["reflexive"]["holds"] is True
        assert results["symmetric"]["witness"] == ["s0", "s1"]


class TestFrameModel:
    """フレームと反例モデルのデータモデルのテスト"""

    def test_empty_frame(self):
        """状態のないフレームは作れない"""
        with pytest.raises(ModelError):
            ModalFrame(())

    def test_index_out_of_range(self):
        """関係の添字は状態数未満"""
        with pytest.raises(ModelError):
            ModalFrame.from_dict({"states": ["a"], "open": [[0, 5]]})

    def test_q_defaults_to_r(self):
        """Q がなければ R と同じ"""
        frame = ModalFrame.from_dict({"states": ["a", "b"], "open": [[0, 0]], "R": [[0, 1]]})
        assert frame.is_unified
        assert "Q" not in frame.to_dict()

    def test_counter_model_from_dict(self):
        """状態名で書いた付値を読み込む"""
        data = {"frame": CHAIN.to_dict(), "valuation": {"p": ["s0"]}, "witness": "s1"}
        model = CounterModel.from_dict(data)
        assert model.valuation == {"p": 0b01}
        assert model.witness == 1
        assert model.to_dict() == data

    def test_counter_model_errors(self):
        """frame がない、未知の状態名はエラー"""
        with pytest.raises(ModelError):
            CounterModel.from_dict({})
        with pytest.raises(ModelError):
            CounterModel.from_dict({"frame": CHAIN.to_dict(), "valuation": {"p": ["s9"]}})
        with pytest.raises(ModelError):
            CounterModel.from_dict({"frame": CHAIN.to_dict(), "witness": "s9"})


class TestFrameIO:
    """JSON と DOT の入出力のテスト"""

    def test_load_frame(self, tmp_path):
        """書き出したフレームを読み戻す"""
        path = tmp_path / "frame.json"
        dump_json(CHAIN.to_dict(), path)
        assert load_frame(path) == CHAIN

    def test_load_rejects_non_object(self, tmp_path):
        """トップレベルがオブジェクトでなければエラー"""
        path = tmp_path / "frame.json"
        path.write_text(json.dumps([1, 2]), encoding="utf-8")
        with pytest.raises(ModelError):
            load_frame(path)

    def test_dot(self):
        """z◁y は y から z への実線、R は破線"""
        frame = ModalFrame(CHAIN.states, CHAIN.open_rel, frozenset({(0, 1)}), frozenset({(1, 1)}))
        dot = frame_to_dot(frame, "chain")
        assert dot.startswith('digraph "chain" {')
        assert '  "s1" -> "s0";' in dot
        assert '  "s0" -> "s1" [style=dashed];' in dot
        assert '  "s1" -> "s1" [style=dotted];' in dot
