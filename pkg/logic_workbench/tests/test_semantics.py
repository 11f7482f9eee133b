"""
フレーム意味論のテスト
"""
import random

import pytest
from hypothesis import given

from logic_workbench.analyzers.frame_conditions import check_condition
from logic_workbench.analyzers.semantics import (
    FormulaProgram,
    analyze_model,
    box_op,
    check_valuation,
    closure,
    denotation,
    dia_op,
    fixpoints,
    fixpoints_by_closure,
    forcing,
    is_fixpoint,
    join,
    neg_op,
)
from logic_workbench.errors import CapExceededError, ModelError, UnboundAtomError
from logic_workbench.models.formula import BOT, TOP, And, Atom, Neg, Or
from logic_workbench.models.frame import CounterModel, FrameClass, ModalFrame
from logic_workbench.services.countermodel import enumerate_frames
from logic_workbench.tests.strategies import frames, formulas
from logic_workbench.utils.random_structures import random_frame

p, q = Atom("p"), Atom("q")

# 二状態の反射的フレーム（不動点束は 4 元ブール代数）
BOOLEAN = ModalFrame(("s0", "s1"), frozenset({(0, 0), (1, 1)}))
# s0◁s1 を加えたもの（不動点束は 3 元の鎖）
CHAIN = ModalFrame(("s0", "s1"), frozenset({(0, 0), (1, 1), (0, 1)}))
# ◁ が空の一点フレーム
ABSURD = ModalFrame(("s0",))


class TestClosure:
    """閉包作用素のテスト"""

    @given(frames())
    def test_closure_laws(self, frame):
        """c は閉包作用素"""
        universe = frame.universe
        for a in range(universe + 1):
            ca = closure(frame, a)
            assert a & ~ca == 0
            assert closure(frame, ca) == ca
        for a in range(universe + 1):
            for b in range(universe + 1):
                if a & ~b == 0:
                    assert closure(frame, a) & ~closure(frame, b) == 0

    @given(frames(max_states=5))
    def test_generated_fixpoints_match_brute_force(self, frame):
        """生成元から作った不動点と全部分集合の閉包が一致する"""
        assert fixpoints(frame).fixpoints == fixpoints_by_closure(frame).fixpoints

    @given(frames())
    def test_negation_is_fixpoint(self, frame):
        """¬A は常に不動点"""
        for a in range(frame.universe + 1):
            assert is_fixpoint(frame, neg_op(frame, a))

    def test_boolean_frame(self):
        """反射的な離散フレームでは閉包は恒等写像、否定は補集合"""
        assert len(fixpoints(BOOLEAN)) == 4
        assert neg_op(BOOLEAN, 0b01) == 0b10

    def test_chain_frame(self):
        """s0◁s1 を加えると {s1} は閉じない"""
        algebra = fixpoints(CHAIN)
        assert algebra.fixpoints == (0b00, 0b01, 0b11)
        assert closure(CHAIN, 0b10) == 0b11
        assert algebra.neg(0b01) == 0b00

    def test_absurd_frame(self):
        """前者のない状態だけのフレームでは唯一の不動点が全体"""
        algebra = fixpoints(ABSURD)
        assert algebra.fixpoints == (0b1,)
        assert algebra.zero == algebra.one

    def test_state_caps(self, monkeypatch):
        """状態数が上限を超えるとエラー（上限は設定で変えられる）"""
        frame = ModalFrame(tuple(f"s{i}" for i in range(15)))
        assert len(fixpoints(frame)) == 1
        with pytest.raises(CapExceededError):
            fixpoints_by_closure(frame)
        monkeypatch.setattr("logic_workbench.analyzers.semantics.FIXPOINT_STATE_CAP", 14)
        with pytest.raises(CapExceededError):
            fixpoints(frame)


class TestSoundClassLaws:
    """健全なフレームクラスでの束の法則"""

    def test_relational_frames_semicomplemented(self):
        """擬反射・擬対称なら A∧¬A = 0 かつ A ≤ ¬¬A"""
        for n in (1, 2, 3):
            for frame in enumerate_frames(FrameClass.RELATIONAL, n):
                algebra = fixpoints(frame)
                for a in algebra.fixpoints:
                    assert algebra.meet(a, algebra.neg(a)) == algebra.zero
                    assert a & ~algebra.neg(algebra.neg(a)) == 0

    def test_ortho_frames_involutive(self):
        """反射・対称なら ¬¬A = A"""
        for n in (1, 2, 3):
            for frame in enumerate_frames(FrameClass.ORTHO, n):
                algebra = fixpoints(frame)
                for a in algebra.fixpoints:
                    assert algebra.neg(algebra.neg(a)) == a


def _submasks(mask):
    """mask の部分集合（mask 自身と 0 を含む）"""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


class TestRandomFrames:
    """無作為なフレームでの閉包・否定・条件の対応"""

    FRAMES = 500

    def test_closure_and_negation(self):
        """c は閉包作用素、不動点は ∩ で閉じ、¬ は不動点上で反単調、¬X = c(∅)"""
        rng = random.Random(3)
        for _ in range(self.FRAMES):
            frame = random_frame(rng, rng.randint(1, 5), density=rng.choice((0.2, 0.4, 0.6, 0.8)))
            universe = frame.universe
            for b in range(universe + 1):
                cb = closure(frame, b)
                assert b & ~cb == 0
                assert closure(frame, cb) == cb
                for a in _submasks(b):
                    assert closure(frame, a) & ~cb == 0
            family = fixpoints(frame).fixpoints
            for a in family:
                assert is_fixpoint(frame, neg_op(frame, a))
                for b in family:
                    assert is_fixpoint(frame, a & b)
                    if a & ~b == 0:
                        assert neg_op(frame, b) & ~neg_op(frame, a) == 0
            assert neg_op(frame, universe) == closure(frame, 0)

    def test_condition_correspondence(self):
        """擬反射 ⇔ A∧¬A = 0、擬対称 ⇔ A ≤ ¬¬A（全ての不動点 A で）"""
        rng = random.Random(4)
        seen = {"pseudo_reflexive": set(), "pseudo_symmetric": set()}
        for _ in range(self.FRAMES):
            frame = random_frame(rng, rng.randint(1, 5), density=rng.choice((0.2, 0.4, 0.6, 0.8)))
            zero = closure(frame, 0)
            family = fixpoints(frame).fixpoints
            semicomplemented = all(a & neg_op(frame, a) & ~zero == 0 for a in family)
            double_inflationary = all(a & ~neg_op(frame, neg_op(frame, a)) == 0 for a in family)
            assert check_condition(frame, "pseudo_reflexive").holds == semicomplemented, frame
            assert check_condition(frame, "pseudo_symmetric").holds == double_inflationary, frame
            seen["pseudo_reflexive"].add(semicomplemented)
            seen["pseudo_symmetric"].add(double_inflationary)
        assert all(values == {True, False} for values in seen.values())


class TestModalOperations:
    """無作為な様相フレームでの □, ◇ の法則"""

    FRAMES = 200

    def test_modal_laws(self):
        """◇ は不動点を保ち、条件ごとに □, ◇ と ¬ の法則が成り立つ"""
        rng = random.Random(6)
        counts = {"modal_frame": 0, "additive": 0, "q_in_r": 0, "negative": 0}
        for _ in range(self.FRAMES):
            n = rng.randint(1, 4)
            frame = random_frame(rng, n, modal=True, unified=rng.random() < 0.5,
                                 density=rng.choice((0.3, 0.5, 0.7)))
            family = fixpoints(frame).fixpoints
            zero = closure(frame, 0)
            for a in family:
                assert is_fixpoint(frame, dia_op(frame, a))

            if check_condition(frame, "modal_frame").holds:
                counts["modal_frame"] += 1
                assert box_op(frame, frame.universe) == frame.universe
                for a in family:
                    assert is_fixpoint(frame, box_op(frame, a))
                    for b in family:
                        assert box_op(frame, a & b) == box_op(frame, a) & box_op(frame, b)

            if check_condition(frame, "additive").holds:
                counts["additive"] += 1
                assert dia_op(frame, zero) == zero
                for a in family:
                    for b in family:
                        expected = join(frame, [dia_op(frame, a), dia_op(frame, b)])
                        assert dia_op(frame, join(frame, [a, b])) == expected

            if all(frame.q_succ[x] & ~frame.r_succ[x] == 0 for x in range(n)):
                counts["q_in_r"] += 1
                for a in family:
                    assert dia_op(frame, neg_op(frame, a)) & ~neg_op(frame, box_op(frame, a)) == 0

            if check_condition(frame, "negative").holds:
                counts["negative"] += 1
                for a in family:
                    assert neg_op(frame, dia_op(frame, a)) & ~box_op(frame, neg_op(frame, a)) == 0
        assert counts["modal_frame"] and counts["q_in_r"], counts


class TestForcing:
    """強制関係のテスト"""

    def test_boolean_forcing(self):
        """ブールフレームでは古典的に振る舞う"""
        model = CounterModel(BOOLEAN, {"p": 0b01, "q": 0b10})
        assert forcing(model, 0, p)
        assert forcing(model, 1, Neg(p))
        assert forcing(model, 0, Or(p, q))
        assert not forcing(model, 0, And(p, q))

    def test_constants(self):
        """⊤ はどこでも、⊥ は前者のない状態だけで強制される"""
        assert forcing(CounterModel(BOOLEAN), 1, TOP)
        assert not forcing(CounterModel(BOOLEAN), 0, BOT)
        assert forcing(CounterModel(ABSURD), 0, BOT)

    def test_unbound_atom(self):
        """付値にない原子式はエラー"""
        with pytest.raises(UnboundAtomError):
            denotation(BOOLEAN, {"p": 0b01}, And(p, q))

    def test_program_matches_denotation(self):
        """共有部分式つきの評価は一式ずつの評価と一致する"""
        exprs = [Neg(And(p, q)), Or(Neg(p), Neg(q)), And(p, q)]
        valuation = {"p": 0b01, "q": 0b11}
        program = FormulaProgram(exprs)
        results = program.run(CHAIN, [valuation[name] for name in program.atoms])
        assert results == [denotation(CHAIN, valuation, f) for f in exprs]

    @given(formulas(names=("p", "q"), modal=True))
    def test_denotation_is_fixpoint(self, f):
        """様相フレームでは全ての式の外延が不動点"""
        frame = enumerate_frames(FrameClass.MODAL, 2)[-1]
        for value in fixpoints(frame).fixpoints:
            assert is_fixpoint(frame, denotation(frame, {"p": value, "q": frame.universe}, f))

    def test_analyze_model(self):
        """式ごとに強制する状態名を返す"""
        model = CounterModel(BOOLEAN, {"p": 0b01})
        assert analyze_model(model, [p, Neg(p)]) == {"p": ["s0"], "~p": ["s1"]}


class TestValuation:
    """付値の検査のテスト"""

    def test_rejects_non_fixpoint(self):
        """不動点でない値は拒否する"""
        with pytest.raises(ModelError):
            check_valuation(CHAIN, {"p": 0b10})

    def test_rejects_out_of_frame(self):
        """フレームの外の状態は拒否する"""
        with pytest.raises(ModelError):
            check_valuation(BOOLEAN, {"p": 0b100})

    def test_accepts_fixpoints(self):
        """不動点なら通る"""
        check_valuation(CHAIN, {"p": 0b01, "q": 0b11})
