"""
テスト用の hypothesis ストラテジと規則の具体例
"""
from hypothesis import strategies as st

from logic_workbench.models.formula import BOT, TOP, And, Atom, Box, Consecution, Dia, LogicId, Neg, Or
from logic_workbench.models.frame import ModalFrame
from logic_workbench.models.verdict import RuleInstance

NAMES = ("p", "q", "r")


def formulas(names=NAMES, modal: bool = False, max_leaves: int = 8):
    """原子式 names からなる論理式"""
    leaves = st.sampled_from([Atom(name) for name in names] + ([BOT, TOP] if modal else []))

    def extend(children):
        options = [st.builds(Neg, children), st.builds(And, children, children), st.builds(Or, children, children)]
        if modal:
            options += [st.builds(Box, children), st.builds(Dia, children)]
        return st.one_of(*options)

    return st.recursive(leaves, extend, max_leaves=max_leaves)


@st.composite
def frames(draw, max_states: int = 4, modal: bool = False):
    """条件を課さない小さいフレーム（modal なら Q = R）"""
    n = draw(st.integers(min_value=1, max_value=max_states))
    pairs = st.frozensets(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)))
    open_rel = draw(pairs)
    acc_r = draw(pairs) if modal else frozenset()
    return ModalFrame(tuple(f"s{i}" for i in range(n)), open_rel, acc_r, acc_r)


def rule_instances(a, b, c):
    """規則 1–20 の具体例（様相論理の帰結として）"""
    M = LogicId.FUNDAMENTAL_MODAL

    def seq(lhs, rhs):
        return Consecution(lhs, rhs, M)

    return {
        "1": RuleInstance("1", seq(a, a)),
        "2": RuleInstance("2", seq(And(a, b), a)),
        "3": RuleInstance("3", seq(And(a, b), b)),
        "4": RuleInstance("4", seq(a, Or(a, b))),
        "5": RuleInstance("5", seq(b, Or(a, b))),
        "6": RuleInstance("6", seq(a, Neg(Neg(a)))),
        "7": RuleInstance("7", seq(And(a, Neg(a)), b)),
        "8": RuleInstance("8", seq(a, c), (seq(a, b), seq(b, c))),
        "9": RuleInstance("9", seq(a, And(b, c)), (seq(a, b), seq(a, c))),
        "10": RuleInstance("10", seq(Or(a, b), c), (seq(a, c), seq(b, c))),
        "11": RuleInstance("11", seq(Neg(b), Neg(a)), (seq(a, b),)),
        "12": RuleInstance("12", seq(BOT, a)),
        "13": RuleInstance("13", seq(Neg(TOP), BOT)),
        "14": RuleInstance("14", seq(And(Box(a), Box(b)), Box(And(a, b)))),
        "15": RuleInstance("15", seq(Dia(Or(a, b)), Or(Dia(a), Dia(b)))),
        "16": RuleInstance("16", seq(Dia(Neg(a)), Neg(Box(a)))),
        "17": RuleInstance("17", seq(TOP, Box(TOP))),
        "18": RuleInstance("18", seq(Dia(BOT), BOT)),
        "19": RuleInstance("19", seq(Box(a), Box(b)), (seq(a, b),)),
        "20": RuleInstance("20", seq(Dia(a), Dia(b)), (seq(a, b),)),
    }
