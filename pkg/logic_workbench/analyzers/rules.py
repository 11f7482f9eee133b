"""
推論規則のスキーマと論理ごとの規則集合

規則 1–11 は基本論理、12–20 は基本様相論理の規則。
追加規則: dne（¬¬φ ⊢ φ）、pc（φ∧ψ ⊢ φ∧¬φ から φ ⊢ ¬ψ）、
side（α∧φ ⊢ χ と α∧ψ ⊢ χ から α∧(φ∨ψ) ⊢ χ）。
"""
from typing import Callable, Dict, FrozenSet, Sequence, Tuple

from logic_workbench.models.formula import BOT, TOP, And, Box, Consecution, Dia, Formula, LogicId, Neg, Or

Sequent = Tuple[Formula, Formula]

FUNDAMENTAL_RULES = frozenset(str(i) for i in range(1, 12))
MODAL_RULES = frozenset(str(i) for i in range(12, 21))

RULE_SETS: Dict[LogicId, FrozenSet[str]] = {
    LogicId.FUNDAMENTAL: FUNDAMENTAL_RULES,
    LogicId.ORTHO: FUNDAMENTAL_RULES | {"dne"},
    # pc と side は 6/11 と 10 を導出できるので、元の規則を残しても同じ論理になる
    LogicId.INTUITIONISTIC: FUNDAMENTAL_RULES | {"pc", "side"},
    LogicId.CLASSICAL: FUNDAMENTAL_RULES | {"dne", "pc"},
    LogicId.FUNDAMENTAL_MODAL: FUNDAMENTAL_RULES | MODAL_RULES,
}


def _axiom(check: Callable[[Formula, Formula], bool]) -> Callable[[Sequent, Sequence[Sequent]], bool]:
    return lambda c, ps: not ps and check(*c)


def _rule_8(c: Sequent, ps: Sequence[Sequent]) -> bool:
    return len(ps) == 2 and ps[0][0] == c[0] and ps[0][1] == ps[1][0] and ps[1][1] == c[1]


def _rule_9(c: Sequent, ps: Sequence[Sequent]) -> bool:
    return (len(ps) == 2 and isinstance(c[1], And) and ps[0] == (c[0], c[1].left)
            and ps[1] == (c[0], c[1].right))


def _rule_10(c: Sequent, ps: Sequence[Sequent]) -> bool:
    return (len(ps) == 2 and isinstance(c[0], Or) and ps[0] == (c[0].left, c[1])
            and ps[1] == (c[0].right, c[1]))


def _rule_11(c: Sequent, ps: Sequence[Sequent]) -> bool:
    return len(ps) == 1 and c == (Neg(ps[0][1]), Neg(ps[0][0]))


def _monotone(op) -> Callable[[Sequent, Sequence[Sequent]], bool]:
    return lambda c, ps: len(ps) == 1 and c == (op(ps[0][0]), op(ps[0][1]))


def _pc(c: Sequent, ps: Sequence[Sequent]) -> bool:
    if len(ps) != 1:
        return False
    (left, right), = ps
    return (isinstance(left, And) and c == (left.left, Neg(left.right))
            and right == And(left.left, Neg(left.left)))


def _side(c: Sequent, ps: Sequence[Sequent]) -> bool:
    lhs, chi = c
    if len(ps) != 2 or not (isinstance(lhs, And) and isinstance(lhs.right, Or)):
        return False
    alpha, cases = lhs.left, lhs.right
    return ps[0] == (And(alpha, cases.left), chi) and ps[1] == (And(alpha, cases.right), chi)


def _is_contradiction(f: Formula) -> bool:
    return isinstance(f, And) and f.right == Neg(f.left)


SCHEMAS: Dict[str, Callable[[Sequent, Sequence[Sequent]], bool]] = {
    "1": _axiom(lambda l, r: l == r),
    "2": _axiom(lambda l, r: isinstance(l, And) and l.left == r),
    "3": _axiom(lambda l, r: isinstance(l, And) and l.right == r),
    "4": _axiom(lambda l, r: isinstance(r, Or) and r.left == l),
    "5": _axiom(lambda l, r: isinstance(r, Or) and r.right == l),
    "6": _axiom(lambda l, r: r == Neg(Neg(l))),
    "7": _axiom(lambda l, r: _is_contradiction(l)),
    "8": _rule_8,
    "9": _rule_9,
    "10": _rule_10,
    "11": _rule_11,
    "12": _axiom(lambda l, r: l == BOT or r == TOP),
    "13": _axiom(lambda l, r: l == Neg(TOP) and r == BOT),
    "14": _axiom(lambda l, r: isinstance(l, And) and isinstance(l.left, Box) and isinstance(l.right, Box)
                 and r == Box(And(l.left.sub, l.right.sub))),
    "15": _axiom(lambda l, r: isinstance(l, Dia) and isinstance(l.sub, Or)
                 and r == Or(Dia(l.sub.left), Dia(l.sub.right))),
    "16": _axiom(lambda l, r: isinstance(l, Dia) and isinstance(l.sub, Neg) and r == Neg(Box(l.sub.sub))),
    "17": _axiom(lambda l, r: l == TOP and r == Box(TOP)),
    "18": _axiom(lambda l, r: l == Dia(BOT) and r == BOT),
    "19": _monotone(Box),
    "20": _monotone(Dia),
    "dne": _axiom(lambda l, r: l == Neg(Neg(r))),
    "pc": _pc,
    "side": _side,
}


def match_rule(rule_id: str, conclusion: Consecution, premises: Sequence[Consecution]) -> bool:
    """
    結論と前提が規則のスキーマの具体例になっているか

    Args:
        rule_id: 規則 ID
        conclusion: 結論
        premises: 前提（規則に書かれた順）

    Returns:
        スキーマに一致し、規則が結論の論理に属していれば True
    """
    if rule_id not in SCHEMAS or rule_id not in RULE_SETS[conclusion.logic]:
        return False
    if any(p.logic is not conclusion.logic for p in premises):
        return False
    return SCHEMAS[rule_id]((conclusion.lhs, conclusion.rhs), [(p.lhs, p.rhs) for p in premises])
