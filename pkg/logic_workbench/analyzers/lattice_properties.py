"""
束の性質と否定・様相の相互作用公理の検査
"""
from typing import Callable, Dict, List, Sequence

from logic_workbench.models.lattice_algebra import LatticeAlgebra
from logic_workbench.models.report import PropertyReport

_SYMBOL = {"neg": "¬", "box": "□", "dia": "◇"}


def validate(algebra: LatticeAlgebra) -> PropertyReport:
    """
    有界束であるか検査

    Returns:
        成り立てば property="lattice"、欠陥があればその種類と関係する要素
    """
    defect = algebra.find_defect()
    if defect is None:
        return PropertyReport.ok("lattice")
    kind, witness = defect
    return PropertyReport(kind, False, witness)


def _apply(algebra: LatticeAlgebra, label: str, a: int) -> int:
    return getattr(algebra, label)[a]


def _pairs(algebra: LatticeAlgebra):
    n = algebra.size
    return ((a, b) for a in range(n) for b in range(n))


def _check_antitone(L: LatticeAlgebra) -> PropertyReport:
    for a, b in _pairs(L):
        if L.le(a, b) and not L.le(L.neg[b], L.neg[a]):
            return PropertyReport.fail("antitone", L.name(a), L.name(b))
    return PropertyReport.ok("antitone")


def _check_neg_top_is_bot(L: LatticeAlgebra) -> PropertyReport:
    if L.neg[L.top] != L.bottom:
        return PropertyReport.fail("neg_top_is_bot", L.name(L.top))
    return PropertyReport.ok("neg_top_is_bot")


def _check_double_inflationary(L: LatticeAlgebra) -> PropertyReport:
    for a in range(L.size):
        if not L.le(a, L.neg[L.neg[a]]):
            return PropertyReport.fail("double_inflationary", L.name(a))
    return PropertyReport.ok("double_inflationary")


def _check_dual_self_adjoint(L: LatticeAlgebra) -> PropertyReport:
    for a, b in _pairs(L):
        if L.le(a, L.neg[b]) and not L.le(b, L.neg[a]):
            return PropertyReport.fail("dual_self_adjoint", L.name(a), L.name(b))
    return PropertyReport.ok("dual_self_adjoint")


def _check_semicomplementation(L: LatticeAlgebra) -> PropertyReport:
    for a in range(L.size):
        if L.meet(a, L.neg[a]) != L.bottom:
            return PropertyReport.fail("semicomplementation", L.name(a))
    return PropertyReport.ok("semicomplementation")


def _check_weak_pseudocomplementation(L: LatticeAlgebra) -> PropertyReport:
    for part in (_check_semicomplementation(L), _check_dual_self_adjoint(L)):
        if not part:
            return PropertyReport("weak_pseudocomplementation", False, part.witness)
    return PropertyReport.ok("weak_pseudocomplementation")


def _check_pseudocomplementation(L: LatticeAlgebra) -> PropertyReport:
    # a∧b=0 ならば b≤¬a、かつ a∧¬a=0
    for a, b in _pairs(L):
        if L.meet(a, b) == L.bottom and not L.le(b, L.neg[a]):
            return PropertyReport.fail("pseudocomplementation", L.name(a), L.name(b))
    semi = _check_semicomplementation(L)
    if not semi:
        return PropertyReport("pseudocomplementation", False, semi.witness)
    return PropertyReport.ok("pseudocomplementation")


def _check_involutive(L: LatticeAlgebra) -> PropertyReport:
    for a in range(L.size):
        if L.neg[L.neg[a]] != a:
            return PropertyReport.fail("involutive", L.name(a))
    return PropertyReport.ok("involutive")


def _monotone(label: str) -> Callable[[LatticeAlgebra], PropertyReport]:
    name = f"monotone_{label}"

    def check(L: LatticeAlgebra) -> PropertyReport:
        for a, b in _pairs(L):
            if L.le(a, b) and not L.le(_apply(L, label, a), _apply(L, label, b)):
                return PropertyReport.fail(name, L.name(a), L.name(b))
        return PropertyReport.ok(name)

    return check


def _multiplicative(name: str) -> Callable[[LatticeAlgebra], PropertyReport]:
    # 有限束では空の meet（□1=1）と二項 meet の保存で任意の meet の保存と同値
    def check(L: LatticeAlgebra) -> PropertyReport:
        if L.box[L.top] != L.top:
            return PropertyReport.fail(name, L.name(L.top))
        for a, b in _pairs(L):
            if L.box[L.meet(a, b)] != L.meet(L.box[a], L.box[b]):
                return PropertyReport.fail(name, L.name(a), L.name(b))
        return PropertyReport.ok(name)

    return check


def _additive(name: str) -> Callable[[LatticeAlgebra], PropertyReport]:
    def check(L: LatticeAlgebra) -> PropertyReport:
        if L.dia[L.bottom] != L.bottom:
            return PropertyReport.fail(name, L.name(L.bottom))
        for a, b in _pairs(L):
            if L.dia[L.join(a, b)] != L.join(L.dia[a], L.dia[b]):
                return PropertyReport.fail(name, L.name(a), L.name(b))
        return PropertyReport.ok(name)

    return check


def _check_box_below_dia(L: LatticeAlgebra) -> PropertyReport:
    for a in range(L.size):
        if not L.le(L.box[a], L.dia[a]):
            return PropertyReport.fail("box_below_dia", L.name(a))
    return PropertyReport.ok("box_below_dia")


# 性質名 → (必要な表, 検査関数)
_PROPERTIES: Dict[str, tuple] = {
    "antitone": (("neg",), _check_antitone),
    "neg_top_is_bot": (("neg",), _check_neg_top_is_bot),
    "double_inflationary": (("neg",), _check_double_inflationary),
    "dual_self_adjoint": (("neg",), _check_dual_self_adjoint),
    "semicomplementation": (("neg",), _check_semicomplementation),
    "weak_pseudocomplementation": (("neg",), _check_weak_pseudocomplementation),
    "pseudocomplementation": (("neg",), _check_pseudocomplementation),
    "involutive": (("neg",), _check_involutive),
    "monotone_box": (("box",), _monotone("box")),
    "monotone_dia": (("dia",), _monotone("dia")),
    "multiplicative": (("box",), _multiplicative("multiplicative")),
    "additive": (("dia",), _additive("additive")),
    "completely_multiplicative": (("box",), _multiplicative("completely_multiplicative")),
    "completely_additive": (("dia",), _additive("completely_additive")),
    "box_below_dia": (("box", "dia"), _check_box_below_dia),
}

PROPERTIES = tuple(_PROPERTIES)


def check_property(algebra: LatticeAlgebra, prop: str) -> PropertyReport:
    """
    束の性質を全数検査

    Args:
        algebra: 束（validate 済みであること）
        prop: 性質名（PROPERTIES のいずれか）

    Returns:
        検査結果

    Raises:
        LatticeDefect: 束でない、または必要な表がない場合
    """
    if prop not in _PROPERTIES:
        raise ValueError(f"未知の性質です: {prop}")
    tables, check = _PROPERTIES[prop]
    algebra.require(*tables)
    algebra.require_lattice()
    return check(algebra)


# 公理名 → (左辺の演算列, 右辺の演算列, 等式なら True)
_AXIOMS: Dict[str, tuple] = {
    "DiamondNeg": (("dia", "neg"), ("neg", "box"), False),
    "BoxNeg": (("box", "neg"), ("neg", "dia"), False),
    "NegDiamond": (("neg", "dia"), ("box", "neg"), False),
    "NegBox": (("neg", "box"), ("dia", "neg"), False),
    "DiaDef": (("dia",), ("neg", "box", "neg"), True),
    "BoxDef": (("box",), ("neg", "dia", "neg"), True),
}

AXIOMS = tuple(_AXIOMS)
INTERACTION_AXIOMS = ("DiamondNeg", "BoxNeg", "NegDiamond", "NegBox")


def _evaluate(L: LatticeAlgebra, ops: Sequence[str], a: int) -> int:
    for label in reversed(ops):
        a = _apply(L, label, a)
    return a


def _forms(L: LatticeAlgebra, ops: Sequence[str], a: int) -> List[str]:
    """内側から一段ずつ評価した表示 ["◇¬b", "◇a", "1"]"""
    forms = []
    for k in range(len(ops), -1, -1):
        prefix = "".join(_SYMBOL[label] for label in ops[:k])
        forms.append(prefix + L.name(_evaluate(L, ops[k:], a)))
    return forms


def witness_chain(L: LatticeAlgebra, axiom: str, a: int) -> str:
    """
    公理の反例を連鎖で表示（例: "◇¬b = ◇a = 1 ≰ a = ¬b = ¬□b"）
    """
    left_ops, right_ops, equation = _AXIOMS[axiom]
    left = " = ".join(_forms(L, left_ops, a))
    right = " = ".join(reversed(_forms(L, right_ops, a)))
    return f"{left} {'≠' if equation else '≰'} {right}"


def check_axiom(algebra: LatticeAlgebra, axiom: str) -> PropertyReport:
    """
    相互作用公理を全要素で検査

    Args:
        algebra: ¬, □, ◇ の表を持つ束
        axiom: 公理名（AXIOMS のいずれか）

    Returns:
        検査結果（反例の要素と連鎖表示つき）
    """
    if axiom not in _AXIOMS:
        raise ValueError(f"未知の公理です: {axiom}")
    algebra.require("neg", "box", "dia")
    algebra.require_lattice()
    left_ops, right_ops, equation = _AXIOMS[axiom]
    for a in range(algebra.size):
        left = _evaluate(algebra, left_ops, a)
        right = _evaluate(algebra, right_ops, a)
        holds = left == right if equation else algebra.le(left, right)
        if not holds:
            return PropertyReport.fail(axiom, algebra.name(a), chain=witness_chain(algebra, axiom, a))
    return PropertyReport.ok(axiom)


def analyze_axioms(algebra: LatticeAlgebra, axioms: Sequence[str] = INTERACTION_AXIOMS) -> Dict[str, dict]:
    """公理の検査結果をまとめる"""
    return {ax: check_axiom(algebra, ax).to_dict() for ax in axioms}


def analyze_properties(algebra: LatticeAlgebra, properties: Sequence[str] = None) -> Dict[str, dict]:
    """
    表がそろっている性質をまとめて検査

    Returns:
        性質名 → 検査結果の辞書
    """
    results = {}
    for prop in properties or PROPERTIES:
        tables, _ = _PROPERTIES[prop]
        if all(getattr(algebra, t) is not None for t in tables):
            results[prop] = check_property(algebra, prop).to_dict()
    return results
