"""
構文的な翻訳（二重否定翻訳、状態記述による古典論理への還元）
"""
from functools import reduce
from itertools import product
from typing import List, Sequence

from logic_workbench.errors import LanguageError
from logic_workbench.models.formula import (
    And,
    Atom,
    Consecution,
    Formula,
    LogicId,
    Neg,
    Or,
    atoms,
    is_propositional,
    render,
)


def godel_gentzen(f: Formula) -> Formula:
    """
    Gödel–Gentzen 翻訳 g

    g(p) = ¬¬p, g(¬φ) = ¬g(φ), g(φ∧ψ) = g(φ)∧g(ψ), g(φ∨ψ) = g(¬(¬φ∧¬ψ))

    Args:
        f: 命題言語の論理式

    Returns:
        ∨ を含まない翻訳結果

    Raises:
        LanguageError: □, ◇, ⊥, ⊤ を含む場合
    """
    if not is_propositional(f):
        raise LanguageError(f"g は命題言語でのみ定義されます: {render(f)}")
    return _translate(f)


def _translate(f: Formula) -> Formula:
    if isinstance(f, Atom):
        return Neg(Neg(f))
    if isinstance(f, Neg):
        return Neg(_translate(f.sub))
    if isinstance(f, And):
        return And(_translate(f.left), _translate(f.right))
    # g(φ∨ψ) = g(¬(¬φ∧¬ψ)) = ¬(¬g(φ)∧¬g(ψ))
    return Neg(And(Neg(_translate(f.left)), Neg(_translate(f.right))))


def state_descriptions(variables: Sequence[str]) -> List[Formula]:
    """
    状態記述 ±p1∧…∧±pn の一覧

    符号は否定なしが先、先頭の変数が最上位の辞書順。連言は左結合。

    Args:
        variables: 重複のない原子式名の列

    Returns:
        2^n 個の連言
    """
    if not variables:
        raise LanguageError("状態記述には少なくとも一つの変数が必要です")
    if len(set(variables)) != len(variables):
        raise LanguageError(f"変数が重複しています: {list(variables)}")
    descriptions = []
    for signs in product((False, True), repeat=len(variables)):
        literals = [Neg(Atom(v)) if negated else Atom(v) for v, negated in zip(variables, signs)]
        descriptions.append(reduce(And, literals))
    return descriptions


def classical_premise(phi: Formula, psi: Formula) -> Formula:
    """
    古典的帰結を基本論理に還元する前件 ⋁δ (δ ∧ φ)

    δ は Prop(φ)∪Prop(ψ) 上の状態記述を辞書順に並べたもの。

    Raises:
        LanguageError: 命題言語でない、または変数がない場合
    """
    if not (is_propositional(phi) and is_propositional(psi)):
        raise LanguageError("古典論理への還元は命題言語の式に限られます")
    variables = sorted(set(atoms(phi)) | set(atoms(psi)))
    disjuncts = [And(delta, phi) for delta in state_descriptions(variables)]
    return reduce(Or, disjuncts)


def classical_reduction(phi: Formula, psi: Formula) -> Consecution:
    """
    φ ⊢_C ψ を基本論理の帰結 classical_premise(φ, ψ) ⊢ ψ に還元する
    """
    return Consecution(classical_premise(phi, psi), psi, LogicId.FUNDAMENTAL)


def translate_consecution(goal: Consecution) -> Consecution:
    """φ ⊢ ψ を g(φ) ⊢ g(ψ)（基本論理）に翻訳"""
    return Consecution(godel_gentzen(goal.lhs), godel_gentzen(goal.rhs), LogicId.FUNDAMENTAL)
