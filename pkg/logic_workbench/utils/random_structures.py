"""
無作為な論理式・フレーム・束の生成

性質テストと CLI のスポットチェックで使う。乱数は呼び出し側の random.Random に従う。
"""
import random
from itertools import product
from typing import Iterator, List, Optional, Sequence, Tuple

from logic_workbench.models.formula import BOT, TOP, And, Atom, Box, Dia, Formula, LogicId, Neg, Or
from logic_workbench.models.frame import ModalFrame
from logic_workbench.models.lattice_algebra import LatticeAlgebra
from logic_workbench.utils.bits import full_mask


def random_formula(rng: random.Random, names: Sequence[str], depth: int,
                   logic: LogicId = LogicId.FUNDAMENTAL) -> Formula:
    """
    深さ depth 以下の論理式

    Args:
        rng: 乱数生成器
        names: 原子式名
        depth: 最大の深さ
        logic: 言語（様相論理なら □, ◇, ⊥, ⊤ も使う）
    """
    leaves: List[Formula] = [Atom(name) for name in names]
    if logic.modal:
        leaves += [BOT, TOP]
    if depth <= 0 or rng.random() < 0.25:
        return rng.choice(leaves)
    unary = [Neg, Box, Dia] if logic.modal else [Neg]
    op = rng.choice(unary + [And, Or])
    if op in (And, Or):
        return op(random_formula(rng, names, depth - 1, logic), random_formula(rng, names, depth - 1, logic))
    return op(random_formula(rng, names, depth - 1, logic))


def random_frame(rng: random.Random, n: int, modal: bool = False, unified: bool = True,
                 density: float = 0.4) -> ModalFrame:
    """
    n 状態の無作為なフレーム（クラスの条件は課さない）

    Args:
        modal: R（と Q）も作るか
        unified: modal のとき Q = R にするか
        density: 各対が関係に入る確率
    """
    def relation() -> frozenset:
        return frozenset((x, y) for x in range(n) for y in range(n) if rng.random() < density)

    open_rel = relation()
    if not modal:
        return ModalFrame(tuple(f"s{i}" for i in range(n)), open_rel)
    acc_r = relation()
    acc_q = acc_r if unified else relation()
    return ModalFrame(tuple(f"s{i}" for i in range(n)), open_rel, acc_r, acc_q)


def closure_system(rng: random.Random, base: int, generators: int) -> List[int]:
    """{0..base-1} の無作為な部分集合族を共通部分で閉じたもの（全体集合を含む）"""
    top = full_mask(base)
    family = {top}
    for _ in range(generators):
        family.add(rng.randrange(1 << base))
    changed = True
    while changed:
        changed = False
        for a in list(family):
            for b in list(family):
                if a & b not in family:
                    family.add(a & b)
                    changed = True
    return sorted(family, key=lambda s: (s.bit_count(), s))


def random_lattice(rng: random.Random, base: int = 3, generators: int = 3,
                   tables: Tuple[str, ...] = ()) -> LatticeAlgebra:
    """
    閉包系として作った有限束（包含順序）

    Args:
        base: 台集合の大きさ
        generators: 無作為に選ぶ部分集合の数
        tables: 無作為な表をつける演算（"neg", "box", "dia" のいずれか）
    """
    family = closure_system(rng, base, generators)
    n = len(family)
    leq = tuple(tuple(not a & ~b for b in family) for a in family)
    elements = tuple(f"e{i}" for i in range(n))
    ops = {label: tuple(rng.randrange(n) for _ in range(n)) for label in tables}
    return LatticeAlgebra(elements, leq, **ops)


def all_unary_maps(n: int) -> Iterator[Tuple[int, ...]]:
    """n 要素上の全ての写像（n^n 通り、辞書順）"""
    return product(range(n), repeat=n)


def random_unary_map(rng: random.Random, n: int, monotone_in: Optional[LatticeAlgebra] = None) -> Tuple[int, ...]:
    """
    無作為な写像

    monotone_in を与えると、その束で単調な写像が出るまで引き直す（小さい束向け）。
    """
    while True:
        table = tuple(rng.randrange(n) for _ in range(n))
        if monotone_in is None:
            return table
        L = monotone_in
        if all(L.le(table[a], table[b]) for a in range(n) for b in range(n) if L.le(a, b)):
            return table
