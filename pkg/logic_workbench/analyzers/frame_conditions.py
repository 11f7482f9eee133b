"""
フレーム条件の検査

各条件は有限フレーム上の一階の条件として全数検査する。
内部関数はビットマスク表を直接受け取り、違反した状態の組（なければ None）を返す。
フレームの列挙でもこの内部関数をそのまま使う。
"""
from typing import Callable, Dict, Optional, Sequence, Tuple

from logic_workbench.models.frame import FrameClass, ModalFrame
from logic_workbench.models.report import PropertyReport
from logic_workbench.utils.bits import StateSet, iter_bits, lowest

Witness = Optional[Tuple[int, ...]]
Masks = Sequence[StateSet]


def predecessors(n: int, succ: Masks) -> Tuple[StateSet, ...]:
    """succ の逆関係（pred[y] = {x ∣ y ∈ succ[x]}）"""
    pred = [0] * n
    for x in range(n):
        for y in iter_bits(succ[x]):
            pred[y] |= 1 << x
    return tuple(pred)


def _pre_refines(open_to: Masks, z: int, x: int) -> bool:
    return not open_to[z] & ~open_to[x]


def reflexive_failure(n: int, open_to: Masks) -> Witness:
    for x in range(n):
        if not open_to[x] >> x & 1:
            return (x,)
    return None


def symmetric_failure(n: int, open_to: Masks) -> Witness:
    for x in range(n):
        for y in iter_bits(open_to[x]):
            if not open_to[y] >> x & 1:
                return (y, x)
    return None


def pseudo_reflexive_failure(n: int, open_to: Masks) -> Witness:
    """◁-前者を持つ x ごとに、x を前精密化する z◁x があるか"""
    for x in range(n):
        preds = open_to[x]
        if preds and not any(_pre_refines(open_to, z, x) for z in iter_bits(preds)):
            return (x,)
    return None


def pseudo_symmetric_failure(n: int, open_to: Masks) -> Witness:
    """y◁x ごとに、x を前精密化する z◁y があるか"""
    for x in range(n):
        for y in iter_bits(open_to[x]):
            if not any(_pre_refines(open_to, z, x) for z in iter_bits(open_to[y])):
                return (x, y)
    return None


def modal_failure(n: int, open_to: Masks, opens: Masks, r_succ: Masks) -> Witness:
    """xRy かつ z◁y なら ∃x′◁x ∀x″▷x′ ∃y″: x″Ry″ かつ z◁y″"""
    r_pred = predecessors(n, r_succ)
    for z in range(n):
        reach = 0
        for x2 in range(n):
            if r_succ[x2] & opens[z]:
                reach |= 1 << x2
        good = 0
        for x1 in range(n):
            if not opens[x1] & ~reach:
                good |= 1 << x1
        ok = 0
        for x in range(n):
            if open_to[x] & good:
                ok |= 1 << x
        for y in iter_bits(opens[z]):
            bad = r_pred[y] & ~ok
            if bad:
                return (lowest(bad), y, z)
    return None


def _reach_below(n: int, q_succ: Masks, target: StateSet) -> StateSet:
    """{x″ ∣ ∃y″: x″Qy″ かつ y″ ∈ target}"""
    result = 0
    for x2 in range(n):
        if q_succ[x2] & target:
            result |= 1 << x2
    return result


def additive_failure(n: int, open_to: Masks, opens: Masks, q_succ: Masks) -> Witness:
    """xQy かつ y◁z なら ∃x′▷x ∀x″◁x′ ∃y″: x″Qy″ かつ y″◁z"""
    q_pred = predecessors(n, q_succ)
    for z in range(n):
        reach = _reach_below(n, q_succ, open_to[z])
        good = 0
        for x1 in range(n):
            if not open_to[x1] & ~reach:
                good |= 1 << x1
        ok = 0
        for x in range(n):
            if opens[x] & good:
                ok |= 1 << x
        for y in iter_bits(open_to[z]):
            bad = q_pred[y] & ~ok
            if bad:
                return (lowest(bad), y, z)
    return None


def negative_failure(n: int, open_to: Masks, opens: Masks, r_succ: Masks, q_succ: Masks) -> Witness:
    """xRy かつ z◁y なら ∃x′◁x ∀x″◁x′ ∃y″: x″Qy″ かつ y″◁z"""
    r_pred = predecessors(n, r_succ)
    for z in range(n):
        reach = _reach_below(n, q_succ, open_to[z])
        good = 0
        for x1 in range(n):
            if not open_to[x1] & ~reach:
                good |= 1 << x1
        ok = 0
        for x in range(n):
            if open_to[x] & good:
                ok |= 1 << x
        for y in iter_bits(opens[z]):
            bad = r_pred[y] & ~ok
            if bad:
                return (lowest(bad), y, z)
    return None


def unified_failure(n: int, r_succ: Masks, q_succ: Masks) -> Witness:
    for x in range(n):
        diff = r_succ[x] ^ q_succ[x]
        if diff:
            return (x, lowest(diff))
    return None


_CHECKS: Dict[str, Callable[[ModalFrame], Witness]] = {
    "reflexive": lambda f: reflexive_failure(f.size, f.open_to),
    "symmetric": lambda f: symmetric_failure(f.size, f.open_to),
    "pseudo_reflexive": lambda f: pseudo_reflexive_failure(f.size, f.open_to),
    "pseudo_symmetric": lambda f: pseudo_symmetric_failure(f.size, f.open_to),
    "modal_frame": lambda f: modal_failure(f.size, f.open_to, f.opens, f.r_succ),
    "additive": lambda f: additive_failure(f.size, f.open_to, f.opens, f.q_succ),
    "negative": lambda f: negative_failure(f.size, f.open_to, f.opens, f.r_succ, f.q_succ),
    "unified": lambda f: unified_failure(f.size, f.r_succ, f.q_succ),
}

CONDITIONS = tuple(_CHECKS)


def check_condition(frame: ModalFrame, condition: str) -> PropertyReport:
    """
    フレーム条件を全数検査

    Args:
        frame: フレーム
        condition: 条件名（CONDITIONS のいずれか）

    Returns:
        検査結果（違反時は違反した状態の組を witness に持つ）
    """
    if condition not in _CHECKS:
        raise ValueError(f"未知のフレーム条件です: {condition}")
    witness = _CHECKS[condition](frame)
    if witness is None:
        return PropertyReport.ok(condition)
    return PropertyReport.fail(condition, *(frame.states[i] for i in witness))


def pre_refines(frame: ModalFrame, z: int, x: int) -> bool:
    """z が x を前精密化するか（w◁z ならば w◁x）"""
    return _pre_refines(frame.open_to, z, x)


def in_class(frame: ModalFrame, frame_class: FrameClass) -> bool:
    """フレームクラスの条件をすべて満たすか"""
    return all(_CHECKS[c](frame) is None for c in frame_class.conditions)


def analyze_frame(frame: ModalFrame, conditions: Optional[Sequence[str]] = None) -> Dict[str, dict]:
    """
    フレーム条件をまとめて検査

    Returns:
        条件名 → 検査結果の辞書
    """
    return {c: check_condition(frame, c).to_dict() for c in (conditions or CONDITIONS)}
