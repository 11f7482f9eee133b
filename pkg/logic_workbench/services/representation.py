"""
表現定理の構成と検証

有限束 L から対の集合（またはフィルタとイデアルの対）の上のフレームを作り、
フレーム条件と標準埋め込み f(a) = {x ∣ x₀ ≤ a} を全数検査する。
"""
import logging
from itertools import combinations
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from logic_workbench.analyzers.frame_conditions import check_condition
from logic_workbench.analyzers.lattice_properties import check_axiom, check_property, validate
from logic_workbench.analyzers.semantics import box_op, closure, dia_op, fixpoints, is_fixpoint, join, meet, neg_op
from logic_workbench.config.settings import BRUTE_FORCE_STATE_CAP, EMBEDDING_FAMILY_CAP
from logic_workbench.errors import CapExceededError, ModelError, PreconditionError
from logic_workbench.models.frame import ModalFrame
from logic_workbench.models.lattice_algebra import LatticeAlgebra
from logic_workbench.models.report import MorphismReport, PropertyReport
from logic_workbench.utils.bits import StateSet, iter_bits, mask_of

logger = logging.getLogger(__name__)

Pair = Tuple[int, int]

FLAVORS = ("pairs", "unified", "filter-ideal", "filter-ideal-unified")

PAIRS_PRECONDITIONS = ("antitone", "neg_top_is_bot", "multiplicative", "additive")
UNIFIED_PRECONDITIONS = PAIRS_PRECONDITIONS + ("dual_self_adjoint",)


def check_preconditions(algebra: LatticeAlgebra, unified: bool = False) -> PropertyReport:
    """
    構成の前提条件を順に検査し、最初に破れたものを返す

    有限束では完全乗法性・完全加法性は二項の場合と同値なので、
    対の構成とフィルタ・イデアルの構成で前提は同じになる。

    Returns:
        すべて成り立てば property="preconditions" の成功レポート
    """
    report = validate(algebra)
    if not report:
        return report
    algebra.require("neg", "box", "dia")
    for prop in UNIFIED_PRECONDITIONS if unified else PAIRS_PRECONDITIONS:
        report = check_property(algebra, prop)
        if not report:
            return report
    if unified:
        report = check_axiom(algebra, "DiamondNeg")
        if not report:
            return report
    return PropertyReport.ok("preconditions")


def _require(algebra: LatticeAlgebra, unified: bool) -> None:
    report = check_preconditions(algebra, unified)
    if not report:
        logger.warning("representation precondition %s fails at %s", report.property, report.witness)
        raise PreconditionError(report)


# --- 対の構成 -------------------------------------------------------------


def pairs_carrier(algebra: LatticeAlgebra) -> List[Pair]:
    """X = {(a,b) ∣ ¬a ≤ b}（a, b の添字順）"""
    algebra.require_lattice()
    algebra.require("neg")
    n = algebra.size
    return [(a, b) for a in range(n) for b in range(n) if algebra.le(algebra.neg[a], b)]


def _pair_name(algebra: LatticeAlgebra, x: Pair) -> str:
    return f"({algebra.name(x[0])},{algebra.name(x[1])})"


def _pairs_open(algebra: LatticeAlgebra, x: Pair, y: Pair) -> bool:
    # x◁y iff x₁ ≱ y₀
    return not algebra.le(y[0], x[1])


def _pairs_box_reach(algebra: LatticeAlgebra, x: Pair, y: Pair) -> bool:
    return all(algebra.le(y[0], c) for c in range(algebra.size) if algebra.le(x[0], algebra.box[c]))


def _pairs_dia_reach(algebra: LatticeAlgebra, x: Pair, y: Pair) -> bool:
    return all(algebra.le(c, y[1]) for c in range(algebra.size) if algebra.le(algebra.dia[c], x[1]))


def _assemble(
    names: Sequence[str],
    carrier: Sequence,
    opened: Callable,
    r_rel: Callable,
    q_rel: Optional[Callable] = None,
) -> ModalFrame:
    indexed = list(enumerate(carrier))
    open_rel = frozenset((i, j) for i, x in indexed for j, y in indexed if opened(x, y))
    acc_r = frozenset((i, j) for i, x in indexed for j, y in indexed if r_rel(x, y))
    acc_q = acc_r if q_rel is None else frozenset((i, j) for i, x in indexed for j, y in indexed if q_rel(x, y))
    return ModalFrame(tuple(names), open_rel, acc_r, acc_q)


def build_pairs_frame(algebra: LatticeAlgebra) -> ModalFrame:
    """
    対の集合の上の加法的様相フレーム

    x◁y iff x₁ ≱ y₀、xRy iff ∀a (x₀ ≤ □a ⇒ y₀ ≤ a)、xQy iff ∀a (◇a ≤ x₁ ⇒ a ≤ y₁)

    Raises:
        PreconditionError: ¬ が反単調で ¬1=0、□ が乗法的、◇ が加法的でない場合
    """
    _require(algebra, unified=False)
    carrier = pairs_carrier(algebra)
    frame = _assemble(
        [_pair_name(algebra, x) for x in carrier],
        carrier,
        lambda x, y: _pairs_open(algebra, x, y),
        lambda x, y: _pairs_box_reach(algebra, x, y),
        lambda x, y: _pairs_dia_reach(algebra, x, y),
    )
    logger.info("built pairs frame with %d states", frame.size)
    return frame


def build_unified_frame(algebra: LatticeAlgebra) -> ModalFrame:
    """
    対の集合の上の統一フレーム（Q = R）

    xRy iff ∀a (x₀ ≤ □a ⇒ y₀ ≤ a かつ ◇a ≤ x₁ ⇒ a ≤ y₁)

    Raises:
        PreconditionError: 対の構成の前提に加えて ¬ が双対自己随伴でない、または ◇¬a ≤ ¬□a が破れる場合
    """
    _require(algebra, unified=True)
    carrier = pairs_carrier(algebra)
    frame = _assemble(
        [_pair_name(algebra, x) for x in carrier],
        carrier,
        lambda x, y: _pairs_open(algebra, x, y),
        lambda x, y: _pairs_box_reach(algebra, x, y) and _pairs_dia_reach(algebra, x, y),
    )
    logger.info("built unified frame with %d states", frame.size)
    return frame


# --- フィルタとイデアルの構成 -----------------------------------------------


def _check_family_cap(algebra: LatticeAlgebra) -> None:
    if algebra.size > BRUTE_FORCE_STATE_CAP:
        raise CapExceededError("フィルタ・イデアル列挙の要素数", BRUTE_FORCE_STATE_CAP, algebra.size)


def filters(algebra: LatticeAlgebra) -> List[StateSet]:
    """空でない上閉かつ meet で閉じた部分集合（要素のビットマスク、昇順）"""
    _check_family_cap(algebra)
    n = algebra.size
    found = []
    for mask in range(1, 1 << n):
        items = list(iter_bits(mask))
        if any(algebra.le(a, b) and not mask >> b & 1 for a in items for b in range(n)):
            continue
        if any(not mask >> algebra.meet(a, b) & 1 for a in items for b in items):
            continue
        found.append(mask)
    return found


def ideals(algebra: LatticeAlgebra) -> List[StateSet]:
    """空でない下閉かつ join で閉じた部分集合"""
    _check_family_cap(algebra)
    n = algebra.size
    found = []
    for mask in range(1, 1 << n):
        items = list(iter_bits(mask))
        if any(algebra.le(b, a) and not mask >> b & 1 for a in items for b in range(n)):
            continue
        if any(not mask >> algebra.join(a, b) & 1 for a in items for b in items):
            continue
        found.append(mask)
    return found


def filter_ideal_carrier(algebra: LatticeAlgebra) -> List[Pair]:
    """X = {(F,I) ∣ {¬a ∣ a∈F} ⊆ I}（F, I のマスク順）"""
    algebra.require_lattice()
    algebra.require("neg")
    return [
        (f, i)
        for f in filters(algebra)
        for i in ideals(algebra)
        if all(i >> algebra.neg[a] & 1 for a in iter_bits(f))
    ]


def _filter_ideal_name(algebra: LatticeAlgebra, x: Pair) -> str:
    generator = algebra.meet_all(iter_bits(x[0]))
    bound = algebra.join_all(iter_bits(x[1]))
    return f"(↑{algebra.name(generator)},↓{algebra.name(bound)})"


def _fi_open(x: Pair, y: Pair) -> bool:
    # (F,I)◁(F′,I′) iff I∩F′ = ∅
    return not x[1] & y[0]


def _fi_box_reach(algebra: LatticeAlgebra, x: Pair, y: Pair) -> bool:
    return all(y[0] >> c & 1 for c in range(algebra.size) if x[0] >> algebra.box[c] & 1)


def _fi_dia_reach(algebra: LatticeAlgebra, x: Pair, y: Pair) -> bool:
    return all(y[1] >> c & 1 for c in range(algebra.size) if x[1] >> algebra.dia[c] & 1)


def build_filter_ideal_frame(algebra: LatticeAlgebra, unified: bool = False) -> ModalFrame:
    """
    フィルタとイデアルの対の上のフレーム

    Args:
        algebra: 束
        unified: True なら R を □ と ◇ の条件の連言にして Q = R

    Raises:
        PreconditionError: 対応する対の構成と同じ前提が破れる場合
    """
    _require(algebra, unified)
    carrier = filter_ideal_carrier(algebra)
    names = [_filter_ideal_name(algebra, x) for x in carrier]
    if unified:
        frame = _assemble(
            names,
            carrier,
            _fi_open,
            lambda x, y: _fi_box_reach(algebra, x, y) and _fi_dia_reach(algebra, x, y),
        )
    else:
        frame = _assemble(
            names,
            carrier,
            _fi_open,
            lambda x, y: _fi_box_reach(algebra, x, y),
            lambda x, y: _fi_dia_reach(algebra, x, y),
        )
    logger.info("built filter-ideal frame with %d states (unified=%s)", frame.size, unified)
    return frame


def filter_ideal_agreement(algebra: LatticeAlgebra, unified: bool = False) -> PropertyReport:
    """
    (F,I) ↦ (⋀F, ⋁I) が対の構成への全単射で ◁, R, Q を保つか

    Returns:
        property="filter_ideal_agreement" のレポート
    """
    name = "filter_ideal_agreement"
    fi_frame = build_filter_ideal_frame(algebra, unified)
    pairs_frame = build_unified_frame(algebra) if unified else build_pairs_frame(algebra)
    fi_carrier = filter_ideal_carrier(algebra)
    position = {x: i for i, x in enumerate(pairs_carrier(algebra))}
    mapping = []
    for k, (f, i) in enumerate(fi_carrier):
        image = (algebra.meet_all(iter_bits(f)), algebra.join_all(iter_bits(i)))
        if image not in position:
            return PropertyReport.fail(name, fi_frame.states[k])
        mapping.append(position[image])
    if len(set(mapping)) != len(mapping) or len(mapping) != pairs_frame.size:
        return PropertyReport.fail(name, "not_bijective")
    relations = (
        ("open", fi_frame.open_rel, pairs_frame.open_rel),
        ("R", fi_frame.acc_r, pairs_frame.acc_r),
        ("Q", fi_frame.acc_q, pairs_frame.acc_q),
    )
    for label, source, target in relations:
        translated = frozenset((mapping[x], mapping[y]) for x, y in source)
        if translated != target:
            mismatch = min(translated ^ target)
            return PropertyReport.fail(name, label, pairs_frame.states[mismatch[0]], pairs_frame.states[mismatch[1]])
    return PropertyReport.ok(name)


# --- 構成の選択 -----------------------------------------------------------


def build_frame(algebra: LatticeAlgebra, flavor: str) -> ModalFrame:
    """flavor に応じた構成でフレームを作る"""
    if flavor == "pairs":
        return build_pairs_frame(algebra)
    if flavor == "unified":
        return build_unified_frame(algebra)
    if flavor == "filter-ideal":
        return build_filter_ideal_frame(algebra)
    if flavor == "filter-ideal-unified":
        return build_filter_ideal_frame(algebra, unified=True)
    raise ValueError(f"未知の構成です: {flavor}")


def embedding_images(algebra: LatticeAlgebra, flavor: str) -> List[StateSet]:
    """
    標準埋め込みの像

    対の構成では f(a) = {x ∣ x₀ ≤ a}、フィルタ・イデアルの構成では â = {(F,I) ∣ a∈F}。
    """
    n = algebra.size
    if flavor.startswith("filter-ideal"):
        carrier = filter_ideal_carrier(algebra)
        return [mask_of(k for k, x in enumerate(carrier) if x[0] >> a & 1) for a in range(n)]
    carrier = pairs_carrier(algebra)
    return [mask_of(k for k, x in enumerate(carrier) if algebra.le(x[0], a)) for a in range(n)]


def _first_failure(name: str, failures) -> PropertyReport:
    witness = next(failures, None)
    if witness is None:
        return PropertyReport.ok(name)
    return PropertyReport.fail(name, *witness)


def canonical_embedding(algebra: LatticeAlgebra, frame: ModalFrame, flavor: str) -> MorphismReport:
    """
    標準埋め込みが (L,¬,□,◇) から不動点代数への同型か全数検査

    Args:
        algebra: 束
        frame: algebra から flavor の構成で作ったフレーム
        flavor: 構成の種類（FLAVORS のいずれか）

    Returns:
        単射性・全射性・演算ごとの保存の検査結果
    """
    if flavor not in FLAVORS:
        raise ValueError(f"未知の構成です: {flavor}")
    L = algebra
    f = embedding_images(L, flavor)
    carrier = filter_ideal_carrier(L) if flavor.startswith("filter-ideal") else pairs_carrier(L)
    if frame.size != len(carrier):
        raise ModelError("フレームが束の構成と一致しません", flavor)
    algebra_of_frame = fixpoints(frame)
    n = L.size
    name = L.name
    pairs = [(a, b) for a in range(n) for b in range(n)]

    image_of: Dict[StateSet, int] = {}
    collision = None
    for a, image in enumerate(f):
        if image in image_of and collision is None:
            collision = (name(image_of[image]), name(a))
        image_of.setdefault(image, a)
    injective = PropertyReport.ok("injective") if collision is None else PropertyReport.fail("injective", *collision)
    missing = [A for A in algebra_of_frame.fixpoints if A not in image_of]
    surjective = (
        PropertyReport.ok("surjective")
        if not missing
        else PropertyReport.fail("surjective", "{" + ",".join(frame.state_names(missing[0])) + "}")
    )

    preserves = {
        "fixpoint_images": _first_failure(
            "fixpoint_images", ((name(a),) for a in range(n) if not is_fixpoint(frame, f[a]))),
        "order": _first_failure(
            "order", ((name(a), name(b)) for a, b in pairs if L.le(a, b) != (not f[a] & ~f[b]))),
        "meet": _first_failure(
            "meet", ((name(a), name(b)) for a, b in pairs if f[L.meet(a, b)] != f[a] & f[b])),
        "join": _first_failure(
            "join", ((name(a), name(b)) for a, b in pairs if f[L.join(a, b)] != closure(frame, f[a] | f[b]))),
        "bottom": _first_failure("bottom", iter([(name(L.bottom),)] if f[L.bottom] != closure(frame, 0) else [])),
        "top": _first_failure("top", iter([(name(L.top),)] if f[L.top] != frame.universe else [])),
        "neg": _first_failure("neg", ((name(a),) for a in range(n) if f[L.neg[a]] != neg_op(frame, f[a]))),
        "box": _first_failure("box", ((name(a),) for a in range(n) if f[L.box[a]] != box_op(frame, f[a]))),
        "dia": _first_failure("dia", ((name(a),) for a in range(n) if f[L.dia[a]] != dia_op(frame, f[a]))),
    }
    if n <= EMBEDDING_FAMILY_CAP:
        subsets = [family for k in range(n + 1) for family in combinations(range(n), k)]
        preserves["complete_meet"] = _first_failure(
            "complete_meet",
            (tuple(name(a) for a in s) for s in subsets if f[L.meet_all(s)] != meet(frame, (f[a] for a in s))),
        )
        preserves["complete_join"] = _first_failure(
            "complete_join",
            (tuple(name(a) for a in s) for s in subsets if f[L.join_all(s)] != join(frame, (f[a] for a in s))),
        )
    report = MorphismReport(flavor, injective, surjective, preserves)
    logger.debug("embedding (%s): isomorphism=%s", flavor, report.is_isomorphism)
    return report


def represent(algebra: LatticeAlgebra, flavor: str = "pairs") -> Tuple[ModalFrame, MorphismReport]:
    """構成と埋め込みの検査をまとめて行う"""
    frame = build_frame(algebra, flavor)
    return frame, canonical_embedding(algebra, frame, flavor)


def analyze_representation(algebra: LatticeAlgebra, flavor: str = "pairs") -> dict:
    """
    構成したフレーム、フレーム条件、埋め込みの検査結果をまとめる

    Returns:
        JSON に変換できる辞書
    """
    frame, morphism = represent(algebra, flavor)
    conditions = ("modal_frame", "additive", "unified", "pseudo_reflexive", "pseudo_symmetric", "negative")
    return {
        "flavor": flavor,
        "frame": frame.to_dict(),
        "conditions": {c: check_condition(frame, c).to_dict() for c in conditions},
        "morphism": morphism.to_dict(),
    }


# --- 証明に現れる写像 ρ, σ, τ --------------------------------------------

WITNESS_MAPS = ("rho", "sigma", "tau")


def _box_floor(algebra: LatticeAlgebra, x: Pair) -> int:
    """⋀{b ∣ x₀ ≤ □b}"""
    return algebra.meet_all(b for b in range(algebra.size) if algebra.le(x[0], algebra.box[b]))


def _dia_ceiling(algebra: LatticeAlgebra, x: Pair) -> int:
    """⋁{b ∣ ◇b ≤ x₁}"""
    return algebra.join_all(b for b in range(algebra.size) if algebra.le(algebra.dia[b], x[1]))


def witness_maps(algebra: LatticeAlgebra, x: Pair, which: str) -> Pair:
    """
    対 x の像 ρ(x), σ(x), τ(x)

    ρ(x) = (m, ¬m)、σ(x) = (1, ⋁{b ∣ ◇b ≤ x₁})、τ(x) = (m, ⋁{b ∣ ◇b ≤ x₁} ∨ ¬m)
    ただし m = ⋀{b ∣ x₀ ≤ □b}
    """
    if which == "rho":
        m = _box_floor(algebra, x)
        return (m, algebra.neg[m])
    if which == "sigma":
        return (algebra.top, _dia_ceiling(algebra, x))
    if which == "tau":
        m = _box_floor(algebra, x)
        return (m, algebra.join(_dia_ceiling(algebra, x), algebra.neg[m]))
    raise ValueError(f"未知の写像です: {which}")


def check_witness_maps(algebra: LatticeAlgebra, which: str) -> PropertyReport:
    """
    写像の性質を全ての対で検査

    ρ: xRρ(x)、x₀ ≰ □a ⇒ ρ(x)₀ ≰ a
    σ: xQσ(x)、◇a ≰ x₁ ⇒ a ≰ σ(x)₁
    τ: x と τ(x) が統一フレームの R で結ばれ、上の二つの含意が τ について成り立つ
    """
    _require(algebra, unified=(which == "tau"))
    L = algebra
    name = f"witness_map_{which}"
    for x in pairs_carrier(L):
        y = witness_maps(L, x, which)
        label = _pair_name(L, x)
        if not L.le(L.neg[y[0]], y[1]):
            return PropertyReport.fail(name, label, "membership")
        if which in ("rho", "tau") and not _pairs_box_reach(L, x, y):
            return PropertyReport.fail(name, label, "box_reach")
        if which in ("sigma", "tau") and not _pairs_dia_reach(L, x, y):
            return PropertyReport.fail(name, label, "dia_reach")
        for a in range(L.size):
            if which in ("rho", "tau") and not L.le(x[0], L.box[a]) and L.le(y[0], a):
                return PropertyReport.fail(name, label, "box_separation", L.name(a))
            if which in ("sigma", "tau") and not L.le(L.dia[a], x[1]) and L.le(a, y[1]):
                return PropertyReport.fail(name, label, "dia_separation", L.name(a))
    return PropertyReport.ok(name)


def check_separating(algebra: LatticeAlgebra, pairs: Sequence[Pair]) -> PropertyReport:
    """
    対の集合 P が分離的か

    (1) a ≰ b ならば c ≤ a かつ c ≰ b なる (c,d)∈P がある
    (2) (c,d)∈P で c ≰ b ならば (c′,d′)◁(c,d) があって、(c′,d′)◁(c″,d″) なる全ての対で c″ ≰ b
    （P 上の ◁ は (a,b)◁(c,d) iff c ≰ b）
    """
    L = algebra
    L.require_lattice()
    n = L.size
    for a in range(n):
        for b in range(n):
            if not L.le(a, b) and not any(L.le(c, a) and not L.le(c, b) for c, _ in pairs):
                return PropertyReport.fail("separating", "clause_1", L.name(a), L.name(b))
    for b in range(n):
        for c, d in pairs:
            if L.le(c, b):
                continue
            found = any(
                not L.le(c, d1) and all(L.le(c2, d1) or not L.le(c2, b) for c2, _ in pairs)
                for _, d1 in pairs
            )
            if not found:
                return PropertyReport.fail("separating", "clause_2", _pair_name(L, (c, d)), L.name(b))
    return PropertyReport.ok("separating")
