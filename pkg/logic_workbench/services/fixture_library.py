"""
組み込みフィクスチャ（有限束と演算表）の読み込みと検証

各フィクスチャは公理の成否と反例の連鎖、性質の期待値、統一構成の可否を持ち、
verify_fixtures() で表の主張と表現定理の主張をまとめて再生する。
"""
import json
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Tuple

from logic_workbench.analyzers.frame_conditions import check_condition
from logic_workbench.analyzers.lattice_properties import check_axiom, check_property
from logic_workbench.config.settings import FIXTURE_FILE
from logic_workbench.errors import ModelError, PreconditionError
from logic_workbench.models.frame import ModalFrame
from logic_workbench.models.lattice_algebra import LatticeAlgebra
from logic_workbench.models.report import PropertyReport
from logic_workbench.services.representation import (
    build_pairs_frame,
    build_unified_frame,
    canonical_embedding,
    check_separating,
    pairs_carrier,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Fixture:
    """
    名前つきの束と、その束について確かめる主張

    Attributes:
        name: フィクスチャ名
        description: 説明
        algebra: 束と演算表
        expect: 期待値（axioms / properties / unified）
    """

    name: str
    description: str
    algebra: LatticeAlgebra
    expect: dict = field(default_factory=dict, hash=False, compare=False)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "description": self.description,
            "algebra": self.algebra.to_dict(),
            "expect": self.expect,
        }


@lru_cache(maxsize=None)
def load_fixtures(path: str = str(FIXTURE_FILE)) -> Tuple[Fixture, ...]:
    """
    フィクスチャファイルを読み込む

    Raises:
        ModelError: ファイルの形式が不正な場合
    """
    with open(path, encoding="utf-8") as f:
        data = json.load(f)
    try:
        entries = data["fixtures"]
        return tuple(
            Fixture(name, entry.get("description", ""), LatticeAlgebra.from_dict(entry["algebra"]),
                    entry.get("expect", {}))
            for name, entry in entries.items()
        )
    except (KeyError, TypeError, AttributeError) as exc:
        raise ModelError("フィクスチャファイルが不正です", str(exc)) from None


def fixture_names() -> List[str]:
    return [fx.name for fx in load_fixtures()]


def get_fixture(name: str) -> Fixture:
    """
    名前でフィクスチャを取得

    Raises:
        ModelError: 未知の名前の場合
    """
    for fx in load_fixtures():
        if fx.name == name:
            return fx
    raise ModelError(f"未知のフィクスチャです: {name}", ", ".join(fixture_names()))


def fixture(name: str) -> LatticeAlgebra:
    """名前でフィクスチャの束を取得"""
    return get_fixture(name).algebra


@lru_cache(maxsize=None)
def unified_seed_frames() -> Tuple[ModalFrame, ...]:
    """統一構成の前提を満たすフィクスチャの統一フレーム"""
    frames = []
    for fx in load_fixtures():
        try:
            frames.append(build_unified_frame(fx.algebra))
        except PreconditionError:
            continue
    return tuple(frames)


def _outcome(check: str, expected, actual) -> dict:
    return {"check": check, "expected": expected, "actual": actual, "ok": expected == actual}


def _compare(check: str, expected: dict, report: PropertyReport) -> dict:
    """期待値に書かれた項目だけを比べる"""
    actual = {"holds": report.holds}
    if "witness" in expected:
        actual["witness"] = list(report.witness) if report.witness is not None else None
    if "chain" in expected:
        actual["chain"] = report.chain
    return _outcome(check, expected, actual)


def verify_fixture(fx: Fixture) -> List[dict]:
    """
    一つのフィクスチャの主張をすべて検査

    Returns:
        検査ごとの {"check", "expected", "actual", "ok"} のリスト
    """
    L = fx.algebra
    expect = fx.expect
    results = []
    for axiom, expected in expect.get("axioms", {}).items():
        results.append(_compare(f"axiom:{axiom}", expected, check_axiom(L, axiom)))
    for prop, expected in expect.get("properties", {}).items():
        results.append(_compare(f"property:{prop}", expected, check_property(L, prop)))

    pairs_frame = build_pairs_frame(L)
    for condition in ("modal_frame", "additive"):
        results.append(_outcome(f"pairs:{condition}", True, check_condition(pairs_frame, condition).holds))
    results.append(_outcome("pairs:separating", True, check_separating(L, pairs_carrier(L)).holds))
    results.append(_outcome("pairs:isomorphism", True,
                            canonical_embedding(L, pairs_frame, "pairs").is_isomorphism))

    if "unified" in expect:
        try:
            unified_frame = build_unified_frame(L)
        except PreconditionError:
            unified_frame = None
        results.append(_outcome("unified:accepted", expect["unified"], unified_frame is not None))
        if unified_frame is not None:
            required = ["unified", "modal_frame", "additive", "pseudo_symmetric"]
            if check_property(L, "semicomplementation"):
                required.append("pseudo_reflexive")
            if check_axiom(L, "NegDiamond"):
                required.append("negative")
            for condition in required:
                results.append(_outcome(f"unified:{condition}", True,
                                        check_condition(unified_frame, condition).holds))
            results.append(_outcome("unified:isomorphism", True,
                                    canonical_embedding(L, unified_frame, "unified").is_isomorphism))
    return results


def verify_fixtures() -> Dict[str, dict]:
    """
    全フィクスチャの主張を再生

    Returns:
        フィクスチャ名 → {"ok": 全検査の成否, "checks": 検査結果のリスト}
    """
    summary = {}
    for fx in load_fixtures():
        checks = verify_fixture(fx)
        ok = all(c["ok"] for c in checks)
        if not ok:
            logger.warning("fixture %s: %d mismatches", fx.name, sum(not c["ok"] for c in checks))
        summary[fx.name] = {"ok": ok, "checks": checks}
    return summary
