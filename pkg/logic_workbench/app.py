"""
Logic Workbench - Web API

CLI と同じ判定・検査を JSON で提供する。
"""
import logging

from flask import Flask, jsonify, request
from flask_cors import CORS

from logic_workbench.analyzers.frame_conditions import analyze_frame
from logic_workbench.analyzers.lattice_properties import AXIOMS, analyze_axioms
from logic_workbench.analyzers.semantics import fixpoints
from logic_workbench.analyzers.translations import godel_gentzen, translate_consecution
from logic_workbench.config.settings import DEBUG, SECRET_KEY, configure_logging
from logic_workbench.errors import WorkbenchError
from logic_workbench.models.formula import LogicId, render
from logic_workbench.models.frame import ModalFrame
from logic_workbench.models.lattice_algebra import LatticeAlgebra
from logic_workbench.models.verdict import SaturationBudget, SearchBudget
from logic_workbench.services.decision import decide
from logic_workbench.services.fixture_library import get_fixture, load_fixtures
from logic_workbench.services.representation import analyze_representation
from logic_workbench.services.syntax import parse, parse_consecution

configure_logging()
logger = logging.getLogger(__name__)

# Flaskアプリケーションの初期化
app = Flask(__name__)
app.config["SECRET_KEY"] = SECRET_KEY
app.json.ensure_ascii = False

# CORSを有効化
CORS(app)


def _payload() -> dict:
    data = request.get_json(silent=True)
    if not isinstance(data, dict):
        raise WorkbenchError("JSON オブジェクトを送信してください")
    return data


def _logic(data: dict, default: LogicId = LogicId.FUNDAMENTAL) -> LogicId:
    try:
        return LogicId(data.get("logic", default.value))
    except ValueError:
        raise WorkbenchError(f"未知の論理です: {data.get('logic')}") from None


@app.route("/api/health")
def health():
    """死活監視"""
    return jsonify({"status": "ok"})


@app.route("/api/fixtures")
def list_fixtures():
    """組み込みフィクスチャの一覧"""
    return jsonify({"fixtures": [{"name": fx.name, "description": fx.description} for fx in load_fixtures()]})


@app.route("/api/fixtures/<name>/axioms")
def fixture_axioms(name):
    """
    フィクスチャの相互作用公理の表

    Args:
        name: フィクスチャ名
    """
    fx = get_fixture(name)
    return jsonify({"fixture": fx.name, "axioms": analyze_axioms(fx.algebra, AXIOMS)})


@app.route("/api/decide", methods=["POST"])
def decide_goal():
    """
    帰結を判定

    リクエスト: {"goal": "p |- ~~p", "logic": "fundamental", "budgets": {...}}

    Returns:
        判定結果のJSON（status と trace / model / report）
    """
    data = _payload()
    goal = parse_consecution(str(data.get("goal", "")), _logic(data))
    budgets = data.get("budgets") or {}
    saturation_budget = SaturationBudget(**{k: int(budgets[k]) for k in ("max_universe", "max_steps") if k in budgets})
    search_budget = SearchBudget(**{k: int(budgets[k]) for k in ("max_states", "max_models") if k in budgets})
    verdict = decide(goal, saturation_budget, search_budget)
    return jsonify({"goal": goal.to_dict(), **verdict.to_dict()})


@app.route("/api/translate", methods=["POST"])
def translate():
    """Gödel–Gentzen 翻訳（"formula" または "goal"）"""
    data = _payload()
    if "goal" in data:
        translated = translate_consecution(parse_consecution(str(data["goal"]), LogicId.ORTHO))
        return jsonify({"translation": str(translated)})
    return jsonify({"translation": render(godel_gentzen(parse(str(data.get("formula", "")))))})


@app.route("/api/represent", methods=["POST"])
def represent():
    """
    束からフレームを構成して標準埋め込みを検査

    リクエスト: {"fixture": 名前} または {"lattice": 束 JSON}, "flavor": 構成
    """
    data = _payload()
    if "fixture" in data:
        algebra = get_fixture(str(data["fixture"])).algebra
    elif "lattice" in data:
        algebra = LatticeAlgebra.from_dict(data["lattice"])
    else:
        raise WorkbenchError("fixture か lattice を指定してください")
    return jsonify(analyze_representation(algebra, str(data.get("flavor", "pairs"))))


@app.route("/api/frame-check", methods=["POST"])
def frame_check():
    """フレーム条件の検査（{"frame": フレーム JSON, "conditions": [...]}）"""
    data = _payload()
    frame = ModalFrame.from_dict(data.get("frame") or {})
    results = analyze_frame(frame, data.get("conditions") or None)
    return jsonify({"conditions": results, "fixpoints": len(fixpoints(frame))})


@app.errorhandler(WorkbenchError)
def workbench_error(error):
    """入力エラー"""
    logger.info("request rejected: %s", error)
    return jsonify({"error": str(error), "type": type(error).__name__}), 400


@app.errorhandler(ValueError)
def value_error(error):
    """予算などの値が不正"""
    return jsonify({"error": str(error), "type": "ValueError"}), 400


@app.errorhandler(404)
def not_found(error):
    """404エラー"""
    return jsonify({"error": "ページが見つかりません"}), 404


@app.errorhandler(500)
def internal_error(error):
    """500エラー"""
    logger.exception("internal error")
    return jsonify({"error": "サーバーエラーが発生しました"}), 500


if __name__ == "__main__":
    logger.info("Starting Logic Workbench (debug=%s)", DEBUG)
    app.run(debug=DEBUG, host="0.0.0.0", port=5000, use_reloader=False)
