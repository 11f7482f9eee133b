"""
Logic Workbench - コマンドライン

終了コード: 0 = 証明できた・成り立つ, 1 = 反例・成り立たない, 2 = 判定できない, 3 = 入力・使い方のエラー
"""
import json
import logging
import random
import sys
from typing import Iterable, List, Optional

import click

from logic_workbench.analyzers.frame_conditions import CONDITIONS, analyze_frame
from logic_workbench.analyzers.lattice_properties import AXIOMS, INTERACTION_AXIOMS, check_axiom
from logic_workbench.analyzers.semantics import analyze_model, check_valuation, failing_states, fixpoints
from logic_workbench.analyzers.translations import classical_reduction, godel_gentzen, translate_consecution
from logic_workbench.config.settings import (
    MAX_MODELS,
    MAX_STATES,
    MAX_STEPS,
    MAX_UNIVERSE,
    configure_logging,
)
from logic_workbench.errors import WorkbenchError
from logic_workbench.models.formula import LogicId, render
from logic_workbench.models.frame import CounterModel
from logic_workbench.models.lattice_algebra import LatticeAlgebra
from logic_workbench.models.verdict import Exhausted, Proved, Refuted, SaturationBudget, SearchBudget, Unknown
from logic_workbench.services.decision import classical_entails, decide, refute, spot_check
from logic_workbench.services.fixture_library import fixture, load_fixtures, verify_fixtures
from logic_workbench.services.frame_io import load_frame, load_lattice, write_dot
from logic_workbench.services.representation import FLAVORS, analyze_representation, build_frame
from logic_workbench.services.saturation import saturate
from logic_workbench.services.syntax import parse, parse_consecution

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_UNKNOWN = 2
EXIT_ERROR = 3

LOGIC_CHOICE = click.Choice([logic.value for logic in LogicId])


def _emit(ctx: click.Context, data: dict, lines: Iterable[str]) -> None:
    """--json なら JSON、そうでなければ人向けのテキストを出力"""
    if ctx.obj["json"]:
        click.echo(json.dumps(data, ensure_ascii=False, indent=2))
    else:
        for line in lines:
            click.echo(line)


def _logic_option(func):
    return click.option("--logic", type=LOGIC_CHOICE, default=LogicId.FUNDAMENTAL.value, show_default=True,
                        help="判定する論理")(func)


def _budget_options(func):
    options = [
        click.option("--max-universe", type=click.IntRange(min=1), default=MAX_UNIVERSE, show_default=True,
                     help="飽和で使う式の数の上限"),
        click.option("--max-steps", type=click.IntRange(min=1), default=MAX_STEPS, show_default=True,
                     help="飽和で導出する帰結の数の上限"),
        click.option("--max-states", type=click.IntRange(min=1), default=MAX_STATES, show_default=True,
                     help="反例探索のフレームの状態数の上限"),
        click.option("--max-models", type=click.IntRange(min=1), default=MAX_MODELS, show_default=True,
                     help="反例探索で調べるモデル数の上限"),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def _model_lines(model: CounterModel) -> List[str]:
    frame = model.frame
    data = frame.to_dict()
    lines = [
        f"  states: {', '.join(frame.states)}",
        f"  open (x◁y): {data['open']}",
    ]
    if "R" in data:
        lines.append(f"  R: {data['R']}")
    if "Q" in data:
        lines.append(f"  Q: {data['Q']}")
    for atom, mask in sorted(model.valuation.items()):
        lines.append(f"  V({atom}) = {{{', '.join(frame.state_names(mask))}}}")
    lines.append(f"  witness: {frame.states[model.witness]}")
    return lines


def _verdict_lines(verdict) -> List[str]:
    lines = [verdict.status]
    if isinstance(verdict, Proved):
        lines += ["  " + line for line in verdict.to_dict()["trace"]]
    elif isinstance(verdict, Refuted):
        lines += _model_lines(verdict.model)
    elif isinstance(verdict, Exhausted):
        lines += [f"  {key}: {value}" for key, value in verdict.stats.items()]
    elif isinstance(verdict, Unknown):
        lines += [f"  {key}: {value}" for key, value in verdict.report.items()]
    return lines


def _load_algebra(fixture_name: Optional[str], lattice_path: Optional[str]) -> LatticeAlgebra:
    if bool(fixture_name) == bool(lattice_path):
        raise click.UsageError("--fixture と --lattice のどちらか一方を指定してください")
    return fixture(fixture_name) if fixture_name else load_lattice(lattice_path)


@click.group()
@click.option("--json", "as_json", is_flag=True, help="結果を JSON で出力")
@click.option("--seed", type=int, default=0, show_default=True, help="無作為検査の乱数シード")
@click.option("--log-level", default=None, help="ログレベル（省略時は LOG_LEVEL）")
@click.pass_context
def cli(ctx: click.Context, as_json: bool, seed: int, log_level: Optional[str]):
    """有限フレームと束による基本論理・基本様相論理のワークベンチ"""
    configure_logging(log_level)
    ctx.ensure_object(dict)
    ctx.obj["json"] = as_json
    ctx.obj["seed"] = seed


@cli.command()
@click.argument("goal")
@_logic_option
@_budget_options
@click.pass_context
def prove(ctx, goal, logic, max_universe, max_steps, max_states, max_models):
    """前向き飽和で GOAL（"φ |- ψ"）の証明を探す"""
    consecution = parse_consecution(goal, LogicId(logic))
    result = saturate(consecution, SaturationBudget(max_universe, max_steps))
    _emit(ctx, result.to_dict(), _verdict_lines(result))
    return EXIT_OK if isinstance(result, Proved) else EXIT_UNKNOWN


@cli.command("refute")
@click.argument("goal")
@_logic_option
@_budget_options
@click.pass_context
def refute_command(ctx, goal, logic, max_universe, max_steps, max_states, max_models):
    """健全なフレームクラスで GOAL の反例モデルを探す"""
    consecution = parse_consecution(goal, LogicId(logic))
    model = refute(consecution, SearchBudget(max_states, max_models))
    if model is None:
        _emit(ctx, {"status": "unknown"}, ["unknown"])
        return EXIT_UNKNOWN
    verdict = Refuted(model)
    _emit(ctx, verdict.to_dict(), _verdict_lines(verdict))
    return EXIT_FAIL


@cli.command("decide")
@click.argument("goal")
@_logic_option
@_budget_options
@click.option("--spot-check", "spot_check_count", type=click.IntRange(min=0), default=0,
              help="Proved のとき N 個の無作為なモデルで確かめ直す")
@click.pass_context
def decide_command(ctx, goal, logic, max_universe, max_steps, max_states, max_models, spot_check_count):
    """証明探索と反例探索で GOAL を判定する"""
    consecution = parse_consecution(goal, LogicId(logic))
    verdict = decide(consecution, SaturationBudget(max_universe, max_steps), SearchBudget(max_states, max_models))
    data = verdict.to_dict()
    lines = _verdict_lines(verdict)
    exit_code = verdict.exit_code
    if spot_check_count and isinstance(verdict, Proved):
        violation = spot_check(consecution, spot_check_count, random.Random(ctx.obj["seed"]), max_states)
        data["spot_check"] = {"models": spot_check_count, "violation": violation.to_dict() if violation else None}
        if violation is None:
            lines.append(f"spot check: {spot_check_count} models ok")
        else:
            lines.append("spot check: violation")
            lines += _model_lines(violation)
            exit_code = EXIT_ERROR
    _emit(ctx, data, lines)
    return exit_code


@cli.command("model-check")
@click.argument("model_file", type=click.Path(exists=True, dir_okay=False))
@click.argument("text")
@click.option("--logic", type=LOGIC_CHOICE, default=LogicId.FUNDAMENTAL_MODAL.value, show_default=True,
              help="式の言語")
@click.pass_context
def model_check(ctx, model_file, text, logic):
    """
    MODEL_FILE（frame と valuation の JSON）で式の外延、または帰結の成否を調べる
    """
    with open(model_file, encoding="utf-8") as f:
        model = CounterModel.from_dict(json.load(f))
    check_valuation(model.frame, model.valuation)
    if "|-" in text:
        consecution = parse_consecution(text, LogicId(logic))
        failing = failing_states(model.frame, model.valuation, consecution.lhs, consecution.rhs)
        names = model.frame.state_names(failing)
        data = {"consecution": str(consecution), "holds": not failing, "failing_states": names}
        lines = [f"{consecution}: {'holds' if not failing else 'fails at ' + ', '.join(names)}"]
        _emit(ctx, data, lines)
        return EXIT_OK if not failing else EXIT_FAIL
    formula = parse(text)
    forced = analyze_model(model, [formula])
    data = {"formula": render(formula), "forcing_states": forced[render(formula)]}
    _emit(ctx, data, [f"{render(formula)}: {{{', '.join(data['forcing_states'])}}}"])
    return EXIT_OK


@cli.command("frame-check")
@click.argument("frame_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--condition", "conditions", multiple=True, type=click.Choice(CONDITIONS), help="検査する条件")
@click.option("--dot", "dot_path", type=click.Path(dir_okay=False), help="DOT の出力先")
@click.pass_context
def frame_check(ctx, frame_file, conditions, dot_path):
    """フレーム条件を検査する"""
    frame = load_frame(frame_file)
    results = analyze_frame(frame, conditions or None)
    data = {"conditions": results, "fixpoints": len(fixpoints(frame))}
    lines = [
        f"{name}: {'✓' if r['holds'] else '✗ ' + ', '.join(r['witness'])}"
        for name, r in results.items()
    ] + [f"fixpoints: {data['fixpoints']}"]
    if dot_path:
        write_dot(frame, dot_path)
    _emit(ctx, data, lines)
    return EXIT_OK if all(r["holds"] for r in results.values()) else EXIT_FAIL


@cli.command()
@click.option("--fixture", "fixture_name", help="組み込みフィクスチャ名")
@click.option("--lattice", "lattice_path", type=click.Path(exists=True, dir_okay=False), help="束 JSON")
@click.option("--flavor", type=click.Choice(FLAVORS), default="pairs", show_default=True, help="構成")
@click.option("--dot", "dot_path", type=click.Path(dir_okay=False), help="DOT の出力先")
@click.pass_context
def represent(ctx, fixture_name, lattice_path, flavor, dot_path):
    """束からフレームを構成し、標準埋め込みが同型か検査する"""
    algebra = _load_algebra(fixture_name, lattice_path)
    result = analyze_representation(algebra, flavor)
    morphism = result["morphism"]
    lines = [f"flavor: {flavor}", f"states: {len(result['frame']['states'])}"]
    lines += [f"{name}: {'✓' if r['holds'] else '✗'}" for name, r in result["conditions"].items()]
    lines.append(f"isomorphism: {'✓' if morphism['isomorphism'] else '✗'}")
    for name, r in morphism["preserves"].items():
        if not r["holds"]:
            lines.append(f"  {name} fails at {', '.join(r['witness'])}")
    if dot_path:
        write_dot(build_frame(algebra, flavor), dot_path)
    _emit(ctx, result, lines)
    return EXIT_OK if morphism["isomorphism"] else EXIT_FAIL


@cli.command()
@click.option("--fixture", "fixture_name", help="組み込みフィクスチャ名")
@click.option("--lattice", "lattice_path", type=click.Path(exists=True, dir_okay=False), help="束 JSON")
@click.option("--all", "all_axioms", is_flag=True, help="◇ と □ の定義式も検査する")
@click.pass_context
def axioms(ctx, fixture_name, lattice_path, all_axioms):
    """否定と様相の相互作用公理の表"""
    algebra = _load_algebra(fixture_name, lattice_path)
    reports = [check_axiom(algebra, ax) for ax in (AXIOMS if all_axioms else INTERACTION_AXIOMS)]
    lines = []
    for report in reports:
        mark = "✓" if report.holds else f"✗ at {', '.join(report.witness)}: {report.chain}"
        lines.append(f"{report.property:<11} {mark}")
    _emit(ctx, {r.property: r.to_dict() for r in reports}, lines)
    return EXIT_OK if all(reports) else EXIT_FAIL


@cli.command()
@click.argument("text")
@click.pass_context
def translate(ctx, text):
    """Gödel–Gentzen 翻訳 g を適用する（式または帰結）"""
    if "|-" in text:
        translated = translate_consecution(parse_consecution(text, LogicId.ORTHO))
        data = {"translation": str(translated)}
    else:
        data = {"translation": render(godel_gentzen(parse(text)))}
    _emit(ctx, data, [data["translation"]])
    return EXIT_OK


@cli.command("reduce-classical")
@click.argument("goal")
@click.option("--decide", "run_decide", is_flag=True, help="還元した帰結を基本論理で判定する")
@_budget_options
@click.pass_context
def reduce_classical(ctx, goal, run_decide, max_universe, max_steps, max_states, max_models):
    """φ |- ψ を基本論理の帰結 ⋁δ(δ∧φ) |- ψ に還元する"""
    source = parse_consecution(goal, LogicId.CLASSICAL)
    reduced = classical_reduction(source.lhs, source.rhs)
    entails = classical_entails(source.lhs, source.rhs)
    data = {"reduced": str(reduced), "classical_entails": entails}
    lines = [str(reduced), f"classical: {'valid' if entails else 'invalid'}"]
    exit_code = EXIT_OK
    if run_decide:
        verdict = decide(reduced, SaturationBudget(max_universe, max_steps), SearchBudget(max_states, max_models))
        data["verdict"] = verdict.to_dict()
        lines += _verdict_lines(verdict)
        exit_code = verdict.exit_code
    _emit(ctx, data, lines)
    return exit_code


@cli.command("fixtures")
@click.option("--verify", is_flag=True, help="表と表現定理の主張を再生する")
@click.pass_context
def fixtures_command(ctx, verify):
    """組み込みフィクスチャの一覧と検証"""
    if not verify:
        entries = load_fixtures()
        _emit(ctx, {"fixtures": [fx.to_dict() for fx in entries]},
              [f"{fx.name:<20} {fx.description}" for fx in entries])
        return EXIT_OK
    summary = verify_fixtures()
    lines = []
    for name, result in summary.items():
        lines.append(f"{name:<20} {'ok' if result['ok'] else 'MISMATCH'}")
        for check in result["checks"]:
            if not check["ok"]:
                lines.append(f"  {check['check']}: expected {check['expected']}, got {check['actual']}")
    _emit(ctx, summary, lines)
    return EXIT_OK if all(r["ok"] for r in summary.values()) else EXIT_FAIL


def run(argv: Optional[List[str]] = None) -> int:
    """
    CLI を実行して終了コードを返す

    Args:
        argv: 引数（省略時は sys.argv[1:]）
    """
    try:
        result = cli.main(args=argv, prog_name="logic-workbench", standalone_mode=False)
    except click.ClickException as exc:
        exc.show()
        return EXIT_ERROR
    except click.Abort:
        return EXIT_ERROR
    except (WorkbenchError, OSError, json.JSONDecodeError) as exc:
        logger.debug("command failed", exc_info=True)
        click.echo(f"エラー: {exc}", err=True)
        return EXIT_ERROR
    return result if isinstance(result, int) else EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
