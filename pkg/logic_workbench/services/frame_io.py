"""
フレーム・束の JSON 入出力と DOT 出力
"""
import json
from pathlib import Path
from typing import Union

from logic_workbench.errors import ModelError
from logic_workbench.models.frame import ModalFrame
from logic_workbench.models.lattice_algebra import LatticeAlgebra

PathLike = Union[str, Path]


def _read_json(path: PathLike) -> dict:
    with open(path, encoding="utf-8") as f:
        data = json.load(f)
    if not isinstance(data, dict):
        raise ModelError("JSON のトップレベルはオブジェクトである必要があります", str(path))
    return data


def load_frame(path: PathLike) -> ModalFrame:
    """フレーム JSON を読み込む"""
    return ModalFrame.from_dict(_read_json(path))


def load_lattice(path: PathLike) -> LatticeAlgebra:
    """束 JSON を読み込む"""
    return LatticeAlgebra.from_dict(_read_json(path))


def dump_json(data: dict, path: PathLike) -> None:
    with open(path, "w", encoding="utf-8") as f:
        json.dump(data, f, ensure_ascii=False, indent=2)
        f.write("\n")


def _quote(name: str) -> str:
    return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'


def frame_to_dot(frame: ModalFrame, name: str = "frame") -> str:
    """
    フレームを Graphviz の DOT にする

    z◁y のとき y から z へ実線（y▷z）、R は破線、Q は点線（統一フレームでは省略）。
    """
    lines = [f"digraph {_quote(name)} {{", "  node [shape=circle];"]
    for state in frame.states:
        lines.append(f"  {_quote(state)};")
    states = frame.states
    for z, y in sorted(frame.open_rel):
        lines.append(f"  {_quote(states[y])} -> {_quote(states[z])};")
    for x, y in sorted(frame.acc_r):
        lines.append(f"  {_quote(states[x])} -> {_quote(states[y])} [style=dashed];")
    if not frame.is_unified:
        for x, y in sorted(frame.acc_q):
            lines.append(f"  {_quote(states[x])} -> {_quote(states[y])} [style=dotted];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def write_dot(frame: ModalFrame, path: PathLike) -> None:
    Path(path).write_text(frame_to_dot(frame), encoding="utf-8")
