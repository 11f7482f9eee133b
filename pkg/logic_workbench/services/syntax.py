"""
論理式の構文解析

文法（優先度 低→高）: `|`, `&`, 前置単項（`~`, `[]`, `<>`）
原子式 [a-z][a-z0-9_]*、定数 `_|_`（⊥）と `T`（⊤）、帰結 `<式> |- <式>`
"""
import logging
import re
from functools import reduce
from typing import FrozenSet, Optional, Tuple

import pyparsing as pp

from logic_workbench.errors import FormulaSyntaxError
from logic_workbench.models.formula import (
    BOT,
    TOP,
    And,
    Atom,
    Box,
    Consecution,
    Dia,
    Formula,
    LogicId,
    Neg,
    Or,
)

logger = logging.getLogger(__name__)

pp.ParserElement.enable_packrat()

_UNARY = {"~": Neg, "[]": Box, "<>": Dia}
_BINARY = {"&": And, "|": Or}


def _make_unary(tokens):
    op, operand = tokens[0]
    return _UNARY[op](operand)


def _make_binary(tokens):
    items = tokens[0]
    pairs = zip(items[1::2], items[2::2])
    return reduce(lambda acc, pair: _BINARY[pair[0]](acc, pair[1]), pairs, items[0])


ATOM = pp.Regex(r"[a-z][a-z0-9_]*").set_parse_action(lambda t: Atom(t[0]))
BOTTOM = pp.Literal("_|_").set_parse_action(lambda: BOT)
TOPMOST = pp.Keyword("T", ident_chars=pp.alphanums + "_").set_parse_action(lambda: TOP)
# `|-` は帰結記号なので選言として読まない
OR_OP = pp.Regex(r"\|(?!-)")
AND_OP = pp.Literal("&")
UNARY_OP = pp.one_of("~ [] <>")

FORMULA = pp.infix_notation(
    BOTTOM | TOPMOST | ATOM,
    [
        (UNARY_OP, 1, pp.OpAssoc.RIGHT, _make_unary),
        (AND_OP, 2, pp.OpAssoc.LEFT, _make_binary),
        (OR_OP, 2, pp.OpAssoc.LEFT, _make_binary),
    ],
)
CONSECUTION = FORMULA + pp.Suppress("|-") + FORMULA

# エラー位置の特定用トークン
_TOKEN = re.compile(
    r"\s*(?:(?P<turnstile>\|-)|(?P<bot>_\|_)|(?P<unary>~|\[\]|<>)|(?P<atom>[a-z][a-z0-9_]*)"
    r"|(?P<top>T)(?![A-Za-z0-9_])|(?P<and>&)|(?P<or>\|)|(?P<lparen>\()|(?P<rparen>\)))"
)
_OPERAND_START = frozenset({"atom", "_|_", "T", "~", "[]", "<>", "("})
_END = "end of input"


def _byte_offset(text: str, index: int) -> int:
    return len(text[:index].encode("utf-8"))


def _locate_error(text: str, consecution: bool) -> Tuple[int, FrozenSet[str]]:
    """
    最初に文法から外れる位置と、そこで期待されるトークンを求める

    Returns:
        (文字位置, 期待トークン集合)
    """
    pos = 0
    depth = 0
    want_operand = True
    turnstile_seen = not consecution
    while True:
        rest = text[pos:]
        if not rest.strip():
            if want_operand:
                return len(text), _OPERAND_START
            if depth:
                return len(text), frozenset({")", "&", "|"})
            if not turnstile_seen:
                return len(text), frozenset({"|-", "&", "|"})
            return len(text), frozenset({_END})
        start = pos + len(rest) - len(rest.lstrip())
        match = _TOKEN.match(text, pos)
        kind = match.lastgroup if match else None
        if want_operand:
            if kind in ("atom", "bot", "top"):
                want_operand = False
            elif kind == "unary":
                pass
            elif kind == "lparen":
                depth += 1
            else:
                return start, _OPERAND_START
        else:
            if kind in ("and", "or"):
                want_operand = True
            elif kind == "rparen" and depth:
                depth -= 1
            elif kind == "turnstile" and not turnstile_seen and not depth:
                turnstile_seen = True
                want_operand = True
            else:
                expected = {"&", "|"}
                if depth:
                    expected.add(")")
                elif not turnstile_seen:
                    expected.add("|-")
                else:
                    expected.add(_END)
                return start, frozenset(expected)
        pos = match.end()


def _raise_syntax_error(text: str, exc: pp.ParseBaseException, consecution: bool) -> None:
    index, expected = _locate_error(text, consecution)
    logger.debug("parse failed at %d (pyparsing loc %d): %s", index, exc.loc, exc.msg)
    raise FormulaSyntaxError(text, _byte_offset(text, index), expected) from None


def parse(text: str) -> Formula:
    """
    論理式をパース

    Args:
        text: 具象構文の文字列

    Returns:
        論理式の AST

    Raises:
        FormulaSyntaxError: 文法に合わない場合
    """
    try:
        return FORMULA.parse_string(text, parse_all=True)[0]
    except pp.ParseBaseException as exc:
        _raise_syntax_error(text, exc, consecution=False)


def parse_consecution(text: str, logic: Optional[LogicId] = None) -> Consecution:
    """
    帰結 `φ |- ψ` をパース

    Args:
        text: 具象構文の文字列
        logic: 対象の論理（省略時は基本論理）

    Returns:
        帰結

    Raises:
        FormulaSyntaxError: 文法に合わない場合
        LanguageError: 論理の言語に含まれない結合子がある場合
    """
    try:
        lhs, rhs = CONSECUTION.parse_string(text, parse_all=True)
    except pp.ParseBaseException as exc:
        _raise_syntax_error(text, exc, consecution=True)
    return Consecution(lhs, rhs, logic or LogicId.FUNDAMENTAL)
