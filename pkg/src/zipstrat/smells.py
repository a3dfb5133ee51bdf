"""Code-smell elimination for a mini functional expression language.

Four rewrite families remove the classic beginner patterns: building a
singleton list just to concatenate it, checking emptiness against
``length``/``[]``, comparing against boolean literals, and branching on a
condition only to return literals.  One fix can expose another (eliminating
a redundant ``if`` may reveal an emptiness check), so the eliminator runs
the rules to an innermost fixed point.
"""

from __future__ import annotations

from dataclasses import dataclass

from .lexing import ParseError, TokenStream, describe, tokenize
from .strategies import TP, adhoc_tp, apply_tp, fail_tp, innermost
from .zipper import Language, Zipper, from_zipper, to_zipper

Name = str


# -- abstract syntax ----------------------------------------------------------


class MExp:
    """Mini expressions: variables, literals, lists, a few infixes, application, if."""


@dataclass(frozen=True)
class Var(MExp):
    name: Name


@dataclass(frozen=True)
class IntLit(MExp):
    value: int

    def __post_init__(self):
        if isinstance(self.value, bool):
            raise TypeError("IntLit holds ints; use BoolLit for booleans")


@dataclass(frozen=True)
class BoolLit(MExp):
    value: bool

    def __post_init__(self):
        if not isinstance(self.value, bool):
            raise TypeError("BoolLit holds booleans")


@dataclass(frozen=True)
class ListLit(MExp):
    items: tuple[MExp, ...]


_INFIX_OPS = ("++", "==", ":")


@dataclass(frozen=True)
class Infix(MExp):
    op: str
    left: MExp
    right: MExp

    def __post_init__(self):
        if self.op not in _INFIX_OPS:
            raise ValueError(f"unknown operator {self.op!r}")


@dataclass(frozen=True)
class Call(MExp):
    fn: Name
    arg: MExp


@dataclass(frozen=True)
class If(MExp):
    cond: MExp
    then: MExp
    orelse: MExp


LANG = Language("mexp")
LANG.register(MExp, Var, IntLit, BoolLit, ListLit, Infix, Call, If)


def mexp_zipper(e: MExp) -> Zipper:
    return to_zipper(e, LANG)


# -- concrete syntax ----------------------------------------------------------
#
# Precedence, loosest first: if / == (non-associative) / ":" and "++"
# (right-associative, one level) / application (name + one atom) / atoms.

_SYMBOLS = ("++", "==", ":", ",", "[", "]", "(", ")")
_KEYWORDS = frozenset({"if", "then", "else", "True", "False"})


def parse_m(text: str) -> MExp:
    stream = TokenStream(
        tokenize(text, symbols=_SYMBOLS, keywords=_KEYWORDS, signed_ints=True)
    )
    e = _parse_exp(stream)
    if not stream.at("eof"):
        stream.fail(f"expected end of input, found {describe(stream.peek())}")
    return e


def _parse_exp(p: TokenStream) -> MExp:
    if p.at("keyword", "if"):
        p.advance()
        cond = _parse_exp(p)
        p.expect("keyword", "then")
        then = _parse_exp(p)
        p.expect("keyword", "else")
        orelse = _parse_exp(p)
        return If(cond, then, orelse)
    return _parse_eq(p)


def _parse_eq(p: TokenStream) -> MExp:
    left = _parse_cons(p)
    if p.at("op", "=="):
        p.advance()
        right = _parse_cons(p)
        return Infix("==", left, right)
    return left


def _parse_cons(p: TokenStream) -> MExp:
    left = _parse_app(p)
    if p.at("op", ":") or p.at("op", "++"):
        op = p.advance().text
        right = _parse_cons(p)
        return Infix(op, left, right)
    return left


def _at_atom(p: TokenStream) -> bool:
    return (
        p.at("int")
        or p.at("name")
        or p.at("op", "(")
        or p.at("op", "[")
        or p.at("keyword", "True")
        or p.at("keyword", "False")
    )


def _parse_app(p: TokenStream) -> MExp:
    if p.at("name"):
        name = p.advance().text
        if _at_atom(p):
            return Call(name, _parse_atom(p))
        return Var(name)
    return _parse_atom(p)


def _parse_atom(p: TokenStream) -> MExp:
    if p.at("int"):
        return IntLit(int(p.advance().text))
    if p.at("keyword", "True") or p.at("keyword", "False"):
        return BoolLit(p.advance().text == "True")
    if p.at("name"):
        return Var(p.advance().text)
    if p.at("op", "("):
        p.advance()
        e = _parse_exp(p)
        p.expect("op", ")")
        return e
    if p.at("op", "["):
        p.advance()
        items: list[MExp] = []
        if not p.at("op", "]"):
            items.append(_parse_exp(p))
            while p.at("op", ","):
                p.advance()
                items.append(_parse_exp(p))
        p.expect("op", "]")
        return ListLit(tuple(items))
    p.fail(f"expected an expression, found {describe(p.peek())}")


_IF_PREC, _EQ_PREC, _CONS_PREC, _APP_PREC, _ATOM_PREC = 0, 1, 2, 3, 4


def pretty_m(e: MExp, prec: int = 0) -> str:
    """Render with the fewest parentheses that keep ``parse_m(pretty_m(e)) == e``."""
    match e:
        case Var(name):
            return name
        case IntLit(value):
            return str(value)
        case BoolLit(value):
            return "True" if value else "False"
        case ListLit(items):
            return "[" + ", ".join(pretty_m(i, _IF_PREC) for i in items) + "]"
        case Call(fn, arg):
            s = f"{fn} {pretty_m(arg, _ATOM_PREC)}"
            return f"({s})" if prec > _APP_PREC else s
        case Infix("==", left, right):
            s = f"{pretty_m(left, _CONS_PREC)} == {pretty_m(right, _CONS_PREC)}"
            return f"({s})" if prec > _EQ_PREC else s
        case Infix(op, left, right):
            s = f"{pretty_m(left, _APP_PREC)} {op} {pretty_m(right, _CONS_PREC)}"
            return f"({s})" if prec > _CONS_PREC else s
        case If(cond, then, orelse):
            s = (
                f"if {pretty_m(cond, _IF_PREC)} then {pretty_m(then, _IF_PREC)}"
                f" else {pretty_m(orelse, _IF_PREC)}"
            )
            return f"({s})" if prec > _IF_PREC else s
    raise TypeError(f"not an expression: {e!r}")


# -- smell rules ----------------------------------------------------------------


def join_list(e: MExp) -> MExp | None:
    """``[h] ++ t`` builds a singleton only to append; cons instead."""
    match e:
        case Infix("++", ListLit((h,)), t):
            return Infix(":", h, t)
    return None


def null_list(e: MExp) -> MExp | None:
    """Emptiness checks spelled with ``length`` or ``[]`` become ``null x``."""
    match e:
        case Infix("==", Call("length", x), IntLit(0)):
            return Call("null", x)
        case Infix("==", IntLit(0), Call("length", x)):
            return Call("null", x)
        case Infix("==", x, ListLit(())):
            return Call("null", x)
        case Infix("==", ListLit(()), x):
            return Call("null", x)
    return None


def redundant_boolean(e: MExp) -> MExp | None:
    """Comparisons against boolean literals: keep the expression (negated for False)."""
    match e:
        case Infix("==", BoolLit(True), x):
            return x
        case Infix("==", x, BoolLit(True)):
            return x
        case Infix("==", BoolLit(False), x):
            return Call("not", x)
        case Infix("==", x, BoolLit(False)):
            return Call("not", x)
    return None


def redundant_if(e: MExp) -> MExp | None:
    """Branches returning boolean literals: the condition already is the answer."""
    match e:
        case If(cond, BoolLit(True), BoolLit(False)):
            return cond
        case If(cond, BoolLit(False), BoolLit(True)):
            return Call("not", cond)
    return None


def smell_step() -> TP:
    step = fail_tp
    step = adhoc_tp(step, MExp, join_list)
    step = adhoc_tp(step, MExp, null_list)
    step = adhoc_tp(step, MExp, redundant_boolean)
    step = adhoc_tp(step, MExp, redundant_if)
    return step


def smell_elim(z: Zipper, fuel: int | None = None) -> Zipper | None:
    """Innermost normalization with the four rule families; always succeeds.

    Every rule strictly shrinks the term, so the fixed point is reached
    without fuel on any finite input; fuel remains available for safety.
    """
    return apply_tp(innermost(smell_step(), fuel), z)


def eliminate_smells(e: MExp, fuel: int | None = None) -> MExp:
    """Convenience wrapper: rewrite an expression value to its smell-free form."""
    return from_zipper(smell_elim(mexp_zipper(e), fuel))


__all__ = [
    "BoolLit",
    "Call",
    "If",
    "IntLit",
    "Infix",
    "LANG",
    "ListLit",
    "MExp",
    "Name",
    "ParseError",
    "Var",
    "eliminate_smells",
    "join_list",
    "mexp_zipper",
    "null_list",
    "parse_m",
    "pretty_m",
    "redundant_boolean",
    "redundant_if",
    "smell_elim",
    "smell_step",
]
