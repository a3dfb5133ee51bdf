"""A small block language of nested ``let`` bindings over integer arithmetic.

The module bundles everything the language needs: the AST and its concrete
syntax, scope-rule attributes (the declaration accumulator ``dcli``, the
synthesized block environment ``dclo``, the visible environment ``env``,
and the nesting level ``lev``), two equivalent scope-error analyses (one a
classic synthesized attribute, one a type-unifying strategy), a seven-rule
expression optimizer driven by innermost rewriting, and an independent
evaluator used as the semantics oracle.

Scope rules: every block may use names before their textual declaration,
inner blocks shadow outer ones, and re-declaring a name at the same
nesting level is an error.
"""

from __future__ import annotations

from dataclasses import dataclass

from .lexing import ParseError, TokenStream, describe, tokenize
from .strategies import (
    TP,
    adhoc_tp,
    adhoc_tpz,
    adhoc_tu,
    adhoc_tuz,
    apply_tp,
    apply_tu,
    fail_tp,
    fail_tu,
    full_td_tp,
    full_td_tu,
    id_tp,
    innermost,
)
from .zipper import Language, Zipper, to_zipper

Name = str


# -- abstract syntax ----------------------------------------------------------


class Exp:
    """Integer expressions."""


@dataclass(frozen=True)
class Add(Exp):
    left: Exp
    right: Exp


@dataclass(frozen=True)
class Sub(Exp):
    left: Exp
    right: Exp


@dataclass(frozen=True)
class Neg(Exp):
    operand: Exp


@dataclass(frozen=True)
class Var(Exp):
    name: Name


@dataclass(frozen=True)
class Const(Exp):
    value: int


class List:
    """A right-nested spine of declarations, terminated by :class:`EmptyList`."""


@dataclass(frozen=True)
class Assign(List):
    name: Name
    exp: Exp
    rest: List


@dataclass(frozen=True)
class NestedLet(List):
    name: Name
    let: Let
    rest: List


@dataclass(frozen=True)
class EmptyList(List):
    pass


@dataclass(frozen=True)
class Let:
    decls: List
    body: Exp


@dataclass(frozen=True)
class Root:
    """Top wrapper so the outermost block has a parent without inherited context."""

    let: Let


LANG = Language("let")
LANG.register(Root)
LANG.register(Let)
LANG.register(List, Assign, NestedLet, EmptyList)
LANG.register(Exp, Add, Sub, Neg, Var, Const)


def root_zipper(root: Root) -> Zipper:
    return to_zipper(root, LANG)


# -- concrete syntax ----------------------------------------------------------

_SYMBOLS = ("+", "-", "=", ";", "(", ")")
_KEYWORDS = frozenset({"let", "in"})


def _let_tokens(text: str):
    toks = tokenize(text, symbols=_SYMBOLS, keywords=_KEYWORDS, keep_newlines=True)
    # Newlines separate declarations; inside parentheses they are noise.
    out, depth = [], 0
    for t in toks:
        if t.kind == "op":
            if t.text == "(":
                depth += 1
            elif t.text == ")":
                depth = max(0, depth - 1)
        if t.kind == "newline" and depth > 0:
            continue
        out.append(t)
    return out


def parse(text: str) -> Root:
    """Parse a program: ``let`` declarations (one per line or ``;``-separated) ``in`` body.

    Declarations bind either an expression or a whole nested program; at
    least one declaration is required.  Raises :class:`ParseError` with the
    offending line and column.
    """
    stream = TokenStream(_let_tokens(text))
    stream.skip_newlines()
    let = _parse_let(stream)
    stream.skip_newlines()
    if not stream.at("eof"):
        stream.fail(f"expected end of input, found {describe(stream.peek())}")
    return Root(let)


def _parse_let(p: TokenStream) -> Let:
    p.expect("keyword", "let")
    p.skip_newlines()
    decls = [_parse_decl(p)]
    while True:
        saw_sep = False
        while p.at("op", ";") or p.at("newline"):
            p.advance()
            saw_sep = True
        if p.at("keyword", "in"):
            break
        if not saw_sep:
            p.fail(f"expected ';', a newline, or 'in', found {describe(p.peek())}")
        if p.at("eof"):
            p.fail("unexpected end of input in declarations")
        decls.append(_parse_decl(p))
    p.expect("keyword", "in")
    p.skip_newlines()
    body = _parse_exp(p)
    spine: List = EmptyList()
    for name, rhs in reversed(decls):
        spine = NestedLet(name, rhs, spine) if isinstance(rhs, Let) else Assign(name, rhs, spine)
    return Let(spine, body)


def _parse_decl(p: TokenStream):
    name = p.expect("name").text
    p.expect("op", "=")
    if p.at("keyword", "let"):
        return name, _parse_let(p)
    return name, _parse_exp(p)


def _parse_exp(p: TokenStream) -> Exp:
    e = _parse_unary(p)
    while p.at("op", "+") or p.at("op", "-"):
        op = p.advance().text
        rhs = _parse_unary(p)
        e = Add(e, rhs) if op == "+" else Sub(e, rhs)
    return e


def _parse_unary(p: TokenStream) -> Exp:
    if p.at("op", "-"):
        p.advance()
        # A minus directly on an integer literal folds into a signed constant,
        # so optimizer-produced negative constants survive a print/parse trip.
        if p.at("int"):
            return Const(-int(p.advance().text))
        return Neg(_parse_unary(p))
    return _parse_atom(p)


def _parse_atom(p: TokenStream) -> Exp:
    if p.at("int"):
        return Const(int(p.advance().text))
    if p.at("name"):
        return Var(p.advance().text)
    if p.at("op", "("):
        p.advance()
        e = _parse_exp(p)
        p.expect("op", ")")
        return e
    p.fail(f"expected an expression, found {describe(p.peek())}")


def pretty(root: Root) -> str:
    """Canonical layout: one declaration per line, two-space indent per nesting level.

    ``parse(pretty(r)) == r`` for every parser-producible tree.
    """
    return _pretty_let(root.let, 0)


def _decl_nodes(spine: List) -> list[Assign | NestedLet]:
    out = []
    while isinstance(spine, (Assign, NestedLet)):
        out.append(spine)
        spine = spine.rest
    return out


def _pretty_let(node: Let, level: int) -> str:
    decls = _decl_nodes(node.decls)
    if not decls:
        raise ValueError("cannot render a let with no declarations")
    lines = []
    for i, d in enumerate(decls):
        rhs = _pretty_let(d.let, level + 1) if isinstance(d, NestedLet) else _pretty_exp(d.exp, 0)
        text = f"{d.name} = {rhs}"
        lines.append("let " + text if i == 0 else "  " * (level + 1) + text)
    lines.append("  " * level + "in " + _pretty_exp(node.body, 0))
    return "\n".join(lines)


_ADDITIVE, _UNARY = 1, 2


def _pretty_exp(e: Exp, prec: int) -> str:
    match e:
        case Var(name):
            return name
        case Const(value):
            return str(value)
        case Neg(Const() as c):
            # Parenthesized so the literal does not merge into a signed constant.
            return "-(" + _pretty_exp(c, 0) + ")"
        case Neg(operand):
            return "-" + _pretty_exp(operand, _UNARY)
        case Add(left, right):
            s = _pretty_exp(left, _ADDITIVE) + " + " + _pretty_exp(right, _UNARY)
        case Sub(left, right):
            s = _pretty_exp(left, _ADDITIVE) + " - " + _pretty_exp(right, _UNARY)
        case _:
            raise TypeError(f"not an expression: {e!r}")
    return "(" + s + ")" if prec > _ADDITIVE else s


# -- scope-rule attributes ------------------------------------------------------
#
# The environment type is an ordered list of (name, zipper-at-declaration)
# pairs, innermost/most recent first; lookup takes the first match, which
# is what makes shadowing and duplicate reporting work.

Env = list[tuple[Name, Zipper]]


class ScopeDomainError(Exception):
    """An attribute was evaluated at a focus where its equations are undefined."""


def lexeme(z: Zipper) -> Name:
    """The name argument of the focused declaration or variable."""
    node = z.focus
    if isinstance(node, (Assign, NestedLet, Var)):
        return node.name
    raise ScopeDomainError(f"no name at {type(node).__name__}")


def lexeme_assign(z: Zipper) -> Exp | None:
    """The bound expression, when the focus is a plain assignment."""
    node = z.focus
    return node.exp if isinstance(node, Assign) else None


def dcli(z: Zipper) -> Env:
    """Declarations accumulated above and left of the focus (inherited).

    Restarts from the outer environment at a nested block, so level checks
    can still see outer declarations.
    """
    node = z.focus
    if isinstance(node, Root):
        return []
    if isinstance(node, Let):
        parent = z.parent()
        if isinstance(parent.focus, Root):
            return []
        return env(parent)  # nested block: start from the outer environment
    parent = z.parent()
    pf = parent.focus
    if isinstance(pf, (Assign, NestedLet)):
        return [(lexeme(parent), parent)] + dcli(parent)
    if isinstance(pf, Let):
        return dcli(parent)
    raise ScopeDomainError(f"dcli undefined under {type(pf).__name__}")


def dclo(z: Zipper) -> Env:
    """The block's complete declaration list (synthesized at the spine's end)."""
    node = z.focus
    if isinstance(node, (Root, Let)):
        return dclo(z.child_at(1))
    if isinstance(node, (Assign, NestedLet)):
        return dclo(z.child_at(3))
    if isinstance(node, EmptyList):
        return dcli(z)
    raise ScopeDomainError(f"dclo undefined at {type(node).__name__}")


def env(z: Zipper) -> Env:
    """The environment visible at the focus: the enclosing block's ``dclo``."""
    node = z.focus
    if isinstance(node, (Root, Let)):
        return dclo(z)
    return env(z.parent())


def lev(z: Zipper) -> int:
    """Nesting level: 0 at the root, +1 per enclosing block."""
    node = z.focus
    if isinstance(node, Root):
        return 0
    if isinstance(node, Let):
        return lev(z.parent()) + 1
    return lev(z.parent())


def must_be_in(name: Name, environment: Env) -> list[Name]:
    """Report ``name`` when it is missing from the environment."""
    for n, _site in environment:
        if n == name:
            return []
    return [name]


def must_not_be_in(entry: tuple[Name, Zipper], environment: Env) -> list[Name]:
    """Report the name when another declaration of it exists at the same level."""
    name, site = entry
    for n, other in environment:
        if n == name and lev(site) == lev(other):
            return [name]
    return []


# -- scope-error analyses -------------------------------------------------------


def errors_ag(z: Zipper) -> list[Name]:
    """Scope errors in source order, as a synthesized attribute.

    Duplicates are reported at the offending re-declaration, missing names
    at the offending use.
    """
    node = z.focus
    if isinstance(node, Root):
        return errors_ag(z.child_at(1))
    if isinstance(node, (Let, Add, Sub)):
        return errors_ag(z.child_at(1)) + errors_ag(z.child_at(2))
    if isinstance(node, Neg):
        return errors_ag(z.child_at(1))
    if isinstance(node, (EmptyList, Const)):
        return []
    if isinstance(node, Var):
        return must_be_in(lexeme(z), env(z))
    if isinstance(node, (Assign, NestedLet)):
        here = must_not_be_in((lexeme(z), z), dcli(z))
        return here + errors_ag(z.child_at(2)) + errors_ag(z.child_at(3))
    raise ScopeDomainError(f"errors undefined at {type(node).__name__}")


def uses(e: Exp, z: Zipper) -> list[Name]:
    """Per-node use check: a variable must be bound in its environment."""
    if isinstance(e, Var):
        return must_be_in(lexeme(z), env(z))
    return []


def decls(n: List, z: Zipper) -> list[Name]:
    """Per-node declaration check: a name must be fresh at its level."""
    if isinstance(n, (Assign, NestedLet)):
        return must_not_be_in((lexeme(z), z), dcli(z))
    return []


def errors_strategic(z: Zipper) -> list[Name]:
    """The same error list as :func:`errors_ag`, with the copy rules replaced
    by a single top-down type-unifying traversal."""
    step = adhoc_tuz(adhoc_tuz(fail_tu(), Exp, uses), List, decls)
    return apply_tu(full_td_tu(step), z)


def select(n: List) -> list[Name]:
    """The name declared at this node, if any."""
    if isinstance(n, (Assign, NestedLet)):
        return [n.name]
    return []


def names(z: Zipper) -> list[Name]:
    """All declared names, in preorder (source) order."""
    return apply_tu(full_td_tu(adhoc_tu(fail_tu(), List, select)), z)


# -- optimizer -----------------------------------------------------------------


def expr(e: Exp) -> Exp | None:
    """The context-free rewrite rules, tried in order:

    add(e, 0) -> e;  add(0, e) -> e;  add(a, b) -> a+b on constants;
    sub(a, b) -> add(a, neg(b));  neg(neg(e)) -> e;  neg(const) -> signed const.
    """
    match e:
        case Add(left, Const(0)):
            return left
        case Add(Const(0), right):
            return right
        case Add(Const(a), Const(b)):
            return Const(a + b)
        case Sub(a, b):
            return Add(a, Neg(b))
        case Neg(Neg(inner)):
            return inner
        case Neg(Const(n)):
            return Const(-n)
    return None


def exp_c(e: Exp, z: Zipper) -> Exp | None:
    """The context-dependent rule: replace a variable by its defining expression.

    Looks the name up in the environment at the focus; only names bound by
    a plain assignment are inlined (nested-let bindings have no expression
    to copy), and the copied expression reflects any rewrites already
    performed on the current tree.
    """
    if not isinstance(e, Var):
        return None
    for n, site in env(z):
        if n == e.name:
            return lexeme_assign(site)
    return None


def arith_step() -> TP:
    """Rules 1-6 with a failing default, as required for fixed-point detection."""
    return adhoc_tp(fail_tp, Exp, expr)


def program_step() -> TP:
    """All seven rules: the context-free rules first, variable inlining as fallback."""
    return adhoc_tp(adhoc_tpz(fail_tp, Exp, exp_c), Exp, expr)


def optimize_single_pass(z: Zipper) -> Zipper | None:
    """One full top-down sweep of the context-free rules (identity default)."""
    return apply_tp(full_td_tp(adhoc_tp(id_tp, Exp, expr)), z)


def optimize_exprs(z: Zipper, fuel: int | None = None) -> Zipper | None:
    """Innermost normalization with the context-free rules only."""
    return apply_tp(innermost(arith_step(), fuel), z)


def optimize_program(z: Zipper, fuel: int | None = None) -> Zipper | None:
    """Innermost normalization with all seven rules.

    Requires a zipper rooted at :class:`Root`, since the inlining rule
    evaluates the environment attribute.
    """
    return apply_tp(innermost(program_step(), fuel), z)


# -- evaluation oracle -----------------------------------------------------------


class _EvalFailure(Exception):
    pass


class _Frame:
    __slots__ = ("bindings", "outer", "memo", "active")

    def __init__(self, bindings: dict[str, Assign | NestedLet], outer: "_Frame | None"):
        self.bindings = bindings
        self.outer = outer
        self.memo: dict[str, int] = {}
        self.active: set[str] = set()


def eval_program(root: Root) -> int | None:
    """Evaluate the program body; ``None`` when the program has no meaning.

    Names may be used before their textual declaration and inner blocks
    shadow outer ones.  A duplicate name at one level (anywhere in the
    tree), an unbound use reached during evaluation, or a cyclic definition
    (detected via an in-progress set) yields ``None``.
    """
    try:
        _check_no_duplicates(root.let)
        return _eval_let(root.let, None)
    except _EvalFailure:
        return None


def _check_no_duplicates(let: Let) -> None:
    seen: set[str] = set()
    for d in _decl_nodes(let.decls):
        if d.name in seen:
            raise _EvalFailure
        seen.add(d.name)
        if isinstance(d, NestedLet):
            _check_no_duplicates(d.let)


def _eval_let(let: Let, outer: _Frame | None) -> int:
    frame = _Frame({d.name: d for d in _decl_nodes(let.decls)}, outer)
    return _eval_exp(let.body, frame)


def _eval_exp(e: Exp, frame: _Frame) -> int:
    match e:
        case Const(value):
            return value
        case Var(name):
            return _lookup(frame, name)
        case Add(left, right):
            return _eval_exp(left, frame) + _eval_exp(right, frame)
        case Sub(left, right):
            return _eval_exp(left, frame) - _eval_exp(right, frame)
        case Neg(operand):
            return -_eval_exp(operand, frame)
    raise TypeError(f"not an expression: {e!r}")


def _lookup(frame: _Frame, name: str) -> int:
    f = frame
    while f is not None:
        if name in f.bindings:
            return _force(f, name)
        f = f.outer
    raise _EvalFailure  # unbound use


def _force(f: _Frame, name: str) -> int:
    if name in f.memo:
        return f.memo[name]
    if name in f.active:
        raise _EvalFailure  # cyclic definition
    f.active.add(name)
    try:
        d = f.bindings[name]
        value = _eval_exp(d.exp, f) if isinstance(d, Assign) else _eval_let(d.let, f)
    finally:
        f.active.discard(name)
    f.memo[name] = value
    return value


__all__ = [
    "Add",
    "Assign",
    "Const",
    "EmptyList",
    "Env",
    "Exp",
    "LANG",
    "Let",
    "List",
    "Name",
    "Neg",
    "NestedLet",
    "ParseError",
    "Root",
    "ScopeDomainError",
    "Sub",
    "Var",
    "arith_step",
    "dcli",
    "dclo",
    "decls",
    "env",
    "errors_ag",
    "errors_strategic",
    "eval_program",
    "exp_c",
    "expr",
    "lev",
    "lexeme",
    "lexeme_assign",
    "must_be_in",
    "must_not_be_in",
    "names",
    "optimize_exprs",
    "optimize_program",
    "optimize_single_pass",
    "parse",
    "pretty",
    "program_step",
    "root_zipper",
    "select",
    "uses",
]
