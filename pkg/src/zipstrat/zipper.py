"""Generic navigation and local transformation over immutable heterogeneous trees.

Trees are built from frozen dataclasses registered with a :class:`Language`.
The registry derives each constructor's reflection contract (tag, ordered
children, rebuild) from its dataclass fields, so navigation needs no
per-type boilerplate.  Primitive payloads (``str``, ``int``, ``bool``) are
zero-arity leaf nodes: child indices count every constructor argument, and
navigation can reach the name inside a binding just like any subtree.

All values here (trees, contexts, zippers) are immutable; every "edit"
produces a fresh value, so sharing across threads is safe.
"""

from __future__ import annotations

import dataclasses
import json
import typing
from dataclasses import dataclass, field
from typing import Any, Callable, Sequence, TypeVar

T = TypeVar("T")

# bool listed before int: bool is an int subtype in Python and must win.
_LEAF_TYPES: tuple[type, ...] = (bool, int, str)


class RegistrationError(TypeError):
    """A value or type is not covered by the reflection registry."""


class RebuildError(ValueError):
    """A node could not be rebuilt: wrong child count or child type."""


class NavigationError(Exception):
    """A non-optional move was impossible (at the root, or no such sibling)."""


class ChildIndexError(IndexError):
    """Child access out of range.  Child indices are 1-based."""


class TypePreservationError(TypeError):
    """A focus transformation changed the nominal type of the focus."""


@dataclass(frozen=True)
class ConstructorTag:
    """Identity of one constructor: owning nominal type, constructor name, arity."""

    type_name: str
    ctor_name: str
    arity: int


@dataclass(frozen=True)
class _FieldSpec:
    name: str
    typ: type
    leaf: bool
    variadic: bool


@dataclass(frozen=True)
class _CtorSpec:
    cls: type
    base: type
    fields: tuple[_FieldSpec, ...]

    @property
    def variadic(self) -> bool:
        return any(f.variadic for f in self.fields)


def _leaf_kind(value: Any) -> str | None:
    for t in _LEAF_TYPES:
        if type(value) is t:
            return t.__name__
    return None


class Language:
    """Reflection registry for one family of node types.

    A language registers each nominal type together with its constructor
    classes; tags, ordered child lists, and rebuilds are all derived from
    the dataclass fields, including leaf payloads and (single-field)
    variadic constructors such as list literals.
    """

    def __init__(self, name: str):
        self.name = name
        self._ctors: dict[type, _CtorSpec] = {}
        self._by_name: dict[tuple[str, str], _CtorSpec] = {}

    def register(self, base: type, *ctors: type) -> None:
        """Register ``base`` with its constructor classes (``base`` itself if none given)."""
        for cls in ctors or (base,):
            if not (isinstance(cls, type) and dataclasses.is_dataclass(cls)):
                raise RegistrationError(f"{cls!r} is not a dataclass type")
            if not issubclass(cls, base):
                raise RegistrationError(f"{cls.__name__} is not a subclass of {base.__name__}")
            spec = _CtorSpec(cls, base, self._field_specs(cls))
            if spec.variadic and len(spec.fields) != 1:
                raise RegistrationError(
                    f"{cls.__name__}: a variadic constructor must have exactly one field"
                )
            key = (base.__name__, cls.__name__)
            if cls in self._ctors or key in self._by_name:
                raise RegistrationError(f"{cls.__name__} registered twice")
            self._ctors[cls] = spec
            self._by_name[key] = spec

    @staticmethod
    def _field_specs(cls: type) -> tuple[_FieldSpec, ...]:
        hints = typing.get_type_hints(cls)
        specs = []
        for f in dataclasses.fields(cls):
            ann = hints[f.name]
            if ann in _LEAF_TYPES:
                specs.append(_FieldSpec(f.name, ann, leaf=True, variadic=False))
            elif typing.get_origin(ann) is tuple:
                args = typing.get_args(ann)
                if len(args) != 2 or args[1] is not Ellipsis or not isinstance(args[0], type):
                    raise RegistrationError(
                        f"{cls.__name__}.{f.name}: only tuple[T, ...] children are supported"
                    )
                specs.append(_FieldSpec(f.name, args[0], leaf=False, variadic=True))
            elif isinstance(ann, type):
                specs.append(_FieldSpec(f.name, ann, leaf=False, variadic=False))
            else:
                raise RegistrationError(
                    f"{cls.__name__}.{f.name}: unsupported field annotation {ann!r}"
                )
        return tuple(specs)

    def is_registered(self, value: Any) -> bool:
        return type(value) in self._ctors or _leaf_kind(value) is not None

    def nominal(self, value: Any) -> type:
        """Runtime type identity of a value: its registered base type, or its leaf type."""
        spec = self._ctors.get(type(value))
        if spec is not None:
            return spec.base
        if _leaf_kind(value) is not None:
            return type(value)
        raise RegistrationError(f"value of unregistered type {type(value).__name__}: {value!r}")

    def tag(self, value: Any) -> ConstructorTag:
        spec = self._ctors.get(type(value))
        if spec is None:
            kind = _leaf_kind(value)
            if kind is None:
                raise RegistrationError(
                    f"value of unregistered type {type(value).__name__}: {value!r}"
                )
            return ConstructorTag(kind, kind, 0)
        return ConstructorTag(spec.base.__name__, spec.cls.__name__, self._arity(spec, value))

    @staticmethod
    def _arity(spec: _CtorSpec, value: Any) -> int:
        if spec.variadic:
            return len(getattr(value, spec.fields[0].name))
        return len(spec.fields)

    def children(self, value: Any) -> list[Any]:
        """Ordered children, counting every constructor argument (leaves included)."""
        spec = self._ctors.get(type(value))
        if spec is None:
            if _leaf_kind(value) is None:
                raise RegistrationError(
                    f"value of unregistered type {type(value).__name__}: {value!r}"
                )
            return []
        out: list[Any] = []
        for f in spec.fields:
            v = getattr(value, f.name)
            if f.variadic:
                out.extend(v)
            else:
                out.append(v)
        return out

    def rebuild(self, tag: ConstructorTag, children: Sequence[Any]) -> Any:
        """Reassemble a node; fails loudly on child count or child type mismatch."""
        spec = self._by_name.get((tag.type_name, tag.ctor_name))
        if spec is None:
            raise RegistrationError(f"unknown constructor {tag.type_name}.{tag.ctor_name}")
        kids = list(children)
        if len(kids) != tag.arity:
            raise RebuildError(
                f"{tag.ctor_name} expects {tag.arity} children, got {len(kids)}"
            )
        if spec.variadic:
            f = spec.fields[0]
            for c in kids:
                self._check_child(spec, f, c)
            return spec.cls(tuple(kids))
        if len(kids) != len(spec.fields):
            raise RebuildError(
                f"{tag.ctor_name} expects {len(spec.fields)} children, got {len(kids)}"
            )
        for f, c in zip(spec.fields, kids):
            self._check_child(spec, f, c)
        return spec.cls(*kids)

    def _check_child(self, spec: _CtorSpec, f: _FieldSpec, child: Any) -> None:
        if f.leaf:
            if type(child) is not f.typ:
                raise RebuildError(
                    f"{spec.cls.__name__}.{f.name} expects {f.typ.__name__},"
                    f" got {type(child).__name__}"
                )
        elif type(child) not in self._ctors or not isinstance(child, f.typ):
            raise RebuildError(
                f"{spec.cls.__name__}.{f.name} expects {f.typ.__name__},"
                f" got {type(child).__name__}"
            )


@dataclass(frozen=True)
class Context:
    """One step of the path: the parent's tag plus the focus's siblings.

    ``left_rev`` holds the siblings left of the focus nearest-first, so a
    ``left`` move is O(1); rebuilding the parent is deferred to ``up``.
    """

    parent_tag: ConstructorTag
    left_rev: tuple[Any, ...]
    right: tuple[Any, ...]


@dataclass(frozen=True)
class Zipper:
    """A focused subtree plus the path of context frames back to the root.

    Optional moves (:meth:`down_left`, :meth:`down_right`, :meth:`left`,
    :meth:`right`, :meth:`up`) return ``None`` when impossible; the indexed
    accessors (:meth:`child_at`, :meth:`parent`, :meth:`sib_left`,
    :meth:`sib_right`) raise instead, making misuse loud.
    """

    focus: Any
    path: tuple[Context, ...]
    lang: Language = field(compare=False, repr=False)

    # -- optional moves ----------------------------------------------------

    def down_left(self) -> Zipper | None:
        """Move to the leftmost child."""
        kids = self.lang.children(self.focus)
        if not kids:
            return None
        ctx = Context(self.lang.tag(self.focus), (), tuple(kids[1:]))
        return Zipper(kids[0], (ctx,) + self.path, self.lang)

    def down_right(self) -> Zipper | None:
        """Move to the rightmost child."""
        kids = self.lang.children(self.focus)
        if not kids:
            return None
        ctx = Context(self.lang.tag(self.focus), tuple(reversed(kids[:-1])), ())
        return Zipper(kids[-1], (ctx,) + self.path, self.lang)

    def left(self) -> Zipper | None:
        if not self.path or not self.path[0].left_rev:
            return None
        ctx = self.path[0]
        moved = Context(ctx.parent_tag, ctx.left_rev[1:], (self.focus,) + ctx.right)
        return Zipper(ctx.left_rev[0], (moved,) + self.path[1:], self.lang)

    def right(self) -> Zipper | None:
        if not self.path or not self.path[0].right:
            return None
        ctx = self.path[0]
        moved = Context(ctx.parent_tag, (self.focus,) + ctx.left_rev, ctx.right[1:])
        return Zipper(ctx.right[0], (moved,) + self.path[1:], self.lang)

    def up(self) -> Zipper | None:
        if not self.path:
            return None
        ctx = self.path[0]
        kids = list(reversed(ctx.left_rev)) + [self.focus] + list(ctx.right)
        return Zipper(self.lang.rebuild(ctx.parent_tag, kids), self.path[1:], self.lang)

    @property
    def at_root(self) -> bool:
        return not self.path

    @property
    def position(self) -> tuple[int, ...]:
        """Root-to-focus path of 0-based child indices.

        Identifies the focus position independently of subtree content, which
        is what a type-preserving strategy must keep fixed.
        """
        return tuple(len(ctx.left_rev) for ctx in reversed(self.path))

    # -- non-optional accessors --------------------------------------------

    def child_at(self, index: int) -> Zipper:
        """Move to the 1-based ``index``-th child, counting every constructor argument."""
        kids = self.lang.children(self.focus)
        if not 1 <= index <= len(kids):
            raise ChildIndexError(f"child index {index} out of range 1..{len(kids)}")
        ctx = Context(
            self.lang.tag(self.focus),
            tuple(reversed(kids[: index - 1])),
            tuple(kids[index:]),
        )
        return Zipper(kids[index - 1], (ctx,) + self.path, self.lang)

    def parent(self) -> Zipper:
        up = self.up()
        if up is None:
            raise NavigationError("the root has no parent")
        return up

    def sib_left(self, count: int = 1) -> Zipper:
        """Move ``count`` siblings to the left."""
        z = self
        for _ in range(count):
            nxt = z.left()
            if nxt is None:
                raise NavigationError(f"no sibling {count} positions to the left")
            z = nxt
        return z

    def sib_right(self, count: int = 1) -> Zipper:
        """Move ``count`` siblings to the right."""
        z = self
        for _ in range(count):
            nxt = z.right()
            if nxt is None:
                raise NavigationError(f"no sibling {count} positions to the right")
            z = nxt
        return z

    # -- focus access and transformation ------------------------------------

    def get_hole(self, typ: type[T]) -> T | None:
        """The focus as ``typ``; ``None`` when its nominal type differs."""
        return self.focus if self.lang.nominal(self.focus) is typ else None

    def trans_m(self, f: Callable[[Any], Any | None]) -> Zipper | None:
        """Replace the focus with ``f(focus)``; ``None`` when ``f`` declines.

        ``f`` must preserve the focus's nominal type; a type-changing result
        raises :class:`TypePreservationError`.
        """
        result = f(self.focus)
        if result is None:
            return None
        if self.lang.nominal(result) is not self.lang.nominal(self.focus):
            raise TypePreservationError(
                f"transformation changed {self.lang.nominal(self.focus).__name__}"
                f" into {self.lang.nominal(result).__name__}"
            )
        return Zipper(result, self.path, self.lang)


def to_zipper(root: Any, lang: Language) -> Zipper:
    """Focus a zipper on ``root`` with an empty path."""
    if not lang.is_registered(root):
        raise RegistrationError(
            f"value of unregistered type {type(root).__name__}: {root!r}"
        )
    return Zipper(root, (), lang)


def from_zipper(z: Zipper) -> Any:
    """Rebuild and return the root value; independent of the focus position."""
    while True:
        up = z.up()
        if up is None:
            return z.focus
        z = up


# -- structured AST export/import -------------------------------------------

_LEAF_BY_KIND = {"bool": bool, "int": int, "str": str}


def export_ast(value: Any, lang: Language) -> dict[str, Any]:
    """Serialize a tree: nodes as type/ctor/children objects, leaves as kind/value."""
    kind = _leaf_kind(value)
    if kind is not None:
        return {"leaf": kind, "value": value}
    tag = lang.tag(value)
    return {
        "type": tag.type_name,
        "ctor": tag.ctor_name,
        "children": [export_ast(c, lang) for c in lang.children(value)],
    }


def import_ast(data: Any, lang: Language) -> Any:
    """Inverse of :func:`export_ast`; ``import_ast(export_ast(v)) == v``."""
    if not isinstance(data, dict):
        raise RebuildError(f"expected an object, got {type(data).__name__}")
    if "leaf" in data:
        typ = _LEAF_BY_KIND.get(data.get("leaf"))
        value = data.get("value")
        if typ is None or type(value) is not typ:
            raise RebuildError(f"malformed leaf entry: {data!r}")
        return value
    try:
        type_name, ctor_name, children = data["type"], data["ctor"], data["children"]
    except KeyError as exc:
        raise RebuildError(f"node entry missing key {exc}") from exc
    kids = [import_ast(c, lang) for c in children]
    return lang.rebuild(ConstructorTag(type_name, ctor_name, len(kids)), kids)


def export_json(value: Any, lang: Language, *, indent: int | None = None) -> str:
    return json.dumps(export_ast(value, lang), indent=indent)


def import_json(text: str, lang: Language) -> Any:
    return import_ast(json.loads(text), lang)
