"""Attribute grammars as plain functions over zippers.

An attribute is any pure function from a zipper (rooted at a designated
root type) to a value: dispatch on the focused constructor, read inherited
values through ``parent()`` and synthesized ones through ``child_at(i)``.
Being ordinary functions, attributes compose with strategies and vice
versa; nothing is memoized, so the same zipper always yields the same
value by recomputation.
"""

from __future__ import annotations

from typing import Callable, TypeVar

from .zipper import ConstructorTag, Zipper

A = TypeVar("A")

#: An attribute over trees of some root type.
AGTree = Callable[[Zipper], A]


def constructor_of(z: Zipper) -> ConstructorTag:
    """Tag of the focused constructor, synthesized from the reflection contract.

    Total on registered trees; raises ``RegistrationError`` otherwise.
    """
    return z.lang.tag(z.focus)
