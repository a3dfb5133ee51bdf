"""Strategy combinators over zippers.

Two strategy shapes cover rewriting and querying:

* a type-preserving strategy (``TP``) partially transforms a zipper in
  place: it is any callable ``Zipper -> Zipper | None``, where ``None``
  signals failure and a successful result keeps the focus position;
* a type-unifying strategy (:class:`TU`) partially reduces a zipper to a
  value in a monoid, so traversals can merge per-node results.

Construction combinators (``adhoc``/``mono``) lift ordinary functions on
node types into strategies; traversal schemes (``full``/``once``/``stop``
in top-down and bottom-up flavours) control where a strategy is applied
within the subtree under the focus.  ``innermost``/``outermost`` iterate a
one-shot search to a fixed point and accept an optional rewrite budget
("fuel") that turns divergent rule sets into a loud error.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Iterator, Optional, TypeVar

from .zipper import Zipper

D = TypeVar("D")
T = TypeVar("T")

#: A type-preserving strategy: partial zipper transformation.
TP = Callable[[Zipper], Optional[Zipper]]


class FuelExhaustedError(RuntimeError):
    """An iterated strategy exceeded its rewrite budget; the rules likely diverge."""


@dataclass(frozen=True)
class Monoid:
    """Identity (as a factory) and associative combine for TU results."""

    empty: Callable[[], Any]
    combine: Callable[[Any, Any], Any]


LIST_MONOID = Monoid(list, lambda a, b: a + b)


@dataclass(frozen=True)
class TU:
    """A type-unifying strategy: partial reduction of a zipper into a monoid.

    Traversal combinators only use the carried monoid through its identity
    and combine, never the concrete result type.
    """

    run: Callable[[Zipper], Optional[Any]]
    monoid: Monoid = LIST_MONOID

    def __call__(self, z: Zipper) -> Any | None:
        return self.run(z)


# -- primitive strategies ----------------------------------------------------


def id_tp(z: Zipper) -> Zipper:
    """Always succeeds, unchanged."""
    return z


def fail_tp(z: Zipper) -> None:
    """Always fails."""
    return None


def const_tu(value: Any, monoid: Monoid = LIST_MONOID) -> TU:
    """Always succeeds with ``value``."""
    return TU(lambda z: value, monoid)


def fail_tu(monoid: Monoid = LIST_MONOID) -> TU:
    """Always fails."""
    return TU(lambda z: None, monoid)


def try_tp(s: TP) -> TP:
    """Apply ``s`` if possible; keep the input otherwise.  Never fails."""

    def run(z: Zipper) -> Zipper:
        r = s(z)
        return z if r is None else r

    return run


def repeat_tp(s: TP, fuel: int | None = None) -> TP:
    """Apply ``s`` until it fails; return the last success (the input if none).

    With ``fuel`` set, performing more than ``fuel`` rewrites raises
    :class:`FuelExhaustedError` instead of looping forever.
    """

    def run(z: Zipper) -> Zipper:
        steps = 0
        while True:
            r = s(z)
            if r is None:
                return z
            steps += 1
            if fuel is not None and steps > fuel:
                raise FuelExhaustedError(
                    f"exceeded {fuel} rewrites without reaching a fixed point"
                )
            z = r

    return run


# -- strategy construction ---------------------------------------------------
#
# The typed function is tried first; the base strategy handles both type
# mismatch and the typed function declining.  The fallthrough on failure is
# what lets a chained step try rewrite rules first and fall back to a
# context-dependent rule on the same node type.


def adhoc_tp(base: TP, typ: type, f: Callable[[T], T | None]) -> TP:
    """Extend ``base`` with ``f``, applied when the focus is a ``typ``."""

    def run(z: Zipper) -> Zipper | None:
        v = z.get_hole(typ)
        if v is not None:
            r = f(v)
            if r is not None:
                return z.trans_m(lambda _cur: r)
        return base(z)

    return run


def adhoc_tpz(base: TP, typ: type, f: Callable[[T, Zipper], T | None]) -> TP:
    """Like :func:`adhoc_tp`, but ``f`` also receives the zipper at the focus,
    so it can evaluate attributes there."""

    def run(z: Zipper) -> Zipper | None:
        v = z.get_hole(typ)
        if v is not None:
            r = f(v, z)
            if r is not None:
                return z.trans_m(lambda _cur: r)
        return base(z)

    return run


def mono_tp(typ: type, f: Callable[[T], T | None]) -> TP:
    return adhoc_tp(fail_tp, typ, f)


def mono_tpz(typ: type, f: Callable[[T, Zipper], T | None]) -> TP:
    return adhoc_tpz(fail_tp, typ, f)


def adhoc_tu(base: TU, typ: type, f: Callable[[T], D | None]) -> TU:
    def run(z: Zipper) -> Any | None:
        v = z.get_hole(typ)
        if v is not None:
            r = f(v)
            if r is not None:
                return r
        return base(z)

    return TU(run, base.monoid)


def adhoc_tuz(base: TU, typ: type, f: Callable[[T, Zipper], D | None]) -> TU:
    def run(z: Zipper) -> Any | None:
        v = z.get_hole(typ)
        if v is not None:
            r = f(v, z)
            if r is not None:
                return r
        return base(z)

    return TU(run, base.monoid)


def mono_tu(typ: type, f: Callable[[T], D | None], monoid: Monoid = LIST_MONOID) -> TU:
    return adhoc_tu(fail_tu(monoid), typ, f)


def mono_tuz(typ: type, f: Callable[[T, Zipper], D | None], monoid: Monoid = LIST_MONOID) -> TU:
    return adhoc_tuz(fail_tu(monoid), typ, f)


# -- composition and choice ---------------------------------------------------


def seq_tp(a: TP, b: TP) -> TP:
    """Apply ``a`` then ``b``, skipping whichever fails; fails iff both fail."""

    def run(z: Zipper) -> Zipper | None:
        ok = False
        r = a(z)
        if r is not None:
            z, ok = r, True
        r = b(z)
        if r is not None:
            z, ok = r, True
        return z if ok else None

    return run


def choice_tp(a: TP, b: TP) -> TP:
    """``a``'s result if it succeeds, else ``b``'s."""

    def run(z: Zipper) -> Zipper | None:
        r = a(z)
        return r if r is not None else b(z)

    return run


def seq_tu(a: TU, b: TU) -> TU:
    """Evaluate both on the same zipper, appending successes in order."""

    m = a.monoid

    def run(z: Zipper) -> Any | None:
        ra, rb = a(z), b(z)
        if ra is None and rb is None:
            return None
        if ra is None:
            return rb
        if rb is None:
            return ra
        return m.combine(ra, rb)

    return TU(run, m)


def choice_tu(a: TU, b: TU) -> TU:
    def run(z: Zipper) -> Any | None:
        r = a(z)
        return r if r is not None else b(z)

    return TU(run, a.monoid)


# -- one-step traversal combinators -------------------------------------------


def all_tp_down(s: TP) -> TP:
    """Apply ``s`` at the leftmost child and restore focus; succeed when childless."""

    def run(z: Zipper) -> Zipper | None:
        c = z.down_left()
        if c is None:
            return z
        r = s(c)
        return None if r is None else r.up()

    return run


def all_tp_right(s: TP) -> TP:
    """Apply ``s`` at the right sibling and move back; succeed when there is none."""

    def run(z: Zipper) -> Zipper | None:
        c = z.right()
        if c is None:
            return z
        r = s(c)
        return None if r is None else r.left()

    return run


def one_tp_down(s: TP) -> TP:
    """Like :func:`all_tp_down`, but a missing child is a failure."""

    def run(z: Zipper) -> Zipper | None:
        c = z.down_left()
        if c is None:
            return None
        r = s(c)
        return None if r is None else r.up()

    return run


def one_tp_right(s: TP) -> TP:
    def run(z: Zipper) -> Zipper | None:
        c = z.right()
        if c is None:
            return None
        r = s(c)
        return None if r is None else r.left()

    return run


def all_tu_down(s: TU) -> TU:
    """``s`` at the leftmost child; a missing child contributes the identity."""

    def run(z: Zipper) -> Any | None:
        c = z.down_left()
        if c is None:
            return s.monoid.empty()
        return s(c)

    return TU(run, s.monoid)


def all_tu_right(s: TU) -> TU:
    def run(z: Zipper) -> Any | None:
        c = z.right()
        if c is None:
            return s.monoid.empty()
        return s(c)

    return TU(run, s.monoid)


# -- full traversal strategies -------------------------------------------------
#
# Traversals cover the subtree under the focus: td visits a node before its
# children, bu after; children are always taken left to right.  Successful
# results keep the original focus position.


def _child_zippers(z: Zipper) -> Iterator[Zipper]:
    c = z.down_left()
    while c is not None:
        yield c
        c = c.right()


def _over_children(go: Callable[[Zipper], tuple[Zipper, bool]], z: Zipper) -> tuple[Zipper, bool]:
    """Run ``go`` on each child subtree in turn, rebuilding the focus node."""
    cur = z.down_left()
    if cur is None:
        return z, False
    ok = False
    while True:
        cur, one = go(cur)
        ok = ok or one
        nxt = cur.right()
        if nxt is None:
            return cur.up(), ok
        cur = nxt


def full_td_tp(s: TP) -> TP:
    """Apply ``s`` at every node in preorder, skipping per-node failures.

    Fails only when no node accepted ``s``.  A node is visited before its
    children, so ``s`` sees children produced by its own rewrite above them.
    """

    def go(z: Zipper) -> tuple[Zipper, bool]:
        ok = False
        r = s(z)
        if r is not None:
            z, ok = r, True
        z, kids_ok = _over_children(go, z)
        return z, ok or kids_ok

    def run(z: Zipper) -> Zipper | None:
        z2, ok = go(z)
        return z2 if ok else None

    return run


def full_bu_tp(s: TP) -> TP:
    """Postorder counterpart of :func:`full_td_tp`: children first, node last."""

    def go(z: Zipper) -> tuple[Zipper, bool]:
        z, kids_ok = _over_children(go, z)
        r = s(z)
        if r is not None:
            return r, True
        return z, kids_ok

    def run(z: Zipper) -> Zipper | None:
        z2, ok = go(z)
        return z2 if ok else None

    return run


def full_td_tu(s: TU) -> TU:
    """Append ``s``'s results over all nodes in preorder.

    Per-node failures contribute the monoid identity, so the traversal as a
    whole always succeeds.
    """

    m = s.monoid

    def go(z: Zipper) -> Any:
        acc = s(z)
        if acc is None:
            acc = m.empty()
        for c in _child_zippers(z):
            acc = m.combine(acc, go(c))
        return acc

    return TU(go, m)


def full_bu_tu(s: TU) -> TU:
    """Postorder counterpart of :func:`full_td_tu`."""

    m = s.monoid

    def go(z: Zipper) -> Any:
        acc = m.empty()
        for c in _child_zippers(z):
            acc = m.combine(acc, go(c))
        r = s(z)
        return acc if r is None else m.combine(acc, r)

    return TU(go, m)


# -- once traversal strategies ---------------------------------------------


def once_td_tp(s: TP) -> TP:
    """Apply ``s`` exactly once, at the leftmost-outermost node that accepts it."""

    def run(z: Zipper) -> Zipper | None:
        r = s(z)
        if r is not None:
            return r
        for c in _child_zippers(z):
            r = run(c)
            if r is not None:
                return r.up()
        return None

    return run


def once_bu_tp(s: TP) -> TP:
    """Apply ``s`` exactly once, at the leftmost-innermost node that accepts it."""

    def run(z: Zipper) -> Zipper | None:
        for c in _child_zippers(z):
            r = run(c)
            if r is not None:
                return r.up()
        return s(z)

    return run


def once_td_tu(s: TU) -> TU:
    """The first successful reduction in preorder."""

    def run(z: Zipper) -> Any | None:
        r = s(z)
        if r is not None:
            return r
        for c in _child_zippers(z):
            r = run(c)
            if r is not None:
                return r
        return None

    return TU(run, s.monoid)


def once_bu_tu(s: TU) -> TU:
    """The first successful reduction in postorder."""

    def run(z: Zipper) -> Any | None:
        for c in _child_zippers(z):
            r = run(c)
            if r is not None:
                return r
        return s(z)

    return TU(run, s.monoid)


# -- stop traversal strategies ------------------------------------------------


def stop_td_tp(s: TP) -> TP:
    """Top-down, but success at a node prunes that node's descendants."""

    def go(z: Zipper) -> tuple[Zipper, bool]:
        r = s(z)
        if r is not None:
            return r, True
        return _over_children(go, z)

    def run(z: Zipper) -> Zipper | None:
        z2, ok = go(z)
        return z2 if ok else None

    return run


def stop_bu_tp(s: TP) -> TP:
    """Bottom-up, but any success below a node suppresses the node itself."""

    def go(z: Zipper) -> tuple[Zipper, bool]:
        z, below = _over_children(go, z)
        if below:
            return z, True
        r = s(z)
        if r is not None:
            return r, True
        return z, False

    def run(z: Zipper) -> Zipper | None:
        z2, ok = go(z)
        return z2 if ok else None

    return run


def stop_td_tu(s: TU) -> TU:
    """Append results top-down, pruning below every node where ``s`` succeeded."""

    m = s.monoid

    def go(z: Zipper) -> Any:
        r = s(z)
        if r is not None:
            return r
        acc = m.empty()
        for c in _child_zippers(z):
            acc = m.combine(acc, go(c))
        return acc

    return TU(go, m)


def stop_bu_tu(s: TU) -> TU:
    """Append results bottom-up; a node contributes only if nothing below it did."""

    m = s.monoid

    def go(z: Zipper) -> tuple[Any, bool]:
        acc = m.empty()
        below = False
        for c in _child_zippers(z):
            d, ok = go(c)
            acc = m.combine(acc, d)
            below = below or ok
        if below:
            return acc, True
        r = s(z)
        if r is not None:
            return m.combine(acc, r), True
        return acc, False

    return TU(lambda z: go(z)[0], m)


# -- normalization -----------------------------------------------------------


def innermost(s: TP, fuel: int | None = None) -> TP:
    """Rewrite the leftmost-innermost redex until none remains.

    Always succeeds; the result is a normal form of ``s`` under that search
    order.  A step that always succeeds loops forever, hence the optional
    fuel bound.
    """
    return repeat_tp(once_bu_tp(s), fuel)


def outermost(s: TP, fuel: int | None = None) -> TP:
    """Rewrite the leftmost-outermost redex until none remains."""
    return repeat_tp(once_td_tp(s), fuel)


# -- application -------------------------------------------------------------


def apply_tp(s: TP, z: Zipper) -> Zipper | None:
    """Run a type-preserving strategy at a zipper."""
    return s(z)


def apply_tu(s: TU, z: Zipper) -> Any | None:
    """Run a type-unifying strategy at a zipper."""
    return s.run(z)
