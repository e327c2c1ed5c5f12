"""Single-step rewriting of manifold expressions.

:func:`quadrics.calculus.normalize` computes the normal form in one recursive
pass.  This module reaches it by local rules instead, so that any order of
rule application can be compared against it.
"""
from __future__ import annotations

import random
from typing import Callable, Iterator

from .calculus import ConnSum, Gyr, ManifoldExpr, NormalForm, NotReducible, Prod, Sphere


def _children(e) -> tuple:
    if isinstance(e, (Prod, ConnSum)):
        return e.children
    if isinstance(e, Gyr):
        return (e.child,)
    return ()


def _with_child(e, i: int, new):
    if isinstance(e, Gyr):
        return Gyr(new)
    kids = list(e.children)
    kids[i] = new
    return type(e)(*kids)


# each rule returns the rewritten node or None when it does not apply

def flatten_sum(e):
    if isinstance(e, ConnSum) and any(isinstance(c, ConnSum) for c in e.children):
        out = []
        for c in e.children:
            out.extend(c.children if isinstance(c, ConnSum) else (c,))
        return ConnSum(*out)
    return None


def flatten_prod(e):
    if isinstance(e, Prod) and any(isinstance(c, Prod) for c in e.children):
        out = []
        for c in e.children:
            out.extend(c.children if isinstance(c, Prod) else (c,))
        return Prod(*out)
    return None


def gyrate_sphere(e):
    if isinstance(e, Gyr) and isinstance(e.child, Sphere):
        return Sphere(e.child.n + 1)
    return None


def gyrate_sum(e):
    if isinstance(e, Gyr) and isinstance(e.child, ConnSum):
        return ConnSum(*(Gyr(c) for c in e.child.children))
    return None


def gyrate_pair(e):
    if (isinstance(e, Gyr) and isinstance(e.child, Prod) and len(e.child.children) == 2
            and all(isinstance(c, Sphere) for c in e.child.children)):
        p, q = (c.n for c in e.child.children)
        return ConnSum(Prod(Sphere(p + 1), Sphere(q)), Prod(Sphere(p), Sphere(q + 1)))
    return None


def absorb_sphere(e):
    if isinstance(e, ConnSum):
        rest = [c for c in e.children if not isinstance(c, Sphere)]
        if len(rest) == len(e.children):
            return None
        if not rest:
            return Sphere(e.dim)
        if len(rest) == 1:
            return rest[0]
        # drop one sphere at a time so that schedules stay fine-grained
        i = next(i for i, c in enumerate(e.children) if isinstance(c, Sphere))
        kids = e.children[:i] + e.children[i + 1:]
        return kids[0] if len(kids) == 1 else ConnSum(*kids)
    return None


RULES: dict[str, Callable] = {
    "flatten-sum": flatten_sum,
    "flatten-prod": flatten_prod,
    "gyrate-sphere": gyrate_sphere,
    "gyrate-sum": gyrate_sum,
    "gyrate-pair": gyrate_pair,
    "absorb-sphere": absorb_sphere,
}


def redexes(e, path=()) -> Iterator[tuple[tuple[int, ...], str]]:
    """All ``(path, rule)`` pairs where a rule applies, in pre-order."""
    for name, rule in RULES.items():
        if rule(e) is not None:
            yield path, name
    for i, c in enumerate(_children(e)):
        yield from redexes(c, path + (i,))


def apply_at(e, path: tuple[int, ...], name: str):
    if not path:
        out = RULES[name](e)
        if out is None:
            raise ValueError(f"rule {name} does not apply")
        return out
    i = path[0]
    return _with_child(e, i, apply_at(_children(e)[i], path[1:], name))


def rewrite(e: ManifoldExpr, rng: random.Random | None = None, limit: int = 100000) -> ManifoldExpr:
    """Apply rules until none applies.

    Without ``rng`` the innermost-leftmost redex is taken (the deterministic
    expansion); with ``rng`` a uniformly random redex at every step.
    """
    for _ in range(limit):
        found = list(redexes(e))
        if not found:
            return e
        if rng is None:
            path, name = max(found, key=lambda r: len(r[0]))
            # among the deepest, the leftmost
            depth = len(path)
            path, name = min((r for r in found if len(r[0]) == depth), key=lambda r: r[0])
        else:
            path, name = rng.choice(found)
        e = apply_at(e, path, name)
    raise RuntimeError("rewriting did not terminate")


def expand(e: ManifoldExpr) -> ManifoldExpr:
    return rewrite(e)


def read_off(e: ManifoldExpr) -> NormalForm | NotReducible:
    """Normal form of a fully rewritten expression, without further rewriting."""
    if isinstance(e, Sphere):
        return NormalForm(e.n)
    summands = e.children if isinstance(e, ConnSum) else (e,)
    out = []
    for s in summands:
        if isinstance(s, Prod) and all(isinstance(c, Sphere) for c in s.children):
            out.append(tuple(c.n for c in s.children))
        else:
            return NotReducible("stuck")
    return NormalForm(e.dim, tuple(out))
