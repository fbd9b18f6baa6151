"""Term representation for the logical framework.

Terms are immutable trees. The only term equality used anywhere in the
framework is α-equivalence; plain ``==`` is structural equality and is an
implementation detail (it agrees with α-equivalence on `alpha_normal` forms).

The non-dependent arrow ``A -> B`` is not a separate constructor: it is a
`Pi` whose binder does not occur free in the codomain (see `arrow`).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union


@dataclass(frozen=True)
class Const:
    """A reference to a declared constant, by (possibly qualified) name."""

    name: str


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class App:
    fn: "Term"
    arg: "Term"


@dataclass(frozen=True)
class Lam:
    binder: str
    binder_type: Union["Term", None]
    body: "Term"


@dataclass(frozen=True)
class Pi:
    binder: str
    domain: "Term"
    codomain: "Term"


@dataclass(frozen=True)
class Sort:
    """The sort `type`, plus the internal classifier `kind` sitting above it."""

    name: str


Term = Union[Const, Var, App, Lam, Pi, Sort]

TYPE = Sort("type")
KIND = Sort("kind")


def app(fn: Term, *args: Term) -> Term:
    """Left-nested application `fn a1 ... an`."""
    for a in args:
        fn = App(fn, a)
    return fn


def lam(binders: Iterable[str | tuple[str, Term]], body: Term) -> Term:
    """Nested lambdas; each binder is a name or a (name, type) pair."""
    bs = list(binders)
    for b in reversed(bs):
        if isinstance(b, tuple):
            body = Lam(b[0], b[1], body)
        else:
            body = Lam(b, None, body)
    return body


def arrow(*types: Term) -> Term:
    """Right-nested non-dependent function type `A1 -> ... -> An -> B`."""
    if not types:
        raise ValueError("arrow needs at least one type")
    result = types[-1]
    for dom in reversed(types[:-1]):
        result = Pi("_", dom, result)
    return result


def spine(t: Term) -> tuple[Term, list[Term]]:
    """Split `h a1 ... an` into (h, [a1, ..., an])."""
    args: list[Term] = []
    while isinstance(t, App):
        args.append(t.arg)
        t = t.fn
    args.reverse()
    return t, args


def free_vars(t: Term) -> frozenset[str]:
    match t:
        case Var(name):
            return frozenset((name,))
        case Const() | Sort():
            return frozenset()
        case App(fn, arg):
            return free_vars(fn) | free_vars(arg)
        case Lam(binder, binder_type, body):
            fv = free_vars(body) - {binder}
            if binder_type is not None:
                fv |= free_vars(binder_type)
            return fv
        case Pi(binder, domain, codomain):
            return free_vars(domain) | (free_vars(codomain) - {binder})
    raise TypeError(f"not a term: {t!r}")


def constants(t: Term) -> frozenset[str]:
    """All constant names occurring anywhere in `t` (including binder types)."""
    match t:
        case Const(name):
            return frozenset((name,))
        case Var() | Sort():
            return frozenset()
        case App(fn, arg):
            return constants(fn) | constants(arg)
        case Lam(_, binder_type, body):
            cs = constants(body)
            if binder_type is not None:
                cs |= constants(binder_type)
            return cs
        case Pi(_, domain, codomain):
            return constants(domain) | constants(codomain)
    raise TypeError(f"not a term: {t!r}")


def fresh_name(base: str, avoid: frozenset[str] | set[str]) -> str:
    """The first of base', base'', ... not in `avoid`."""
    name = base
    while name in avoid:
        name += "'"
    return name


def substitute(t: Term, x: str, s: Term) -> Term:
    """Capture-avoiding substitution of `s` for free occurrences of `x`."""
    fv_s = free_vars(s)

    def go(t: Term) -> Term:
        match t:
            case Var(name):
                return s if name == x else t
            case Const() | Sort():
                return t
            case App(fn, arg):
                return App(go(fn), go(arg))
            case Lam(binder, binder_type, body):
                bt = go(binder_type) if binder_type is not None else None
                if binder == x:
                    return Lam(binder, bt, body)
                if binder in fv_s and x in free_vars(body):
                    renamed = fresh_name(binder, fv_s | free_vars(body) | {x})
                    body = substitute(body, binder, Var(renamed))
                    binder = renamed
                return Lam(binder, bt, go(body))
            case Pi(binder, domain, codomain):
                dom = go(domain)
                if binder == x:
                    return Pi(binder, dom, codomain)
                if binder in fv_s and x in free_vars(codomain):
                    renamed = fresh_name(binder, fv_s | free_vars(codomain) | {x})
                    codomain = substitute(codomain, binder, Var(renamed))
                    binder = renamed
                return Pi(binder, dom, go(codomain))
        raise TypeError(f"not a term: {t!r}")

    return go(t)


def alpha_eq(t: Term, u: Term) -> bool:
    """True iff `t` and `u` are identical up to renaming of bound variables."""

    def go(t: Term, u: Term, env_t: dict[str, int], env_u: dict[str, int], depth: int) -> bool:
        match (t, u):
            case (Var(a), Var(b)):
                la, lb = env_t.get(a), env_u.get(b)
                if la is None and lb is None:
                    return a == b
                return la == lb
            case (Const(a), Const(b)):
                return a == b
            case (Sort(a), Sort(b)):
                return a == b
            case (App(f1, a1), App(f2, a2)):
                return go(f1, f2, env_t, env_u, depth) and go(a1, a2, env_t, env_u, depth)
            case (Lam(b1, t1, m1), Lam(b2, t2, m2)):
                if (t1 is None) != (t2 is None):
                    return False
                if t1 is not None and not go(t1, t2, env_t, env_u, depth):
                    return False
                return go(m1, m2, {**env_t, b1: depth}, {**env_u, b2: depth}, depth + 1)
            case (Pi(b1, d1, c1), Pi(b2, d2, c2)):
                if not go(d1, d2, env_t, env_u, depth):
                    return False
                return go(c1, c2, {**env_t, b1: depth}, {**env_u, b2: depth}, depth + 1)
        return False

    return go(t, u, {}, {}, 0)


def alpha_normal(t: Term) -> Term:
    """Canonical α-representative: binders renamed $0, $1, ... in traversal order.

    Structural equality and hashing of alpha-normal terms coincide with
    α-equivalence, which makes them usable as set / dict keys.
    """

    def go(t: Term, env: dict[str, str], depth: int) -> Term:
        match t:
            case Var(name):
                return Var(env.get(name, name))
            case Const() | Sort():
                return t
            case App(fn, arg):
                return App(go(fn, env, depth), go(arg, env, depth))
            case Lam(binder, binder_type, body):
                bt = go(binder_type, env, depth) if binder_type is not None else None
                fresh = f"${depth}"
                return Lam(fresh, bt, go(body, {**env, binder: fresh}, depth + 1))
            case Pi(binder, domain, codomain):
                dom = go(domain, env, depth)
                fresh = f"${depth}"
                return Pi(fresh, dom, go(codomain, {**env, binder: fresh}, depth + 1))
        raise TypeError(f"not a term: {t!r}")

    return go(t, {}, 0)


def show(t: Term) -> str:
    """Plain debug rendering (notation-unaware); error messages use this."""
    match t:
        case Const(name) | Var(name):
            return name
        case Sort(name):
            return name
        case App():
            head, args = spine(t)
            parts = [show(head)] + [
                f"({show(a)})" if isinstance(a, (App, Lam, Pi)) else show(a) for a in args
            ]
            return " ".join(parts)
        case Lam(binder, binder_type, body):
            ann = f" : {show(binder_type)}" if binder_type is not None else ""
            return f"[{binder}{ann}] {show(body)}"
        case Pi(binder, domain, codomain):
            if binder not in free_vars(codomain):
                dom = show(domain)
                if isinstance(domain, (Pi, Lam)):
                    dom = f"({dom})"
                return f"{dom} -> {show(codomain)}"
            return f"{{{binder} : {show(domain)}}} {show(codomain)}"
    raise TypeError(f"not a term: {t!r}")
