"""LF type checking: bidirectional inference/checking plus proof checking.

Inference mode requires annotated λ-binders; checking mode propagates the
expected Π domain into unannotated binders (how view assignments like
`[a,b] a ∧ b` get checked). Definitional equality is β plus full δ.
"""

from __future__ import annotations

from dataclasses import dataclass

from glf.errors import (
    NotAFunction,
    TypeError_,
    TypeMismatch,
    UnknownConstant,
    UntypedBinder,
)
from glf.kernel.declarations import Declaration, Signature
from glf.kernel.reduce import def_eq, normalize, whnf
from glf.kernel.terms import (
    App,
    Const,
    KIND,
    Lam,
    Pi,
    Sort,
    TYPE,
    Term,
    Var,
    free_vars,
    fresh_name,
    show,
    substitute,
)


class Context:
    """Ordered (name, type) bindings for free variables."""

    def __init__(self, bindings: tuple[tuple[str, Term], ...] = ()):
        self.bindings = bindings
        self._types = dict(bindings)

    def lookup(self, name: str) -> Term | None:
        return self._types.get(name)

    def extend(self, name: str, type_: Term) -> "Context":
        return Context(self.bindings + ((name, type_),))

    def names(self) -> frozenset[str]:
        return frozenset(self._types)

    def __contains__(self, name: str) -> bool:
        return name in self._types


EMPTY = Context()


def _bind(ctx: Context, binder: str, body: Term) -> tuple[str, Term, Context]:
    """Enter a binder, renaming it if it would shadow a context entry."""
    if binder in ctx:
        renamed = fresh_name(binder, ctx.names() | free_vars(body))
        body = substitute(body, binder, Var(renamed))
        binder = renamed
    return binder, body, ctx


def infer_type(sig: Signature, ctx: Context, t: Term) -> Term:
    """β-normal type of `t` under standard LF rules."""
    match t:
        case Sort("type"):
            return KIND
        case Sort():
            return _fail(f"{show(t)} has no classifier")
        case Var(name):
            ty = ctx.lookup(name)
            if ty is None:
                raise UnknownConstant(f"unbound variable {name}")
            return normalize(sig, ty)
        case Const(name):
            d = sig.lookup(name)
            if d is None:
                raise UnknownConstant(f"unknown constant {name}")
            if d.type_ is not None:
                return normalize(sig, d.type_)
            return infer_type(sig, EMPTY, d.definiens)
        case App(fn, arg):
            fn_type = whnf(sig, infer_type(sig, ctx, fn), delta="full")
            if not isinstance(fn_type, Pi):
                raise NotAFunction(
                    f"{show(fn)} of type {show(fn_type)} is applied to {show(arg)}"
                )
            check_type(sig, ctx, arg, fn_type.domain)
            return normalize(sig, substitute(fn_type.codomain, fn_type.binder, arg))
        case Lam(binder, binder_type, body):
            if binder_type is None:
                raise UntypedBinder(
                    f"cannot infer the type of [{binder}] without an annotation"
                )
            _check_is_type(sig, ctx, binder_type)
            binder, body, ctx = _bind(ctx, binder, body)
            body_type = infer_type(sig, ctx.extend(binder, binder_type), body)
            return Pi(binder, normalize(sig, binder_type), body_type)
        case Pi(binder, domain, codomain):
            _check_is_type(sig, ctx, domain)
            binder, codomain, ctx = _bind(ctx, binder, codomain)
            sort = infer_type(sig, ctx.extend(binder, domain), codomain)
            if not isinstance(sort, Sort):
                raise TypeMismatch("type or kind", show(sort), show(t))
            return sort
    raise TypeError(f"not a term: {t!r}")


def check_type(sig: Signature, ctx: Context, t: Term, expected: Term) -> None:
    """Check `t` against `expected`, pushing Π domains into unannotated λs."""
    expected_w = whnf(sig, expected, delta="full")
    if isinstance(t, Lam) and isinstance(expected_w, Pi):
        if t.binder_type is not None and not def_eq(sig, t.binder_type, expected_w.domain):
            raise TypeMismatch(show(expected_w.domain), show(t.binder_type),
                               f"binder [{t.binder}]")
        binder, body, ctx = _bind(ctx, t.binder, t.body)
        body_expected = substitute(expected_w.codomain, expected_w.binder, Var(binder))
        check_type(sig, ctx.extend(binder, expected_w.domain), body, body_expected)
        return
    actual = infer_type(sig, ctx, t)
    if not def_eq(sig, actual, expected):
        raise TypeMismatch(show(expected), show(actual), show(t))


def _check_is_type(sig: Signature, ctx: Context, t: Term) -> None:
    sort = infer_type(sig, ctx, t)
    if sort != TYPE:
        raise TypeMismatch("a type", f"{show(t)} : {show(sort)}", show(t))


def _fail(message: str) -> Term:
    raise TypeError_(message)


@dataclass(frozen=True)
class ProofCheck:
    """Boolean verdict with a diagnostic; falsy when the proof is rejected."""

    ok: bool
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def _judgment_constant(sig: Signature, prop_type: Term, judgment: str | None) -> Declaration:
    """The `⊢`-style constant of type `P -> type` for propositions of type P."""
    if judgment is not None:
        d = sig.lookup(judgment)
        if d is None:
            raise UnknownConstant(f"unknown judgment constant {judgment}")
        return d
    candidates = []
    for d in sig:
        if d.type_ is None:
            continue
        ty = whnf(sig, d.type_, delta="full")
        if (isinstance(ty, Pi) and ty.codomain == TYPE
                and def_eq(sig, ty.domain, prop_type)):
            candidates.append(d)
    if len(candidates) != 1:
        names = ", ".join(d.name for d in candidates) or "none"
        raise TypeError_(
            f"cannot determine the judgment constant (candidates: {names}); "
            "pass judgment= explicitly"
        )
    return candidates[0]


def check_proof(sig: Signature, proof: Term, proposition: Term, *,
                judgment: str | None = None) -> ProofCheck:
    """True iff the proof's type is definitionally `⊢ proposition`."""
    try:
        prop_type = infer_type(sig, EMPTY, proposition)
        j = _judgment_constant(sig, prop_type, judgment)
        expected = normalize(sig, App(Const(j.name), proposition))
        actual = infer_type(sig, EMPTY, proof)
    except TypeError_ as e:
        return ProofCheck(False, str(e))
    if def_eq(sig, actual, expected):
        return ProofCheck(True)
    return ProofCheck(
        False, f"proof has type {show(actual)}, expected {show(expected)}"
    )
