"""β-normalization with on-demand δ-unfolding.

δ policy:
  - "applied"  (default): a defined constant unfolds only when it heads a
    redex, i.e. it is applied and its definiens is a λ. Unapplied defined
    constants stay opaque, so normal forms keep names like `or` readable.
  - "full": every defined constant unfolds — used for definitional equality.
  - "none": pure β.

All reduction shares one step budget; exceeding it raises
NonTerminationGuard rather than silently truncating. The budget only guards
against diverging (ill-typed) inputs — well-typed LF terms normalize long
before the default 100,000 steps.
"""

from __future__ import annotations

from glf.errors import NonTerminationGuard
from glf.kernel.declarations import Signature
from glf.kernel.terms import App, Const, Lam, Pi, Sort, Term, Var, app, alpha_eq, spine, substitute

DEFAULT_BUDGET = 100_000


class _Budget:
    __slots__ = ("left", "total")

    def __init__(self, n: int):
        self.left = n
        self.total = n

    def spend(self) -> None:
        self.left -= 1
        if self.left < 0:
            raise NonTerminationGuard(
                f"reduction exceeded the step budget of {self.total}"
            )


def _whnf(t: Term, sig: Signature | None, delta: str, budget: _Budget) -> Term:
    """Weak head normal form; iterative so deep redex chains cannot overflow."""
    args: list[Term] = []
    while True:
        if isinstance(t, App):
            args.append(t.arg)
            t = t.fn
            continue
        if isinstance(t, Lam) and args:
            budget.spend()
            t = substitute(t.body, t.binder, args.pop())
            continue
        if isinstance(t, Const) and sig is not None and delta != "none":
            d = sig.lookup(t.name)
            if d is not None and d.definiens is not None:
                if delta == "full" or (args and isinstance(d.definiens, Lam)):
                    budget.spend()
                    t = d.definiens
                    continue
        break
    for a in reversed(args):
        t = App(t, a)
    return t


def whnf(sig: Signature | None, t: Term, *, delta: str = "applied",
         budget: int = DEFAULT_BUDGET) -> Term:
    return _whnf(t, sig, delta, _Budget(budget))


def normalize(sig: Signature | None, t: Term, *, delta: str = "applied",
              budget: int = DEFAULT_BUDGET) -> Term:
    """Full β(δ)-normal form, unique up to α for well-typed terms."""
    bud = _Budget(budget)

    def norm(t: Term) -> Term:
        t = _whnf(t, sig, delta, bud)
        match t:
            case App():
                head, args = spine(t)
                return app(head, *[norm(a) for a in args])
            case Lam(binder, binder_type, body):
                bt = norm(binder_type) if binder_type is not None else None
                return Lam(binder, bt, norm(body))
            case Pi(binder, domain, codomain):
                return Pi(binder, norm(domain), norm(codomain))
            case Const() | Var() | Sort():
                return t
        raise TypeError(f"not a term: {t!r}")

    return norm(t)


def def_eq(sig: Signature | None, t: Term, u: Term, *,
           budget: int = DEFAULT_BUDGET) -> bool:
    """Definitional equality: α-equality of fully δ-unfolded β-normal forms."""
    if alpha_eq(t, u):
        return True
    return alpha_eq(
        normalize(sig, t, delta="full", budget=budget),
        normalize(sig, u, delta="full", budget=budget),
    )
