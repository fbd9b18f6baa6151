"""Theories, includes, meta-theories, and views (theory morphisms).

Theories and views are immutable after construction; the `TheoryGraph`
registry resolves name references and caches flattening. The meta-theory
`LF` is a built-in pseudo-reference contributing no declarations; any other
meta name is resolved like an include.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from glf.errors import (
    CyclicInclude,
    DuplicateName,
    ModuleError,
    PartialView,
    UnresolvedReference,
)
from glf.kernel import (
    App,
    Const,
    Declaration,
    Lam,
    Pi,
    Signature,
    Sort,
    Term,
    Var,
    alpha_eq,
)
from glf.kernel.typecheck import EMPTY, check_type

LF = "LF"


def _pi_arity(t: Term | None) -> int:
    n = 0
    while isinstance(t, Pi):
        n += 1
        t = t.codomain
    return n


@dataclass(frozen=True)
class Theory:
    name: str
    meta: str | None = None
    includes: tuple[str, ...] = ()
    declarations: tuple[Declaration, ...] = ()

    def __post_init__(self) -> None:
        owned = tuple(
            d if d.home == self.name else replace(d, home=self.name)
            for d in self.declarations
        )
        object.__setattr__(self, "declarations", owned)
        seen: set[str] = set()
        for d in owned:
            if d.name in seen:
                raise DuplicateName(f"{self.name} declares {d.name} twice")
            seen.add(d.name)
            if d.notation is not None and d.type_ is not None:
                if d.notation.arity > _pi_arity(d.type_):
                    raise ModuleError(
                        f"{self.name}?{d.name}: notation has {d.notation.arity} "
                        f"placeholders but the type takes {_pi_arity(d.type_)} arguments"
                    )


@dataclass(frozen=True)
class View:
    """A morphism: assignments from source constants to target terms."""

    name: str
    source: str
    target: str
    includes: tuple[str, ...] = ()
    assignments: tuple[tuple[str, Term], ...] = ()


class FlatTheory(Signature):
    """A flattened theory: dependency-ordered declarations with lookup."""

    def __init__(self, name: str, declarations: tuple[Declaration, ...]):
        super().__init__(declarations)
        self.name = name
        self.meta = None
        self.includes: tuple[str, ...] = ()
        self._notation_table = None  # filled lazily by the syntax layer

    def ambiguous(self, name: str) -> bool:
        return len(self._by_name.get(name, ())) > 1


class TheoryGraph:
    """Registry of theories and views; flattening is cached per theory name."""

    def __init__(self) -> None:
        self.theories: dict[str, Theory] = {}
        self.views: dict[str, View] = {}
        self._flat: dict[str, FlatTheory] = {}

    def add(self, module: Theory | View) -> None:
        table = self.theories if isinstance(module, Theory) else self.views
        if module.name in self.theories or module.name in self.views:
            raise DuplicateName(f"module name {module.name} already registered")
        table[module.name] = module
        self._flat.clear()

    def theory(self, name: str) -> Theory:
        try:
            return self.theories[name]
        except KeyError:
            raise UnresolvedReference(f"unknown theory {name}") from None

    def view(self, name: str) -> View:
        try:
            return self.views[name]
        except KeyError:
            raise UnresolvedReference(f"unknown view {name}") from None

    def flatten(self, theory: str | Theory | FlatTheory) -> FlatTheory:
        if isinstance(theory, FlatTheory):
            return theory
        top = self.theory(theory) if isinstance(theory, str) else theory
        registered = self.theories.get(top.name) is top
        if registered and top.name in self._flat:
            return self._flat[top.name]

        declarations: list[Declaration] = []
        done: set[str] = set()
        visiting: list[str] = []

        def visit(t: Theory) -> None:
            if t.name in done:
                return
            if t.name in visiting:
                cycle = " -> ".join(visiting + [t.name])
                raise CyclicInclude(f"cyclic include/meta chain: {cycle}")
            visiting.append(t.name)
            for ref in ((t.meta,) if t.meta else ()) + t.includes:
                if ref != LF:
                    visit(self.theory(ref))
            visiting.pop()
            done.add(t.name)
            declarations.extend(t.declarations)

        visit(top)
        flat = FlatTheory(top.name, tuple(declarations))
        flat.meta = top.meta
        flat.includes = top.includes
        if registered:
            self._flat[top.name] = flat
        return flat

    # --- view machinery -----------------------------------------------------

    def merged_assignments(self, view: View) -> dict[str, Term]:
        """Assignments keyed by qualified source-constant name, includes first."""
        source = self.flatten(view.source)
        merged: dict[str, Term] = {}

        def absorb(name: str, term: Term, origin: str) -> None:
            d = source.lookup(name)
            if d is None:
                raise UnresolvedReference(
                    f"view {origin} assigns {name}, which is not in {source.name}"
                )
            key = d.qualified
            if key in merged and not alpha_eq(merged[key], term):
                raise DuplicateName(
                    f"view {origin} assigns {name} twice with different terms"
                )
            merged[key] = term

        for included in view.includes:
            for key, term in self.merged_assignments(self.view(included)).items():
                absorb(key, term, view.name)
        for name, term in view.assignments:
            absorb(name, term, view.name)
        return merged


def check_totality(graph: TheoryGraph, view: View) -> tuple[str, ...]:
    """Undefined source constants lacking an assignment; empty means total."""
    source = graph.flatten(view.source)
    assigned = set(graph.merged_assignments(view))
    return tuple(
        d.name for d in source
        if d.definiens is None and d.qualified not in assigned
    )


def apply_view(graph: TheoryGraph, view: View, t: Term) -> Term:
    """Homomorphic translation along the view; the result is NOT normalized.

    Assigned constants are replaced by their assignment; defined constants
    unfold and translate; constants not declared in the source pass through
    unchanged (identity on ambient symbols).
    """
    source = graph.flatten(view.source)
    assignments = graph.merged_assignments(view)

    def go(t: Term) -> Term:
        match t:
            case Const(name):
                d = source.lookup(name)
                if d is None:
                    return t
                if d.qualified in assignments:
                    return assignments[d.qualified]
                if d.definiens is not None:
                    return go(d.definiens)
                raise PartialView(d.name)
            case Var() | Sort():
                return t
            case App(fn, arg):
                return App(go(fn), go(arg))
            case Lam(binder, binder_type, body):
                bt = go(binder_type) if binder_type is not None else None
                return Lam(binder, bt, go(body))
            case Pi(binder, domain, codomain):
                return Pi(binder, go(domain), go(codomain))
        raise TypeError(f"not a term: {t!r}")

    return go(t)


def validate_view(graph: TheoryGraph, view: View) -> None:
    """Check each assignment against the view-translated source type.

    Assignments whose translated type still mentions unassigned constants are
    deferred (a later totality check reports those); assigning to a defined
    constant is always an error.
    """
    source = graph.flatten(view.source)
    target = graph.flatten(view.target)
    for name, term in view.assignments:
        d = source.lookup(name)
        if d is None:
            raise UnresolvedReference(
                f"view {view.name} assigns {name}, which is not in {source.name}"
            )
        if d.definiens is not None:
            raise ModuleError(
                f"view {view.name} assigns the defined constant {name}"
            )
        if d.type_ is None:
            continue
        try:
            expected = apply_view(graph, view, d.type_)
        except PartialView:
            continue
        check_type(target, EMPTY, term, expected)
