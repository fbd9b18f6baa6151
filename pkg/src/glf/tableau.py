"""A propositional tableau machine for semantic analysis.

A belief state tracks everything asserted so far as a set of tableau
branches; each open branch is one way the discourse could be true. Feeding
the state a new (possibly ambiguous) sentence copies every open branch for
every reading, then saturates: conjunctive formulas extend a branch,
disjunctive ones split it, and a branch closes as soon as it contains an
atom together with its negation. What survives are the Herbrand-style
models of the discourse, read off with :func:`extract_models`.

The machine is parameterized over the logic: a flat signature plus a map
saying which constants play the roles of the connectives. Quantifiers are
eliminated up front by grounding over the (finite) set of individual
constants, so everything after :func:`ground_quantifiers` is propositional.
Formulas whose head is none of the connectives -- for example a modal
operator -- are treated as atoms.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterable, Iterator, Mapping

from glf.errors import EmptyReadings, IllTypedAxiom, NoDomainType, TableauError, TypeError_
from glf.kernel import App, Const, Term, alpha_eq, alpha_normal, normalize, spine
from glf.kernel.typecheck import EMPTY, check_type
from glf.modsys import print_term
from glf.modsys.theory import FlatTheory

CONNECTIVE_ROLES = ("and", "or", "neg", "impl", "forall", "exists")

#: Designated atoms produced when a quantifier is grounded over an empty
#: domain: a vacuous ∀ is true, a vacuous ∃ is false. The names are not
#: legal identifiers, so they can never collide with a declared constant.
TOP = Const("⊤")
BOTTOM = Const("⊥")


@dataclass(frozen=True)
class LogicSignature:
    """A flat theory together with the connective vocabulary of its logic.

    ``connectives`` maps role names (from :data:`CONNECTIVE_ROLES`) to
    constant names; roles the logic lacks are simply absent. Whatever the
    map does not cover is atomic as far as the tableau is concerned.
    """

    flat: FlatTheory
    connectives: Mapping[str, str] = field(
        default_factory=lambda: {r: r for r in CONNECTIVE_ROLES}
    )
    proposition_type: str = "prop"
    individual_type: str | None = None

    def role_of(self, name: str) -> str | None:
        for role, const in self.connectives.items():
            if const == name:
                return role
        return None

    def constant(self, role: str) -> Const:
        try:
            return Const(self.connectives[role])
        except KeyError:
            raise TableauError(
                f"the logic has no constant in the {role!r} role"
            ) from None


@dataclass(frozen=True)
class Literal:
    positive: bool
    atom: Term

    def render(self, flat: FlatTheory) -> str:
        text = print_term(flat, self.atom)
        return text if self.positive else f"¬ {text}"


@dataclass(frozen=True)
class Branch:
    literals: tuple[Literal, ...] = ()
    pending: tuple[Term, ...] = ()
    closed: bool = False


@dataclass(frozen=True)
class BeliefState:
    signature: LogicSignature
    world_knowledge: tuple[Term, ...]
    branches: tuple[Branch, ...]
    history: tuple[str, ...]
    step_budget: int = 10_000
    exhausted: bool = False

    @property
    def open_branches(self) -> tuple[Branch, ...]:
        return tuple(b for b in self.branches if not b.closed)


def _individual_domain(signature: LogicSignature) -> list[Const]:
    if signature.individual_type is None:
        raise NoDomainType(
            "cannot ground quantifiers: the logic has no individual type"
        )
    ind = signature.individual_type
    return [
        Const(d.name)
        for d in signature.flat
        if d.definiens is None
        and d.type_ is not None
        and isinstance(d.type_, Const)
        and d.type_.name == ind
    ]


def _fold(connective: Const, parts: list[Term]) -> Term:
    result = parts[-1]
    for part in reversed(parts[:-1]):
        result = App(App(connective, part), result)
    return result


def ground_quantifiers(signature: LogicSignature, t: Term) -> Term:
    """Replace quantifiers by finite conjunctions/disjunctions, outside in.

    A universal becomes the conjunction of its instances over every
    individual constant in the signature, an existential the disjunction;
    over an empty domain they become the designated true/false atoms.
    Quantifiers buried inside atoms (e.g. under a modal operator) are left
    alone -- such subterms are opaque to a propositional tableau anyway.
    """
    flat = signature.flat

    def go(t: Term) -> Term:
        head, args = spine(t)
        if not isinstance(head, Const):
            return t
        role = signature.role_of(head.name)
        if role in ("forall", "exists") and len(args) == 1:
            domain = _individual_domain(signature)
            if not domain:
                return TOP if role == "forall" else BOTTOM
            parts = [
                go(normalize(flat, App(args[0], c))) for c in domain
            ]
            joiner = signature.constant("and" if role == "forall" else "or")
            return _fold(joiner, parts)
        if role in ("and", "or", "impl") and len(args) == 2:
            return App(App(head, go(args[0])), go(args[1]))
        if role == "neg" and len(args) == 1:
            return App(head, go(args[0]))
        return t

    return go(t)


def _negate(signature: LogicSignature, t: Term) -> Term:
    return App(signature.constant("neg"), t)


def _classify(
    signature: LogicSignature, t: Term
) -> tuple[str, tuple[Term, ...]] | tuple[str, Literal]:
    """Sort a formula into an α-expansion, a β-split, or a literal."""

    def connective(t: Term) -> tuple[str | None, list[Term]]:
        head, args = spine(t)
        if isinstance(head, Const):
            role = signature.role_of(head.name)
            if role in ("and", "or", "impl") and len(args) == 2:
                return role, args
            if role == "neg" and len(args) == 1:
                return role, args
        return None, []

    role, args = connective(t)
    if role == "and":
        return "alpha", (args[0], args[1])
    if role == "or":
        return "beta", (args[0], args[1])
    if role == "impl":
        return "beta", (_negate(signature, args[0]), args[1])
    if role == "neg":
        inner_role, inner = connective(args[0])
        if inner_role == "and":
            return "beta", tuple(_negate(signature, a) for a in inner)
        if inner_role == "or":
            return "alpha", tuple(_negate(signature, a) for a in inner)
        if inner_role == "impl":
            return "alpha", (inner[0], _negate(signature, inner[1]))
        if inner_role == "neg":
            return "alpha", (inner[0],)
        return "literal", Literal(False, args[0])
    return "literal", Literal(True, t)


def _with_literal(branch: Branch, lit: Literal, rest: tuple[Term, ...]) -> Branch:
    # The designated atoms carry their truth value with them.
    if alpha_eq(lit.atom, TOP):
        if lit.positive:
            return replace(branch, pending=rest)
        return replace(branch, pending=rest, closed=True)
    if alpha_eq(lit.atom, BOTTOM):
        if lit.positive:
            return replace(branch, pending=rest, closed=True)
        return replace(branch, pending=rest)
    for known in branch.literals:
        if alpha_eq(known.atom, lit.atom):
            if known.positive == lit.positive:
                return replace(branch, pending=rest)
            return replace(branch, pending=rest, closed=True)
    return replace(branch, literals=branch.literals + (lit,), pending=rest)


def expand_step(state: BeliefState) -> BeliefState:
    """Process one pending formula on the first branch that has any.

    α-formulas extend the branch, β-formulas split it in two (left
    component first), literals are recorded and checked for closure.
    A state with nothing pending is returned unchanged.
    """
    for i, branch in enumerate(state.branches):
        if not branch.closed and branch.pending:
            break
    else:
        return state

    t, rest = branch.pending[0], branch.pending[1:]
    kind, parts = _classify(state.signature, t)
    if kind == "alpha":
        new = (replace(branch, pending=tuple(parts) + rest),)
        note = f"α-expand on branch {i} ({len(parts)} part(s))"
    elif kind == "beta":
        new = tuple(replace(branch, pending=(p,) + rest) for p in parts)
        note = f"β-split on branch {i}"
    else:
        new = (_with_literal(branch, parts, rest),)
        note = f"literal on branch {i}" + (" -- closed" if new[0].closed else "")

    return replace(
        state,
        branches=state.branches[:i] + new + state.branches[i + 1:],
        history=state.history + (note,),
    )


def _needs_work(state: BeliefState) -> bool:
    return any(not b.closed and b.pending for b in state.branches)


def saturate(state: BeliefState) -> BeliefState:
    """Run expansion steps until quiescence or until the budget runs out.

    Exhausting the budget is not an error: the state is returned with
    ``exhausted`` set, and everything derived so far remains usable.
    """
    steps = 0
    while steps < state.step_budget and _needs_work(state):
        state = expand_step(state)
        steps += 1
    return replace(state, exhausted=_needs_work(state))


def _check_proposition(signature: LogicSignature, t: Term, what: str) -> None:
    try:
        check_type(signature.flat, EMPTY, t, Const(signature.proposition_type))
    except TypeError_ as err:
        raise IllTypedAxiom(f"{what} is not a proposition: {err}") from err


def init_belief_state(
    signature: LogicSignature,
    axioms: Iterable[Term] = (),
    *,
    step_budget: int = 10_000,
) -> BeliefState:
    """Start a belief state from world knowledge and saturate it once.

    Every axiom must be a proposition; quantified axioms are grounded.
    Contradictory axioms are legal and simply leave no open branch.
    """
    axioms = tuple(axioms)
    for ax in axioms:
        _check_proposition(signature, ax, "axiom")
    grounded = tuple(
        ground_quantifiers(signature, normalize(signature.flat, ax))
        for ax in axioms
    )
    state = BeliefState(
        signature=signature,
        world_knowledge=axioms,
        branches=(Branch(pending=grounded),),
        history=(f"init with {len(axioms)} axiom(s)",),
        step_budget=step_budget,
    )
    state = saturate(state)
    return replace(state, branches=state.open_branches)


def update_belief_state(state: BeliefState, readings: Iterable[Term]) -> BeliefState:
    """Assert a sentence: one reading per branch copy, then saturate.

    Readings are normalized and de-duplicated up to α-equivalence first,
    so syntactic ambiguity that melts away semantically costs nothing.
    Closed branches are dropped from the result.
    """
    readings = tuple(readings)
    if not readings:
        raise EmptyReadings("a sentence must have at least one reading")
    flat = state.signature.flat

    distinct: list[Term] = []
    for r in readings:
        _check_proposition(state.signature, r, "reading")
        n = alpha_normal(normalize(flat, r))
        if not any(alpha_eq(n, seen) for seen in distinct):
            distinct.append(n)
    grounded = [ground_quantifiers(state.signature, n) for n in distinct]

    branches = tuple(
        replace(b, pending=b.pending + (g,))
        for g in grounded
        for b in state.open_branches
    )
    state = replace(
        state,
        branches=branches,
        history=state.history
        + (f"update with {len(distinct)} reading(s) over {len(state.open_branches)} branch(es)",),
    )
    state = saturate(state)
    return replace(state, branches=state.open_branches)


def extract_models(state: BeliefState) -> tuple[tuple[Literal, ...], ...]:
    """One literal set per open branch, de-duplicated.

    Within a model, positive literals come first, each group ordered by
    the printed form of its atom, so output is stable across runs.
    """
    flat = state.signature.flat

    def key(lit: Literal) -> tuple[int, str]:
        return (0 if lit.positive else 1, print_term(flat, lit.atom))

    models: list[tuple[Literal, ...]] = []
    seen: set[tuple[tuple[bool, str], ...]] = set()
    for branch in state.branches:
        if branch.closed:
            continue
        lits = tuple(sorted(branch.literals, key=key))
        fingerprint = tuple((l.positive, print_term(flat, l.atom)) for l in lits)
        if fingerprint not in seen:
            seen.add(fingerprint)
            models.append(lits)
    return tuple(models)
