"""From grammar to logic: language theories and semantics construction.

An abstract grammar determines a *language theory*: one type constant per
category, one function constant per syntax function, grammar extension
mirrored as a theory include. Abstract syntax trees are then literally terms
over that theory, a semantics view maps them into the target logic, and
normalization evaluates the result. `check_in_target_logic` verifies that
what comes out really lives in the target logic: no foreign constants and
no lambda residues outside higher-order argument positions.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from glf.errors import BridgeError, GlfError, NameClash
from glf.grammar import (
    CFG,
    AbstractGrammar,
    ConcreteGrammar,
    ast_category,
    linearize,
    parse_tokens,
    tokenize,
)
from glf.kernel import (
    TYPE,
    Const,
    Lam,
    Pi,
    Sort,
    Term,
    Var,
    alpha_normal,
    arrow,
    constants,
    normalize,
    spine,
)
from glf.kernel.declarations import Declaration
from glf.modsys import Theory, TheoryGraph, View, apply_view, print_term

# Names the theory-file syntax reserves; a grammar using one of these could
# not round-trip through the generated language theory.
RESERVED_NAMES = frozenset({"theory", "view", "include", "end", "prec", "type", "LF"})

DEFAULT_CONNECTIVES = ("and", "or", "neg", "impl", "forall", "exists")


def generate_language_theory(abstract: AbstractGrammar) -> Theory:
    """The theory an abstract grammar induces: cats as types, funs as constants.

    Only the grammar's own declarations appear; a base grammar becomes an
    include, so the theory graph mirrors the grammar extension graph.
    """
    decls: list[Declaration] = []
    for c in abstract.own_cats:
        if c in RESERVED_NAMES:
            raise NameClash(f"category name {c} is reserved")
        decls.append(Declaration(c, TYPE))
    for f in abstract.own_funs:
        if f.name in RESERVED_NAMES:
            raise NameClash(f"function name {f.name} is reserved")
        decls.append(
            Declaration(f.name, arrow(*(Const(a) for a in f.args), Const(f.result)))
        )
    includes = (abstract.extends,) if abstract.extends else ()
    return Theory(abstract.name, meta="LF", includes=includes, declarations=tuple(decls))


def generate_view_stub(language_theory: Theory, graph: TheoryGraph, target: str) -> str:
    """A semantics-view skeleton: every pending assignment as a comment line.

    The result is a loadable view file; filling in the commented lines one
    by one keeps it loadable until `check_totality` finally comes back empty.
    """
    flat = graph.flatten(language_theory.name)
    lines = [f"view {language_theory.name}Semantics : {language_theory.name} -> {target} ="]
    for d in flat.declarations:
        if d.definiens is None:
            lines.append(f"  // {d.name} = <fill in a {target} term> ;")
    lines.append("end")
    return "\n".join(lines) + "\n"


def ast_to_term(abstract: AbstractGrammar, ast: Term) -> Term:
    """Trees already are terms over the language theory; this just checks."""
    ast_category(abstract, ast)
    return ast


def term_to_ast(abstract: AbstractGrammar, t: Term) -> Term:
    """Inverse of ast_to_term on its image (Const/App terms of a category)."""
    ast_category(abstract, t)
    return t


@dataclass(frozen=True)
class Reading:
    """One meaning of one parse: the tree, its raw and normalized images."""

    ast: Term
    raw: Term
    term: Term
    in_target_logic: bool
    diagnostics: tuple[str, ...] = ()


@dataclass(frozen=True)
class Fragment:
    """A deployable unit: grammars + logic + domain theory + semantics view."""

    name: str
    abstract: AbstractGrammar
    concretes: dict[str, ConcreteGrammar]
    cfgs: dict[str, CFG]
    graph: TheoryGraph
    language_theory: Theory
    target_logic: Theory
    domain_theory: Theory
    semantics_view: View
    start_category: str
    proposition_type: str
    individual_type: str | None = None
    connectives: dict[str, str] = field(default_factory=dict)
    step_budget: int = 10_000
    knowledge: tuple[Term, ...] = ()

    @property
    def target_flat(self):
        return self.graph.flatten(self.semantics_view.target)

    @property
    def language_flat(self):
        return self.graph.flatten(self.language_theory)

    def languages(self) -> list[str]:
        return list(self.concretes)

    def cfg(self, language: str) -> CFG:
        if language not in self.cfgs:
            raise BridgeError(
                f"fragment {self.name} has no language {language!r}; "
                f"available: {', '.join(self.cfgs)}"
            )
        return self.cfgs[language]

    def default_language(self) -> str:
        if not self.concretes:
            raise BridgeError(f"fragment {self.name} has no concrete syntax")
        return next(iter(self.concretes))


def parse_sentence(fragment: Fragment, sentence: str, language: str | None = None,
                   category: str | None = None) -> list[Term]:
    language = language or fragment.default_language()
    cfg = fragment.cfg(language)
    if category is not None and category != fragment.start_category:
        raise BridgeError(
            f"parsing at category {category} is not supported; "
            f"the start category is {fragment.start_category}"
        )
    return parse_tokens(cfg, tokenize(sentence))


def construct_semantics(fragment: Fragment, sentence_or_ast: str | Term,
                        language: str | None = None) -> list[Reading]:
    """Parse (if needed), apply the semantics view, normalize, and gate-check.

    One Reading per parse in parse order; readings whose normal forms are
    α-equal are collapsed into the first.
    """
    if isinstance(sentence_or_ast, Term):
        asts = [term_to_ast(fragment.abstract, sentence_or_ast)]
    else:
        asts = parse_sentence(fragment, sentence_or_ast, language)
    flat = fragment.target_flat
    readings: list[Reading] = []
    seen: set[Term] = set()
    for ast in asts:
        try:
            raw = apply_view(fragment.graph, fragment.semantics_view, ast)
            term = normalize(flat, raw)
        except GlfError as err:
            failure = BridgeError(
                f"semantics construction failed on {print_term(fragment.language_flat, ast)}: {err}"
            )
            failure.ast = ast
            raise failure from err
        key = alpha_normal(term)
        if key in seen:
            continue
        seen.add(key)
        ok, diagnostics = check_in_target_logic(fragment, term)
        readings.append(Reading(ast, raw, term, ok, diagnostics))
    return readings


def translate(fragment: Fragment, sentence: str, source: str, target: str) -> list[str]:
    """Parse in one language, linearize every tree in another."""
    asts = parse_sentence(fragment, sentence, source)
    abstract = fragment.abstract
    concrete = fragment.concretes.get(target)
    if concrete is None:
        raise BridgeError(f"fragment {fragment.name} has no language {target!r}")
    return list(dict.fromkeys(linearize(abstract, concrete, t) for t in asts))


def check_in_target_logic(fragment: Fragment, t: Term) -> tuple[bool, tuple[str, ...]]:
    """Is `t` honestly a target-logic term?

    (a) every constant must be declared in the semantics target (which
    includes the domain theory), and (b) a lambda may appear only as a
    higher-order argument: a direct argument of a constant whose declared
    type expects a function there. Binder chains under one such position
    count as that one argument.
    """
    flat = fragment.target_flat
    diagnostics: list[str] = []

    def pretty(sub: Term) -> str:
        return print_term(flat, sub)

    def check_names(sub: Term) -> None:
        for name in sorted(constants(sub)):
            if name not in flat:
                diagnostics.append(f"constant {name} is not in the target logic")

    def domains_of(name: str) -> list[Term]:
        d = flat.lookup(name)
        ty = d.type_ if d else None
        out = []
        while isinstance(ty, Pi):
            out.append(ty.domain)
            ty = ty.codomain
        return out

    def is_function_type(ty: Term) -> bool:
        return isinstance(normalize(flat, ty, delta="full"), Pi)

    def visit(sub: Term, sanctioned: bool) -> None:
        if isinstance(sub, Lam):
            if not sanctioned:
                diagnostics.append(f"binder outside higher-order position: {pretty(sub)}")
            if sub.binder_type is not None:
                check_names(sub.binder_type)
            visit(sub.body, isinstance(sub.body, Lam) and sanctioned)
            return
        if isinstance(sub, Pi):
            check_names(sub)
            return
        if isinstance(sub, (Var, Sort)):
            return
        head, args = spine(sub)
        if isinstance(head, Const):
            if head.name not in flat:
                diagnostics.append(f"constant {head.name} is not in the target logic")
                domains = []
            else:
                domains = domains_of(head.name)
            for i, arg in enumerate(args):
                ok_here = (
                    isinstance(arg, Lam)
                    and i < len(domains)
                    and is_function_type(domains[i])
                )
                visit(arg, ok_here)
        else:
            visit(head, False)
            for arg in args:
                visit(arg, False)

    visit(t, False)
    return (not diagnostics, tuple(diagnostics))
