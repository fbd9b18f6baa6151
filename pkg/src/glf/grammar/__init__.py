"""Grammars: abstract syntax, concrete linearization, and chart parsing."""

from glf.grammar.abstract import AbstractGrammar, FunDecl, ast_category, ast_depth
from glf.grammar.concrete import (
    ArgField,
    Concat,
    ConcreteGrammar,
    Ctor,
    LinRule,
    LinType,
    Literal,
    ParamType,
    Record,
    Select,
    Table,
)
from glf.grammar.cfg import CFG, NT, Production, compile_cfg
from glf.grammar.earley import parse_tokens, recognize, tokenize
from glf.grammar.files import GrammarRegistry, parse_grammar_file
from glf.grammar.linearize import linearize

__all__ = [
    "AbstractGrammar", "FunDecl", "ast_category", "ast_depth",
    "ArgField", "Concat", "ConcreteGrammar", "Ctor", "LinRule", "LinType",
    "Literal", "ParamType", "Record", "Select", "Table",
    "CFG", "NT", "Production", "compile_cfg",
    "parse_tokens", "recognize", "tokenize",
    "GrammarRegistry", "parse_grammar_file",
    "linearize",
]
