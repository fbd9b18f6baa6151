"""Grammar-logic fragments: parse sentences, construct logical forms, analyze.

The pipeline runs grammar → AST → language-theory term → (view application +
normalization) → target-logic term → tableau analysis. See the README for the
fragment package format and the `glf` command line.
"""

__version__ = "0.1.0"
