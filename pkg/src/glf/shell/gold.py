"""Gold-standard regression testing for fragments.

A gold file holds one case per line, tab-separated:

    language <TAB> category <TAB> sentence <TAB> reading { ; reading }

Blank lines and `#` comments are skipped. A case passes when the set of
constructed readings equals the set of expected readings up to
α-equivalence -- order never matters, multiplicity never matters.
"""

from __future__ import annotations

from dataclasses import dataclass

from glf.bridge import Fragment, construct_semantics
from glf.errors import GlfError, GoldFormatError
from glf.kernel import alpha_normal
from glf.modsys import parse_term, print_term


@dataclass(frozen=True)
class GoldCase:
    language: str
    category: str
    sentence: str
    expected: tuple[str, ...]
    line: int


@dataclass(frozen=True)
class CaseResult:
    case: GoldCase
    ok: bool
    actual: tuple[str, ...]
    expected: tuple[str, ...]
    error: str | None = None


@dataclass(frozen=True)
class GoldReport:
    fragment: str
    results: tuple[CaseResult, ...]

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    @property
    def passed(self) -> int:
        return sum(1 for r in self.results if r.ok)

    def render(self) -> str:
        lines = [f"{self.fragment}: {self.passed}/{len(self.results)} passed"]
        for r in self.results:
            mark = "PASS" if r.ok else "FAIL"
            c = r.case
            lines.append(f"  {mark}  [{c.language}] {c.sentence}")
            if not r.ok:
                if r.error is not None:
                    lines.append(f"        error: {r.error}")
                lines.append("        expected: " + (" ; ".join(r.expected) or "<nothing>"))
                lines.append("        actual:   " + (" ; ".join(r.actual) or "<nothing>"))
        return "\n".join(lines)


def parse_gold_file(text: str) -> tuple[GoldCase, ...]:
    cases: list[GoldCase] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        if not raw.strip() or raw.lstrip().startswith("#"):
            continue
        fields = raw.split("\t")
        if len(fields) != 4:
            raise GoldFormatError(
                f"expected 4 tab-separated fields, found {len(fields)}", lineno
            )
        language, category, sentence, expected_raw = (f.strip() for f in fields)
        if not (language and category and sentence):
            raise GoldFormatError("empty field", lineno)
        expected = tuple(part.strip() for part in expected_raw.split(";"))
        if not all(expected):
            raise GoldFormatError("empty expected reading", lineno)
        cases.append(GoldCase(language, category, sentence, expected, lineno))
    return tuple(cases)


def _canonical(flat, term) -> str:
    return print_term(flat, alpha_normal(term))


def run_gold(fragment: Fragment, cases: tuple[GoldCase, ...]) -> GoldReport:
    """Construct semantics for every case and compare reading sets."""
    flat = fragment.target_flat
    results: list[CaseResult] = []
    for case in cases:
        try:
            expected = tuple(sorted({
                _canonical(flat, parse_term(flat, e)) for e in case.expected
            }))
            if case.category != fragment.start_category:
                raise GlfError(
                    f"category {case.category} is not the start category "
                    f"{fragment.start_category}"
                )
            readings = construct_semantics(
                fragment, case.sentence, language=case.language
            )
            actual = tuple(sorted({_canonical(flat, r.term) for r in readings}))
            results.append(CaseResult(case, actual == expected, actual, expected))
        except GlfError as err:
            results.append(
                CaseResult(case, False, (), case.expected, error=str(err))
            )
    return GoldReport(fragment.name, tuple(results))
