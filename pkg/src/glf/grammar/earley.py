"""Chart parsing over compiled grammars.

An Earley recognizer (with the usual eager advance over nullable
nonterminals, so empty linearizations work) followed by a chart-guided
extraction pass that rebuilds every abstract syntax tree for the input.
Extraction order is deterministic: productions in declaration order,
split points left to right.

The first input token is matched case-insensitively so sentence-initial
capitalization does not require lexicon duplicates.
"""

from __future__ import annotations

from glf.grammar.cfg import CFG, NT, Production
from glf.kernel import App, Const, Term


def tokenize(text: str) -> list[str]:
    return text.split()


def _match(terminal: str, word: str, pos: int) -> bool:
    return terminal == word or (pos == 0 and terminal.lower() == word.lower())


def _nullable(cfg: CFG) -> frozenset[NT]:
    nullable: set[NT] = set()
    changed = True
    while changed:
        changed = False
        for p in cfg.productions:
            if p.lhs in nullable:
                continue
            if all(not isinstance(it, str) and it[0] in nullable for it in p.rhs):
                nullable.add(p.lhs)
                changed = True
    return frozenset(nullable)


def _run(cfg: CFG, tokens: list[str]) -> dict[tuple[NT, int], list[int]]:
    """Return completed spans: (nonterminal, start) -> sorted end positions."""
    n = len(tokens)
    nullable = _nullable(cfg)
    prods = cfg.productions
    by_lhs: dict[NT, list[int]] = {}
    for idx, p in enumerate(prods):
        by_lhs.setdefault(p.lhs, []).append(idx)

    charts: list[dict[tuple[int, int, int], None]] = [{} for _ in range(n + 1)]
    completed: dict[tuple[NT, int], list[int]] = {}

    def add(pos: int, item: tuple[int, int, int]) -> bool:
        if item in charts[pos]:
            return False
        charts[pos][item] = None
        return True

    for s in cfg.start_symbols:
        for idx in by_lhs.get(s, []):
            add(0, (idx, 0, 0))

    for pos in range(n + 1):
        work = list(charts[pos])
        k = 0
        while k < len(work):
            idx, dot, origin = work[k]
            k += 1
            p = prods[idx]
            if dot < len(p.rhs):
                it = p.rhs[dot]
                if isinstance(it, str):
                    if pos < n and _match(it, tokens[pos], pos):
                        add(pos + 1, (idx, dot + 1, origin))
                    continue
                child = it[0]
                for cidx in by_lhs.get(child, []):
                    if add(pos, (cidx, 0, pos)):
                        work.append((cidx, 0, pos))
                if child in nullable and add(pos, (idx, dot + 1, origin)):
                    work.append((idx, dot + 1, origin))
            else:
                ends = completed.setdefault((p.lhs, origin), [])
                if pos not in ends:
                    ends.append(pos)
                # origin < pos leaves charts[origin] frozen; origin == pos is
                # covered by the nullable pre-advance above.
                for i2, d2, o2 in list(charts[origin]):
                    p2 = prods[i2]
                    if d2 < len(p2.rhs):
                        it2 = p2.rhs[d2]
                        if not isinstance(it2, str) and it2[0] == p.lhs:
                            if add(pos, (i2, d2 + 1, o2)):
                                work.append((i2, d2 + 1, o2))

    for ends in completed.values():
        ends.sort()
    return completed


def recognize(cfg: CFG, tokens: list[str]) -> bool:
    completed = _run(cfg, tokens)
    n = len(tokens)
    return any(n in completed.get((s, 0), ()) for s in cfg.start_symbols)


def parse_tokens(cfg: CFG, tokens: list[str]) -> list[Term]:
    """All abstract syntax trees deriving `tokens`, deduplicated, in grammar order."""
    completed = _run(cfg, tokens)
    n = len(tokens)
    memo: dict[tuple[NT, int, int], list[Term] | None] = {}

    def parses(nt: NT, i: int, j: int) -> list[Term]:
        key = (nt, i, j)
        if key in memo:
            cached = memo[key]
            return [] if cached is None else cached  # None marks a cycle
        memo[key] = None
        found: list[Term] = []
        for p in cfg.expansions(nt):
            for bound in splits(p, 0, i, j):
                args: list[Term | None] = [None] * p.arity
                for argi, sub in bound:
                    args[argi] = sub
                t: Term = Const(p.fun)
                for a in args:
                    t = App(t, a)
                found.append(t)
        result = list(dict.fromkeys(found))
        memo[key] = result
        return result

    def splits(p: Production, m: int, x: int, j: int):
        """Bind p.rhs[m:] to tokens[x:j]; yield ((arg index, tree), ...)."""
        if m == len(p.rhs):
            if x == j:
                yield ()
            return
        it = p.rhs[m]
        if isinstance(it, str):
            if x < j and _match(it, tokens[x], x):
                yield from splits(p, m + 1, x + 1, j)
            return
        child, argi = it
        for y in completed.get((child, x), ()):
            if y > j:
                break
            subs = parses(child, x, y)
            if not subs:
                continue
            tails = list(splits(p, m + 1, y, j))
            for sub in subs:
                for tail in tails:
                    yield ((argi, sub),) + tail

    results: list[Term] = []
    for s in cfg.start_symbols:
        if n in completed.get((s, 0), ()):
            results.extend(parses(s, 0, n))
    return list(dict.fromkeys(results))
