"""Admissible grammars: immutable representation, validation and transforms.

A grammar is a list of rules over a single integer symbol space.  Codes
``0 .. sigma-1`` are terminals (indexes into the sorted alphabet) and code
``sigma + j - 1`` refers to rule ``j`` (rule ids are 1-based).  Each rule
body may only reference rules with smaller ids, so the grammar is acyclic
by construction, and the last rule is the start rule whose expansion is
the full text.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

# Expansion lengths are stored as 64-bit unsigned quantities.
MAX_TEXT_LENGTH = 2**64 - 1

# expand() caches the expansion of small rules so repetitive grammars
# decompress at bulk-copy speed; both limits are soft (correctness never
# depends on what got cached).
_CACHE_RULE_LIMIT = 1 << 16
_CACHE_TOTAL_LIMIT = 1 << 26
_FLUSH_CHUNK = 1 << 16


class GrammarError(ValueError):
    """Raised for structurally invalid grammars or overflowing lengths."""


@dataclass(frozen=True)
class Violation:
    kind: str
    rule_id: int

    def __str__(self) -> str:
        return f"{self.kind} at rule {self.rule_id}"


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violations: tuple[Violation, ...]


@dataclass(frozen=True)
class GrammarStats:
    """Start-rule-excluded rule/size counts plus derivation-tree depth.

    ``depth`` is the number of edges on the longest root-to-leaf path of
    the derivation tree, terminal leaves included (a grammar whose start
    rule is all terminals has depth 1).
    """

    rules: int
    depth: int
    start: int
    size: int
    n: int


@dataclass(frozen=True)
class Grammar:
    """An admissible grammar: sorted byte alphabet plus rule bodies.

    Immutable; safe to share between threads after construction.
    """

    alphabet: tuple[int, ...]
    rules: tuple[tuple[int, ...], ...]

    @property
    def sigma(self) -> int:
        return len(self.alphabet)

    @property
    def num_rules(self) -> int:
        return len(self.rules)

    @property
    def start(self) -> int:
        """Rule id of the start rule (always the last rule)."""
        return len(self.rules)

    def body(self, rule_id: int) -> tuple[int, ...]:
        return self.rules[rule_id - 1]

    def is_terminal(self, code: int) -> bool:
        return code < len(self.alphabet)

    def rule_of(self, code: int) -> int:
        """Rule id denoted by a non-terminal symbol code."""
        return code - len(self.alphabet) + 1

    def code_of(self, rule_id: int) -> int:
        """Symbol code that references the given rule."""
        return len(self.alphabet) + rule_id - 1


def validate(g: Grammar) -> ValidationReport:
    """Check every structural invariant; returns a report, never raises."""
    violations: list[Violation] = []
    seen: set[tuple[str, int]] = set()

    def add(kind: str, rule_id: int) -> None:
        if (kind, rule_id) not in seen:
            seen.add((kind, rule_id))
            violations.append(Violation(kind, rule_id))

    sigma = len(g.alphabet)
    if list(g.alphabet) != sorted(set(g.alphabet)) or any(
        not 0 <= b <= 255 for b in g.alphabet
    ):
        add("bad alphabet", 0)
    m = len(g.rules)
    if m == 0:
        add("no rules", 0)
    used = [False] * (m + 1)
    for j, body in enumerate(g.rules, start=1):
        if not body:
            add("empty body", j)
        for c in body:
            if c < 0 or c >= sigma + m:
                add("out-of-range symbol", j)
            elif c >= sigma:
                rid = c - sigma + 1
                if rid >= j:
                    add("forward reference", j)
                else:
                    used[rid] = True
    for j in range(1, m):
        if not used[j]:
            add("unused rule", j)
    return ValidationReport(not violations, tuple(violations))


def require_valid(g: Grammar) -> None:
    report = validate(g)
    if not report.ok:
        raise GrammarError(
            "invalid grammar: " + "; ".join(str(v) for v in report.violations)
        )


def expansion_lengths(g: Grammar) -> tuple[int, ...]:
    """Per-rule expansion lengths in characters, one bottom-up pass."""
    sigma = len(g.alphabet)
    lengths: list[int] = []
    for body in g.rules:
        total = 0
        for c in body:
            total += 1 if c < sigma else lengths[c - sigma]
        if total > MAX_TEXT_LENGTH:
            raise GrammarError("length overflow")
        lengths.append(total)
    return tuple(lengths)


def sort_and_renumber(g: Grammar) -> tuple[Grammar, tuple[int, ...]]:
    """Reorder rules by nondecreasing expansion length, start rule last.

    Ties are broken by the original rule id (stable), which also keeps
    references backward: a rule can only tie with a rule it references
    when its body is that single symbol.  Returns the rewritten grammar
    and the permutation ``perm`` with ``perm[old_id - 1] == new_id``.
    """
    lengths = expansion_lengths(g)
    m = len(g.rules)
    order = sorted(range(1, m), key=lambda j: (lengths[j - 1], j))
    order.append(m)
    new_id = [0] * (m + 1)
    for new, old in enumerate(order, start=1):
        new_id[old] = new
    sigma = len(g.alphabet)
    rules = tuple(
        tuple(c if c < sigma else sigma + new_id[c - sigma + 1] - 1 for c in g.rules[old - 1])
        for old in order
    )
    return Grammar(g.alphabet, rules), tuple(new_id[1:])


def expand_chunks(g: Grammar) -> Iterator[bytes]:
    """Yield the expansion of the start rule as a stream of byte chunks.

    Small rules are pre-expanded into a byte cache (bounded by a total
    budget); everything else is walked with an explicit stack, so no
    derivation tree is materialized and memory stays bounded even for
    texts far larger than the grammar.
    """
    sigma = len(g.alphabet)
    alpha = bytes(g.alphabet)
    lengths = expansion_lengths(g)
    rules = g.rules

    cache: dict[int, bytes] = {}
    budget = _CACHE_TOTAL_LIMIT
    for idx in range(len(rules) - 1):
        n_j = lengths[idx]
        if n_j > _CACHE_RULE_LIMIT or n_j > budget:
            continue
        buf = bytearray()
        complete = True
        for c in rules[idx]:
            if c < sigma:
                buf.append(alpha[c])
            else:
                piece = cache.get(c - sigma)
                if piece is None:
                    complete = False
                    break
                buf += piece
        if complete:
            cache[idx] = bytes(buf)
            budget -= n_j

    out = bytearray()
    stack: list[list] = [[rules[-1], 0]]
    while stack:
        top = stack[-1]
        body, i = top
        if i == len(body):
            stack.pop()
            continue
        top[1] = i + 1
        c = body[i]
        if c < sigma:
            out.append(alpha[c])
        else:
            piece = cache.get(c - sigma)
            if piece is not None:
                out += piece
            else:
                stack.append([rules[c - sigma], 0])
        if len(out) >= _FLUSH_CHUNK:
            yield bytes(out)
            out.clear()
    if out:
        yield bytes(out)


def expand(g: Grammar) -> bytes:
    """The (unique) string the grammar derives."""
    return b"".join(expand_chunks(g))


def is_cnf(g: Grammar) -> bool:
    """True iff every body is a lone terminal or a pair of non-terminals."""
    sigma = len(g.alphabet)
    for body in g.rules:
        if len(body) == 1 and body[0] < sigma:
            continue
        if len(body) == 2 and body[0] >= sigma and body[1] >= sigma:
            continue
        return False
    return True


def binarize_cnf(g: Grammar) -> Grammar:
    """Convert to Chomsky normal form with left-leaning binary chains.

    Terminals get one proxy rule each (created on first use), and a body
    ``a b c d`` becomes the chain ``(((a b) c) d)``.  Unary bodies alias
    the referenced rule; a unary start rule instead copies its target's
    binarized body so the start rule stays last.  Unreferenced leftovers
    are dropped at the end, so the output always validates.
    """
    sigma = len(g.alphabet)
    out: list[tuple[int, ...]] = []
    proxy: dict[int, int] = {}
    bmap = [0] * (len(g.rules) + 1)

    def add_rule(body: tuple[int, ...]) -> int:
        out.append(body)
        return len(out)

    def proxy_id(t: int) -> int:
        rid = proxy.get(t)
        if rid is None:
            rid = add_rule((t,))
            proxy[t] = rid
        return rid

    m = len(g.rules)
    for j in range(1, m + 1):
        mapped = [
            proxy_id(c) if c < sigma else bmap[c - sigma + 1] for c in g.rules[j - 1]
        ]
        if len(mapped) == 1:
            if j < m:
                bmap[j] = mapped[0]
            else:
                # Start must remain the last rule; clone the target body.
                add_rule(out[mapped[0] - 1])
            continue
        cur = mapped[0]
        for s in mapped[1:]:
            cur = add_rule((sigma + cur - 1, sigma + s - 1))
        bmap[j] = cur
    return _drop_unreachable(Grammar(g.alphabet, tuple(out)))


def _drop_unreachable(g: Grammar) -> Grammar:
    sigma = len(g.alphabet)
    m = len(g.rules)
    reachable = [False] * (m + 1)
    reachable[m] = True
    todo = [m]
    while todo:
        for c in g.rules[todo.pop() - 1]:
            if c >= sigma and not reachable[c - sigma + 1]:
                reachable[c - sigma + 1] = True
                todo.append(c - sigma + 1)
    if all(reachable[1:]):
        return g
    keep = [j for j in range(1, m + 1) if reachable[j]]
    new_id = {old: i for i, old in enumerate(keep, start=1)}
    rules = tuple(
        tuple(c if c < sigma else sigma + new_id[c - sigma + 1] - 1 for c in g.rules[old - 1])
        for old in keep
    )
    return Grammar(g.alphabet, rules)


def inline_single_use(g: Grammar) -> Grammar:
    """Substitute away every rule referenced exactly once (start excluded).

    Useful for turning binary-rule compressor output into general grammars
    with long bodies.  Runs to a fixpoint; expansion is preserved.
    """
    sigma = len(g.alphabet)
    while True:
        m = len(g.rules)
        refs = [0] * (m + 1)
        for body in g.rules:
            for c in body:
                if c >= sigma:
                    refs[c - sigma + 1] += 1
        single = {j for j in range(1, m) if refs[j] == 1}
        if not single:
            return g
        flattened: list[list[int]] = [[]]
        for j in range(1, m + 1):
            flat: list[int] = []
            for c in g.rules[j - 1]:
                rid = c - sigma + 1 if c >= sigma else 0
                if rid in single:
                    flat.extend(flattened[rid])
                else:
                    flat.append(c)
            flattened.append(flat)
        keep = [j for j in range(1, m + 1) if j not in single]
        new_id = {old: i for i, old in enumerate(keep, start=1)}
        rules = tuple(
            tuple(c if c < sigma else sigma + new_id[c - sigma + 1] - 1 for c in flattened[old])
            for old in keep
        )
        g = Grammar(g.alphabet, rules)


def stats(g: Grammar) -> GrammarStats:
    """Rule/size counts (start rule excluded) and derivation-tree depth."""
    sigma = len(g.alphabet)
    heights: list[int] = []
    for body in g.rules:
        h = 0
        for c in body:
            ch = 1 if c < sigma else heights[c - sigma] + 1
            if ch > h:
                h = ch
        heights.append(h)
    lengths = expansion_lengths(g)
    return GrammarStats(
        rules=len(g.rules) - 1,
        depth=heights[-1],
        start=len(g.rules[-1]),
        size=sum(len(b) for b in g.rules[:-1]),
        n=lengths[-1],
    )
