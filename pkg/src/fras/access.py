"""Random access indexes over grammar-compressed strings.

``FolkloreIndex`` answers queries on CNF grammars by walking the binary
derivation tree with a per-rule left-child length array.  ``FrasIndex``
works on any grammar: rules are kept sorted by expansion length so a
per-rule length lookup collapses into rank over a one-bit-per-rule vector
plus a small array of distinct lengths, and the start-rule symbol covering
a position is found with one rank/select pair over a text-length vector.

Both indexes are immutable after construction; any number of threads may
query them concurrently.
"""

from __future__ import annotations

from .grammar import (
    Grammar,
    expansion_lengths,
    is_cnf,
    require_valid,
    sort_and_renumber,
)
from .succinct import Bitvector, build_bitvector


class AccessError(Exception):
    """Query or construction failure; ``kind`` is machine-readable."""

    def __init__(self, kind: str, detail: str):
        super().__init__(f"{kind}: {detail}")
        self.kind = kind
        self.detail = detail


def _out_of_range(p: int, n: int) -> AccessError:
    return AccessError("position-out-of-range", f"p={p}, n={n}")


def _byte_table(g: Grammar) -> bytes:
    return bytes(g.alphabet[i] if i < len(g.alphabet) else 0 for i in range(256))


def _walk_leaves(rules, sigma: int, stack: list, out: bytearray, need: int) -> None:
    """Continue an in-order derivation-tree walk, appending terminal codes."""
    while need and stack:
        top = stack[-1]
        body, i = top
        if i == len(body):
            stack.pop()
            continue
        top[1] = i + 1
        s = body[i]
        while s >= sigma:
            b2 = rules[s - sigma]
            stack.append([b2, 1])
            s = b2[0]
        out.append(s)
        need -= 1


class FolkloreIndex:
    """CNF grammar plus the expansion length of every rule's left child."""

    kind = "folklore"

    def __init__(self, grammar: Grammar, left_lengths: tuple[int, ...], n: int):
        self.grammar = grammar
        self.left_lengths = left_lengths
        self.n = n
        self._table = _byte_table(grammar)

    def access(self, p: int) -> int:
        """Byte value at 1-based position p."""
        if p < 1 or p > self.n:
            raise _out_of_range(p, self.n)
        rules = self.grammar.rules
        sigma = len(self.grammar.alphabet)
        lefts = self.left_lengths
        j = len(rules)
        body = rules[j - 1]
        while len(body) == 2:
            left_len = lefts[j - 1]
            if p <= left_len:
                j = body[0] - sigma + 1
            else:
                p -= left_len
                j = body[1] - sigma + 1
            body = rules[j - 1]
        return self.grammar.alphabet[body[0]]

    def access_trace(self, p: int) -> tuple[int, list[int]]:
        """Like access, also returning the visited rule-id sequence."""
        if p < 1 or p > self.n:
            raise _out_of_range(p, self.n)
        rules = self.grammar.rules
        sigma = len(self.grammar.alphabet)
        j = len(rules)
        trace = [j]
        body = rules[j - 1]
        while len(body) == 2:
            left_len = self.left_lengths[j - 1]
            if p <= left_len:
                j = body[0] - sigma + 1
            else:
                p -= left_len
                j = body[1] - sigma + 1
            trace.append(j)
            body = rules[j - 1]
        return self.grammar.alphabet[body[0]], trace

    def extract(self, p: int, count: int) -> bytes:
        """Substring of ``count`` bytes starting at 1-based position p."""
        if count < 1 or p < 1 or p + count - 1 > self.n:
            raise _out_of_range(p, self.n)
        rules = self.grammar.rules
        sigma = len(self.grammar.alphabet)
        stack: list[list] = []
        j = len(rules)
        body = rules[j - 1]
        while len(body) == 2:
            left_len = self.left_lengths[j - 1]
            if p <= left_len:
                stack.append([body, 1])
                j = body[0] - sigma + 1
            else:
                p -= left_len
                stack.append([body, 2])
                j = body[1] - sigma + 1
            body = rules[j - 1]
        out = bytearray((body[0],))
        _walk_leaves(rules, sigma, stack, out, count - 1)
        return bytes(out.translate(self._table))


class FrasIndex:
    """Sorted grammar, distinct-length array and the two query bitvectors."""

    def __init__(
        self,
        grammar: Grammar,
        unique_lengths: tuple[int, ...],
        rule_marks: Bitvector,
        start_marks: Bitvector,
        n: int,
    ):
        self.grammar = grammar
        self.unique_lengths = unique_lengths
        self.rule_marks = rule_marks  # one bit per rule: first of its length
        self.start_marks = start_marks  # one bit per text position starting a start symbol
        self.n = n
        self._table = _byte_table(grammar)

    @property
    def kind(self) -> str:
        return f"fras-{self.start_marks.kind}"

    def access(self, p: int) -> int:
        """Byte value at 1-based position p."""
        if p < 1 or p > self.n:
            raise _out_of_range(p, self.n)
        start_marks = self.start_marks
        r = start_marks.rank(p)
        p -= start_marks.select(r) - 1
        rules = self.grammar.rules
        sym = rules[-1][r - 1]
        sigma = len(self.grammar.alphabet)
        lengths = self.unique_lengths
        rule_rank = self.rule_marks.rank
        while sym >= sigma:
            body = rules[sym - sigma]
            i = 0
            last = len(body) - 1
            while i < last:
                s = body[i]
                ln = 1 if s < sigma else lengths[rule_rank(s - sigma + 1) - 1]
                if p <= ln:
                    break
                p -= ln
                i += 1
            sym = body[i]
        return self.grammar.alphabet[sym]

    def access_trace(self, p: int) -> tuple[int, list[int]]:
        """Like access, also returning the visited rule-id sequence."""
        if p < 1 or p > self.n:
            raise _out_of_range(p, self.n)
        start_marks = self.start_marks
        r = start_marks.rank(p)
        p -= start_marks.select(r) - 1
        rules = self.grammar.rules
        trace = [len(rules)]
        sym = rules[-1][r - 1]
        sigma = len(self.grammar.alphabet)
        lengths = self.unique_lengths
        rule_rank = self.rule_marks.rank
        while sym >= sigma:
            trace.append(sym - sigma + 1)
            body = rules[sym - sigma]
            i = 0
            last = len(body) - 1
            while i < last:
                s = body[i]
                ln = 1 if s < sigma else lengths[rule_rank(s - sigma + 1) - 1]
                if p <= ln:
                    break
                p -= ln
                i += 1
            sym = body[i]
        return self.grammar.alphabet[sym], trace

    def extract(self, p: int, count: int) -> bytes:
        """Substring of ``count`` bytes starting at 1-based position p.

        Only the first byte is located by descent; the rest streams out of
        an in-order continuation of the derivation-tree walk.
        """
        if count < 1 or p < 1 or p + count - 1 > self.n:
            raise _out_of_range(p, self.n)
        start_marks = self.start_marks
        r = start_marks.rank(p)
        p -= start_marks.select(r) - 1
        rules = self.grammar.rules
        sigma = len(self.grammar.alphabet)
        lengths = self.unique_lengths
        rule_rank = self.rule_marks.rank
        stack: list[list] = [[rules[-1], r]]
        sym = rules[-1][r - 1]
        while sym >= sigma:
            body = rules[sym - sigma]
            i = 0
            last = len(body) - 1
            while i < last:
                s = body[i]
                ln = 1 if s < sigma else lengths[rule_rank(s - sigma + 1) - 1]
                if p <= ln:
                    break
                p -= ln
                i += 1
            stack.append([body, i + 1])
            sym = body[i]
        out = bytearray((sym,))
        _walk_leaves(rules, sigma, stack, out, count - 1)
        return bytes(out.translate(self._table))


def build_folklore(g: Grammar) -> FolkloreIndex:
    """Length-table construction for a CNF grammar, one bottom-up pass."""
    require_valid(g)
    if not is_cnf(g):
        raise AccessError("malformed-index", "grammar is not in CNF")
    sigma = len(g.alphabet)
    lengths: list[int] = []
    lefts: list[int] = []
    for body in g.rules:
        if len(body) == 1:
            lengths.append(1)
            lefts.append(1)  # sentinel, never read for terminal rules
        else:
            left_len = lengths[body[0] - sigma]
            lengths.append(left_len + lengths[body[1] - sigma])
            lefts.append(left_len)
    return FolkloreIndex(g, tuple(lefts), lengths[-1])


def build_fras(g: Grammar, bitvector_kind: str = "sparse") -> FrasIndex:
    """Sort rules by expansion length and build the two mark bitvectors.

    The per-rule length table is only materialized transiently; queries
    recover lengths through rank on the rule marks plus the distinct
    length array.
    """
    require_valid(g)
    gs, _ = sort_and_renumber(g)
    lengths = expansion_lengths(gs)
    n = lengths[-1]

    unique: list[int] = []
    first_positions: list[int] = []
    for j, ln in enumerate(lengths, start=1):
        if not unique or ln != unique[-1]:
            unique.append(ln)
            first_positions.append(j)
    rule_marks = build_bitvector(first_positions, len(gs.rules), bitvector_kind)

    start_positions: list[int] = []
    pos = 1
    sigma = len(gs.alphabet)
    for c in gs.rules[-1]:
        start_positions.append(pos)
        pos += 1 if c < sigma else lengths[c - sigma]
    start_marks = build_bitvector(start_positions, n, bitvector_kind)

    return FrasIndex(gs, tuple(unique), rule_marks, start_marks, n)
