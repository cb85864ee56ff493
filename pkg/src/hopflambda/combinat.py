"""Closed-form enhancement for braid-axis links and Hopf-plumbed fiber surfaces."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass

from .errors import IndexOutOfRange, NotATree, ParseError


@dataclass(frozen=True)
class BraidWord:
    """A word in the Artin generators of B_n; letter +i is s_i, -i is s_i^-1."""

    n: int
    letters: tuple = ()

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("a braid needs at least one strand")
        object.__setattr__(self, "letters", tuple(int(a) for a in self.letters))
        for a in self.letters:
            if a == 0 or abs(a) > self.n - 1:
                raise IndexOutOfRange(f"generator s{abs(a)} does not exist in B{self.n}")

    def __str__(self):
        body = " ".join(f"s{a}" if a > 0 else f"s{-a}^-1" for a in self.letters)
        return f"B{self.n}: {body}".rstrip()


_HEADER_RE = re.compile(r"\s*B(\d+)\s*:")
_LETTER_RE = re.compile(r"s(\d+)(\^-1|\^1)?$")


def parse_braid(text: str) -> BraidWord:
    """Parse ``B<n>: s1 s2^-1 ...`` (whitespace-separated generators)."""
    m = _HEADER_RE.match(text)
    if m is None:
        raise ParseError("braid must start with 'B<n>:'", 0, text)
    n = int(m.group(1))
    letters = []
    pos = m.end()
    for tok in re.finditer(r"\S+", text[pos:]):
        lm = _LETTER_RE.match(tok.group())
        if lm is None:
            raise ParseError(f"bad braid generator {tok.group()!r}", pos + tok.start(), text)
        i = int(lm.group(1))
        letters.append(-i if lm.group(2) == "^-1" else i)
    return BraidWord(n, tuple(letters))


def exponent_sum(b: BraidWord) -> int:
    return sum(1 if a > 0 else -1 for a in b.letters)


def hirasawa_lambda(b: BraidWord) -> int:
    """Bennequin number n - e(b) + 1: the enhancement of the closed braid plus
    axis plus oppositely oriented longitudes."""
    return b.n - exponent_sum(b) + 1


def closed_braid_components(b: BraidWord) -> int:
    """Number of cycles of the permutation underlying ``b``."""
    perm = list(range(b.n))
    for a in b.letters:
        i = abs(a) - 1
        perm[i], perm[i + 1] = perm[i + 1], perm[i]
    seen = [False] * b.n
    cycles = 0
    for start in range(b.n):
        if not seen[start]:
            cycles += 1
            k = start
            while not seen[k]:
                seen[k] = True
                k = perm[k]
    return cycles


@dataclass(frozen=True)
class PlumbingTree:
    """Hopf bands (+1 positive, -1 negative) plumbed along the edges of a tree."""

    signs: tuple
    edges: tuple = ()

    def __post_init__(self):
        signs = tuple(_sign(s) for s in self.signs)
        edges = tuple(tuple(sorted((int(a), int(b)))) for a, b in self.edges)
        object.__setattr__(self, "signs", signs)
        object.__setattr__(self, "edges", edges)
        n = len(signs)
        if n == 0:
            raise NotATree("a plumbing needs at least one band")
        if len(edges) != n - 1:
            raise NotATree(f"{n} nodes need {n - 1} edges, got {len(edges)}")
        adj = {k: [] for k in range(n)}
        for a, b in edges:
            if not (0 <= a < n and 0 <= b < n) or a == b:
                raise NotATree(f"bad edge ({a}, {b})")
            adj[a].append(b)
            adj[b].append(a)
        seen, stack = {0}, [0]
        while stack:
            for nb in adj[stack.pop()]:
                if nb not in seen:
                    seen.add(nb)
                    stack.append(nb)
        if len(seen) != n:
            raise NotATree("edges do not connect all bands")

    @classmethod
    def from_json(cls, text: str) -> "PlumbingTree":
        data = json.loads(text)
        return cls(tuple(data["signs"]), tuple(tuple(e) for e in data.get("edges", [])))

    def to_json(self) -> str:
        return json.dumps({"signs": ["+" if s > 0 else "-" for s in self.signs],
                           "edges": [list(e) for e in self.edges]})


def _sign(s) -> int:
    if s in ("+", 1, "+1"):
        return 1
    if s in ("-", -1, "-1"):
        return -1
    raise ValueError(f"band sign must be '+' or '-', got {s!r}")


def plumbing_invariants(t: PlumbingTree) -> tuple:
    """(lambda, mu): negative bands and total bands."""
    return sum(1 for s in t.signs if s < 0), len(t.signs)


def plumbing_mirror(t: PlumbingTree) -> PlumbingTree:
    return PlumbingTree(tuple(-s for s in t.signs), t.edges)


def plumb_together(t1: PlumbingTree, t2: PlumbingTree, i: int = 0, j: int = 0) -> PlumbingTree:
    """Join two plumbing trees by an edge from band ``i`` of t1 to band ``j`` of t2."""
    off = len(t1.signs)
    edges = t1.edges + tuple((a + off, b + off) for a, b in t2.edges) + ((i, j + off),)
    return PlumbingTree(t1.signs + t2.signs, edges)


def random_plumbing_tree(rng, max_nodes: int = 12) -> PlumbingTree:
    """Random signs on a random recursive tree (each new band attaches to an earlier one)."""
    n = int(rng.integers(1, max_nodes + 1))
    signs = tuple(int(s) for s in rng.choice([-1, 1], size=n))
    edges = tuple((int(rng.integers(0, k)), k) for k in range(1, n))
    return PlumbingTree(signs, edges)
