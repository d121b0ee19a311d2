"""Words over the disjoint union of the configured groups and their normal form.

A letter is either the shared wedge identity or a non-identity element of one
group. Reduction deletes identity letters and merges adjacent same-group
letters until the word alternates between groups; the result is the normal
form of the element in the free product.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from random import Random
from typing import Iterable, Iterator, Sequence

from .errors import (
    CapExceeded,
    GroupMismatch,
    IndexOutOfRange,
    LengthMismatch,
    WordSyntaxError,
)
from .groups import GroupConfig, GroupElement, Value

DEFAULT_CAP = 16


@dataclass(frozen=True, slots=True)
class Letter:
    """group is None for the wedge identity; tagged letters are never identity-valued."""

    group: str | None
    value: Value | None

    @property
    def is_identity(self) -> bool:
        return self.group is None


IDENTITY = Letter(None, None)


def letter(config: GroupConfig, gid: str, value: Value) -> Letter:
    """Tagged letter constructor; identity-valued input collapses to IDENTITY."""
    spec = config.spec(gid)
    if not spec.is_element(value):
        raise WordSyntaxError(f"{value!r} is not an element of group {gid}")
    if value == spec.identity_value:
        return IDENTITY
    return Letter(gid, value)


@dataclass(frozen=True)
class Word:
    """A finite, possibly unreduced letter sequence."""

    letters: tuple[Letter, ...]

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    @classmethod
    def of(cls, letters: Iterable[Letter]) -> "Word":
        return cls(tuple(letters))


@dataclass(frozen=True)
class ReducedWord:
    """Alternating identity-free word; the empty sequence is the group identity."""

    letters: tuple[Letter, ...]

    def __post_init__(self) -> None:
        prev = None
        for l in self.letters:
            if l.group is None:
                raise ValueError("identity letter inside a reduced word")
            if l.group == prev:
                raise ValueError("adjacent letters from one group in a reduced word")
            prev = l.group

    def __len__(self) -> int:
        return len(self.letters)

    @property
    def is_empty(self) -> bool:
        return not self.letters

    def as_word(self) -> Word:
        return Word(self.letters)


@dataclass(frozen=True)
class UniformSubterm:
    """Positions (strictly increasing, 0-based) of one group's letters in a word."""

    group: str
    positions: tuple[int, ...]


def _check_cap(n: int, cap: int) -> None:
    if n > cap:
        raise CapExceeded(f"word length {n} exceeds cap {cap}")


def reduce_word(config: GroupConfig, w: Word | ReducedWord, cap: int = DEFAULT_CAP) -> ReducedWord:
    """Left-to-right stack reduction to the alternating normal form."""
    letters = w.letters
    _check_cap(len(letters), cap)
    out: list[Letter] = []
    for l in letters:
        gid = l.group
        if gid is None:
            continue
        if out and out[-1].group == gid:
            spec = config.spec(gid)
            merged = spec.mul_value(out[-1].value, l.value)
            if merged == spec.identity_value:
                out.pop()
            else:
                out[-1] = Letter(gid, merged)
        else:
            out.append(l)
    return ReducedWord(tuple(out))


def concat(u: Word | ReducedWord, v: Word | ReducedWord) -> Word:
    return Word(u.letters + v.letters)


def word_mul(config: GroupConfig, u: ReducedWord, v: ReducedWord, cap: int = DEFAULT_CAP) -> ReducedWord:
    return reduce_word(config, concat(u, v), cap)


def word_inv(config: GroupConfig, u: ReducedWord) -> ReducedWord:
    letters = tuple(
        Letter(l.group, config.spec(l.group).inv_value(l.value)) for l in reversed(u.letters)
    )
    return ReducedWord(letters)


def formal_inverse(config: GroupConfig, w: Word) -> Word:
    """Letterwise inverse of a raw word, reversed; identity letters stay put."""
    out = []
    for l in reversed(w.letters):
        if l.group is None:
            out.append(IDENTITY)
        else:
            out.append(Letter(l.group, config.spec(l.group).inv_value(l.value)))
    return Word(tuple(out))


def iter_position_subsets(positions: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """All nonempty subsets of an ascending position list, in lexicographic order."""
    n = len(positions)

    def rec(prefix: tuple[int, ...], start: int) -> Iterator[tuple[int, ...]]:
        for idx in range(start, n):
            ext = prefix + (positions[idx],)
            yield ext
            yield from rec(ext, idx + 1)

    return rec((), 0)


def uniform_subterms(
    config: GroupConfig,
    w: Word,
    nonidentity_value_only: bool = False,
    cap: int = DEFAULT_CAP,
) -> list[UniformSubterm]:
    """Every subsequence of positions tagged with a single group.

    Identity letters belong to no subterm here; the separation engine widens
    the enumeration where the construction needs positions holding the
    identity. Order: groups in configuration order, position sets
    lexicographic.
    """
    _check_cap(len(w), cap)
    out: list[UniformSubterm] = []
    for gid in config.group_ids:
        positions = [m for m, l in enumerate(w.letters) if l.group == gid]
        if not positions:
            continue
        spec = config.spec(gid)
        for subset in iter_position_subsets(positions):
            if nonidentity_value_only:
                value = spec.product_value(w.letters[m].value for m in subset)
                if value == spec.identity_value:
                    continue
            out.append(UniformSubterm(gid, subset))
    return out


def subterm_value(config: GroupConfig, w: Word, s: UniformSubterm) -> GroupElement:
    """Ordered product of the indexed letters; identity letters contribute 1."""
    spec = config.spec(s.group)
    acc = spec.identity_value
    for m in s.positions:
        if not 0 <= m < len(w):
            raise IndexOutOfRange(f"position {m} outside word of length {len(w)}")
        l = w.letters[m]
        if l.group is None:
            continue
        if l.group != s.group:
            raise GroupMismatch(f"letter at position {m} is in {l.group}, subterm is in {s.group}")
        acc = spec.mul_value(acc, l.value)
    return GroupElement(s.group, acc)


# -- the two word-comparison reports ----------------------------------------


@dataclass(frozen=True)
class ProjectionReport:
    """Whether a word of value 1 collapses groupwise.

    premise_met is False when the word does not reduce to the empty word; in
    that case holds is vacuously True.
    """

    premise_met: bool
    holds: bool
    violating_group: str | None = None


def group_projection_report(config: GroupConfig, w: Word, cap: int = DEFAULT_CAP) -> ProjectionReport:
    if not reduce_word(config, w, cap).is_empty:
        return ProjectionReport(premise_met=False, holds=True)
    for gid in config.group_ids:
        spec = config.spec(gid)
        prod = spec.product_value(l.value for l in w.letters if l.group == gid)
        if prod != spec.identity_value:
            return ProjectionReport(premise_met=True, holds=False, violating_group=gid)
    return ProjectionReport(premise_met=True, holds=True)


@dataclass(frozen=True)
class UniformityComparison:
    """Pairwise structure transfer between two same-length words.

    uniformity_reflected: every set of positions lying in one group of the
    candidate word lies in one group of the base word too.
    nonvanishing_preserved: on position sets lying in one group of both
    words, a non-identity base value forces a non-identity candidate value.
    Positions holding the identity letter are compatible with every group
    (the identity is shared by all of them).
    """

    uniformity_reflected: bool
    nonvanishing_preserved: bool

    @property
    def both(self) -> bool:
        return self.uniformity_reflected and self.nonvanishing_preserved


def compare_uniformity(config: GroupConfig, base: Word, candidate: Word) -> UniformityComparison:
    if len(base) != len(candidate):
        raise LengthMismatch(f"word lengths differ: {len(base)} vs {len(candidate)}")
    n = len(base)
    bg = [l.group for l in base.letters]
    cg = [l.group for l in candidate.letters]

    reflected = True
    for m in range(n):
        if not reflected:
            break
        for l in range(m + 1, n):
            cand_uniform = cg[m] is None or cg[l] is None or cg[m] == cg[l]
            base_uniform = bg[m] is None or bg[l] is None or bg[m] == bg[l]
            if cand_uniform and not base_uniform:
                reflected = False
                break

    preserved = _nonvanishing_preserved(config, base, candidate)
    return UniformityComparison(reflected, preserved)


def _nonvanishing_preserved(config: GroupConfig, base: Word, candidate: Word) -> bool:
    n = len(base)
    for bgid in config.group_ids:
        bspec = config.spec(bgid)
        for cgid in config.group_ids:
            cspec = config.spec(cgid)
            pool = [
                m
                for m in range(n)
                if (base.letters[m].group in (None, bgid))
                and (candidate.letters[m].group in (None, cgid))
            ]
            if not pool:
                continue
            # Skip duplicate sweeps: a pool without candidate letters of cgid
            # behaves identically for every cgid, so visit it once.
            if cgid != config.group_ids[0] and all(
                candidate.letters[m].group is None for m in pool
            ):
                continue

            # Depth-first over subsets, carrying both running products.
            stack = [(0, bspec.identity_value, cspec.identity_value, False)]
            while stack:
                start, bacc, cacc, has_base_tag = stack.pop()
                for idx in range(start, len(pool)):
                    m = pool[idx]
                    bl = base.letters[m]
                    cl = candidate.letters[m]
                    b2 = bacc if bl.group is None else bspec.mul_value(bacc, bl.value)
                    c2 = cacc if cl.group is None else cspec.mul_value(cacc, cl.value)
                    tagged = has_base_tag or bl.group is not None
                    if tagged and b2 != bspec.identity_value and c2 == cspec.identity_value:
                        return False
                    stack.append((idx + 1, b2, c2, tagged))
    return True


def random_rewrite_oracle(
    config: GroupConfig, w: Word, seed: int | Random, cap: int = DEFAULT_CAP
) -> ReducedWord:
    """Apply single rewrites (drop an identity letter / merge one adjacent
    same-group pair) in random order until none applies.

    Kept deliberately naive: this is the independent check that the
    deterministic reduction order does not matter.
    """
    _check_cap(len(w), cap)
    rng = Random(seed) if isinstance(seed, int) else seed
    letters = list(w.letters)
    while True:
        sites: list[int] = []
        prev_group = None
        for idx, l in enumerate(letters):
            gid = l.group
            if gid is None:
                sites.append(~idx)  # deletion site, encoded as complement
            elif gid == prev_group:
                sites.append(idx - 1)  # merge site at idx-1
            prev_group = gid
        if not sites:
            break
        site = sites[rng.randrange(len(sites))]
        if site < 0:
            del letters[~site]
        else:
            a, b = letters[site], letters[site + 1]
            spec = config.spec(a.group)
            merged = spec.mul_value(a.value, b.value)
            if merged == spec.identity_value:
                letters[site : site + 2] = [IDENTITY]
            else:
                letters[site : site + 2] = [Letter(a.group, merged)]
    return ReducedWord(tuple(letters))


# -- word syntax -------------------------------------------------------------

EPSILON = "ε"


def parse_word(config: GroupConfig, text: str) -> Word:
    """Whitespace-separated `group:value` tokens; the bare token `1` (or the
    empty string / epsilon) is the identity."""
    stripped = text.strip()
    if not stripped or stripped == EPSILON:
        return Word(())
    letters = []
    for index, token in enumerate(stripped.split()):
        if token == "1":
            letters.append(IDENTITY)
            continue
        gid, sep, literal = token.partition(":")
        if not sep or not gid or not literal:
            raise WordSyntaxError(
                f"token {index} {token!r}: expected group:value or 1", token_index=index
            )
        spec = config.spec(gid) if gid in config.group_ids else None
        if spec is None:
            raise WordSyntaxError(f"token {index} {token!r}: unknown group {gid!r}", token_index=index)
        try:
            value = spec.parse_value(literal)
        except ValueError as exc:
            raise WordSyntaxError(f"token {index} {token!r}: {exc}", token_index=index) from exc
        letters.append(letter(config, gid, value))
    return Word(tuple(letters))


def format_letter(config: GroupConfig, l: Letter) -> str:
    if l.group is None:
        return "1"
    return f"{l.group}:{config.spec(l.group).format_value(l.value)}"


def format_word(config: GroupConfig, w: Word | ReducedWord) -> str:
    return " ".join(format_letter(config, l) for l in w.letters)


def parse_reduced(config: GroupConfig, text: str, cap: int = DEFAULT_CAP) -> ReducedWord:
    return reduce_word(config, parse_word(config, text), cap)


def random_rational(rng: Random, span: int = 8) -> Fraction:
    return Fraction(rng.randrange(-span, span + 1), rng.randrange(1, span + 1))
