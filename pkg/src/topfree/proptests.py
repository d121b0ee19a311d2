"""Randomized and exhaustive property suites over the whole pipeline.

Each suite is a pure function of (configuration, scale parameters, seed) and
returns a SuiteResult; the CLI command `proptest` and the acceptance tests
both run these. Heavy suites fan out over worker processes in fixed-size
index chunks with per-index derived seeds, so results do not depend on the
worker count.
"""

from __future__ import annotations

import itertools
import multiprocessing
import os
import time
from dataclasses import dataclass, field
from fractions import Fraction
from random import Random
from typing import Callable, Sequence

from .errors import EmptyIntersection
from .groups import (
    FINITE_TABLE,
    FiniteSet,
    GroupConfig,
    GroupElement,
    Interval,
    Neighborhood,
    PadicBall,
    RATIONAL_EUCLIDEAN,
)
from .rational import padic_valuation
from .separation import (
    SeparationCertificate,
    check_certificate,
    derive_seed,
    separate_from_point,
    separate_word_from_identity,
    validate_certificate,
)
from .wedge import (
    AwayFromIdentity,
    IdentityDefaults,
    enumerate_x_points,
    sample_x,
    x_contains,
)
from .words import (
    DEFAULT_CAP,
    EPSILON,
    IDENTITY,
    Letter,
    Word,
    compare_uniformity,
    concat,
    format_word,
    formal_inverse,
    group_projection_report,
    letter,
    random_rational,
    random_rewrite_oracle,
    reduce_word,
)


@dataclass
class SuiteResult:
    name: str
    checked: int
    failures: list[str]
    elapsed: float
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures


# -- generators ---------------------------------------------------------------


def random_word(
    config: GroupConfig, rng: Random, max_len: int, min_len: int = 0
) -> Word:
    length = rng.randrange(min_len, max_len + 1)
    choices = len(config.group_ids)
    letters = []
    for _ in range(length):
        pick = rng.randrange(choices + 1)
        if pick == choices:
            letters.append(IDENTITY)
            continue
        spec = config.specs[pick]
        if spec.kind == FINITE_TABLE:
            letters.append(letter(config, spec.id, spec.elements[rng.randrange(len(spec.elements))]))
        else:
            letters.append(letter(config, spec.id, random_rational(rng)))
    return Word(tuple(letters))


def random_nonidentity_value(config: GroupConfig, rng: Random, gid: str):
    spec = config.spec(gid)
    if spec.kind == FINITE_TABLE:
        pool = [v for v in spec.elements if v != spec.identity_value]
        return pool[rng.randrange(len(pool))]
    while True:
        v = random_rational(rng)
        if v != 0:
            return v


def shrink_word(config: GroupConfig, w: Word, predicate: Callable[[Word], bool]) -> Word:
    """Greedy minimization: drop letters, then pull rationals toward zero."""

    def still_fails(cand: Word) -> bool:
        try:
            return predicate(cand)
        except Exception:
            return False

    current = w
    improved = True
    while improved:
        improved = False
        for i in range(len(current)):
            cand = Word(current.letters[:i] + current.letters[i + 1 :])
            if still_fails(cand):
                current = cand
                improved = True
                break
        if improved:
            continue
        for i, l in enumerate(current.letters):
            if l.group is None or not isinstance(l.value, Fraction) or l.value == 0:
                continue
            num = l.value.numerator
            num = num // 2 if num > 0 else -((-num) // 2)
            smaller = letter(config, l.group, Fraction(num, l.value.denominator))
            cand = Word(current.letters[:i] + (smaller,) + current.letters[i + 1 :])
            if cand != current and still_fails(cand):
                current = cand
                improved = True
                break
    return current


# -- worker plumbing ----------------------------------------------------------

_WORKER_CONFIG: GroupConfig | None = None


def _init_worker(config: GroupConfig) -> None:
    global _WORKER_CONFIG
    _WORKER_CONFIG = config


def _run_chunks(config: GroupConfig, task, chunks: list, workers: int | None):
    if workers is None:
        workers = min(os.cpu_count() or 1, 8)
    _init_worker(config)
    if workers <= 1 or len(chunks) <= 1:
        return [task(chunk) for chunk in chunks]
    ctx = multiprocessing.get_context("fork")
    with ctx.Pool(workers, initializer=_init_worker, initargs=(config,)) as pool:
        return pool.map(task, chunks, chunksize=1)


def _make_chunks(total: int, pieces: int) -> list[tuple[int, int]]:
    pieces = max(1, min(pieces, total))
    base, extra = divmod(total, pieces)
    chunks = []
    start = 0
    for i in range(pieces):
        count = base + (1 if i < extra else 0)
        if count:
            chunks.append((start, count))
        start += count
    return chunks


# -- confluence / normal form -------------------------------------------------


def _confluence_chunk(args: tuple) -> tuple[int, list[str]]:
    start, count, seed, max_len, orders, cap = args
    config = _WORKER_CONFIG
    assert config is not None
    failures: list[str] = []
    inverse_cap = max(cap, 2 * max_len + 2)
    for i in range(start, start + count):
        word_seed = derive_seed(seed, "confluence", i)
        rng = Random(word_seed)
        w = random_word(config, rng, max_len)
        reduced = reduce_word(config, w, cap)
        if reduce_word(config, reduced.as_word(), cap) != reduced:
            failures.append(f"reduce not idempotent on {format_word(config, w) or EPSILON}")
            continue
        if not reduce_word(config, concat(w, formal_inverse(config, w)), inverse_cap).is_empty:
            failures.append(f"w*inv(w) not trivial for {format_word(config, w) or EPSILON}")
            continue
        for o in range(orders):
            got = random_rewrite_oracle(config, w, word_seed + 1 + o, cap)
            if got != reduced:
                shrunk = shrink_word(
                    config,
                    w,
                    lambda cand: random_rewrite_oracle(config, cand, word_seed + 1 + o, cap)
                    != reduce_word(config, cand, cap),
                )
                failures.append(
                    f"rewrite order {o} disagrees on {format_word(config, shrunk) or EPSILON}"
                )
                break
    return count, failures


def confluence_suite(
    config: GroupConfig,
    words: int = 100_000,
    max_len: int = 12,
    orders: int = 20,
    seed: int = 0,
    cap: int = DEFAULT_CAP,
    workers: int | None = None,
) -> SuiteResult:
    """Random rewrite orders agree with the deterministic normal form;
    reduction is idempotent and kills w concatenated with its formal inverse."""
    start = time.perf_counter()
    chunks = [
        (lo, cnt, seed, max_len, orders, cap) for lo, cnt in _make_chunks(words, 64)
    ]
    results = _run_chunks(config, _confluence_chunk, chunks, workers)
    checked = sum(r[0] for r in results)
    failures = [f for r in results for f in r[1]]
    return SuiteResult(
        "confluence", checked, failures, time.perf_counter() - start, {"orders": orders}
    )


# -- groupwise collapse on trivial words ---------------------------------------


def collapse_suite(
    config: GroupConfig,
    group_ids: Sequence[str] = ("z2", "z3"),
    max_len: int = 6,
    cap: int = DEFAULT_CAP,
) -> SuiteResult:
    """Exhaustive: every word (over the full letter sets of the given finite
    groups, identities included) that reduces to the empty word has trivial
    per-group ordered products."""
    start = time.perf_counter()
    alphabet: list[Letter] = []
    for gid in group_ids:
        spec = config.spec(gid)
        for v in spec.elements:
            alphabet.append(letter(config, gid, v))
    checked = 0
    premise_hits = 0
    failures: list[str] = []
    for length in range(1, max_len + 1):
        for combo in itertools.product(alphabet, repeat=length):
            w = Word(combo)
            checked += 1
            report = group_projection_report(config, w, cap)
            if report.premise_met:
                premise_hits += 1
            if not report.holds:
                failures.append(
                    f"group {report.violating_group} product nontrivial on "
                    f"{format_word(config, w)}"
                )
    return SuiteResult(
        "collapse",
        checked,
        failures,
        time.perf_counter() - start,
        {"trivial_words": premise_hits, "alphabet": len(alphabet)},
    )


# -- structure transfer between word pairs -------------------------------------


def _mirror_word(config: GroupConfig, rng: Random, base: Word) -> Word:
    letters = []
    for l in base.letters:
        if l.group is None:
            letters.append(IDENTITY)
        else:
            letters.append(Letter(l.group, random_nonidentity_value(config, rng, l.group)))
    return Word(tuple(letters))


def transfer_suite(
    config: GroupConfig,
    pairs: int = 10_000,
    mutations: int = 1000,
    max_len: int = 6,
    seed: int = 0,
    cap: int = DEFAULT_CAP,
) -> SuiteResult:
    """Pairs passing both transfer conditions keep nontrivial values, and
    deliberately broken pairs are flagged by the comparison."""
    start = time.perf_counter()
    rng = Random(derive_seed(seed, "transfer"))
    failures: list[str] = []
    kept = 0
    attempts = 0
    while kept < pairs and attempts < pairs * 100:
        attempts += 1
        t = random_word(config, rng, max_len, min_len=1)
        t2 = _mirror_word(config, rng, t)
        comparison = compare_uniformity(config, t, t2)
        if not (comparison.uniformity_reflected and comparison.nonvanishing_preserved):
            continue
        if reduce_word(config, t, cap).is_empty:
            continue
        kept += 1
        if reduce_word(config, t2, cap).is_empty:
            failures.append(
                f"value vanished: {format_word(config, t)} -> {format_word(config, t2)}"
            )
    if kept < pairs:
        failures.append(f"pair generator yielded only {kept}/{pairs}")

    flagged = 0
    produced = 0
    guard = 0
    while produced < mutations and guard < mutations * 200:
        guard += 1
        t = random_word(config, rng, max_len, min_len=2)
        tagged = [m for m, l in enumerate(t.letters) if l.group is not None]
        if produced % 2 == 0:
            # break uniformity reflection: two groups in t, one group in t2
            cross = [
                (m, l)
                for m in tagged
                for l in tagged
                if m < l and t.letters[m].group != t.letters[l].group
            ]
            if not cross:
                continue
            m, l = cross[rng.randrange(len(cross))]
            letters = list(_mirror_word(config, rng, t).letters)
            gid = letters[m].group
            letters[l] = Letter(gid, random_nonidentity_value(config, rng, gid))
            t2 = Word(tuple(letters))
            produced += 1
            if not compare_uniformity(config, t, t2).uniformity_reflected:
                flagged += 1
            else:
                failures.append(
                    f"missed reflection break: {format_word(config, t)} vs {format_word(config, t2)}"
                )
        else:
            # break nonvanishing: a non-identity singleton of t vanishes in t2
            if not tagged:
                continue
            m = tagged[rng.randrange(len(tagged))]
            letters = list(_mirror_word(config, rng, t).letters)
            letters[m] = IDENTITY
            t2 = Word(tuple(letters))
            produced += 1
            if not compare_uniformity(config, t, t2).nonvanishing_preserved:
                flagged += 1
            else:
                failures.append(
                    f"missed vanish break: {format_word(config, t)} vs {format_word(config, t2)}"
                )
    if produced < mutations:
        failures.append(f"mutation generator yielded only {produced}/{mutations}")
    return SuiteResult(
        "transfer",
        kept + produced,
        failures,
        time.perf_counter() - start,
        {"pairs": kept, "mutations": produced, "flagged": flagged},
    )


# -- separation certificates ----------------------------------------------------


def _separation_chunk(args: tuple) -> tuple[int, list[str], int, int]:
    start, count, seed, max_len, samples, cap = args
    config = _WORKER_CONFIG
    assert config is not None
    defaults = IdentityDefaults()
    failures: list[str] = []
    away_descriptors = 0
    exhaustive_runs = 0
    for i in range(start, start + count):
        rng = Random(derive_seed(seed, "separation", i))
        while True:
            w = random_word(config, rng, max_len, min_len=1)
            if not reduce_word(config, w, cap).is_empty:
                break
        text = format_word(config, w)
        cert = separate_word_from_identity(config, w, defaults, cap)
        problems = validate_certificate(config, cert, cap)
        if problems:
            failures.append(f"{text}: {problems[0]}")
            continue
        for m, l in enumerate(w.letters):
            if l.group is None:
                continue
            xn = cert.neighborhoods[m]
            away_descriptors += 1
            if not (
                isinstance(xn, AwayFromIdentity)
                and xn.group == l.group
                and xn.neighborhood.punctured
            ):
                failures.append(f"{text}: position {m} is not a punctured away descriptor")
        finite = all(
            enumerate_x_points(config, xn) is not None for xn in cert.neighborhoods
        )
        if finite:
            exhaustive_runs += 1
            report = check_certificate(config, cert, "exhaustive")
        else:
            report = check_certificate(
                config, cert, "sampled", k=samples, seed=derive_seed(seed, "check", i)
            )
        if report.violations:
            v = report.violations[0]
            failures.append(f"{text}: selection {v.selection} reduces to {v.reduces_to or EPSILON}")
            continue
        link_rng = Random(derive_seed(seed, "linkage", i))
        for _ in range(2):
            selection = Word(
                tuple(sample_x(config, xn, link_rng, 1)[0] for xn in cert.neighborhoods)
            )
            comparison = compare_uniformity(config, w, selection)
            if not (comparison.uniformity_reflected and comparison.nonvanishing_preserved):
                failures.append(
                    f"{text}: selection {format_word(config, selection)} breaks the transfer conditions"
                )
                break
    return count, failures, away_descriptors, exhaustive_runs


def separation_suite(
    config: GroupConfig,
    words: int = 1000,
    max_len: int = 8,
    samples: int = 1000,
    seed: int = 0,
    cap: int = DEFAULT_CAP,
    workers: int | None = None,
) -> SuiteResult:
    """Certificates for random nontrivial words validate (structurally and
    analytically) and admit no selection that multiplies into the forbidden set."""
    start = time.perf_counter()
    chunks = [
        (lo, cnt, seed, max_len, samples, cap) for lo, cnt in _make_chunks(words, 32)
    ]
    results = _run_chunks(config, _separation_chunk, chunks, workers)
    checked = sum(r[0] for r in results)
    failures = [f for r in results for f in r[1]]
    return SuiteResult(
        "separation",
        checked,
        failures,
        time.perf_counter() - start,
        {
            "away_descriptors": sum(r[2] for r in results),
            "exhaustive_runs": sum(r[3] for r in results),
            "samples": samples,
        },
    )


# -- separating two points -------------------------------------------------------


def _point_separation_chunk(args: tuple) -> tuple[int, list[str]]:
    start, count, seed, max_len, samples, cap = args
    config = _WORKER_CONFIG
    assert config is not None
    failures: list[str] = []
    for i in range(start, start + count):
        rng = Random(derive_seed(seed, "points", i))
        while True:
            u = reduce_word(config, random_word(config, rng, max_len), cap)
            v = reduce_word(config, random_word(config, rng, max_len), cap)
            if u != v:
                break
        cert = separate_from_point(config, u.as_word(), v, cap=cap)
        problems = validate_certificate(config, cert, cap)
        if problems:
            failures.append(f"{format_word(config, u) or EPSILON} vs {format_word(config, v) or EPSILON}: {problems[0]}")
            continue
        report = check_certificate(
            config, cert, "sampled", k=samples, seed=derive_seed(seed, "pcheck", i)
        )
        if report.violations:
            failures.append(
                f"{format_word(config, u) or EPSILON} vs {format_word(config, v) or EPSILON}: "
                f"selection {report.violations[0].selection} hits the target"
            )
    return count, failures


def point_separation_suite(
    config: GroupConfig,
    pairs: int = 1000,
    max_len: int = 6,
    samples: int = 200,
    seed: int = 0,
    cap: int = DEFAULT_CAP,
    workers: int | None = None,
) -> SuiteResult:
    """Distinct reduced words get certificates whose sampled products never
    hit the target value."""
    start = time.perf_counter()
    chunks = [
        (lo, cnt, seed, max_len, samples, cap) for lo, cnt in _make_chunks(pairs, 32)
    ]
    results = _run_chunks(config, _point_separation_chunk, chunks, workers)
    checked = sum(r[0] for r in results)
    failures = [f for r in results for f in r[1]]
    return SuiteResult("points", checked, failures, time.perf_counter() - start, {"samples": samples})


# -- analytic bounds --------------------------------------------------------------


def bounds_suite(config: GroupConfig, cases: int = 1000, seed: int = 0) -> SuiteResult:
    """The symbolic exclusion bounds of the one-group separation rules,
    checked exactly and independently of any sampling."""
    start = time.perf_counter()
    rng = Random(derive_seed(seed, "bounds"))
    rational_groups = [s for s in config.specs if s.kind != FINITE_TABLE]
    failures: list[str] = []
    checked = 0
    while checked < cases:
        spec = rational_groups[rng.randrange(len(rational_groups))]
        n = rng.randrange(1, 9)
        values = [random_rational(rng) for _ in range(n)]
        s = sum(values, Fraction(0))
        if s == 0:
            continue
        checked += 1
        xs = [GroupElement(spec.id, v) for v in values]
        neighborhoods = config.separate_product_from_identity(xs)
        if spec.kind == RATIONAL_EUCLIDEAN:
            total_radius = sum((n_.shape.radius for n_ in neighborhoods), Fraction(0))
            lo, hi = s - total_radius, s + total_radius
            if lo < 0 < hi:
                failures.append(f"interval sum range ({lo}, {hi}) covers zero for {values}")
        else:
            min_level = min(n_.shape.level for n_ in neighborhoods)
            if not padic_valuation(s, spec.prime) < min_level:
                failures.append(f"ball levels too loose for {values} in {spec.id}")
    return SuiteResult("bounds", checked, failures, time.perf_counter() - start)


# -- intersection correctness ------------------------------------------------------


def _random_neighborhood(config: GroupConfig, rng: Random, gid: str) -> Neighborhood:
    spec = config.spec(gid)
    punctured = rng.randrange(4) == 0
    if spec.kind == FINITE_TABLE:
        size = rng.randrange(1, len(spec.elements) + 1)
        values = tuple(sorted(rng.sample(spec.elements, size)))
        return Neighborhood(gid, FiniteSet(values), punctured)
    if spec.kind == RATIONAL_EUCLIDEAN:
        radius = abs(random_rational(rng)) + Fraction(1, 8)
        return Neighborhood(gid, Interval(random_rational(rng), radius), punctured)
    return Neighborhood(gid, PadicBall(random_rational(rng), rng.randrange(-3, 5)), punctured)


def intersect_suite(
    config: GroupConfig, pairs: int = 1000, points: int = 200, seed: int = 0
) -> SuiteResult:
    """Membership in an intersection equals the conjunction of memberships;
    claimed-empty intersections admit no common sampled point."""
    start = time.perf_counter()
    rng = Random(derive_seed(seed, "intersect"))
    failures: list[str] = []
    checked = 0
    for i in range(pairs):
        gid = config.group_ids[rng.randrange(len(config.group_ids))]
        n1 = _random_neighborhood(config, rng, gid)
        n2 = _random_neighborhood(config, rng, gid)
        probes: list[GroupElement] = []
        for n in (n1, n2):
            try:
                probes.extend(config.sample(n, Random(derive_seed(seed, "probe", i)), points // 3))
            except Exception:
                pass
        spec = config.spec(gid)
        if spec.kind == FINITE_TABLE:
            probes.extend(GroupElement(gid, v) for v in spec.elements)
        else:
            probes.extend(GroupElement(gid, random_rational(rng)) for _ in range(points // 3))
        checked += 1
        try:
            meet = config.intersect(n1, n2)
        except EmptyIntersection:
            for g in probes:
                if config.contains(n1, g) and config.contains(n2, g):
                    failures.append(f"claimed empty, but {g.value} lies in both ({n1}, {n2})")
                    break
            continue
        try:
            probes.extend(config.sample(meet, Random(derive_seed(seed, "meet", i)), points // 3))
        except Exception:
            pass
        for g in probes:
            if config.contains(meet, g) != (config.contains(n1, g) and config.contains(n2, g)):
                failures.append(f"membership mismatch at {g.value} for ({n1}, {n2})")
                break
    return SuiteResult("intersect", checked, failures, time.perf_counter() - start)


# -- tamper detection ----------------------------------------------------------------


def _pure_group_word(
    config: GroupConfig, rng: Random, gid: str, length: int
) -> Word:
    letters = []
    for _ in range(length):
        letters.append(Letter(gid, random_nonidentity_value(config, rng, gid)))
    return Word(tuple(letters))


def tamper_suite(config: GroupConfig, certs: int = 100, seed: int = 0, cap: int = DEFAULT_CAP) -> SuiteResult:
    """Mutated certificates: structural breaks are rejected outright, loosened
    bounds are rejected exactly when a violating selection provably exists."""
    from dataclasses import replace as dc_replace

    start = time.perf_counter()
    rng = Random(derive_seed(seed, "tamper"))
    failures: list[str] = []
    checked = 0
    rejected = 0
    kinds = ("clear_puncture", "double_radius", "decrease_level", "swap_letters")
    for i in range(certs):
        kind = kinds[i % 4]
        if kind == "clear_puncture":
            while True:
                w = random_word(config, rng, 6, min_len=1)
                if any(l.group is not None for l in w.letters) and not reduce_word(config, w, cap).is_empty:
                    break
            cert = separate_word_from_identity(config, w, cap=cap)
            m = next(m for m, l in enumerate(w.letters) if l.group is not None)
            xn = cert.neighborhoods[m]
            assert isinstance(xn, AwayFromIdentity)
            tampered = AwayFromIdentity(xn.group, dc_replace(xn.neighborhood, punctured=False))
            mutant = dc_replace(
                cert,
                neighborhoods=cert.neighborhoods[:m] + (tampered,) + cert.neighborhoods[m + 1 :],
            )
            checked += 1
            problems = validate_certificate(config, mutant, cap)
            if not problems:
                failures.append(f"cleared puncture accepted on {format_word(config, w)}")
            else:
                rejected += 1
        elif kind == "double_radius":
            while True:
                w = _pure_group_word(config, rng, "q", rng.randrange(1, 7))
                if not reduce_word(config, w, cap).is_empty:
                    break
            cert = separate_word_from_identity(config, w, cap=cap)
            xn = cert.neighborhoods[0]
            assert isinstance(xn, AwayFromIdentity)
            shape = xn.neighborhood.shape
            assert isinstance(shape, Interval)
            widened = AwayFromIdentity(
                xn.group,
                dc_replace(xn.neighborhood, shape=Interval(shape.center, shape.radius * 2)),
            )
            mutant = dc_replace(
                cert, neighborhoods=(widened,) + cert.neighborhoods[1:]
            )
            checked += 1
            # One doubled radius still keeps the summed radii at or below the
            # subterm values, so the mutant stays sound: it must be accepted.
            problems = validate_certificate(config, mutant, cap)
            if problems:
                failures.append(f"boundary-sound widened certificate rejected: {problems[0]}")
            report = check_certificate(
                config, mutant, "sampled", k=200, seed=derive_seed(seed, "tcheck", i)
            )
            if report.violations:
                failures.append("widened certificate produced a real violation")
        elif kind == "decrease_level":
            while True:
                w = _pure_group_word(config, rng, "q2", rng.randrange(2, 7))
                if not reduce_word(config, w, cap).is_empty:
                    break
            cert = separate_word_from_identity(config, w, cap=cap)
            xn = cert.neighborhoods[0]
            assert isinstance(xn, AwayFromIdentity)
            shape = xn.neighborhood.shape
            assert isinstance(shape, PadicBall)
            loosened = AwayFromIdentity(
                xn.group,
                dc_replace(xn.neighborhood, shape=PadicBall(shape.center, shape.level - 1)),
            )
            mutant = dc_replace(cert, neighborhoods=(loosened,) + cert.neighborhoods[1:])
            checked += 1
            values = [l.value for l in w.letters]
            s = sum(values, Fraction(0))
            prime = config.spec("q2").prime
            reachable = padic_valuation(s, prime) >= shape.level - 1
            problems = validate_certificate(config, mutant, cap)
            if reachable:
                selection = _padic_violating_selection(config, mutant, values, s)
                if selection is None:
                    failures.append(f"expected violating selection for {format_word(config, w)}")
                elif not problems:
                    failures.append(
                        f"reachable loosened certificate accepted on {format_word(config, w)}"
                    )
                else:
                    rejected += 1
            else:
                report = check_certificate(
                    config, mutant, "sampled", k=200, seed=derive_seed(seed, "tcheck", i)
                )
                if report.violations:
                    failures.append("unreachable loosened certificate produced a violation")
        else:
            while True:
                w = random_word(config, rng, 6, min_len=2)
                groups = [l.group for l in w.letters if l.group is not None]
                if len(set(groups)) >= 2 and not reduce_word(config, w, cap).is_empty:
                    break
            cert = separate_word_from_identity(config, w, cap=cap)
            tagged = [m for m, l in enumerate(w.letters) if l.group is not None]
            pick = [
                (m, l)
                for m in tagged
                for l in tagged
                if m < l and w.letters[m].group != w.letters[l].group
            ]
            m, l = pick[rng.randrange(len(pick))]
            letters = list(w.letters)
            letters[m], letters[l] = letters[l], letters[m]
            mutant = dc_replace(cert, word=Word(tuple(letters)))
            checked += 1
            problems = validate_certificate(config, mutant, cap)
            if not problems:
                failures.append(f"swapped letters accepted on {format_word(config, w)}")
            else:
                rejected += 1
    return SuiteResult(
        "tamper",
        checked,
        failures,
        time.perf_counter() - start,
        {"rejected": rejected},
    )


def _padic_violating_selection(
    config: GroupConfig,
    mutant: SeparationCertificate,
    values: list[Fraction],
    s: Fraction,
) -> Word | None:
    """Concrete selection through the mutated descriptors summing to zero,
    verified by membership and reduction; None when construction fails."""
    candidates = [values[0] - s] + values[1:]
    if candidates[0] == 0:
        if len(candidates) < 2:
            return None
        bump = Fraction(2) ** (
            max(abs(n.neighborhood.shape.level) for n in mutant.neighborhoods) + 40
        )
        candidates[0] += bump
        candidates[1] -= bump
    selection = Word(tuple(Letter("q2", v) for v in candidates))
    if sum(candidates, Fraction(0)) != 0:
        return None
    for xn, l in zip(mutant.neighborhoods, selection.letters):
        if not x_contains(config, xn, l):
            return None
    if not reduce_word(config, selection, max(len(candidates), 1)).is_empty:
        return None
    return selection
