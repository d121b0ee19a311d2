"""Separation certificates: per-position X-neighborhoods whose pointwise
product avoids a finite set of forbidden values (by default, the identity).

The builder enumerates, for each group, every position set holding letters of
that group (identity letters may join any group's set), keeps those with a
non-identity value, constructs per-position neighborhoods from the one-group
separation primitive, and intersects the systems position by position.

Validation has two layers. The structural layer checks the shape of the
certificate: descriptor variants, group matching, punctures, and letter
containment. The analytic layer re-derives the exclusion bounds from the
descriptors themselves (reachable-product table for discrete groups, summed
radii against the summed centers for intervals, minimum level against the
valuation of the summed centers for balls), so a loosened certificate is
rejected even though random sampling would almost never land on a violating
selection.
"""

from __future__ import annotations

import hashlib
import itertools
import time
from dataclasses import dataclass
from fractions import Fraction
from random import Random
from typing import Sequence

from .errors import (
    CapExceeded,
    ConfigMismatch,
    EmptyIntersection,
    ExhaustiveNotFinite,
    PointsEqual,
    WitnessInExcluded,
    WordIsIdentity,
)
from .groups import (
    FINITE_TABLE,
    RATIONAL_EUCLIDEAN,
    FiniteSet,
    GroupConfig,
    GroupElement,
    Interval,
    PadicBall,
    Value,
)
from .rational import INFINITE_LEVEL, padic_valuation
from .wedge import (
    AroundIdentity,
    AwayFromIdentity,
    IdentityDefaults,
    XNeighborhood,
    around,
    away,
    enumerate_x_points,
    sample_x,
    x_contains,
    x_intersect,
)
from .words import (
    DEFAULT_CAP,
    EPSILON,
    Letter,
    ReducedWord,
    Word,
    format_word,
    iter_position_subsets,
    reduce_word,
    word_inv,
)

CERTIFICATE_VERSION = 1


@dataclass(frozen=True)
class SubtermProvenance:
    """One contributing one-group position set and its value.

    Positions index the word the construction enumerated; for certificates
    separating from a point that word is the given word followed by the
    inverse of the target, so indices may reach past the stored word.
    """

    group: str
    positions: tuple[int, ...]
    value: str


@dataclass(frozen=True)
class SeparationCertificate:
    word: Word
    neighborhoods: tuple[XNeighborhood, ...]
    provenance: tuple[tuple[SubtermProvenance, ...], ...]
    config_digest: str
    defaults: IdentityDefaults
    forbidden: tuple[ReducedWord, ...]
    version: int = CERTIFICATE_VERSION


@dataclass(frozen=True)
class Violation:
    selection: str
    reduces_to: str


@dataclass(frozen=True)
class VerificationReport:
    mode: str
    k: int | None
    seed: int | None
    selections_checked: int
    violations: tuple[Violation, ...]
    elapsed: float

    @property
    def ok(self) -> bool:
        return not self.violations


def derive_seed(seed: int, *parts: object) -> int:
    """Stable sub-seed derivation (hash() is salted, so not usable here)."""
    digest = hashlib.sha256(repr((seed,) + parts).encode()).digest()
    return int.from_bytes(digest[:8], "big")


def uniform_case(
    config: GroupConfig,
    gid: str,
    entries: Sequence[tuple[int, Value | None]],
    defaults: IdentityDefaults | None = None,
) -> list[XNeighborhood]:
    """Neighborhood system for one one-group position set.

    ``entries`` pairs positions with group values, ``None`` marking positions
    holding the identity letter. Non-identity positions receive punctured
    one-group descriptors; identity positions receive an around-identity
    descriptor whose home component is the constructed neighborhood.
    """
    defaults = defaults or IdentityDefaults()
    spec = config.spec(gid)
    xs = [
        GroupElement(gid, v if v is not None else spec.identity_value) for _, v in entries
    ]
    base = config.separate_product_from_identity(xs)
    out: list[XNeighborhood] = []
    for (_, v), u in zip(entries, base):
        if v is None:
            out.append(around(config, defaults, overrides={gid: u}))
        else:
            out.append(away(config, u))
    return out


def _centered_at(shape, value) -> bool:
    if isinstance(shape, FiniteSet):
        return shape.values == (value,)
    return shape.center == value


def _build_position_systems(
    config: GroupConfig, letters: tuple[Letter, ...], defaults: IdentityDefaults
) -> tuple[list[XNeighborhood], list[tuple[SubtermProvenance, ...]]]:
    n = len(letters)
    systems: list[list[XNeighborhood]] = [[] for _ in range(n)]
    provenance: list[list[SubtermProvenance]] = [[] for _ in range(n)]
    identity_positions = [m for m, l in enumerate(letters) if l.group is None]
    for gid in config.group_ids:
        spec = config.spec(gid)
        tagged = [m for m, l in enumerate(letters) if l.group == gid]
        if not tagged:
            continue
        pool = sorted(tagged + identity_positions)
        for subset in iter_position_subsets(pool):
            value = spec.product_value(
                letters[m].value for m in subset if letters[m].group is not None
            )
            if value == spec.identity_value:
                continue
            entries = [
                (m, letters[m].value if letters[m].group is not None else None)
                for m in subset
            ]
            ws = uniform_case(config, gid, entries, defaults)
            mark = SubtermProvenance(gid, subset, spec.format_value(value))
            for (m, _), w in zip(entries, ws):
                systems[m].append(w)
                provenance[m].append(mark)
    neighborhoods: list[XNeighborhood] = []
    for m in range(n):
        if systems[m]:
            # Every contributed descriptor is centered at this very letter,
            # so the running intersection can never come up empty.
            for contributed in systems[m]:
                if isinstance(contributed, AwayFromIdentity):
                    assert _centered_at(contributed.neighborhood.shape, letters[m].value)
            xn = systems[m][0]
            for other in systems[m][1:]:
                xn = x_intersect(config, xn, other)
            neighborhoods.append(xn)
        else:
            # Only positions holding the identity letter can end up uncovered:
            # a tagged letter is itself a non-identity singleton set.
            assert letters[m].group is None, "uncovered non-identity position"
            neighborhoods.append(around(config, defaults))
    return neighborhoods, [tuple(p) for p in provenance]


def separate_word_from_identity(
    config: GroupConfig,
    word: Word,
    defaults: IdentityDefaults | None = None,
    cap: int = DEFAULT_CAP,
) -> SeparationCertificate:
    """Certificate that no pointwise selection multiplies to the identity."""
    defaults = defaults or IdentityDefaults()
    if reduce_word(config, word, cap).is_empty:
        raise WordIsIdentity("the word reduces to the identity")
    neighborhoods, provenance = _build_position_systems(config, word.letters, defaults)
    return SeparationCertificate(
        word=word,
        neighborhoods=tuple(neighborhoods),
        provenance=tuple(provenance),
        config_digest=config.digest,
        defaults=defaults,
        forbidden=(ReducedWord(()),),
    )


def separate_from_point(
    config: GroupConfig,
    word: Word,
    target: ReducedWord,
    defaults: IdentityDefaults | None = None,
    cap: int = DEFAULT_CAP,
) -> SeparationCertificate:
    """Certificate that no pointwise selection multiplies to the target value.

    Works on the word extended by the inverse of the target and keeps the
    leading positions; the cap applies to the extended length.
    """
    defaults = defaults or IdentityDefaults()
    extended = Word(word.letters + word_inv(config, target).letters)
    if reduce_word(config, extended, cap).is_empty:
        raise PointsEqual("the word's value equals the target")
    neighborhoods, provenance = _build_position_systems(config, extended.letters, defaults)
    head = len(word.letters)
    return SeparationCertificate(
        word=word,
        neighborhoods=tuple(neighborhoods[:head]),
        provenance=tuple(provenance[:head]),
        config_digest=config.digest,
        defaults=defaults,
        forbidden=(target,),
    )


def certify_open_complement(
    config: GroupConfig,
    witnesses: Sequence[Word],
    excluded: Sequence[ReducedWord],
    defaults: IdentityDefaults | None = None,
    cap: int = DEFAULT_CAP,
) -> list[SeparationCertificate]:
    """One certificate per witness whose product set avoids every excluded value.

    An empty excluded set needs no witnesses-side evidence and yields no
    certificates.
    """
    defaults = defaults or IdentityDefaults()
    if not excluded:
        return []
    excluded_keys = {e.letters for e in excluded}
    out: list[SeparationCertificate] = []
    for word in witnesses:
        value = reduce_word(config, word, cap)
        if value.letters in excluded_keys:
            raise WitnessInExcluded(
                f"witness {format_word(config, word) or EPSILON} has an excluded value"
            )
        certs = [separate_from_point(config, word, e, defaults, cap) for e in excluded]
        neighborhoods = list(certs[0].neighborhoods)
        provenance = [list(p) for p in certs[0].provenance]
        for cert, target in zip(certs[1:], excluded[1:]):
            for m, xn in enumerate(cert.neighborhoods):
                try:
                    neighborhoods[m] = x_intersect(config, neighborhoods[m], xn)
                except EmptyIntersection as exc:
                    raise EmptyIntersection(
                        f"position {m}: combining against "
                        f"{format_word(config, target) or EPSILON}: {exc}"
                    ) from exc
                provenance[m].extend(cert.provenance[m])
        out.append(
            SeparationCertificate(
                word=word,
                neighborhoods=tuple(neighborhoods),
                provenance=tuple(tuple(p) for p in provenance),
                config_digest=config.digest,
                defaults=defaults,
                forbidden=tuple(excluded),
            )
        )
    return out


# -- validation --------------------------------------------------------------


def _structural_problems(config: GroupConfig, cert: SeparationCertificate) -> list[str]:
    problems: list[str] = []
    letters = cert.word.letters
    if len(cert.neighborhoods) != len(letters):
        return [
            f"{len(cert.neighborhoods)} descriptors for {len(letters)} letters"
        ]
    for m, (l, xn) in enumerate(zip(letters, cert.neighborhoods)):
        if l.group is not None:
            if not isinstance(xn, AwayFromIdentity):
                problems.append(f"position {m}: non-identity letter without an away descriptor")
                continue
            if xn.group != l.group:
                problems.append(
                    f"position {m}: descriptor group {xn.group} does not match letter group {l.group}"
                )
                continue
            if not xn.neighborhood.punctured or xn.neighborhood.group != xn.group:
                problems.append(f"position {m}: away descriptor must stay punctured in its group")
                continue
            try:
                config.validate_neighborhood(xn.neighborhood)
            except Exception as exc:  # malformed shape
                problems.append(f"position {m}: {exc}")
                continue
            if not x_contains(config, xn, l):
                problems.append(f"position {m}: letter escapes its descriptor")
        else:
            if not isinstance(xn, AroundIdentity):
                problems.append(f"position {m}: identity letter without an around descriptor")
                continue
            groups = tuple(n.group for n in xn.components)
            if groups != config.group_ids:
                problems.append(
                    f"position {m}: components cover {groups}, expected {config.group_ids}"
                )
                continue
            for n in xn.components:
                try:
                    config.validate_neighborhood(n)
                except Exception as exc:
                    problems.append(f"position {m}: component {n.group}: {exc}")
                    break
                if not config.contains(n, config.identity(n.group)):
                    problems.append(
                        f"position {m}: component {n.group} misses the identity"
                    )
                    break
    return problems


def _trace(
    cert: SeparationCertificate,
    gid: str,
    m: int,
    ext: tuple[Letter, ...],
    head: int,
) -> tuple:
    """Per-position trace of the group-gid part of the m-th descriptor.

    Returns ("finite", values) / ("interval", center, radius) /
    ("ball", center, level); tail positions are exact points.
    """
    l = ext[m]
    if m >= head:
        v = l.value
        return ("point", v)
    xn = cert.neighborhoods[m]
    if isinstance(xn, AwayFromIdentity):
        n = xn.neighborhood
    else:
        n = next(c for c in xn.components if c.group == gid)
    shape = n.shape
    if isinstance(shape, FiniteSet):
        return ("finite", shape.values, n.punctured)
    if isinstance(shape, Interval):
        return ("interval", shape.center, shape.radius)
    assert isinstance(shape, PadicBall)
    return ("ball", shape.center, shape.level)


def _first_bound_problem(
    config: GroupConfig,
    cert: SeparationCertificate,
    gid: str,
    ext: tuple[Letter, ...],
    head: int,
    label: str,
) -> str | None:
    """Lexicographically first one-group position set whose descriptors can
    multiply back to the identity, or None when all the bounds hold."""
    spec = config.spec(gid)
    tagged = [m for m, l in enumerate(ext) if l.group == gid]
    if not tagged:
        return None
    idpos = [m for m, l in enumerate(ext) if l.group is None]
    pool = sorted(tagged + idpos)
    traces = {m: _trace(cert, gid, m, ext, head) for m in pool}
    identity = spec.identity_value

    if spec.kind == FINITE_TABLE:

        def candidates(m: int) -> tuple:
            tr = traces[m]
            if tr[0] == "point":
                return (tr[1],)
            values = tr[1]
            if tr[2]:  # punctured
                return tuple(v for v in values if v != identity)
            return values

        def rec_finite(start: int, value, reach: frozenset, chosen: tuple[int, ...]):
            for idx in range(start, len(pool)):
                m = pool[idx]
                l = ext[m]
                v2 = value if l.group is None else spec.mul_value(value, l.value)
                reach2 = frozenset(
                    spec.mul_value(r, c) for r in reach for c in candidates(m)
                )
                chosen2 = chosen + (m,)
                if v2 != identity and identity in reach2:
                    return chosen2
                found = rec_finite(idx + 1, v2, reach2, chosen2)
                if found is not None:
                    return found
            return None

        bad = rec_finite(0, identity, frozenset((identity,)), ())
        if bad is not None:
            return (
                f"group {gid}, positions {list(bad)} (target {label}): "
                "descriptors reach the identity"
            )
        return None

    if spec.kind == RATIONAL_EUCLIDEAN:

        def rec_interval(start, value, center, radius, chosen):
            for idx in range(start, len(pool)):
                m = pool[idx]
                l = ext[m]
                tr = traces[m]
                if tr[0] == "point":
                    c2, r2 = center + tr[1], radius
                else:
                    c2, r2 = center + tr[1], radius + tr[2]
                v2 = value if l.group is None else value + l.value
                chosen2 = chosen + (m,)
                if len(chosen2) >= 2 and v2 != 0 and abs(c2) < r2:
                    return chosen2
                found = rec_interval(idx + 1, v2, c2, r2, chosen2)
                if found is not None:
                    return found
            return None

        bad = rec_interval(0, Fraction(0), Fraction(0), Fraction(0), ())
        if bad is not None:
            return (
                f"group {gid}, positions {list(bad)} (target {label}): "
                "summed radii cover zero"
            )
        return None

    prime = spec.prime
    assert prime is not None

    def rec_ball(start, value, center, level, chosen):
        for idx in range(start, len(pool)):
            m = pool[idx]
            l = ext[m]
            tr = traces[m]
            if tr[0] == "point":
                c2, k2 = center + tr[1], level
            else:
                c2, k2 = center + tr[1], min(level, tr[2])
            v2 = value if l.group is None else value + l.value
            chosen2 = chosen + (m,)
            if len(chosen2) >= 2 and v2 != 0 and padic_valuation(c2, prime) >= k2:
                return chosen2
            found = rec_ball(idx + 1, v2, c2, k2, chosen2)
            if found is not None:
                return found
        return None

    bad = rec_ball(0, Fraction(0), Fraction(0), INFINITE_LEVEL, ())
    if bad is not None:
        return (
            f"group {gid}, positions {list(bad)} (target {label}): "
            "ball levels admit the summed center"
        )
    return None


def _audit_problems(
    config: GroupConfig, cert: SeparationCertificate, cap: int
) -> list[str]:
    problems: list[str] = []
    for target in cert.forbidden:
        tail = word_inv(config, target).letters
        ext = cert.word.letters + tail
        label = format_word(config, target) or EPSILON
        if reduce_word(config, Word(ext), max(cap, len(ext))).is_empty:
            problems.append(f"word value equals the forbidden value {label}")
            continue
        for gid in config.group_ids:
            problem = _first_bound_problem(config, cert, gid, ext, len(cert.word.letters), label)
            if problem is not None:
                problems.append(problem)
    return problems


def validate_certificate(
    config: GroupConfig, cert: SeparationCertificate, cap: int = DEFAULT_CAP
) -> list[str]:
    """Structural and analytic problems; an empty list means the certificate
    actually proves its claim against the loaded configuration."""
    if cert.version != CERTIFICATE_VERSION:
        raise ConfigMismatch(f"unsupported certificate version {cert.version}")
    if cert.config_digest != config.digest:
        raise ConfigMismatch("certificate was produced under a different configuration")
    if len(cert.word.letters) > cap:
        raise CapExceeded(f"certificate word length {len(cert.word.letters)} exceeds cap {cap}")
    problems = _structural_problems(config, cert)
    if problems:
        return problems
    return _audit_problems(config, cert, cap)


# -- selection checking ------------------------------------------------------


def check_certificate(
    config: GroupConfig,
    cert: SeparationCertificate,
    mode: str = "sampled",
    k: int = 1000,
    seed: int = 0,
    forbidden: Sequence[ReducedWord] | None = None,
) -> VerificationReport:
    """Evaluate pointwise selections against the forbidden values.

    Exhaustive mode enumerates every selection and is allowed only when all
    descriptors are finite; sampled mode draws k selections from the per-run
    seed. Violations carry the selection in re-parsable word syntax.
    """
    if cert.config_digest != config.digest:
        raise ConfigMismatch("certificate was produced under a different configuration")
    targets = tuple(forbidden) if forbidden is not None else cert.forbidden
    forbidden_keys = {t.letters for t in targets}
    word_cap = max(len(cert.word.letters), 1)
    start = time.perf_counter()
    violations: list[Violation] = []
    checked = 0
    if mode == "exhaustive":
        pools = []
        for m, xn in enumerate(cert.neighborhoods):
            points = enumerate_x_points(config, xn)
            if points is None:
                raise ExhaustiveNotFinite(f"position {m} has an infinite descriptor")
            pools.append(points)
        for selection in itertools.product(*pools):
            checked += 1
            reduced = reduce_word(config, Word(selection), word_cap)
            if reduced.letters in forbidden_keys:
                violations.append(
                    Violation(
                        format_word(config, Word(selection)),
                        format_word(config, reduced),
                    )
                )
        return VerificationReport(
            "exhaustive", None, None, checked, tuple(violations), time.perf_counter() - start
        )
    if mode != "sampled":
        raise ValueError(f"unknown mode {mode!r}")
    for j in range(k):
        rng = Random(derive_seed(seed, j))
        selection = tuple(
            sample_x(config, xn, rng, 1)[0] for xn in cert.neighborhoods
        )
        checked += 1
        reduced = reduce_word(config, Word(selection), word_cap)
        if reduced.letters in forbidden_keys:
            violations.append(
                Violation(
                    format_word(config, Word(selection)), format_word(config, reduced)
                )
            )
    return VerificationReport(
        "sampled", k, seed, checked, tuple(violations), time.perf_counter() - start
    )
