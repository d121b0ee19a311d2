from dataclasses import replace
from fractions import Fraction
from random import Random

import pytest

from topfree import (
    AroundIdentity,
    AwayFromIdentity,
    ConfigMismatch,
    ExhaustiveNotFinite,
    FiniteSet,
    GroupConfig,
    GroupSpec,
    Interval,
    PadicBall,
    PointsEqual,
    ProductIsIdentity,
    WitnessInExcluded,
    WordIsIdentity,
    certify_open_complement,
    check_certificate,
    parse_reduced,
    parse_word,
    separate_from_point,
    separate_word_from_identity,
    uniform_case,
    validate_certificate,
    x_contains,
)
from topfree.separation import derive_seed
from topfree.wedge import sample_x
from topfree.words import format_word, reduce_word


def test_uniform_case_singleton_interval(config):
    [xn] = uniform_case(config, "q", [(0, Fraction(3, 2))])
    assert isinstance(xn, AwayFromIdentity)
    assert xn.neighborhood.shape == Interval(Fraction(3, 2), Fraction(3, 4))
    assert xn.neighborhood.punctured


def test_uniform_case_discrete(config):
    [xn] = uniform_case(config, "z2", [(1, "s")])
    assert xn.neighborhood.shape == FiniteSet(("s",))


def test_uniform_case_identity_entry(config):
    xns = uniform_case(config, "q", [(0, Fraction(1)), (1, None), (2, Fraction(2))])
    assert isinstance(xns[1], AroundIdentity)
    home = next(n for n in xns[1].components if n.group == "q")
    assert home.shape.center == 0
    with pytest.raises(ProductIsIdentity):
        uniform_case(config, "q", [(0, Fraction(1)), (1, None), (2, Fraction(-1))])


def test_separate_worked_example(config):
    word = parse_word(config, "q:3/2 z2:s q:-3/2")
    cert = separate_word_from_identity(config, word)
    away0, away1, away2 = cert.neighborhoods
    assert away0.neighborhood.shape == Interval(Fraction(3, 2), Fraction(3, 4))
    assert away1.neighborhood.shape == FiniteSet(("s",))
    assert away2.neighborhood.shape == Interval(Fraction(-3, 2), Fraction(3, 4))
    # the zero-valued pair {0,2} contributes nothing
    assert [len(p) for p in cert.provenance] == [1, 1, 1]
    report = check_certificate(config, cert, "sampled", k=500, seed=9)
    assert report.ok and report.selections_checked == 500


def test_separate_unreduced_pair(config):
    word = parse_word(config, "q:1 q:1")
    cert = separate_word_from_identity(config, word)
    for xn in cert.neighborhoods:
        assert xn.neighborhood.shape == Interval(Fraction(1), Fraction(1, 2))
        assert xn.neighborhood.punctured
    assert [len(p) for p in cert.provenance] == [2, 2]


def test_separate_identity_word_rejected(config):
    with pytest.raises(WordIsIdentity):
        separate_word_from_identity(config, parse_word(config, "z2:s z2:s"))


def test_identity_letter_gets_around_descriptor(config):
    word = parse_word(config, "z2:s 1 z3:t")
    cert = separate_word_from_identity(config, word)
    assert isinstance(cert.neighborhoods[1], AroundIdentity)
    assert validate_certificate(config, cert) == []


def test_certificate_determinism(config):
    word = parse_word(config, "q:3/2 z2:s q:-3/2 1 q2:4")
    a = separate_word_from_identity(config, word)
    b = separate_word_from_identity(config, word)
    assert a == b


def test_monotonicity_of_intersection(config):
    word = parse_word(config, "q:1 q:1 z3:t q:2")
    cert = separate_word_from_identity(config, word)
    letters = word.letters
    for m, (marks, xn) in enumerate(zip(cert.provenance, cert.neighborhoods)):
        samples = sample_x(config, xn, derive_seed(1, m), 30)
        for mark in marks:
            entries = [
                (p, letters[p].value if letters[p].group is not None else None)
                for p in mark.positions
            ]
            system = uniform_case(config, mark.group, entries, cert.defaults)
            contributed = system[mark.positions.index(m)]
            for point in samples:
                assert x_contains(config, contributed, point)


def test_separate_from_point(config):
    u = parse_reduced(config, "z2:s")
    v = parse_reduced(config, "z3:t")
    cert = separate_from_point(config, u.as_word(), v)
    assert len(cert.neighborhoods) == 1
    assert cert.neighborhoods[0].neighborhood.shape == FiniteSet(("s",))
    report = check_certificate(config, cert, "exhaustive")
    assert report.ok and report.selections_checked == 1
    with pytest.raises(PointsEqual):
        separate_from_point(config, u.as_word(), u)


def test_separate_from_empty_target_matches_identity_case(config):
    word = parse_word(config, "q:3/2 z2:s q:-3/2")
    via_point = separate_from_point(config, word, parse_reduced(config, ""))
    direct = separate_word_from_identity(config, word)
    assert via_point.neighborhoods == direct.neighborhoods


def test_certify_open_complement(config):
    witnesses = [parse_word(config, "z3:t")]
    excluded = [parse_reduced(config, ""), parse_reduced(config, "z2:s")]
    [cert] = certify_open_complement(config, witnesses, excluded)
    assert cert.forbidden == tuple(excluded)
    assert validate_certificate(config, cert) == []
    report = check_certificate(config, cert, "sampled", k=400, seed=3)
    assert report.ok
    with pytest.raises(WitnessInExcluded):
        certify_open_complement(config, [parse_word(config, "z2:s")], excluded)
    assert certify_open_complement(config, witnesses, []) == []


def test_exhaustive_requires_finite(config):
    cert = separate_word_from_identity(config, parse_word(config, "q:1"))
    with pytest.raises(ExhaustiveNotFinite):
        check_certificate(config, cert, "exhaustive")


def test_exhaustive_enumerates_finite_only_configuration():
    finite_config = GroupConfig(
        [
            GroupSpec.finite_table("z2", ("1", "s"), (("1", "s"), ("s", "1"))),
            GroupSpec.finite_table(
                "z3", ("1", "t", "t2"), (("1", "t", "t2"), ("t", "t2", "1"), ("t2", "1", "t"))
            ),
        ]
    )
    word = parse_word(finite_config, "z2:s 1 z3:t")
    cert = separate_word_from_identity(finite_config, word)
    report = check_certificate(finite_config, cert, "exhaustive")
    assert report.ok
    # both group enumerations pin the middle position to the identity point
    assert report.selections_checked == 1
    wide = separate_word_from_identity(finite_config, parse_word(finite_config, "1 z3:t"))
    wide_report = check_certificate(finite_config, wide, "exhaustive")
    assert wide_report.ok
    # identity + s from the z2 default, t from the shrunk z3 home, times {t}
    assert wide_report.selections_checked > 1


def test_digest_mismatch_rejected(config):
    cert = separate_word_from_identity(config, parse_word(config, "z2:s"))
    broken = replace(cert, config_digest="0" * 64)
    with pytest.raises(ConfigMismatch):
        validate_certificate(config, broken)
    with pytest.raises(ConfigMismatch):
        check_certificate(config, broken)


def test_validation_catches_cleared_puncture(config):
    cert = separate_word_from_identity(config, parse_word(config, "q:2"))
    xn = cert.neighborhoods[0]
    tampered = replace(
        cert,
        neighborhoods=(AwayFromIdentity(xn.group, replace(xn.neighborhood, punctured=False)),),
    )
    problems = validate_certificate(config, tampered)
    # rejected structurally even though the interval happens to exclude zero
    assert problems and "punctured" in problems[0]


def test_validation_audit_catches_loosened_ball(config):
    word = parse_word(config, "q2:1 q2:1")
    cert = separate_word_from_identity(config, word)
    xn = cert.neighborhoods[0]
    assert xn.neighborhood.shape == PadicBall(Fraction(1), 2)
    loos = replace(
        cert,
        neighborhoods=(
            AwayFromIdentity(xn.group, replace(xn.neighborhood, shape=PadicBall(Fraction(1), 1))),
        )
        + cert.neighborhoods[1:],
    )
    problems = validate_certificate(config, loos)
    assert problems and "ball levels" in problems[0]
    # an explicit violating selection exists: (-1, 1)
    y = parse_word(config, "q2:-1 q2:1")
    assert all(
        x_contains(config, xn_, l) for xn_, l in zip(loos.neighborhoods, y.letters)
    )
    assert reduce_word(config, y).is_empty


def test_validation_audit_catches_widened_interval(config):
    word = parse_word(config, "q:1 q:1")
    cert = separate_word_from_identity(config, word)
    widened = []
    for xn in cert.neighborhoods:
        widened.append(
            AwayFromIdentity(
                xn.group,
                replace(xn.neighborhood, shape=Interval(Fraction(1), Fraction(3))),
            )
        )
    tampered = replace(cert, neighborhoods=tuple(widened))
    problems = validate_certificate(config, tampered)
    assert problems and "radii" in problems[0]


def test_validation_accepts_all_emitted_certificates(config):
    rng = Random(2)
    from topfree.proptests import random_word

    for _ in range(60):
        word = random_word(config, rng, 7, min_len=1)
        if reduce_word(config, word).is_empty:
            continue
        cert = separate_word_from_identity(config, word)
        assert validate_certificate(config, cert) == []


def test_audit_is_sound_against_exhaustive_ground_truth():
    # On an all-finite configuration, whatever the audit accepts must be
    # genuinely violation-free under full enumeration, tampering included.
    fc = GroupConfig(
        [
            GroupSpec.finite_table("z2", ("1", "s"), (("1", "s"), ("s", "1"))),
            GroupSpec.finite_table(
                "z3", ("1", "t", "t2"), (("1", "t", "t2"), ("t", "t2", "1"), ("t2", "1", "t"))
            ),
        ]
    )
    from topfree.proptests import random_word

    rng = Random(99)
    audited = 0
    for _ in range(200):
        word = random_word(fc, rng, 5, min_len=1)
        if reduce_word(fc, word).is_empty:
            continue
        cert = separate_word_from_identity(fc, word)
        neighborhoods = list(cert.neighborhoods)
        m = rng.randrange(len(neighborhoods))
        xn = neighborhoods[m]
        if isinstance(xn, AwayFromIdentity):
            spec = fc.spec(xn.group)
            widened = tuple(
                sorted(set(xn.neighborhood.shape.values) | {spec.elements[rng.randrange(len(spec.elements))]})
            )
            neighborhoods[m] = AwayFromIdentity(
                xn.group, replace(xn.neighborhood, shape=FiniteSet(widened))
            )
        else:
            components = list(xn.components)
            j = rng.randrange(len(components))
            spec = fc.spec(components[j].group)
            widened = tuple(
                sorted(set(components[j].shape.values) | {spec.elements[rng.randrange(len(spec.elements))]})
            )
            components[j] = replace(components[j], shape=FiniteSet(widened))
            neighborhoods[m] = AroundIdentity(tuple(components))
        mutant = replace(cert, neighborhoods=tuple(neighborhoods))
        problems = validate_certificate(fc, mutant)
        report = check_certificate(fc, mutant, "exhaustive")
        audited += 1
        if not problems:
            assert not report.violations, (format_word(fc, word), report.violations[0])
    assert audited > 100


def test_widened_finite_set_detected_both_ways():
    fc = GroupConfig(
        [
            GroupSpec.finite_table(
                "z3", ("1", "t", "t2"), (("1", "t", "t2"), ("t", "t2", "1"), ("t2", "1", "t"))
            ),
        ]
    )
    word = parse_word(fc, "z3:t z3:t")
    cert = separate_word_from_identity(fc, word)
    xn = cert.neighborhoods[0]
    mutant = replace(
        cert,
        neighborhoods=(
            AwayFromIdentity("z3", replace(xn.neighborhood, shape=FiniteSet(("t", "t2")))),
        )
        + cert.neighborhoods[1:],
    )
    problems = validate_certificate(fc, mutant)
    assert problems and "reach the identity" in problems[0]
    report = check_certificate(fc, mutant, "exhaustive")
    assert any(v.reduces_to == "" for v in report.violations)


def test_violations_reproduce(config):
    # force a violation by checking an honest certificate against its own value
    word = parse_word(config, "z2:s")
    cert = separate_word_from_identity(config, word)
    target = reduce_word(config, word)
    report = check_certificate(config, cert, "exhaustive", forbidden=[target])
    assert not report.ok
    violation = report.violations[0]
    replayed = reduce_word(config, parse_word(config, violation.selection))
    assert format_word(config, replayed) == violation.reduces_to
