from fractions import Fraction
from random import Random

import pytest

from topfree import (
    AroundIdentity,
    AwayFromIdentity,
    EmptyIntersection,
    FiniteSet,
    IdentityDefaults,
    Interval,
    Neighborhood,
    PadicBall,
    UnknownGroup,
    VariantMismatch,
    around,
    away,
    check_condition_i,
    default_identity_neighborhood,
    enumerate_x_points,
    sample_x,
    x_contains,
    x_intersect,
)
from topfree.words import IDENTITY, Letter


def interval_away(config, center, radius):
    return away(config, Neighborhood("q", Interval(Fraction(center), Fraction(radius))))


def test_away_forces_puncture(config):
    xn = interval_away(config, Fraction(3, 2), Fraction(3, 4))
    assert xn.neighborhood.punctured
    assert not x_contains(config, xn, IDENTITY)


def test_x_contains_around_identity(config):
    xn = around(config, IdentityDefaults())
    assert x_contains(config, xn, IDENTITY)
    assert x_contains(config, xn, Letter("q", Fraction(1, 2)))
    assert not x_contains(config, xn, Letter("q", Fraction(5)))
    assert x_contains(config, xn, Letter("z2", "s"))


def test_x_contains_wrong_group(config):
    xn = interval_away(config, Fraction(3, 2), Fraction(3, 4))
    assert not x_contains(config, xn, Letter("z2", "s"))
    assert x_contains(config, xn, Letter("q", Fraction(1)))


def test_x_intersect_away(config):
    a = interval_away(config, 0, 2)
    b = interval_away(config, 1, 2)
    meet = x_intersect(config, a, b)
    assert isinstance(meet, AwayFromIdentity)
    assert meet.neighborhood.shape == Interval(Fraction(1, 2), Fraction(3, 2))
    assert meet.neighborhood.punctured


def test_x_intersect_around_componentwise(config):
    defaults = IdentityDefaults()
    a = around(config, defaults, {"q": Neighborhood("q", Interval(Fraction(0), Fraction(2)))})
    b = around(config, defaults, {"q": Neighborhood("q", Interval(Fraction(0), Fraction(1, 2)))})
    meet = x_intersect(config, a, b)
    assert isinstance(meet, AroundIdentity)
    q_component = next(n for n in meet.components if n.group == "q")
    assert q_component.shape == Interval(Fraction(0), Fraction(1, 2))


def test_x_intersect_guards(config):
    with pytest.raises(VariantMismatch):
        x_intersect(config, interval_away(config, 0, 1), around(config, IdentityDefaults()))
    with pytest.raises(EmptyIntersection):
        x_intersect(
            config,
            interval_away(config, 0, 1),
            away(config, Neighborhood("z2", FiniteSet(("s",)))),
        )


def test_x_intersect_membership_conjunction(config):
    rng = Random(23)
    defaults = IdentityDefaults()
    for i in range(1000):
        if rng.randrange(2):
            a = interval_away(config, rng.randrange(-3, 4), rng.randrange(1, 4))
            b = interval_away(config, rng.randrange(-3, 4), rng.randrange(1, 4))
        else:
            a = around(config, defaults)
            b = around(
                config,
                defaults,
                {"q": Neighborhood("q", Interval(Fraction(0), Fraction(rng.randrange(1, 5))))},
            )
        try:
            meet = x_intersect(config, a, b)
        except EmptyIntersection:
            continue
        for point in sample_x(config, meet, 100 + i, 3) + [IDENTITY, Letter("q", Fraction(1, 3))]:
            expected = x_contains(config, a, point) and x_contains(config, b, point)
            assert x_contains(config, meet, point) == expected


def test_sample_x_contract(config):
    defaults = IdentityDefaults()
    for xn in (interval_away(config, 2, 1), around(config, defaults)):
        points = sample_x(config, xn, 42, 40)
        assert points == sample_x(config, xn, 42, 40)
        for p in points:
            assert x_contains(config, xn, p)
    singleton = away(config, Neighborhood("z2", FiniteSet(("s",))))
    assert all(p == Letter("z2", "s") for p in sample_x(config, singleton, 1, 10))


def test_around_samples_reach_identity_and_components(config):
    points = sample_x(config, around(config, IdentityDefaults()), 3, 200)
    assert any(p is IDENTITY or p.group is None for p in points)
    assert len({p.group for p in points}) > 2


def test_condition_i_validation(config):
    full_punctured = {
        gid: [Neighborhood(gid, FiniteSet(config.spec(gid).elements), punctured=True)]
        for gid in ("z2", "z3", "s3")
    }
    full_punctured["q"] = [Neighborhood("q", Interval(Fraction(0), Fraction(100)), punctured=True)]
    full_punctured["q2"] = [Neighborhood("q2", PadicBall(Fraction(0), -20), punctured=True)]
    assert check_condition_i(config, full_punctured)
    assert check_condition_i(config, {})
    with pytest.raises(UnknownGroup):
        check_condition_i(config, {"nope": []})


def test_enumerate_x_points(config):
    finite = away(config, Neighborhood("z3", FiniteSet(("t", "t2"))))
    assert {p.value for p in enumerate_x_points(config, finite)} == {"t", "t2"}
    assert enumerate_x_points(config, interval_away(config, 0, 1)) is None
    assert enumerate_x_points(config, around(config, IdentityDefaults())) is None


def test_default_identity_neighborhoods(config):
    defaults = IdentityDefaults(euclidean_radius=Fraction(1, 2), padic_level=3)
    q = default_identity_neighborhood(config, "q", defaults)
    assert q.shape == Interval(Fraction(0), Fraction(1, 2))
    q2 = default_identity_neighborhood(config, "q2", defaults)
    assert q2.shape == PadicBall(Fraction(0), 3)
    z2 = default_identity_neighborhood(config, "z2", defaults)
    assert z2.shape == FiniteSet(("1", "s"))
