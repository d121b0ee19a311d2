"""The wedge space X: all configured groups glued at a single identity point.

A subset of X is open exactly when its trace on every group is open there.
Only the two shapes the separation construction produces are represented:
a punctured open set inside one group (away from the identity), and a union
of identity neighborhoods, one per group (around the identity).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from random import Random
from typing import Mapping, Sequence

from .errors import ConfigError, EmptyIntersection, EmptyNeighborhood, VariantMismatch
from .groups import (
    FINITE_TABLE,
    RATIONAL_EUCLIDEAN,
    FiniteSet,
    GroupConfig,
    Interval,
    Neighborhood,
    PadicBall,
    replace_punctured,
)
from .words import IDENTITY, Letter

# Points of X are exactly the letters words are made of.
XPoint = Letter
IDENTITY_POINT = IDENTITY


@dataclass(frozen=True)
class AwayFromIdentity:
    """Punctured open subset of a single group; never contains the identity."""

    group: str
    neighborhood: Neighborhood


@dataclass(frozen=True)
class AroundIdentity:
    """One identity neighborhood per configured group, in configuration order."""

    components: tuple[Neighborhood, ...]


XNeighborhood = AwayFromIdentity | AroundIdentity


@dataclass(frozen=True)
class IdentityDefaults:
    """Default identity-neighborhood scale per group kind.

    Finite groups always use the whole group; the scales below size the
    euclidean and p-adic components.
    """

    euclidean_radius: Fraction = Fraction(1)
    padic_level: int = 1


def default_identity_neighborhood(
    config: GroupConfig, gid: str, defaults: IdentityDefaults
) -> Neighborhood:
    spec = config.spec(gid)
    if spec.kind == FINITE_TABLE:
        return Neighborhood(gid, FiniteSet(spec.elements))
    if spec.kind == RATIONAL_EUCLIDEAN:
        if defaults.euclidean_radius <= 0:
            raise ConfigError("euclidean identity radius must be positive")
        return Neighborhood(gid, Interval(Fraction(0), defaults.euclidean_radius))
    return Neighborhood(gid, PadicBall(Fraction(0), defaults.padic_level))


def away(config: GroupConfig, neighborhood: Neighborhood) -> AwayFromIdentity:
    """Wrap a one-group descriptor, forcing the puncture."""
    punctured = replace_punctured(neighborhood, True)
    config.validate_neighborhood(punctured)
    return AwayFromIdentity(neighborhood.group, punctured)


def around(
    config: GroupConfig,
    defaults: IdentityDefaults,
    overrides: Mapping[str, Neighborhood] | None = None,
) -> AroundIdentity:
    """Identity neighborhood in X: per-group components, defaults unless overridden."""
    overrides = overrides or {}
    components = []
    for gid in config.group_ids:
        n = overrides.get(gid, default_identity_neighborhood(config, gid, defaults))
        config.validate_neighborhood(n)
        if not config.contains(n, config.identity(gid)):
            raise ConfigError(f"component for group {gid} does not contain the identity")
        components.append(n)
    return AroundIdentity(tuple(components))


def x_contains(config: GroupConfig, xn: XNeighborhood, p: XPoint) -> bool:
    if isinstance(xn, AwayFromIdentity):
        if p.group is None:
            # A well-formed away descriptor is punctured and excludes the
            # identity; unpunctured (tampered) ones are judged honestly.
            return config.contains(xn.neighborhood, config.identity(xn.group))
        if p.group != xn.group:
            return False
        return config.contains(xn.neighborhood, config.element(p.group, p.value))
    if p.group is None:
        return True
    for component in xn.components:
        if component.group == p.group:
            return config.contains(component, config.element(p.group, p.value))
    return False


def x_intersect(config: GroupConfig, a: XNeighborhood, b: XNeighborhood) -> XNeighborhood:
    if isinstance(a, AwayFromIdentity) and isinstance(b, AwayFromIdentity):
        if a.group != b.group:
            # Punctured sets inside distinct groups meet only at the removed
            # identity, so they share no points at all.
            raise EmptyIntersection(
                f"away sets in {a.group} and {b.group} are disjoint"
            )
        return away(config, config.intersect(a.neighborhood, b.neighborhood))
    if isinstance(a, AroundIdentity) and isinstance(b, AroundIdentity):
        by_group = {n.group: n for n in b.components}
        merged = tuple(
            config.intersect(n, by_group[n.group]) for n in a.components
        )
        return AroundIdentity(merged)
    raise VariantMismatch("cannot intersect away-from-identity with around-identity")


def sample_x(config: GroupConfig, xn: XNeighborhood, rng: Random | int, k: int) -> list[XPoint]:
    """k members of the X-neighborhood; around-identity draws hit the identity
    point with fixed weight 1/4 and otherwise sample a random component."""
    if k < 1:
        raise ValueError("sample count must be >= 1")
    if isinstance(rng, int):
        rng = Random(rng)
    out: list[XPoint] = []
    if isinstance(xn, AwayFromIdentity):
        identity_value = config.spec(xn.group).identity_value
        for g in config.sample(xn.neighborhood, rng, k):
            out.append(IDENTITY_POINT if g.value == identity_value else Letter(g.group, g.value))
        return out
    components = xn.components
    if not components:
        raise EmptyNeighborhood("around-identity descriptor with no components")
    for _ in range(k):
        if rng.randrange(4) == 0:
            out.append(IDENTITY_POINT)
            continue
        component = components[rng.randrange(len(components))]
        g = config.sample(component, rng, 1)[0]
        if g.value == config.spec(g.group).identity_value:
            out.append(IDENTITY_POINT)
        else:
            out.append(Letter(g.group, g.value))
    return out


def check_condition_i(
    config: GroupConfig, per_group: Mapping[str, Sequence[Neighborhood]]
) -> bool:
    """Validate an externally supplied per-group open description.

    Every named group must be configured and every descriptor must be a
    well-formed open shape of that group; openness in X is then automatic.
    """
    for gid, descriptors in per_group.items():
        config.spec(gid)  # raises UnknownGroup
        for n in descriptors:
            if n.group != gid:
                raise ConfigError(
                    f"descriptor for group {n.group} listed under group {gid}"
                )
            config.validate_neighborhood(n)
    return True


def enumerate_x_points(config: GroupConfig, xn: XNeighborhood) -> list[XPoint] | None:
    """All points of a finitely-representable X-neighborhood, or None if infinite."""
    if isinstance(xn, AwayFromIdentity):
        shape = xn.neighborhood.shape
        if not isinstance(shape, FiniteSet):
            return None
        identity_value = config.spec(xn.group).identity_value
        points = [Letter(xn.group, v) for v in shape.values if v != identity_value]
        if not xn.neighborhood.punctured and identity_value in shape.values:
            points.insert(0, IDENTITY_POINT)
        return points
    points: list[XPoint] = [IDENTITY_POINT]
    for component in xn.components:
        shape = component.shape
        if not isinstance(shape, FiniteSet):
            return None
        identity_value = config.spec(component.group).identity_value
        for v in shape.values:
            if v != identity_value:
                points.append(Letter(component.group, v))
    return points
