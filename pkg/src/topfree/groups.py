"""Concrete Hausdorff groups, neighborhood descriptors, and identity separation.

Three group families are supported:

* ``finite_table`` -- a finite group given by an explicit multiplication
  table over element names, discrete topology;
* ``rational_euclidean`` -- the additive rationals with the order topology
  (open intervals with rational center and radius);
* ``rational_padic`` -- the additive rationals with the p-adic topology
  (balls ``{y : v_p(y - c) >= k}``).

All arithmetic is exact; elements of the rational kinds are
``fractions.Fraction`` values, elements of finite groups are names from the
loaded table.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, replace
from fractions import Fraction
from random import Random
from typing import Iterable, Sequence, Union

from .errors import (
    ConfigError,
    EmptyIntersection,
    EmptyNeighborhood,
    GroupMismatch,
    ProductIsIdentity,
    ShapeMismatch,
    UnknownGroup,
)
from .rational import format_rational, is_prime, padic_valuation, parse_rational

FINITE_TABLE = "finite_table"
RATIONAL_EUCLIDEAN = "rational_euclidean"
RATIONAL_PADIC = "rational_padic"

CONFIG_FORMAT_VERSION = 1

Value = Union[str, Fraction]


@dataclass(frozen=True)
class GroupElement:
    group: str
    value: Value


@dataclass(frozen=True)
class FiniteSet:
    """Finite subset of a discrete group, listed by element name."""

    values: tuple[str, ...]


@dataclass(frozen=True)
class Interval:
    """Open rational interval (center - radius, center + radius)."""

    center: Fraction
    radius: Fraction


@dataclass(frozen=True)
class PadicBall:
    """{y : v_p(y - center) >= level}; p comes from the group."""

    center: Fraction
    level: int


Shape = Union[FiniteSet, Interval, PadicBall]


@dataclass(frozen=True)
class Neighborhood:
    """Open set of one group; ``punctured`` removes the identity point."""

    group: str
    shape: Shape
    punctured: bool = False


class GroupSpec:
    """One configured group: id, kind, parameters, and the group operations."""

    def __init__(self, gid: str, kind: str):
        if not gid or any(ch.isspace() or ch == ":" for ch in gid):
            raise ConfigError(f"bad group id {gid!r}: must be nonempty, no spaces or ':'")
        self.id = gid
        self.kind = kind
        self.elements: tuple[str, ...] = ()
        self.prime: int | None = None
        self._table: dict[tuple[str, str], str] = {}
        self._inverse: dict[str, str] = {}
        self._identity_name: str | None = None

    # -- constructors ---------------------------------------------------

    @classmethod
    def finite_table(cls, gid: str, elements: Sequence[str], rows: Sequence[Sequence[str]]) -> "GroupSpec":
        spec = cls(gid, FINITE_TABLE)
        names = tuple(elements)
        if not names:
            raise ConfigError(f"group {gid}: empty element list")
        if len(set(names)) != len(names):
            raise ConfigError(f"group {gid}: duplicate element names")
        if len(rows) != len(names):
            raise ConfigError(f"group {gid}: table has {len(rows)} rows, expected {len(names)}")
        table: dict[tuple[str, str], str] = {}
        for i, row in enumerate(rows):
            if len(row) != len(names):
                raise ConfigError(f"group {gid}: row {i} has {len(row)} entries, expected {len(names)}")
            for j, entry in enumerate(row):
                if entry not in names:
                    raise ConfigError(
                        f"group {gid}: closure violated at row {i}, column {j}: {entry!r} is not an element"
                    )
                table[names[i], names[j]] = entry
        spec.elements = names
        spec._table = table
        spec._validate_axioms()
        return spec

    @classmethod
    def euclidean(cls, gid: str) -> "GroupSpec":
        return cls(gid, RATIONAL_EUCLIDEAN)

    @classmethod
    def padic(cls, gid: str, prime: int) -> "GroupSpec":
        if not is_prime(prime):
            raise ConfigError(f"group {gid}: p = {prime} is not prime")
        spec = cls(gid, RATIONAL_PADIC)
        spec.prime = prime
        return spec

    def _validate_axioms(self) -> None:
        names, table = self.elements, self._table
        identity = None
        for e in names:
            if all(table[e, x] == x and table[x, e] == x for x in names):
                identity = e
                break
        if identity is None:
            raise ConfigError(f"group {self.id}: no identity element")
        self._identity_name = identity
        for i, a in enumerate(names):
            for j, b in enumerate(names):
                for k, c in enumerate(names):
                    if table[table[a, b], c] != table[a, table[b, c]]:
                        raise ConfigError(
                            f"group {self.id}: associativity fails at rows/columns "
                            f"({i},{j},{k}) = ({a},{b},{c})"
                        )
        for i, a in enumerate(names):
            inv = None
            for b in names:
                if table[a, b] == identity and table[b, a] == identity:
                    inv = b
                    break
            if inv is None:
                raise ConfigError(f"group {self.id}: element {a!r} (row {i}) has no inverse")
            self._inverse[a] = inv

    # -- group operations on raw values ---------------------------------

    @property
    def identity_value(self) -> Value:
        if self.kind == FINITE_TABLE:
            assert self._identity_name is not None
            return self._identity_name
        return Fraction(0)

    def is_element(self, value: Value) -> bool:
        if self.kind == FINITE_TABLE:
            return isinstance(value, str) and value in self._table_names()
        return isinstance(value, Fraction)

    def _table_names(self) -> tuple[str, ...]:
        return self.elements

    def mul_value(self, a: Value, b: Value) -> Value:
        if self.kind == FINITE_TABLE:
            return self._table[a, b]
        return a + b

    def inv_value(self, a: Value) -> Value:
        if self.kind == FINITE_TABLE:
            return self._inverse[a]
        return -a

    def product_value(self, values: Iterable[Value]) -> Value:
        acc = self.identity_value
        for v in values:
            acc = self.mul_value(acc, v)
        return acc

    def format_value(self, value: Value) -> str:
        if self.kind == FINITE_TABLE:
            return str(value)
        return format_rational(value)

    def parse_value(self, text: str) -> Value:
        if self.kind == FINITE_TABLE:
            if text not in self._table_names():
                raise ValueError(f"{text!r} is not an element of group {self.id}")
            return text
        return parse_rational(text)

    def canonical_dict(self) -> dict:
        record: dict = {"id": self.id, "kind": self.kind}
        if self.kind == FINITE_TABLE:
            record["elements"] = list(self.elements)
            record["table"] = [
                [self._table[a, b] for b in self.elements] for a in self.elements
            ]
        elif self.kind == RATIONAL_PADIC:
            record["prime"] = self.prime
        return record


class GroupConfig:
    """An ordered family of groups sharing only the (merged) identity."""

    def __init__(self, specs: Sequence[GroupSpec]):
        ids = [s.id for s in specs]
        if len(set(ids)) != len(ids):
            raise ConfigError("duplicate group ids in configuration")
        self.specs: tuple[GroupSpec, ...] = tuple(specs)
        self._by_id = {s.id: s for s in specs}
        canonical = json.dumps(
            {"version": CONFIG_FORMAT_VERSION, "groups": [s.canonical_dict() for s in specs]},
            sort_keys=True,
            separators=(",", ":"),
        )
        self.digest = hashlib.sha256(canonical.encode()).hexdigest()

    # -- lookup ----------------------------------------------------------

    @property
    def group_ids(self) -> tuple[str, ...]:
        return tuple(s.id for s in self.specs)

    def spec(self, gid: str) -> GroupSpec:
        try:
            return self._by_id[gid]
        except KeyError:
            raise UnknownGroup(f"group {gid!r} is not configured") from None

    def identity(self, gid: str) -> GroupElement:
        return GroupElement(gid, self.spec(gid).identity_value)

    def element(self, gid: str, value: Value) -> GroupElement:
        spec = self.spec(gid)
        if not spec.is_element(value):
            raise ConfigError(f"{value!r} is not an element of group {gid}")
        return GroupElement(gid, value)

    def is_identity(self, g: GroupElement) -> bool:
        return g.value == self.spec(g.group).identity_value

    # -- group operations --------------------------------------------------

    def mul(self, a: GroupElement, b: GroupElement) -> GroupElement:
        if a.group != b.group:
            raise GroupMismatch(f"cannot multiply across groups {a.group} and {b.group}")
        return GroupElement(a.group, self.spec(a.group).mul_value(a.value, b.value))

    def inv(self, a: GroupElement) -> GroupElement:
        return GroupElement(a.group, self.spec(a.group).inv_value(a.value))

    # -- neighborhoods -----------------------------------------------------

    def validate_neighborhood(self, n: Neighborhood) -> None:
        spec = self.spec(n.group)
        shape = n.shape
        if isinstance(shape, FiniteSet):
            if spec.kind != FINITE_TABLE:
                raise ShapeMismatch(f"finite-set descriptor on non-discrete group {n.group}")
            if not shape.values:
                raise ConfigError(f"empty finite-set descriptor in group {n.group}")
            for v in shape.values:
                if not spec.is_element(v):
                    raise ConfigError(f"{v!r} is not an element of group {n.group}")
        elif isinstance(shape, Interval):
            if spec.kind != RATIONAL_EUCLIDEAN:
                raise ShapeMismatch(f"interval descriptor on group {n.group} of kind {spec.kind}")
            if shape.radius <= 0:
                raise ConfigError(f"interval radius must be positive, got {shape.radius}")
        elif isinstance(shape, PadicBall):
            if spec.kind != RATIONAL_PADIC:
                raise ShapeMismatch(f"p-adic ball descriptor on group {n.group} of kind {spec.kind}")
            if not isinstance(shape.level, int):
                raise ConfigError(f"ball level must be an integer, got {shape.level!r}")
        else:
            raise ShapeMismatch(f"unknown shape {type(shape).__name__}")

    def contains(self, n: Neighborhood, g: GroupElement) -> bool:
        if n.group != g.group:
            raise GroupMismatch(f"membership of {g.group} element in {n.group} descriptor")
        spec = self.spec(n.group)
        if n.punctured and g.value == spec.identity_value:
            return False
        shape = n.shape
        if isinstance(shape, FiniteSet):
            return g.value in shape.values
        if isinstance(shape, Interval):
            return abs(g.value - shape.center) < shape.radius
        assert spec.prime is not None
        return padic_valuation(g.value - shape.center, spec.prime) >= shape.level

    def sample(self, n: Neighborhood, rng: Random | int, k: int) -> list[GroupElement]:
        """k deterministic members of n; fixed seed gives identical output."""
        if k < 1:
            raise ValueError("sample count must be >= 1")
        if isinstance(rng, int):
            rng = Random(rng)
        spec = self.spec(n.group)
        shape = n.shape
        out: list[GroupElement] = []
        if isinstance(shape, FiniteSet):
            pool = [v for v in shape.values if not (n.punctured and v == spec.identity_value)]
            if not pool:
                raise EmptyNeighborhood(f"punctured singleton identity in group {n.group}")
            for _ in range(k):
                out.append(GroupElement(n.group, pool[rng.randrange(len(pool))]))
        elif isinstance(shape, Interval):
            for j in range(1, k + 1):
                spread = Fraction(j, k + 1)
                while True:
                    sign = 1 if rng.randrange(2) else -1
                    jitter = Fraction(rng.randrange(-(2**16) + 1, 2**16), 2**16)
                    y = shape.center + shape.radius * (sign * spread + jitter / (4 * (k + 1)))
                    if n.punctured and y == 0:
                        continue
                    break
                out.append(GroupElement(n.group, y))
        else:
            assert isinstance(shape, PadicBall) and spec.prime is not None
            unit = Fraction(spec.prime) ** shape.level
            for _ in range(k):
                while True:
                    m = rng.randrange(-64, 65)
                    y = shape.center + unit * m
                    if n.punctured and y == 0:
                        continue
                    break
                out.append(GroupElement(n.group, y))
        return out

    def intersect(self, n1: Neighborhood, n2: Neighborhood) -> Neighborhood:
        """Descriptor whose membership is the conjunction of the inputs'."""
        if n1.group != n2.group:
            raise GroupMismatch(f"intersecting descriptors of {n1.group} and {n2.group}")
        if type(n1.shape) is not type(n2.shape):
            raise ShapeMismatch(
                f"cannot intersect {type(n1.shape).__name__} with {type(n2.shape).__name__}"
            )
        spec = self.spec(n1.group)
        punctured = n1.punctured or n2.punctured
        a, b = n1.shape, n2.shape
        if isinstance(a, FiniteSet):
            common = tuple(v for v in a.values if v in b.values)
            effective = [v for v in common if not (punctured and v == spec.identity_value)]
            if not effective:
                raise EmptyIntersection(f"finite sets share no points in group {n1.group}")
            return Neighborhood(n1.group, FiniteSet(common), punctured)
        if isinstance(a, Interval):
            lo = max(a.center - a.radius, b.center - b.radius)
            hi = min(a.center + a.radius, b.center + b.radius)
            if lo >= hi:
                raise EmptyIntersection(f"disjoint intervals in group {n1.group}")
            return Neighborhood(
                n1.group, Interval((lo + hi) / 2, (hi - lo) / 2), punctured
            )
        assert isinstance(a, PadicBall) and isinstance(b, PadicBall)
        assert spec.prime is not None
        # Ultrametric: balls intersect iff one contains the other, which
        # happens exactly when v_p(c1 - c2) clears the looser level.
        if padic_valuation(a.center - b.center, spec.prime) < min(a.level, b.level):
            raise EmptyIntersection(f"disjoint p-adic balls in group {n1.group}")
        smaller = a if a.level >= b.level else b
        return Neighborhood(n1.group, smaller, punctured)

    # -- the per-group separation primitive ---------------------------------

    def separate_product_from_identity(self, xs: Sequence[GroupElement]) -> list[Neighborhood]:
        """Neighborhoods U_m of the x_m whose pointwise product misses the identity.

        Discrete groups use singletons; the euclidean kind uses intervals of
        radius |s|/(2n) around each x_m where s is the (nonzero) sum, so every
        selection sums into (s - |s|/2, s + |s|/2); the p-adic kind uses balls
        one level tighter than v_p(s), pinning the valuation of every
        selection's sum at exactly v_p(s).
        """
        if not xs:
            raise ValueError("nothing to separate")
        gid = xs[0].group
        for x in xs[1:]:
            if x.group != gid:
                raise GroupMismatch(f"mixed groups {gid} and {x.group}")
        spec = self.spec(gid)
        if spec.kind == FINITE_TABLE:
            prod = spec.product_value(x.value for x in xs)
            if prod == spec.identity_value:
                raise ProductIsIdentity(f"product of the given {gid} elements is the identity")
            return [Neighborhood(gid, FiniteSet((x.value,))) for x in xs]
        s = sum((x.value for x in xs), Fraction(0))
        if s == 0:
            raise ProductIsIdentity(f"the given {gid} elements sum to zero")
        if spec.kind == RATIONAL_EUCLIDEAN:
            radius = abs(s) / (2 * len(xs))
            return [Neighborhood(gid, Interval(x.value, radius)) for x in xs]
        assert spec.prime is not None
        level = padic_valuation(s, spec.prime) + 1
        return [Neighborhood(gid, PadicBall(x.value, level)) for x in xs]


# -- configuration files ---------------------------------------------------


def config_from_dict(data: dict) -> GroupConfig:
    if not isinstance(data, dict):
        raise ConfigError("configuration must be a JSON object")
    if data.get("version") != CONFIG_FORMAT_VERSION:
        raise ConfigError(f"unsupported configuration version {data.get('version')!r}")
    records = data.get("groups")
    if not isinstance(records, list) or not records:
        raise ConfigError("configuration needs a nonempty 'groups' list")
    specs = []
    for record in records:
        gid = record.get("id")
        kind = record.get("kind")
        if not isinstance(gid, str):
            raise ConfigError(f"group record without string id: {record!r}")
        if kind == FINITE_TABLE:
            specs.append(GroupSpec.finite_table(gid, record.get("elements", []), record.get("table", [])))
        elif kind == RATIONAL_EUCLIDEAN:
            specs.append(GroupSpec.euclidean(gid))
        elif kind == RATIONAL_PADIC:
            prime = record.get("prime")
            if not isinstance(prime, int):
                raise ConfigError(f"group {gid}: p-adic kind needs an integer 'prime'")
            specs.append(GroupSpec.padic(gid, prime))
        else:
            raise ConfigError(f"group {gid}: unknown kind {kind!r}")
    return GroupConfig(specs)


def load_config(path: str) -> GroupConfig:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: not valid JSON: {exc}") from exc
    return config_from_dict(data)


def config_to_json(config: GroupConfig) -> str:
    data = {
        "version": CONFIG_FORMAT_VERSION,
        "groups": [s.canonical_dict() for s in config.specs],
    }
    return json.dumps(data, indent=1, sort_keys=True) + "\n"


_S3_ELEMENTS = ("e", "r", "r2", "f", "rf", "r2f")
_S3_TABLE = (
    ("e", "r", "r2", "f", "rf", "r2f"),
    ("r", "r2", "e", "rf", "r2f", "f"),
    ("r2", "e", "r", "r2f", "f", "rf"),
    ("f", "r2f", "rf", "e", "r2", "r"),
    ("rf", "f", "r2f", "r", "e", "r2"),
    ("r2f", "rf", "f", "r2", "r", "e"),
)


def demo_config() -> GroupConfig:
    """The five-group family used throughout the tests and the CLI default:
    Z/2, Z/3, S3, euclidean rationals, 2-adic rationals."""
    return GroupConfig(
        [
            GroupSpec.finite_table("z2", ("1", "s"), (("1", "s"), ("s", "1"))),
            GroupSpec.finite_table(
                "z3", ("1", "t", "t2"), (("1", "t", "t2"), ("t", "t2", "1"), ("t2", "1", "t"))
            ),
            GroupSpec.finite_table("s3", _S3_ELEMENTS, _S3_TABLE),
            GroupSpec.euclidean("q"),
            GroupSpec.padic("q2", 2),
        ]
    )


def replace_punctured(n: Neighborhood, punctured: bool) -> Neighborhood:
    return replace(n, punctured=punctured)
