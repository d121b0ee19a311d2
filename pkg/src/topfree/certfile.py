"""Versioned JSON serialization of separation certificates and reports.

Certificates are proof objects: serialization is deterministic (sorted keys,
fixed component order, rationals as exact `p/q` strings), so re-emitting the
same certificate yields byte-identical files.
"""

from __future__ import annotations

import json
from typing import Any

from .errors import FormatError
from .groups import FiniteSet, GroupConfig, Interval, Neighborhood, PadicBall, Shape
from .rational import format_rational, parse_rational
from .separation import (
    CERTIFICATE_VERSION,
    SeparationCertificate,
    SubtermProvenance,
    VerificationReport,
)
from .wedge import AroundIdentity, AwayFromIdentity, IdentityDefaults, XNeighborhood
from .words import format_word, parse_reduced, parse_word


def _shape_to_dict(shape: Shape) -> dict:
    if isinstance(shape, FiniteSet):
        return {"type": "finite_set", "values": list(shape.values)}
    if isinstance(shape, Interval):
        return {
            "type": "interval",
            "center": format_rational(shape.center),
            "radius": format_rational(shape.radius),
        }
    return {
        "type": "padic_ball",
        "center": format_rational(shape.center),
        "level": shape.level,
    }


def _shape_from_dict(data: Any) -> Shape:
    if not isinstance(data, dict):
        raise FormatError(f"shape record must be an object, got {type(data).__name__}")
    kind = data.get("type")
    try:
        if kind == "finite_set":
            return FiniteSet(tuple(str(v) for v in data["values"]))
        if kind == "interval":
            return Interval(parse_rational(data["center"]), parse_rational(data["radius"]))
        if kind == "padic_ball":
            level = data["level"]
            if not isinstance(level, int):
                raise FormatError(f"ball level must be an integer, got {level!r}")
            return PadicBall(parse_rational(data["center"]), level)
    except (KeyError, ValueError, TypeError) as exc:
        raise FormatError(f"bad shape record {data!r}: {exc}") from exc
    raise FormatError(f"unknown shape type {kind!r}")


def _neighborhood_to_dict(n: Neighborhood) -> dict:
    return {"group": n.group, "punctured": n.punctured, "shape": _shape_to_dict(n.shape)}


def _neighborhood_from_dict(data: Any) -> Neighborhood:
    if not isinstance(data, dict) or "group" not in data:
        raise FormatError(f"bad neighborhood record {data!r}")
    return Neighborhood(
        str(data["group"]), _shape_from_dict(data.get("shape")), bool(data.get("punctured"))
    )


def _xneighborhood_to_dict(xn: XNeighborhood) -> dict:
    if isinstance(xn, AwayFromIdentity):
        return {
            "variant": "away",
            "group": xn.group,
            "punctured": xn.neighborhood.punctured,
            "shape": _shape_to_dict(xn.neighborhood.shape),
        }
    return {
        "variant": "around",
        "components": [_neighborhood_to_dict(n) for n in xn.components],
    }


def _xneighborhood_from_dict(data: Any) -> XNeighborhood:
    if not isinstance(data, dict):
        raise FormatError(f"bad descriptor record {data!r}")
    variant = data.get("variant")
    if variant == "away":
        group = str(data.get("group"))
        return AwayFromIdentity(
            group,
            Neighborhood(group, _shape_from_dict(data.get("shape")), bool(data.get("punctured"))),
        )
    if variant == "around":
        components = data.get("components")
        if not isinstance(components, list):
            raise FormatError("around descriptor without a component list")
        return AroundIdentity(tuple(_neighborhood_from_dict(c) for c in components))
    raise FormatError(f"unknown descriptor variant {variant!r}")


def certificate_to_dict(config: GroupConfig, cert: SeparationCertificate) -> dict:
    return {
        "format": "separation-certificate",
        "version": cert.version,
        "config_digest": cert.config_digest,
        "word": format_word(config, cert.word),
        "forbidden": [format_word(config, t) for t in cert.forbidden],
        "defaults": {
            "euclidean_radius": format_rational(cert.defaults.euclidean_radius),
            "padic_level": cert.defaults.padic_level,
        },
        "neighborhoods": [_xneighborhood_to_dict(xn) for xn in cert.neighborhoods],
        "provenance": [
            [
                {"group": s.group, "positions": list(s.positions), "value": s.value}
                for s in position
            ]
            for position in cert.provenance
        ],
    }


def certificate_to_text(config: GroupConfig, cert: SeparationCertificate) -> str:
    return json.dumps(certificate_to_dict(config, cert), indent=1, sort_keys=True) + "\n"


def certificate_from_dict(config: GroupConfig, data: Any) -> SeparationCertificate:
    if not isinstance(data, dict):
        raise FormatError("certificate must be a JSON object")
    if data.get("format") != "separation-certificate":
        raise FormatError(f"not a separation certificate: format={data.get('format')!r}")
    version = data.get("version")
    if version != CERTIFICATE_VERSION:
        raise FormatError(f"unsupported certificate version {version!r}")
    try:
        word = parse_word(config, str(data["word"]))
        forbidden = tuple(
            parse_reduced(config, str(t), cap=max(64, len(str(t)))) for t in data["forbidden"]
        )
        defaults_record = data["defaults"]
        defaults = IdentityDefaults(
            euclidean_radius=parse_rational(str(defaults_record["euclidean_radius"])),
            padic_level=int(defaults_record["padic_level"]),
        )
        neighborhoods = tuple(_xneighborhood_from_dict(x) for x in data["neighborhoods"])
        provenance = tuple(
            tuple(
                SubtermProvenance(
                    str(s["group"]), tuple(int(p) for p in s["positions"]), str(s["value"])
                )
                for s in position
            )
            for position in data["provenance"]
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed certificate: {exc}") from exc
    return SeparationCertificate(
        word=word,
        neighborhoods=neighborhoods,
        provenance=provenance,
        config_digest=str(data.get("config_digest", "")),
        defaults=defaults,
        forbidden=forbidden,
        version=version,
    )


def certificate_from_text(config: GroupConfig, text: str) -> SeparationCertificate:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"not valid JSON: {exc}") from exc
    return certificate_from_dict(config, data)


def write_certificate(config: GroupConfig, cert: SeparationCertificate, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(certificate_to_text(config, cert))


def read_certificate(config: GroupConfig, path: str) -> SeparationCertificate:
    with open(path, "r", encoding="utf-8") as fh:
        return certificate_from_text(config, fh.read())


def report_to_dict(report: VerificationReport) -> dict:
    return {
        "mode": report.mode,
        "k": report.k,
        "seed": report.seed,
        "selections_checked": report.selections_checked,
        "violations": [
            {"selection": v.selection, "reduces_to": v.reduces_to} for v in report.violations
        ],
        "elapsed_seconds": round(report.elapsed, 6),
        "ok": report.ok,
    }
