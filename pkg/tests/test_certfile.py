import json
from pathlib import Path

import pytest

from topfree import (
    FormatError,
    certificate_from_text,
    certificate_to_text,
    check_certificate,
    parse_word,
    read_certificate,
    separate_word_from_identity,
    validate_certificate,
    write_certificate,
)

GOLDEN = Path(__file__).resolve().parent.parent / "docs" / "golden-certificate.json"
DEMO = Path(__file__).resolve().parent.parent / "configs" / "groups-demo.json"


def test_committed_config_matches_builtin(config):
    from topfree import load_config

    assert load_config(str(DEMO)).digest == config.digest


def test_round_trip_identity(config, tmp_path):
    cert = separate_word_from_identity(config, parse_word(config, "q:3/2 z2:s q:-3/2 1 q2:6"))
    path = tmp_path / "cert.json"
    write_certificate(config, cert, str(path))
    loaded = read_certificate(config, str(path))
    assert loaded == cert
    assert validate_certificate(config, loaded) == []


def test_serialization_is_byte_stable(config):
    word = parse_word(config, "s3:r 1 q:2/3 s3:f")
    a = certificate_to_text(config, separate_word_from_identity(config, word))
    b = certificate_to_text(config, separate_word_from_identity(config, word))
    assert a == b


def test_golden_certificate_matches(config):
    cert = separate_word_from_identity(config, parse_word(config, "q:3/2 z2:s q:-3/2"))
    assert certificate_to_text(config, cert) == GOLDEN.read_text()


def test_golden_certificate_checks_clean(config):
    cert = certificate_from_text(config, GOLDEN.read_text())
    assert validate_certificate(config, cert) == []
    assert check_certificate(config, cert, "sampled", k=300, seed=5).ok


def test_unknown_version_rejected(config):
    data = json.loads(GOLDEN.read_text())
    data["version"] = 99
    with pytest.raises(FormatError, match="version"):
        certificate_from_text(config, json.dumps(data))


def test_wrong_format_marker_rejected(config):
    data = json.loads(GOLDEN.read_text())
    data["format"] = "something-else"
    with pytest.raises(FormatError):
        certificate_from_text(config, json.dumps(data))


def test_garbage_rejected(config):
    with pytest.raises(FormatError):
        certificate_from_text(config, "not json at all")
    with pytest.raises(FormatError):
        certificate_from_text(config, "[1,2,3]")


def test_malformed_shape_rejected(config):
    data = json.loads(GOLDEN.read_text())
    data["neighborhoods"][0]["shape"] = {"type": "interval", "center": "1"}
    with pytest.raises(FormatError):
        certificate_from_text(config, json.dumps(data))
