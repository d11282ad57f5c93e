import pytest
import yaml

from tokenrelay.config import ConfigError, is_valid_dns_name, load_and_validate


def minimal(tmp_path, **overrides):
    doc = {
        "registry": {
            "trusted_cidrs": ["10.0.0.0/8"],
            "public_domain": "nb.example.org",
        },
        "management": {"bind": "127.0.0.1:0"},
        "frontend": {"bind": "127.0.0.1:0", "dev_plaintext": True},
        "journal": {"path": str(tmp_path / "journal.ndjson")},
    }
    for key, value in overrides.items():
        section, _, name = key.partition(".")
        if name:
            doc.setdefault(section, {})[name] = value
        else:
            doc[section] = value
    return doc


def test_valid_minimal_config_fills_defaults(tmp_path):
    cfg = load_and_validate(minimal(tmp_path))
    assert cfg.registry.mapping_ttl_s == 24 * 3600
    assert cfg.registry.wall_clock_limit_s == 48 * 3600
    assert cfg.registry.reconcile_interval_s == 1
    assert cfg.frontend.pending_refresh_s == 15
    assert cfg.frontend.expiry_grace == "drain"
    assert cfg.log_level == "info"


def test_loads_from_yaml_file(tmp_path):
    path = tmp_path / "cfg.yaml"
    path.write_text(yaml.safe_dump(minimal(tmp_path)))
    cfg = load_and_validate(path)
    assert cfg.registry.public_domain == "nb.example.org"


def test_ttl_longer_than_wall_clock_names_both_fields(tmp_path):
    doc = minimal(tmp_path, **{"registry.mapping_ttl_s": 100, "registry.wall_clock_limit_s": 50})
    with pytest.raises(ConfigError) as exc:
        load_and_validate(doc)
    msg = str(exc.value)
    assert "mapping_ttl_s" in msg and "wall_clock_limit_s" in msg


def test_empty_trusted_cidrs_is_violation(tmp_path):
    doc = minimal(tmp_path, **{"registry.trusted_cidrs": []})
    with pytest.raises(ConfigError) as exc:
        load_and_validate(doc)
    assert "trusted_cidrs" in str(exc.value)


def test_all_violations_reported_not_just_first(tmp_path):
    doc = minimal(
        tmp_path,
        **{
            "registry.trusted_cidrs": [],
            "registry.public_domain": "bad domain!",
            "registry.mapping_ttl_s": -1,
            "frontend.expiry_grace": "nuke",
            "log_level": "chatty",
        },
    )
    with pytest.raises(ConfigError) as exc:
        load_and_validate(doc)
    assert len(exc.value.violations) >= 5


def test_tls_and_plaintext_mutually_exclusive(tmp_path):
    doc = minimal(tmp_path, **{"frontend.dev_plaintext": False})
    with pytest.raises(ConfigError) as exc:
        load_and_validate(doc)
    assert "exactly one" in str(exc.value)

    cert = tmp_path / "c.pem"
    key = tmp_path / "k.pem"
    cert.write_text("x")
    key.write_text("x")
    doc = minimal(
        tmp_path,
        **{"frontend.dev_plaintext": True, "frontend.tls": {"cert": str(cert), "key": str(key)}},
    )
    with pytest.raises(ConfigError):
        load_and_validate(doc)


def test_tls_files_must_exist(tmp_path):
    doc = minimal(
        tmp_path,
        **{"frontend.dev_plaintext": False, "frontend.tls": {"cert": "/nope.pem", "key": "/nope.key"}},
    )
    with pytest.raises(ConfigError) as exc:
        load_and_validate(doc)
    assert str(exc.value).count("does not exist") == 2


def test_small_wordlist_rejected(tmp_path):
    words = tmp_path / "few.txt"
    words.write_text("alpha\nbeta\n")
    doc = minimal(tmp_path, **{"registry.wordlist_path": str(words)})
    with pytest.raises(ConfigError) as exc:
        load_and_validate(doc)
    assert "2048" in str(exc.value)


def test_journal_parent_created(tmp_path):
    doc = minimal(tmp_path, **{"journal.path": str(tmp_path / "deep" / "dir" / "j.ndjson")})
    load_and_validate(doc)
    assert (tmp_path / "deep" / "dir").is_dir()


def test_dns_name_validation():
    assert is_valid_dns_name("nb.example.org")
    assert is_valid_dns_name("single")
    assert not is_valid_dns_name("")
    assert not is_valid_dns_name("has space.org")
    assert not is_valid_dns_name("-lead.example.org")
    assert not is_valid_dns_name("x" * 300)
