import json
from fractions import Fraction

import pytest

from src.helpers import format_fraction, fraction_from_dict, fraction_to_dict
from src.settings import DEFAULT_ROUTES, Settings, SettingsError, load_settings


@pytest.fixture(autouse=True)
def clean_env(monkeypatch, tmp_path):
    for name in ("ROMANPY_CONFIG", "ROMANPY_ORACLE_LIMIT", "ROMANPY_SEARCH_BUDGET"):
        monkeypatch.delenv(name, raising=False)
    monkeypatch.chdir(tmp_path)


def write_config(path, **changes):
    config = {
        "oracle_limit": 20,
        "search_budget": 1000,
        "generator_retries": 50,
        "default_k": 2,
        "refine_iterations": 4,
        "routes": [{"name": "th3"}, {"name": "oracle"}],
    }
    config.update(changes)
    path.write_text(json.dumps(config))
    return path


def test_defaults_when_no_config_file():
    settings = load_settings()
    assert settings == Settings()
    assert settings.source is None
    assert settings.routes == DEFAULT_ROUTES


def test_default_routes_are_copied():
    Settings().routes.append({"name": "extra"})
    assert len(Settings().routes) == len(DEFAULT_ROUTES)


def test_load_explicit_file(tmp_path):
    path = write_config(tmp_path / "custom.json")
    settings = load_settings(path)
    assert settings.oracle_limit == 20
    assert settings.default_k == 2
    assert settings.routes == [{"name": "th3"}, {"name": "oracle"}]
    assert settings.source == str(path)


def test_default_location_is_read(tmp_path):
    (tmp_path / "config").mkdir()
    write_config(tmp_path / "config" / "general.json", search_budget=7)
    assert load_settings().search_budget == 7


def test_config_from_environment(tmp_path, monkeypatch):
    path = write_config(tmp_path / "env.json", refine_iterations=9)
    monkeypatch.setenv("ROMANPY_CONFIG", str(path))
    assert load_settings().refine_iterations == 9


def test_explicit_missing_file_raises(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_settings(tmp_path / "absent.json")


def test_invalid_json(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    with pytest.raises(SettingsError, match="Invalid JSON"):
        load_settings(path)


def test_missing_fields(tmp_path):
    path = tmp_path / "partial.json"
    path.write_text(json.dumps({"oracle_limit": 10, "routes": []}))
    with pytest.raises(SettingsError, match="Missing required fields: search_budget, generator_retries"):
        load_settings(path)


@pytest.mark.parametrize("changes", [
    {"oracle_limit": 0},
    {"search_budget": "many"},
    {"default_k": -1},
    {"routes": [{"enabled": True}]},
    {"routes": "th1"},
])
def test_bad_values(tmp_path, changes):
    with pytest.raises(SettingsError):
        load_settings(write_config(tmp_path / "bad.json", **changes))


def test_environment_overrides(tmp_path, monkeypatch):
    monkeypatch.setenv("ROMANPY_ORACLE_LIMIT", "12")
    monkeypatch.setenv("ROMANPY_SEARCH_BUDGET", "")
    settings = load_settings(write_config(tmp_path / "c.json"))
    assert settings.oracle_limit == 12
    assert settings.search_budget == 1000


def test_bad_environment_override(monkeypatch):
    monkeypatch.setenv("ROMANPY_SEARCH_BUDGET", "lots")
    with pytest.raises(SettingsError, match="ROMANPY_SEARCH_BUDGET"):
        load_settings()


def test_with_overrides_ignores_none():
    settings = Settings().with_overrides(oracle_limit=None, default_k=3)
    assert settings.oracle_limit == 26
    assert settings.default_k == 3


def test_fraction_helpers():
    assert format_fraction(Fraction(12)) == "12"
    assert format_fraction(Fraction(192, 17)) == "192/17 (~11.29)"
    assert fraction_to_dict(Fraction(6, 4)) == {"num": 3, "den": 2}
    assert fraction_from_dict({"num": 3, "den": 2}) == Fraction(3, 2)
