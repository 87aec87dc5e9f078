import pytest

from cmnerds.metadata import load_config


@pytest.fixture
def config(tmp_path, monkeypatch):
    """Quick-profile config logging into a scratch directory."""
    monkeypatch.chdir(tmp_path)
    return load_config(profile='quick', log_file=str(tmp_path / 'cm.log'), workers=2)
