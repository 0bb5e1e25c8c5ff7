import pytest


@pytest.fixture
def announce(capsys):
    """Print one PASS/FAIL line for an acceptance criterion, then assert it."""

    def _announce(ok: bool, text: str):
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} {text}", flush=True)
        assert ok, text

    return _announce
