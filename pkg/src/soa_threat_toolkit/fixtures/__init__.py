"""Bundled example architectures and safety analyses."""

from pathlib import Path

FIXTURE_DIR = Path(__file__).parent

OUTSIDER_EXAMPLE = "outsider_example.json"
INSIDER_EXAMPLE = "insider_example.json"
MINI_APOLLO_MODEL = "mini_apollo_model.json"
MINI_APOLLO_SAFETY = "mini_apollo_safety.json"


def fixture_path(name: str) -> Path:
    path = FIXTURE_DIR / name
    if not path.is_file():
        raise FileNotFoundError(f"No bundled fixture named {name}")
    return path


def read_fixture(name: str) -> bytes:
    return fixture_path(name).read_bytes()
