"""Access to the fixture files shipped inside the package.

Layout under ``deontic/fixtures/``:

* ``models/*.json``   model documents (countermodels used as evidence)
* ``proofs/*.proof``  derivation scripts (scenario replays and the
  derivability suite)
* ``systems/*.json``  system-definition documents for diagnostic systems
"""

from __future__ import annotations

import json
from importlib import resources

from .model import NeighbourhoodModel, model_from_dict

__all__ = ["fixture_text", "fixture_names", "load_fixture_model", "system_definitions"]


def _root():
    return resources.files(__package__) / "fixtures"


def fixture_text(relpath: str) -> str:
    node = _root() / relpath
    try:
        return node.read_text()
    except (FileNotFoundError, NotADirectoryError):
        raise FileNotFoundError(f"no bundled fixture {relpath!r}") from None


def fixture_names(kind: str) -> list[str]:
    """Sorted file names under one fixtures subdirectory (models/proofs/systems)."""
    return sorted(entry.name for entry in (_root() / kind).iterdir() if entry.is_file())


def load_fixture_model(name: str) -> NeighbourhoodModel:
    """Load a bundled model by name; the .json suffix is optional."""
    if not name.endswith(".json"):
        name += ".json"
    return model_from_dict(json.loads(fixture_text(f"models/{name}")))


def system_definitions() -> list[dict]:
    """All bundled system-definition documents, in file-name order."""
    return [json.loads(fixture_text(f"systems/{n}")) for n in fixture_names("systems")]
