from __future__ import annotations

import json
from pathlib import Path

import pytest

from storelab.catalog import load_shop_bundle
from storelab.fixtures import write_demo_bundle

DATA_DIR = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def demo_dir(tmp_path_factory) -> Path:
    directory = tmp_path_factory.mktemp("bundles") / "demo-kitchen"
    write_demo_bundle(directory)
    return directory


@pytest.fixture(scope="session")
def demo_bundle(demo_dir):
    return load_shop_bundle(demo_dir)


@pytest.fixture(scope="session")
def cookware_capabilities_doc():
    return json.loads((DATA_DIR / "capabilities_cookware.json").read_text())


@pytest.fixture(scope="session")
def task_examples():
    return json.loads((DATA_DIR / "task_examples.json").read_text())
