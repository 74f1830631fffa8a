from __future__ import annotations

from datetime import datetime, timedelta, timezone
from importlib import resources
from pathlib import Path

import pytest

from socialcredit.config import default_config
from socialcredit.pipeline import DecisionPipeline
from socialcredit.service import DecisionService
from socialcredit.store import FileStore


class TickingClock:
    """Deterministic clock advancing one second per call."""

    def __init__(self, start: datetime | None = None) -> None:
        self.now = start or datetime(2025, 8, 1, 9, 0, 0, tzinfo=timezone.utc)

    def __call__(self) -> datetime:
        self.now = self.now + timedelta(seconds=1)
        return self.now


@pytest.fixture(scope="session")
def config():
    return default_config()


@pytest.fixture(scope="session")
def pipeline(config):
    return DecisionPipeline(config)


@pytest.fixture()
def service(pipeline, tmp_path) -> DecisionService:
    return DecisionService(FileStore(tmp_path / "store"), pipeline, clock=TickingClock())


def fixture_document(name: str) -> str:
    path = resources.files("socialcredit.data").joinpath(f"fixtures/{name}.json")
    return path.read_text("utf-8")


@pytest.fixture(scope="session")
def user_a_doc() -> str:
    return fixture_document("user_a")


@pytest.fixture(scope="session")
def user_b_doc() -> str:
    return fixture_document("user_b")


@pytest.fixture(scope="session")
def user_c_doc() -> str:
    return fixture_document("user_c")
