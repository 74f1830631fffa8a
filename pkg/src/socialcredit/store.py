"""Single-directory file store: application records plus an append-only audit log.

Layout under the store root:

    applications/<application_id>.json   one JSON document per application
    audit.log                            JSONL, one event per line, gapless
                                         1-based sequence numbers

Writes are serialized through one lock (single-writer discipline); reads are
safe concurrently because records are written atomically via rename.
"""

from __future__ import annotations

import hashlib
import json
import os
import threading
from dataclasses import dataclass
from datetime import datetime
from enum import Enum
from pathlib import Path

from .profiles import format_timestamp, parse_timestamp


class AuditKind(str, Enum):
    INGESTED = "ingested"
    SCORED = "scored"
    FLAGGED = "flagged"
    EXPLAINED = "explained"
    REVIEWED = "reviewed"
    REASSESSED = "reassessed"


@dataclass(frozen=True)
class AuditEvent:
    sequence: int
    timestamp: datetime
    kind: AuditKind
    application_id: str
    digest: str  # content hash of the affected record
    payload: dict

    def to_dict(self) -> dict:
        return {
            "sequence": self.sequence,
            "timestamp": format_timestamp(self.timestamp),
            "kind": self.kind.value,
            "application_id": self.application_id,
            "digest": self.digest,
            "payload": self.payload,
        }

    @classmethod
    def from_dict(cls, raw: dict) -> "AuditEvent":
        return cls(
            sequence=int(raw["sequence"]),
            timestamp=parse_timestamp(raw["timestamp"], "audit"),
            kind=AuditKind(raw["kind"]),
            application_id=raw["application_id"],
            digest=raw["digest"],
            payload=raw.get("payload", {}),
        )


def content_digest(data: str | bytes) -> str:
    if isinstance(data, str):
        data = data.encode("utf-8")
    return hashlib.sha256(data).hexdigest()


class FileStore:
    """Persists application dicts and audit events under one directory."""

    def __init__(self, root: str | Path) -> None:
        self.root = Path(root)
        self.applications_dir = self.root / "applications"
        self.applications_dir.mkdir(parents=True, exist_ok=True)
        self.audit_path = self.root / "audit.log"
        self._lock = threading.RLock()
        self._last_sequence = self._scan_last_sequence()

    def _scan_last_sequence(self) -> int:
        if not self.audit_path.exists():
            return 0
        last = 0
        with open(self.audit_path, "r", encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if line:
                    last = json.loads(line)["sequence"]
        return int(last)

    # --- applications -----------------------------------------------------

    def application_count(self) -> int:
        return sum(1 for _ in self.applications_dir.glob("*.json"))

    def save_application(self, application_id: str, record: dict) -> None:
        path = self.applications_dir / f"{application_id}.json"
        tmp = path.with_suffix(".json.tmp")
        with self._lock:
            tmp.write_text(
                json.dumps(record, ensure_ascii=False, separators=(",", ":")),
                encoding="utf-8",
            )
            os.replace(tmp, path)

    def load_application(self, application_id: str) -> dict | None:
        path = self.applications_dir / f"{application_id}.json"
        if not path.exists():
            return None
        return json.loads(path.read_text("utf-8"))

    def list_applications(self) -> list[dict]:
        records = []
        for path in sorted(self.applications_dir.glob("*.json")):
            records.append(json.loads(path.read_text("utf-8")))
        return records

    # --- audit log ----------------------------------------------------------

    def append_audit(
        self,
        kind: AuditKind,
        application_id: str,
        digest: str,
        payload: dict | None = None,
        *,
        timestamp: datetime,
    ) -> AuditEvent:
        with self._lock:
            event = AuditEvent(
                sequence=self._last_sequence + 1,
                timestamp=timestamp,
                kind=kind,
                application_id=application_id,
                digest=digest,
                payload=payload or {},
            )
            with open(self.audit_path, "a", encoding="utf-8") as fh:
                fh.write(json.dumps(event.to_dict(), ensure_ascii=False, separators=(",", ":")))
                fh.write("\n")
            self._last_sequence = event.sequence
            return event

    def audit_events(self, after: int = 0) -> list[AuditEvent]:
        if not self.audit_path.exists():
            return []
        events = []
        with open(self.audit_path, "r", encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                event = AuditEvent.from_dict(json.loads(line))
                if event.sequence > after:
                    events.append(event)
        return events
