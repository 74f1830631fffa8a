"""Application lifecycle: submit, explain, review workflow, what-if reassessment.

Every state change appends at least one audit event. The pipeline itself is
pure, so re-running it over a stored profile with the stored identity fields
reproduces the stored decision exactly. Application ids are a content-hash
prefix of the canonical profile document plus a monotonic counter, which
keeps ids reproducible in tests.

Status machine: pending -> decided | in_review; in_review -> resolved
(approve / override_band) or in_review (request_info). Nothing else.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass, replace
from datetime import datetime, timezone
from enum import Enum
from typing import Callable

from .errors import (
    ConsentDenied,
    InvalidReviewAction,
    NotInReview,
    NotYetDecided,
    UnknownApplication,
    UnknownItemId,
)
from .explanation import ExplanationReport
from .pipeline import DecisionPipeline
from .profiles import (
    SocialProfile,
    emit_profile,
    format_timestamp,
    parse_profile,
    parse_timestamp,
    profile_to_dict,
)
from .scoring import Band, CreditDecision
from .store import AuditKind, FileStore, content_digest


class ApplicationStatus(str, Enum):
    PENDING = "pending"
    DECIDED = "decided"
    IN_REVIEW = "in_review"
    RESOLVED = "resolved"


class ReviewActionKind(str, Enum):
    APPROVE = "approve"
    OVERRIDE_BAND = "override_band"
    REQUEST_INFO = "request_info"


@dataclass(frozen=True)
class ReviewAction:
    reviewer: str
    action: ReviewActionKind
    note: str = ""
    new_band: Band | None = None
    timestamp: datetime | None = None

    def to_dict(self) -> dict:
        return {
            "reviewer": self.reviewer,
            "action": self.action.value,
            "note": self.note,
            "new_band": self.new_band.value if self.new_band else None,
            "timestamp": format_timestamp(self.timestamp) if self.timestamp else None,
        }

    @classmethod
    def from_dict(cls, raw: dict) -> "ReviewAction":
        return cls(
            reviewer=raw.get("reviewer", ""),
            action=ReviewActionKind(raw["action"]),
            note=raw.get("note", "") or "",
            new_band=Band(raw["new_band"]) if raw.get("new_band") else None,
            timestamp=parse_timestamp(raw["timestamp"], "review") if raw.get("timestamp") else None,
        )


@dataclass(frozen=True)
class Application:
    application_id: str
    profile: SocialProfile
    status: ApplicationStatus
    decision: CreditDecision | None
    created_at: datetime
    updated_at: datetime
    review_history: tuple[ReviewAction, ...] = ()

    def to_dict(self) -> dict:
        return {
            "application_id": self.application_id,
            "profile": profile_to_dict(self.profile),
            "status": self.status.value,
            "decision": self.decision.to_dict() if self.decision else None,
            "created_at": format_timestamp(self.created_at),
            "updated_at": format_timestamp(self.updated_at),
            "review_history": [a.to_dict() for a in self.review_history],
        }

    @classmethod
    def from_dict(cls, raw: dict) -> "Application":
        return cls(
            application_id=raw["application_id"],
            profile=parse_profile(json.dumps(raw["profile"])),
            status=ApplicationStatus(raw["status"]),
            decision=CreditDecision.from_dict(raw["decision"]) if raw.get("decision") else None,
            created_at=parse_timestamp(raw["created_at"], "application"),
            updated_at=parse_timestamp(raw["updated_at"], "application"),
            review_history=tuple(ReviewAction.from_dict(a) for a in raw.get("review_history", [])),
        )


@dataclass(frozen=True)
class WhatIfRequest:
    application_id: str
    exclude_item_ids: frozenset[str]


@dataclass(frozen=True)
class WhatIfDelta:
    band_from: Band
    band_to: Band
    normalized_delta: float
    flags_removed: tuple[str, ...]
    flags_added: tuple[str, ...]

    def to_dict(self) -> dict:
        return {
            "band_from": self.band_from.value,
            "band_to": self.band_to.value,
            "normalized_delta": self.normalized_delta,
            "flags_removed": list(self.flags_removed),
            "flags_added": list(self.flags_added),
        }


def _utc_now() -> datetime:
    return datetime.now(timezone.utc)


class DecisionService:
    """Synchronous in-process orchestration over one store and one pipeline."""

    def __init__(
        self,
        store: FileStore,
        pipeline: DecisionPipeline,
        clock: Callable[[], datetime] = _utc_now,
    ) -> None:
        self.store = store
        self.pipeline = pipeline
        self.clock = clock
        self._write_lock = threading.RLock()

    # --- submission ---------------------------------------------------------

    def submit_application(self, document: str | bytes) -> Application:
        profile = parse_profile(document)
        canonical = emit_profile(profile)
        profile_digest = content_digest(canonical)

        with self._write_lock:
            now = self.clock()
            if not profile.consent.granted:
                self.store.append_audit(
                    AuditKind.INGESTED,
                    application_id="",
                    digest=profile_digest,
                    payload={"rejected": "consent_denied", "user_id": profile.user_id},
                    timestamp=now,
                )
                raise ConsentDenied(
                    f"profile {profile.user_id!r} has not granted consent; scoring refused"
                )

            seq = self.store.application_count() + 1
            application_id = f"app-{profile_digest[:12]}-{seq:04d}"
            decision_id = f"dec-{profile_digest[:12]}-{seq:04d}"

            result = self.pipeline.evaluate(profile, decision_id=decision_id, timestamp=now)
            decision = result.decision
            status = (
                ApplicationStatus.IN_REVIEW
                if decision.verdict.review_required
                else ApplicationStatus.DECIDED
            )
            app = Application(
                application_id=application_id,
                profile=profile,
                status=status,
                decision=decision,
                created_at=now,
                updated_at=now,
            )
            self.store.save_application(application_id, app.to_dict())
            self.store.append_audit(
                AuditKind.INGESTED,
                application_id,
                digest=profile_digest,
                payload={"user_id": profile.user_id},
                timestamp=now,
            )
            self.store.append_audit(
                AuditKind.SCORED,
                application_id,
                digest=content_digest(decision.serialize()),
                payload={"band": decision.band.value, "status": status.value},
                timestamp=now,
            )
            if decision.verdict.flags:
                self.store.append_audit(
                    AuditKind.FLAGGED,
                    application_id,
                    digest=content_digest(decision.verdict.serialize()),
                    payload={"rules": [f.rule_id for f in decision.verdict.flags]},
                    timestamp=now,
                )
            return app

    # --- reads ----------------------------------------------------------------

    def get_application(self, application_id: str) -> Application:
        record = self.store.load_application(application_id)
        if record is None:
            raise UnknownApplication(f"no application {application_id!r}")
        return Application.from_dict(record)

    def list_review_queue(self) -> list[dict]:
        queue = []
        for record in self.store.list_applications():
            app = Application.from_dict(record)
            if app.status is not ApplicationStatus.IN_REVIEW:
                continue
            assert app.decision is not None
            queue.append(app)
        queue.sort(key=lambda a: (a.created_at, a.application_id))
        return [
            {
                "application_id": a.application_id,
                "user_id": a.profile.user_id,
                "band": a.decision.band.value,
                "flags": [f.category.value for f in a.decision.verdict.flags],
                "status": a.status.value,
                "created_at": format_timestamp(a.created_at),
            }
            for a in queue
        ]

    # --- explanation ------------------------------------------------------------

    def get_explanation(self, application_id: str) -> ExplanationReport:
        app = self.get_application(application_id)
        if app.decision is None:
            raise NotYetDecided(f"application {application_id!r} has no decision yet")
        result = self.pipeline.evaluate(
            app.profile,
            decision_id=app.decision.decision_id,
            timestamp=app.decision.timestamp,
        )
        report = self.pipeline.explain(result)
        with self._write_lock:
            self.store.append_audit(
                AuditKind.EXPLAINED,
                application_id,
                digest=content_digest(report.serialize()),
                timestamp=self.clock(),
            )
        return report

    # --- review workflow -----------------------------------------------------------

    def resolve_review(self, application_id: str, action: ReviewAction) -> Application:
        with self._write_lock:
            app = self.get_application(application_id)
            if app.status is not ApplicationStatus.IN_REVIEW:
                raise NotInReview(
                    f"application {application_id!r} is {app.status.value}, not in review"
                )
            assert app.decision is not None
            now = self.clock()
            stamped = replace(action, timestamp=now)
            payload: dict = {"action": action.action.value, "reviewer": action.reviewer}

            if action.action is ReviewActionKind.APPROVE:
                updated = replace(
                    app,
                    status=ApplicationStatus.RESOLVED,
                    updated_at=now,
                    review_history=app.review_history + (stamped,),
                )
            elif action.action is ReviewActionKind.OVERRIDE_BAND:
                if action.new_band is None:
                    raise InvalidReviewAction("override_band requires new_band")
                if not action.note.strip():
                    raise InvalidReviewAction("override_band requires a nonempty note")
                payload["original_band"] = app.decision.band.value
                payload["new_band"] = action.new_band.value
                overridden = replace(app.decision, band=action.new_band)
                updated = replace(
                    app,
                    status=ApplicationStatus.RESOLVED,
                    decision=overridden,
                    updated_at=now,
                    review_history=app.review_history + (stamped,),
                )
            else:  # request_info keeps the case in review
                updated = replace(
                    app,
                    updated_at=now,
                    review_history=app.review_history + (stamped,),
                )

            self.store.save_application(application_id, updated.to_dict())
            self.store.append_audit(
                AuditKind.REVIEWED,
                application_id,
                digest=content_digest(json.dumps(updated.to_dict(), sort_keys=True)),
                payload=payload,
                timestamp=now,
            )
            return updated

    # --- what-if ----------------------------------------------------------------

    def reassess_what_if(
        self, req: WhatIfRequest
    ) -> tuple[CreditDecision, CreditDecision, WhatIfDelta]:
        app = self.get_application(req.application_id)
        if app.decision is None:
            raise NotYetDecided(f"application {req.application_id!r} has no decision yet")
        known_ids = {t.item_id for t in app.profile.text_items} | {
            i.item_id for i in app.profile.image_items
        }
        unknown = sorted(set(req.exclude_item_ids) - known_ids)
        if unknown:
            raise UnknownItemId(f"item ids not in profile: {unknown}")

        hypothetical_profile = app.profile.without_items(set(req.exclude_item_ids))
        # Same identity fields on purpose: excluding nothing must reproduce
        # the original decision exactly, and nothing here is persisted.
        hypothetical = self.pipeline.evaluate(
            hypothetical_profile,
            decision_id=app.decision.decision_id,
            timestamp=app.decision.timestamp,
        ).decision

        original = app.decision
        original_rules = [f.rule_id for f in original.verdict.flags]
        hypothetical_rules = [f.rule_id for f in hypothetical.verdict.flags]
        delta = WhatIfDelta(
            band_from=original.band,
            band_to=hypothetical.band,
            normalized_delta=hypothetical.normalized_score - original.normalized_score,
            flags_removed=tuple(r for r in original_rules if r not in hypothetical_rules),
            flags_added=tuple(r for r in hypothetical_rules if r not in original_rules),
        )
        with self._write_lock:
            self.store.append_audit(
                AuditKind.REASSESSED,
                req.application_id,
                digest=content_digest(hypothetical.serialize()),
                payload={
                    "excluded": sorted(req.exclude_item_ids),
                    "band_from": delta.band_from.value,
                    "band_to": delta.band_to.value,
                },
                timestamp=self.clock(),
            )
        return original, hypothetical, delta

    # --- determinism -----------------------------------------------------------

    def replay_decision(self, application_id: str) -> CreditDecision:
        """Recompute the stored profile's decision with the stored identity."""
        app = self.get_application(application_id)
        if app.decision is None:
            raise NotYetDecided(f"application {application_id!r} has no decision yet")
        return self.pipeline.evaluate(
            app.profile,
            decision_id=app.decision.decision_id,
            timestamp=app.decision.timestamp,
        ).decision
