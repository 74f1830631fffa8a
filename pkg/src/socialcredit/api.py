"""HTTP surface over the decision service.

Endpoints:
    POST /applications                     profile document -> id + decision
    GET  /applications/{id}                full application record
    GET  /applications/{id}/explanation    grounded report
    GET  /review-queue                     in-review summaries
    POST /applications/{id}/review         review action -> updated application
    POST /applications/{id}/what-if        exclusion set -> delta response
    GET  /audit?after={sequence}           audit events after a sequence number

Validation and consent problems map to 400, unknown ids to 404, bad states
to 409, and missing policy coverage to 500.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from .errors import (
    ConsentDenied,
    InvalidReviewAction,
    InvalidRule,
    MalformedDocument,
    MissingPolicyCoverage,
    NotInReview,
    NotYetDecided,
    SchemaViolation,
    SocialCreditError,
    UnknownApplication,
    UnknownItemId,
    UnknownLabel,
)
from .scoring import Band
from .service import (
    DecisionService,
    ReviewAction,
    ReviewActionKind,
    WhatIfRequest,
)

_BAD_REQUEST = (
    MalformedDocument,
    SchemaViolation,
    ConsentDenied,
    UnknownItemId,
    UnknownLabel,
    InvalidRule,
    InvalidReviewAction,
    ValueError,
)
_NOT_FOUND = (UnknownApplication,)
_CONFLICT = (NotInReview, NotYetDecided)


class ReviewActionBody(BaseModel):
    reviewer: str
    action: str
    note: str = ""
    new_band: str | None = None


class WhatIfBody(BaseModel):
    exclude_item_ids: list[str] = []


def create_app(service: DecisionService) -> FastAPI:
    app = FastAPI(title="socialcredit", version="0.1.0")
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )

    @app.exception_handler(SocialCreditError)
    async def _handle_domain_error(_request: Request, exc: SocialCreditError):
        if isinstance(exc, _NOT_FOUND):
            status = 404
        elif isinstance(exc, _CONFLICT):
            status = 409
        elif isinstance(exc, MissingPolicyCoverage):
            status = 500
        elif isinstance(exc, _BAD_REQUEST):
            status = 400
        else:
            status = 500
        return JSONResponse(
            status_code=status,
            content={"error": type(exc).__name__, "detail": str(exc)},
        )

    @app.post("/applications")
    async def submit_application(request: Request):
        body = await request.body()
        application = service.submit_application(body)
        assert application.decision is not None
        return {
            "application_id": application.application_id,
            "decision": application.decision.to_dict(),
        }

    @app.get("/applications/{application_id}")
    async def get_application(application_id: str):
        return service.get_application(application_id).to_dict()

    @app.get("/applications/{application_id}/explanation")
    async def get_explanation(application_id: str):
        return service.get_explanation(application_id).to_dict()

    @app.get("/review-queue")
    async def review_queue():
        return service.list_review_queue()

    @app.post("/applications/{application_id}/review")
    async def review(application_id: str, body: ReviewActionBody):
        try:
            action = ReviewAction(
                reviewer=body.reviewer,
                action=ReviewActionKind(body.action),
                note=body.note,
                new_band=Band(body.new_band) if body.new_band else None,
            )
        except ValueError as exc:
            raise InvalidReviewAction(str(exc)) from exc
        return service.resolve_review(application_id, action).to_dict()

    @app.post("/applications/{application_id}/what-if")
    async def what_if(application_id: str, body: WhatIfBody):
        original, hypothetical, delta = service.reassess_what_if(
            WhatIfRequest(
                application_id=application_id,
                exclude_item_ids=frozenset(body.exclude_item_ids),
            )
        )
        return {
            "original": original.to_dict(),
            "hypothetical": hypothetical.to_dict(),
            "delta": delta.to_dict(),
        }

    @app.get("/audit")
    async def audit(after: int = 0):
        return [event.to_dict() for event in service.store.audit_events(after=after)]

    return app
