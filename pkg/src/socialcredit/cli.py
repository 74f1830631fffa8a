"""Command-line interface.

    socialcredit score <profile-file>            submit and print the decision
    socialcredit explain <application-id>        print the grounded report
    socialcredit simulate --archetype a|b|c --seed N
    socialcredit serve --config F --store D --port N
    socialcredit kb index <corpus-dir>
    socialcredit queue list
    socialcredit queue resolve <id> --action ... [--band ...] [--note ...]
    socialcredit whatif <id> --exclude <item-id> [--exclude ...]

--config falls back to $SOCIALCREDIT_CONFIG, then to the packaged defaults.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .config import resolve_config
from .errors import SocialCreditError
from .knowledge_base import index_documents, load_corpus
from .pipeline import DecisionPipeline
from .profiles import emit_profile
from .scoring import Band
from .service import DecisionService, ReviewAction, ReviewActionKind, WhatIfRequest
from .store import FileStore
from .synthetic import Archetype, synthesize_profile

_ARCHETYPE_ALIASES = {
    "a": Archetype.PROFESSIONAL_PRUDENT,
    "b": Archetype.SPARSE_RISKY,
    "c": Archetype.MODERATE_ALERT,
}

DEFAULT_STORE = "./socialcredit-store"


def _service(args: argparse.Namespace) -> DecisionService:
    config = resolve_config(getattr(args, "config", None))
    store = FileStore(getattr(args, "store", DEFAULT_STORE))
    return DecisionService(store, DecisionPipeline(config))


def _print(obj) -> None:
    print(json.dumps(obj, ensure_ascii=False, indent=2))


def cmd_score(args: argparse.Namespace) -> int:
    document = Path(args.profile_file).read_bytes()
    app = _service(args).submit_application(document)
    assert app.decision is not None
    _print({"application_id": app.application_id, "decision": app.decision.to_dict()})
    return 0


def cmd_explain(args: argparse.Namespace) -> int:
    report = _service(args).get_explanation(args.application_id)
    print(report.render_text())
    return 0


def cmd_simulate(args: argparse.Namespace) -> int:
    archetype = _ARCHETYPE_ALIASES.get(args.archetype.lower(), None)
    if archetype is None:
        archetype = Archetype(args.archetype)
    profile = synthesize_profile(archetype, args.seed)
    print(emit_profile(profile))
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .api import create_app

    app = create_app(_service(args))
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def cmd_kb_index(args: argparse.Namespace) -> int:
    docs = load_corpus(args.corpus_dir)
    index = index_documents(docs, args.dim)
    _print(
        {
            "documents": len(index),
            "dimension": index.dimension,
            "doc_ids": sorted(index.entries),
        }
    )
    return 0


def cmd_queue_list(args: argparse.Namespace) -> int:
    _print(_service(args).list_review_queue())
    return 0


def cmd_queue_resolve(args: argparse.Namespace) -> int:
    action = ReviewAction(
        reviewer=args.reviewer,
        action=ReviewActionKind(args.action),
        note=args.note,
        new_band=Band(args.band) if args.band else None,
    )
    app = _service(args).resolve_review(args.application_id, action)
    _print(app.to_dict())
    return 0


def cmd_whatif(args: argparse.Namespace) -> int:
    original, hypothetical, delta = _service(args).reassess_what_if(
        WhatIfRequest(
            application_id=args.application_id,
            exclude_item_ids=frozenset(args.exclude or []),
        )
    )
    _print(
        {
            "original": original.to_dict(),
            "hypothetical": hypothetical.to_dict(),
            "delta": delta.to_dict(),
        }
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="socialcredit")
    parser.add_argument("--config", help="config file (default: $SOCIALCREDIT_CONFIG or built-in)")
    parser.add_argument("--store", default=DEFAULT_STORE, help="store directory")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("score", help="submit a profile file and print the decision")
    p.add_argument("profile_file")
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("explain", help="print the explanation for an application")
    p.add_argument("application_id")
    p.set_defaults(func=cmd_explain)

    p = sub.add_parser("simulate", help="emit a synthetic profile document")
    p.add_argument("--archetype", required=True, help="a|b|c or full archetype name")
    p.add_argument("--seed", type=int, default=42)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=cmd_serve)

    kb = sub.add_parser("kb", help="knowledge-base tools").add_subparsers(
        dest="kb_command", required=True
    )
    p = kb.add_parser("index", help="build and summarize an index over a corpus dir")
    p.add_argument("corpus_dir")
    p.add_argument("--dim", type=int, default=256)
    p.set_defaults(func=cmd_kb_index)

    queue = sub.add_parser("queue", help="review queue").add_subparsers(
        dest="queue_command", required=True
    )
    p = queue.add_parser("list", help="list in-review applications")
    p.set_defaults(func=cmd_queue_list)
    p = queue.add_parser("resolve", help="apply a review action")
    p.add_argument("application_id")
    p.add_argument("--action", required=True, choices=[a.value for a in ReviewActionKind])
    p.add_argument("--band", choices=[b.value for b in Band])
    p.add_argument("--note", default="")
    p.add_argument("--reviewer", default="cli")
    p.set_defaults(func=cmd_queue_resolve)

    p = sub.add_parser("whatif", help="hypothetical rescore with items excluded")
    p.add_argument("application_id")
    p.add_argument("--exclude", action="append", default=[])
    p.set_defaults(func=cmd_whatif)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SocialCreditError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
