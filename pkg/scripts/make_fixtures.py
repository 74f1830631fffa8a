#!/usr/bin/env python3
"""Regenerate the shipped scenario fixtures (seed 42, one file per archetype)."""

from __future__ import annotations

from pathlib import Path

from socialcredit.profiles import emit_profile
from socialcredit.synthetic import Archetype, synthesize_profile

SEED = 42
FIXTURES = {
    "user_a.json": Archetype.PROFESSIONAL_PRUDENT,
    "user_b.json": Archetype.SPARSE_RISKY,
    "user_c.json": Archetype.MODERATE_ALERT,
}


def main() -> None:
    out_dir = Path(__file__).resolve().parent.parent / "src/socialcredit/data/fixtures"
    out_dir.mkdir(parents=True, exist_ok=True)
    for name, archetype in FIXTURES.items():
        profile = synthesize_profile(archetype, SEED)
        (out_dir / name).write_text(emit_profile(profile) + "\n", encoding="utf-8")
        print(f"wrote {name}: {profile.user_id}")


if __name__ == "__main__":
    main()
