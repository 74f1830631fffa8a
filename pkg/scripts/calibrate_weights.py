#!/usr/bin/env python3
"""Grid-search calibration for the default score weights.

Searches a small, fully enumerated grid and picks the combination that
maximizes the smallest band margin across the three shipped archetype
fixtures (seed 42):

* professional_prudent must land High:    margin = normalized - theta_high
* sparse_risky must land Low (via Fail):  margin = theta_low - normalized
* moderate_alert must land Moderate:      margin = normalized - theta_low

Every margin must be at least 0.05. Ties resolve to the first grid entry.
Run from the repo root; it prints the chosen weights as YAML to paste into
src/socialcredit/data/config.yaml.
"""

from __future__ import annotations

import itertools
import sys

from socialcredit.bundle import FeatureBundle
from socialcredit.compliance import default_ruleset, evaluate_compliance
from socialcredit.config import default_config
from socialcredit.pipeline import DecisionPipeline
from socialcredit.scoring import ScoringModel, score
from socialcredit.synthetic import Archetype, synthesize_profile

THETA_HIGH = 0.70
THETA_LOW = 0.40
MIN_MARGIN = 0.05
SEED = 42

# The documented grid. Fixed weights are values with a single sensible choice
# at this scale; searched weights are the ones that trade off the three
# fixtures against each other.
GRID = {
    "w_prof": (1.0, 1.2),
    "w_lifestyle": (0.4, 0.5),
    "w_risk": (-0.3, -0.4),  # alcohol_risk and gambling_risk share this
    "w_verified": (0.6, 0.8),
    "lambda": (1.5, 2.0, 2.5),
}
FIXED = {
    "w_edu": 0.4,
    "w_sent": 0.3,
    "w_charity": 0.4,
    "w_spend": 0.2,
    "w_asset": 0.3,
    "w_drugs": -0.5,
    "w_party": -0.3,
    "w_centrality": 0.3,
    "w_clustering": 0.2,
}


def model_from(combo: dict, d: int) -> ScoringModel:
    return ScoringModel(
        w_t=(
            combo["w_prof"],
            FIXED["w_edu"],
            FIXED["w_sent"],
            FIXED["w_charity"],
            0.0,
            0.0,
            0.0,
            FIXED["w_spend"],
        ),
        w_i=(
            combo["w_lifestyle"],
            FIXED["w_asset"],
            combo["w_risk"],
            combo["w_risk"],
            FIXED["w_drugs"],
            FIXED["w_party"],
        ),
        w_g=(0.0,) * (2 * d)
        + (FIXED["w_centrality"], FIXED["w_clustering"], combo["w_verified"]),
        penalty_weight=combo["lambda"],
        theta_high=THETA_HIGH,
        theta_low=THETA_LOW,
        version="calibration-candidate",
    )


def main() -> int:
    config = default_config()
    pipeline = DecisionPipeline(config)
    rules = default_ruleset()

    cases = []
    for archetype in Archetype:
        profile = synthesize_profile(archetype, SEED)
        bundle = pipeline.extract(profile)
        verdict = evaluate_compliance(profile, bundle, rules)
        cases.append((archetype, bundle, verdict))

    def margins(model: ScoringModel) -> list[float]:
        out = []
        for archetype, bundle, verdict in cases:
            n = score(model, bundle, verdict, user_id="cal").normalized_score
            if archetype is Archetype.PROFESSIONAL_PRUDENT:
                out.append(n - THETA_HIGH)
            elif archetype is Archetype.SPARSE_RISKY:
                out.append(THETA_LOW - n)
            else:
                out.append(n - THETA_LOW)
        return out

    best: tuple[float, dict] | None = None
    keys = list(GRID)
    for values in itertools.product(*(GRID[k] for k in keys)):
        combo = dict(zip(keys, values))
        model = model_from(combo, config.gnn.d)
        worst = min(margins(model))
        if best is None or worst > best[0]:
            best = (worst, combo)

    assert best is not None
    worst, combo = best
    model = model_from(combo, config.gnn.d)
    print(f"# best min-margin: {worst:.4f} (required >= {MIN_MARGIN})")
    for (archetype, _b, _v), margin in zip(cases, margins(model)):
        print(f"#   {archetype.value}: margin {margin:.4f}")
    if worst < MIN_MARGIN:
        print("calibration FAILED: no grid point satisfies all margins", file=sys.stderr)
        return 1
    print("score:")
    print(f"  w_t: {list(model.w_t)}")
    print(f"  w_i: {list(model.w_i)}")
    print(f"  w_g: {list(model.w_g)}")
    print(f"  lambda: {model.penalty_weight}")
    print(f"  theta_high: {THETA_HIGH}")
    print(f"  theta_low: {THETA_LOW}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
