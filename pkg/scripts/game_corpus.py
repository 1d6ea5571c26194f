#!/usr/bin/env python3
"""Play the unliftability game against the published adversary corpus.

Prints one JSON transcript per play; every play must produce a finite
certificate (the corpus excludes multiplier matches by construction), and
for each play a handful of follow-up pairs is checked for the violated
identity index.

    python scripts/game_corpus.py [--limit N]
"""

import argparse
import json
import random
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from dvfields.game import make_game_model, sigma_check_triple, sigma_refute
from dvfields.hahn import constant, monomial, one, zero
from dvfields.ordgroup import ZZW
from dvfields.parsing import format_group_elem, format_series
from dvfields.suites import game_corpus


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--limit", type=int, default=None)
    args = ap.parse_args()
    m = make_game_model()
    plays = game_corpus()
    if args.limit:
        plays = plays[: args.limit]
    rng = random.Random(1)
    G = ZZW
    for i, a_prime in enumerate(plays):
        tr = sigma_refute(m, a_prime)
        db, dc = m.spec.partial(tr.b), m.spec.partial(tr.c)
        pool = [zero(G), one(G), monomial(G, G.elem([0, 1])), db.rep, dc.rep]
        indices = []
        for j in range(6):
            bp = pool[rng.randrange(len(pool))]
            cp = pool[rng.randrange(len(pool))]
            indices.append(sigma_check_triple(m, tr, bp, cp))
        print(
            json.dumps(
                {
                    "play": i,
                    "a_prime": format_series(tr.a_prime),
                    "n": tr.n,
                    "val_diff": format_group_elem(tr.val_diff),
                    "reply": [format_series(tr.b), format_series(tr.c)],
                    "violated_indices": indices,
                },
                sort_keys=True,
            )
        )
    print(f"refuted {len(plays)} plays with no soundness alarms", file=sys.stderr)


if __name__ == "__main__":
    main()
