"""Seeded random two-stratum programs for bulk cross-checking."""

from __future__ import annotations

import random

VARS = ("X", "Y", "Z")


def random_program(seed: int, max_consts: int = 3, max_preds: int = 4,
                   max_rules: int = 6, max_body: int = 3) -> str:
    """Program text whose predicates split into a lower and an upper group.

    Lower-group rules only mention lower predicates positively; upper-group
    rules may negate lower predicates.  Every head or negated variable
    occurs in a positive body literal, so the program is range restricted.
    """
    rng = random.Random(seed)
    consts = [f"c{i}" for i in range(rng.randint(2, max_consts))]
    n_preds = rng.randint(2, max_preds)
    preds = [(f"p{i}", rng.randint(0, 2)) for i in range(n_preds)]
    n_low = rng.randint(1, n_preds - 1)
    low, high = preds[:n_low], preds[n_low:]

    def atom(pred, arity, pool):
        args = [rng.choice(pool) for _ in range(arity)]
        return f"{pred}({','.join(args)})" if args else pred

    if all(arity == 0 for _, arity in low):
        low[0] = (low[0][0], 1)   # make sure the constants occur somewhere
        preds[0] = low[0]

    def args_of(text):
        return text[text.find("(") + 1:-1].split(",") if "(" in text else []

    lines = []
    for pred, arity in low:
        for _ in range(rng.randint(1, 4)):
            lines.append(atom(pred, arity, consts) + ".")
    for _ in range(rng.randint(2, max_rules)):
        upper = bool(high) and rng.random() < 0.5
        hp, ha = rng.choice(high if upper else low)
        pool = list(VARS[:rng.randint(1, 3)]) + consts[:1]
        pos, negs = [], []
        for _ in range(rng.randint(1, max_body)):
            bp, ba = rng.choice(preds if upper else low)
            if upper and (bp, ba) in low and rng.random() < 0.4:
                negs.append((bp, ba))
            else:
                pos.append(atom(bp, ba, pool))
        if not pos:
            bp, ba = rng.choice(low)
            pos.append(atom(bp, ba, pool))
        bound = sorted({a for text in pos for a in args_of(text) if a in VARS})
        safe = bound + consts[:1]
        body = pos + ["!" + atom(bp, ba, safe) for bp, ba in negs]
        lines.append(f"{atom(hp, ha, safe)} :- {', '.join(body)}.")
    return "\n".join(lines) + "\n"
