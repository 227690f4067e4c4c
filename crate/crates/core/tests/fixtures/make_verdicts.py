"""Writes verdicts.csv: exponent tuples with their expected condition verdicts.

The classification here is written from the inequality statements with exact
rational arithmetic and shares no code with the Rust checkers.
"""

import csv
import random
from fractions import Fraction as F
from pathlib import Path

RECIPS = [F(0), F(1, 4), F(1, 2), F(3, 4), F(1)]
ORDERS = [F(1, 10), F(1, 4), F(1, 2), F(1), F(3, 2), F(2), F(4)]


def text(recip):
    return "inf" if recip == 0 else repr(float(1 / recip))


def leibniz(s, a1, b1, a2, b2, ir, d):
    pq = [a1, b1, a2, b2]
    even = s.denominator == 1 and s.numerator % 2 == 0 and s > 0
    if all(v < 1 for v in pq) and 0 < ir < 2 and (s > d * ir - d or even):
        return "case_i"
    if all(v == 0 for v in pq) and ir == 0:
        return "case_ii"
    if a1 == 1 and a2 == 1 and b1 == b2 and ir == 1 + b1 and 1 <= ir <= 2:
        return "case_iii"
    return "rejected"


def product(s, ip, iq, ir, d, manifold):
    if ip + iq > ir + s / d:
        return "rejected"
    if iq > 1 - ip or 1 - ir > 1 - ip:
        return "rejected"
    if manifold == "euclidean" and ip + iq < ir:
        return "rejected"
    if ip < 1 and 0 < iq < 1 and 0 < ir < 1:
        return "case_i"
    if ip < 1 and ip == ir and iq == 0:
        return "case_ii"
    if ip < 1 and iq > 0 and ir == 1 and iq == 1 - ip:
        return "case_iii"
    if ip == 1 and ir == 1 and iq == 0:
        return "case_iv"
    return "rejected"


def main():
    rng = random.Random(20240611)
    leib = []
    for a1 in RECIPS:
        for b1 in RECIPS:
            for a2 in RECIPS:
                for b2 in RECIPS:
                    if a1 + b1 != a2 + b2:
                        continue
                    for s in ORDERS:
                        for d in (1, 2):
                            leib.append((s, a1, b1, a2, b2, a1 + b1, d))
    pinned = [
        (F(1, 2), F(1, 4), F(1, 4), F(1, 4), F(1, 4), F(1, 2), 1),
        (F(1), F(0), F(0), F(0), F(0), F(0), 1),
        (F(1), F(1), F(1, 2), F(1), F(1, 2), F(3, 2), 1),
        (F(1, 2), F(5, 6), F(5, 6), F(5, 6), F(5, 6), F(5, 3), 1),
    ]
    chosen = pinned + rng.sample([t for t in leib if t not in pinned], 96)

    prod = []
    for ip in RECIPS:
        for iq in RECIPS:
            for ir in RECIPS:
                for s in ORDERS:
                    for d in (1, 2):
                        for m in ("torus", "euclidean"):
                            prod.append((s, ip, iq, ir, d, m))
    pinned_p = [
        (F(1, 2), F(0), F(1, 2), F(1, 2), 1, "torus"),
        (F(1, 2), F(1, 2), F(0), F(1, 2), 1, "torus"),
        (F(1, 2), F(1, 2), F(1, 2), F(1), 1, "torus"),
        (F(1, 2), F(1), F(0), F(1), 1, "torus"),
        (F(1, 10), F(1, 2), F(1, 2), F(0), 1, "euclidean"),
    ]
    chosen_p = pinned_p + rng.sample([t for t in prod if t not in pinned_p], 95)

    rows = []
    for s, a1, b1, a2, b2, ir, d in chosen:
        v = leibniz(s, a1, b1, a2, b2, ir, d)
        rows.append(["leibniz", repr(float(s)), text(a1), text(b1), text(a2), text(b2), text(ir), d, "", v])
    for s, ip, iq, ir, d, m in chosen_p:
        v = product(s, ip, iq, ir, d, m)
        rows.append(["product", repr(float(s)), text(ip), text(iq), "", "", text(ir), d, m, v])

    seen = {r[-1] for r in rows if r[0] == "leibniz"}
    assert seen == {"case_i", "case_ii", "case_iii", "rejected"}, seen
    seen = {r[-1] for r in rows if r[0] == "product"}
    assert seen == {"case_i", "case_ii", "case_iii", "case_iv", "rejected"}, seen

    out = Path(__file__).with_name("verdicts.csv")
    with out.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["kind", "s", "p1", "q1", "p2", "q2", "r", "d", "manifold", "verdict"])
        w.writerows(rows)


if __name__ == "__main__":
    main()
