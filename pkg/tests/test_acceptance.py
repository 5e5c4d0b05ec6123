"""Acceptance criteria, one test per criterion.

Each test prints a single ``[PASS]``/``[FAIL]`` line (also when run as a
script: ``python tests/test_acceptance.py``). Everything is exact, so every
comparison has zero tolerance; runtime limits are asserted where stated.
"""
from __future__ import annotations

import os
import subprocess
import sys
import time
from fractions import Fraction
from itertools import product

import pytest

from nsfusion import density, fusion, osp, zhu
from nsfusion.linalg import determinant
from nsfusion.ns import Mode, gram_kernel, h_1q, reducibility_locus, shapovalov_matrix, singular_verify, word_element
from nsfusion.scalar import RadicalNumber
from nsfusion.singvec import C_DEGENERATE, bsa_validate, singular_vector

ODD = [1, 3, 5, 7, 9]
PAIRS = list(product(ODD, repeat=2))
HALF = Fraction(1, 2)
SPINS = [Fraction(k, 2) for k in range(6)]


# collected for the pytest terminal summary (see conftest.py)
ACCEPTANCE_LINES: list[str] = []


def _report(number: int, title: str, ok: bool, seconds: float, note: str = "") -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:>2}: {title} ({seconds:.2f}s)"
    if note:
        line += f" -- {note}"
    ACCEPTANCE_LINES.append(line)
    print(line, flush=True)


def _timed(fn):
    start = time.perf_counter()
    result = fn()
    return result, time.perf_counter() - start


def criterion_1():
    bad, dt = _timed(lambda: {str(j): v for j in SPINS if (v := osp.verify_relations(j))})
    ok = not bad and dt < 1
    _report(1, "osp relations for 2j <= 5", ok, dt, f"violations {bad}" if bad else "")
    return ok


def criterion_2():
    def run():
        bad = []
        for j1, j2 in product(SPINS, repeat=2):
            found = osp.tensor_decompose(j1, j2)
            dims = sum(4 * k + 1 for k in found)
            if found != osp.grothendieck_product(j1, j2) or dims != (4 * j1 + 1) * (4 * j2 + 1):
                bad.append((str(j1), str(j2)))
        return bad

    bad, dt = _timed(run)
    ok = not bad and dt < 10
    _report(2, "Clebsch-Gordan decomposition and dimension count", ok, dt, f"mismatches {bad}" if bad else "")
    return ok


def criterion_3():
    notes = []
    ok = True
    for q in ODD:
        kern, dt = _timed(lambda: gram_kernel(C_DEGENERATE, h_1q(q), Fraction(q, 2)))
        if len(kern) != 1:
            ok = False
            notes.append(f"q={q}: kernel dim {len(kern)}")
            continue
        v = kern[0].element
        if not (kern[0].singular and singular_verify(v)):
            ok = False
            notes.append(f"q={q}: not annihilated")
        if v.weight != h_1q(q + 2) or v.weight != Fraction((q + 1) ** 2, 8):
            ok = False
            notes.append(f"q={q}: weight {v.weight}")
        if q == 9:
            notes.append(f"q=9 in {dt:.2f}s")
            ok = ok and dt < 60
    _report(3, "singular vectors q <= 9 from the Gram kernel", ok, 0.0 if not notes else dt, "; ".join(notes))
    return ok


def criterion_4():
    def run():
        h = h_1q(3)
        expected = word_element(C_DEGENERATE, h, [Mode.G(-HALF), Mode.L(-1)]) - word_element(
            C_DEGENERATE, h, [Mode.G(-3 * HALF)]
        )
        same = singular_vector(3) == expected
        # the determinant is a cubic in h, so agreement at 7 points is an identity
        dets = all(
            determinant(shapovalov_matrix(C_DEGENERATE, x, Fraction(3, 2))) == 8 * x * (x - HALF) ** 2
            for x in (Fraction(k, 3) for k in range(-3, 4))
        )
        return same, dets

    (same, dets), dt = _timed(run)
    ok = same and dets
    _report(4, "q=3 singular vector and level-3/2 determinant 8h(h-1/2)^2", ok, dt)
    return ok


def criterion_5():
    reports, dt = _timed(lambda: {q: bsa_validate(q) for q in ODD})
    verdicts = {q: r["proportional"] for q, r in reports.items()}
    ok = reports[1]["proportional"] and reports[1]["ratio"] == "1"
    _report(5, "BSA transcription report", ok, dt, f"proportional: {verdicts}")
    return ok


def _literal_sets(q, r):
    even = {h_1q(s) for s in range(q + r - 1, q - r, -4)}
    odd = {h_1q(s) for s in range(q + r - 3, q - r + 2, -4)}
    return even, odd


def _roots(poly, q, r):
    return zhu.root_labels(poly, q, r) if poly.degree > 0 else set()


def criterion_6():
    def run():
        bad = []
        for q, r in PAIRS:
            q1, q2 = zhu.q_polynomials(q, r)
            even, odd = _literal_sets(q, r)
            if _roots(q2, q, r) != even or _roots(q1, q, r) != odd:
                bad.append((q, r))
        return bad

    bad, dt = _timed(run)
    ok = not bad and dt < 120
    _report(6, "root sets of Q1, Q2 for q, r <= 9", ok, dt, f"{len(bad)} pairs differ: {bad}" if bad else "")
    return ok


def criterion_7():
    bad, dt = _timed(lambda: [(q, r) for q, r in PAIRS if not density.matches_zhu(q, r)])
    ok = not bad
    _report(7, "density projection proportional to Zhu polynomials", ok, dt, f"mismatches {bad}" if bad else "")
    return ok


def criterion_8():
    def run():
        bad = []
        for q, r in PAIRS:
            expected = fusion.FusionElement({s: 1 for s in range(abs(q - r) + 1, q + r, 2)})
            if fusion.generator_product(q, r) != expected:
                bad.append(("product", q, r))
            if q >= r:
                labels = [zhu.fusion_parity(q, r, s) for s in range(q + r - 1, q - r, -2)]
                if labels != [("even", "odd")[i % 2] for i in range(len(labels))]:
                    bad.append(("parity", q, r))
        return bad

    bad, dt = _timed(run)
    ok = not bad
    _report(8, "fusion products and alternating parity", ok, dt, f"failures {bad}" if bad else "")
    return ok


def criterion_9():
    (iso, ring), dt = _timed(lambda: (fusion.verify_isomorphism(9), fusion.verify_ring_axioms(9)))
    ok = iso and ring
    _report(9, "Grothendieck isomorphism and ring axioms up to b(9)", ok, dt, f"isomorphism={iso} ring={ring}")
    return ok


def criterion_10():
    s5 = RadicalNumber.sqrt(5)
    points, dt = _timed(lambda: reducibility_locus(Fraction(15, 2) - 3 * s5, 2))
    weights = [p.h for p in points]
    targets = [s5 / 2 - 1, Fraction(3, 4) * (s5 / 2 - 1)]
    ok = all(t in weights for t in targets)
    _report(10, "locus at c = 15/2 - 3*sqrt(5)", ok, dt)
    return ok


def criterion_11():
    cmd = [sys.executable, "-m", "nsfusion", "verify", "all", "--max", "9"]

    def run():
        procs = []
        for n in ("1", "1", "4"):
            env = dict(os.environ, NSFUSION_WORKERS=n)
            procs.append(subprocess.Popen(cmd, env=env, stdout=subprocess.PIPE, stderr=subprocess.PIPE))
        return [(p.communicate()[0], p.returncode) for p in procs]

    outs, dt = _timed(run)
    codes = [c for _, c in outs]
    ok = all(c == 0 for c in codes) and len({o for o, _ in outs}) == 1
    _report(11, "verify all --max 9 byte-identical across runs and worker counts", ok, dt, f"exit codes {codes}")
    return ok


CRITERIA = [
    criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
    criterion_7, criterion_8, criterion_9, criterion_10, criterion_11,
]


@pytest.mark.parametrize("criterion", CRITERIA, ids=[f"criterion_{i}" for i in range(1, 12)])
def test_criterion(criterion):
    assert criterion()


if __name__ == "__main__":
    results = [c() for c in CRITERIA]
    sys.exit(0 if all(results) else 1)
