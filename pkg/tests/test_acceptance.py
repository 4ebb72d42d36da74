"""Acceptance criteria, one test each; every test prints a single PASS/FAIL line."""

import itertools
import random
import time
from fractions import Fraction

import pytest

from gausspicard.cli import DEFAULT_DEPTH
from gausspicard.cover import covering_spheres, region_max_bound, sigma_pieces, sphere_value, verify_covering
from gausspicard.exact_arith import GaussInt, GaussRat
from gausspicard.form import IDENTITY, J, GroupElement, is_member
from gausspicard.generators import M1, M2, R, STABILIZER_GENERATORS, T1, T2, random_word
from gausspicard.heisenberg import rotation, translation
from gausspicard.langlands import decompose, recompose
from gausspicard.stab_words import conjugation_table, stab_word, verify_proof_identities
from gausspicard.u2_words import U1, U2, as_u2, enumerate_u2, evaluate_u2, u2_mul, u2_word

I = GaussInt(0, 1)


@pytest.fixture
def report(capsys):
    lines = []
    yield lines.append
    with capsys.disabled():
        for line in lines:
            print(f"\n{line}", end="")


def criterion(report, n, title, ok, detail=""):
    report(f"[{'PASS' if ok else 'FAIL'}] criterion {n}: {title}" + (f" ({detail})" if detail else ""))
    assert ok


@pytest.fixture(scope="module")
def stabilizer_words():
    rng = random.Random(20240601)
    return [random_word(rng, STABILIZER_GENERATORS, 30) for _ in range(500)]


def test_1_generators(report):
    start = time.perf_counter()
    ok = all(is_member(g) for g in (T1, T2, M1, M2, R))
    ok = ok and R @ R == IDENTITY and M1 @ M1 == IDENTITY and M2**4 == IDENTITY and M2**2 != IDENTITY
    elapsed = time.perf_counter() - start
    criterion(report, 1, "generators are members, R^2 = M1^2 = M2^4 = I", ok and elapsed < 1, f"{elapsed:.3f}s")


def test_2_u2(report):
    elems = enumerate_u2()
    words_ok = all(evaluate_u2(u2_word(u)) == u for u in elems)
    displayed = u2_mul(u2_mul(U1, U2), U1) == as_u2([[1, 0], [0, I]])
    criterion(report, 2, "U(2; Z[i]) has 32 elements, all with verified words; U1 U2 U1 = diag(1, i)",
              len(elems) == 32 and words_ok and displayed, f"{len(elems)} elements")  # fmt: skip


def test_3_langlands_roundtrip(report, stabilizer_words):
    bad = 0
    for w in stabilizer_words:
        p = w.evaluate()
        params = decompose(p)
        norm = params.tau[0].abs2() + params.tau[1].abs2()
        ok = (
            recompose(params) == p
            and params.r == 1
            and params.t.denominator == 1
            and params.t % 2 == 0
            and norm.denominator == 1
            and norm % 2 == 0
        )
        bad += not ok
    criterion(report, 3, "500 random stabilizer words decompose and recompose exactly", bad == 0, f"{bad} failures")


def test_4_stab_word(report, stabilizer_words):
    start = time.perf_counter()
    bad = 0
    for w in stabilizer_words:
        p = w.evaluate()
        sw = stab_word(p)
        bad += sw.word.evaluate().scale(sw.scalar_unit) != p
    rots = [rotation(u) for u in sorted(enumerate_u2(), key=str)]
    count = 0
    rng = range(-3, 4)
    for a, b, c, d in itertools.product(rng, repeat=4):
        if (a + b + c + d) % 2:
            continue  # |tau|^2 must be even
        for t in range(-6, 7, 2):
            n = translation((GaussInt(a, b), GaussInt(c, d)), t)
            for m in rots:
                p = n @ m
                bad += stab_word(p).evaluate() != p
                count += 1
    elapsed = time.perf_counter() - start
    criterion(report, 4, "stab_word roundtrip on 500 random words and the exhaustive slab",
              bad == 0 and elapsed < 60, f"{count} slab elements, {bad} failures, {elapsed:.1f}s")  # fmt: skip


def test_5_identities(report):
    rows = verify_proof_identities()
    stated = [r for r in rows if r.origin == "stated"]
    derived = [r for r in rows if r.origin != "stated"]
    table_ok = all(
        w.evaluate() @ T1 @ w.evaluate().inverse() == translation((GaussInt(a, b), GaussInt(c, d)), 0)
        for (a, b, c, d), w in conjugation_table().items()
    )
    for r in stated:
        report(f"    {'holds' if r.holds else 'FAILS'}  {r.name}: {r.statement}")
    ok = bool(derived) and all(r.holds for r in derived) and table_ok
    criterion(report, 5, "identity verdict table; re-derived identities and conjugation table all hold", ok,
              f"stated {sum(r.holds for r in stated)}/{len(stated)} hold, "
              f"re-derived {sum(r.holds for r in derived)}/{len(derived)} hold")  # fmt: skip


def test_6_bounds(report):
    s0 = covering_spheres()[0]
    pieces = sigma_pieces()
    b5 = region_max_bound(pieces[4], s0)
    b2 = region_max_bound(pieces[1], s0)
    ok = b5 == 2 and b2 == Fraction(13, 4) and b5 < 4 and b2 < 4
    criterion(report, 6, "Sigma5 and Sigma2 bounds against S0", ok, f"{b5} and {b2}")


def test_7_covering(report):
    start = time.perf_counter()
    spheres = covering_spheres()
    by_name = {s.name: s for s in spheres}
    pieces = sigma_pieces()
    cert = verify_covering(pieces, spheres, DEFAULT_DEPTH)
    elapsed = time.perf_counter() - start
    ok = cert.complete and all(leaf.margin > 0 for leaf in cert.leaves)
    for piece in pieces:
        leaves = cert.leaves_for(piece.label)
        ok = ok and sum(leaf.box.volume() for leaf in leaves) == piece.volume()
        for leaf in leaves:
            s = by_name[leaf.sphere]
            ok = ok and max(sphere_value(v, s) for v in leaf.box.vertices()) < s.radius4
    for p, box in cert.uncovered:
        report(f"    uncovered in {p}: {box.to_json()}")
    criterion(report, 7, "all nine pieces covered with strictly positive margins", ok and elapsed < 300,
              f"max depth {DEFAULT_DEPTH}, depth used {cert.depth_used}, {cert.leaf_count} leaves, {elapsed:.2f}s")  # fmt: skip


def _star(g):
    r = g.rows()
    return GroupElement([[r[j][i].conj() for j in range(4)] for i in range(4)])


def _naive(a, b):
    ra, rb = a.rows(), b.rows()
    return GroupElement([[sum((ra[i][k] * rb[k][j] for k in range(4)), GaussRat(0)) for j in range(4)] for i in range(4)])


def test_8_random_words(report):
    rng = random.Random(8)
    bad = 0
    for _ in range(1000):
        g = random_word(rng, max_len=30).evaluate()
        integral = all(x.is_integral() for row in g.rows() for x in row)
        bad += not (integral and _naive(_naive(_star(g), J), g) == J)
    criterion(report, 8, "1000 random words in all five generators are integral and preserve J", bad == 0, f"{bad} failures")
