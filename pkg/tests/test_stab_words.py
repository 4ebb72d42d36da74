import random

import pytest

from gausspicard.exact_arith import GaussInt
from gausspicard.form import IDENTITY
from gausspicard.generators import M1, M2, R, STABILIZER_GENERATORS, T1, T2, GeneratorWord, random_word
from gausspicard.heisenberg import rotation, translation
from gausspicard.langlands import decompose
from gausspicard.stab_words import conjugation_table, parity_class, stab_word, translation_word, verify_proof_identities

I = GaussInt(0, 1)


def check(p):
    sw = stab_word(p)
    assert sw.word.evaluate().scale(sw.scalar_unit) == p
    assert sw.evaluate() == p
    assert {n for n, _ in sw.word} <= set(STABILIZER_GENERATORS)
    return sw


def test_generators_and_identity():
    assert len(stab_word(IDENTITY).word) == 0
    for g in (T1, T2, M1, M2):
        check(g)
    assert stab_word(T2).word == GeneratorWord.of("T2")


def test_scalar_units():
    for u in (I, -1, -I):
        sw = check((T1 @ M2).scale(u))
        assert sw.scalar_unit == u


def test_random_words():
    rng = random.Random(3)
    for _ in range(200):
        check(random_word(rng, STABILIZER_GENERATORS).evaluate())


def test_parity_classes():
    assert parity_class((GaussInt(1, 1), 0)) == "both-even"
    assert parity_class((1, I)) == "both-odd"
    with pytest.raises(ValueError):
        parity_class((1, 0))
    for tau in [(1, 1), (1, I), (I, -1), (GaussInt(2, 1), GaussInt(0, 3))]:
        tau = tuple(GaussInt(x) if isinstance(x, int) else x for x in tau)
        word, m, _ = translation_word(tau, 0)
        assert word.evaluate() @ T2**m == translation(tau, 0)


def test_conjugation_table():
    table = conjugation_table()
    assert len(table) == 16
    for (a, b, c, d), w in table.items():
        m = w.evaluate()
        assert m @ T1 @ m.inverse() == translation((GaussInt(a, b), GaussInt(c, d)), 0)


def test_rejects():
    with pytest.raises(ValueError, match="fix infinity"):
        stab_word(R)
    with pytest.raises(ValueError):
        stab_word(translation((1, 0), 0))


def test_identity_audit():
    rows = verify_proof_identities()
    derived = [r for r in rows if r.origin != "stated"]
    stated = [r for r in rows if r.origin == "stated"]
    assert derived and all(r.holds for r in derived)
    failing = {r.name for r in stated if not r.holds}
    assert {"split (i-1,0)", "split (0,i-1)"} <= failing
    assert {"split (1+i,0)", "split (0,1+i)"}.isdisjoint(failing)
    for r in stated:
        assert (r.discrepancy is None) == r.holds


def test_agrees_with_decompose():
    rng = random.Random(4)
    for _ in range(100):
        p = random_word(rng, STABILIZER_GENERATORS).evaluate().scale(rng.choice([1, I, -1, -I]))
        params = decompose(p)
        sw = stab_word(p)
        assert sw.scalar_unit == params.scalar_unit
        assert sw.rotation.evaluate() == rotation(params.U)
        assert sw.translation.evaluate() @ T2**sw.central == translation(params.tau, params.t)
