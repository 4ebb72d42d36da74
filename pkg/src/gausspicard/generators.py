"""The five generators of U(3,1; Z[i]) and words over them."""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path

from .exact_arith import GaussInt
from .form import IDENTITY, GroupElement
from .heisenberg import inversion, rotation, translation

__all__ = [
    "GENERATORS",
    "GENERATOR_ORDER",
    "T1",
    "T2",
    "M1",
    "M2",
    "R",
    "GeneratorWord",
    "load_generators",
    "generator_power",
    "random_word",
    "STABILIZER_GENERATORS",
]

I = GaussInt(0, 1)

T1 = translation((1, 1), 0)
T2 = translation((0, 0), 2)
M1 = rotation([[0, 1], [1, 0]])
M2 = rotation([[I, 0], [0, 1]])
R = inversion()

GENERATORS: dict[str, GroupElement] = {"T1": T1, "T2": T2, "M1": M1, "M2": M2, "R": R}
GENERATOR_ORDER = tuple(GENERATORS)

# finite orders used to normalise exponents; T1 and T2 have infinite order
_ORDERS = {"M1": 2, "M2": 4, "R": 2}


@lru_cache(maxsize=4096)
def generator_power(name: str, exp: int) -> GroupElement:
    return GENERATORS[name] ** exp


def _reduce_exp(name: str, exp: int) -> int:
    n = _ORDERS.get(name)
    if n is None:
        return exp
    e = exp % n
    # symmetric representative, ties resolved towards the positive exponent
    return e - n if 2 * e > n else e


@dataclass(frozen=True)
class GeneratorWord:
    """A product of generator powers, read left to right.

    ``letters`` is a tuple of ``(name, exponent)`` with names drawn from
    ``GENERATOR_ORDER``.
    """

    letters: tuple[tuple[str, int], ...] = ()

    def __post_init__(self):
        letters = tuple((str(n), int(e)) for n, e in self.letters)
        for n, _ in letters:
            if n not in GENERATORS:
                raise ValueError(f"unknown generator {n!r}")
        object.__setattr__(self, "letters", letters)

    @classmethod
    def of(cls, *letters) -> GeneratorWord:
        """``GeneratorWord.of("T1", ("M2", -1))``: bare names mean exponent 1."""
        return cls(tuple((x, 1) if isinstance(x, str) else tuple(x) for x in letters))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __add__(self, other: GeneratorWord) -> GeneratorWord:
        return GeneratorWord(self.letters + other.letters)

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        return " ".join(n if e == 1 else f"{n}^{e}" for n, e in self.letters)

    def inverse(self) -> GeneratorWord:
        return GeneratorWord(tuple((n, -e) for n, e in reversed(self.letters)))

    def power(self, k: int) -> GeneratorWord:
        base = self if k >= 0 else self.inverse()
        return GeneratorWord(base.letters * abs(k))

    def normalized(self) -> GeneratorWord:
        """Merge adjacent equal letters and drop trivial powers."""
        out: list[list] = []
        for n, e in self.letters:
            if out and out[-1][0] == n:
                out[-1][1] += e
            else:
                out.append([n, e])
            out[-1][1] = _reduce_exp(n, out[-1][1])
            if out[-1][1] == 0:
                out.pop()
        return GeneratorWord(tuple((n, e) for n, e in out))

    def evaluate(self) -> GroupElement:
        g = IDENTITY
        for n, e in self.letters:
            g = g @ generator_power(n, e)
        return g

    def to_json(self) -> list:
        return [[n, e] for n, e in self.letters]

    @classmethod
    def from_json(cls, data) -> GeneratorWord:
        if not isinstance(data, list):
            raise ValueError("word JSON must be a list of [name, exponent] pairs")
        letters = []
        for k, item in enumerate(data):
            if isinstance(item, str):
                letters.append((item, 1))
            elif isinstance(item, list) and len(item) == 2 and isinstance(item[1], int):
                letters.append((item[0], item[1]))
            else:
                raise ValueError(f"word[{k}]: expected [name, exponent], got {item!r}")
        return cls(tuple(letters))


def fixture_path() -> Path:
    return Path(str(resources.files("gausspicard") / "data" / "generators.json"))


def load_generators(path: str | Path | None = None) -> dict[str, GroupElement]:
    """Load generator matrices from the JSON interchange file.

    The file maps generator names to ``{"rows": ...}`` matrices.
    """
    p = Path(path) if path is not None else fixture_path()
    data = json.loads(p.read_text(encoding="utf-8"))
    if not isinstance(data, dict):
        raise ValueError(f"{p}: expected an object mapping generator names to matrices")
    out = {}
    for name in GENERATOR_ORDER:
        if name not in data:
            raise ValueError(f"{p}: missing generator {name!r}")
        try:
            out[name] = GroupElement.from_json(data[name])
        except ValueError as exc:
            raise ValueError(f"{p}: generator {name}: {exc}") from None
    return out


def dump_generators() -> dict:
    return {name: g.to_json() for name, g in GENERATORS.items()}


STABILIZER_GENERATORS = ("T1", "T2", "M1", "M2")


def random_word(rng, names=GENERATOR_ORDER, max_len: int = 30) -> GeneratorWord:
    """Random word of length 0..max_len with letters ``name^(+-1)``; ``rng`` is a ``random.Random``."""
    n = rng.randint(0, max_len)
    return GeneratorWord(tuple((rng.choice(names), rng.choice((1, -1))) for _ in range(n)))
