"""Seeded, splittable integer sampling.

Every random draw comes from its own stream, keyed by ``(seed, purpose, index...)``,
so a trial is reproducible on its own and the order in which trials run does
not matter.  Streams are numpy ``PCG64`` generators seeded through
``SeedSequence(seed, spawn_key=(purpose, *index))``.

Integers in ``[-bound, bound]`` are drawn by rejection from raw 64-bit words,
which keeps the distribution exactly uniform for any bound, including bounds
beyond the 64-bit range.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

# purpose keys; never renumber, reports depend on them
REGULAR = 1
PAIRS = 2
SHIFT_ORIGINS = 3
SHIFT_POINTS = 4
MOBIUS = 5
LAMBDA = 6


def stream(seed: int, purpose: int, *index: int) -> np.random.Generator:
    if seed < 0:
        raise ValueError("seed must be nonnegative")
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(purpose, *index))))


def uniform_int(gen: np.random.Generator, bound: int) -> int:
    """Uniform integer in ``[-bound, bound]``."""
    if bound < 0:
        raise ValueError("bound must be nonnegative")
    span = 2 * bound + 1
    bits = span.bit_length()
    words = (bits + 63) // 64
    mask = (1 << bits) - 1
    while True:
        raw = gen.bit_generator.random_raw(words)
        value = 0
        for w in np.atleast_1d(raw):
            value = (value << 64) | int(w)
        value &= mask
        if value < span:
            return value - bound


def random_vector(gen: np.random.Generator, dim: int, bound: int) -> tuple[Fraction, ...]:
    return tuple(Fraction(uniform_int(gen, bound)) for _ in range(dim))


def random_vectors(seed: int, purpose: int, index: int | tuple[int, ...], count: int, dim: int,
                   bound: int) -> list[tuple[Fraction, ...]]:
    gen = stream(seed, purpose, *(index if isinstance(index, tuple) else (index,)))
    return [random_vector(gen, dim, bound) for _ in range(count)]
