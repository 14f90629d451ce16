"""A 64-bit linear congruential generator so random tiers reproduce anywhere."""
from __future__ import annotations

from .finset import FinFn, FinSet, canonical_set, make_fn

MULT = 6364136223846793005
INC = 1442695040888963407
MASK = (1 << 64) - 1


class Lcg:
    def __init__(self, seed: int = 0):
        self.state = seed & MASK

    def next_u64(self) -> int:
        self.state = (self.state * MULT + INC) & MASK
        return self.state

    def below(self, n: int) -> int:
        """Uniform-ish integer in ``[0, n)`` from the high 32 bits."""
        if n <= 0:
            raise ValueError("n must be positive")
        return (self.next_u64() >> 32) % n

    def between(self, lo: int, hi: int) -> int:
        return lo + self.below(hi - lo + 1)

    def choice(self, seq):
        return seq[self.below(len(seq))]

    def function(self, dom: FinSet, cod: FinSet) -> FinFn:
        if len(dom) and not len(cod):
            raise ValueError("no function from a nonempty set to the empty set")
        return make_fn(dom, cod, {x: self.choice(cod.elements) for x in dom})

    def finset(self, max_size: int, prefix: str, min_size: int = 0) -> FinSet:
        return canonical_set(self.between(min_size, max_size), prefix)
