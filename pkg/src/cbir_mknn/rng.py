"""Seedable 64-bit linear congruential generator.

The synthetic benchmark draws every random number from this generator so
that runs are reproducible bit-for-bit from the seed alone, and so the
streams can be regenerated outside Python.  The full recipe:

* state update: ``state' = (state * 6364136223846793005
  + 1442695040888963407) mod 2**64`` (Knuth's MMIX constants); a call to
  ``next_u64`` performs one update and returns the new state.
* uniform float in ``[0, 1)``: ``next_u64() >> 11``, divided by ``2**53``.
* standard normal: Box-Muller on two draws.  The first draw is mapped to
  ``(0, 1]`` as ``((next_u64() >> 11) + 1) / 2**53`` so the logarithm is
  finite; the cosine branch is returned first and the sine branch on the
  following call.
* integer below ``n``: ``next_u64() % n`` (the modulo bias is irrelevant
  at this package's scales and keeps the rule trivial to reimplement).
* shuffle: Fisher-Yates from the last element down, partner drawn with
  ``below(i + 1)``.
"""

import math

MULTIPLIER = 6364136223846793005
INCREMENT = 1442695040888963407

_MASK64 = (1 << 64) - 1
_TWO53 = float(1 << 53)


class Lcg64:
    """Deterministic random stream; instances are cheap and independent."""

    def __init__(self, seed: int):
        self._state = seed & _MASK64
        self._spare_normal: float | None = None

    def next_u64(self) -> int:
        self._state = (self._state * MULTIPLIER + INCREMENT) & _MASK64
        return self._state

    def uniform(self) -> float:
        """Next float in [0, 1)."""
        return (self.next_u64() >> 11) / _TWO53

    def below(self, n: int) -> int:
        """Next integer in [0, n)."""
        if n <= 0:
            raise ValueError(f"below() needs a positive bound, got {n}")
        return self.next_u64() % n

    def normal(self) -> float:
        """Next standard normal deviate (Box-Muller)."""
        if self._spare_normal is not None:
            value, self._spare_normal = self._spare_normal, None
            return value
        u1 = ((self.next_u64() >> 11) + 1) / _TWO53
        u2 = self.uniform()
        radius = math.sqrt(-2.0 * math.log(u1))
        theta = 2.0 * math.pi * u2
        self._spare_normal = radius * math.sin(theta)
        return radius * math.cos(theta)

    def shuffle(self, items: list) -> None:
        """Shuffle a list in place."""
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]
