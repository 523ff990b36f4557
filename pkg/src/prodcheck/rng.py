"""Seeded 64-bit linear congruential generator.

Constants are Knuth's MMIX parameters:

    state' = (6364136223846793005 * state + 1442695040888963407) mod 2**64

Outputs are taken from the high 32 bits of the new state. The seed is mixed
in as ``state = seed mod 2**64`` followed by one step. Using a fixed LCG
instead of :mod:`random` keeps the sampled corpora stable across Python
versions and easy to reproduce elsewhere.
"""

MULTIPLIER = 6364136223846793005
INCREMENT = 1442695040888963407
MASK = (1 << 64) - 1


class Lcg:
    def __init__(self, seed=0):
        self.state = seed & MASK
        self.next_u64()

    def next_u64(self):
        self.state = (MULTIPLIER * self.state + INCREMENT) & MASK
        return self.state

    def next_u32(self):
        return self.next_u64() >> 32

    def below(self, n):
        """Uniform-ish integer in ``range(n)`` (modulo bias is negligible here)."""
        if n <= 0:
            raise ValueError("n must be positive")
        return self.next_u32() % n

    def choice(self, seq):
        return seq[self.below(len(seq))]

    def chance(self, num, den):
        """True with probability num/den."""
        return self.below(den) < num

    def sample(self, seq, k):
        pool = list(seq)
        out = []
        for _ in range(min(k, len(pool))):
            out.append(pool.pop(self.below(len(pool))))
        return out
