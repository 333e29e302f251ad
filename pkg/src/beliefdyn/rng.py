"""Seeded, portable random number generation for reproducible sampling runs.

The generator is xoshiro256** seeded through SplitMix64, implemented on
64-bit integer arithmetic only.  Two runs with the same seed produce the
same draws on any platform and in any language that follows this recipe:

seeding
    state0 = seed XOR (stream * 0x9E3779B97F4A7C15), truncated to 64 bits.
    Four successive SplitMix64 outputs from ``state0`` form the xoshiro
    state word s[0..3] (all-zero states are bumped to s[0] = 1).

streams
    Independent subsequences are derived by changing ``stream`` while the
    seed stays fixed.  The network-structure sampler uses stream 1 and the
    concept-structure sampler uses stream 2, so adding concept sampling to
    a run never perturbs the network draws.

floats and index draws
    ``next_float`` takes the top 53 bits of the next output, giving a
    uniform double in [0, 1).  ``next_index(weights)`` inverts the running
    sum of the weights at that uniform.
"""

MASK64 = (1 << 64) - 1

NETWORK_STREAM = 1
CONCEPT_STREAM = 2


def _splitmix64(state):
    """One SplitMix64 step; returns (new_state, output)."""
    state = (state + 0x9E3779B97F4A7C15) & MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    z = z ^ (z >> 31)
    return state, z


def _rotl(x, k):
    return ((x << k) | (x >> (64 - k))) & MASK64


class Xoshiro256StarStar:
    """xoshiro256** with SplitMix64 seeding and numbered sub-streams."""

    def __init__(self, seed, stream=0):
        state = (int(seed) ^ ((stream * 0x9E3779B97F4A7C15) & MASK64)) & MASK64
        s = []
        for _ in range(4):
            state, out = _splitmix64(state)
            s.append(out)
        if not any(s):
            s[0] = 1
        self._s = s

    def next_uint64(self):
        s = self._s
        result = (_rotl((s[1] * 5) & MASK64, 7) * 9) & MASK64
        t = (s[1] << 17) & MASK64
        s[2] ^= s[0]
        s[3] ^= s[1]
        s[1] ^= s[2]
        s[0] ^= s[3]
        s[2] ^= t
        s[3] = _rotl(s[3], 45)
        return result

    def next_float(self):
        return (self.next_uint64() >> 11) * (2.0 ** -53)

    def next_index(self, weights):
        """Draw an index according to a sequence of positive weights.

        The weights need not be normalized; the draw inverts their running
        sum at a single uniform variate, so the outcome is a deterministic
        function of the generator state and the weight values.
        """
        total = float(sum(weights))
        u = self.next_float() * total
        acc = 0.0
        for i, w in enumerate(weights):
            acc += float(w)
            if u < acc:
                return i
        return len(weights) - 1
