#!/usr/bin/env python3
"""Independent reference values for the rng and LFSR tests.

Plain integer arithmetic, no shared code with the C++ sources. The printed
values are frozen in tests/test_rng.cpp and tests/test_sequences.cpp.
"""

MASK = (1 << 64) - 1
GAMMA = 0x9E3779B97F4A7C15


def mix(z):
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK
    return z ^ (z >> 31)


class SplitMix:
    def __init__(self, seed):
        self.state = seed & MASK

    def next(self):
        self.state = (self.state + GAMMA) & MASK
        return mix(self.state)

    def below(self, bound):
        return (self.next() * bound) >> 64


def permutation(seed, n):
    rng = SplitMix(seed)
    p = list(range(n))
    for i in range(n - 1, 0, -1):
        j = rng.below(i + 1)
        p[i], p[j] = p[j], p[i]
    return p


def lfsr(poly, n, state):
    """Fibonacci register: output stage n-1, feedback = parity(state & taps)."""
    full = (1 << n) - 1
    taps = (poly >> 1) & full
    out = []
    for _ in range(full):
        out.append((state >> (n - 1)) & 1)
        fb = bin(state & taps).count("1") & 1
        state = ((state << 1) | fb) & full
    return [1 if b == 0 else -1 for b in out]


def period(poly, n):
    """Brute-force state period from the all-ones state."""
    full = (1 << n) - 1
    taps = (poly >> 1) & full
    start = state = full
    for k in range(1, full + 2):
        fb = bin(state & taps).count("1") & 1
        state = ((state << 1) | fb) & full
        if state == start:
            return k
    return 0


def primitive_masks(n):
    return [m for m in range(1 << n | 1, 1 << (n + 1), 2) if period(m, n) == (1 << n) - 1]


if __name__ == "__main__":
    r = SplitMix(0)
    print("seed0 first3:", [hex(r.next()) for _ in range(3)])
    print("derive_seed(1, 0..2):", [mix((1 ^ i) + GAMMA & MASK) for i in range(3)])
    print("perm(42, 8):", permutation(42, 8))
    print("perm(7, 10):", permutation(7, 10))
    print("lfsr x^3+x+1:", lfsr(0b1011, 3, 0b111))
    print("lfsr x^4+x+1:", lfsr(0b10011, 4, 0b1111))
    for n in range(3, 11):
        ms = primitive_masks(n)
        print("deg", n, "count", len(ms), "first", ms[:4])


def worst_cross(n):
    import numpy as np
    codes = [np.array(lfsr(m, n, (1 << n) - 1), dtype=float) for m in primitive_masks(n)]
    spectra = [np.fft.fft(c) for c in codes]
    worst = 0
    for i in range(len(codes)):
        for j in range(len(codes)):
            if i != j:
                r = np.fft.ifft(np.conj(spectra[i]) * spectra[j]).real
                worst = max(worst, int(round(np.abs(r).max())))
    return worst


if __name__ == "__main__":
    print("worst cross-correlation deg 10:", worst_cross(10))
