"""Tiny bitmask helpers; subsets of points 0..n-1 are masks."""


def full_mask(n: int) -> int:
    return (1 << n) - 1


def bits_of(mask: int) -> list[int]:
    """Member indices of a subset mask, ascending."""
    out = []
    t = 0
    while mask:
        if mask & 1:
            out.append(t)
        mask >>= 1
        t += 1
    return out


def popcount(mask: int) -> int:
    return mask.bit_count()
