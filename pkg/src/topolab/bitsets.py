"""Bitmask helpers for subsets of {0..n-1}.

Point-sets are plain ints used as bitmasks, so subset algebra is word-level
(&, |, ^) and quantifiers over subsets are loops over range(1 << n).
"""


def full_mask(n):
    return (1 << n) - 1


def mask_of(points):
    m = 0
    for p in points:
        m |= 1 << p
    return m


def points_of(mask):
    """Sorted list of the point indices set in mask."""
    out = []
    x = mask
    while x:
        low = x & -x
        out.append(low.bit_length() - 1)
        x ^= low
    return out


def iter_points(mask):
    x = mask
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def all_masks(n):
    return range(1 << n)


def is_subset(a, b):
    return a & ~b == 0
