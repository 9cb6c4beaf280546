from hypothesis import strategies as st

from genuscount.core import SetPartition


@st.composite
def rgs(draw, min_n=1, max_n=12):
    n = draw(st.integers(min_n, max_n))
    out = [1]
    top = 1
    for _ in range(n - 1):
        a = draw(st.integers(1, top + 1))
        out.append(a)
        top = max(top, a)
    return tuple(out)


def set_partitions(min_n=1, max_n=12):
    return rgs(min_n, max_n).map(SetPartition.from_rgs)


@st.composite
def two_block_partitions(draw, min_n=2, max_n=12):
    n = draw(st.integers(min_n, max_n))
    first = draw(st.sets(st.integers(2, n), max_size=n - 2))
    block = sorted({1} | first)
    other = [x for x in range(1, n + 1) if x not in block]
    return SetPartition.from_blocks([block, other])
