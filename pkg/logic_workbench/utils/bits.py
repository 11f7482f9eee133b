"""
状態集合（ビットマスク）の補助関数

状態集合は int のビットマスクで表す。ビット i が立っていれば状態 i を含む。
"""
from typing import Iterable, Iterator

StateSet = int


def mask_of(indices: Iterable[int]) -> StateSet:
    """添字の列からビットマスクを作る"""
    mask = 0
    for i in indices:
        mask |= 1 << i
    return mask


def full_mask(n: int) -> StateSet:
    """n 状態すべてを含む集合"""
    return (1 << n) - 1


def iter_bits(mask: StateSet) -> Iterator[int]:
    """立っているビットの添字を小さい順に返す"""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def lowest(mask: StateSet) -> int:
    """最小の添字（空集合なら -1）"""
    return (mask & -mask).bit_length() - 1
