from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, Sequence, TypeVar, Union

import Levenshtein
import numpy as np

T = TypeVar("T")
R = TypeVar("R")

# Products of int64 matrices are exact while n * max|a| * max|b| stays below this
INT64_SAFE = 2**62


def find_close_key(d: Iterable[str], key: str, max_distance: int = 3) -> Union[str, None]:
    """Return first key in d whose Levenshtein distance to key is <= max_distance"""
    min_distance = float("inf")
    closest_key = None

    for dict_key in d:
        distance = Levenshtein.distance(key, dict_key)
        if distance < min_distance:
            min_distance = distance
            closest_key = dict_key

    if min_distance <= max_distance:
        return closest_key

    return None


def max_abs(a: np.ndarray) -> int:
    if a.size == 0:
        return 0
    return int(max(abs(int(a.max())), abs(int(a.min()))))


def fits_int64(n: int, bound_a: int, bound_b: int) -> bool:
    return n * bound_a * bound_b < INT64_SAFE


def as_exact(a: np.ndarray) -> np.ndarray:
    """Copy of a holding Python integers (dtype=object)."""
    a = np.asarray(a)
    if a.dtype == object:
        return a
    if a.dtype == bool:
        a = a.astype(np.int64)
    return a.astype(object)


def exact_matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Integer matrix product that never overflows.

    int64 is used when the magnitude bound allows it, otherwise both operands
    are widened to Python integers. Object inputs stay object.
    """
    a, b = np.asarray(a), np.asarray(b)
    if a.dtype == object or b.dtype == object:
        return np.dot(as_exact(a), as_exact(b))

    inner = a.shape[-1] if a.ndim else 1
    if fits_int64(inner, max_abs(a), max_abs(b)):
        return a.astype(np.int64) @ b.astype(np.int64)
    return np.dot(as_exact(a), as_exact(b))


def parallel_map(func: Callable[[T], R], items: Sequence[T], workers: int) -> List[R]:
    """Map func over items, in a thread pool when workers > 1. Order is kept."""
    if workers <= 1 or len(items) <= 1:
        return [func(item) for item in items]

    with ThreadPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(func, items))
