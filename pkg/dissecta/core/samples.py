"""
Small posets, lattices and arrangements used by the tests and the docs.

The random generators take a `numpy.random.Generator` so that every
sample is reproducible from its seed.
"""

from itertools import combinations
from typing import List, Optional, Sequence

import numpy as np

from dissecta.core.dissection.arrangement import ArrangementPoset
from dissecta.core.dissection.setmodel import SetModel, subset_name, subset_order
from dissecta.core.poset import Poset, build_poset, transitive_closure


def _subset_poset(masks: Sequence[int], ground: Sequence[str]) -> Poset:
    names = [subset_name([g for i, g in enumerate(ground) if m >> i & 1], ground) for m in masks]
    return Poset(names, subset_order(list(masks)))


def boolean_poset(n: int) -> Poset:
    """Subsets of {1..n} ordered by inclusion, named like '{1,3}'."""
    ground = [str(i) for i in range(1, n + 1)]
    return _subset_poset(range(1 << n), ground)


def chain_poset(ids: Sequence[str]) -> Poset:
    return build_poset(ids, zip(ids, ids[1:]))


def diamond_poset() -> Poset:
    return build_poset(["0", "a", "b", "1"], [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")])


def pentagon_poset() -> Poset:
    """N5: 0 < x < y < 1 and 0 < z < 1."""
    return build_poset(
        ["0", "x", "z", "y", "1"],
        [("0", "x"), ("x", "y"), ("y", "1"), ("0", "z"), ("z", "1")],
    )


def m3_poset() -> Poset:
    return build_poset(
        ["0", "a", "b", "c", "1"],
        [("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")],
    )


def random_poset(rng: np.random.Generator, n: int, density: float = 0.3) -> Poset:
    """Random order: upper triangular pairs kept with `density`, closed, relabelled."""
    rel = np.triu(rng.random((n, n)) < density, k=1) | np.eye(n, dtype=bool)
    rel = transitive_closure(rel)
    perm = rng.permutation(n)
    labels = [f"e{perm[i]}" for i in range(n)]
    return Poset(labels, rel)


def random_poset_with_bottom(rng: np.random.Generator, n: int, density: float = 0.3) -> Poset:
    p = random_poset(rng, n - 1, density)
    leq = np.ones((n, n), dtype=bool)
    leq[1:, 0] = False
    leq[1:, 1:] = p.leq
    return Poset(["bot", *p.elements], leq)


def random_distributive_lattice(
    rng: np.random.Generator,
    ground: int = 6,
    generators: Optional[int] = None,
    max_elements: int = 40,
) -> Poset:
    """Sublattice of the subsets of a ground set generated by a few random subsets."""
    names = [str(i) for i in range(1, ground + 1)]
    count = generators or int(rng.integers(3, 6))
    while True:
        family = {0, (1 << ground) - 1}
        family |= {int(m) for m in rng.integers(1, 1 << ground, size=count)}
        grown = True
        while grown and len(family) <= max_elements:
            extra = {a | b for a in family for b in family} | {a & b for a in family for b in family}
            grown = not extra <= family
            family |= extra
        if len(family) <= max_elements:
            return _subset_poset(sorted(family), names)
        count = max(1, count - 1)


def _arrangement(
    flats: Sequence[str],
    covers,
    top: str,
    chi: dict,
    dim: Optional[dict] = None,
    hyperplanes: Optional[Sequence[str]] = None,
) -> ArrangementPoset:
    return ArrangementPoset(build_poset(flats, covers), top, chi, dim, hyperplanes)


def sphere_example() -> ArrangementPoset:
    """Four great circles on S^2, H1, H2 and H3 through two common points."""
    flats = ["S2", "H1", "H2", "H3", "H4", "P13", "P23"]
    covers = [("P13", "H1"), ("P13", "H3"), ("P23", "H2"), ("P23", "H3")]
    covers += [(h, "S2") for h in ("H1", "H2", "H3", "H4")]
    chi = {"S2": 2, "H1": 0, "H2": 0, "H3": 0, "H4": 0, "P13": 2, "P23": 2}
    dim = {"S2": 2, "H1": 1, "H2": 1, "H3": 1, "H4": 1, "P13": 0, "P23": 0}
    return _arrangement(flats, covers, "S2", chi, dim, ["H1", "H2", "H3", "H4"])


def plane_example() -> ArrangementPoset:
    """Three curves in the plane; chi values are per flat as given."""
    flats = ["R2", "H1", "H2", "H3", "P12", "P13", "P23"]
    covers = [
        ("P12", "H1"),
        ("P12", "H2"),
        ("P13", "H1"),
        ("P13", "H3"),
        ("P23", "H2"),
        ("P23", "H3"),
    ]
    covers += [(h, "R2") for h in ("H1", "H2", "H3")]
    chi = {"R2": 1, "H1": -1, "H2": -1, "H3": 0, "P12": 3, "P13": 10, "P23": 2}
    dim = {"R2": 2, "H1": 1, "H2": 1, "H3": 1, "P12": 0, "P13": 0, "P23": 0}
    return _arrangement(flats, covers, "R2", chi, dim, ["H1", "H2", "H3"])


def central_line_arrangement(k: int) -> ArrangementPoset:
    """k lines through the origin of R^2, chi = (-1)^dim."""
    lines = [f"l{i}" for i in range(1, k + 1)]
    flats = ["R2", *lines] + (["O"] if k else [])
    covers = [(line, "R2") for line in lines] + [("O", line) for line in lines]
    dim = {"R2": 2, "O": 0, **{line: 1 for line in lines}}
    dim = {f: dim[f] for f in flats}
    chi = {f: (-1) ** d for f, d in dim.items()}
    return _arrangement(flats, covers, "R2", chi, dim, lines)


def generic_line_arrangement(k: int) -> ArrangementPoset:
    """k lines in general position in R^2, every pair meeting in its own point."""
    lines = [f"l{i}" for i in range(1, k + 1)]
    points = {f"p{i}{j}": (f"l{i}", f"l{j}") for i, j in combinations(range(1, k + 1), 2)}
    flats = ["R2", *lines, *points]
    covers = [(line, "R2") for line in lines]
    covers += [(p, line) for p, pair in points.items() for line in pair]
    dim = {"R2": 2, **{line: 1 for line in lines}, **{p: 0 for p in points}}
    chi = {f: (-1) ** d for f, d in dim.items()}
    return _arrangement(flats, covers, "R2", chi, dim, lines)


def two_lines() -> ArrangementPoset:
    return generic_line_arrangement(2)


def two_great_circles() -> ArrangementPoset:
    """Two great circles on S^2 meeting in a pair of antipodal points P."""
    flats = ["S2", "C1", "C2", "P"]
    covers = [("P", "C1"), ("P", "C2"), ("C1", "S2"), ("C2", "S2")]
    chi = {"S2": 2, "C1": 0, "C2": 0, "P": 2}
    dim = {"S2": 2, "C1": 1, "C2": 1, "P": 0}
    return _arrangement(flats, covers, "S2", chi, dim, ["C1", "C2"])


def random_set_model(
    rng: np.random.Generator, max_ground: int = 10, max_subspaces: int = 3
) -> SetModel:
    """Random proper subspaces of a ground set, chambers a random partition of the rest."""
    n = int(rng.integers(1, max_ground + 1))
    ground = [str(i) for i in range(1, n + 1)]
    subspaces: List[List[str]] = []
    for _ in range(int(rng.integers(0, max_subspaces + 1))):
        chosen = [g for g in ground if rng.random() < 0.4]
        if 0 < len(chosen) < n:
            subspaces.append(chosen)

    covered = {g for s in subspaces for g in s}
    rest = [g for g in ground if g not in covered]
    chambers: List[List[str]] = []
    if rest:
        labels = rng.integers(0, len(rest), size=len(rest))
        chambers = [
            [g for g, label in zip(rest, labels) if label == k] for k in sorted(set(labels))
        ]
    return SetModel.from_subspaces(ground, subspaces, chambers)
