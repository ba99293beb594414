"""Catalecticant flattenings and the singular-value gap rank heuristic."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .linalg import svd
from .monomials import monomials_upto
from .tensors import DenseTensor, SymTensor

__all__ = [
    "SpectrumReport",
    "catalecticant_sym",
    "catalecticant_ns",
    "default_split",
    "estimate_rank",
    "DEFAULT_GAP_FACTOR",
    "DEFAULT_FLOOR",
]

DEFAULT_GAP_FACTOR = 100.0
DEFAULT_FLOOR = 1e-10


@dataclass(frozen=True)
class SpectrumReport:
    """Singular values of a flattening plus the suggested approximating rank."""

    singular_values: np.ndarray
    suggested_rank: int | None
    gap_ratios: np.ndarray
    shape: tuple[int, int]

    def describe(self) -> str:
        if self.suggested_rank is None:
            return "no clear singular-value gap; rank undetermined"
        return f"suggested rank {self.suggested_rank}"


def catalecticant_sym(t: SymTensor) -> np.ndarray:
    """Hankel-structured flattening (F_{alpha+beta}) of a symmetric tensor.

    Rows run over |alpha| <= floor(m/2), columns over |beta| <= ceil(m/2),
    both graded-lex ordered.
    """
    if t.m < 2:
        raise ValueError("catalecticant needs order >= 2")
    m1 = t.m // 2
    m2 = t.m - m1
    rows = monomials_upto(t.nbar, m1)
    cols = monomials_upto(t.nbar, m2)
    cat = np.empty((len(rows), len(cols)), dtype=np.complex128)
    for i, a in enumerate(rows):
        for j, b in enumerate(cols):
            cat[i, j] = t.at_power(tuple(x + y for x, y in zip(a, b)))
    return cat


def default_split(dims) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Mode bipartition minimizing |prod(S1 dims) - prod(S2 dims)|.

    Modes are 1-based.  Candidates are enumerated with mode 1 in S1; ties are
    broken by the lexicographically smallest S1.
    """
    m = len(dims)
    best = None
    for size in range(1, m):
        for s1 in itertools.combinations(range(1, m + 1), size):
            if 1 not in s1:
                continue
            s2 = tuple(j for j in range(1, m + 1) if j not in s1)
            p1 = int(np.prod([dims[j - 1] for j in s1]))
            p2 = int(np.prod([dims[j - 1] for j in s2]))
            key = (abs(p1 - p2), s1)
            if best is None or key < best[0]:
                best = (key, (s1, s2))
    return best[1]


def catalecticant_ns(t: DenseTensor, split=None) -> np.ndarray:
    """Matrix flattening of a dense tensor over a mode bipartition.

    `split` is a pair of 1-based mode tuples; by default the most square
    flattening is used (see :func:`default_split`).
    """
    if t.order < 2:
        raise ValueError("catalecticant needs order >= 2")
    if split is None:
        s1, s2 = default_split(t.dims)
    else:
        s1, s2 = tuple(split[0]), tuple(split[1])
        if sorted(s1 + s2) != list(range(1, t.order + 1)):
            raise ValueError(f"split {split} is not a bipartition of modes 1..{t.order}")
    perm = [j - 1 for j in s1] + [j - 1 for j in s2]
    rows = int(np.prod([t.dims[j - 1] for j in s1]))
    return np.transpose(t.data, perm).reshape(rows, -1)


def estimate_rank(
    eta: np.ndarray,
    gap_factor: float = DEFAULT_GAP_FACTOR,
    floor: float = DEFAULT_FLOOR,
    shape: tuple[int, int] = (0, 0),
) -> SpectrumReport:
    """Pick the smallest r with eta_{r+1} <= floor * eta_1 or a >= gap_factor drop."""
    eta = np.asarray(eta, dtype=np.float64)
    if eta.size == 0:
        raise ValueError("empty singular value list")
    if gap_factor <= 1:
        raise ValueError(f"gap_factor must exceed 1, got {gap_factor}")
    with np.errstate(divide="ignore", invalid="ignore"):
        ratios = np.where(eta[1:] > 0, eta[:-1] / np.maximum(eta[1:], np.finfo(float).tiny), np.inf)
    suggested = None
    if eta[0] > 0:
        for r in range(1, eta.size):
            if eta[r] <= floor * eta[0] or eta[r - 1] / eta[r] >= gap_factor:
                suggested = r
                break
    return SpectrumReport(
        singular_values=eta, suggested_rank=suggested, gap_ratios=ratios, shape=shape
    )


def spectrum_sym(t: SymTensor, **kwargs) -> SpectrumReport:
    cat = catalecticant_sym(t)
    _, s, _ = svd(cat)
    return estimate_rank(s, shape=cat.shape, **kwargs)


def spectrum_ns(t: DenseTensor, split=None, **kwargs) -> SpectrumReport:
    cat = catalecticant_ns(t, split=split)
    _, s, _ = svd(cat)
    return estimate_rank(s, shape=cat.shape, **kwargs)
