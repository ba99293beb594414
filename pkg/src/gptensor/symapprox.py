"""Symmetric rank-r approximation via generating matrices.

Pipeline: solve one least-squares system per column for the generating matrix,
form multiplication (companion) matrices for each variable, extract candidate
points from a Schur decomposition of a random positive combination, then fit
coefficients by weighted linear least squares.  An optional nonlinear
refinement polishes the resulting rank-1 terms.

All compact least-squares rows carry the square root of the multi-index count
of their power vector, so minimizing the compact objective minimizes the true
(full-tensor) norm.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .linalg import DEFAULT_RCOND, lstsq_min_norm, schur
from .monomials import grlex_key, monomials_upto, multiplicities
from .tensors import SymTensor, monomial_values

__all__ = [
    "MonomialBasisPair",
    "SymGenMatrix",
    "SymApproxResult",
    "build_bases",
    "assemble_system",
    "solve_generating_matrix",
    "companion_matrix",
    "extract_points",
    "solve_coefficients",
    "reconstruct_sym",
    "rank1_closed_form",
    "approx_sym",
]


@dataclass(frozen=True)
class MonomialBasisPair:
    """B0: the first r monomials in graded-lex order; B1: their one-step shifts."""

    nbar: int
    B0: tuple[tuple[int, ...], ...]
    B1: tuple[tuple[int, ...], ...]

    @property
    def rank(self) -> int:
        return len(self.B0)

    @property
    def max_degree(self) -> int:
        return max(sum(a) for a in self.B1)


@dataclass(frozen=True)
class SymGenMatrix:
    """Generating-matrix candidate: one column per shift monomial in B1."""

    bases: MonomialBasisPair
    G: np.ndarray  # shape (r, |B1|)
    column_residuals: np.ndarray = field(default=None)


@dataclass
class SymApproxResult:
    rank: int
    points: np.ndarray  # (r, n), first coordinate 1
    coefficients: np.ndarray  # (r,)
    u_ls: np.ndarray  # (r, n): lambda^(1/m) scaled points
    X_gp: SymTensor
    residual_gp: float
    refined: bool = False
    u_opt: np.ndarray | None = None
    X_opt: SymTensor | None = None
    residual_opt: float | None = None
    diagnostics: dict = field(default_factory=dict)

    @property
    def best_residual(self) -> float:
        return self.residual_opt if self.refined else self.residual_gp


def build_bases(n: int, r: int) -> MonomialBasisPair:
    """Monomial bases for rank r in n-1 variables."""
    if n < 2 or r < 1:
        raise ValueError(f"need n >= 2 and r >= 1, got n={n}, r={r}")
    nbar = n - 1
    deg = 0
    while len(monomials_upto(nbar, deg)) < r:
        deg += 1
    b0 = list(monomials_upto(nbar, deg)[:r])
    b0_set = set(b0)
    b1 = set()
    for beta in b0:
        for i in range(nbar):
            shifted = tuple(b + (1 if k == i else 0) for k, b in enumerate(beta))
            if shifted not in b0_set:
                b1.add(shifted)
    return MonomialBasisPair(nbar=nbar, B0=tuple(b0), B1=tuple(sorted(b1, key=grlex_key)))


def _row_weights(powers, deg: int) -> np.ndarray:
    return np.sqrt(multiplicities(np.asarray(powers, dtype=np.int64).reshape(len(powers), -1), deg))


def assemble_system(F: SymTensor, alpha, B0):
    """Weighted system (A, b) whose solution is one generating-matrix column.

    Rows run over gamma with |gamma| <= m - |alpha|: A[gamma, beta] = F_{beta+gamma},
    b[gamma] = F_{alpha+gamma}, both scaled by the row weight.
    """
    alpha = tuple(alpha)
    d = F.m - sum(alpha)
    if d < 0:
        raise ValueError(f"|alpha| = {sum(alpha)} exceeds order m = {F.m}")
    gammas = monomials_upto(F.nbar, d)
    w = _row_weights(gammas, d)
    A = np.empty((len(gammas), len(B0)), dtype=np.complex128)
    b = np.empty(len(gammas), dtype=np.complex128)
    for g, gamma in enumerate(gammas):
        for j, beta in enumerate(B0):
            A[g, j] = F.at_power(tuple(x + y for x, y in zip(beta, gamma)))
        b[g] = F.at_power(tuple(x + y for x, y in zip(alpha, gamma)))
    return A * w[:, None], b * w


def solve_generating_matrix(F: SymTensor, r: int, rcond: float = DEFAULT_RCOND) -> SymGenMatrix:
    """Column-by-column minimum-norm least squares for the generating matrix."""
    bases = build_bases(F.n, r)
    if bases.max_degree > F.m:
        raise ValueError(
            f"rank {r} needs shift monomials of degree {bases.max_degree} > order {F.m}; "
            f"their least-squares columns would be unconstrained"
        )
    G = np.empty((r, len(bases.B1)), dtype=np.complex128)
    residuals = np.empty(len(bases.B1))
    for col, alpha in enumerate(bases.B1):
        A, b = assemble_system(F, alpha, bases.B0)
        if A.shape[0] < r:
            raise ValueError(
                f"rank {r} exceeds the {A.shape[0]} rows of the system for shift "
                f"monomial {alpha}; the least squares would be underdetermined"
            )
        x = lstsq_min_norm(A, b, rcond=rcond)
        G[:, col] = x
        residuals[col] = np.linalg.norm(A @ x - b)
    return SymGenMatrix(bases=bases, G=G, column_residuals=residuals)


def companion_matrix(gm: SymGenMatrix, i: int) -> np.ndarray:
    """Multiplication-by-x_i matrix on the span of B0 modulo the relations in G."""
    bases = gm.bases
    if not 1 <= i <= bases.nbar:
        raise ValueError(f"variable index {i} out of range 1..{bases.nbar}")
    r = bases.rank
    pos0 = {a: k for k, a in enumerate(bases.B0)}
    pos1 = {a: k for k, a in enumerate(bases.B1)}
    M = np.zeros((r, r), dtype=np.complex128)
    for col, nu in enumerate(bases.B0):
        shifted = tuple(v + (1 if k == i - 1 else 0) for k, v in enumerate(nu))
        if shifted in pos0:
            M[pos0[shifted], col] = 1.0
        else:
            M[:, col] = gm.G[:, pos1[shifted]]
    return M


def extract_points(gm: SymGenMatrix, xi: np.ndarray):
    """Approximate common zeros of the generating polynomials.

    Forms M(xi) = sum_i xi_i M_{x_i}, takes its Schur decomposition, and reads
    one point per Schur vector.  Returns (points, diagnostics); points have
    first coordinate 1.
    """
    bases = gm.bases
    xi = np.asarray(xi, dtype=np.float64)
    if xi.shape != (bases.nbar,) or np.any(xi <= 0):
        raise ValueError(f"xi must be {bases.nbar} strictly positive weights")
    if abs(xi.sum() - 1.0) > 1e-9:
        raise ValueError("xi must sum to 1")
    Ms = [companion_matrix(gm, i) for i in range(1, bases.nbar + 1)]
    M = sum(x * Mi for x, Mi in zip(xi, Ms))
    pair = schur(M)
    r = bases.rank
    points = np.empty((r, bases.nbar + 1), dtype=np.complex128)
    points[:, 0] = 1.0
    for s in range(r):
        q = pair.Q[:, s]
        for j, Mj in enumerate(Ms):
            points[s, j + 1] = q.conj() @ Mj @ q
    diagnostics = _schur_diagnostics(Ms, pair)
    return points, diagnostics


def _schur_diagnostics(Ms, pair) -> dict:
    scale = max(1.0, max(np.linalg.norm(Mi) for Mi in Ms))
    comm = 0.0
    for a in range(len(Ms)):
        for b in range(a + 1, len(Ms)):
            comm = max(comm, np.linalg.norm(Ms[a] @ Ms[b] - Ms[b] @ Ms[a]))
    comm /= scale**2
    eig = pair.eigenvalues
    gap = np.inf
    for a in range(len(eig)):
        for b in range(a + 1, len(eig)):
            gap = min(gap, abs(eig[a] - eig[b]))
    gap_rel = gap / max(1.0, np.max(np.abs(eig))) if len(eig) > 1 else np.inf
    return {
        "commutator": float(comm),
        "eigengap": float(gap_rel) if np.isfinite(gap_rel) else np.inf,
        "low_confidence": bool(gap_rel < 1e-8 or comm > 1e-6),
    }


def solve_coefficients(F: SymTensor, points: np.ndarray, rcond: float = DEFAULT_RCOND) -> np.ndarray:
    """Coefficients minimizing the true tensor norm of the rank-r combination."""
    w = np.sqrt(F.weights)
    D = np.column_stack([monomial_values(v, F.powers, F.m) for v in points])
    return lstsq_min_norm(D * w[:, None], F.values * w, rcond=rcond)


def reconstruct_sym(points: np.ndarray, coefficients: np.ndarray, n: int, m: int) -> SymTensor:
    """Compact tensor sum of lambda_i * (v_i)^(x) m."""
    t = SymTensor.zeros(n, m)
    for lam, v in zip(coefficients, points):
        t.values += lam * monomial_values(v, t.powers, m)
    return t


def rank1_closed_form(F: SymTensor):
    """Closed-form best rank-1 candidate (lambda, v) with v_0 = 1.

    Equals the full pipeline at r = 1: each trailing coordinate is a
    one-variable least-squares ratio, and lambda is the coefficient fit.
    """
    if F.m < 2:
        raise ValueError("rank-1 closed form needs order >= 2")
    d = F.m - 1
    gammas = monomials_upto(F.nbar, d)
    w2 = multiplicities(np.asarray(gammas, dtype=np.int64).reshape(len(gammas), -1), d)
    a = np.array([F.at_power(g) for g in gammas])
    denom = np.sum(w2 * np.abs(a) ** 2)
    if denom == 0:
        raise ValueError("degenerate leading slice: all degree <= m-1 entries vanish")
    v = np.empty(F.n, dtype=np.complex128)
    v[0] = 1.0
    for i in range(1, F.n):
        b = np.array(
            [F.at_power(tuple(g[k] + (1 if k == i - 1 else 0) for k in range(F.nbar))) for g in gammas]
        )
        v[i] = np.sum(w2 * a.conj() * b) / denom
    mono = monomial_values(v, F.powers, F.m)
    lam = np.sum(F.weights * mono.conj() * F.values) / np.sum(F.weights * np.abs(mono) ** 2)
    return complex(lam), v


def _principal_root(lam: complex, m: int) -> complex:
    if lam == 0:
        return 0.0
    return np.exp(np.log(complex(lam)) / m)


def _points_and_coeffs_from_u(u: np.ndarray, F: SymTensor, rcond: float):
    """Renormalize generators to leading coordinate 1 and refit coefficients."""
    pts = np.empty_like(u)
    for s, us in enumerate(u):
        if us[0] != 0:
            pts[s] = us / us[0]
        else:  # leading coordinate vanished under the inverse transform
            pts[s] = us
            pts[s, 0] = 1.0
    lam = solve_coefficients(F, pts, rcond)
    return pts, lam


def _transform_sym(F: SymTensor, L: np.ndarray) -> SymTensor:
    """Apply the invertible change of coordinates L to every mode."""
    if F.n**F.m > 4_000_000:
        raise ValueError("coordinate-change retry is limited to moderate dense sizes")
    data = F.to_dense().data
    for _ in range(F.m):
        data = np.tensordot(L, data, axes=(1, F.m - 1))
    from .tensors import DenseTensor

    return SymTensor.from_dense(DenseTensor(data))


def approx_sym(
    F: SymTensor,
    r: int,
    refine: bool = True,
    seed: int = 0,
    rcond: float = DEFAULT_RCOND,
    refine_options=None,
    coord_retries: int = 0,
    skip_refine_tol: float = 1e-10,
) -> SymApproxResult:
    """Symmetric rank-r approximation of F.

    Runs the generating-matrix pipeline; when `refine` is set and the
    unrefined residual is above `skip_refine_tol * ||F||`, a local nonlinear
    least-squares polish is applied to the rank-1 terms.  `coord_retries`
    allows additional attempts under random invertible coordinate changes,
    for tensors whose generators have a vanishing leading coordinate.
    """
    if F.m < 2:
        raise ValueError("approximation needs order >= 2")
    nmon = len(F.powers)
    if not 1 <= r <= nmon:
        raise ValueError(f"rank must be in 1..{nmon}, got {r}")
    rng = np.random.default_rng(seed)
    norm_f = F.norm()

    best = None
    for attempt in range(coord_retries + 1):
        if attempt == 0:
            L = None
            target = F
        else:
            L = rng.standard_normal((F.n, F.n)) + 1j * rng.standard_normal((F.n, F.n))
            target = _transform_sym(F, L)
        gm = solve_generating_matrix(target, r, rcond)
        xi = rng.uniform(size=F.nbar)
        xi /= xi.sum()
        points, diagnostics = extract_points(gm, xi)
        lam = solve_coefficients(target, points, rcond)
        if L is not None:
            u = np.array(
                [_principal_root(l, F.m) * v for l, v in zip(lam, points)], dtype=np.complex128
            )
            u = np.linalg.solve(L, u.T).T
            points, lam = _points_and_coeffs_from_u(u, F, rcond)
        X_gp = reconstruct_sym(points, lam, F.n, F.m)
        residual = (F - X_gp).norm()
        diagnostics = dict(diagnostics, xi_seed=seed, attempt=attempt)
        if best is None or residual < best[0]:
            best = (residual, points, lam, X_gp, diagnostics)
        if best[0] <= 1e-8 * max(norm_f, 1e-300):
            break

    residual_gp, points, lam, X_gp, diagnostics = best
    u_ls = np.array([_principal_root(l, F.m) * v for l, v in zip(lam, points)], dtype=np.complex128)
    result = SymApproxResult(
        rank=r,
        points=points,
        coefficients=np.asarray(lam),
        u_ls=u_ls,
        X_gp=X_gp,
        residual_gp=residual_gp,
        diagnostics=diagnostics,
    )

    if refine and residual_gp > skip_refine_tol * norm_f:
        from .refine import refine_sym

        u_opt, residual_opt = refine_sym(F, u_ls, refine_options)
        if residual_opt <= residual_gp + 1e-12:
            result.refined = True
            result.u_opt = u_opt
            result.X_opt = reconstruct_sym(u_opt, np.ones(r), F.n, F.m)
            result.residual_opt = residual_opt
    return result
