"""Random low-rank instances with controlled perturbation, and a library of
named function-sampled tensors used by the benchmark suite."""

from __future__ import annotations

import numpy as np

from .tensors import DenseTensor, SymTensor, outer_product, sym_power

__all__ = ["gen_random_sym", "gen_random_ns", "named_tensor", "NAMED_TENSORS"]


def _random_complex(rng, *shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def gen_random_sym(n: int, m: int, r: int, eps: float = 0.0, seed: int = 0):
    """Random rank-r symmetric tensor plus a norm-eps symmetric perturbation.

    Returns (F, R, E): the perturbed tensor F = R + E, the unperturbed rank-r
    tensor R = sum of symmetric powers of complex Gaussian vectors, and the
    noise tensor E with tensor norm exactly eps (zero when eps = 0).
    """
    if r < 1:
        raise ValueError(f"rank must be positive, got {r}")
    if eps < 0:
        raise ValueError(f"eps must be nonnegative, got {eps}")
    rng = np.random.default_rng(seed)
    U = _random_complex(rng, r, n)
    R = sym_power(U[0], m)
    for i in range(1, r):
        R = R + sym_power(U[i], m)
    if eps > 0:
        E = SymTensor(n, m, _random_complex(rng, len(R.values)))
        E = E * (eps / E.norm())
    else:
        E = SymTensor.zeros(n, m)
    return R + E, R, E


def gen_random_ns(dims, r: int, eps: float = 0.0, seed: int = 0):
    """Random rank-r dense tensor plus a norm-eps perturbation.

    Returns (F, R, E) analogous to :func:`gen_random_sym`, with R a sum of
    outer products of complex Gaussian mode vectors.
    """
    dims = tuple(int(d) for d in dims)
    if r < 1:
        raise ValueError(f"rank must be positive, got {r}")
    if eps < 0:
        raise ValueError(f"eps must be nonnegative, got {eps}")
    if len(dims) < 3:
        raise ValueError("need order >= 3")
    rng = np.random.default_rng(seed)
    tuples = [[_random_complex(rng, d) for d in dims] for _ in range(r)]
    R = outer_product(tuples[0])
    for s in range(1, r):
        R = R + outer_product(tuples[s])
    if eps > 0:
        E = DenseTensor(_random_complex(rng, *dims))
        E = E * (eps / E.norm())
    else:
        E = DenseTensor(np.zeros(dims, dtype=np.complex128))
    return R + E, R, E


def _sym(n, m, fn):
    return SymTensor.from_function(n, m, fn)


def _dense(dims, fn):
    grids = np.meshgrid(*[np.arange(1, d + 1) for d in dims], indexing="ij")
    return DenseTensor(fn(*grids).astype(np.complex128))


def _make_named(name: str, n: int | None):
    if name == "sin3":
        return _sym(n or 6, 3, lambda i, j, k: np.sin(i + j + k))
    if name == "recip3":
        return _sym(n or 10, 3, lambda i, j, k: 1.0 / (i + j + k))
    if name == "exp4":
        return _sym(n or 5, 4, lambda i, j, k, l: np.exp(-float(i * j * k * l)))
    if name == "log4":
        return _sym(n or 5, 4, lambda i, j, k, l: np.log(float(i + j + k + l)))
    if name == "sqrt5":
        return _sym(n or 4, 5, lambda *ix: np.sqrt(float(sum(v * v for v in ix))))
    if name == "logexp6":
        return _sym(
            n or 4,
            6,
            lambda *ix: np.log(float(np.prod(ix)) + np.exp(float(sum(ix)))),
        )
    if name == "expsum3":
        return _dense(
            (7, 6, 5), lambda i, j, k: 1.0 / (np.exp(i) + np.exp(j**2) + np.exp(k**3))
        )
    if name == "cos3":
        return _dense((5, 4, 4), lambda i, j, k: np.cos(i - j - k) + 0.0j)
    if name == "recip4":
        return _dense((8, 7, 6, 5), lambda i, j, k, l: 1.0 / (1 + i + 2 * j + 3 * k + 4 * l))
    if name == "coscross4":
        return _dense(
            (5, 5, 4, 4),
            lambda i, j, k, l: np.cos(i + j - k - l) - 1e-3 * np.sin(i * j * k * l) + 0.0j,
        )
    if name == "arctan5":
        return _dense(
            (9, 8, 7, 6, 5),
            lambda i, j, k, l, p: np.arctan(
                i * j**2 * k**3 * l**4 * p**5, dtype=np.float64
            ),
        )
    if name == "logexp6ns":
        return _dense(
            (5, 5, 5, 4, 4, 4),
            lambda i1, i2, i3, i4, i5, i6: np.log(
                1.0 + np.exp(np.float64(i1 * i2 * i3) + np.float64(i4 * i5 * i6))
            ),
        )
    raise ValueError(f"unknown tensor name {name!r}")


NAMED_TENSORS = (
    "sin3",
    "recip3",
    "exp4",
    "log4",
    "sqrt5",
    "logexp6",
    "expsum3",
    "cos3",
    "recip4",
    "coscross4",
    "arctan5",
    "logexp6ns",
)


def named_tensor(name: str, n: int | None = None):
    """Function-sampled benchmark tensor by name.

    Symmetric families (sin3, recip3, exp4, log4, sqrt5, logexp6) accept an
    optional dimension override `n`; dense families have fixed dimensions.
    """
    if name not in NAMED_TENSORS:
        raise ValueError(f"unknown tensor name {name!r}; choose from {', '.join(NAMED_TENSORS)}")
    if n is not None and name in ("expsum3", "cos3", "recip4", "coscross4", "arctan5", "logexp6ns"):
        raise ValueError(f"{name} has fixed dimensions; n override not supported")
    return _make_named(name, n)
