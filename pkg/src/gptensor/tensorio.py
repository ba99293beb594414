"""Text serialization: tensor files and result reports.

Tensor files are UTF-8 text with a header line

    TENSOR v1 <sym|dense> order=<m> dims=<n1,...,nm>

followed by one line per stored entry.  Dense lines carry m 1-based indices
then the real and imaginary parts; symmetric lines carry the n-1 exponents of
a power vector then the real and imaginary parts.  Entries may appear in any
order, duplicates are an error, and missing entries are zero.

Result reports are key=value text grouped into [section] blocks and can be
parsed back losslessly (floats are written with 17 significant digits).
"""

from __future__ import annotations

import numpy as np

from .tensors import DenseTensor, SymTensor

__all__ = [
    "write_tensor",
    "read_tensor",
    "render_report",
    "write_report",
    "parse_report",
    "FormatError",
]


class FormatError(ValueError):
    """Malformed tensor file or report."""


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def write_tensor(t, path) -> None:
    """Write a tensor file; symmetric tensors use compact power-vector lines."""
    lines = []
    if isinstance(t, SymTensor):
        dims = ",".join(str(t.n) for _ in range(t.m))
        lines.append(f"TENSOR v1 sym order={t.m} dims={dims}")
        for alpha, v in zip(t.powers, t.values):
            parts = [str(int(a)) for a in alpha] + [_fmt(v.real), _fmt(v.imag)]
            lines.append(" ".join(parts))
    elif isinstance(t, DenseTensor):
        dims = ",".join(str(d) for d in t.dims)
        lines.append(f"TENSOR v1 dense order={t.order} dims={dims}")
        for idx in np.ndindex(*t.dims):
            v = t.data[idx]
            parts = [str(i + 1) for i in idx] + [_fmt(v.real), _fmt(v.imag)]
            lines.append(" ".join(parts))
    else:
        raise TypeError(f"cannot serialize {type(t).__name__}")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def _parse_header(line: str):
    parts = line.split()
    if len(parts) != 5 or parts[0] != "TENSOR" or parts[1] != "v1":
        raise FormatError(f"bad header line: {line!r}")
    kind = parts[2]
    if kind not in ("sym", "dense"):
        raise FormatError(f"unknown tensor kind {kind!r}")
    try:
        order = int(parts[3].removeprefix("order="))
        dims = tuple(int(d) for d in parts[4].removeprefix("dims=").split(","))
    except ValueError as exc:
        raise FormatError(f"bad header line: {line!r}") from exc
    if parts[3] == parts[3].removeprefix("order=") or parts[4] == parts[4].removeprefix("dims="):
        raise FormatError(f"bad header line: {line!r}")
    if order != len(dims) or order < 1 or any(d < 1 for d in dims):
        raise FormatError(f"inconsistent order/dims in header: {line!r}")
    return kind, order, dims


def read_tensor(path):
    """Parse a tensor file into a SymTensor or DenseTensor."""
    with open(path, encoding="utf-8") as fh:
        raw = [ln.strip() for ln in fh]
    lines = [ln for ln in raw if ln and not ln.startswith("#")]
    if not lines:
        raise FormatError("empty tensor file")
    kind, order, dims = _parse_header(lines[0])
    if kind == "sym":
        if len(set(dims)) != 1:
            raise FormatError(f"symmetric tensor requires cubic dims, got {dims}")
        n, m = dims[0], order
        t = SymTensor.zeros(n, m)
        seen = set()
        for ln in lines[1:]:
            parts = ln.split()
            if len(parts) != (n - 1) + 2:
                raise FormatError(f"expected {n - 1} exponents + re + im, got line {ln!r}")
            try:
                alpha = tuple(int(p) for p in parts[: n - 1])
                re, im = float(parts[-2]), float(parts[-1])
            except ValueError as exc:
                raise FormatError(f"bad entry line {ln!r}") from exc
            if any(a < 0 for a in alpha) or sum(alpha) > m:
                raise FormatError(f"power vector {alpha} out of range for m={m}")
            if alpha in seen:
                raise FormatError(f"duplicate entry for power vector {alpha}")
            seen.add(alpha)
            t.values[t.position(alpha)] = complex(re, im)
        return t
    arr = np.zeros(dims, dtype=np.complex128)
    seen = set()
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != order + 2:
            raise FormatError(f"expected {order} indices + re + im, got line {ln!r}")
        try:
            idx = tuple(int(p) - 1 for p in parts[:order])
            re, im = float(parts[-2]), float(parts[-1])
        except ValueError as exc:
            raise FormatError(f"bad entry line {ln!r}") from exc
        if any(not 0 <= i < d for i, d in zip(idx, dims)):
            raise FormatError(f"index {tuple(i + 1 for i in idx)} out of range for dims {dims}")
        if idx in seen:
            raise FormatError(f"duplicate entry at index {tuple(i + 1 for i in idx)}")
        seen.add(idx)
        arr[idx] = complex(re, im)
    return DenseTensor(arr)


def _vec_str(v) -> str:
    return ";".join(f"{_fmt(z.real)},{_fmt(z.imag)}" for z in np.asarray(v, dtype=np.complex128))


def _vec_parse(s: str) -> np.ndarray:
    out = []
    for item in s.split(";"):
        re, im = item.split(",")
        out.append(complex(float(re), float(im)))
    return np.array(out, dtype=np.complex128)


def render_report(meta: dict, sections: dict) -> str:
    """Render a structured report: a [meta] block then the given sections.

    Values may be scalars (stringified), floats (17 digits), or 1-D complex
    arrays (semicolon-separated re,im pairs).
    """
    lines = ["REPORT v1", "[meta]"]
    for k, v in meta.items():
        lines.append(f"{k}={_encode(v)}")
    for name, block in sections.items():
        lines.append(f"[{name}]")
        for k, v in block.items():
            lines.append(f"{k}={_encode(v)}")
    return "\n".join(lines) + "\n"


def write_report(path, meta: dict, sections: dict) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(render_report(meta, sections))


def _encode(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return _fmt(v)
    if isinstance(v, str):
        return v
    if isinstance(v, (list, tuple, np.ndarray)):
        return _vec_str(v)
    raise TypeError(f"cannot encode report value of type {type(v).__name__}")


def parse_report(path) -> dict:
    """Parse a report into {section: {key: value}}; vectors become arrays."""
    with open(path, encoding="utf-8") as fh:
        lines = [ln.rstrip("\n") for ln in fh]
    if not lines or lines[0].strip() != "REPORT v1":
        raise FormatError("not a v1 report")
    out: dict[str, dict] = {}
    current = None
    for ln in lines[1:]:
        ln = ln.strip()
        if not ln or ln.startswith("#"):
            continue
        if ln.startswith("[") and ln.endswith("]"):
            current = ln[1:-1]
            out.setdefault(current, {})
            continue
        if current is None or "=" not in ln:
            raise FormatError(f"unexpected report line {ln!r}")
        k, v = ln.split("=", 1)
        out[current][k.strip()] = _decode(v.strip())
    return out


def _decode(s: str):
    if s in ("true", "false"):
        return s == "true"
    if ";" in s or ("," in s and all(_is_float(p) for item in s.split(";") for p in item.split(","))):
        try:
            return _vec_parse(s)
        except ValueError:
            pass
    try:
        return int(s)
    except ValueError:
        pass
    try:
        return float(s)
    except ValueError:
        return s


def _is_float(p: str) -> bool:
    try:
        float(p)
        return True
    except ValueError:
        return False
