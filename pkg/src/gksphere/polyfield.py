"""Exact polynomial maps from an ambient Euclidean space into tensor values.

Every canonical field used by this package (position, tangent projector,
spinor trivializations, symmetric endomorphism fields, ...) is polynomial in
the ambient coordinates, so derivatives are computed by exact coefficient
manipulation and never by finite differences.  A central-difference fallback
for black-box callables lives in :mod:`gksphere.sphere`.
"""

from __future__ import annotations

from typing import Iterable, Mapping

import numpy as np

Exponent = tuple[int, ...]


class PolyField:
    """Polynomial map ``R^nvars -> R^(shape)``.

    Terms are stored as ``{exponent tuple: coefficient array}``.  All
    coefficient arrays share one value shape.  Evaluation broadcasts over
    leading batch axes of the argument.
    """

    __slots__ = ("nvars", "shape", "terms", "_packed")

    def __init__(self, nvars: int, shape: Iterable[int] = (),
                 terms: Mapping[Exponent, np.ndarray] | None = None):
        self.nvars = int(nvars)
        self.shape = tuple(int(s) for s in shape)
        self.terms: dict[Exponent, np.ndarray] = {}
        self._packed = None
        if terms:
            for exp, coef in terms.items():
                self.add_term(exp, coef)

    # -- construction -----------------------------------------------------

    @classmethod
    def constant(cls, value, nvars: int) -> "PolyField":
        value = np.asarray(value, dtype=float)
        zero = (0,) * nvars
        return cls(nvars, value.shape, {zero: value})

    @classmethod
    def coordinate(cls, i: int, nvars: int) -> "PolyField":
        exp = tuple(1 if j == i else 0 for j in range(nvars))
        return cls(nvars, (), {exp: np.asarray(1.0)})

    @classmethod
    def linear_map(cls, matrix) -> "PolyField":
        """The field ``x -> A x`` for a matrix ``A`` (nvars = #columns)."""
        matrix = np.asarray(matrix, dtype=float)
        rows, cols = matrix.shape
        out = cls(cols, (rows,))
        for j in range(cols):
            exp = tuple(1 if i == j else 0 for i in range(cols))
            out.add_term(exp, matrix[:, j])
        return out

    @classmethod
    def position(cls, nvars: int) -> "PolyField":
        return cls.linear_map(np.eye(nvars))

    @classmethod
    def tangent_projector(cls, nvars: int) -> "PolyField":
        """The matrix field ``P(x) = Id - x x^T``."""
        out = cls.constant(np.eye(nvars), nvars)
        for i in range(nvars):
            for j in range(nvars):
                exp = [0] * nvars
                exp[i] += 1
                exp[j] += 1
                coef = np.zeros((nvars, nvars))
                coef[i, j] = -1.0
                out.add_term(tuple(exp), coef)
        return out

    def add_term(self, exp: Exponent, coef) -> None:
        coef = np.asarray(coef, dtype=float)
        if coef.shape != self.shape:
            raise ValueError(f"coefficient shape {coef.shape} != field shape {self.shape}")
        if len(exp) != self.nvars:
            raise ValueError("exponent length mismatch")
        if not np.any(coef):
            return
        self._packed = None
        cur = self.terms.get(exp)
        if cur is None:
            self.terms[exp] = coef.astype(float, copy=True)
        else:
            cur = cur + coef
            if np.any(cur):
                self.terms[exp] = cur
            else:
                del self.terms[exp]

    # -- basic queries -----------------------------------------------------

    @property
    def ndim(self) -> int:
        return len(self.shape)

    @property
    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def copy(self) -> "PolyField":
        return PolyField(self.nvars, self.shape, self.terms)

    # -- algebra -----------------------------------------------------------

    def __add__(self, other: "PolyField") -> "PolyField":
        self._check_compatible(other)
        out = self.copy()
        for exp, coef in other.terms.items():
            out.add_term(exp, coef)
        return out

    def __sub__(self, other: "PolyField") -> "PolyField":
        return self + (-other)

    def __neg__(self) -> "PolyField":
        return self.scale(-1.0)

    def scale(self, factor: float) -> "PolyField":
        out = PolyField(self.nvars, self.shape)
        for exp, coef in self.terms.items():
            out.add_term(exp, factor * coef)
        return out

    def _check_compatible(self, other: "PolyField") -> None:
        if self.nvars != other.nvars or self.shape != other.shape:
            raise ValueError("incompatible polynomial fields")

    # -- calculus ----------------------------------------------------------

    def partial(self, i: int) -> "PolyField":
        """Exact partial derivative with respect to coordinate ``i``."""
        out = PolyField(self.nvars, self.shape)
        for exp, coef in self.terms.items():
            e = exp[i]
            if e == 0:
                continue
            nexp = list(exp)
            nexp[i] = e - 1
            out.add_term(tuple(nexp), e * coef)
        return out

    def gradient(self) -> "PolyField":
        """Stack of partials; the new ambient-derivative axis comes first."""
        out = PolyField(self.nvars, (self.nvars,) + self.shape)
        for exp, coef in self.terms.items():
            for i, e in enumerate(exp):
                if e == 0:
                    continue
                nexp = list(exp)
                nexp[i] = e - 1
                slot = np.zeros((self.nvars,) + self.shape)
                slot[i] = e * coef
                out.add_term(tuple(nexp), slot)
        return out

    # -- evaluation ----------------------------------------------------------

    def _pack(self):
        """Exponent matrix and stacked coefficients for fast batched evaluation."""
        if self._packed is None:
            exps = np.array(sorted(self.terms), dtype=np.int64).reshape(
                len(self.terms), self.nvars)
            coefs = np.stack([self.terms[tuple(e)].ravel() for e in exps])
            self._packed = (exps, coefs)
        return self._packed

    def __call__(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if x.shape[-1] != self.nvars:
            raise ValueError("point dimension mismatch")
        batch = x.shape[:-1]
        if not self.terms:
            return np.zeros(batch + self.shape)
        exps, coefs = self._pack()
        flat = x.reshape(-1, self.nvars)
        # monomial matrix via cached coordinate powers, then one matmul
        mono = np.ones((flat.shape[0], exps.shape[0]))
        for i in range(self.nvars):
            top = int(exps[:, i].max())
            if top == 0:
                continue
            pows = np.empty((top + 1, flat.shape[0]))
            pows[0] = 1.0
            for k in range(1, top + 1):
                pows[k] = pows[k - 1] * flat[:, i]
            mono *= pows[exps[:, i]].T
        out = mono @ coefs
        return out.reshape(batch + self.shape)

    def directional(self, x, v) -> np.ndarray:
        """Exact ambient directional derivative ``D_v`` evaluated at ``x``."""
        v = np.asarray(v, dtype=float)
        grad = self.gradient()(x)
        return np.tensordot(v, grad, axes=([0], [0]))

    def __repr__(self) -> str:
        return (f"PolyField(nvars={self.nvars}, shape={self.shape}, "
                f"terms={len(self.terms)}, degree={self.degree})")


# -- bilinear operations ----------------------------------------------------

def pf_tensordot(a: PolyField, b: PolyField, axes) -> PolyField:
    """``np.tensordot`` of two polynomial fields (coefficient convolution)."""
    if a.nvars != b.nvars:
        raise ValueError("tensordot of fields over different spaces")
    probe = np.tensordot(np.zeros(a.shape), np.zeros(b.shape), axes=axes)
    out = PolyField(a.nvars, probe.shape)
    for expa, ca in a.terms.items():
        for expb, cb in b.terms.items():
            exp = tuple(ea + eb for ea, eb in zip(expa, expb))
            out.add_term(exp, np.tensordot(ca, cb, axes=axes))
    return out


def pf_scalar_mul(s: PolyField, t: PolyField) -> PolyField:
    """Product of a scalar field with an arbitrary tensor field."""
    if s.shape != ():
        raise ValueError("first factor must be scalar-valued")
    return pf_tensordot(s, t, axes=0)


def pf_apply_matrix(m: PolyField, t: PolyField, axis: int) -> PolyField:
    """Contract matrix field ``m`` (shape (d, d)) into ``t`` along ``axis``."""
    if m.shape != (m.shape[0], m.shape[0]):
        raise ValueError("matrix field must be square")
    res = pf_tensordot(m, t, axes=([1], [axis]))
    if axis == 0:
        return res
    # restore the contracted slot to its original position
    out = PolyField(res.nvars, t.shape)
    for exp, coef in res.terms.items():
        out.add_term(exp, np.moveaxis(coef, 0, axis))
    return out


def pf_contract_vector(v: PolyField, t: PolyField, axis: int) -> PolyField:
    """Contract vector field ``v`` into slot ``axis`` of tensor field ``t``."""
    if v.ndim != 1:
        raise ValueError("first factor must be vector-valued")
    res = pf_tensordot(v, t, axes=([0], [axis]))
    return res


def pf_dot(a: PolyField, b: PolyField) -> PolyField:
    """Scalar field <a, b> for two vector fields."""
    return pf_tensordot(a, b, axes=([0], [0]))


def pf_transpose(t: PolyField, axes) -> PolyField:
    """Permute the value axes of a tensor field."""
    probe = np.transpose(np.zeros(t.shape), axes)
    out = PolyField(t.nvars, probe.shape)
    for exp, coef in t.terms.items():
        out.add_term(exp, np.transpose(coef, axes))
    return out


def pf_partial_trace(t: PolyField, axis1: int, axis2: int) -> PolyField:
    """Contract two value axes of a tensor field."""
    probe = np.trace(np.zeros(t.shape), axis1=axis1, axis2=axis2)
    out = PolyField(t.nvars, probe.shape)
    for exp, coef in t.terms.items():
        out.add_term(exp, np.trace(coef, axis1=axis1, axis2=axis2))
    return out
