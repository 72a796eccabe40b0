"""Real Clifford algebra representations by anticommuting skew orthogonal matrices.

Generators satisfy e_i e_j + e_j e_i = -2 delta_ij (negative definite
convention).  The construction is a deterministic recursive doubling that
produces {0, +-1} integer matrices of the minimal module dimension for each
generator count m <= 16, so the defining relations hold exactly in floating
point.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

# Minimal faithful real module dimensions for Cl_m, m = 1..16.
MIN_MODULE_DIM = {
    1: 2, 2: 4, 3: 4, 4: 8, 5: 8, 6: 8, 7: 8, 8: 16,
    9: 32, 10: 64, 11: 64, 12: 128, 13: 128, 14: 128, 15: 128, 16: 256,
}

MAX_GENERATORS = 16


def _quaternion_mult_table():
    # rows/cols indexed by (1, i, j, k); entry = (sign, basis index)
    table = {
        (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
        (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
        (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
        (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
    }
    return table


_QTABLE = _quaternion_mult_table()


def quaternion_product(a, b) -> np.ndarray:
    """Product of two quaternions given as length-4 arrays (1, i, j, k)."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    out = np.zeros(4)
    for p in range(4):
        for q in range(4):
            s, r = _QTABLE[(p, q)]
            out[r] += s * a[p] * b[q]
    return out


def quaternion_left_mult(q) -> np.ndarray:
    """Matrix of x -> q * x on R^4."""
    cols = [quaternion_product(q, e) for e in np.eye(4)]
    return np.stack(cols, axis=1)


def quaternion_right_mult(q) -> np.ndarray:
    """Matrix of x -> x * q on R^4."""
    cols = [quaternion_product(e, q) for e in np.eye(4)]
    return np.stack(cols, axis=1)


_J2 = np.array([[0.0, -1.0], [1.0, 0.0]])
_K2 = np.array([[0.0, 1.0], [1.0, 0.0]])
_L2 = np.array([[1.0, 0.0], [0.0, -1.0]])


def _base_generators(m: int) -> list[np.ndarray]:
    """Anticommuting skew orthogonal systems of minimal size for m <= 8."""
    li = quaternion_left_mult([0, 1, 0, 0])
    lj = quaternion_left_mult([0, 0, 1, 0])
    lk = quaternion_left_mult([0, 0, 0, 1])
    ri = quaternion_right_mult([0, 1, 0, 0])
    rj = quaternion_right_mult([0, 0, 1, 0])
    rk = quaternion_right_mult([0, 0, 0, 1])
    if m == 1:
        return [_J2]
    if m <= 3:
        return [li, lj, lk][:m]
    if m <= 7:
        # double the quaternion system, then extend by right multiplications
        # (they commute with the left ones, so L (x) R_* stays anticommuting)
        gens = [np.kron(_J2, np.eye(4))]
        gens += [np.kron(_K2, g) for g in (li, lj, lk)]
        gens += [np.kron(_L2, r) for r in (ri, rj, rk)]
        return gens[:m]
    if m == 8:
        seven = _base_generators(7)
        gens = [np.kron(_J2, np.eye(8))]
        gens += [np.kron(_K2, g) for g in seven]
        return gens
    raise ValueError(m)


@lru_cache(maxsize=None)
def _generators(m: int) -> tuple[np.ndarray, ...]:
    if m <= 8:
        gens = _base_generators(m)
    else:
        # Bott step: Cl_{m} acts on R^{16 N(m-8)} via the Cl_8 system and its
        # volume element (symmetric, squares to +Id, anticommutes with e_a).
        eight = _generators(8)
        vol8 = np.linalg.multi_dot(eight)
        inner = _generators(m - 8)
        dim_inner = inner[0].shape[0]
        gens = [np.kron(g, np.eye(dim_inner)) for g in eight]
        gens += [np.kron(vol8, g) for g in inner]
    return tuple(np.ascontiguousarray(g) for g in gens)


@dataclass(frozen=True)
class CliffordRep:
    """Representation of Cl_m by m anticommuting skew orthogonal matrices."""

    m: int
    dim: int
    gammas: tuple[np.ndarray, ...]
    volume: np.ndarray

    def gamma(self, v) -> np.ndarray:
        """Clifford action of the vector v = sum v_i e_i."""
        v = np.asarray(v, dtype=float)
        if v.shape != (self.m,):
            raise ValueError(f"expected vector of length {self.m}")
        return np.einsum("a,aij->ij", v, np.stack(self.gammas))

    def act(self, v, psi) -> np.ndarray:
        return self.gamma(v) @ np.asarray(psi, dtype=float)


def build_rep(m: int) -> CliffordRep:
    """Construct the minimal-dimension representation of Cl_m (1 <= m <= 16)."""
    if not isinstance(m, (int, np.integer)) or not 1 <= m <= MAX_GENERATORS:
        raise ValueError(f"generator count must be an integer in 1..{MAX_GENERATORS}, got {m}")
    gens = _generators(int(m))
    dim = gens[0].shape[0]
    assert dim == MIN_MODULE_DIM[int(m)]
    volume = gens[0].copy()
    for g in gens[1:]:
        volume = volume @ g
    return CliffordRep(m=int(m), dim=dim, gammas=gens, volume=volume)


@dataclass(frozen=True)
class HalfSpinorSplit:
    """Projectors onto the +-1 eigenspaces of the volume element."""

    proj_plus: np.ndarray
    proj_minus: np.ndarray

    @property
    def rank_plus(self) -> int:
        return int(round(np.trace(self.proj_plus)))

    @property
    def rank_minus(self) -> int:
        return int(round(np.trace(self.proj_minus)))


def half_spinor_split(rep: CliffordRep) -> HalfSpinorSplit:
    """Split the module under the volume element (requires m = 0 mod 4)."""
    if rep.m % 4 != 0:
        raise ValueError("volume element splits the module only for m = 0 mod 4")
    eye = np.eye(rep.dim)
    if not np.allclose(rep.volume @ rep.volume, eye):
        raise ValueError("volume element does not square to the identity")
    return HalfSpinorSplit(
        proj_plus=(eye + rep.volume) / 2.0,
        proj_minus=(eye - rep.volume) / 2.0,
    )


def two_form_action(rep: CliffordRep, x, y) -> np.ndarray:
    """Clifford action of the 2-form x ^ y: matrix of X.Y. + <X,Y> Id."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != (rep.m,) or y.shape != (rep.m,):
        raise ValueError("vectors must live in the generator span")
    return rep.gamma(x) @ rep.gamma(y) + float(x @ y) * np.eye(rep.dim)


def skew_to_clifford(rep: CliffordRep, skew) -> np.ndarray:
    """Clifford action of the 2-form with components w_ab = skew[a, b]."""
    skew = np.asarray(skew, dtype=float)
    if not np.allclose(skew, -skew.T, atol=1e-12):
        raise ValueError("matrix is not skew-symmetric")
    out = np.zeros((rep.dim, rep.dim))
    for a in range(rep.m):
        for b in range(a + 1, rep.m):
            if skew[a, b] != 0.0:
                out += skew[a, b] * (rep.gammas[a] @ rep.gammas[b])
    return out


# -- Radon-Hurwitz admissibility ---------------------------------------------

def radon_hurwitz_number(q: int) -> int:
    """rho(q) with q = odd * 2^(4a+b), b in 0..3: rho = 8a + 2^b."""
    if q < 1:
        raise ValueError("q must be positive")
    twos = 0
    while q % 2 == 0:
        q //= 2
        twos += 1
    a, b = divmod(twos, 4)
    return 8 * a + 2**b


@lru_cache(maxsize=None)
def min_module_dim(p: int) -> int:
    """Minimal dimension of a real Cl_p module (extended past 16 by Bott)."""
    if p == 0:
        return 1
    if p <= MAX_GENERATORS:
        return MIN_MODULE_DIM[p]
    return 16 * min_module_dim(p - 8)


def radon_hurwitz_admissible(p: int, q: int) -> bool:
    """True iff R^q carries a Cl_p module structure, i.e. p <= rho(q) - 1."""
    if p < 0 or q < 1:
        raise ValueError("need p >= 0 and q >= 1")
    return p <= radon_hurwitz_number(q) - 1
