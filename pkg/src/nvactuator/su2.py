r"""SU(2) algebra with a fixed rotation convention.

A unitary is stored as a unit quaternion ``(w, x, y, z)`` standing for

.. math::

    U = w\,\mathbb{1} - i (x\sigma_x + y\sigma_y + z\sigma_z),

so a Bloch-sphere rotation by ``angle`` about the unit vector ``n`` is
``exp(-i angle/2 n.sigma)`` with quaternion ``(cos(angle/2), sin(angle/2) n)``.
Under this map matrix multiplication is the Hamilton product.

The module-level ``q*`` helpers work on arrays whose last axis has length 4
and broadcast over the leading axes; they are what the synthesis engine uses
on its scan grids.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

import numpy as np

TWO_PI = 2.0 * math.pi

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
IDENTITY2 = np.eye(2, dtype=complex)


# ---------------------------------------------------------------------------
# array helpers

def qmul(a, b):
    """Hamilton product of quaternion arrays ``a`` and ``b`` (broadcasting)."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    aw, ax, ay, az = a[..., 0], a[..., 1], a[..., 2], a[..., 3]
    bw, bx, by, bz = b[..., 0], b[..., 1], b[..., 2], b[..., 3]
    out = np.empty(np.broadcast_shapes(a.shape, b.shape))
    out[..., 0] = aw * bw - ax * bx - ay * by - az * bz
    out[..., 1] = aw * bx + ax * bw + ay * bz - az * by
    out[..., 2] = aw * by - ax * bz + ay * bw + az * bx
    out[..., 3] = aw * bz + ax * by - ay * bx + az * bw
    return out


def qconj(a):
    a = np.asarray(a, dtype=float)
    return a * np.array([1.0, -1.0, -1.0, -1.0])


def qrot(axis, angle):
    """Quaternions of rotations by ``angle`` (array) about a fixed 3-vector ``axis``."""
    angle = np.asarray(angle, dtype=float)
    half = 0.5 * angle
    s = np.sin(half)[..., None]
    return np.concatenate([np.cos(half)[..., None], s * np.asarray(axis, dtype=float)], axis=-1)


def qpow(q, k):
    """Integer power ``q**k`` of unit quaternions, in closed form.

    ``k`` may be a scalar or broadcast against the leading axes of ``q``.
    """
    q = np.asarray(q, dtype=float)
    vec = q[..., 1:]
    vnorm = np.linalg.norm(vec, axis=-1)
    half = np.arctan2(vnorm, q[..., 0])
    kh = np.asarray(k) * half
    with np.errstate(invalid="ignore", divide="ignore"):
        unit = np.where(vnorm[..., None] > 0.0, vec / vnorm[..., None], 0.0)
    return np.concatenate([np.cos(kh)[..., None], np.sin(kh)[..., None] * unit], axis=-1)


def qdot(a, b):
    """Euclidean 4-dot product; equals ``tr(U_a U_b^dagger)/2``."""
    return np.sum(np.asarray(a) * np.asarray(b), axis=-1)


def quat_to_matrix(q) -> np.ndarray:
    w, x, y, z = (float(c) for c in q)
    return np.array([[w - 1j * z, -1j * x - y], [-1j * x + y, w + 1j * z]], dtype=complex)


def matrix_to_quat(m) -> np.ndarray:
    """Inverse of :func:`quat_to_matrix` for a 2x2 matrix in SU(2)."""
    m = np.asarray(m, dtype=complex)
    w = 0.5 * (m[0, 0] + m[1, 1]).real
    z = -0.5 * (m[0, 0] - m[1, 1]).imag
    x = -0.5 * (m[0, 1] + m[1, 0]).imag
    y = 0.5 * (m[1, 0] - m[0, 1]).real
    return np.array([w, x, y, z])


# ---------------------------------------------------------------------------
# value types

@dataclass(frozen=True)
class Axis:
    """Unit 3-vector."""

    x: float
    y: float
    z: float

    def __post_init__(self):
        norm = math.sqrt(self.x**2 + self.y**2 + self.z**2)
        if abs(norm - 1.0) > 1e-12:
            raise ValueError(f"axis must have unit norm, got |v| = {norm!r}")

    @classmethod
    def from_vector(cls, v) -> "Axis":
        v = np.asarray(v, dtype=float)
        n = float(np.linalg.norm(v))
        if n == 0.0:
            raise ValueError("zero vector has no direction")
        v = v / n
        return cls(float(v[0]), float(v[1]), float(v[2]))

    @property
    def vector(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])


X_AXIS = Axis(1.0, 0.0, 0.0)
Y_AXIS = Axis(0.0, 1.0, 0.0)
Z_AXIS = Axis(0.0, 0.0, 1.0)


@dataclass(frozen=True, eq=False)
class Unitary:
    """Element of SU(2) held as a unit quaternion ``(w, x, y, z)``."""

    quat: tuple

    def __post_init__(self):
        q = tuple(float(c) for c in self.quat)
        if len(q) != 4:
            raise ValueError("quaternion needs 4 components")
        norm = math.sqrt(sum(c * c for c in q))
        if abs(norm - 1.0) > 1e-9:
            raise ValueError(f"quaternion must have unit norm, got {norm!r}")
        # renormalise residual round-off so that downstream invariants hold to 1e-12
        object.__setattr__(self, "quat", tuple(c / norm for c in q))

    @classmethod
    def identity(cls) -> "Unitary":
        return cls((1.0, 0.0, 0.0, 0.0))

    @classmethod
    def from_matrix(cls, m) -> "Unitary":
        m = np.asarray(m, dtype=complex)
        det = np.linalg.det(m)
        if abs(det - 1.0) > 1e-9 or not np.allclose(m @ m.conj().T, IDENTITY2, atol=1e-9):
            raise ValueError("matrix is not in SU(2)")
        return cls(tuple(matrix_to_quat(m)))

    @property
    def q(self) -> np.ndarray:
        return np.array(self.quat)

    def matrix(self) -> np.ndarray:
        return quat_to_matrix(self.quat)

    def canonical(self) -> tuple:
        """Quaternion with the global sign fixed: first nonzero component positive."""
        for c in self.quat:
            if abs(c) > 1e-15:
                return self.quat if c > 0 else tuple(-v for v in self.quat)
        return self.quat

    def dagger(self) -> "Unitary":
        w, x, y, z = self.quat
        return Unitary((w, -x, -y, -z))

    def __matmul__(self, other: "Unitary") -> "Unitary":
        return Unitary(tuple(qmul(self.quat, other.quat)))

    def isclose(self, other: "Unitary", atol: float = 1e-12, up_to_sign: bool = True) -> bool:
        a = np.array(self.quat)
        b = np.array(other.quat)
        if np.allclose(a, b, atol=atol, rtol=0):
            return True
        return up_to_sign and np.allclose(a, -b, atol=atol, rtol=0)

    def axis_angle(self) -> tuple:
        """Return ``(Axis, angle)`` with angle in ``[0, 2pi)`` (sign-normalised)."""
        w, x, y, z = self.canonical()
        vn = math.sqrt(x * x + y * y + z * z)
        if vn < 1e-15:
            return Z_AXIS, 0.0
        angle = 2.0 * math.atan2(vn, w)
        return Axis.from_vector((x, y, z)), angle % TWO_PI

    def __repr__(self):
        w, x, y, z = self.quat
        return f"Unitary(w={w:.6g}, x={x:.6g}, y={y:.6g}, z={z:.6g})"


@dataclass(frozen=True)
class Rotation:
    """Bloch-sphere rotation by ``angle`` (radians, in ``[0, 2pi)``) about ``axis``."""

    axis: Axis
    angle: float

    def __post_init__(self):
        if not (0.0 <= self.angle < TWO_PI):
            raise ValueError(f"rotation angle must lie in [0, 2pi), got {self.angle!r}")


RotationLike = Union[Rotation, tuple]


def _axis_vec(axis) -> np.ndarray:
    if isinstance(axis, Axis):
        return axis.vector
    return Axis.from_vector(axis).vector


def rot_unitary(r: RotationLike, angle: float | None = None) -> Unitary:
    """``exp(-i angle/2 axis.sigma)``.

    Accepts a :class:`Rotation`, an ``(axis, angle)`` pair, or ``axis`` and
    ``angle`` positionally. The tuple forms take any real angle, so
    ``rot_unitary(Z_AXIS, 2*pi)`` gives ``-1`` as a quaternion.
    """
    if angle is None:
        if isinstance(r, Rotation):
            axis, angle = r.axis, r.angle
        else:
            axis, angle = r
    else:
        axis = r
    n = _axis_vec(axis)
    h = 0.5 * float(angle)
    s = math.sin(h)
    return Unitary((math.cos(h), s * n[0], s * n[1], s * n[2]))


def compose(rs: Iterable[RotationLike]) -> Unitary:
    """Product of rotations; the first element is applied first (rightmost factor)."""
    q = np.array([1.0, 0.0, 0.0, 0.0])
    for r in rs:
        q = qmul(rot_unitary(r).quat, q)
    return Unitary(tuple(q))


def fidelity(u: Unitary, g: Unitary) -> float:
    """``|tr(u g^dagger)|/2``, insensitive to global phase."""
    return min(1.0, abs(float(qdot(u.quat, g.quat))))


def infidelity(u: Unitary, g: Unitary) -> float:
    return 1.0 - fidelity(u, g)


def goal(kind: str, theta: float, axis=None) -> Unitary:
    """Named target rotation.

    ``kind`` is one of ``"X"``, ``"Y"``, ``"Z"`` or ``"axis-angle"`` (the
    latter needs ``axis``). ``theta`` must lie in ``[0, 2pi)``.
    """
    if not (0.0 <= theta < TWO_PI):
        raise ValueError(f"goal angle must lie in [0, 2pi), got {theta!r}")
    k = kind.upper()
    if k == "X":
        return rot_unitary(X_AXIS, theta)
    if k == "Y":
        return rot_unitary(Y_AXIS, theta)
    if k == "Z":
        return rot_unitary(Z_AXIS, theta)
    if k in ("AXIS-ANGLE", "AXIS"):
        if axis is None:
            raise ValueError("axis-angle goal needs an axis")
        return rot_unitary(axis, theta)
    raise ValueError(f"unknown goal kind {kind!r}")


def random_unitary(rng: np.random.Generator) -> Unitary:
    """Haar-random element of SU(2) (uniform on the 3-sphere)."""
    v = rng.normal(size=4)
    return Unitary(tuple(v / np.linalg.norm(v)))


def matrix_product(rs: Sequence[RotationLike]) -> np.ndarray:
    """Explicit 2x2 matrix product via ``expm``-free closed form; used as a cross-check."""
    m = IDENTITY2.copy()
    for r in rs:
        if isinstance(r, Rotation):
            axis, angle = r.axis, r.angle
        else:
            axis, angle = r
        n = _axis_vec(axis)
        ns = n[0] * PAULI_X + n[1] * PAULI_Y + n[2] * PAULI_Z
        m = (math.cos(angle / 2) * IDENTITY2 - 1j * math.sin(angle / 2) * ns) @ m
    return m
