"""Rotation-group primitives: axis-angle maps, angle scaling, noisy rotation sampling.

All rotations are plain 3x3 numpy arrays (proper orthogonal). Axis-angle
vectors live in the so(3) tangent space, canonicalized to norm <= pi.
"""

from __future__ import annotations

import numpy as np

_EPS_SMALL_ANGLE = 1e-8
_NEAR_PI = 1e-3


def is_rotation(m: np.ndarray, tol: float = 1e-9) -> bool:
    """Check orthogonality and unit determinant within ``tol``."""
    m = np.asarray(m, dtype=float)
    if m.shape != (3, 3):
        return False
    return (
        np.abs(m.T @ m - np.eye(3)).max() <= tol
        and abs(np.linalg.det(m) - 1.0) <= tol
    )


def _skew(v: np.ndarray) -> np.ndarray:
    return np.array(
        [
            [0.0, -v[2], v[1]],
            [v[2], 0.0, -v[0]],
            [-v[1], v[0], 0.0],
        ]
    )


def exp_map(v: np.ndarray) -> np.ndarray:
    """Rodrigues exponential: tangent vector -> rotation matrix."""
    v = np.asarray(v, dtype=float)
    theta = np.linalg.norm(v)
    k = _skew(v)
    if theta < _EPS_SMALL_ANGLE:
        # second-order series keeps exp_map(0) = I exact
        return np.eye(3) + k + 0.5 * (k @ k)
    a = np.sin(theta) / theta
    b = (1.0 - np.cos(theta)) / (theta * theta)
    return np.eye(3) + a * k + b * (k @ k)


def log_map(rot: np.ndarray) -> np.ndarray:
    """Inverse of :func:`exp_map`, canonicalized to ``norm(v) <= pi``.

    Angles within 1e-7 of pi have two antipodal representatives; the
    lexicographically larger axis is returned so the choice is deterministic.
    """
    rot = np.asarray(rot, dtype=float)
    w = np.array(
        [rot[2, 1] - rot[1, 2], rot[0, 2] - rot[2, 0], rot[1, 0] - rot[0, 1]]
    )
    s = 0.5 * np.linalg.norm(w)  # sin(theta)
    c = 0.5 * (np.trace(rot) - 1.0)  # cos(theta)
    theta = np.arctan2(s, c)
    if theta < _EPS_SMALL_ANGLE:
        return 0.5 * w
    if theta < np.pi - _NEAR_PI:
        return (theta / (2.0 * s)) * w
    # Near pi the skew part degenerates; recover the axis from the
    # symmetric part: R + I = 2 cos^2(theta/2) I + 2 sin^2(theta/2) aa^T (approx).
    sym = 0.5 * (rot + np.eye(3))
    diag = np.clip(np.diag(sym), 0.0, None)
    i = int(np.argmax(diag))
    axis = np.empty(3)
    axis[i] = np.sqrt(diag[i])
    for j in range(3):
        if j != i:
            axis[j] = sym[i, j] / axis[i]
    axis /= np.linalg.norm(axis)
    # Fix the sign using the (possibly tiny) skew part if it is informative,
    # otherwise pick the lexicographically larger of the two antipodes.
    if s > 1e-7:
        if np.dot(axis, w) < 0.0:
            axis = -axis
    elif tuple(axis) < tuple(-axis):
        axis = -axis
    return theta * axis


def scale_rot(c: float, rot: np.ndarray) -> np.ndarray:
    """Scale the rotation angle by ``c`` in [0, 1], keeping the axis."""
    return exp_map(c * log_map(rot))


def geodesic_angle(rot: np.ndarray) -> float:
    """Rotation angle in [0, pi]."""
    w = np.array(
        [rot[2, 1] - rot[1, 2], rot[0, 2] - rot[2, 0], rot[1, 0] - rot[0, 1]]
    )
    s = 0.5 * np.linalg.norm(w)
    c = 0.5 * (np.trace(rot) - 1.0)
    return float(np.arctan2(s, c))


def sample_igso3_approx(
    mean: np.ndarray, var: float, rng: np.random.Generator
) -> np.ndarray:
    """Sample a rotation near ``mean`` with isotropic tangent-space variance ``var``.

    Tangent-space Gaussian approximation: mean @ exp(xi), xi ~ N(0, var * I_3).
    Exact for var = 0; accurate for the small per-step variances used by the
    noise schedule.
    """
    if var < 0:
        raise ValueError(f"variance must be >= 0, got {var}")
    if var == 0:
        return np.array(mean, dtype=float)
    xi = rng.normal(0.0, np.sqrt(var), size=3)
    return np.asarray(mean, dtype=float) @ exp_map(xi)
