"""Pure-Python kernels.  Same signatures as the compiled ``_core`` module."""
import math

import numpy as np

NAME = "python"


def _sub(u, v):
    return (u[0] - v[0], u[1] - v[1], u[2] - v[2])


def _cross(u, v):
    return (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])


def _dot(u, v):
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def _fold(u, v):
    """``arccos(|u.v| / (|u||v|))`` evaluated as an ``atan2`` for accuracy near 0."""
    if _dot(u, u) == 0.0 or _dot(v, v) == 0.0:
        return math.nan
    c = _cross(u, v)
    return math.atan2(math.sqrt(_dot(c, c)), abs(_dot(u, v)))


def module_state(a, b, n, theta):
    """Height, chamber volume and the QM, QR, RM fold angles at ``theta``.

    Returns NaN fold angles when a panel normal vanishes.
    """
    s = math.sin(theta / 2.0)
    h = math.sqrt(max(b * b - 4.0 * a * a * s * s, 0.0))
    sector = 2.0 * math.pi / n
    bot = [(a * math.sin(k * sector), 0.0, a * math.cos(k * sector)) for k in range(n)]
    top = [(a * math.sin(k * sector + theta), h, a * math.cos(k * sector + theta)) for k in range(n)]
    g = (0.0, 0.5 * h, 0.0)

    # caps: polygon area vectors are (0, -A, 0) and (0, +A, 0); G sits h/2 from both
    cap_area = 0.5 * n * a * a * math.sin(sector)
    volume = 2.0 * (0.5 * h) * cap_area / 3.0
    for k in range(n):
        k1 = (k + 1) % n
        for p0, p1, p2 in ((bot[k], top[k1], top[k]), (bot[k], bot[k1], top[k1])):
            area = _cross(_sub(p1, p0), _sub(p2, p0))
            centroid = ((p0[0] + p1[0] + p2[0]) / 3.0, (p0[1] + p1[1] + p2[1]) / 3.0,
                        (p0[2] + p1[2] + p2[2]) / 3.0)
            volume += _dot(_sub(centroid, g), area) / 6.0
    volume = max(volume, 0.0)

    M, P, T, Q, R = bot[0], bot[1], bot[n - 1], top[0], top[1]
    QM, QR, MT, RM, MP = _sub(M, Q), _sub(R, Q), _sub(T, M), _sub(M, R), _sub(P, M)
    n_qmr = _cross(QM, QR)
    qm = _fold(n_qmr, _cross(QM, MT))
    qr = _fold(n_qmr, (0.0, 1.0, 0.0))
    rm = _fold(n_qmr, _cross(RM, MP))
    return h, volume, qm, qr, rm


def winding_sum(tris, pts):
    """Sum over ``pts`` of the winding number of a closed triangle mesh.

    ``tris`` is ``(m, 3, 3)`` with outward orientation, ``pts`` is ``(N, 3)``.
    A ray is cast from each point along ``+y``; every crossing contributes
    the sign of the crossed triangle's normal ``y`` component.
    """
    tris = np.ascontiguousarray(tris, dtype=float)
    pts = np.ascontiguousarray(pts, dtype=float)
    qx, qy, qz = pts[:, 0], pts[:, 1], pts[:, 2]
    total = np.zeros(len(pts), dtype=np.int64)
    for p0, p1, p2 in tris:
        ny = (p1[2] - p0[2]) * (p2[0] - p0[0]) - (p1[0] - p0[0]) * (p2[2] - p0[2])
        if ny == 0.0:
            continue
        e0 = (p1[2] - p0[2]) * (qx - p0[0]) - (p1[0] - p0[0]) * (qz - p0[2])
        e1 = (p2[2] - p1[2]) * (qx - p1[0]) - (p2[0] - p1[0]) * (qz - p1[2])
        e2 = (p0[2] - p2[2]) * (qx - p2[0]) - (p0[0] - p2[0]) * (qz - p2[2])
        if ny > 0:
            inside = (e0 > 0) & (e1 > 0) & (e2 > 0)
        else:
            inside = (e0 < 0) & (e1 < 0) & (e2 < 0)
        y_face = (e1 * p0[1] + e2 * p1[1] + e0 * p2[1]) / ny
        hit = inside & (y_face > qy)
        total += hit.astype(np.int64) if ny > 0 else -hit.astype(np.int64)
    return int(total.sum())
