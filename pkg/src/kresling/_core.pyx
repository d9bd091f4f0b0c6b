# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels.  Same signatures as :mod:`kresling._pycore`."""
from libc.math cimport sin, cos, sqrt, atan2, fabs, NAN, M_PI

import numpy as np

NAME = "cython"


cdef inline double _fold(double ux, double uy, double uz,
                         double vx, double vy, double vz) nogil:
    # arccos(|u.v| / (|u||v|)) evaluated as an atan2 for accuracy near 0
    cdef double cx, cy, cz
    if ux * ux + uy * uy + uz * uz == 0.0 or vx * vx + vy * vy + vz * vz == 0.0:
        return NAN
    cx = uy * vz - uz * vy
    cy = uz * vx - ux * vz
    cz = ux * vy - uy * vx
    return atan2(sqrt(cx * cx + cy * cy + cz * cz), fabs(ux * vx + uy * vy + uz * vz))


cdef inline double _pyramid(double x0, double y0, double z0,
                            double x1, double y1, double z1,
                            double x2, double y2, double z2, double gy) nogil:
    cdef double ux = x1 - x0, uy = y1 - y0, uz = z1 - z0
    cdef double vx = x2 - x0, vy = y2 - y0, vz = z2 - z0
    cdef double cx = uy * vz - uz * vy
    cdef double cy = uz * vx - ux * vz
    cdef double cz = ux * vy - uy * vx
    cdef double mx = (x0 + x1 + x2) / 3.0
    cdef double my = (y0 + y1 + y2) / 3.0 - gy
    cdef double mz = (z0 + z1 + z2) / 3.0
    return (mx * cx + my * cy + mz * cz) / 6.0


def module_state(double a, double b, int n, double theta):
    cdef double s = sin(theta / 2.0)
    cdef double hh = b * b - 4.0 * a * a * s * s
    cdef double h = sqrt(hh) if hh > 0.0 else 0.0
    cdef double sector = 2.0 * M_PI / n
    cdef double gy = 0.5 * h
    cdef double volume = h * (0.5 * n * a * a * sin(sector)) / 3.0
    cdef int k
    cdef double bx0, bz0, bx1, bz1, tx0, tz0, tx1, tz1
    for k in range(n):
        bx0 = a * sin(k * sector)
        bz0 = a * cos(k * sector)
        bx1 = a * sin((k + 1) * sector)
        bz1 = a * cos((k + 1) * sector)
        tx0 = a * sin(k * sector + theta)
        tz0 = a * cos(k * sector + theta)
        tx1 = a * sin((k + 1) * sector + theta)
        tz1 = a * cos((k + 1) * sector + theta)
        volume += _pyramid(bx0, 0.0, bz0, tx1, h, tz1, tx0, h, tz0, gy)
        volume += _pyramid(bx0, 0.0, bz0, bx1, 0.0, bz1, tx1, h, tz1, gy)
    if volume < 0.0:
        volume = 0.0

    # M, P, T on the bottom ring; Q, R on the top ring
    cdef double mx = 0.0, mz = a
    cdef double px = a * sin(sector), pz = a * cos(sector)
    cdef double tx = a * sin((n - 1) * sector), tz = a * cos((n - 1) * sector)
    cdef double qx = a * sin(theta), qz = a * cos(theta)
    cdef double rx = a * sin(sector + theta), rz = a * cos(sector + theta)
    cdef double QMx = mx - qx, QMy = -h, QMz = mz - qz
    cdef double QRx = rx - qx, QRy = 0.0, QRz = rz - qz
    cdef double MTx = tx - mx, MTy = 0.0, MTz = tz - mz
    cdef double RMx = mx - rx, RMy = -h, RMz = mz - rz
    cdef double MPx = px - mx, MPy = 0.0, MPz = pz - mz
    cdef double n1x = QMy * QRz - QMz * QRy
    cdef double n1y = QMz * QRx - QMx * QRz
    cdef double n1z = QMx * QRy - QMy * QRx
    cdef double n2x = QMy * MTz - QMz * MTy
    cdef double n2y = QMz * MTx - QMx * MTz
    cdef double n2z = QMx * MTy - QMy * MTx
    cdef double n3x = RMy * MPz - RMz * MPy
    cdef double n3y = RMz * MPx - RMx * MPz
    cdef double n3z = RMx * MPy - RMy * MPx
    cdef double qm = _fold(n1x, n1y, n1z, n2x, n2y, n2z)
    cdef double qr = _fold(n1x, n1y, n1z, 0.0, 1.0, 0.0)
    cdef double rm = _fold(n1x, n1y, n1z, n3x, n3y, n3z)
    return h, volume, qm, qr, rm


def winding_sum(tris, pts):
    cdef double[:, :, ::1] T = np.ascontiguousarray(tris, dtype=np.float64)
    cdef double[:, ::1] Pt = np.ascontiguousarray(pts, dtype=np.float64)
    cdef Py_ssize_t m = T.shape[0], npts = Pt.shape[0]
    cdef Py_ssize_t i, j, k, used = 0
    cdef long long total = 0
    cdef double ny, s, qx, qy, qz
    cdef double A[3]
    cdef double B[3]
    cdef double C[3]
    # per kept triangle: three edge functions A x + B z + C, flipped so that
    # inside means all positive, then the plane y = D x + E z + F and the sign
    cdef double[:, ::1] coef = np.empty((max(m, 1), 13))
    for j in range(m):
        for k in range(3):
            A[k] = T[j, (k + 1) % 3, 2] - T[j, k, 2]
            B[k] = -(T[j, (k + 1) % 3, 0] - T[j, k, 0])
            C[k] = -(A[k] * T[j, k, 0] + B[k] * T[j, k, 2])
        ny = A[0] * T[j, 2, 0] + B[0] * T[j, 2, 2] + C[0]
        if ny == 0.0:
            continue
        s = 1.0 if ny > 0.0 else -1.0
        for k in range(3):
            coef[used, 3 * k] = s * A[k]
            coef[used, 3 * k + 1] = s * B[k]
            coef[used, 3 * k + 2] = s * C[k]
        # edge k is opposite vertex (k + 2) % 3
        coef[used, 9] = (A[1] * T[j, 0, 1] + A[2] * T[j, 1, 1] + A[0] * T[j, 2, 1]) / ny
        coef[used, 10] = (B[1] * T[j, 0, 1] + B[2] * T[j, 1, 1] + B[0] * T[j, 2, 1]) / ny
        coef[used, 11] = (C[1] * T[j, 0, 1] + C[2] * T[j, 1, 1] + C[0] * T[j, 2, 1]) / ny
        coef[used, 12] = s
        used += 1
    with nogil:
        for i in range(npts):
            qx = Pt[i, 0]
            qz = Pt[i, 2]
            for j in range(used):
                if coef[j, 0] * qx + coef[j, 1] * qz + coef[j, 2] <= 0.0:
                    continue
                if coef[j, 3] * qx + coef[j, 4] * qz + coef[j, 5] <= 0.0:
                    continue
                if coef[j, 6] * qx + coef[j, 7] * qz + coef[j, 8] <= 0.0:
                    continue
                qy = Pt[i, 1]
                if coef[j, 9] * qx + coef[j, 10] * qz + coef[j, 11] > qy:
                    total += <long long>coef[j, 12]
    return total
