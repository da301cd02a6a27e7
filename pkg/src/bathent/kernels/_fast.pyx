# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loop of the entangling-frame search.

Same contract as ``bathent.kernels._pure.scan_pairs``; see there for the
parameter documentation.
"""

import numpy as np


cdef inline double _quad_form(double complex[:, ::1] m, double complex x0,
                              double complex x1, double complex x2) nogil:
    cdef double complex w0 = m[0, 0] * x0 + m[0, 1] * x1 + m[0, 2] * x2
    cdef double complex w1 = m[1, 0] * x0 + m[1, 1] * x1 + m[1, 2] * x2
    cdef double complex w2 = m[2, 0] * x0 + m[2, 1] * x1 + m[2, 2] * x2
    cdef double complex acc = x0.conjugate() * w0 + x1.conjugate() * w1 \
        + x2.conjugate() * w2
    return acc.real


def _carray(arr, dtype):
    out = np.ascontiguousarray(arr, dtype=dtype)
    if not out.flags.writeable:
        out = out.copy()
    return out


def scan_pairs(a_mat, reb, ct, us, vs, order_u, order_v, double margin):
    a_mat = _carray(a_mat, np.complex128)
    reb = _carray(reb, np.complex128)
    ct = _carray(ct, np.complex128)
    us = _carray(us, np.complex128)
    vs = _carray(vs, np.complex128)
    order_u = _carray(order_u, np.int64)
    order_v = _carray(order_v, np.int64)

    cdef double complex[:, ::1] am = a_mat
    cdef double complex[:, ::1] rb = reb
    cdef double complex[:, ::1] cm = ct
    cdef double complex[:, ::1] uv = us
    cdef double complex[:, ::1] vv = vs
    cdef long[::1] ou = order_u
    cdef long[::1] ov = order_v

    cdef Py_ssize_t nu = uv.shape[0]
    cdef Py_ssize_t nv = vv.shape[0]
    cdef Py_ssize_t total = ou.shape[0]

    au_arr = np.empty(nu, dtype=np.float64)
    cv_arr = np.empty(nv, dtype=np.float64)
    rbv_arr = np.empty((nv, 3), dtype=np.complex128)
    cdef double[::1] au = au_arr
    cdef double[::1] cv = cv_arr
    cdef double complex[:, ::1] rbv = rbv_arr

    cdef Py_ssize_t k, iu, iv
    cdef double complex r
    cdef double value, rr
    cdef double best_value = np.inf
    cdef Py_ssize_t best = -1

    with nogil:
        for k in range(nu):
            au[k] = _quad_form(am, uv[k, 0], uv[k, 1], uv[k, 2])
        for k in range(nv):
            cv[k] = _quad_form(cm, vv[k, 0], vv[k, 1], vv[k, 2])
            rbv[k, 0] = rb[0, 0] * vv[k, 0] + rb[0, 1] * vv[k, 1] + rb[0, 2] * vv[k, 2]
            rbv[k, 1] = rb[1, 0] * vv[k, 0] + rb[1, 1] * vv[k, 1] + rb[1, 2] * vv[k, 2]
            rbv[k, 2] = rb[2, 0] * vv[k, 0] + rb[2, 1] * vv[k, 1] + rb[2, 2] * vv[k, 2]

        for k in range(total):
            iu = ou[k]
            iv = ov[k]
            r = uv[iu, 0].conjugate() * rbv[iv, 0] \
                + uv[iu, 1].conjugate() * rbv[iv, 1] \
                + uv[iu, 2].conjugate() * rbv[iv, 2]
            rr = r.real * r.real + r.imag * r.imag
            value = au[iu] * cv[iv] - rr
            if value < best_value:
                best_value = value
                best = k
            if value < -margin:
                with gil:
                    return k, best, best_value, k + 1
    return -1, best, best_value, total
