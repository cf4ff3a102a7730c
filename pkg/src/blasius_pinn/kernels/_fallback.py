"""Pure-numpy elementwise jet kernels (fallback when the compiled core is absent).

Layout convention: jets are stored channel-first as float64 arrays of shape
(4, N): rows are (value, d1, d2, d3) with respect to eta.
"""

import numpy as np

BACKEND_NAME = "numpy"


def tanh_jet_forward(z):
    """Apply tanh through an order-3 jet, elementwise.

    Returns (out, t) where t = tanh(z[0]) is kept for the backward pass.
    """
    t = np.tanh(z[0])
    s1 = 1.0 - t * t
    s2 = -2.0 * t * s1
    s3 = -2.0 * s1 * (1.0 - 3.0 * t * t)
    u1, u2, u3 = z[1], z[2], z[3]
    out = np.empty_like(z)
    out[0] = t
    out[1] = s1 * u1
    out[2] = s2 * u1 * u1 + s1 * u2
    out[3] = s3 * u1 ** 3 + 3.0 * s2 * u1 * u2 + s1 * u3
    return out, t


def tanh_jet_backward(t, z, abar):
    """Adjoint of tanh_jet_forward: map output adjoints to input adjoints."""
    s1 = 1.0 - t * t
    s2 = -2.0 * t * s1
    w = 1.0 - 3.0 * t * t
    s3 = -2.0 * s1 * w
    s4 = -2.0 * s2 * w + 12.0 * t * s1 * s1
    u1, u2, u3 = z[1], z[2], z[3]
    a0, a1, a2, a3 = abar[0], abar[1], abar[2], abar[3]
    zbar = np.empty_like(z)
    zbar[0] = (
        a0 * s1
        + a1 * s2 * u1
        + a2 * (s3 * u1 * u1 + s2 * u2)
        + a3 * (s4 * u1 ** 3 + 3.0 * s3 * u1 * u2 + s2 * u3)
    )
    zbar[1] = a1 * s1 + 2.0 * a2 * s2 * u1 + a3 * (3.0 * s3 * u1 * u1 + 3.0 * s2 * u2)
    zbar[2] = a2 * s1 + 3.0 * a3 * s2 * u1
    zbar[3] = a3 * s1
    return zbar
