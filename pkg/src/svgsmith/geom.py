"""Cubic Bézier math shared by the model, prior, raster and optim layers.

All functions operate on numpy arrays of shape (..., 2) in canvas units.
A "cubic" is the 4x2 array [p0, c1, c2, p1].
"""

import numpy as np

# Control-point offset for a quarter-circle cubic arc: 4/3 * (sqrt(2) - 1).
CIRCLE_KAPPA = 4.0 / 3.0 * (np.sqrt(2.0) - 1.0)


def bezier_point(ctrl, t):
    """Evaluate a cubic at parameter(s) t. ctrl: (4, 2), t: scalar or (T,)."""
    t = np.asarray(t, dtype=float)[..., None]
    u = 1.0 - t
    return (
        u * u * u * ctrl[0]
        + 3.0 * u * u * t * ctrl[1]
        + 3.0 * u * t * t * ctrl[2]
        + t * t * t * ctrl[3]
    )


def bezier_tangent(ctrl, t):
    """First derivative of a cubic at t."""
    t = np.asarray(t, dtype=float)[..., None]
    u = 1.0 - t
    return 3.0 * (
        u * u * (ctrl[1] - ctrl[0])
        + 2.0 * u * t * (ctrl[2] - ctrl[1])
        + t * t * (ctrl[3] - ctrl[2])
    )


def split_bezier(ctrl, t=0.5):
    """De Casteljau split of a cubic into two cubics at parameter t."""
    p0, p1, p2, p3 = ctrl
    a = p0 + t * (p1 - p0)
    b = p1 + t * (p2 - p1)
    c = p2 + t * (p3 - p2)
    d = a + t * (b - a)
    e = b + t * (c - b)
    m = d + t * (e - d)
    left = np.array([p0, a, d, m])
    right = np.array([m, e, c, p3])
    return left, right


def line_as_cubic(p0, p1):
    """Exact degree elevation of a line segment to a cubic."""
    p0 = np.asarray(p0, dtype=float)
    p1 = np.asarray(p1, dtype=float)
    return np.array([p0, p0 + (p1 - p0) / 3.0, p0 + 2.0 * (p1 - p0) / 3.0, p1])


def quadratic_as_cubic(q0, q1, q2):
    """Exact degree elevation of a quadratic Bézier to a cubic."""
    q0 = np.asarray(q0, dtype=float)
    q1 = np.asarray(q1, dtype=float)
    q2 = np.asarray(q2, dtype=float)
    return np.array([q0, q0 + 2.0 / 3.0 * (q1 - q0), q2 + 2.0 / 3.0 * (q1 - q2), q2])


def arc_as_cubics(center, rx, ry, phi, theta1, delta):
    """Approximate an elliptical arc with cubics, one per <= 90 degree span.

    center: (2,), phi: ellipse x-axis rotation (radians), theta1: start angle,
    delta: sweep (radians, signed). Standard tangent-matched construction.
    """
    n = max(1, int(np.ceil(abs(delta) / (np.pi / 2.0) - 1e-12)))
    step = delta / n
    cos_phi, sin_phi = np.cos(phi), np.sin(phi)
    rot = np.array([[cos_phi, -sin_phi], [sin_phi, cos_phi]])

    def point(theta):
        return center + rot @ np.array([rx * np.cos(theta), ry * np.sin(theta)])

    def derivative(theta):
        return rot @ np.array([-rx * np.sin(theta), ry * np.cos(theta)])

    alpha = 4.0 / 3.0 * np.tan(step / 4.0)
    cubics = []
    for i in range(n):
        t0 = theta1 + i * step
        t1 = t0 + step
        p0, p1 = point(t0), point(t1)
        c1 = p0 + alpha * derivative(t0)
        c2 = p1 - alpha * derivative(t1)
        cubics.append(np.array([p0, c1, c2, p1]))
    return cubics


def endpoint_to_center_arc(p0, p1, rx, ry, phi_deg, large_arc, sweep):
    """SVG endpoint arc parametrization -> (center, rx, ry, phi, theta1, delta).

    Returns None for a degenerate arc (coincident endpoints or zero radii).
    """
    p0 = np.asarray(p0, dtype=float)
    p1 = np.asarray(p1, dtype=float)
    rx, ry = abs(rx), abs(ry)
    if rx == 0 or ry == 0 or np.allclose(p0, p1):
        return None
    phi = np.deg2rad(phi_deg % 360.0)
    cos_phi, sin_phi = np.cos(phi), np.sin(phi)
    # Rotate to ellipse-aligned frame.
    d = (p0 - p1) / 2.0
    x1p = cos_phi * d[0] + sin_phi * d[1]
    y1p = -sin_phi * d[0] + cos_phi * d[1]
    # Scale radii up if the endpoints cannot be joined.
    lam = (x1p / rx) ** 2 + (y1p / ry) ** 2
    if lam > 1.0:
        s = np.sqrt(lam)
        rx, ry = rx * s, ry * s
    num = rx**2 * ry**2 - rx**2 * y1p**2 - ry**2 * x1p**2
    den = rx**2 * y1p**2 + ry**2 * x1p**2
    coef = np.sqrt(max(0.0, num / den))
    if large_arc == sweep:
        coef = -coef
    cxp = coef * rx * y1p / ry
    cyp = -coef * ry * x1p / rx
    center = np.array(
        [
            cos_phi * cxp - sin_phi * cyp + (p0[0] + p1[0]) / 2.0,
            sin_phi * cxp + cos_phi * cyp + (p0[1] + p1[1]) / 2.0,
        ]
    )

    def angle(u, v):
        uu = np.linalg.norm(u) * np.linalg.norm(v)
        a = np.arccos(np.clip(np.dot(u, v) / uu, -1.0, 1.0))
        return a if (u[0] * v[1] - u[1] * v[0]) >= 0 else -a

    v1 = np.array([(x1p - cxp) / rx, (y1p - cyp) / ry])
    v2 = np.array([(-x1p - cxp) / rx, (-y1p - cyp) / ry])
    theta1 = angle(np.array([1.0, 0.0]), v1)
    delta = angle(v1, v2) % (2.0 * np.pi)
    if not sweep and delta > 0:
        delta -= 2.0 * np.pi
    elif sweep and delta < 0:
        delta += 2.0 * np.pi
    return center, rx, ry, phi, theta1, delta


def flatten_cubics(cubics, samples_per_cubic=32):
    """Sample a cubic chain into a polyline, shape (K*S + 1, 2).

    Consecutive cubics are assumed to share endpoints; the shared point is
    emitted once.
    """
    ts = np.linspace(0.0, 1.0, samples_per_cubic + 1)
    pts = [np.asarray(cubics[0][0], dtype=float)[None, :]]
    for ctrl in cubics:
        pts.append(bezier_point(np.asarray(ctrl, dtype=float), ts[1:]))
    return np.concatenate(pts, axis=0)


def polyline_length(points, closed=False):
    """Total length of a polyline; appends the closing segment when closed."""
    pts = np.asarray(points, dtype=float)
    if closed:
        pts = np.concatenate([pts, pts[:1]], axis=0)
    return float(np.linalg.norm(np.diff(pts, axis=0), axis=1).sum())


def affine_apply(matrix, points):
    """Apply a 2x3 affine matrix to points of shape (..., 2)."""
    m = np.asarray(matrix, dtype=float)
    pts = np.asarray(points, dtype=float)
    return pts @ m[:, :2].T + m[:, 2]


def affine_compose(a, b):
    """Compose 2x3 affines: result applies b first, then a."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    out = np.empty((2, 3))
    out[:, :2] = a[:, :2] @ b[:, :2]
    out[:, 2] = a[:, :2] @ b[:, 2] + a[:, 2]
    return out


IDENTITY_2X3 = np.array([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]])
