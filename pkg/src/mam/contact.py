"""Numerical checks of the confoliation on ``Z^C_(Lambda, n, s)``.

The manifold is cut out of ``C^{s+n}`` by

    F = sum w_r^2 + sum lambda_j |z_j|^2 = 0,    rho = sum |w_r|^2 + sum |z_j|^2 = 1,

and carries the 1-form ``alpha = i sum c (u du~ - u~ du)`` over all complex
coordinates ``u`` with positive weights ``c`` (``a_r`` on ``w``, ``b_j`` on
``z``). In real coordinates ``u = x + iy`` this is ``2c (x dy - y dx)`` and
``d alpha`` is the constant form ``4c dx ^ dy``.

Real coordinates are ordered ``(x_w1, y_w1, ..., x_z1, y_z1, ...)``.
"""
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import IllConditioned, NoConvergence, Trapped, ValidationError

PROJECTION_TOL = 1e-12
ZERO_TOL = 1e-8


def pfaffian(A):
    """Pfaffian of a real skew-symmetric matrix (Parlett-Reid elimination)."""
    A = np.array(A, dtype=float)
    n = A.shape[0]
    if A.shape != (n, n):
        raise ValueError("square matrix expected")
    if n % 2:
        return 0.0
    pf = 1.0
    for k in range(0, n - 1, 2):
        kp = k + 1 + int(np.abs(A[k + 1:, k]).argmax())
        if kp != k + 1:
            A[[k + 1, kp], :] = A[[kp, k + 1], :]
            A[:, [k + 1, kp]] = A[:, [kp, k + 1]]
            pf = -pf
        if A[k + 1, k] == 0.0:
            return 0.0
        pf *= A[k, k + 1]
        if k + 2 < n:
            tau = A[k, k + 2:] / A[k, k + 1]
            col = A[k + 2:, k + 1].copy()
            A[k + 2:, k + 2:] += np.outer(tau, col) - np.outer(col, tau)
    return pf


# ------------------------------------------------------------- geometry

def _lambdas(cfg):
    if cfg.k != 2:
        raise ValidationError("contact checks need a planar (k = 2) configuration")
    return np.array([complex(float(v[0]), float(v[1])) for v in cfg.vectors])


@dataclass(frozen=True)
class AmbientPoint:
    w: np.ndarray
    z: np.ndarray
    residuals: tuple = (0.0, 0.0)

    @property
    def s(self):
        return len(self.w)

    @property
    def n(self):
        return len(self.z)

    @property
    def real(self):
        u = np.concatenate([self.w, self.z])
        out = np.empty(2 * len(u))
        out[0::2], out[1::2] = u.real, u.imag
        return out

    @property
    def on_W(self):
        return not np.any(self.w)

    def as_json(self):
        return {"w": [[c.real, c.imag] for c in self.w],
                "z": [[c.real, c.imag] for c in self.z],
                "residuals": list(self.residuals)}


def _split(x, s):
    u = x[0::2] + 1j * x[1::2]
    return u[:s], u[s:]


def _constraints(x, lam, s):
    w, z = _split(x, s)
    F = np.sum(w * w) + np.sum(lam * np.abs(z) ** 2)
    return np.array([F.real, F.imag, np.dot(x, x) - 1.0])


def _jacobian(x, lam, s):
    N = len(x)
    J = np.zeros((3, N))
    xs, ys = x[0::2], x[1::2]
    # w block
    J[0, 0:2 * s:2] = 2 * xs[:s]
    J[0, 1:2 * s:2] = -2 * ys[:s]
    J[1, 0:2 * s:2] = 2 * ys[:s]
    J[1, 1:2 * s:2] = 2 * xs[:s]
    # z block
    J[0, 2 * s::2] = 2 * lam.real * xs[s:]
    J[0, 2 * s + 1::2] = 2 * lam.real * ys[s:]
    J[1, 2 * s::2] = 2 * lam.imag * xs[s:]
    J[1, 2 * s + 1::2] = 2 * lam.imag * ys[s:]
    J[2] = 2 * x
    return J


def _weights_vector(weights, s, n):
    c = np.ones(s + n) if weights is None else np.asarray(weights, dtype=float)
    if c.shape != (s + n,) or np.any(c <= 0):
        raise ValidationError(f"need {s + n} positive weights")
    return c


def alpha_vector(x, c):
    """Components of alpha at the real point ``x``."""
    out = np.empty_like(x)
    out[0::2] = -2 * c * x[1::2]
    out[1::2] = 2 * c * x[0::2]
    return out


def dalpha_matrix(c):
    """The constant skew matrix of ``d alpha``."""
    N = 2 * len(c)
    Om = np.zeros((N, N))
    for t, ct in enumerate(c):
        Om[2 * t, 2 * t + 1] = 4 * ct
        Om[2 * t + 1, 2 * t] = -4 * ct
    return Om


def _project(x, lam, s, mask=None, max_iter=100):
    """Gauss-Newton (minimum-norm steps) onto the three constraints."""
    for _ in range(max_iter):
        g = _constraints(x, lam, s)
        if np.max(np.abs(g)) < PROJECTION_TOL:
            return x
        J = _jacobian(x, lam, s)
        if mask is not None:
            J = J * mask
        step = np.linalg.lstsq(J, g, rcond=None)[0]
        x = x - step
    g = _constraints(x, lam, s)
    if np.max(np.abs(g)) < PROJECTION_TOL:
        return x
    raise NoConvergence("projection did not converge")


def _make_point(x, lam, s):
    g = _constraints(x, lam, s)
    w, z = _split(x, s)
    return AmbientPoint(w, z, (float(abs(complex(g[0], g[1]))), float(abs(g[2]))))


def sample_on_variety(cfg, s, seed, near_W=False, zero_z=False, min_w=0.05,
                      max_draws=10):
    """Random point of ``Z^C_(Lambda, n, s)``, reproducible from ``seed``.

    ``near_W`` samples the locus ``w = 0``; ``zero_z`` samples the Brieskorn
    part ``z = 0`` (needs ``s >= 2``). Generic samples keep ``|w| >= min_w``.
    """
    lam = _lambdas(cfg)
    n = len(lam)
    if s < 1:
        raise ValidationError("s must be a positive integer")
    if near_W and zero_z:
        raise ValidationError("w and z cannot both vanish")
    if zero_z and s < 2:
        raise ValidationError("z = 0 needs s >= 2")
    N = 2 * (s + n)
    mask = np.ones(N)
    if near_W:
        mask[:2 * s] = 0.0
    if zero_z:
        mask[2 * s:] = 0.0
    rng = np.random.default_rng(seed)
    for _ in range(max_draws):
        x = rng.standard_normal(N) * mask
        x /= np.linalg.norm(x)
        try:
            x = _project(x, lam, s, mask)
        except NoConvergence:
            continue
        if near_W:
            x[:2 * s] = 0.0
        if zero_z:
            x[2 * s:] = 0.0
        pt = _make_point(x, lam, s)
        if max(pt.residuals) >= PROJECTION_TOL:
            continue
        if not near_W and np.linalg.norm(pt.w) < min_w:
            continue
        if np.linalg.matrix_rank(_jacobian(x, lam, s) * mask) < 3:
            # the sample sits where the constraints are not transverse
            continue
        return pt
    raise NoConvergence(f"no admissible sample after {max_draws} draws")


def tangent_basis(pt, lam):
    """Orthonormal, consistently oriented basis of the tangent space.

    The orientation makes ``(grad ReF, grad ImF, grad rho, e_1, ...)`` a
    positive frame of the ambient space.
    """
    x = pt.real
    J = _jacobian(x, lam, pt.s)
    _, sv, Vt = np.linalg.svd(J)
    if sv[-1] < 1e-10 * sv[0]:
        raise IllConditioned("constraints are not transverse at this point")
    E = Vt[3:].T
    if np.linalg.det(np.hstack([J.T, E])) < 0:
        E[:, 0] = -E[:, 0]
    return E


def scale_of(weights_c, m):
    """Natural size of ``alpha ^ (d alpha)^m`` on unit vectors at ``|X| = 1``."""
    a = float(np.max(weights_c))
    return math.factorial(m) * (2 * a) * (4 * a) ** m


def _value_from_basis(x, c, E):
    a = alpha_vector(x, c) @ E
    Om = E.T @ dalpha_matrix(c) @ E
    q = len(a)
    B = np.zeros((q + 1, q + 1))
    B[0, 1:] = a
    B[1:, 0] = -a
    B[1:, 1:] = Om
    m = (q - 1) // 2
    return math.factorial(m) * pfaffian(B)


def confoliation_value(cfg, pt, weights=None, orientation=1):
    """``alpha ^ (d alpha)^m`` on an oriented orthonormal tangent frame."""
    lam = _lambdas(cfg)
    c = _weights_vector(weights, pt.s, pt.n)
    E = tangent_basis(pt, lam)
    return orientation * _value_from_basis(pt.real, c, E)


def calibrate_orientation(cfg, s, weights=None, seed=0):
    """Sign making the value positive at one reference generic sample."""
    pt = sample_on_variety(cfg, s, seed)
    v = confoliation_value(cfg, pt, weights)
    if v == 0:
        raise IllConditioned("reference sample has zero value")
    return 1 if v > 0 else -1


def _nullity(M, tol):
    sv = np.linalg.svd(M, compute_uv=False)
    if sv.size == 0 or sv[0] == 0:
        return M.shape[1]
    thresh = tol * sv[0]
    near = (sv > thresh / 10) & (sv < thresh * 10)
    if np.any(near):
        raise IllConditioned(
            f"singular value {sv[near][0]:.3g} too close to threshold {thresh:.3g}")
    return M.shape[1] - int(np.sum(sv > thresh))


def kernel_dims(cfg, pt, weights=None, tol=1e-8):
    """``(dim ker d alpha|_T, dim (ker alpha n ker d alpha)|_T)``."""
    lam = _lambdas(cfg)
    c = _weights_vector(weights, pt.s, pt.n)
    E = tangent_basis(pt, lam)
    Om = E.T @ dalpha_matrix(c) @ E
    a = alpha_vector(pt.real, c) @ E
    return _nullity(Om, tol), _nullity(np.vstack([Om, a[None, :]]), tol)


@dataclass(frozen=True)
class ContactSample:
    point: AmbientPoint
    weights: tuple
    confoliation_value: float
    ker_dalpha_dim: int
    ker_both_dim: int
    on_W: bool
    scale: float

    def as_json(self):
        return {"point": self.point.as_json(), "weights": list(self.weights),
                "confoliation_value": self.confoliation_value,
                "relative_value": self.confoliation_value / self.scale,
                "ker_dalpha_dim": self.ker_dalpha_dim,
                "ker_both_dim": self.ker_both_dim, "on_W": self.on_W}


def contact_sample(cfg, s, seed, near_W=False, weights=None, orientation=1,
                   tol=1e-8):
    pt = sample_on_variety(cfg, s, seed, near_W=near_W)
    c = _weights_vector(weights, s, cfg.n)
    value = confoliation_value(cfg, pt, c, orientation)
    kd = kernel_dims(cfg, pt, c, tol)
    return ContactSample(pt, tuple(float(v) for v in c), float(value), kd[0],
                         kd[1], pt.on_W, scale_of(c, cfg.n + s - 2))


def _legendrian_basis(x, lam, s, c):
    """Orthonormal basis of ``T n ker alpha`` at ``x``."""
    J = _jacobian(x, lam, s)
    M = np.vstack([J, alpha_vector(x, c)[None, :]])
    _, sv, Vt = np.linalg.svd(M)
    rank = int(np.sum(sv > 1e-12 * sv[0]))
    return Vt[rank:].T


@dataclass(frozen=True)
class EscapeReport:
    success: bool
    steps: int
    final_value: float
    threshold: float
    legendrian_defect: float
    secant_defect: float
    path: tuple = field(repr=False, default=())

    def as_json(self):
        return {"success": self.success, "steps": self.steps,
                "final_value": self.final_value, "threshold": self.threshold,
                "legendrian_defect": self.legendrian_defect,
                "secant_defect": self.secant_defect}


def escape_path(cfg, pt, weights=None, step=1e-2, max_steps=50,
                orientation=1, direction="transverse", keep_path=False):
    """Follow a Legendrian curve from a point of ``W`` until alpha is contact.

    The initial velocity is the unit vector of ``T n ker alpha`` with the
    largest ``w`` component; each step is an Euler step, a projection back
    onto the variety and a projection of the velocity onto the new
    ``T n ker alpha``. ``direction="inside_W"`` starts with no ``w``
    component instead, which never leaves ``W`` (a negative control).

    The Legendrian defect is the largest ``|alpha(v)|`` over the velocities
    used at the nodes; the secant defect measures ``alpha`` on the chords.
    """
    if not pt.on_W:
        raise ValidationError("escape paths start on W (w = 0)")
    lam = _lambdas(cfg)
    s, n = pt.s, pt.n
    c = _weights_vector(weights, s, n)
    threshold = ZERO_TOL * scale_of(c, n + s - 2)
    x = pt.real
    B = _legendrian_basis(x, lam, s, c)
    Bw = B[:2 * s]
    if direction == "transverse":
        _, _, Vt = np.linalg.svd(Bw)
        v = B @ Vt[0]
    elif direction == "inside_W":
        _, sv, Vt = np.linalg.svd(Bw)
        v = B @ Vt[-1]
        if np.linalg.norm(v[:2 * s]) > 1e-12:
            raise ValidationError("no velocity inside W")
    else:
        raise ValueError(f"unknown direction {direction!r}")
    v /= np.linalg.norm(v)

    mask = np.ones_like(x)
    defect = abs(alpha_vector(x, c) @ v)
    secant = 0.0
    path = [x.copy()]
    value = 0.0
    for k in range(1, max_steps + 1):
        x_new = _project(x + step * v, lam, s, mask)
        chord = (x_new - x) / step
        mid = (x + x_new) / 2
        secant = max(secant, abs(alpha_vector(mid, c) @ chord))
        x = x_new
        if keep_path:
            path.append(x.copy())
        B = _legendrian_basis(x, lam, s, c)
        v = B @ (B.T @ v)
        nv = np.linalg.norm(v)
        if nv < 1e-14:
            break
        v /= nv
        defect = max(defect, abs(alpha_vector(x, c) @ v))
        E = tangent_basis(_make_point(x, lam, s), lam)
        value = orientation * _value_from_basis(x, c, E)
        if value > threshold:
            return EscapeReport(True, k, float(value), threshold, float(defect),
                                float(secant), tuple(path))
    report = EscapeReport(False, max_steps, float(value), threshold,
                          float(defect), float(secant), tuple(path))
    raise Trapped(f"no contact point reached in {max_steps} steps", report)


def contact_suite(cfg, s, samples=100, seed=0, weights=None, tol=1e-8,
                  escapes=20, step=1e-2, max_steps=50):
    """Seeded generic and ``W`` samples plus escape paths, with a summary."""
    c = _weights_vector(weights, s, cfg.n)
    orientation = calibrate_orientation(cfg, s, c, seed=seed)
    rng = np.random.default_rng(seed)
    seeds = rng.integers(0, 2 ** 63 - 1, size=(3, max(samples, escapes)))
    generic = [contact_sample(cfg, s, int(sd), False, c, orientation, tol)
               for sd in seeds[0, :samples]]
    on_w = [contact_sample(cfg, s, int(sd), True, c, orientation, tol)
            for sd in seeds[1, :samples]]
    paths = []
    for sd in seeds[2, :escapes]:
        pt = sample_on_variety(cfg, s, int(sd), near_W=True)
        try:
            paths.append(escape_path(cfg, pt, c, step, max_steps, orientation))
        except Trapped as err:
            paths.append(err.report)
    scale = scale_of(c, cfg.n + s - 2)
    hist = {}
    for smp in generic + on_w:
        key = f"{'W' if smp.on_W else 'generic'}:{smp.ker_dalpha_dim},{smp.ker_both_dim}"
        hist[key] = hist.get(key, 0) + 1
    summary = {
        "s": s, "orientation": orientation, "scale": scale,
        "min_value_off_W": min((x.confoliation_value for x in generic), default=None),
        "max_value_off_W": max((x.confoliation_value for x in generic), default=None),
        "max_abs_value_on_W": max((abs(x.confoliation_value) for x in on_w),
                                  default=None),
        "kernel_dims": dict(sorted(hist.items())),
        "escapes_ok": sum(p.success for p in paths),
        "escapes": len(paths),
        "max_escape_steps": max((p.steps for p in paths), default=0),
        "max_legendrian_defect": max((p.legendrian_defect for p in paths),
                                     default=0.0),
    }
    return {"generic": generic, "on_W": on_w, "escapes": paths,
            "summary": summary}
