"""Finite-difference checks for the thickened Reeb trajectory construction.

On ``[0, L] x D`` with polar coordinates ``(r, theta)`` on the disk ``D`` of
area ``A`` the deformed contact form is

    lambda_g = exp(beta(t) g(r^2)) (dt + r^2/2 dtheta)

with Reeb field

    R_g = exp(-beta g) ((1 + r^2 beta g'(r^2)) d/dt
                        - r beta'(t) g(r^2) / 2 d/dr
                        - 2 beta g'(r^2) d/dtheta).

The map ``psi(s, t, r, theta) = (r e^{s/2 + i theta},
sqrt(L/pi) e^{s/2 + 2 pi i t / L})`` pulls ``dx1 dy1 + dx2 dy2`` back to
``e^s (ds dt + r^2/2 ds dtheta + r dr dtheta)``.

Everything here is IEEE double arithmetic; derivatives of the forms are
second-order central differences with step ``h``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Optional

import numpy as np
from numpy.polynomial import Polynomial

from .errors import ContractViolation, SingularGrid

__all__ = [
    "ProfileSpec",
    "GridResidualReport",
    "smooth_step",
    "polynomial_profile",
    "standard_profile",
    "extreme_profile",
    "load_profile",
    "check_box_condition",
    "reeb_field",
    "reeb_residual",
    "psi",
    "psi_pullback_residual",
    "R_MIN",
]

R_MIN = 1e-3

Fn = Callable[[np.ndarray], np.ndarray]


def _bump_base(u):
    u = np.asarray(u, dtype=float)
    out = np.zeros_like(u)
    pos = u > 0
    out[pos] = np.exp(-1.0 / u[pos])
    return out


def _bump_base_prime(u):
    u = np.asarray(u, dtype=float)
    out = np.zeros_like(u)
    pos = u > 0
    out[pos] = np.exp(-1.0 / u[pos]) / u[pos] ** 2
    return out


def smooth_step(u):
    """C-infinity step: 0 for ``u <= 0``, 1 for ``u >= 1``."""
    f, g = _bump_base(u), _bump_base(1.0 - np.asarray(u, dtype=float))
    return f / (f + g)


def smooth_step_prime(u):
    u = np.asarray(u, dtype=float)
    f, g = _bump_base(u), _bump_base(1.0 - u)
    fp, gp = _bump_base_prime(u), _bump_base_prime(1.0 - u)
    return (fp * g + f * gp) / (f + g) ** 2


@dataclass(frozen=True)
class ProfileSpec:
    """Deformation profile ``g`` on ``[0, A/pi]`` and cutoff ``beta`` on
    ``[0, L_len]``, each with its derivative.  All callables are vectorized."""

    g: Fn
    g_prime: Fn
    beta: Fn
    beta_prime: Fn
    A: float = math.pi
    L_len: float = 1.0
    plateau: Optional[tuple[float, float]] = None
    name: str = "custom"

    @property
    def x_max(self) -> float:
        return self.A / math.pi

    @property
    def r_max(self) -> float:
        return math.sqrt(self.x_max)

    def scaled(self, tau: float) -> "ProfileSpec":
        g, gp = self.g, self.g_prime
        return ProfileSpec(lambda x: tau * g(x), lambda x: tau * gp(x), self.beta,
                           self.beta_prime, self.A, self.L_len, self.plateau,
                           f"{tau}*{self.name}")

    def validate(self, samples: int = 2001, tol: float = 1e-12) -> list[str]:
        """Sampled check of the profile requirements; returns the violations."""
        problems = []
        x = np.linspace(0.0, self.x_max, samples)
        gx, gpx = self.g(x), self.g_prime(x)
        if np.any(gx < -tol):
            problems.append("g must be nonnegative")
        if np.any(gpx > tol):
            problems.append("g' must be nonpositive")
        if np.all(np.abs(gx) <= tol):
            problems.append("g must not vanish identically")
        if abs(float(self.g(np.array([self.x_max]))[0])) > tol:
            problems.append("g must vanish near A/pi")
        t = np.linspace(0.0, self.L_len, samples)
        bt = self.beta(t)
        if np.any(bt < -tol) or np.any(bt > 1 + tol):
            problems.append("beta must take values in [0, 1]")
        if abs(bt[0]) > tol or abs(bt[-1]) > tol:
            problems.append("beta must vanish near 0 and L")
        if self.plateau is not None:
            lo, hi = self.plateau
            inner = self.beta(np.linspace(lo, hi, 101))
            if np.any(np.abs(inner - 1) > tol):
                problems.append("beta must equal 1 on its plateau")
        return problems


def _standard_beta(L_len, rise=(0.02, 0.35), fall=(0.65, 0.98)):
    r0, r1 = rise[0] * L_len, rise[1] * L_len
    f0, f1 = fall[0] * L_len, fall[1] * L_len

    def beta(t):
        t = np.asarray(t, dtype=float)
        return smooth_step((t - r0) / (r1 - r0)) * (1.0 - smooth_step((t - f0) / (f1 - f0)))

    def beta_prime(t):
        t = np.asarray(t, dtype=float)
        up, down = smooth_step((t - r0) / (r1 - r0)), 1.0 - smooth_step((t - f0) / (f1 - f0))
        return (smooth_step_prime((t - r0) / (r1 - r0)) / (r1 - r0) * down
                - up * smooth_step_prime((t - f0) / (f1 - f0)) / (f1 - f0))

    return beta, beta_prime, (r1, f0)


def _constant_beta():
    return (lambda t: np.ones_like(np.asarray(t, dtype=float)),
            lambda t: np.zeros_like(np.asarray(t, dtype=float)))


def polynomial_profile(coeffs, A=math.pi, L_len=1.0, bump=True, cutoff=0.1,
                       bump_width=0.4, beta="standard", name="polynomial") -> ProfileSpec:
    """``g(x) = P(x) * bump(x)`` with ``P`` given by increasing-degree
    coefficients.

    The optional bump equals 1 up to ``(1 - cutoff - bump_width) * A/pi`` and
    vanishes on the final ``cutoff`` fraction of ``[0, A/pi]``.  ``beta`` is
    ``"standard"`` (smooth rise, plateau on the middle 30%, smooth fall) or
    ``"one"`` (identically 1).
    """
    poly = Polynomial(coeffs)
    dpoly = poly.deriv()
    X = A / math.pi
    b1 = (1.0 - cutoff) * X
    b0 = b1 - bump_width * X

    if bump:
        def g(x):
            x = np.asarray(x, dtype=float)
            return poly(x) * (1.0 - smooth_step((x - b0) / (b1 - b0)))

        def g_prime(x):
            x = np.asarray(x, dtype=float)
            cut = 1.0 - smooth_step((x - b0) / (b1 - b0))
            return dpoly(x) * cut - poly(x) * smooth_step_prime((x - b0) / (b1 - b0)) / (b1 - b0)
    else:
        def g(x):
            return poly(np.asarray(x, dtype=float))

        def g_prime(x):
            return dpoly(np.asarray(x, dtype=float))

    if beta == "standard":
        bfun, bprime, plateau = _standard_beta(L_len)
    elif beta == "one":
        bfun, bprime = _constant_beta()
        plateau = (0.0, L_len)
    else:
        raise ContractViolation(f"unknown beta kind {beta!r}")
    return ProfileSpec(g, g_prime, bfun, bprime, A, L_len, plateau, name)


def standard_profile(c=0.1, A=math.pi, L_len=1.0, cutoff=0.1, beta="standard") -> ProfileSpec:
    """``g(x) = c (1 - x/(A/pi))^3 * bump(x)``, the default test profile."""
    X = A / math.pi
    cubic = Polynomial([1.0, -1.0 / X]) ** 3 * c
    return polynomial_profile(cubic.coef, A, L_len, bump=True, cutoff=cutoff,
                              beta=beta, name=f"standard(c={c})")


def extreme_profile(A=math.pi, L_len=1.0) -> ProfileSpec:
    """``e^g = A / (pi x)``: the boundary case where ``1 + x g'(x) = 0``."""
    def g(x):
        with np.errstate(divide="ignore"):
            return -np.log(math.pi * np.asarray(x, dtype=float) / A)

    def g_prime(x):
        with np.errstate(divide="ignore"):
            return -1.0 / np.asarray(x, dtype=float)

    bfun, bprime = _constant_beta()
    return ProfileSpec(g, g_prime, bfun, bprime, A, L_len, (0.0, L_len), "extreme")


def load_profile(source) -> ProfileSpec:
    """Build a profile from a JSON table (inline text, a file path, or a dict).

    Keys: ``coeffs`` (list, increasing degree) or ``standard`` (the constant
    ``c``), and optionally ``A``, ``L``, ``bump``, ``cutoff``, ``beta``.
    """
    if isinstance(source, (str, Path)):
        text = str(source)
        if not text.lstrip().startswith("{") and Path(text).exists():
            text = Path(text).read_text()
        try:
            source = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ContractViolation(f"profile is neither a JSON table nor a file: {exc}")
    A = float(source.get("A", math.pi))
    L_len = float(source.get("L", 1.0))
    beta = source.get("beta", "standard")
    cutoff = float(source.get("cutoff", 0.1))
    if "standard" in source:
        return standard_profile(float(source["standard"]), A, L_len, cutoff, beta)
    if "coeffs" not in source:
        raise ContractViolation("profile table needs 'coeffs' or 'standard'")
    return polynomial_profile([float(c) for c in source["coeffs"]], A, L_len,
                              bool(source.get("bump", True)), cutoff, beta=beta)


def check_box_condition(p: ProfileSpec, samples: int, tol: float = 1e-12) -> bool:
    """Whether ``1 + x g'(x) > tol`` at ``samples`` equally spaced points of
    ``[0, A/pi]``; a non-finite g' counts as failure."""
    if samples < 2:
        raise ContractViolation(f"samples must be at least 2, got {samples}")
    x = np.linspace(0.0, p.x_max, samples)
    gp = p.g_prime(x)
    if not np.all(np.isfinite(gp)):
        return False
    return bool(np.all(1.0 + x * gp > tol))


@dataclass
class GridResidualReport:
    grid: tuple[int, ...]
    h: float
    max_abs: dict[str, float]
    argmax: dict[str, tuple[float, ...]]
    extras: dict[str, float] = field(default_factory=dict)

    def worst(self) -> float:
        return max(self.max_abs.values())

    def to_dict(self):
        return {
            "grid": list(self.grid),
            "h": self.h,
            "max_abs": dict(self.max_abs),
            "argmax": {k: list(v) for k, v in self.argmax.items()},
            "extras": dict(self.extras),
        }


def contact_form(p: ProfileSpec, t, r, theta):
    """Components ``(lambda_t, lambda_r, lambda_theta)`` of ``lambda_g``."""
    scale = np.exp(p.beta(t) * p.g(r * r))
    return np.stack([scale, np.zeros_like(scale), 0.5 * r * r * scale + 0.0 * theta])


def reeb_field(p: ProfileSpec, t, r, theta):
    """Components ``(R^t, R^r, R^theta)`` of the closed-form Reeb field."""
    x = r * r
    b, bp = p.beta(t), p.beta_prime(t)
    gx, gpx = p.g(x), p.g_prime(x)
    pref = np.exp(-b * gx)
    return np.stack([
        pref * (1.0 + x * b * gpx),
        -pref * r * bp * gx / 2.0,
        -pref * 2.0 * b * gpx + 0.0 * theta,
    ])


def _grid_points(p: ProfileSpec, grid, r_min):
    nt, nr, nth = grid
    t = np.linspace(0.0, p.L_len, nt)
    r = np.linspace(r_min, p.r_max, nr)
    th = np.linspace(0.0, 2 * math.pi, nth, endpoint=False)
    return np.meshgrid(t, r, th, indexing="ij")


def _argmax(values, coords):
    idx = np.unravel_index(np.argmax(values), values.shape)
    return float(values[idx]), tuple(float(c[idx]) for c in coords)


def reeb_residual(p: ProfileSpec, grid=(41, 41, 8), h: float = 1e-4,
                  r_min: float = R_MIN) -> GridResidualReport:
    """Check ``lambda_g(R_g) = 1`` and ``d lambda_g(R_g, .) = 0`` on a grid.

    ``d lambda`` is assembled from central differences of the components of
    ``lambda_g`` in each of ``t, r, theta``.  Also reports the range of the
    ``d/dt`` coefficient of ``R_g``.
    """
    if r_min <= 0:
        raise SingularGrid(f"r_min must be positive, got {r_min}")
    T, Rr, TH = _grid_points(p, grid, r_min)
    coords = (T, Rr, TH)
    lam = contact_form(p, T, Rr, TH)
    R = reeb_field(p, T, Rr, TH)

    # D[i, j] = d_i lambda_j
    D = np.empty((3, 3) + T.shape)
    for i in range(3):
        plus = [c.copy() for c in coords]
        minus = [c.copy() for c in coords]
        plus[i] += h
        minus[i] -= h
        D[i] = (contact_form(p, *plus) - contact_form(p, *minus)) / (2 * h)
    dlam = D - np.swapaxes(D, 0, 1)
    contraction = np.einsum("i...,ij...->j...", R, dlam)

    eval_res = np.abs(np.einsum("i...,i...->...", lam, R) - 1.0)
    contr_res = np.max(np.abs(contraction), axis=0)
    e_max, e_at = _argmax(eval_res, coords)
    c_max, c_at = _argmax(contr_res, coords)
    coef = R[0]
    return GridResidualReport(
        grid=tuple(grid),
        h=h,
        max_abs={"lambda_of_R": e_max, "dlambda_R": c_max},
        argmax={"lambda_of_R": e_at, "dlambda_R": c_at},
        extras={"dt_coefficient_min": float(coef.min()),
                "dt_coefficient_max": float(coef.max())},
    )


def psi(s, t, r, theta, L_len: float):
    """Cartesian components ``(x1, y1, x2, y2)`` of the embedding."""
    e = np.exp(s / 2.0)
    r2 = math.sqrt(L_len / math.pi)
    ang2 = 2 * math.pi * t / L_len
    return np.stack([r * e * np.cos(theta), r * e * np.sin(theta),
                     r2 * e * np.cos(ang2), r2 * e * np.sin(ang2)])


def pullback_matrix(s, t, r, theta, L_len: float, h: float):
    """Coefficient matrix of ``psi^*(dx1 dy1 + dx2 dy2)`` in ``(s, t, r, theta)``
    from a central-difference Jacobian.  Shape ``(4, 4) + grid``."""
    coords = (s, t, r, theta)
    J = np.empty((4, 4) + np.shape(s))  # J[a, i] = d psi_a / d u_i
    for i in range(4):
        plus = [np.array(c, dtype=float) for c in coords]
        minus = [np.array(c, dtype=float) for c in coords]
        plus[i] = plus[i] + h
        minus[i] = minus[i] - h
        J[:, i] = (psi(*plus, L_len) - psi(*minus, L_len)) / (2 * h)
    omega = np.zeros((4, 4))
    omega[0, 1], omega[1, 0], omega[2, 3], omega[3, 2] = 1.0, -1.0, 1.0, -1.0
    return np.einsum("ai...,ab,bj...->ij...", J, omega, J)


def target_matrix(s, r):
    """Coefficients of ``e^s (ds dt + r^2/2 ds dtheta + r dr dtheta)``."""
    es = np.exp(s)
    M = np.zeros((4, 4) + np.shape(s))
    M[0, 1], M[0, 3], M[2, 3] = es, 0.5 * r * r * es, r * es
    return M - np.swapaxes(M, 0, 1)


def psi_pullback_residual(grid=(5, 9, 9, 8), h: float = 1e-5, L_len: float = 1.0,
                          s_range=(-1.0, 1.0), r_range=(R_MIN, 1.0)) -> GridResidualReport:
    """Entry-wise comparison of the numerical pullback with the target form,
    plus the moment-map identities ``pi r1^2 = e^s pi r^2``, ``pi r2^2 = e^s L``."""
    if r_range[0] <= 0:
        raise SingularGrid(f"r_min must be positive, got {r_range[0]}")
    ns, nt, nr, nth = grid
    axes = (np.linspace(*s_range, ns), np.linspace(0.0, L_len, nt),
            np.linspace(*r_range, nr), np.linspace(0.0, 2 * math.pi, nth, endpoint=False))
    S, T, Rr, TH = np.meshgrid(*axes, indexing="ij")
    coords = (S, T, Rr, TH)
    P = pullback_matrix(S, T, Rr, TH, L_len, h)
    Q = target_matrix(S, Rr)
    entry = np.max(np.abs(P - Q).reshape(16, *S.shape), axis=0)
    z = psi(S, T, Rr, TH, L_len)
    mu1 = math.pi * (z[0] ** 2 + z[1] ** 2)
    mu2 = math.pi * (z[2] ** 2 + z[3] ** 2)
    radii = np.maximum(np.abs(mu1 - np.exp(S) * math.pi * Rr ** 2),
                       np.abs(mu2 - np.exp(S) * L_len))
    p_max, p_at = _argmax(entry, coords)
    m_max, m_at = _argmax(radii, coords)
    return GridResidualReport(
        grid=tuple(grid), h=h,
        max_abs={"pullback": p_max, "moment_radii": m_max},
        argmax={"pullback": p_at, "moment_radii": m_at},
    )
