"""Parametric surfaces, the Darboux frame along admissible traces, trace
classification, and isophote-axis reconstruction.

All frame derivatives are analytic: surface coordinates are evaluated as
bivariate jets (second partials included), traces as univariate jets, and
the chain rule is applied explicitly.  Inner products of isotropic vectors
(T', Q', n' are all isotropic) use the Euclidean yz branch of the Galilean
product throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import expr
from .curve import KAPPA_MIN, CurveSpec, _curve_arrays
from .errors import (
    AxisConstraintError,
    AxisUndefinedError,
    InadmissibleTraceError,
    NotAsymptoticError,
    NotLineOfCurvatureError,
    SingularNormalError,
)
from .galilean import GalileanMotion, GVec3

OMEGA_MIN = 1e-10
TRACE_TOL = 1e-9       # |d/ds x(u1(s),u2(s)) - 1| must stay below this
ANALYTIC_TOL = 1e-8    # default for analytic quantities
RESIDUAL_TOL = 1e-5    # default for finite-difference residuals


@dataclass(frozen=True)
class SurfaceSpec:
    """A surface X(u1,u2) = (x, y, z) over a parameter rectangle."""

    x: expr.ExprAST
    y: expr.ExprAST
    z: expr.ExprAST
    domain: tuple[tuple[float, float], tuple[float, float]]
    parameters: dict[str, float] = field(default_factory=dict)

    @classmethod
    def from_strings(cls, x_src: str, y_src: str, z_src: str,
                     domain=((0.0, 1.0), (0.0, 1.0)),
                     parameters: dict[str, float] | None = None,
                     variables=("u1", "u2")) -> "SurfaceSpec":
        params = dict(parameters or {})
        v = list(variables)
        return cls(expr.parse(x_src, v, params), expr.parse(y_src, v, params),
                   expr.parse(z_src, v, params),
                   ((float(domain[0][0]), float(domain[0][1])),
                    (float(domain[1][0]), float(domain[1][1]))), params)

    def grid(self, n1: int, n2: int) -> tuple[np.ndarray, np.ndarray]:
        (a1, b1), (a2, b2) = self.domain
        return np.linspace(a1, b1, n1), np.linspace(a2, b2, n2)


@dataclass(frozen=True)
class SurfaceSample:
    point: GVec3
    Xu1: GVec3
    Xu2: GVec3
    n: GVec3
    omega: float
    g1: float
    g2: float
    h11: float
    h12: float
    h22: float


def _coordinate_jets(surface: SurfaceSpec, U1, U2, check: bool = True):
    at = (U1, U2)
    return (expr.eval_jet2(surface.x, at, check=check),
            expr.eval_jet2(surface.y, at, check=check),
            expr.eval_jet2(surface.z, at, check=check))


def _normal_parts(jx, jy, jz):
    """Unnormalized normal components and omega from first partials."""
    A = jx.du2 * jz.du1 - jx.du1 * jz.du2
    B = jx.du1 * jy.du2 - jx.du2 * jy.du1
    return A, B, np.hypot(A, B)


def sample_surface(surface: SurfaceSpec, u1: float, u2: float,
                   omega_min: float = OMEGA_MIN) -> SurfaceSample:
    """First fundamental form data and the unit isotropic normal at a point."""
    jx, jy, jz = _coordinate_jets(surface, float(u1), float(u2))
    A, B, omega = _normal_parts(jx, jy, jz)
    if omega <= omega_min:
        raise SingularNormalError(
            f"omega = {float(omega):.3g} <= {omega_min:g} at (u1,u2)=({u1:.6g},{u2:.6g})")
    return SurfaceSample(
        point=GVec3(float(jx.value), float(jy.value), float(jz.value)),
        Xu1=GVec3(float(jx.du1), float(jy.du1), float(jz.du1)),
        Xu2=GVec3(float(jx.du2), float(jy.du2), float(jz.du2)),
        n=GVec3(0.0, float(A / omega), float(B / omega)),
        omega=float(omega),
        g1=float(jx.du1), g2=float(jx.du2),
        h11=float(jy.du1 ** 2 + jz.du1 ** 2),
        h12=float(jy.du1 * jy.du2 + jz.du1 * jz.du2),
        h22=float(jy.du2 ** 2 + jz.du2 ** 2),
    )


@dataclass(frozen=True)
class TraceSpec:
    """A curve in the parameter rectangle, (u1(s), u2(s)) over an interval.

    The induced ambient curve must be admissible: the x coordinate of
    X(u1(s), u2(s)) has to advance at unit rate.
    """

    u1_of_s: expr.ExprAST
    u2_of_s: expr.ExprAST
    domain: tuple[float, float]

    @classmethod
    def from_strings(cls, u1_src: str, u2_src: str,
                     domain: tuple[float, float] = (0.0, 1.0),
                     parameters: dict[str, float] | None = None,
                     variable: str = "s") -> "TraceSpec":
        params = dict(parameters or {})
        return cls(expr.parse(u1_src, [variable], params),
                   expr.parse(u2_src, [variable], params),
                   (float(domain[0]), float(domain[1])))

    def samples(self, n: int) -> np.ndarray:
        return np.linspace(self.domain[0], self.domain[1], n)


def induced_curve(surface: SurfaceSpec, trace: TraceSpec) -> CurveSpec:
    """The ambient curve X(u1(s), u2(s)) as a graph-form CurveSpec.

    Built by symbolic substitution, so its Frenet data (including third
    derivatives for tau) stays analytic.
    """
    var = trace.u1_of_s.variables[0]
    u1n, u2n = surface.x.variables
    mapping = {u1n: trace.u1_of_s, u2n: trace.u2_of_s}
    f = expr.subst(surface.y, mapping, [var])
    g = expr.subst(surface.z, mapping, [var])
    params = dict(surface.parameters)
    return CurveSpec(f, g, trace.domain, params)


@dataclass(frozen=True)
class DarbouxSample:
    s: float
    T: GVec3
    Q: GVec3
    n: GVec3
    kg: float
    kn: float
    tau_g: float
    phi: float


def _darboux_arrays(surface: SurfaceSpec, trace: TraceSpec, S: np.ndarray,
                    omega_min: float = OMEGA_MIN) -> dict:
    """Darboux data along a trace, vectorized over the sample array."""
    j1 = expr.eval_jet(trace.u1_of_s, S, order=2)
    j2 = expr.eval_jet(trace.u2_of_s, S, order=2)
    u1p, u2p, u1pp, u2pp = j1.d1, j2.d1, j1.d2, j2.d2
    jx, jy, jz = _coordinate_jets(surface, j1.value, j2.value)

    def chain1(j):
        return j.du1 * u1p + j.du2 * u2p

    def chain2(j):
        return (j.du1u1 * u1p * u1p + 2.0 * j.du1u2 * u1p * u2p
                + j.du2u2 * u2p * u2p + j.du1 * u1pp + j.du2 * u2pp)

    xv = chain1(jx)
    err = np.abs(xv - 1.0)
    if np.any(err > TRACE_TOL):
        i = int(np.argmax(err))
        raise InadmissibleTraceError(
            f"trace x-velocity {float(np.ravel(xv)[i]):.6g} != 1 at "
            f"s = {float(np.ravel(S)[i]):.6g}; substitute u1 = s (or shear-compensate)")

    A, B, omega = _normal_parts(jx, jy, jz)
    if np.any(omega <= omega_min):
        i = int(np.argmax(omega <= omega_min))
        raise SingularNormalError(
            f"omega <= {omega_min:g} along trace at s = {float(np.ravel(S)[i]):.6g}")
    ny, nz = A / omega, B / omega

    # d/ds of the normal: partials of A, B via the surface second partials
    A_u1 = jx.du1u2 * jz.du1 + jx.du2 * jz.du1u1 - jx.du1u1 * jz.du2 - jx.du1 * jz.du1u2
    A_u2 = jx.du2u2 * jz.du1 + jx.du2 * jz.du1u2 - jx.du1u2 * jz.du2 - jx.du1 * jz.du2u2
    B_u1 = jx.du1u1 * jy.du2 + jx.du1 * jy.du1u2 - jx.du1u2 * jy.du1 - jx.du2 * jy.du1u1
    B_u2 = jx.du1u2 * jy.du2 + jx.du1 * jy.du2u2 - jx.du2u2 * jy.du1 - jx.du2 * jy.du1u2
    Ap = A_u1 * u1p + A_u2 * u2p
    Bp = B_u1 * u1p + B_u2 * u2p
    omega_p = (A * Ap + B * Bp) / omega
    nyp = (Ap * omega - A * omega_p) / (omega * omega)
    nzp = (Bp * omega - B * omega_p) / (omega * omega)

    Ty, Tz = chain1(jy), chain1(jz)
    Tpy, Tpz = chain2(jy), chain2(jz)
    Qy, Qz = nz, -ny
    Qpy, Qpz = nzp, -nyp

    kg = Tpy * Qy + Tpz * Qz
    kn = Tpy * ny + Tpz * nz
    taug = Qpy * ny + Qpz * nz
    kappa = np.hypot(kg, kn)
    phi = np.arctan2(-kn, kg)
    return {
        "s": S, "u1": j1.value, "u2": j2.value,
        "x": jx.value, "y": jy.value, "z": jz.value,
        "Ty": Ty, "Tz": Tz, "Tpy": Tpy, "Tpz": Tpz,
        "ny": ny, "nz": nz, "nyp": nyp, "nzp": nzp,
        "Qy": Qy, "Qz": Qz, "Qpy": Qpy, "Qpz": Qpz,
        "kg": kg, "kn": kn, "taug": taug, "kappa": kappa, "phi": phi,
        "omega": omega,
    }


def darboux(surface: SurfaceSpec, trace: TraceSpec, s: float) -> DarbouxSample:
    """Darboux frame (T, Q, n) and scalars (k_g, k_n, tau_g, phi) at s.

        T' = k_g Q + k_n n,   Q' = tau_g n,   n' = -tau_g Q
        k_g = kappa cos(phi), k_n = -kappa sin(phi)
    """
    a = _darboux_arrays(surface, trace, np.asarray(float(s)))
    return DarbouxSample(
        s=float(s),
        T=GVec3(1.0, float(a["Ty"]), float(a["Tz"])),
        Q=GVec3(0.0, float(a["Qy"]), float(a["Qz"])),
        n=GVec3(0.0, float(a["ny"]), float(a["nz"])),
        kg=float(a["kg"]), kn=float(a["kn"]),
        tau_g=float(a["taug"]), phi=float(a["phi"]),
    )


def darboux_samples(surface: SurfaceSpec, trace: TraceSpec, S) -> list[DarbouxSample]:
    S = np.asarray(S, dtype=float)
    a = _darboux_arrays(surface, trace, S)
    return [
        DarbouxSample(
            s=float(S[i]),
            T=GVec3(1.0, float(a["Ty"][i]), float(a["Tz"][i])),
            Q=GVec3(0.0, float(a["Qy"][i]), float(a["Qz"][i])),
            n=GVec3(0.0, float(a["ny"][i]), float(a["nz"][i])),
            kg=float(a["kg"][i]), kn=float(a["kn"][i]),
            tau_g=float(a["taug"][i]), phi=float(a["phi"][i]),
        )
        for i in range(S.size)
    ]


@dataclass
class TraceClassification:
    geodesic: bool
    asymptotic: bool
    line_of_curvature: bool
    max_abs_kg: float
    max_abs_kn: float
    max_abs_taug: float


def classify_trace(surface: SurfaceSpec, trace: TraceSpec, samples: int = 64,
                   tol: float = ANALYTIC_TOL) -> TraceClassification:
    """Geodesic / asymptotic / line of curvature flags: k_g, k_n, tau_g
    within tol of zero at every sample."""
    a = _darboux_arrays(surface, trace, trace.samples(samples))
    mg = float(np.abs(a["kg"]).max())
    mn = float(np.abs(a["kn"]).max())
    mt = float(np.abs(a["taug"]).max())
    return TraceClassification(
        geodesic=mg <= tol, asymptotic=mn <= tol, line_of_curvature=mt <= tol,
        max_abs_kg=mg, max_abs_kn=mn, max_abs_taug=mt)


# ---------------------------------------------------------------------------
# Isophote axis reconstruction
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AxisReport:
    """Result of an axis reconstruction.

    branch is one of C5-trivial, C6-line-of-curvature, C13-asymptotic,
    C14-degenerate.  residual is the maximum finite-difference |d'| over
    the samples (None for the degenerate branch, where no constant axis
    exists unless the trace is a straight line).
    """

    d: GVec3 | None
    theta_or_phi: float
    branch: str
    residual: float | None
    status: str  # "ok" | "degenerate"
    sign: int | None = None
    note: str = ""


def _axis_residual(S: np.ndarray, dy: np.ndarray, dz: np.ndarray) -> float:
    gy = np.gradient(dy, S)
    gz = np.gradient(dz, S)
    return float(np.hypot(gy, gz).max())


def axis_isotropic(surface: SurfaceSpec, trace: TraceSpec, theta: float,
                   samples: int = 64, tol: float = ANALYTIC_TOL,
                   residual_tol: float = RESIDUAL_TOL) -> AxisReport:
    """Reconstruct a unit isotropic axis making constant angle theta with n.

    Asymptotic traces admit only the trivial axis d = n (theta = 0).
    Lines of curvature use d = -(k_n/k_g) cos(theta) Q + cos(theta) n,
    which is unit exactly when k_n/k_g = +-tan(theta) at every sample;
    either sign is accepted and the realized sign is recorded.
    """
    if not (0.0 <= theta <= math.pi / 2 + 1e-15):
        raise ValueError("theta must lie in [0, pi/2]")
    S = trace.samples(samples)
    a = _darboux_arrays(surface, trace, S)
    asymptotic = bool(np.abs(a["kn"]).max() <= tol)
    line_of_curvature = bool(np.abs(a["taug"]).max() <= tol)

    if asymptotic and abs(theta) <= tol:
        dy, dz = a["ny"], a["nz"]
        residual = _axis_residual(S, dy, dz)
        if residual > residual_tol:
            raise AxisConstraintError(
                f"d = n is not constant along the trace (residual {residual:.3g}); "
                "the trace is not a line of curvature")
        return AxisReport(d=GVec3(0.0, float(dy[0]), float(dz[0])),
                          theta_or_phi=theta, branch="C5-trivial",
                          residual=residual, status="ok")

    if line_of_curvature:
        undef = (np.abs(a["kg"]) <= tol) & (np.abs(a["kn"]) > tol)
        if np.any(undef):
            i = int(np.argmax(undef))
            raise AxisUndefinedError(
                f"k_g vanishes while k_n does not at s = {float(S[i]):.6g}; "
                "the line-of-curvature axis formula is undefined")
        t = math.tan(theta)
        minus = np.abs(a["kn"] + t * a["kg"]).max()
        plus = np.abs(a["kn"] - t * a["kg"]).max()
        scale = max(1.0, float(np.abs(a["kg"]).max()))
        if min(minus, plus) > tol * scale:
            raise AxisConstraintError(
                f"|k_n/k_g| != tan(theta) along the trace "
                f"(best deviation {min(minus, plus):.3g} at tan(theta) = {t:.6g})")
        sign = 1 if plus <= minus else -1
        ratio = a["kn"] / a["kg"]
        ct = math.cos(theta)
        dy = -ratio * ct * a["Qy"] + ct * a["ny"]
        dz = -ratio * ct * a["Qz"] + ct * a["nz"]
        residual = _axis_residual(S, dy, dz)
        if residual > residual_tol:
            raise AxisConstraintError(
                f"reconstructed axis is not constant (residual {residual:.3g})")
        return AxisReport(d=GVec3(0.0, float(dy[0]), float(dz[0])),
                          theta_or_phi=theta, branch="C6-line-of-curvature",
                          residual=residual, status="ok", sign=sign)

    raise NotLineOfCurvatureError(
        f"trace is neither asymptotic-with-theta-0 nor a line of curvature "
        f"(max |k_n| = {float(np.abs(a['kn']).max()):.3g}, "
        f"max |tau_g| = {float(np.abs(a['taug']).max()):.3g})")


def axis_nonisotropic(surface: SurfaceSpec, trace: TraceSpec, phi_measure: float,
                      samples: int = 64, tol: float = ANALYTIC_TOL,
                      residual_tol: float = RESIDUAL_TOL) -> AxisReport:
    """Reconstruct a unit non-isotropic axis d = T + phi n.

    Requires an asymptotic trace; d is constant iff k_g = phi tau_g at
    every sample.  A line of curvature that is not asymptotic is reported
    as degenerate: the corresponding formula forces kappa = 0, so only a
    straight line could carry such an axis.
    """
    S = trace.samples(samples)
    a = _darboux_arrays(surface, trace, S)
    asymptotic = bool(np.abs(a["kn"]).max() <= tol)
    line_of_curvature = bool(np.abs(a["taug"]).max() <= tol)

    if asymptotic:
        dev = np.abs(a["kg"] - phi_measure * a["taug"])
        if dev.max() > tol:
            i = int(np.argmax(dev))
            raise AxisConstraintError(
                f"constancy condition k_g = phi tau_g violated at "
                f"s = {float(S[i]):.6g} (deviation {float(dev[i]):.3g})")
        dy = a["Ty"] + phi_measure * a["ny"]
        dz = a["Tz"] + phi_measure * a["nz"]
        residual = _axis_residual(S, dy, dz)
        if residual > residual_tol:
            raise AxisConstraintError(
                f"reconstructed axis is not constant (residual {residual:.3g})")
        return AxisReport(d=GVec3(1.0, float(dy[0]), float(dz[0])),
                          theta_or_phi=phi_measure, branch="C13-asymptotic",
                          residual=residual, status="ok")

    if line_of_curvature:
        return AxisReport(
            d=None, theta_or_phi=phi_measure, branch="C14-degenerate",
            residual=None, status="degenerate",
            note="line-of-curvature trace with non-isotropic axis forces "
                 "k_g = k_n = 0 (kappa = 0): only a straight line qualifies")

    raise NotAsymptoticError(
        f"trace is not asymptotic (max |k_n| = {float(np.abs(a['kn']).max()):.3g})")


def transform_surface(surface: SurfaceSpec, m: GalileanMotion) -> SurfaceSpec:
    """The motion image of a surface, as new coordinate expressions."""
    cp, sp = math.cos(m.phi), math.sin(m.phi)
    v = list(surface.x.variables)

    def lin(t0: float, cx: float, cy: float, cz: float) -> expr.ExprAST:
        out = expr.const(t0)
        for coeff, ast in ((cx, surface.x), (cy, surface.y), (cz, surface.z)):
            term = expr.combine("*", expr.const(coeff), ast, v)
            out = expr.combine("+", out, term, v)
        return out

    return SurfaceSpec(
        x=lin(m.a, 1.0, 0.0, 0.0),
        y=lin(m.b, m.c1, cp, sp),
        z=lin(m.d0, m.e1, -sp, cp),
        domain=surface.domain,
        parameters=dict(surface.parameters),
    )


# ---------------------------------------------------------------------------
# Theorem verification
# ---------------------------------------------------------------------------

@dataclass
class TheoremConfig:
    samples: int = 64
    tol: float = ANALYTIC_TOL
    residual_tol: float = RESIDUAL_TOL
    axis: GVec3 | None = None
    theta: float | None = None         # reconstruct an isotropic axis
    phi_measure: float | None = None   # reconstruct a non-isotropic axis


@dataclass
class TheoremReport:
    name: str
    hypothesis_met: bool
    conclusion_verified: bool | None
    details: dict

    def to_dict(self) -> dict:
        return {"name": self.name, "hypothesis_met": self.hypothesis_met,
                "conclusion_verified": self.conclusion_verified,
                "details": self.details}


def _not_met(name: str, reason: str) -> TheoremReport:
    return TheoremReport(name, False, None, {"reason": reason})


def verify_theorems(surface: SurfaceSpec, trace: TraceSpec,
                    config: TheoremConfig | None = None) -> dict[str, TheoremReport]:
    """Numerically check every statement of the axis section on one trace.

    Each theorem is evaluated as hypothesis -> conclusion: the hypothesis
    is tested on sampled Darboux/Frenet data for the configured axis, and
    the conclusion is asserted only when the hypothesis holds.
    """
    cfg = config or TheoremConfig()
    tol = cfg.tol
    S = trace.samples(cfg.samples)
    a = _darboux_arrays(surface, trace, S)

    axis = cfg.axis
    recon: AxisReport | None = None
    recon_error = ""
    if axis is None and cfg.theta is not None:
        try:
            recon = axis_isotropic(surface, trace, cfg.theta,
                                   cfg.samples, tol, cfg.residual_tol)
            axis = recon.d
        except Exception as e:  # noqa: BLE001 - reported, not swallowed
            recon_error = f"axis_isotropic failed: {e}"
    if axis is None and cfg.phi_measure is not None:
        try:
            recon = axis_nonisotropic(surface, trace, cfg.phi_measure,
                                      cfg.samples, tol, cfg.residual_tol)
            axis = recon.d
        except Exception as e:  # noqa: BLE001
            recon_error = f"axis_nonisotropic failed: {e}"

    out: dict[str, TheoremReport] = {}
    names = ["thm_3_1_i", "thm_3_1_ii", "thm_3_2", "thm_3_3",
             "thm_3_4", "cor_3_5", "thm_3_6_i", "thm_3_6_ii"]
    if axis is None:
        reason = recon_error or "no axis provided or reconstructed"
        for name in names:
            out[name] = _not_met(name, reason)
        return out

    iso = axis.is_isotropic
    fieldv = a["ny"] * axis.y + a["nz"] * axis.z
    spread = float(fieldv.max() - fieldv.min())
    isophote = spread <= tol
    silhouette = bool(np.abs(fieldv).max() <= tol)
    geodesic = bool(np.abs(a["kg"]).max() <= tol)
    asymptotic = bool(np.abs(a["kn"]).max() <= tol)
    line_of_curvature = bool(np.abs(a["taug"]).max() <= tol)
    kappa = a["kappa"]
    straight = bool(kappa.max() <= tol)
    max_kappa = float(kappa.max())

    fren = None
    if kappa.min() > KAPPA_MIN:
        fren = _curve_arrays(induced_curve(surface, trace), S)
    common = {"field_spread": spread, "field_mean": float(fieldv.mean()),
              "max_kappa": max_kappa,
              "axis": axis.to_list(), "axis_kind": axis.kind}
    if recon is not None:
        common["axis_residual"] = recon.residual
        common["axis_branch"] = recon.branch

    def report(name, hyp, concl, **details):
        out[name] = TheoremReport(name, hyp, concl if hyp else None,
                                  {**common, **details})

    # 3.1 (i): a geodesic isophote with isotropic axis is a straight line
    report("thm_3_1_i", iso and isophote and geodesic, straight,
           max_abs_kg=float(np.abs(a["kg"]).max()))

    # 3.1 (ii): an asymptotic isophote with isotropic axis is a plane
    # curve and its axis is spanned by B
    if iso and isophote and asymptotic and fren is not None:
        tau_max = float(np.abs(fren["tau"]).max())
        proj = fren["By"] * axis.y + fren["Bz"] * axis.z
        collin = float(np.hypot(axis.y - proj * fren["By"],
                                axis.z - proj * fren["Bz"]).max())
        concl = tau_max <= tol and collin <= tol and \
            float(np.abs(np.abs(proj) - 1.0).max()) <= tol
        report("thm_3_1_ii", True, concl, max_abs_tau=tau_max,
               axis_off_binormal=collin)
    else:
        report("thm_3_1_ii", False, None)

    # theta for the isotropic-axis statements, from the measured field
    theta = math.acos(max(-1.0, min(1.0, float(fieldv.mean())))) if iso else None

    # 3.2: on the k_n/k_g = -tan(theta) branch the axis is perpendicular
    # to the principal normal
    if (iso and isophote and line_of_curvature and not straight
            and fren is not None and theta is not None):
        t = math.tan(theta)
        scale = max(1.0, float(np.abs(a["kg"]).max()))
        minus_branch = float(np.abs(a["kn"] + t * a["kg"]).max()) <= tol * scale
        if minus_branch:
            nd = float(np.abs(fren["Ny"] * axis.y + fren["Nz"] * axis.z).max())
            comb = float(np.abs(-(a["kn"] / kappa) * math.cos(theta)
                                - (a["kg"] / kappa) * math.sin(theta)).max())
            report("thm_3_2", True, nd <= tol and comb <= tol,
                   theta=theta, max_abs_N_dot_d=nd, frame_combination=comb)
        else:
            report("thm_3_2", False, None, theta=theta,
                   reason="trace is not on the -tan(theta) branch")
    else:
        report("thm_3_2", False, None)

    # 3.3: tan(theta) branch with the binormal combination vanishing
    # forces theta = pi/4
    if (iso and isophote and line_of_curvature and not geodesic
            and not straight and theta is not None):
        t = math.tan(theta)
        scale = max(1.0, float(np.abs(a["kg"]).max()))
        plus_branch = float(np.abs(a["kn"] - t * a["kg"]).max()) <= tol * scale
        comb = float(np.abs(-(a["kn"] / kappa) * math.sin(theta)
                            + (a["kg"] / kappa) * math.cos(theta)).max())
        if plus_branch and comb <= tol:
            forced = float(np.abs(np.arctan2(np.abs(a["kn"]), np.abs(a["kg"]))
                                  - math.pi / 4).max())
            report("thm_3_3", True,
                   abs(theta - math.pi / 4) <= tol and forced <= tol,
                   theta=theta, frame_combination=comb,
                   max_theta_deviation=forced)
        else:
            report("thm_3_3", False, None, theta=theta,
                   frame_combination=comb,
                   reason="not on the tan(theta) branch with vanishing "
                          "binormal combination")
    else:
        report("thm_3_3", False, None)

    # 3.4: a silhouette whose isotropic axis is parallel to Q is a plane curve
    if iso and silhouette:
        proj = a["Qy"] * axis.y + a["Qz"] * axis.z
        off_q = float(np.hypot(axis.y - proj * a["Qy"],
                               axis.z - proj * a["Qz"]).max())
        unit = float(np.abs(np.abs(proj) - 1.0).max())
        if off_q <= tol and unit <= tol:
            if straight:
                concl, tau_max = True, 0.0
            elif fren is not None:
                tau_max = float(np.abs(fren["tau"]).max())
                concl = tau_max <= tol
            else:
                concl, tau_max = None, float("nan")
            report("thm_3_4", True, concl, axis_off_Q=off_q,
                   max_abs_tau=tau_max,
                   max_abs_kg=float(np.abs(a["kg"]).max()),
                   max_abs_taug=float(np.abs(a["taug"]).max()))
        else:
            report("thm_3_4", False, None, axis_off_Q=off_q)
    else:
        report("thm_3_4", False, None)

    # Corollary 3.5: a geodesic or line-of-curvature isophote with
    # non-isotropic axis is a straight line
    report("cor_3_5",
           (not iso) and isophote and (geodesic or line_of_curvature),
           straight)

    # 3.6 (i): a silhouette with non-isotropic axis in span{T, Q} is a
    # plane curve
    if (not iso) and silhouette:
        b_comp = (axis.y - a["Ty"]) * a["ny"] + (axis.z - a["Tz"]) * a["nz"]
        in_span = float(np.abs(b_comp).max()) <= tol
        if in_span:
            if straight:
                concl, tau_max = True, 0.0
            elif fren is not None:
                tau_max = float(np.abs(fren["tau"]).max())
                concl = tau_max <= tol
            else:
                concl, tau_max = None, float("nan")
            report("thm_3_6_i", True, concl, max_abs_tau=tau_max,
                   max_span_defect=float(np.abs(b_comp).max()))
        else:
            report("thm_3_6_i", False, None,
                   max_span_defect=float(np.abs(b_comp).max()))
    else:
        report("thm_3_6_i", False, None)

    # 3.6 (ii): a silhouette whose axis is spanned by T is a geodesic
    if (not iso) and silhouette:
        off_t = float(np.hypot(axis.y - a["Ty"], axis.z - a["Tz"]).max())
        report("thm_3_6_ii", off_t <= tol, geodesic, axis_off_T=off_t,
               max_abs_kg=float(np.abs(a["kg"]).max()))
    else:
        report("thm_3_6_ii", False, None)

    return out
