"""Radial bound states of the Cornell potential by Numerov shooting.

The reduced radial equation u'' = 2*mu*(V_eff - E)*u, with
V_eff = -alpha/r + sigma*r + ell*(ell+1)/(2*mu*r^2), integrates outward on a
uniform grid with u(r_min) = 0 and u(r_min + h) = h**(ell+1).  Eigenvalues
come in two stages:

1. bisection on the interior node count (which steps from n-1 to n exactly at
   the n-th discrete eigenvalue) until the bracket is 1e-10 relative;
2. refinement of the logarithmic-derivative match between the outward sweep
   and an inward sweep from r_max, evaluated at the outer classical turning
   point, until 1e-13 relative.

The final wavefunction glues the outward solution (stable in the allowed
region) to the inward one (stable in the forbidden tail), normalizes
Int u^2 dr = 1 with composite Simpson, and reports the node count and RMS
radius.  Exponential growth during sweeps is tamed by rescaling the rolling
values in place; the solution is only defined up to normalization, so this
changes nothing.

Everything is deterministic: fixed iteration order, fixed tolerances, no
randomness, so repeated solves are bit-identical.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, GridTooSmall, NoBoundState
from .estimator import quark_mass_estimate
from .natunits import Quantity, compton_wavelength, fine_structure_fraction, normalize_e2_mode
from .potential import CornellPotential, cornell_from_quark_mass
from .quadrature import composite_simpson

__all__ = [
    "RadialProblem",
    "BoundState",
    "numerov_integrate",
    "solve_bound_state",
    "rms_radius",
    "virial_check",
    "confinement_ratio",
    "confinement_report",
    "make_default_problem",
    "write_bound_state_csv",
    "bound_state_sidecar",
    "BRACKET_REL_TOL",
    "REFINE_REL_TOL",
    "DEFAULT_GRID_POINTS",
    "R_MIN_FACTOR",
    "R_MAX_FACTOR",
]

BRACKET_REL_TOL = 1e-10
REFINE_REL_TOL = 1e-13
DEFAULT_GRID_POINTS = 20000
R_MIN_FACTOR = 1e-6
R_MAX_FACTOR = 40.0

_RESCALE_LIMIT = 1e250


@dataclass(frozen=True)
class RadialProblem:
    """A Cornell potential with a reduced mass on a finite radial grid."""

    potential: CornellPotential
    reduced_mass: Quantity
    r_min: Quantity
    r_max: Quantity
    angular_momentum: int = 0
    grid_points: int = DEFAULT_GRID_POINTS

    def __post_init__(self) -> None:
        if self.reduced_mass.dim != 1 or self.reduced_mass.value <= 0.0:
            raise DomainError("reduced mass must be positive with dim 1")
        if self.r_min.dim != -1 or self.r_max.dim != -1:
            raise DomainError("grid bounds must be lengths (dim -1)")
        if not 0.0 < self.r_min.value < self.r_max.value:
            raise DomainError("need 0 < r_min < r_max")
        if self.angular_momentum < 0:
            raise DomainError("angular momentum must be non-negative")
        if self.grid_points < 1000:
            raise DomainError("grid must have at least 1000 points")


def make_default_problem(
    potential: CornellPotential,
    reduced_mass: Quantity,
    length_scale: Quantity,
    *,
    angular_momentum: int = 0,
    grid_points: int = DEFAULT_GRID_POINTS,
) -> RadialProblem:
    """Grid spanning [1e-6, 40] times the length scale, 20000 points."""
    if length_scale.dim != -1 or length_scale.value <= 0.0:
        raise DomainError("length scale must be a positive length (dim -1)")
    return RadialProblem(
        potential=potential,
        reduced_mass=reduced_mass,
        r_min=Quantity(R_MIN_FACTOR * length_scale.value, -1),
        r_max=Quantity(R_MAX_FACTOR * length_scale.value, -1),
        angular_momentum=angular_momentum,
        grid_points=grid_points,
    )


@dataclass(frozen=True, eq=False)
class BoundState:
    """A normalized radial eigenstate: level n has n-1 interior nodes."""

    level: int
    energy: Quantity
    nodes: int
    radii: np.ndarray = field(repr=False)
    u: np.ndarray = field(repr=False)
    rms_radius: Quantity


def _grid(p: RadialProblem) -> tuple[np.ndarray, float]:
    r = np.linspace(p.r_min.value, p.r_max.value, p.grid_points)
    return r, (p.r_max.value - p.r_min.value) / (p.grid_points - 1)


def _effective_potential(p: RadialProblem, r: np.ndarray) -> np.ndarray:
    alpha = p.potential.alpha.value
    sigma = p.potential.sigma.value
    ell = p.angular_momentum
    veff = -alpha / r + sigma * r
    if ell:
        veff = veff + ell * (ell + 1) / (2.0 * p.reduced_mass.value * r * r)
    return veff


def _coefficients(veff: np.ndarray, mu: float, h: float, energy: float) -> tuple[list, list]:
    """Numerov coefficients a = 2 + 10T and b = 1 - T with T = (h^2/12) 2mu (V-E)."""
    t = (h * h / 12.0) * (2.0 * mu) * (veff - energy)
    a = 2.0 + 10.0 * t
    b = 1.0 - t
    b[b == 0.0] = 1e-300  # keep the recurrence total; exact zeros are measure zero
    return a.tolist(), b.tolist()


def _sweep_count(a: list, b: list, u_start: float, n_points: int) -> int:
    """Outward sweep keeping only the rolling pair; returns the node count."""
    u0 = 0.0
    u1 = u_start
    count = 0
    for i in range(1, n_points - 1):
        u2 = (a[i] * u1 - b[i - 1] * u0) / b[i + 1]
        if u2 > _RESCALE_LIMIT or u2 < -_RESCALE_LIMIT:
            inv = 1.0 / abs(u2)
            u2 *= inv
            u1 *= inv
        if u2 * u1 < 0.0:
            count += 1
        u0, u1 = u1, u2
    return count


def _sweep_match(
    a: list, b: list, h: float, u_start: float, i_tp: int, n_points: int
) -> float | None:
    """Log-derivative mismatch (outward minus inward) at the turning point."""
    u0 = 0.0
    u1 = u_start
    for i in range(1, i_tp + 1):
        u2 = (a[i] * u1 - b[i - 1] * u0) / b[i + 1]
        if u2 > _RESCALE_LIMIT or u2 < -_RESCALE_LIMIT:
            inv = 1.0 / abs(u2)
            u2 *= inv
            u1 *= inv
            u0 *= inv
        u0, u1 = u1, u2
    # the loop leaves u0 = u[i_tp], u1 = u[i_tp + 1]; invert the last recurrence
    # step, b[i+1] u[i+1] = a[i] u[i] - b[i-1] u[i-1], to recover u[i_tp - 1]
    out_0, out_p1 = u0, u1
    out_m1 = (a[i_tp] * out_0 - b[i_tp + 1] * out_p1) / b[i_tp - 1]

    v1 = 0.0
    v0 = u_start
    for i in range(n_points - 2, i_tp - 1, -1):
        vm1 = (a[i] * v0 - b[i + 1] * v1) / b[i - 1]
        if vm1 > _RESCALE_LIMIT or vm1 < -_RESCALE_LIMIT:
            inv = 1.0 / abs(vm1)
            vm1 *= inv
            v0 *= inv
            v1 *= inv
        v1, v0 = v0, vm1
    # the loop leaves v0 = u[i_tp - 1], v1 = u[i_tp]; same inversion for u[i_tp + 1]
    in_m1, in_0 = v0, v1
    in_p1 = (a[i_tp] * in_0 - b[i_tp - 1] * in_m1) / b[i_tp + 1]

    if out_0 == 0.0 or in_0 == 0.0:
        return None
    return (out_p1 - out_m1) / (2.0 * h * out_0) - (in_p1 - in_m1) / (2.0 * h * in_0)


def _outward_array(a: list, b: list, u_start: float, stop: int) -> np.ndarray:
    """Outward solution u[0..stop] with in-place prefix rescaling."""
    u = np.zeros(stop + 1)
    if stop >= 1:
        u[1] = u_start
    u0, u1 = 0.0, u_start
    for i in range(1, stop):
        u2 = (a[i] * u1 - b[i - 1] * u0) / b[i + 1]
        if u2 > _RESCALE_LIMIT or u2 < -_RESCALE_LIMIT:
            inv = 1.0 / abs(u2)
            u[: i + 1] *= inv
            u2 *= inv
            u1 *= inv
        u[i + 1] = u2
        u0, u1 = u1, u2
    return u


def _inward_array(a: list, b: list, u_start: float, start: int, n_points: int) -> np.ndarray:
    """Inward solution over grid indices [start..n_points-1], suffix-rescaled."""
    m = n_points - start
    v = np.zeros(m)
    v[m - 1] = 0.0
    if m >= 2:
        v[m - 2] = u_start
    v1, v0 = 0.0, u_start
    for i in range(n_points - 2, start, -1):
        vm1 = (a[i] * v0 - b[i + 1] * v1) / b[i - 1]
        if vm1 > _RESCALE_LIMIT or vm1 < -_RESCALE_LIMIT:
            inv = 1.0 / abs(vm1)
            v[i - start :] *= inv
            vm1 *= inv
            v0 *= inv
        v[i - 1 - start] = vm1
        v1, v0 = v0, vm1
    return v


def numerov_integrate(p: RadialProblem, energy: "Quantity | float") -> tuple[np.ndarray, int]:
    """Outward Numerov solution at a trial energy and its interior node count.

    The solution starts from u(r_min) = 0, u(r_min + h) = h**(ell+1) and is
    defined up to normalization (overflowing stretches are rescaled in place).
    """
    e = _energy_value(energy)
    r, h = _grid(p)
    veff = _effective_potential(p, r)
    a, b = _coefficients(veff, p.reduced_mass.value, h, e)
    u_start = h ** (p.angular_momentum + 1)
    u = _outward_array(a, b, u_start, p.grid_points - 1)
    return u, _count_sign_changes(u)


def _energy_value(energy: "Quantity | float") -> float:
    if isinstance(energy, Quantity):
        if energy.dim != 1:
            raise DomainError(f"energy must have dim 1, got dim {energy.dim}")
        return energy.value
    e = float(energy)
    if not math.isfinite(e):
        raise DomainError(f"energy must be finite, got {energy!r}")
    return e


def _count_sign_changes(u: np.ndarray, threshold_frac: float = 0.0) -> int:
    if threshold_frac:
        peak = float(np.max(np.abs(u)))
        mask = np.abs(u) > threshold_frac * peak
        vals = u[mask]
    else:
        vals = u[u != 0.0]
    if len(vals) < 2:
        return 0
    return int(np.sum(vals[:-1] * vals[1:] < 0.0))


def solve_bound_state(p: RadialProblem, n: int) -> BoundState:
    """The n-th bound state (n = 1 is the ground state, n-1 interior nodes).

    Raises :class:`NoBoundState` when both potential terms vanish and
    :class:`GridTooSmall` when fewer than n states fit below V(r_max).
    """
    if n < 1:
        raise DomainError(f"level must be a positive integer, got {n}")
    alpha = p.potential.alpha.value
    sigma = p.potential.sigma.value
    if alpha == 0.0 and sigma == 0.0:
        raise NoBoundState("potential is identically zero")
    r, h = _grid(p)
    veff = _effective_potential(p, r)
    mu = p.reduced_mass.value
    n_pts = p.grid_points
    u_start = h ** (p.angular_momentum + 1)

    def count(e: float) -> int:
        a, b = _coefficients(veff, mu, h, e)
        return _sweep_count(a, b, u_start, n_pts)

    e_hi = float(veff[-1])
    e_lo = _bracket_floor(float(np.min(veff)), e_hi, alpha, mu)
    c_hi = count(e_hi)
    if c_hi < n:
        raise GridTooSmall(
            f"level {n} is not representable: only {c_hi} node(s) below V(r_max)"
        )
    lo, hi = e_lo, e_hi
    for _ in range(300):
        if hi - lo <= BRACKET_REL_TOL * max(abs(lo), abs(hi), 1e-12):
            break
        mid = 0.5 * (lo + hi)
        if count(mid) >= n:
            hi = mid
        else:
            lo = mid

    e_mid = 0.5 * (lo + hi)
    i_tp = _turning_point_index(veff, e_mid, n_pts)

    def mismatch(e: float) -> float | None:
        a, b = _coefficients(veff, mu, h, e)
        return _sweep_match(a, b, h, u_start, i_tp, n_pts)

    f_lo = mismatch(lo)
    f_hi = mismatch(hi)
    e_star = e_mid
    if f_lo is not None and f_hi is not None and f_lo * f_hi < 0.0:
        a_e, b_e, f_a = lo, hi, f_lo
        for _ in range(120):
            if b_e - a_e <= REFINE_REL_TOL * max(abs(a_e), abs(b_e), 1e-12):
                break
            m_e = 0.5 * (a_e + b_e)
            f_m = mismatch(m_e)
            if f_m is None:
                break
            if f_a * f_m <= 0.0:
                b_e = m_e
            else:
                a_e, f_a = m_e, f_m
        e_star = 0.5 * (a_e + b_e)

    a, b = _coefficients(veff, mu, h, e_star)
    in_start = i_tp - 1  # turning point index is clamped to [2, n_pts - 3]
    u_out = _outward_array(a, b, u_start, i_tp + 1)
    u_in = _inward_array(a, b, u_start, in_start, n_pts)
    u = np.empty(n_pts)
    anchor_out = u_out[i_tp]
    anchor_in = u_in[i_tp - in_start]
    if anchor_in != 0.0 and anchor_out != 0.0:
        scale = anchor_out / anchor_in
        u[: i_tp + 1] = u_out[: i_tp + 1]
        u[i_tp + 1 :] = scale * u_in[i_tp + 1 - in_start :]
    else:
        u, _ = numerov_integrate(p, e_star)

    norm = composite_simpson(u * u, h)
    if norm <= 0.0:
        raise GridTooSmall("wavefunction collapsed to zero on the grid")
    u = u / math.sqrt(norm)
    nodes = _count_sign_changes(u[1:-1], threshold_frac=1e-12)
    return BoundState(
        level=n,
        energy=Quantity(e_star, 1),
        nodes=nodes,
        radii=r,
        u=u,
        rms_radius=Quantity(_rms_value(r, u, h), -1),
    )


def _bracket_floor(v_min: float, v_max: float, alpha: float, mu: float) -> float:
    """Lower end of the eigenvalue bracket.

    The grid minimum of V_eff diverges with the Coulomb core as r_min shrinks,
    and at trial energies that deep the Numerov factors 1 - T turn negative
    across the whole grid, flooding the sweep with spurious sign flips.  The
    spectrum is rigorously bounded below by -mu*alpha^2/2 (dropping the
    non-negative linear and centrifugal terms leaves a pure Coulomb problem),
    so the bracket starts there, with margin; the raw grid minimum is kept as
    a fallback for degenerate windows.
    """
    bound = -0.6 * mu * alpha * alpha - 1.0
    floor = max(v_min, bound)
    if floor >= v_max:
        return v_min
    return floor


def _turning_point_index(veff: np.ndarray, energy: float, n_pts: int) -> int:
    allowed = np.nonzero(veff <= energy)[0]
    if len(allowed) == 0:
        idx = n_pts // 2
    else:
        idx = int(allowed[-1])
    return max(2, min(idx, n_pts - 3))


def _rms_value(r: np.ndarray, u: np.ndarray, h: float) -> float:
    return math.sqrt(composite_simpson(r * r * u * u, h))


def rms_radius(state: BoundState) -> Quantity:
    """Root-mean-square radius sqrt(Int r^2 u^2 dr) of a normalized state."""
    r = state.radii
    h = float(r[1] - r[0])
    return Quantity(_rms_value(r, state.u, h), -1)


def virial_check(state: BoundState, p: RadialProblem) -> float:
    """Residual |2<T> - <r dV/dr>| / |E| for a solved state.

    For the Cornell form r dV/dr = alpha/r + sigma*r, and <T> = E - <V>.
    The state must be normalized; unnormalized input is rejected.
    """
    r = state.radii
    h = float(r[1] - r[0])
    u2 = state.u**2
    norm = composite_simpson(u2, h)
    if abs(norm - 1.0) > 1e-6:
        raise DomainError(f"state is not normalized (Int u^2 dr = {norm:.6g})")
    alpha = p.potential.alpha.value
    sigma = p.potential.sigma.value
    mean_v = composite_simpson(u2 * (-alpha / r + sigma * r), h)
    mean_rdv = composite_simpson(u2 * (alpha / r + sigma * r), h)
    energy = state.energy.value
    # <T> = E - <V> keeps any centrifugal part on the kinetic side, as the
    # virial relation requires
    kinetic = energy - mean_v
    return abs(2.0 * kinetic - mean_rdv) / max(abs(energy), 1e-300)


def confinement_report(
    *, e2_mode: str = "paper", grid_points: int = DEFAULT_GRID_POINTS
) -> dict:
    """Solve the end-to-end confinement chain at the model defaults.

    Quark mass from the slope chain, potential from that mass, reduced mass
    m/2, ground state on the default grid; the headline number is the RMS
    radius over the Compton wavelength.
    """
    mode = normalize_e2_mode(e2_mode)
    e2 = fine_structure_fraction(mode)
    estimate = quark_mass_estimate(e_squared=e2)
    m_quark = estimate.mass
    pot = cornell_from_quark_mass(m_quark)
    mu = Quantity(m_quark.value / 2.0, 1)
    lam = compton_wavelength(m_quark)
    problem = make_default_problem(pot, mu, lam, grid_points=grid_points)
    state = solve_bound_state(problem, 1)
    ratio = state.rms_radius.value / lam.value
    return {
        "e2_mode": "paper-137" if mode == "paper" else "precise",
        "m_quark": m_quark.value,
        "alpha": pot.alpha.value,
        "sigma": pot.sigma.value,
        "reduced_mass": mu.value,
        "energy": state.energy.value,
        "rms_radius": state.rms_radius.value,
        "compton_wavelength": lam.value,
        "ratio": ratio,
        "within_band": 0.1 <= ratio <= 10.0,
    }


def confinement_ratio(
    *, e2_mode: str = "paper", grid_points: int = DEFAULT_GRID_POINTS
) -> float:
    """RMS radius of the default-chain ground state over the Compton wavelength."""
    return confinement_report(e2_mode=e2_mode, grid_points=grid_points)["ratio"]


def bound_state_sidecar(state: BoundState, p: RadialProblem) -> dict:
    """Sidecar metadata for a CSV export."""
    return {
        "n": state.level,
        "E": state.energy.value,
        "nodes": state.nodes,
        "rms_radius": state.rms_radius.value,
        "grid_points": p.grid_points,
        "tolerances": {"bracket_rel": BRACKET_REL_TOL, "refine_rel": REFINE_REL_TOL},
    }


def write_bound_state_csv(state: BoundState, p: RadialProblem, path: str) -> None:
    """Write the wavefunction table as ``r,u`` CSV plus a ``.json`` sidecar."""
    lines = ["r,u"]
    for rv, uv in zip(state.radii, state.u):
        lines.append(f"{rv:.10g},{uv:.10g}")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
    with open(path + ".json", "w", encoding="utf-8", newline="\n") as fh:
        json.dump(bound_state_sidecar(state, p), fh, indent=2)
        fh.write("\n")
