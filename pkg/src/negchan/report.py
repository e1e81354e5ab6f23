"""Single-scenario reports."""
from __future__ import annotations

import numpy as np

from . import energy
from .channel import Channel, choi_matrix, is_cp, negativity
from .linalg import hermitian_eigenvalues
from .scenario import Scenario


def analytic_choi(scen: Scenario, k: float | None = None, t: float | None = None) -> np.ndarray | None:
    """Closed-form Choi matrix for diagonal evolution, or None if there is none."""
    d = scen.dynamics
    if not (d.is_hamiltonian and d.frame == "energy" and scen.assignment.has_analytic_form):
        return None
    t = d.t if t is None else t
    spec = scen.spectrum(k)
    kind = scen.assignment.kind
    if kind == "copy":
        return energy.analytic_choi_copy(spec, t)
    if kind == "rotated" or scen.assignment.m == 2:
        return energy.analytic_choi_rotated(spec, t)[0]
    return energy.analytic_choi_extended(spec, t)


def scenario_choi(scen: Scenario, k: float | None = None, t: float | None = None) -> np.ndarray:
    ch = Channel(scen.unitary(k, t), scen.assignment.build())
    return choi_matrix(ch)


def run_report(scen: Scenario) -> dict:
    tol = scen.tolerance
    c = scenario_choi(scen)
    eigs = hermitian_eigenvalues(c, tol)
    doc = {
        "source": scen.source,
        "dynamics": _describe_dynamics(scen),
        "assignment": scen.assignment.kind,
        "choi": {"real": c.real.tolist(), "imag": c.imag.tolist()},
        "eigenvalues": eigs.tolist(),
        "trace": float(np.trace(c).real),
        "eta": negativity(c, tol),
        "cp": is_cp(c, tol),
        "tolerance": tol,
    }
    d = scen.dynamics
    if d.is_hamiltonian:
        h = d.hamiltonian()
        if h.is_diagonal or d.convention is not None:
            spec = scen.spectrum()
            doc["spectrum"] = list(spec.values)
            doc["f_nu"] = energy.f_nu_extended(spec) if len(spec) > 4 else energy.f_nu(spec)
        ref = analytic_choi(scen)
        if ref is not None and d.frame == "energy":
            doc["analytic_residual"] = float(np.max(np.abs(ref - c)))
    return doc


def _describe_dynamics(scen: Scenario) -> dict:
    d = scen.dynamics
    if not d.is_hamiltonian:
        return {"kind": "gate", "name": d.name}
    out = {"kind": "hamiltonian", "name": d.name, "t": d.t, "frame": d.frame}
    if d.name != "custom":
        out["k"] = d.k
    if d.name == "ising_transverse":
        out["kprime"] = d.kprime
    if d.convention is not None:
        out["convention"] = d.convention
    return out


def format_report(doc: dict) -> str:
    lines = [f"scenario: {doc['source'] or '<inline>'}"]
    dyn = ", ".join(f"{k}={v}" for k, v in doc["dynamics"].items())
    lines.append(f"dynamics: {dyn}")
    lines.append(f"assignment: {doc['assignment']}")
    lines.append("choi matrix (re + i im):")
    for re_row, im_row in zip(doc["choi"]["real"], doc["choi"]["imag"]):
        lines.append("  " + "  ".join(f"{a:+.6f}{b:+.6f}j" for a, b in zip(re_row, im_row)))
    lines.append("eigenvalues: " + ", ".join(f"{v:.6f}" for v in doc["eigenvalues"]))
    lines.append(f"trace: {doc['trace']:.6f}")
    lines.append(f"eta = {doc['eta']:.6f}")
    lines.append(f"CP = {'true' if doc['cp'] else 'false'}")
    if "f_nu" in doc:
        lines.append(f"f_nu = {doc['f_nu']:.12g}")
    if "analytic_residual" in doc:
        lines.append(f"analytic-vs-numeric residual = {doc['analytic_residual']:.3e}")
    return "\n".join(lines)
