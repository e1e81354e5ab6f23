"""JSON scenario files.

A scenario names the composite dynamics and the assignment map::

    {
      "dynamics": {"kind": "hamiltonian", "name": "ising", "k": 0.5, "t": 1.2},
      "assignment": {"kind": "rotated", "rotation": "hadamard"},
      "tolerance": 1e-10
    }

Complex numbers are ``[re, im]`` pairs (bare reals are accepted), matrices
are row-major nested lists. Single-qubit states are a ket label
(``"0"``, ``"1"``, ``"+"``, ``"-"``, ``"+i"``, ``"-i"``) or an object holding
either ``"amplitudes"`` or ``"matrix"``.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
import scipy.linalg

from . import assignment as asg
from . import energy
from .linalg import DEFAULT_TOL, is_density_matrix, is_power_of_two, is_unitary
from .qubits import GATE_NAMES, KETS, pure_density, standard_gate

HAMILTONIANS = ("ising", "ising_transverse", "custom")
ASSIGNMENTS = ("fixed_bath", "copy", "rotated", "extended", "measurement_prep")
FRAMES = ("energy", "computational")


class ConfigError(ValueError):
    def __init__(self, message: str, path: str = "", line: int | None = None):
        self.message = message
        self.path = path
        self.line = line
        where = ""
        if line is not None:
            where += f"line {line}: "
        if path:
            where += f"{path}: "
        super().__init__(where + message)


def _complex(x, path):
    if isinstance(x, bool):
        raise ConfigError("expected a number", path)
    if isinstance(x, (int, float)):
        return complex(x)
    if isinstance(x, list) and len(x) == 2 and all(isinstance(v, (int, float)) for v in x):
        return complex(x[0], x[1])
    raise ConfigError("expected a number or a [re, im] pair", path)


def _real(x, path):
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise ConfigError("expected a real number", path)
    return float(x)


def parse_vector(x, path) -> np.ndarray:
    if not isinstance(x, list) or not x:
        raise ConfigError("expected a list of amplitudes", path)
    return np.array([_complex(v, f"{path}[{i}]") for i, v in enumerate(x)])


def parse_matrix(x, path, dim: int | None = None) -> np.ndarray:
    if not isinstance(x, list) or not x or not all(isinstance(row, list) for row in x):
        raise ConfigError("expected a row-major nested list", path)
    n = len(x)
    if any(len(row) != n for row in x):
        raise ConfigError(f"matrix is not square ({n} rows)", path)
    if dim is not None and n != dim:
        raise ConfigError(f"expected a {dim}x{dim} matrix, got {n}x{n}", path)
    return np.array([[_complex(v, f"{path}[{i}][{j}]") for j, v in enumerate(row)] for i, row in enumerate(x)])


def parse_state(x, path) -> np.ndarray:
    """A single-qubit density matrix from a ket label or ``{"amplitudes": ...}`` / ``{"matrix": ...}``."""
    if isinstance(x, str):
        if x not in KETS:
            raise ConfigError(f"unknown state label {x!r}; use one of {', '.join(KETS)}", path)
        return pure_density(KETS[x])
    if not isinstance(x, dict) or len(x) != 1 or not {"amplitudes", "matrix"} & set(x):
        raise ConfigError("expected a ket label or an object with 'amplitudes' or 'matrix'", path)
    if "amplitudes" in x:
        vec = parse_vector(x["amplitudes"], f"{path}.amplitudes")
        if vec.shape != (2,):
            raise ConfigError("expected 2 amplitudes", f"{path}.amplitudes")
        try:
            return pure_density(vec)
        except ValueError as e:
            raise ConfigError(str(e), f"{path}.amplitudes") from None
    rho = parse_matrix(x["matrix"], f"{path}.matrix", 2)
    if not is_density_matrix(rho):
        raise ConfigError("not a valid density matrix", f"{path}.matrix")
    return rho


def _rotation(x, path) -> np.ndarray:
    if isinstance(x, str):
        if x not in GATE_NAMES:
            raise ConfigError(f"unknown gate {x!r}", path)
        g = standard_gate(x)
    else:
        g = parse_matrix(x, path)
    if g.shape != (2, 2):
        raise ConfigError("rotation must be a single-qubit gate", path)
    return g


def _pick(d: dict, key: str, path: str, allowed=None, required=True, default=None):
    if key not in d:
        if required:
            raise ConfigError(f"missing field {key!r}", path)
        return default
    v = d[key]
    if allowed is not None and v not in allowed:
        raise ConfigError(f"{v!r} is not one of {', '.join(map(str, allowed))}", f"{path}.{key}" if path else key)
    return v


@dataclass
class Dynamics:
    kind: str
    name: str
    k: float = 0.0
    kprime: float = 0.0
    t: float = 0.0
    matrix: np.ndarray | None = None
    convention: str | None = None
    permutation: list | None = None
    frame: str = "energy"

    @property
    def is_hamiltonian(self) -> bool:
        return self.kind == "hamiltonian"

    def hamiltonian(self, k: float | None = None, kprime: float | None = None) -> energy.HamiltonianSpec:
        k = self.k if k is None else k
        kprime = self.kprime if kprime is None else kprime
        if self.name == "ising":
            return energy.ising_hamiltonian(k)
        if self.name == "ising_transverse":
            return energy.ising_transverse_hamiltonian(k, kprime)
        return energy.HamiltonianSpec(self.matrix)


@dataclass
class AssignmentSpec:
    kind: str
    rotation: np.ndarray = field(default_factory=lambda: standard_gate("hadamard"))
    rotation_name: str | None = "hadamard"
    m: int = 2
    extra_state: np.ndarray | None = None
    bath_state: np.ndarray | None = None
    psi: np.ndarray | None = None

    @property
    def n_qubits(self) -> int:
        if self.kind == "extended":
            return self.m
        if self.kind == "fixed_bath":
            return 1 + int(np.log2(self.bath_state.shape[0]))
        if self.kind == "measurement_prep":
            return int(np.log2(self.psi.shape[0]))
        return 2

    def build(self) -> asg.AssignmentMap:
        if self.kind == "fixed_bath":
            return asg.assignment_fixed_bath(self.bath_state)
        if self.kind == "copy":
            return asg.assignment_copy()
        if self.kind == "rotated":
            return asg.assignment_rotated(self.rotation)
        if self.kind == "extended":
            return asg.assignment_extended(self.rotation, self.m, self.extra_state)
        return asg.assignment_measurement_prep(self.psi)

    @property
    def has_analytic_form(self) -> bool:
        """Whether a closed-form Choi matrix exists under diagonal evolution."""
        if self.kind == "copy":
            return True
        if self.kind in ("rotated", "extended") and self.rotation_name == "hadamard":
            ground = pure_density(KETS["0"])
            return self.kind == "rotated" or self.m == 2 or np.allclose(self.extra_state, ground)
        return False


@dataclass
class Scenario:
    dynamics: Dynamics
    assignment: AssignmentSpec
    tolerance: float = DEFAULT_TOL
    source: str = ""

    def spectrum(self, k: float | None = None, kprime: float | None = None) -> energy.LabeledSpectrum:
        h = self.dynamics.hamiltonian(k, kprime)
        m = self.assignment.n_qubits
        if h.matrix.shape[0] == 4 and m > 2:
            h = energy.pad_hamiltonian(h, m)
        return energy.spectrum_for(h, self.dynamics.convention, self.dynamics.permutation)

    def unitary(self, k: float | None = None, t: float | None = None) -> np.ndarray:
        d = self.dynamics
        if not d.is_hamiltonian:
            return d.matrix if d.name == "custom" else standard_gate(d.name)
        t = d.t if t is None else t
        if d.frame == "computational":
            h = d.hamiltonian(k)
            m = self.assignment.n_qubits
            if h.matrix.shape[0] == 4 and m > 2:
                h = energy.pad_hamiltonian(h, m)
            return scipy.linalg.expm(-1j * h.matrix * t)
        return energy.energy_basis_unitary(self.spectrum(k), t)


def _parse_dynamics(d) -> Dynamics:
    if not isinstance(d, dict):
        raise ConfigError("expected an object", "dynamics")
    kind = _pick(d, "kind", "dynamics", ("hamiltonian", "gate"))
    if kind == "gate":
        name = _pick(d, "name", "dynamics", GATE_NAMES + ("identity", "custom"))
        if name == "identity":
            name = "identity2"
        matrix = None
        if name == "custom":
            matrix = parse_matrix(_pick(d, "matrix", "dynamics"), "dynamics.matrix")
            if not is_power_of_two(matrix.shape[0]) or matrix.shape[0] < 4:
                raise ConfigError("custom gate dimension must be a power of 2 and at least 4", "dynamics.matrix")
        elif standard_gate(name).shape[0] < 4:
            raise ConfigError(f"{name!r} is a single-qubit gate; composite dynamics need 2 or more qubits", "dynamics.name")
        for key in ("k", "kprime", "t"):
            if key in d:
                raise ConfigError("gate dynamics take no Hamiltonian parameters", f"dynamics.{key}")
        return Dynamics(kind, name, matrix=matrix)

    name = _pick(d, "name", "dynamics", HAMILTONIANS)
    dyn = Dynamics(
        kind,
        name,
        k=_real(d.get("k", 0.0), "dynamics.k"),
        kprime=_real(d.get("kprime", 0.0), "dynamics.kprime"),
        t=_real(d.get("t", 0.0), "dynamics.t"),
        convention=_pick(d, "convention", "dynamics", energy.CONVENTIONS, required=False),
        frame=_pick(d, "frame", "dynamics", FRAMES, required=False, default="energy"),
    )
    if name == "custom":
        dyn.matrix = parse_matrix(_pick(d, "matrix", "dynamics"), "dynamics.matrix")
        if not is_power_of_two(dyn.matrix.shape[0]) or dyn.matrix.shape[0] < 4:
            raise ConfigError("Hamiltonian dimension must be a power of 2 and at least 4", "dynamics.matrix")
        try:
            energy.HamiltonianSpec(dyn.matrix)
        except ValueError as e:
            raise ConfigError(str(e), "dynamics.matrix") from None
    if "permutation" in d:
        perm = d["permutation"]
        if not isinstance(perm, list) or not all(isinstance(p, int) and not isinstance(p, bool) for p in perm):
            raise ConfigError("expected a list of integer indices", "dynamics.permutation")
        dyn.permutation = perm
        if dyn.convention is None:
            dyn.convention = "explicit-permutation"
    if dyn.convention == "explicit-permutation" and dyn.permutation is None:
        raise ConfigError("explicit-permutation labeling needs a 'permutation' list", "dynamics.convention")
    if dyn.frame == "energy" and dyn.convention is None and dyn.hamiltonian().is_diagonal is False:
        raise ConfigError(
            "non-diagonal Hamiltonian in the energy frame needs a labeling 'convention'", "dynamics.convention"
        )
    return dyn


def _parse_assignment(d) -> AssignmentSpec:
    if not isinstance(d, dict):
        raise ConfigError("expected an object", "assignment")
    kind = _pick(d, "kind", "assignment", ASSIGNMENTS)
    spec = AssignmentSpec(kind)
    if "rotation" in d:
        spec.rotation = _rotation(d["rotation"], "assignment.rotation")
        spec.rotation_name = d["rotation"] if isinstance(d["rotation"], str) else None
    if kind == "extended":
        m = d.get("m", 3)
        if isinstance(m, bool) or not isinstance(m, int) or m < 2 or m > 6:
            raise ConfigError("m must be an integer between 2 and 6", "assignment.m")
        spec.m = m
        spec.extra_state = parse_state(d.get("extra_state", "0"), "assignment.extra_state")
    if kind == "fixed_bath":
        spec.bath_state = parse_state(d.get("bath_state", "0"), "assignment.bath_state")
    if kind == "measurement_prep":
        psi = parse_vector(d["psi"], "assignment.psi") if "psi" in d else 0.5 * np.array([1, 1, 1, -1], dtype=complex)
        if not is_power_of_two(psi.shape[0]) or psi.shape[0] < 4:
            raise ConfigError("psi needs 2**n amplitudes with n >= 2", "assignment.psi")
        if abs(np.vdot(psi, psi).real - 1) > DEFAULT_TOL:
            raise ConfigError("psi is not normalized", "assignment.psi")
        spec.psi = psi
    return spec


def _locate(text: str, path: str) -> int | None:
    """Best-effort line number of the last key in a dotted ``path``."""
    pos = 0
    line = None
    for key in re.sub(r"\[\d+\]", "", path).split("."):
        if not key:
            continue
        hit = text.find(f'"{key}"', pos)
        if hit < 0:
            break
        pos = hit
        line = text.count("\n", 0, hit) + 1
    return line


def parse_scenario(text: str, source: str = "<string>") -> Scenario:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError(f"invalid JSON: {e.msg} (column {e.colno})", line=e.lineno) from None
    try:
        if not isinstance(raw, dict):
            raise ConfigError("top level must be an object")
        unknown = set(raw) - {"dynamics", "assignment", "tolerance", "name", "description"}
        if unknown:
            raise ConfigError(f"unknown field {sorted(unknown)[0]!r}", sorted(unknown)[0])
        dyn = _parse_dynamics(raw.get("dynamics"))
        amap = _parse_assignment(raw.get("assignment"))
        tol = _real(raw.get("tolerance", DEFAULT_TOL), "tolerance")
        if tol <= 0:
            raise ConfigError("tolerance must be positive", "tolerance")
        scen = Scenario(dyn, amap, tol, source)
        _check_dimensions(scen)
    except ConfigError as e:
        if e.line is None and e.path:
            e = ConfigError(e.message, e.path, _locate(text, e.path))
        raise e from None
    return scen


def _check_dimensions(scen: Scenario) -> None:
    d = scen.dynamics
    n = scen.assignment.n_qubits
    if d.is_hamiltonian:
        dim = d.hamiltonian().matrix.shape[0]
        if dim != 2**n and not (dim == 4 and n > 2):
            raise ConfigError(f"Hamiltonian acts on {dim} levels, assignment needs {2**n}", "dynamics")
    else:
        dim = scen.unitary().shape[0]
        if dim != 2**n:
            raise ConfigError(f"gate acts on {dim} levels, assignment needs {2**n}", "dynamics")
        if d.name == "custom":
            if not is_unitary(d.matrix, 1e-12):
                raise ConfigError("custom gate is not unitary", "dynamics.matrix")


def load_scenario(path) -> Scenario:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigError(f"cannot read scenario file: {e.strerror}") from None
    return parse_scenario(text, str(path))
