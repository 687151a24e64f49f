"""Batch front end: parse scenario files, run verification pipelines, report.

Scenario files are JSON with symbols in a structured-text literal form::

    {"rows": 2, "cols": 1,
     "coeffs": [{"k": 0, "re": [1.0, 0.0], "im": [0.0, 0.0]}]}

re/im are row-major per coefficient; im may be omitted.  A scenario picks
an invariant-subspace description, a list of checks, and a truncation
sweep; reports are deterministic (fixed sampling grids and pivoting), so
two runs of one scenario produce byte-identical structured output.

Exit codes: 0 all checks pass, 1 some check failed or errored, 2 input
error (unreadable file, schema violation, shape mismatch).
"""

import argparse
import json
import sys
from dataclasses import dataclass, field

import numpy as np

from .operators import (
    build_kernel_operator,
    build_range_operator,
    intertwining_residual,
    nehari_bounds,
    svd_analysis,
)
from .subspaces import (
    KERNEL_REP,
    RANGE_REP,
    TYPE_I,
    TYPE_II,
    InvariantSubspaceSpec,
    SpecValidationError,
    SubspaceBasis,
    VerificationReport,
    invariance_check,
    kernel_representation_check,
    kernel_subspace,
    kernel_symbol_from_u,
    mixed_invariant_subspace,
    range_representation_check,
    range_symbol_from_u,
    range_window_basis,
    split_square_blocks,
    splitting_check_scalar,
    twocond_check,
)
from .symbols import (
    LaurentSymbol,
    block_symbol,
    constant_symbol,
    identity_symbol,
    make_cyclic_symbol,
    make_symbol,
    monomial_symbol,
    zero_symbol,
)

CHECK_IDS = ("twocond", "invariance", "kernel_rep", "range_rep", "splitting",
             "intertwining", "nehari", "partial_isometry")
DEFAULT_N_LIST = (8, 16, 32)
DEFAULT_TOL = 1e-8


class ScenarioError(ValueError):
    """Input-level problem: bad file, schema violation, shape mismatch."""


def symbol_from_literal(payload, field_name: str = "symbol") -> LaurentSymbol:
    """Parse the structured-text symbol literal."""
    try:
        rows, cols = int(payload["rows"]), int(payload["cols"])
        entries = payload["coeffs"]
    except (KeyError, TypeError) as exc:
        raise ScenarioError(f"field {field_name}: expected a symbol literal "
                            f"with rows/cols/coeffs ({exc})") from exc
    coeffs = {}
    for item in entries:
        try:
            k = int(item["k"])
            re = np.asarray(item["re"], dtype=float)
            im = np.asarray(item.get("im", np.zeros_like(re)), dtype=float)
        except (KeyError, TypeError, ValueError) as exc:
            raise ScenarioError(f"field {field_name}: bad coefficient entry "
                                f"({exc})") from exc
        if re.size != rows * cols or im.size != rows * cols:
            raise ScenarioError(
                f"field {field_name}: coefficient k={k} carries {re.size} "
                f"entries, expected rows*cols = {rows * cols}")
        coeffs[k] = (re + 1j * im).reshape(rows, cols)
    if not coeffs:
        return zero_symbol(rows, cols)
    try:
        return make_symbol(rows, cols, coeffs)
    except ValueError as exc:
        raise ScenarioError(f"field {field_name}: {exc}") from exc


def symbol_to_literal(sym: LaurentSymbol) -> dict:
    out = {"rows": sym.rows, "cols": sym.cols, "coeffs": []}
    for k in range(sym.kmin, sym.kmax + 1):
        blk = sym.coeff(k)
        if not np.any(blk):
            continue
        out["coeffs"].append({
            "k": k,
            "re": [float(v) for v in blk.real.ravel()],
            "im": [float(v) for v in blk.imag.ravel()],
        })
    return out


@dataclass(frozen=True)
class Scenario:
    name: str
    spec: InvariantSubspaceSpec
    checks: tuple[str, ...]
    n_list: tuple[int, ...]
    tol: float = DEFAULT_TOL
    samples: int | None = None
    window: int | None = None
    expect: dict = field(default_factory=dict)
    nehari_candidates: tuple = ()


@dataclass(frozen=True)
class Record:
    scenario: str
    check: str
    n: int
    residual: float
    passed: bool
    window: int | None = None
    detail: str = ""


@dataclass
class Report:
    records: list[Record]

    @property
    def exit_status(self) -> int:
        return 0 if all(r.passed for r in self.records) else 1

    def structured(self) -> str:
        lines = []
        for r in self.records:
            lines.append(json.dumps({
                "scenario": r.scenario,
                "check": r.check,
                "n": r.n,
                "residual": _sig12(r.residual),
                "pass": r.passed,
            }, sort_keys=True))
        return "\n".join(lines) + "\n"

    def text(self) -> str:
        lines = []
        current = None
        for r in self.records:
            if r.scenario != current:
                current = r.scenario
                lines.append(f"scenario {current}")
            win = f" window={r.window}" if r.window is not None else ""
            tail = f"  [{r.detail}]" if r.detail else ""
            lines.append(
                f"  {r.check:<18} n={r.n:<4}{win} residual={_fmt(r.residual)} "
                f"{'PASS' if r.passed else 'FAIL'}{tail}")
        verdict = "PASS" if self.exit_status == 0 else "FAIL"
        lines.append(f"overall {verdict}")
        return "\n".join(lines) + "\n"


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def _sig12(x: float) -> float:
    return float(f"{x:.12g}")


def _spec_from_payload(payload: dict) -> InvariantSubspaceSpec:
    if "variant" not in payload:
        raise ScenarioError("field spec.variant is required")
    kwargs = {}
    for key, attr in (("U", "u"), ("Omega", "omega"), ("Psi", "psi"),
                      ("Phi", "phi"), ("Theta", "theta")):
        if key in payload and payload[key] is not None:
            kwargs[attr] = symbol_from_literal(payload[key], f"spec.{key}")
    try:
        dim_e = int(payload["dimE"])
        dim_f = int(payload["dimF"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ScenarioError(f"fields spec.dimE/spec.dimF are required ({exc})") from exc
    try:
        spec = InvariantSubspaceSpec(payload["variant"], dim_e, dim_f, **kwargs)
    except SpecValidationError as exc:
        raise ScenarioError(str(exc)) from exc
    _validate_membership(spec)
    return spec


def _validate_membership(spec: InvariantSubspaceSpec) -> None:
    """Reject representation symbols whose analytic blocks are not analytic."""
    if spec.variant == RANGE_REP:
        a, b, _, _ = split_square_blocks(spec.phi, spec.dim_e, spec.dim_f)
        if not (a.is_analytic() and b.is_analytic()):
            raise ScenarioError(
                "field spec.Phi: the top blocks must be bounded analytic "
                "(block A or B carries negative coefficients)")
    if spec.variant == KERNEL_REP:
        _, _, a, b = split_square_blocks(spec.psi, spec.dim_e, spec.dim_f)
        if not (a.is_analytic() and b.is_analytic()):
            raise ScenarioError(
                "field spec.Psi: the bottom blocks must be bounded analytic "
                "(block A or B carries negative coefficients)")


def _scenario_from_payload(payload: dict, fallback_name: str) -> Scenario:
    if not isinstance(payload, dict):
        raise ScenarioError("scenario file must hold a JSON object")
    name = payload.get("name", fallback_name)
    if "spec" not in payload:
        raise ScenarioError("field spec is required")
    spec = _spec_from_payload(payload["spec"])
    checks = tuple(payload.get("checks", ("twocond", "invariance")))
    for c in checks:
        if c not in CHECK_IDS:
            raise ScenarioError(f"unknown check id {c!r}; valid: {CHECK_IDS}")
    n_list = tuple(int(n) for n in payload.get("n_list", DEFAULT_N_LIST))
    if not n_list or list(n_list) != sorted(n_list):
        raise ScenarioError("field n_list must be nonempty and ascending")
    tol = float(payload.get("tol", DEFAULT_TOL))
    samples = payload.get("samples")
    window = payload.get("window")
    expect = payload.get("expect", {})
    candidates = []
    for i, cand in enumerate(payload.get("nehari_candidates", [])):
        l1 = symbol_from_literal(cand["L1"], f"nehari_candidates[{i}].L1") \
            if "L1" in cand else None
        l2 = symbol_from_literal(cand["L2"], f"nehari_candidates[{i}].L2") \
            if "L2" in cand else None
        candidates.append((l1, l2))
    scenario = Scenario(name, spec, checks, n_list, tol,
                        None if samples is None else int(samples),
                        None if window is None else int(window),
                        dict(expect), tuple(candidates))
    _validate_check_requirements(scenario)
    return scenario


def _derived_psi(spec: InvariantSubspaceSpec) -> LaurentSymbol | None:
    if spec.psi is not None:
        return spec.psi
    if spec.variant == TYPE_I:
        return kernel_symbol_from_u(spec.u, spec.dim_e, spec.dim_f)
    return None


def _derived_phi(spec: InvariantSubspaceSpec) -> LaurentSymbol | None:
    if spec.phi is not None:
        return spec.phi
    if spec.variant == TYPE_I:
        return range_symbol_from_u(spec.u, spec.dim_e, spec.dim_f)
    return None


def _validate_check_requirements(sc: Scenario) -> None:
    spec = sc.spec
    needs_phi = {"range_rep", "splitting", "nehari"}
    needs_either = {"intertwining", "partial_isometry"}
    for check in sc.checks:
        if check in ("kernel_rep", "range_rep") and spec.variant not in (TYPE_I, TYPE_II):
            raise ScenarioError(
                f"check {check} needs bilateral data (variant type_i or type_ii) "
                f"as an independent comparison target; a {spec.variant} spec "
                f"would compare the representation against itself")
        if check == "kernel_rep" and _derived_psi(spec) is None:
            raise ScenarioError(
                f"check {check} requires field Psi (or a type_i U to derive it)")
        if check in needs_phi and _derived_phi(spec) is None:
            raise ScenarioError(
                f"check {check} requires field Phi (or a type_i U to derive it)")
        if check in needs_either and _derived_phi(spec) is None \
                and _derived_psi(spec) is None:
            raise ScenarioError(f"check {check} requires field Phi or Psi")
        if check == "splitting":
            phi = _derived_phi(spec)
            if phi.shape != (2, 2) or spec.dim_e != 1 or spec.dim_f != 1:
                raise ScenarioError(
                    "check splitting needs scalar fibers (dimE = dimF = 1)")


def parse_scenario(path: str) -> Scenario:
    """Load and validate one scenario file."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            payload = json.load(fh)
    except OSError as exc:
        raise ScenarioError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"{path}: invalid JSON at line {exc.lineno}, "
                            f"column {exc.colno}: {exc.msg}") from exc
    name = path.rsplit("/", 1)[-1].rsplit(".", 1)[0]
    try:
        return _scenario_from_payload(payload, name)
    except ScenarioError as exc:
        raise ScenarioError(f"{path}: {exc}") from exc


def _target_subspace(sc: Scenario, n: int) -> SubspaceBasis:
    spec = sc.spec
    if spec.variant in (TYPE_I, TYPE_II):
        return mixed_invariant_subspace(spec, n, sc.window)
    rep_symbol = spec.psi if spec.variant == KERNEL_REP else spec.phi
    w = sc.window if sc.window is not None else n - rep_symbol.bandwidth
    if spec.variant == KERNEL_REP:
        return kernel_subspace(spec.psi, spec.dim_e, spec.dim_f, n, w)
    return range_window_basis(spec.phi, spec.dim_e, spec.dim_f, n, w)


def _records_from_report(sc: Scenario, check: str, n: int,
                         rep: VerificationReport) -> list[Record]:
    gating = [c for c in rep.checks if c.gating]
    residual = max((c.residual for c in gating), default=0.0)
    window = next((c.window for c in rep.checks if c.window is not None), None)
    detail = "; ".join(
        f"{c.name}={'ok' if c.passed else 'FAIL'}" for c in rep.checks)
    return [Record(sc.name, check, n, residual, rep.overall, window, detail)]


def _run_check(sc: Scenario, check: str, n: int) -> list[Record]:
    spec = sc.spec
    tol = sc.tol
    if check == "twocond":
        rep = twocond_check(spec, sc.samples, tol)
        return _records_from_report(sc, check, n, rep)
    if check == "invariance":
        basis = _target_subspace(sc, n)
        resid = invariance_check(basis)
        return [Record(sc.name, check, n, resid, resid <= tol, basis.window)]
    if check == "kernel_rep":
        basis = _target_subspace(sc, n)
        rep = kernel_representation_check(basis, _derived_psi(spec),
                                          spec.theta, n, tol)
        return _records_from_report(sc, check, n, rep)
    if check == "range_rep":
        basis = _target_subspace(sc, n)
        theta = spec.theta if spec.variant == RANGE_REP else None
        rep = range_representation_check(basis, _derived_phi(spec), theta, n, tol)
        return _records_from_report(sc, check, n, rep)
    if check == "splitting":
        phi = _derived_phi(spec)
        tl, tr, bl, br = split_square_blocks(phi, 1, 1)
        result = splitting_check_scalar(tl, tr, bl.conj_arg(), br.conj_arg(), tol)
        expected = bool(sc.expect.get("splitting", False))
        ok = result.splitting == expected
        return [Record(sc.name, check, n, 0.0 if ok else 1.0, ok,
                       detail=f"splitting={result.splitting} expected={expected}")]
    if check == "intertwining":
        phi = _derived_phi(spec)
        psi = _derived_psi(spec)
        worst = 0.0
        parts = []
        if phi is not None:
            a, b, c, d = split_square_blocks(phi, spec.dim_e, spec.dim_f)
            v = build_range_operator(a, b, c, d, n)
            r = intertwining_residual(v, "range", n)
            worst = max(worst, r)
            parts.append(f"range={_fmt(r)}")
        if psi is not None:
            c, d, a, b = split_square_blocks(psi, spec.dim_e, spec.dim_f)
            w = build_kernel_operator(c, d, a, b, n)
            r = intertwining_residual(w, "kernel", n)
            worst = max(worst, r)
            parts.append(f"kernel={_fmt(r)}")
        return [Record(sc.name, check, n, worst, worst <= max(tol, 1e-10),
                       detail="; ".join(parts))]
    if check == "nehari":
        phi = _derived_phi(spec)
        a, b, c, d = split_square_blocks(phi, spec.dim_e, spec.dim_f)
        bracket = nehari_bounds(a, b, c, d, list(sc.n_list),
                                list(sc.nehari_candidates) or None)
        lows = [lo for _, lo in bracket.lower_bounds]
        monotone = all(x <= y + 1e-12 for x, y in zip(lows, lows[1:]))
        violation = 0.0
        if bracket.upper_bounds:
            violation = max(0.0, max(lows) - min(bracket.upper_bounds))
        ok = monotone and violation <= tol
        detail = (f"lower={[_fmt(x) for x in lows]} "
                  f"upper={[_fmt(x) for x in bracket.upper_bounds]}")
        return [Record(sc.name, check, n, violation, ok, detail=detail)]
    if check == "partial_isometry":
        expected = bool(sc.expect.get("partial_isometry", True))
        flags = []
        parts = []
        phi = _derived_phi(spec)
        psi = _derived_psi(spec)
        if phi is not None:
            a, b, c, d = split_square_blocks(phi, spec.dim_e, spec.dim_f)
            rep = svd_analysis(build_range_operator(a, b, c, d, n), tol)
            flags.append(rep.is_partial_isometry)
            parts.append(f"range_op={rep.is_partial_isometry}")
        if psi is not None:
            c, d, a, b = split_square_blocks(psi, spec.dim_e, spec.dim_f)
            rep = svd_analysis(build_kernel_operator(c, d, a, b, n), tol)
            flags.append(rep.is_partial_isometry)
            parts.append(f"kernel_op={rep.is_partial_isometry}")
        observed = all(flags)
        ok = observed == expected
        return [Record(sc.name, check, n, 0.0 if ok else 1.0, ok,
                       detail="; ".join(parts) + f" expected={expected}")]
    raise ScenarioError(f"unknown check id {check!r}")


def run(scenario: Scenario) -> Report:
    """Execute every requested check at every truncation in the sweep."""
    records: list[Record] = []
    once_per_scenario = {"twocond", "splitting", "nehari"}
    for check in scenario.checks:
        n_values = (scenario.n_list[-1],) if check in once_per_scenario \
            else scenario.n_list
        for n in n_values:
            try:
                records.extend(_run_check(scenario, check, n))
            except (ValueError, KeyError) as exc:
                records.append(Record(scenario.name, check, n, float("inf"),
                                      False, detail=f"error: {exc}"))
    return Report(records)


def run_batch(scenarios: list[Scenario]) -> Report:
    records: list[Record] = []
    for sc in sorted(scenarios, key=lambda s: s.name):
        records.extend(run(sc).records)
    return Report(records)


# --- built-in demo scenarios ------------------------------------------------

RS2 = 1 / np.sqrt(2)


def timotin_u() -> LaurentSymbol:
    """Degree-one 2x2 unitary column symbol with non-proportional top entries."""
    return make_symbol(2, 2, {0: [[0, RS2], [0, -RS2]],
                              1: [[RS2, 0], [RS2, 0]]})


def replicated_u(dim_e: int, dim_f: int) -> LaurentSymbol:
    """Column symbol of the subspace {(f, ..., f, f(0), ..., f(0))}.

    Constant columns span the sum-zero vectors among (a, ..., a, b_1,
    ..., b_dim_f) with the first block repeated; one degree-one column
    carries the all-ones direction.  For dim_e >= 2 the doubly invariant
    complement (differences of the first-block coordinates) is carried
    separately by replicated_omega.
    """
    dpf = dim_e + dim_f
    ones = np.ones(dpf) / np.sqrt(dpf)
    # orthonormal basis of {(a, ..., a, b) : dim_e * a + sum(b) = 0}
    cols = []
    for j in range(dim_f):
        v = np.zeros(dpf)
        v[:dim_e] = 1.0 / dim_e
        v[dim_e + j] = -1.0
        cols.append(v)
    q, _ = np.linalg.qr(np.column_stack(cols))
    const = q[:, :dim_f]
    u0 = np.hstack([const, np.zeros((dpf, 1))])
    u1 = np.hstack([np.zeros((dpf, dim_f)), ones[:, None]])
    return make_symbol(dpf, dim_f + 1, {0: u0, 1: u1})


def replicated_omega(dim_e: int, dim_f: int) -> LaurentSymbol | None:
    """Doubly invariant columns of the replicated-evaluation subspace."""
    if dim_e < 2:
        return None
    cols = []
    for j in range(1, dim_e):
        v = np.zeros(dim_e)
        v[0] = 1.0
        v[j] = -1.0
        cols.append(v)
    q, _ = np.linalg.qr(np.column_stack(cols))
    return constant_symbol(q[:, :dim_e - 1])


def replicated_spec(dim_e: int, dim_f: int) -> InvariantSubspaceSpec:
    omega = replicated_omega(dim_e, dim_f)
    variant = TYPE_II if omega is not None else TYPE_I
    return InvariantSubspaceSpec(variant, dim_e, dim_f,
                                 u=replicated_u(dim_e, dim_f), omega=omega)


def replicated_range_symbol(dim_e: int, dim_f: int) -> LaurentSymbol:
    dpf = dim_e + dim_f
    r = 1 / np.sqrt(dpf)
    top = block_symbol([[constant_symbol(r * np.eye(dim_e)),
                         zero_symbol(dim_e, dim_f)]])
    bottom = block_symbol([[monomial_symbol(-1, r * np.ones((dim_f, dim_e))),
                            zero_symbol(dim_f, dim_f)]])
    return block_symbol([[top], [bottom]])


def demo_subspace_specs() -> dict[str, InvariantSubspaceSpec]:
    """Library of admissible invariant-subspace descriptions used by demos."""
    specs = {
        "timotin": InvariantSubspaceSpec(TYPE_I, 1, 1, u=timotin_u()),
        "replicated-1-2": replicated_spec(1, 2),
        "replicated-2-3": replicated_spec(2, 3),
        "inner-splitting": InvariantSubspaceSpec(
            TYPE_I, 1, 1, u=make_symbol(2, 1, {-1: [[1], [0]]})),
        "constant-splitting": InvariantSubspaceSpec(
            TYPE_I, 1, 1, u=make_symbol(2, 1, {0: [[1], [0]]})),
        "scalar-splitting": InvariantSubspaceSpec(
            TYPE_I, 1, 1, u=make_symbol(2, 2, {0: [[0, 0], [0, 1]],
                                               1: [[1, 0], [0, 0]]})),
        "doubly-invariant-corner": InvariantSubspaceSpec(
            TYPE_II, 1, 1, omega=identity_symbol(1)),
        "timotin-embedded": InvariantSubspaceSpec(
            TYPE_II, 2, 1,
            u=make_symbol(3, 2, {0: [[0, 0], [0, RS2], [0, -RS2]],
                                 1: [[0, 0], [RS2, 0], [RS2, 0]]}),
            omega=constant_symbol([[1.0], [0.0]])),
    }
    return specs


def _demo_timotin() -> list[Scenario]:
    spec = demo_subspace_specs()["timotin"]
    return [Scenario(
        "timotin-nonsplitting", spec,
        ("twocond", "invariance", "kernel_rep", "range_rep", "splitting",
         "partial_isometry", "intertwining"),
        (8, 16), expect={"splitting": False, "partial_isometry": True})]


def _demo_splitting_scalar() -> list[Scenario]:
    spec = demo_subspace_specs()["scalar-splitting"]
    return [Scenario(
        "splitting-scalar", spec,
        ("twocond", "invariance", "splitting", "partial_isometry"),
        (8, 16), expect={"splitting": True, "partial_isometry": True})]


def _demo_f_f0() -> list[Scenario]:
    spec12 = demo_subspace_specs()["replicated-1-2"]
    spec12 = InvariantSubspaceSpec(
        spec12.variant, 1, 2, u=spec12.u, phi=replicated_range_symbol(1, 2))
    spec23 = demo_subspace_specs()["replicated-2-3"]
    # the explicit range symbol is isometry-valued but its mixed operator
    # is not a partial isometry (the subspace is still exactly its range),
    # so no partial_isometry check here
    return [
        Scenario("f-f0-m1n2", spec12,
                 ("twocond", "invariance", "range_rep"), (8, 16)),
        Scenario("f-f0-m2n3", spec23, ("twocond", "invariance"), (8, 16)),
    ]


def _demo_cyclic_kernel() -> list[Scenario]:
    poles = [1 / 2, 1 / 3, 1 / 4, 1 / 5]
    weights = [4.0 ** -j for j in range(1, 5)]
    n = 16
    a = make_cyclic_symbol(poles, weights, 2 * n + 1)
    theta_f = make_symbol(1, 1, {2: [1]})
    psi = block_symbol([[a, zero_symbol(1, 1)], [zero_symbol(1, 1), theta_f]])
    spec = InvariantSubspaceSpec(
        TYPE_II, 1, 1,
        u=block_symbol([[zero_symbol(1, 1)], [theta_f]]),
        omega=identity_symbol(1), psi=psi)
    # comparison window stays below the pole count: beyond it the
    # truncated flipped-coefficient matrix of a acquires a polynomial
    # kernel (a degree-4 polynomial vanishing at all four poles)
    return [Scenario("cyclic-kernel", spec,
                     ("twocond", "invariance", "kernel_rep"), (n,),
                     window=len(poles) - 1)]


def _demo_type2_corner() -> list[Scenario]:
    spec = demo_subspace_specs()["doubly-invariant-corner"]
    spec = InvariantSubspaceSpec(TYPE_II, 1, 1, omega=spec.omega,
                                 psi=zero_symbol(2, 2), theta=zero_symbol(1, 1))
    return [Scenario("type2-corner", spec,
                     ("twocond", "invariance", "kernel_rep"), (8, 16))]


DEMOS = {
    "timotin-nonsplitting": _demo_timotin,
    "splitting-scalar": _demo_splitting_scalar,
    "f-f0-example": _demo_f_f0,
    "cyclic-kernel": _demo_cyclic_kernel,
    "type2-corner": _demo_type2_corner,
}


def demo(name: str) -> Report:
    """Run one built-in demo scenario set."""
    if name not in DEMOS:
        raise ScenarioError(
            f"unknown demo {name!r}; available: {', '.join(sorted(DEMOS))}")
    return run_batch(DEMOS[name]())


# --- command line -----------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="shiftlab",
        description="Verify invariant-subspace scenarios with truncated "
                    "Toeplitz/Hankel operator matrices.")
    sub = parser.add_subparsers(dest="command", required=True)
    p_verify = sub.add_parser("verify", help="run scenario files")
    p_verify.add_argument("paths", nargs="+", metavar="scenario-file")
    p_verify.add_argument("--n", default=None,
                          help="comma-separated truncation sweep override")
    p_verify.add_argument("--tol", type=float, default=None,
                          help="tolerance override")
    p_verify.add_argument("--format", choices=("text", "structured"),
                          default="text")
    p_demo = sub.add_parser("demo", help="run a built-in demo")
    p_demo.add_argument("name")
    p_demo.add_argument("--format", choices=("text", "structured"),
                        default="text")
    sub.add_parser("list-demos", help="list built-in demo names")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "list-demos":
            for name in sorted(DEMOS):
                print(name)
            return 0
        if args.command == "demo":
            report = demo(args.name)
        else:
            scenarios = []
            for path in args.paths:
                sc = parse_scenario(path)
                if args.n is not None:
                    n_list = tuple(int(v) for v in args.n.split(","))
                    sc = Scenario(sc.name, sc.spec, sc.checks, n_list, sc.tol,
                                  sc.samples, sc.window, sc.expect,
                                  sc.nehari_candidates)
                if args.tol is not None:
                    sc = Scenario(sc.name, sc.spec, sc.checks, sc.n_list,
                                  args.tol, sc.samples, sc.window, sc.expect,
                                  sc.nehari_candidates)
                scenarios.append(sc)
            report = run_batch(scenarios)
    except ScenarioError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(report.structured() if args.format == "structured"
                     else report.text())
    return report.exit_status


if __name__ == "__main__":
    sys.exit(main())
