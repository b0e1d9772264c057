"""End-to-end computation of the KH_{-1} bound for one or many singularities."""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass, field

from .linalg import IntMatrix, coxeter_phi, determinant, m_matrix
from .path_algebra import DEFAULT_PATH_BUDGET, cartan_matrix_normal_form, cartan_matrix_oracle
from .quiver import CyclicParams, QuiverWithRelations, build_quiver, validate_params
from .smith import AbelianGroup, SnfResult, group_from_diagonal, smith_normal_form

ENGINES = ("normalform", "oracle", "both")
ORACLE_MAX_M = 12
PATH_BUDGET_ENV = "KHBOUND_PATH_BUDGET"


class EngineDisagreement(RuntimeError):
    pass


class SweepFailure(RuntimeError):
    pass


def default_path_budget() -> int:
    raw = os.environ.get(PATH_BUDGET_ENV)
    if raw is None:
        return DEFAULT_PATH_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{PATH_BUDGET_ENV}={raw!r} is not an integer") from None
    if value < 1:
        raise ValueError(f"{PATH_BUDGET_ENV} must be positive")
    return value


@dataclass(frozen=True)
class Config:
    # None: both engines up to ORACLE_MAX_M, the normal-form engine alone above
    engine: str | None = None
    path_budget: int = field(default_factory=default_path_budget)

    def __post_init__(self):
        if self.engine is not None and self.engine not in ENGINES:
            raise ValueError(f"engine must be one of {ENGINES}, got {self.engine!r}")


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class Report:
    params: CyclicParams
    stages: dict
    cartan: IntMatrix
    engine: str
    engine_agreement: bool | None
    m_matrix: IntMatrix
    snf: SnfResult
    bound: AbelianGroup
    checks: tuple[Check, ...]
    warnings: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failed_checks(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def statement(self) -> str:
        return f"KH_{{-1}}(X) is a quotient of {self.bound} (upper bound, not an equality)"

    def to_dict(self) -> dict:
        return {
            "params": {"m": self.params.m, "a": list(self.params.a), "d": self.params.d},
            "stages": self.stages,
            "cartan": {
                "engine": self.engine,
                "engine_agreement": self.engine_agreement,
                "warnings": list(self.warnings),
                "matrix": _matrix_strings(self.cartan),
            },
            "m_matrix": _matrix_strings(self.m_matrix),
            "snf": {
                "diagonal": [str(x) for x in self.snf.diagonal],
                "u": _matrix_strings(self.snf.u),
                "v": _matrix_strings(self.snf.v),
            },
            "bound": {
                "free_rank": self.bound.free_rank,
                "invariant_factors": [str(x) for x in self.bound.invariant_factors],
                "group": str(self.bound),
                "statement": self.statement(),
            },
            "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in self.checks],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, ensure_ascii=False)

    def to_text(self) -> str:
        p = self.params
        lines = [f"cyclic quotient singularity {p.label()}  (m={p.m}, d={p.d})"]
        for stage, info in self.stages.items():
            rel = info["relations"]
            lines.append(
                f"  {stage}: {info['vertices']} vertices, {info['arrows']} arrows, relations "
                f"{rel['commutativity']} commutativity / {rel['zero_path']} zero / {rel['vacuous']} vacuous"
            )
        agreement = {True: "agree", False: "DISAGREE", None: "single engine"}[self.engine_agreement]
        lines.append(f"Cartan matrix C (engine: {self.engine}, {agreement}):")
        lines.append(_indent(str(self.cartan)))
        lines.append("M = (-1)^(d-1) C (C^-1)^T - I:")
        lines.append(_indent(str(self.m_matrix)))
        lines.append("Smith diagonal: " + " ".join(str(x) for x in self.snf.diagonal))
        lines.append(f"upper bound (quotient): {self.statement()}")
        lines.append("checks:")
        for c in self.checks:
            tag = "PASS" if c.passed else "FAIL"
            lines.append(f"  [{tag}] {c.name}" + (f": {c.detail}" if c.detail else ""))
        for w in self.warnings:
            lines.append(f"warning: {w}")
        return "\n".join(lines) + "\n"


def _matrix_strings(a: IntMatrix) -> list[list[str]]:
    return [[str(x) for x in row] for row in a.rows]


def _indent(text: str) -> str:
    return "\n".join("  " + line for line in text.splitlines())


def _resolve_engine(params: CyclicParams, config: Config) -> tuple[str, list[str]]:
    if config.engine is not None:
        return config.engine, []
    if params.m <= ORACLE_MAX_M:
        return "both", []
    return "normalform", [f"m > {ORACLE_MAX_M}: oracle engine skipped, Cartan matrix not cross-checked"]


def compute_cartan(final: QuiverWithRelations, engine: str, path_budget: int) -> tuple[IntMatrix, bool | None]:
    if engine == "normalform":
        return cartan_matrix_normal_form(final, path_budget), None
    if engine == "oracle":
        return cartan_matrix_oracle(final, path_budget), None
    nf = cartan_matrix_normal_form(final, path_budget)
    oracle = cartan_matrix_oracle(final, path_budget)
    if nf != oracle:
        diffs = [
            (final.vertices[j], final.vertices[i], nf[i, j], oracle[i, j])
            for i in range(nf.nrows)
            for j in range(nf.ncols)
            if nf[i, j] != oracle[i, j]
        ]
        src, dst, a, b = diffs[0]
        raise EngineDisagreement(
            f"{final.params.label()}: engines differ in {len(diffs)} entries, "
            f"first at paths {src} -> {dst}: normal form {a}, oracle {b}"
        )
    return nf, True


def is_kleinian(params: CyclicParams) -> bool:
    return params.d == 2 and sorted(params.a) == [1, params.m - 1]


def _is_lower_unitriangular(c: IntMatrix) -> bool:
    return c.is_lower_triangular() and all(c[i, i] == 1 for i in range(c.nrows))


def run_pipeline(params: CyclicParams, config: Config | None = None) -> Report:
    """validate -> (s1) -> (s2) -> (s3) -> C -> M -> Smith form -> cokernel."""
    config = config or Config()
    params = validate_params(params.m, params.a)
    full, pruned, final = build_quiver(params)
    engine, warnings = _resolve_engine(params, config)
    cartan, agreement = compute_cartan(final, engine, config.path_budget)

    m = m_matrix(cartan, params.d)
    snf = smith_normal_form(m)
    bound = group_from_diagonal(snf.diagonal, m.nrows)

    checks = [
        Check("final_vertex_count", len(final.vertices) == params.m - 1, f"{len(final.vertices)} vertices"),
        Check("acyclic", final.is_acyclic()),
        Check("cartan_unitriangular", _is_lower_unitriangular(cartan)),
    ]
    sign = 1 if params.d % 2 == 0 else -1  # (-1)^(d-2)
    phi = coxeter_phi(cartan)
    checks.append(
        Check("coxeter_identity", phi.scale(sign) - IntMatrix.identity(phi.nrows) == m, "(-1)^(d-2) Phi_A - I = M")
    )
    checks.append(Check("snf_reconstruction", snf.u @ m @ snf.v == snf.d, "U M V = D"))
    det = determinant(m)
    if det:
        checks.append(
            Check("determinant_law", bound.free_rank == 0 and bound.torsion_order == abs(det),
                  f"|det M| = {abs(det)}, torsion order {bound.torsion_order}")
        )
    else:
        checks.append(Check("determinant_law", bound.free_rank > 0, "det M = 0, cokernel has free part"))
    if is_kleinian(params):
        expected = AbelianGroup(0, (params.m,))
        checks.append(Check("kleinian_closed_form", bound == expected, f"expected {expected}, got {bound}"))
    canonical = params.canonical()
    if canonical != params:
        # the quiver depends on the weight order, the bound must not
        c2 = cartan_matrix_normal_form(build_quiver(canonical)[2], config.path_budget)
        m2 = m_matrix(c2, params.d)
        other = group_from_diagonal(smith_normal_form(m2).diagonal, m2.nrows)
        checks.append(Check("weight_order_invariance", other == bound, f"sorted weights give {other}"))

    stages = {q.stage.value: q.summary() for q in (full, pruned, final)}
    return Report(params, stages, cartan, engine, agreement, m, snf, bound, tuple(checks), tuple(warnings))


def compute(m: int, a, config: Config | None = None) -> Report:
    return run_pipeline(validate_params(m, a), config)


def enumerate_valid_params(m: int) -> list[CyclicParams]:
    """Every admissible weight vector for ``m``, nondecreasing, in lexicographic order."""
    if m < 2:
        raise ValueError("m must be at least 2")
    weights = [w for w in range(1, m) if math.gcd(w, m) == 1]
    found = []

    def extend(rest, smallest, acc):
        if rest == 0:
            if len(acc) >= 2:
                found.append(CyclicParams(m, tuple(acc)))
            return
        for w in weights:
            if smallest <= w <= rest:
                extend(rest - w, w, acc + [w])

    extend(m, 1, [])
    return sorted(found, key=lambda p: p.a)


def sweep(m: int, config: Config | None = None) -> list[Report]:
    return [run_pipeline(p, config) for p in enumerate_valid_params(m)]


def kleinian_sweep(m_max: int, config: Config | None = None) -> list[tuple[int, AbelianGroup]]:
    """Bounds for the type A_{m-1} surface singularities, m = 2..m_max."""
    if m_max < 2:
        raise ValueError(f"m_max = {m_max} must be at least 2")
    out = []
    for m in range(2, m_max + 1):
        report = run_pipeline(CyclicParams(m, (1, m - 1)), config)
        if report.bound != AbelianGroup(0, (m,)):
            raise SweepFailure(f"m = {m}: bound is {report.bound}, expected Z/{m}")
        out.append((m, report.bound))
    return out
