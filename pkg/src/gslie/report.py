"""Command bodies: each builds a Report from a RunConfig."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import transcriptions as T
from .adjoint import ZeroElement, adjoint_table, apply_witness, classify, diff_adjoint_table, format_combination, replay_error
from .algebra import (
    Subspace,
    center,
    derived_series,
    det,
    from_vector_fields,
    killing_form,
    killing_signature,
    quotient_by_center,
    table_consistency,
    verify_levi,
)
from .expr import ZERO, ProvenZero, add, as_expr, const, is_zero_verdict, mul, normalize, subs_funcs, to_text
from .expr.printer import fraction_text
from .generators import BASIS, INVARIANTS, PSI_SAMPLES, new_symmetry_cases, x5
from .jets import VectorField
from .model import (
    GRAD_SHAFRANOV,
    GSEquation,
    criterion_coefficients,
    determining_system,
    is_symmetry,
    verify_invariant,
)
from .quadrature import quadrature_oracle
from .solutions import catalog, verify_solution
from .specfun import specfun_eval


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    a: str = "-1"
    p: str = "2"
    F: str = "1"
    G: str = "0"
    seed: int = 0
    samples: int = 200
    tol: float = 1e-9
    x_range: tuple = (0.5, 3.0)
    t_range: tuple = (-2.0, 2.0)
    c_range: tuple = (-2.0, 2.0)

    def equation(self) -> GSEquation:
        try:
            return GSEquation.of(Fraction(self.a), Fraction(self.p), self.F, self.G)
        except (ValueError, ZeroDivisionError) as exc:
            raise ConfigError(f"bad equation: {exc}") from exc

    def ranges(self) -> dict:
        return {"x": self.x_range, "t": self.t_range, "C1": self.c_range, "C2": self.c_range}

    def validate(self) -> "RunConfig":
        if self.samples < 1:
            raise ConfigError("samples must be at least 1")
        if not self.tol > 0:
            raise ConfigError("tol must be positive")
        for name in ("x_range", "t_range", "c_range"):
            lo, hi = getattr(self, name)
            if not lo <= hi:
                raise ConfigError(f"{name} is empty")
        self.equation()
        return self

    def echo(self) -> dict:
        return {
            "equation": {"a": self.a, "p": self.p, "F": self.F, "G": self.G},
            "seed": self.seed, "samples": self.samples, "tol": self.tol,
            "x_range": list(self.x_range), "t_range": list(self.t_range), "c_range": list(self.c_range),
        }


@dataclass
class Report:
    command: str
    config: dict
    results: list = field(default_factory=list)
    discrepancies: list = field(default_factory=list)
    failed: bool = False

    def add(self, name: str, verdict: str, detail: str = "", ok: bool = True):
        self.results.append({"name": name, "verdict": verdict, "detail": detail})
        if not ok:
            self.failed = True

    def discrepancy(self, cite: str, printed: str, computed: str):
        self.discrepancies.append({"cite": cite, "printed": printed, "computed": computed})

    @property
    def status(self) -> str:
        return "mismatch" if self.failed else "ok"

    def to_json(self) -> str:
        body = {
            "command": self.command, "config": self.config, "results": self.results,
            "discrepancies": self.discrepancies, "status": self.status,
        }
        return json.dumps(body, indent=2, ensure_ascii=False) + "\n"

    def to_text(self) -> str:
        lines = [f"== {self.command} =="]
        width = max((len(r["name"]) for r in self.results), default=0)
        for r in self.results:
            tail = f"  {r['detail']}" if r["detail"] else ""
            lines.append(f"{r['name']:<{width}}  {r['verdict']}{tail}")
        if self.discrepancies:
            lines.append("-- discrepancies (printed vs computed) --")
            for d in self.discrepancies:
                lines.append(f"{d['cite']}: printed {d['printed']} | computed {d['computed']}")
        lines.append(f"status: {self.status}")
        return "\n".join(lines) + "\n"


def _verdict_name(v) -> str:
    return type(v).__name__


def _verdict_detail(v) -> str:
    if isinstance(v, ProvenZero):
        return ""
    if is_zero_verdict(v):
        return f"max residual {v.max_abs_residual:.3e}"
    return f"witness {json.dumps(v.witness, sort_keys=True)} value {v.value:.6g}"


def parse_candidate(text: str) -> VectorField:
    """'xi1,xi2,phi' split on top-level commas."""
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
            continue
        depth += ch == "("
        depth -= ch == ")"
        cur.append(ch)
    parts.append("".join(cur))
    if len(parts) != 3:
        raise ConfigError(f"candidate needs three comma-separated components, got {len(parts)}")
    try:
        return VectorField.parse(*(p.strip() for p in parts), "candidate")
    except ValueError as exc:
        raise ConfigError(f"bad candidate: {exc}") from exc


# -- commands -----------------------------------------------------------------

def cmd_check_symmetries(cfg: RunConfig, candidate: Optional[str] = None) -> Report:
    rep = Report("check-symmetries", cfg.echo())
    kw = dict(seed=cfg.seed, samples=cfg.samples, tol=cfg.tol, ranges=cfg.ranges())
    if candidate is not None:
        eq = cfg.equation()
        field_ = parse_candidate(candidate)
        r = is_symmetry(field_, eq, **kw)
        detail = _verdict_detail(r.verdict)
        if not r.accepted:
            detail = f"residual {to_text(r.residual)}; {detail}"
        rep.add(f"candidate on {eq}", _verdict_name(r.verdict), detail, r.accepted)
        return rep
    checks = [(f.label, GRAD_SHAFRANOV, f) for f in BASIS]
    checks += [(f"X5[psi={psi}]", GRAD_SHAFRANOV, x5(psi)) for psi in PSI_SAMPLES]
    checks += new_symmetry_cases()
    for label, eq, field_ in checks:
        r = is_symmetry(field_, eq, **kw)
        rep.add(f"{label} on {eq}", _verdict_name(r.verdict), _verdict_detail(r.verdict), r.accepted)
    for field_, inv in INVARIANTS:
        v = verify_invariant(field_, as_expr(inv), **kw)
        rep.add(f"invariant {inv} of {field_.label}", _verdict_name(v), _verdict_detail(v), is_zero_verdict(v))
    return rep


# cells where the printed tables are known to differ from the computation
EXPECTED_COMMUTATOR_DIFFS = frozenset({("X1", "X4"), ("X4", "X1")})
EXPECTED_ADJOINT_DIFFS = frozenset({
    ("X1", "X2"), ("X1", "X3"), ("X1", "X4"), ("X2", "X1"), ("X2", "X4"), ("X4", "X1"), ("X4", "X2"),
})


def _coeff_text(coeffs, labels) -> str:
    return format_combination([const(c) for c in coeffs], labels)


def cmd_tables(cfg: RunConfig) -> Report:
    rep = Report("tables", cfg.echo())
    L = from_vector_fields(BASIS)
    labels = L.labels

    printed = T.commutator_cells()
    cite = T.cite("commutators")
    for i in range(L.dim):
        for j in range(L.dim):
            computed = _coeff_text(L.c[i][j], labels)
            cell = printed[i][j]
            same = tuple(Fraction(v) for v in cell["coeffs"]) == L.c[i][j]
            expected_diff = (labels[i], labels[j]) in EXPECTED_COMMUTATOR_DIFFS
            if not same:
                rep.discrepancy(f"{cite}, row {labels[i]}, column {labels[j]}", cell["printed"], computed)
            rep.add(f"[{labels[i]},{labels[j]}] = {computed}", "agrees" if same else "differs",
                    "" if same else f"printed {cell['printed']}", same != expected_diff)
    P = T.printed_commutator_algebra()
    bad = table_consistency(BASIS, P)
    rep.add("printed commutator table vs generators",
            "consistent" if not bad else "inconsistent",
            ", ".join(f"[{labels[i]},{labels[j]}]" for i, j in bad), ok=bool(bad))
    rep.add("computed commutator table vs generators", "consistent" if not table_consistency(BASIS, L) else "inconsistent",
            ok=not table_consistency(BASIS, L))

    Q, images, _ = quotient_by_center(L, T.load()["quotient"]["basis"])
    PQ = T.printed_quotient_algebra()
    qcells = T.quotient_cells()
    for i in range(Q.dim):
        for j in range(Q.dim):
            same = Q.c[i][j] == PQ.c[i][j]
            computed = _coeff_text(Q.c[i][j], Q.labels)
            if not same:
                rep.discrepancy(f"{T.cite('quotient')}, row {Q.labels[i]}, column {Q.labels[j]}", qcells[i][j]["printed"], computed)
            rep.add(f"[{Q.labels[i]},{Q.labels[j]}] = {computed}", "agrees" if same else "differs", ok=same)
    rep.add("quotient images", "(" + ", ".join(labels[k] for k in images) + ") mod center", ok=tuple(images) == (0, 1, 3))

    aprinted = [[T.printed_adjoint_entry(i, j) for j in range(L.dim)] for i in range(L.dim)]
    diffs = {(d.row, d.col): d for d in diff_adjoint_table(L, aprinted)}
    table = adjoint_table(L)
    for i in range(L.dim):
        for j in range(L.dim):
            key = (labels[i], labels[j])
            computed = format_combination(table[i][j], labels)
            d = diffs.get(key)
            if d is not None:
                rep.discrepancy(f"{T.cite('adjoint')}, row {key[0]}, column {key[1]} ({d.kind})", d.printed, d.computed)
            rep.add(f"Ad(exp(eps*{key[0]})) {key[1]} = {computed}", "agrees" if d is None else "differs",
                    "" if d is None else d.kind, (d is not None) == (key in EXPECTED_ADJOINT_DIFFS))
    return rep


def _span_text(s: Subspace, labels) -> str:
    return "span{" + ", ".join(_coeff_text(v, labels) for v in s.basis) + "}"


def cmd_algebra(cfg: RunConfig) -> Report:
    rep = Report("algebra", cfg.echo())
    L = from_vector_fields(BASIS)
    labels = L.labels
    z = center(L)
    rep.add("center", _span_text(z, labels), ok=z == Subspace.span([L.unit(2)], L.dim))
    series = derived_series(L)
    dims = [s.dim for s in series]
    rep.add("derived series dims", ", ".join(map(str, dims)), ok=dims == [4, 3, 3])
    rep.add("derived algebra", _span_text(series[1], labels))
    printed_derived = T.printed_derived_algebra()
    if printed_derived != series[1]:
        rep.discrepancy(T.cite("derived_algebra"), T.load()["derived_algebra"]["printed"], _span_text(series[1], labels))
    k_full = det(killing_form(L))
    rep.add("Killing determinant, full algebra", fraction_text(k_full), ok=k_full == 0)
    r = z
    s = series[1]
    levi = verify_levi(L, r, s)
    rep.add("Killing determinant, Levi factor", fraction_text(levi.killing_det_s) if levi.killing_det_s is not None else "n/a",
            ok=bool(levi.killing_det_s))
    rep.add(f"Levi r = {_span_text(r, labels)}, s = {_span_text(s, labels)}", "pass" if levi.passed else "fail",
            f"direct sum {levi.direct_sum}, solvable ideal {levi.r_solvable_ideal}, "
            f"semisimple {levi.s_semisimple_subalgebra}, radical {levi.r_is_radical}", levi.passed)
    Q, images, _ = quotient_by_center(L)
    rep.add("quotient Killing signature (+, -, 0)", str(killing_signature(Q)))
    q = T.load()["quotient"]
    printed_images = ", ".join(f"X{k}" for k in q["labeling_indices"])
    rep.discrepancy(f"{T.cite('quotient')}, labeling", f"{q['printed_labeling']} (images {printed_images}; X3 lies in the center)",
                    "images " + ", ".join(labels[k] for k in images))
    return rep


def cmd_classify(cfg: RunConfig, coeffs, structure: str = "computed", normalize_case1: bool = False) -> Report:
    rep = Report("classify", {**cfg.echo(), "coeffs": [str(c) for c in coeffs], "structure": structure})
    try:
        v = tuple(Fraction(c) for c in coeffs)
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"coefficients must be rationals: {exc}") from exc
    if len(v) != 4:
        raise ConfigError("classify takes four coefficients")
    L = from_vector_fields(BASIS) if structure == "computed" else T.printed_commutator_algebra()
    try:
        result = classify(v, L, normalize_case1=normalize_case1)
    except ZeroElement as exc:
        raise ConfigError(str(exc)) from exc
    params = ", ".join(_num_text(p) for p in result.cls.params)
    rep.add("class", result.cls.id, f"a, b = {params}" if len(result.cls.params) == 2 else (f"a = {params}" if params else ""))
    steps = []
    for st in result.witness:
        if hasattr(st, "index"):
            steps.append(f"Conjugate({L.labels[st.index]}, {_num_text(st.eps)})")
        else:
            steps.append(f"Scale({_num_text(st.factor)})")
    rep.add("witness", "[" + ", ".join(steps) + "]")
    err = replay_error(result, v, L)
    ok = err <= result.tolerance
    replayed = apply_witness(result.witness, v, L)
    rep.add("replay", "exact" if err == 0 else f"error {float(err):.3e}",
            "(" + ", ".join(_num_text(x) for x in replayed) + ")", ok)
    return rep


def _num_text(x) -> str:
    if isinstance(x, Fraction):
        return fraction_text(x)
    return repr(float(x))


def cmd_verify_solutions(cfg: RunConfig) -> Report:
    rep = Report("verify-solutions", cfg.echo())
    domain = {"x": cfg.x_range, "t": cfg.t_range, "C1": cfg.c_range, "C2": cfg.c_range}
    for s in catalog():
        r = verify_solution(s, seed=cfg.seed, samples=cfg.samples, tol=cfg.tol, domain=domain)
        detail = f"max residual {r.max_abs_residual:.3e}, expected {r.expected}"
        if r.proven:
            detail += ", symbolic residual 0"
        elif r.verdict == "fail":
            detail += f", symbolic residual {r.symbolic_residual}"
        rep.add(f"{s.id} ({s.source})", r.verdict, detail + ("" if r.matches else ", MISMATCH"), r.matches)
    return rep


def cmd_specfun(cfg: RunConfig, name: str, x: float) -> Report:
    rep = Report("specfun", {**cfg.echo(), "function": name, "x": x})
    series = specfun_eval(name, x)
    oracle = quadrature_oracle(name, x)
    diff = abs(series - oracle)
    ok = diff <= 1e-8 * max(1.0, abs(oracle))
    rep.add(f"{name}({x!r})", "agree" if ok else "disagree",
            f"series {series!r}, oracle {oracle!r}, abs diff {diff:.3e}", ok)
    return rep


def cmd_determining(cfg: RunConfig) -> Report:
    eq = cfg.equation()
    rep = Report("determining", cfg.echo())
    system = determining_system(eq)
    for mono, coeff in system:
        rep.add(f"coeff of {to_text(mono)}", "= 0", to_text(coeff))
    if eq == GRAD_SHAFRANOV:
        for f in BASIS:
            mapping = {"xi1": f.xi1, "xi2": f.xi2, "phi": f.phi}
            zero = all(normalize(subs_funcs(c, mapping)) == ZERO for _, c in system)
            rep.add(f"{f.label} satisfies every coefficient", "yes" if zero else "no", ok=zero)
            rels_ok = all(
                normalize(subs_funcs(add(lhs, mul(const(-1), rhs)), mapping)) == ZERO
                for _, lhs, rhs in T.printed_defining_relations()
            )
            rep.add(f"{f.label} satisfies the printed relations", "yes" if rels_ok else "no", ok=rels_ok)
    derived = criterion_coefficients(eq)
    printed = T.printed_criterion()
    if eq == GRAD_SHAFRANOV:
        p_xi1 = as_expr(printed["coefficients"]["xi1"])
        if normalize(add(p_xi1, mul(const(-1), derived["xi1"]))) != ZERO:
            rep.discrepancy(f"{printed['cite']}, coefficient of xi1", to_text(normalize(p_xi1)), to_text(derived["xi1"]))
    rep.add("derived xi1 coefficient", to_text(derived["xi1"]))
    rep.add("derived phi coefficient", to_text(derived["phi"]))
    return rep


__all__ = [
    "ConfigError", "RunConfig", "Report", "parse_candidate",
    "cmd_check_symmetries", "cmd_tables", "cmd_algebra", "cmd_classify",
    "cmd_verify_solutions", "cmd_specfun", "cmd_determining",
]
