"""Command-line interface: coefficient tables, descendants, correlators,
check suites, and curve export.

Every run is deterministic for a fixed argument vector and seed.  Output
files echo the stated defaults and the run parameters in their header (or
as JSON keys), so identical invocations produce identical bytes.
"""
from __future__ import annotations

import argparse
import cmath
import json
import math
import os
import random
import re
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping, Sequence

import sympy

from .compositions import c_coeff, c_coeff_alt, enumerate_compositions
from .correlators import Insertion, permutation_invariance, sphere_correlator
from .curves import (
    CSV_HEADER,
    HypotrochoidSpec,
    curve_point,
    curve_svg,
    curve_velocity,
    cusp_threshold,
    dk_symmetry_check,
    map_eval,
    sample_curve,
    simplicity_check,
)
from .exact import CPoly
from .expansion import (
    AnalyticFunctional,
    expansion_coefficient,
    expansion_report_to_json,
    expansion_residual,
    fourier_extract,
    inverse_series_coefficient,
)
from .maps import C, MapExpr, one_point_Tk1, transformation_check
from .multipoint import MPoly, PointRational
from .operators import (
    OperatorSum,
    composition_check,
    derive_tbox,
    mono,
    specialize_hypotrochoid,
    tbox_closed,
)
from .virasoro import (
    PBWVector,
    descendant,
    descendant_raw,
    expand_combination,
    hypotrochoid_basis_solve,
    kappa_c_map,
    l_minus_one_derivative,
    normal_order,
    pbw_to_json,
)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_IO = 3

DEFAULT_SEED = 1729
DEFAULT_N_SAMPLES = 4096
DEFAULT_N_THETA = 256
DEFAULT_EPS_GRID = tuple(2.0**-e for e in range(3, 11))
DEFAULTS_TEXT = "n_samples=%d n_theta=%d eps_grid=2^-3..2^-10" % (
    DEFAULT_N_SAMPLES,
    DEFAULT_N_THETA,
)

OUT_DIR_ENV = "HYPOVIR_OUT"

TOKEN_RE = re.compile(r"T\[(\d+),(\d+)\]@([A-Za-z_][A-Za-z0-9_]*)\Z")

TWO_PI = math.tau


class UsageError(Exception):
    """Bad arguments discovered after parsing; mapped to the usage exit code."""


@dataclass(frozen=True)
class RunConfig:
    """Destination, format, and seed shared by every subcommand."""

    out: "str | None"
    fmt: str
    seed: int


# ------------------------------------------------------------------ plumbing

def resolve_output_path(path: str) -> str:
    """Relative output paths land under the override directory when it is set."""
    base = os.environ.get(OUT_DIR_ENV)
    if base and not os.path.isabs(path):
        return os.path.join(base, path)
    return path


def defaults_payload() -> dict:
    return {
        "n_samples": DEFAULT_N_SAMPLES,
        "n_theta": DEFAULT_N_THETA,
        "eps_grid": "2^-3..2^-10",
    }


def _params_text(params: Mapping[str, object]) -> str:
    return " ".join("%s=%s" % (key, value) for key, value in params.items())


def _header_lines(command: str, params: Mapping[str, object]) -> list[str]:
    return [
        "# hypovir %s" % command,
        "# defaults: %s" % DEFAULTS_TEXT,
        "# params: %s" % _params_text(params),
    ]


def _json_text(command: str, params: Mapping[str, object], body: Mapping[str, object]) -> str:
    payload = {"command": command, "defaults": defaults_payload(), "params": dict(params)}
    payload.update(body)
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _emit(config: RunConfig, text: str) -> "str | None":
    if config.out is None:
        sys.stdout.write(text)
        return None
    path = resolve_output_path(config.out)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
    return path


def _parse_fraction(text: str, what: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError("%s must be a rational like 3/4, got %r" % (what, text))


# -------------------------------------------------------------------- coeffs

def cmd_coeffs(args: argparse.Namespace, config: RunConfig) -> int:
    m_max = args.m_max
    if not 1 <= m_max <= 12:
        raise UsageError("m_max must lie in 1..12, got %r" % (m_max,))
    rows = []
    all_equal = True
    for m in range(1, m_max + 1):
        for lam in enumerate_compositions(m):
            left = c_coeff(lam)
            right = c_coeff_alt(lam)
            equal = left == right
            all_equal = all_equal and equal
            rows.append((lam, left, right, equal))
    params = {"m_max": m_max, "seed": config.seed}
    if config.fmt == "json":
        body = {
            "rows": [
                {
                    "composition": list(lam),
                    "weight_route": str(left),
                    "joint_route": str(right),
                    "equal": equal,
                }
                for lam, left, right, equal in rows
            ],
            "all_equal": all_equal,
        }
        text = _json_text("coeffs", params, body)
    elif config.fmt == "csv":
        lines = _header_lines("coeffs", params)
        lines.append("composition,weight_route,joint_route,equal")
        for lam, left, right, equal in rows:
            lines.append(
                "%s,%s,%s,%s" % ("+".join(map(str, lam)), left, right, str(equal).lower())
            )
        text = "\n".join(lines) + "\n"
    else:
        lines = _header_lines("coeffs", params)
        for lam, left, right, equal in rows:
            lines.append(
                "%-16s %10s %10s  %s"
                % ("+".join(map(str, lam)), left, right, "ok" if equal else "MISMATCH")
            )
        text = "\n".join(lines) + "\n"
    _emit(config, text)
    return EXIT_OK if all_equal else EXIT_CHECK_FAILED


# ---------------------------------------------------------------- descendant

def _parse_modes(text: str) -> tuple[int, ...]:
    try:
        modes = tuple(int(part) for part in text.split(","))
    except ValueError:
        raise UsageError("mode list must look like -2,-2,-3, got %r" % (text,))
    if not modes:
        raise UsageError("mode list is empty")
    return modes


def cmd_descendant(args: argparse.Namespace, config: RunConfig) -> int:
    if args.k < 2:
        raise UsageError("k must be >= 2, got %r" % (args.k,))
    if args.m < 1:
        raise UsageError("m must be >= 1, got %r" % (args.m,))
    vec = descendant(args.k, args.m)
    params = {"k": args.k, "m": args.m, "seed": config.seed}
    solve = None
    if args.solve_basis is not None:
        target = normal_order({_parse_modes(args.solve_basis): 1})
        solve = hypotrochoid_basis_solve(target)
        params["solve_basis"] = args.solve_basis
    status = EXIT_OK
    if solve is not None and not solve.ok:
        status = EXIT_CHECK_FAILED
    if config.fmt == "json":
        body: dict = {"vector": pbw_to_json(vec)}
        if solve is None:
            body["solve"] = None
        else:
            body["solve"] = {
                "ok": solve.ok,
                "c_dependent": solve.c_dependent,
                "reason": solve.reason,
                "combination": {
                    str(sym): repr(co)
                    for sym, co in sorted(solve.combination.items(), key=lambda kv: str(kv[0]))
                },
            }
        text = _json_text("descendant", params, body)
    else:
        lines = _header_lines("descendant", params)
        lines.append(repr(vec))
        if solve is not None:
            lines.append("basis solve: %s" % ("ok" if solve.ok else "failed (%s)" % solve.reason))
            for sym, co in sorted(solve.combination.items(), key=lambda kv: str(kv[0])):
                lines.append("  %s: %r" % (sym, co))
        text = "\n".join(lines) + "\n"
    _emit(config, text)
    return status


# ---------------------------------------------------------------- correlator

def _parse_insertions(spec_text: str) -> tuple[list[str], list[Insertion]]:
    labels: list[str] = []
    index: dict[str, int] = {}
    insertions: list[Insertion] = []
    for match in re.finditer(r"\S+", spec_text):
        token = match.group(0)
        parsed = TOKEN_RE.match(token)
        if parsed is None:
            raise UsageError(
                "parse error at position %d: expected T[k,m]@label, got %r"
                % (match.start() + 1, token)
            )
        k, m, label = int(parsed.group(1)), int(parsed.group(2)), parsed.group(3)
        if k < 2 or m < 1:
            raise UsageError(
                "parse error at position %d: need k >= 2 and m >= 1 in %r"
                % (match.start() + 1, token)
            )
        if label not in index:
            index[label] = len(index) + 1
            labels.append(label)
        insertions.append(Insertion(descendant(k, m), index[label]))
    return labels, insertions


def _point_rational_text(pr: PointRational, names: Mapping[int, str]) -> str:
    data = pr.as_json()
    if not data["num"]:
        return "0"
    pieces = []
    for term in data["num"]:
        factors = ["(%r)" % CPoly.from_json(term["coeff"])]
        for key in sorted(term["mono"]):
            name = names.get(int(key[1:]), key)
            power = term["mono"][key]
            factors.append(name if power == 1 else "%s^%d" % (name, power))
        pieces.append("*".join(factors))
    num_text = " + ".join(pieces)
    if not data["den"]:
        return num_text
    if len(pieces) > 1:
        num_text = "(%s)" % num_text
    den_text = "".join(
        "(%s-%s)%s"
        % (
            names.get(a, "w%d" % a),
            names.get(b, "w%d" % b),
            "" if power == 1 else "^%d" % power,
        )
        for a, b, power in data["den"]
    )
    return "%s / %s" % (num_text, den_text)


def _parse_assignments(text: str) -> dict[str, Fraction]:
    out: dict[str, Fraction] = {}
    for piece in text.split(","):
        label, sep, value = piece.partition("=")
        if not sep:
            raise UsageError("assignments must look like x=1/2,y=-3, got %r" % (piece,))
        out[label.strip()] = _parse_fraction(value.strip(), "value for %s" % label.strip())
    return out


def cmd_correlator(args: argparse.Namespace, config: RunConfig) -> int:
    labels, insertions = _parse_insertions(args.insertions)
    try:
        pr = sphere_correlator(insertions)
    except ValueError as exc:
        raise UsageError(str(exc))
    names = {i + 1: label for i, label in enumerate(labels)}
    params = {"insertions": args.insertions or "(vacuum)", "seed": config.seed}
    evaluation = None
    if args.c is not None and args.at is None:
        raise UsageError("--c requires --at")
    if args.at is not None:
        assignments = _parse_assignments(args.at)
        unknown = sorted(set(assignments) - set(labels))
        if unknown:
            raise UsageError("unknown label(s) in --at: %s" % ", ".join(unknown))
        points = {names_index: assignments[label] for label, names_index in
                  ((label, i + 1) for i, label in enumerate(labels)) if label in assignments}
        try:
            value = pr.evaluate(points)
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(str(exc))
        evaluation = {"at": {label: str(q) for label, q in sorted(assignments.items())}}
        if args.c is not None:
            charge = _parse_fraction(args.c, "--c")
            try:
                evaluation["c"] = str(charge)
                evaluation["value"] = str(value(charge))
            except ZeroDivisionError as exc:
                raise UsageError(str(exc))
        else:
            evaluation["value"] = repr(value)
    if config.fmt == "json":
        body = {
            "labels": labels,
            "correlator": pr.as_json(),
            "evaluation": evaluation,
        }
        text = _json_text("correlator", params, body)
    else:
        lines = _header_lines("correlator", params)
        lines.append(_point_rational_text(pr, names))
        if evaluation is not None:
            lines.append(
                "at %s: %s"
                % (
                    " ".join("%s=%s" % kv for kv in sorted(evaluation["at"].items())),
                    evaluation["value"],
                )
            )
        text = "\n".join(lines) + "\n"
    _emit(config, text)
    return EXIT_OK


# -------------------------------------------------------------- check suites

SuiteRows = "list[tuple[str, bool]]"


def _suite_algebra(rng: random.Random) -> list[tuple[str, bool]]:
    rows = []
    ok = all(
        c_coeff(lam) == c_coeff_alt(lam)
        for m in range(1, 9)
        for lam in enumerate_compositions(m)
    )
    rows.append(("coefficient recursions agree through weight 8", ok))

    ok = True
    for n in range(1, 7):
        for extra in range(0, 7):
            lam = (n,) + (1,) * extra
            want = Fraction(math.factorial(n + extra - 1), math.factorial(extra))
            ok = ok and c_coeff(lam) == want
            ok = ok and c_coeff((1,) + lam) == c_coeff(lam)
    rows.append(("closed forms for trailing-ones compositions", ok))

    ok = True
    for k in range(2, 7):
        two = PBWVector({(-k, -k): 1, (-2 * k,): k - 1})
        three = PBWVector(
            {
                (-k, -k, -k): 1,
                (-2 * k, -k): 3 * (k - 1),
                (-3 * k,): 2 * (k - 1) * (2 * k - 1),
            }
        )
        ok = ok and descendant(k, 2) == two and descendant(k, 3) == three
    rows.append(("quadratic and cubic descendants match closed displays", ok))

    ok = True
    targets = [(-2, -2, -2)]
    for k in (2, 3, 4):
        targets += [(-k, -k), (-k - 1, -k), (-k - 2, -k)]
    for word in targets:
        res = hypotrochoid_basis_solve(normal_order({word: 1}))
        ok = ok and res.ok and not res.c_dependent
        ok = ok and expand_combination(res.combination) == normal_order({word: 1})
    rows.append(("mode products resolve in the arm-descendant basis", ok))

    ok = all(
        l_minus_one_derivative(descendant(k, 1)) == descendant(k + 1, 1).scale(k - 1)
        for k in range(2, 7)
    )
    rows.append(("translation derivative raises the arm index", ok))

    ok = True
    for kappa, charge in (
        (Fraction(8, 3), Fraction(0)),
        (Fraction(3), Fraction(1, 2)),
        (Fraction(4), Fraction(1)),
    ):
        quad = kappa_c_map(kappa=kappa)
        ok = ok and quad.c == charge
        again = kappa_c_map(y=quad.y)
        ok = ok and again.c == charge and again.kappa == kappa
        via_n = kappa_c_map(n=quad.n)
        ok = ok and abs(float(via_n.c) - float(charge)) < 1e-12
    rows.append(("loop parameter map hits the exact charges", ok))
    return rows


def _suite_operators(rng: random.Random) -> list[tuple[str, bool]]:
    rows = []
    ok = derive_tbox(0) == OperatorSum.identity()
    ok = ok and all(derive_tbox(m) == tbox_closed(m) for m in range(1, 6))
    rows.append(("cell derivation equals the closed operator form", ok))

    h = mono({0: 1})
    h_dh = mono({0: 1, 1: 1})
    h_dh2 = mono({0: 1, 1: 2})
    ok = tbox_closed(2) == OperatorSum({(h, h): 1, (h_dh,): 1})
    ok = ok and tbox_closed(3) == OperatorSum(
        {(h, h, h): -1, (h, h_dh): -2, (h_dh, h): -1, (h_dh2,): -2}
    )
    rows.append(("second and third order operators match displays", ok))

    ok = all(residual.is_zero() for residual in composition_check(5).values())
    rows.append(("two-sided composition cancels through order 5", ok))

    ok = True
    for m in range(1, 4):
        for k in range(2, 5):
            got = {word: Fraction(value) for word, value in specialize_hypotrochoid(m, k).items()}
            ok = ok and got == descendant_raw(k, m)
    rows.append(("direction specialization reproduces raw descendants", ok))
    return rows


def _suite_ward(rng: random.Random) -> list[tuple[str, bool]]:
    rows = []
    half_c = CPoly({1: Fraction(1, 2)})
    stress = PBWVector.from_word((-2,))
    pair = sphere_correlator([Insertion(stress, 1), Insertion(stress, 2)])
    ok = pair == PointRational(MPoly.const(half_c), {(1, 2): 4})
    rows.append(("stress two-point kernel is exact", ok))

    triple = sphere_correlator([Insertion(stress, p) for p in (1, 2, 3)])
    ok = triple == PointRational(
        MPoly.const(CPoly.gen()), {(1, 2): 2, (1, 3): 2, (2, 3): 2}
    )
    rows.append(("stress three-point kernel is exact", ok))

    ok = True
    for k in range(2, 5):
        for k_prime in range(2, 5):
            got = sphere_correlator(
                [Insertion(descendant(k, 1), 1), Insertion(descendant(k_prime, 1), 2)]
            )
            oracle = PointRational(MPoly.const(half_c), {(1, 2): 4})
            for _ in range(k - 2):
                oracle = oracle.derivative(1)
            for _ in range(k_prime - 2):
                oracle = oracle.derivative(2)
            oracle = oracle.scale(
                Fraction(1, math.factorial(k - 2) * math.factorial(k_prime - 2))
            )
            ok = ok and got == oracle
    rows.append(("differentiated kernels match the deformation engine", ok))

    pool = [descendant(2, 1), descendant(3, 1)]
    states = [pool[rng.randrange(len(pool))] for _ in range(3)]
    ok = permutation_invariance(
        [Insertion(state, i + 1) for i, state in enumerate(states)]
    )
    rows.append(("three-insertion permutation symmetry", ok))
    return rows


def _suite_geometry(rng: random.Random) -> list[tuple[str, bool]]:
    rows = []
    ok = True
    for k in range(2, 7):
        spec = HypotrochoidSpec(k=k, b=1.7, w=0.2 + 0.1j, eps=1.0, theta=0.3)
        worst = 0.0
        for i in range(2048):
            alpha = TWO_PI * i / 2048
            on_circle = spec.w + spec.frame() * spec.b * cmath.exp(1j * alpha)
            worst = max(worst, abs(map_eval(spec, on_circle) - curve_point(spec, alpha)))
        ok = ok and worst < 1e-12
    rows.append(("exterior map carries the circle onto the curve", ok))

    ok = all(
        simplicity_check(
            HypotrochoidSpec(k=k, b=1.05 * cusp_threshold(k)["b_star"]), DEFAULT_N_SAMPLES
        )
        for k in range(2, 7)
    )
    rows.append(("five percent above threshold is simple", ok))

    ok = all(
        not simplicity_check(
            HypotrochoidSpec(k=k, b=0.95 * cusp_threshold(k)["b_star"]), DEFAULT_N_SAMPLES
        )
        for k in range(3, 7)
    )
    rows.append(("five percent below threshold loops for three or more arms", ok))

    ok = True
    for k in range(2, 7):
        info = cusp_threshold(k)
        spec = HypotrochoidSpec(k=k, b=info["b_star"], eps=1.3, theta=0.4)
        ok = ok and all(
            abs(curve_velocity(spec, alpha)) < 1e-10 for alpha in info["cusp_angles"]
        )
    rows.append(("velocity vanishes at the critical cusps", ok))

    ok = all(
        dk_symmetry_check(HypotrochoidSpec(k=k, b=1.4, theta=0.2)) for k in (3, 5)
    )
    rows.append(("dihedral symmetry of the sampled curve", ok))

    ok = transformation_check(
        MapExpr.from_string("exp(z)"), MapExpr.from_string("z**2"), at=sympy.Rational(1, 2)
    )
    value = one_point_Tk1(MapExpr.from_string("exp(z)"), 2, sympy.Rational(1, 3))
    ok = ok and sympy.simplify(value + C / 24) == 0
    rows.append(("chart-change cocycle and exponential one-point value", ok))
    return rows


def _suite_expansion(rng: random.Random) -> list[tuple[str, bool]]:
    rows = []
    z0 = sympy.Symbol("z0")
    ok = True
    for k in (2, 3):
        f = AnalyticFunctional.evaluation_at(z0)
        for m in range(0, 4):
            lhs = expansion_coefficient(f, k, 0, m)
            rhs = inverse_series_coefficient(k, m, z0, 0)
            ok = ok and sympy.simplify(lhs - rhs) == 0
    rows.append(("operator coefficients equal the inversion series", ok))

    f_num = AnalyticFunctional.evaluation_at(2.0 + 0.0j)
    ok = True
    for k in (2, 3):
        analytic = complex(expansion_coefficient(f_num, k, 0, 1))
        got = fourier_extract(f_num, k, 1, 1e-2)
        ok = ok and abs(got - analytic) < 1e-8
    rows.append(("fourier extraction recovers the first coefficient", ok))

    ok = True
    for order in (0, 1):
        report = expansion_residual(f_num, 2, 0, 0.0, 1.5, order, DEFAULT_EPS_GRID)
        ok = ok and abs(report.decay_exponent - 2 * (order + 1)) < 0.2
    rows.append(("truncation residuals decay at the predicted rate", ok))
    return rows


SUITES: "dict[str, Callable[[random.Random], list[tuple[str, bool]]]]" = {
    "algebra": _suite_algebra,
    "operators": _suite_operators,
    "ward": _suite_ward,
    "geometry": _suite_geometry,
    "expansion": _suite_expansion,
}


def _write_report_files(directory: str, rows: "list[tuple[str, str, bool]]", params) -> None:
    # figures are imported lazily so plain checks never touch matplotlib
    from . import figures

    os.makedirs(directory, exist_ok=True)
    lines = _header_lines("check", params)
    lines.append("suite,row,result")
    for suite, name, ok in rows:
        lines.append("%s,%s,%s" % (suite, name, "pass" if ok else "fail"))
    table_path = os.path.join(directory, "check_table.csv")
    with open(table_path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")

    figures.render_curve_panels(os.path.join(directory, "curve_panels.png"))
    f_num = AnalyticFunctional.evaluation_at(2.0 + 0.0j)
    reports = [
        expansion_residual(f_num, 2, 0, 0.0, 1.5, order, DEFAULT_EPS_GRID)
        for order in (0, 1)
    ]
    figures.render_decay_plot(os.path.join(directory, "decay_plot.png"), reports)
    for report in reports:
        name = "expansion_report_k%d_M%d.json" % (report.k, report.order_max)
        with open(os.path.join(directory, name), "w", encoding="utf-8") as fh:
            fh.write(json.dumps(expansion_report_to_json(report), indent=2, sort_keys=True) + "\n")


def cmd_check(args: argparse.Namespace, config: RunConfig) -> int:
    chosen = list(SUITES) if args.suite == "all" else [args.suite]
    rng = random.Random(config.seed)
    rows: list[tuple[str, str, bool]] = []
    for suite in chosen:
        for name, ok in SUITES[suite](rng):
            rows.append((suite, name, ok))
    all_pass = all(ok for _, _, ok in rows)
    params = {"suite": args.suite, "seed": config.seed}
    if config.fmt == "json":
        body = {
            "rows": [{"suite": s, "row": name, "pass": ok} for s, name, ok in rows],
            "all_pass": all_pass,
        }
        text = _json_text("check", params, body)
    else:
        lines = _header_lines("check", params)
        for suite, name, ok in rows:
            lines.append("%-10s %-52s %s" % (suite, name, "PASS" if ok else "FAIL"))
        lines.append(
            "result: %s (%d rows)" % ("PASS" if all_pass else "FAIL", len(rows))
        )
        text = "\n".join(lines) + "\n"
    _emit(config, text)
    if args.report is not None:
        _write_report_files(resolve_output_path(args.report), rows, params)
    return EXIT_OK if all_pass else EXIT_CHECK_FAILED


# --------------------------------------------------------------------- curve

def cmd_curve(args: argparse.Namespace, config: RunConfig) -> int:
    try:
        center = complex(args.w.strip())
    except ValueError:
        raise UsageError("could not parse center %r as a complex number" % (args.w,))
    try:
        spec = HypotrochoidSpec(
            k=args.k, b=args.b, w=center, eps=args.eps, theta=args.theta
        )
        samples = sample_curve(spec, args.n_samples)
    except ValueError as exc:
        raise UsageError(str(exc))
    threshold = cusp_threshold(args.k)["b_star"]
    simple = simplicity_check(spec, DEFAULT_N_SAMPLES)
    params = {
        "k": args.k,
        "b": "%.17g" % args.b,
        "eps": "%.17g" % args.eps,
        "theta": "%.17g" % spec.theta,
        "w": "%.17g%+.17gj" % (center.real, center.imag),
        "n_samples": args.n_samples,
        "seed": config.seed,
    }
    if config.fmt == "svg":
        header = "<!-- hypovir curve | defaults: %s | params: %s -->" % (
            DEFAULTS_TEXT,
            _params_text(params),
        )
        svg = curve_svg(spec, samples)
        first, rest = svg.split("\n", 1)
        text = first + "\n" + header + "\n" + rest
    elif config.fmt == "json":
        body = {
            "threshold": threshold,
            "simple": simple,
            "samples": [[alpha, z.real, z.imag] for alpha, z in zip(samples.alphas, samples.points)],
        }
        text = _json_text("curve", params, body)
    else:
        lines = _header_lines("curve", params)
        lines.append(CSV_HEADER)
        for alpha, z in zip(samples.alphas, samples.points):
            lines.append("%.17g,%.17g,%.17g" % (alpha, z.real, z.imag))
        text = "\n".join(lines) + "\n"
    out = config.out if config.out is not None else "curve.%s" % config.fmt
    path = resolve_output_path(out)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
    sys.stdout.write("wrote %s\n" % path)
    sys.stdout.write("cusp threshold b* = %.12g for k = %d\n" % (threshold, args.k))
    if simple:
        sys.stdout.write("curve is simple\n")
    else:
        sys.stdout.write("warning: curve is not simple at this radius\n")
    return EXIT_OK


# -------------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hypovir",
        description=(
            "Exact Virasoro descendant algebra, deformation operators, and "
            "hypotrochoid curve tools.  Defaults: %s.  Relative --out paths "
            "resolve under $%s when that variable is set." % (DEFAULTS_TEXT, OUT_DIR_ENV)
        ),
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--out", default=None, metavar="PATH", help="output file (default: stdout)"
    )
    common.add_argument(
        "--seed",
        type=int,
        default=DEFAULT_SEED,
        metavar="N",
        help="run seed echoed into headers (default %d)" % DEFAULT_SEED,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser(
        "coeffs", parents=[common], help="expansion coefficient table with dual-route check"
    )
    p.add_argument("m_max", type=int, help="largest composition weight, 1..12")
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")

    p = sub.add_parser(
        "descendant", parents=[common], help="normal-ordered descendant state"
    )
    p.add_argument("k", type=int, help="arm count, >= 2")
    p.add_argument("m", type=int, help="descendant order, >= 1")
    p.add_argument(
        "--solve-basis",
        metavar="MODES",
        default=None,
        help="also resolve the state with these modes (like -2,-2,-2) in the descendant basis",
    )
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser(
        "correlator", parents=[common], help="sphere correlator of T[k,m]@label insertions"
    )
    p.add_argument(
        "insertions",
        nargs="?",
        default="",
        help="whitespace-separated insertions, e.g. 'T[2,1]@x T[2,1]@y' (empty: vacuum)",
    )
    p.add_argument(
        "--at", metavar="ASSIGN", default=None, help="evaluate at rational points, e.g. x=1/2,y=-3"
    )
    p.add_argument("--c", metavar="Q", default=None, help="central charge value, rational")
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("check", parents=[common], help="run property-check suites")
    p.add_argument(
        "suite",
        nargs="?",
        choices=("all",) + tuple(SUITES),
        default="all",
        help="suite to run (default: all)",
    )
    p.add_argument(
        "--report",
        metavar="DIR",
        default=None,
        help="also write the check table, figures, and expansion reports into DIR",
    )
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("curve", parents=[common], help="sample a curve and write it to a file")
    p.add_argument("--k", type=int, required=True, help="arm count, >= 2")
    p.add_argument("--b", type=float, required=True, help="radius parameter, > 0")
    p.add_argument("--eps", type=float, default=1.0, help="scale (default 1)")
    p.add_argument("--theta", type=float, default=0.0, help="rotation angle (default 0)")
    p.add_argument("--w", default="0", help="center as a complex literal (default 0)")
    p.add_argument(
        "--n-samples", type=int, default=720, help="sample count (default 720)"
    )
    p.add_argument("--format", choices=("csv", "svg", "json"), default="csv")
    return parser


COMMANDS: "dict[str, Callable[[argparse.Namespace, RunConfig], int]]" = {
    "coeffs": cmd_coeffs,
    "descendant": cmd_descendant,
    "correlator": cmd_correlator,
    "check": cmd_check,
    "curve": cmd_curve,
}


def main(argv: "Sequence[str] | None" = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    config = RunConfig(out=args.out, fmt=getattr(args, "format", "text"), seed=args.seed)
    handler = COMMANDS[args.command]
    try:
        return handler(args, config)
    except UsageError as exc:
        sys.stderr.write("error: %s\n" % (exc,))
        return EXIT_USAGE
    except OSError as exc:
        sys.stderr.write("error: %s\n" % (exc,))
        return EXIT_IO


if __name__ == "__main__":
    raise SystemExit(main())
