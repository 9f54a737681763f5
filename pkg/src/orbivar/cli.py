"""Command-line front end: JSON job configs in, JSON (or table) reports out.

Exit codes: 0 all checks passed, 1 a check failed, 2 invalid input,
3 a resource cap was exceeded.
"""

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .cusp import build_cusp, cusp_exponents, verify_cusp
from .dedekind import cot_square_sum, dedekind_sum_sides, subgroup_cot_sum
from .errors import ConsistencyError, GroupTooLargeError, OrbivarError, SignViolationError
from .groups import DEFAULT_CAP, GroupElement, enumerate_group
from .orbifold import chi_y, e_function, exponents, hodge_table, verify_main_theorem
from .polynomial import WeightSystem, exponents_trivial, infer_weights, parse_polynomial
from .sweep import run_sweep, sweep_cases

__all__ = ["JobConfig", "load_config", "main", "cmd_analyze", "cmd_sweep", "cmd_dedekind"]

EXIT_OK, EXIT_CHECK, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3

KINDS = ("weighted_homogeneous", "cusp", "dedekind", "sweep")
_ALLOWED = {
    "weighted_homogeneous": {"polynomial", "weights", "group", "options"},
    "cusp": {"alpha", "group", "options"},
    "dedekind": {"params", "group", "options"},
    "sweep": {"params", "options"},
}
_OPTIONS = {"assume_invariant", "group_cap", "output"}


class ConfigError(ValueError):
    pass


# -- serialization --------------------------------------------------------------


def rat(x):
    """Integers bare, other rationals as lowest-terms "p/q" strings."""
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def rat_str(x):
    return str(Fraction(x))


def parse_rational(s, what="value"):
    if isinstance(s, bool):
        raise ConfigError(f"{what}: expected a rational, got {s!r}")
    if isinstance(s, int):
        return Fraction(s)
    if not isinstance(s, str):
        raise ConfigError(f"{what}: rationals must be given as \"p/q\" strings, got {s!r}")
    try:
        return Fraction(s.strip())
    except (ValueError, ZeroDivisionError):
        raise ConfigError(f"{what}: cannot parse {s!r} as a rational") from None


# -- job configuration ----------------------------------------------------------


@dataclass
class JobConfig:
    kind: str
    polynomial: str = None
    weights: list = None
    alpha: tuple = None
    generators: list = field(default_factory=list)
    assume_invariant: bool = False
    group_cap: int = DEFAULT_CAP
    output: str = "json"
    params: dict = field(default_factory=dict)

    def to_dict(self):
        out = {"kind": self.kind}
        if self.polynomial is not None:
            out["polynomial"] = self.polynomial
        if self.weights is not None:
            out["weights"] = [rat_str(w) for w in self.weights]
        if self.alpha is not None:
            out["alpha"] = list(self.alpha)
        if self.kind != "sweep":
            out["group"] = {"generators": [[rat_str(a) for a in g] for g in self.generators]}
        if self.params:
            out["params"] = self.params
        out["options"] = {
            "assume_invariant": self.assume_invariant,
            "group_cap": self.group_cap,
            "output": self.output,
        }
        return out


def load_config(doc):
    """Validate a parsed JSON job document and return a JobConfig."""
    if not isinstance(doc, dict):
        raise ConfigError("job config must be a JSON object")
    kind = doc.get("kind")
    if kind not in KINDS:
        raise ConfigError(f"kind must be one of {', '.join(KINDS)}; got {kind!r}")
    extra = set(doc) - _ALLOWED[kind] - {"kind"}
    if extra:
        raise ConfigError(f"fields not allowed for kind {kind}: {', '.join(sorted(extra))}")
    cfg = JobConfig(kind)

    if kind == "weighted_homogeneous":
        if "polynomial" not in doc and "weights" not in doc:
            raise ConfigError("weighted_homogeneous needs a polynomial or weights")
    if "polynomial" in doc:
        if not isinstance(doc["polynomial"], str):
            raise ConfigError("polynomial must be a string")
        cfg.polynomial = doc["polynomial"]
    if "weights" in doc:
        if not isinstance(doc["weights"], list) or not doc["weights"]:
            raise ConfigError("weights must be a non-empty list")
        cfg.weights = [parse_rational(w, "weights") for w in doc["weights"]]
    if kind == "cusp":
        alpha = doc.get("alpha")
        if (not isinstance(alpha, list) or len(alpha) != 3
                or not all(isinstance(a, int) and not isinstance(a, bool) for a in alpha)):
            raise ConfigError("cusp needs alpha: a list of three integers")
        cfg.alpha = tuple(alpha)

    group = doc.get("group", {})
    if not isinstance(group, dict) or set(group) - {"generators"}:
        raise ConfigError("group must be an object with a generators list")
    gens = group.get("generators", [])
    if not isinstance(gens, list) or not all(isinstance(g, list) for g in gens):
        raise ConfigError("group.generators must be a list of angle lists")
    cfg.generators = [[parse_rational(a, "group.generators") for a in g] for g in gens]

    params = doc.get("params", {})
    if not isinstance(params, dict):
        raise ConfigError("params must be an object")
    cfg.params = params

    options = doc.get("options", {})
    if not isinstance(options, dict):
        raise ConfigError("options must be an object")
    unknown = set(options) - _OPTIONS
    if unknown:
        raise ConfigError(f"unknown options: {', '.join(sorted(unknown))}")
    ai = options.get("assume_invariant", False)
    if not isinstance(ai, bool):
        raise ConfigError("options.assume_invariant must be a boolean")
    cap = options.get("group_cap", DEFAULT_CAP)
    if not isinstance(cap, int) or isinstance(cap, bool) or cap < 1:
        raise ConfigError("options.group_cap must be a positive integer")
    out = options.get("output", "json")
    if out not in ("json", "table"):
        raise ConfigError("options.output must be json or table")
    cfg.assume_invariant, cfg.group_cap, cfg.output = ai, cap, out
    return cfg


# -- commands -------------------------------------------------------------------


def _group_doc(G):
    return {
        "generators": [[rat_str(a) for a in g.angles] for g in G.generators],
        "order": len(G),
    }


def _exponent_entries(E):
    return [{"q": rat(q), "mult": m} for q, m in E.items()]


def _analyze_wh(cfg):
    f = parse_polynomial(cfg.polynomial) if cfg.polynomial is not None else None
    if f is not None:
        W = infer_weights(f, cfg.weights)
    else:
        W = WeightSystem(tuple(cfg.weights))
    G = enumerate_group(W.n, cfg.generators, cap=cfg.group_cap)
    verdict = verify_main_theorem(
        W, G, polynomial=f, assume_invariant=cfg.assume_invariant, cross_check_sectors=True
    )
    E = verdict.efunction
    try:
        hodge = [{"p": rat(p), "q": rat(q), "h": h} for p, q, h in hodge_table(E).entries]
    except SignViolationError:
        hodge = []
    chi = chi_y(E, cross_check=False)
    results = {
        "weights": [rat_str(w) for w in W.weights],
        "group": _group_doc(G),
        "mu": verdict.mu,
        "mu_inclusion_exclusion": rat(verdict.mu_inclusion_exclusion),
        "c_hat": rat(verdict.c_hat),
        "mean": rat(verdict.mean),
        "variance": rat_str(verdict.variance),
        "predicted_variance": rat_str(verdict.predicted_variance),
        "exponents": _exponent_entries(exponents(E)),
        "hodge": hodge,
        "chi_y": [{"exponent": rat(e), "coeff": c} for e, c in chi.items()],
    }
    return results, dict(sorted(verdict.checks.items())), verdict.diagnostics


def _analyze_cusp(cfg):
    m = build_cusp(cfg.alpha, cfg.generators, cap=cfg.group_cap)
    v = verify_cusp(m)
    results = {
        "group": _group_doc(m.group),
        "gammas": list(m.gammas),
        "juniors": m.juniors,
        "mu": v.mu,
        "chi": rat(v.chi),
        "c_hat": 1,
        "variance": rat_str(v.variance_direct),
        "predicted_variance": rat_str(v.variance_formula),
        "exponents": _exponent_entries(cusp_exponents(m)),
    }
    checks = {
        "cusp_theorem": v.checks["variance_routes"],
        "exponent_count": v.checks["exponent_count"],
    }
    diagnostics = {}
    if m.juniors:
        diagnostics["signed_convention"] = (
            f"j_G = {m.juniors}: exponents 1 and 2 carry multiplicity {1 - m.juniors}"
        )
    return results, checks, diagnostics


def cmd_analyze(cfg):
    """Run one job; returns (report dict, exit code)."""
    start = time.perf_counter()
    if cfg.kind == "weighted_homogeneous":
        results, checks, diagnostics = _analyze_wh(cfg)
    elif cfg.kind == "cusp":
        results, checks, diagnostics = _analyze_cusp(cfg)
    elif cfg.kind == "dedekind":
        return cmd_dedekind(cfg.params, cfg.generators, cfg.group_cap)
    else:
        return cmd_sweep(cfg.params)
    report = {"inputs": cfg.to_dict(), "results": results, "checks": checks}
    if diagnostics:
        report["diagnostics"] = diagnostics
    report["timing"] = {"seconds": round(time.perf_counter() - start, 6)}
    return report, EXIT_OK if all(checks.values()) else EXIT_CHECK


def _int_range(spec, what):
    if isinstance(spec, int):
        return range(spec, spec + 1)
    if isinstance(spec, list) and len(spec) == 2:
        return range(spec[0], spec[1] + 1)
    if isinstance(spec, str):
        lo, _, hi = spec.partition("..") if ".." in spec else spec.partition("-")
        try:
            return range(int(lo), int(hi or lo) + 1)
        except ValueError:
            pass
    raise ConfigError(f"{what}: expected an integer, [lo, hi] or \"lo..hi\"; got {spec!r}")


def cmd_sweep(params):
    """Main-theorem sweep over Brieskorn-Pham pairs."""
    start = time.perf_counter()
    n_range = _int_range(params.get("n_range", "2..3"), "n_range")
    bound = int(params.get("exponent_bound", 5))
    order_bound = int(params.get("group_order_bound", 50))
    count = params.get("count")
    seed = int(params.get("seed", 0))
    cap = int(params.get("group_cap", DEFAULT_CAP))
    cases = sweep_cases(n_range, bound, order_bound, exhaustive=count is None,
                        count=count, seed=seed)
    summary, failures = run_sweep(cases, group_cap=cap)
    report = {
        "inputs": {"kind": "sweep", "params": {
            "n_range": [n_range.start, n_range.stop - 1], "exponent_bound": bound,
            "group_order_bound": order_bound, "count": count, "seed": seed,
        }},
        "results": summary,
        "checks": {"sweep": summary["failed"] == 0},
        "failures": failures,
        "timing": {"seconds": round(time.perf_counter() - start, 6)},
    }
    return report, EXIT_OK if not failures else EXIT_CHECK


def cmd_dedekind(params, generators=(), group_cap=DEFAULT_CAP):
    """Evaluate the cotangent identities requested in ``params``.

    params: r or r_range; optional a, b (all pairs 0 < a, b < r when r_range
    is given without them); with group generators, coord (1-based).
    """
    start = time.perf_counter()
    results = {}
    checks = {}
    if "r" in params or "r_range" in params:
        rs = _int_range(params.get("r_range", params.get("r")), "r")
        if rs.start < 2:
            raise ConfigError("r must be at least 2")
        zeta = []
        for r in rs:
            value = cot_square_sum(r)
            zeta.append({"r": r, "value": rat(value), "expected": rat(Fraction(r * r - 1, 12))})
        results["cot_square_sum"] = zeta
        checks["cot_square_sum"] = True
        a, b = params.get("a"), params.get("b")
        if (a is None) != (b is None):
            raise ConfigError("give both a and b, or neither")
        pairs = []
        mismatches = []
        for r in rs:
            ab = [(a, b)] if a is not None else [
                (x, y) for x in range(1, r) for y in range(1, r)
            ]
            for x, y in ab:
                lhs, rhs = dedekind_sum_sides(x, y, r)
                entry = {"a": x, "b": y, "r": r, "cotangent_side": rat(lhs),
                         "sawtooth_side": rat(rhs)}
                if lhs != rhs:
                    mismatches.append(entry)
                pairs.append(entry)
        if a is not None:
            results["dedekind_sum"] = pairs
        else:
            results["dedekind_sum"] = {"pairs": len(pairs), "mismatches": mismatches}
        checks["dedekind_sum"] = not mismatches
    if generators:
        coord = params.get("coord", 1)
        n = len(generators[0])
        if not isinstance(coord, int) or not 1 <= coord <= n:
            raise ConfigError(f"coord must be an integer in 1..{n}")
        H = enumerate_group(n, generators, cap=group_cap)
        res = subgroup_cot_sum(H, coord - 1, check=False)
        results["subgroup_cot_sum"] = {
            "coord": coord, "order": len(H), "stabilizer_order": res.stabilizer_order,
            "value": rat(res.value), "expected": rat(res.expected),
            "vanishing_sum": rat(res.vanishing_sum),
        }
        checks["subgroup_cot_sum"] = res.value == res.expected
        checks["vanishing_sum"] = res.vanishing_sum == 0
    if not checks:
        raise ConfigError("nothing to evaluate: give r, r_range or group generators")
    report = {
        "inputs": {"kind": "dedekind", "params": params,
                   "group": {"generators": [[rat_str(x) for x in g] for g in generators]}},
        "results": results,
        "checks": checks,
        "timing": {"seconds": round(time.perf_counter() - start, 6)},
    }
    return report, EXIT_OK if all(checks.values()) else EXIT_CHECK


def cmd_exponents(poly=None, weights=None):
    if poly is not None:
        W = infer_weights(parse_polynomial(poly), weights)
    else:
        W = WeightSystem(tuple(weights))
    ex = exponents_trivial(W)
    mu = ex.total()
    var = ex.moment(2, Fraction(W.n, 2))
    c = W.n - 2 * sum(W.weights, Fraction(0))
    report = {
        "inputs": {"polynomial": poly, "weights": [rat_str(w) for w in W.weights]},
        "results": {"mu": mu, "c_hat": rat(c), "variance": rat_str(var),
                    "exponents": _exponent_entries(ex)},
        "checks": {"hertling_dimca": var == c * mu / 12},
    }
    return report, EXIT_OK if all(report["checks"].values()) else EXIT_CHECK


def cmd_efunction(cfg):
    f = parse_polynomial(cfg.polynomial) if cfg.polynomial is not None else None
    W = infer_weights(f, cfg.weights) if f is not None else WeightSystem(tuple(cfg.weights))
    G = enumerate_group(W.n, cfg.generators, cap=cfg.group_cap)
    E = e_function(W, G, polynomial=f, assume_invariant=cfg.assume_invariant)
    half = Fraction(W.n, 2)
    terms = [{"p": rat(a + half), "q": rat(b + half), "coeff": c} for (a, b), c in E.items()]
    sectors = [{
        "element": str(s.element), "age": s.age, "fixed": s.n_fixed, "sign": s.sign,
        "invariant": [{"exponent": rat(e), "coeff": c} for e, c in s.invariant.items()],
    } for s in E.sectors]
    report = {"inputs": cfg.to_dict(), "results": {"terms": terms, "sectors": sectors},
              "checks": {}}
    return report, EXIT_OK


# -- output ---------------------------------------------------------------------


def render_table(report):
    lines = []
    res = report.get("results", {})
    for key, value in res.items():
        if isinstance(value, list) and value and isinstance(value[0], dict):
            lines.append(f"{key}:")
            cols = list(value[0])
            lines.append("  " + "  ".join(f"{c:>10}" for c in cols))
            for row in value:
                lines.append("  " + "  ".join(f"{str(row.get(c)):>10}" for c in cols))
        else:
            lines.append(f"{key}: {value}")
    for name, ok in report.get("checks", {}).items():
        lines.append(f"check {name}: {'PASS' if ok else 'FAIL'}")
    for name, msg in report.get("diagnostics", {}).items():
        lines.append(f"note {name}: {msg}")
    return "\n".join(lines)


def emit(report, fmt="json", timing=True, stream=None):
    stream = stream or sys.stdout
    if not timing:
        report = {k: v for k, v in report.items() if k != "timing"}
    if fmt == "table":
        stream.write(render_table(report) + "\n")
    else:
        stream.write(json.dumps(report, indent=2) + "\n")


# -- argument parsing -----------------------------------------------------------


def _parse_gen(text):
    return [parse_rational(a, "--gen") for a in text.split(",")]


def _parse_gen_rot(text):
    r, _, nums = text.partition(":")
    try:
        g = GroupElement.from_rotation(int(r), [int(a) for a in nums.split(",")])
    except (ValueError, ZeroDivisionError):
        raise ConfigError(f"--gen-rot expects r:a1,a2,...; got {text!r}") from None
    return list(g.angles)


def _common(p, group=True):
    p.add_argument("--input", help="JSON job file ('-' for stdin)")
    p.add_argument("--poly", help='polynomial, e.g. "x1^3 + x2^3 + x3^3"')
    p.add_argument("--weights", help="comma-separated weights, e.g. 1/3,1/3,1/3")
    if group:
        p.add_argument("--gen", action="append", default=[],
                       help="group generator as angles p/q,p/q,... (repeatable)")
        p.add_argument("--gen-rot", action="append", default=[],
                       help="generator in rotation notation r:a1,a2,... (repeatable)")
        p.add_argument("--assume-invariant", action="store_true")
        p.add_argument("--group-cap", type=int, default=DEFAULT_CAP)
    p.add_argument("--format", choices=("json", "table"), default=None)
    p.add_argument("--no-timing", action="store_true", help="omit timing for reproducible output")


def build_parser():
    parser = argparse.ArgumentParser(prog="orbivar", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="full invariant report for one pair")
    _common(p)
    p.add_argument("--alpha", help="cusp exponents a1,a2,a3")

    p = sub.add_parser("efunction", help="raw E-function and sector dump")
    _common(p)

    p = sub.add_parser("exponents", help="trivial-group exponents")
    _common(p, group=False)

    p = sub.add_parser("sweep", help="main-theorem sweep over Brieskorn-Pham pairs")
    p.add_argument("--n-range", default="2..3")
    p.add_argument("--exponent-bound", type=int, default=5)
    p.add_argument("--group-order-bound", type=int, default=50)
    p.add_argument("--count", type=int, help="random cases instead of exhaustive")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--group-cap", type=int, default=DEFAULT_CAP)
    p.add_argument("--replay-dir", help="write each counterexample config here")
    p.add_argument("--format", choices=("json", "table"), default="json")
    p.add_argument("--no-timing", action="store_true")

    p = sub.add_parser("dedekind", help="cotangent and Dedekind-sum identities")
    p.add_argument("--r", type=int)
    p.add_argument("--r-range", help="lo..hi")
    p.add_argument("--a", type=int)
    p.add_argument("--b", type=int)
    p.add_argument("--gen", action="append", default=[])
    p.add_argument("--gen-rot", action="append", default=[])
    p.add_argument("--coord", type=int, default=1, help="1-based coordinate for the subgroup sum")
    p.add_argument("--group-cap", type=int, default=DEFAULT_CAP)
    p.add_argument("--format", choices=("json", "table"), default="json")
    p.add_argument("--no-timing", action="store_true")
    return parser


def _read_input(path):
    try:
        text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON ({exc})") from None


def _config_from_args(args):
    if args.input:
        return load_config(_read_input(args.input))
    gens = [_parse_gen(g) for g in getattr(args, "gen", [])]
    gens += [_parse_gen_rot(g) for g in getattr(args, "gen_rot", [])]
    doc = {"group": {"generators": [[rat_str(a) for a in g] for g in gens]}}
    alpha = getattr(args, "alpha", None)
    if alpha:
        try:
            doc.update(kind="cusp", alpha=[int(a) for a in alpha.split(",")])
        except ValueError:
            raise ConfigError(f"--alpha expects three integers; got {alpha!r}") from None
    else:
        doc["kind"] = "weighted_homogeneous"
        if args.poly:
            doc["polynomial"] = args.poly
        if args.weights:
            doc["weights"] = args.weights.split(",")
    doc["options"] = {
        "assume_invariant": getattr(args, "assume_invariant", False),
        "group_cap": getattr(args, "group_cap", DEFAULT_CAP),
    }
    return load_config(doc)


def _run(args):
    if args.command in ("analyze", "efunction"):
        cfg = _config_from_args(args)
        fmt = args.format or cfg.output
        if args.command == "efunction":
            if cfg.kind != "weighted_homogeneous":
                raise ConfigError("efunction needs a weighted homogeneous job")
            return cmd_efunction(cfg) + (fmt,)
        return cmd_analyze(cfg) + (fmt,)
    if args.command == "exponents":
        if args.input:
            cfg = load_config(_read_input(args.input))
            poly, weights = cfg.polynomial, cfg.weights
        else:
            poly = args.poly
            weights = [parse_rational(w, "--weights") for w in args.weights.split(",")] \
                if args.weights else None
        if poly is None and weights is None:
            raise ConfigError("give --poly or --weights")
        return cmd_exponents(poly, weights) + (args.format or "json",)
    if args.command == "sweep":
        params = {"n_range": args.n_range, "exponent_bound": args.exponent_bound,
                  "group_order_bound": args.group_order_bound, "count": args.count,
                  "seed": args.seed, "group_cap": args.group_cap}
        report, code = cmd_sweep(params)
        if args.replay_dir and report["failures"]:
            import os

            os.makedirs(args.replay_dir, exist_ok=True)
            for k, fail in enumerate(report["failures"]):
                with open(os.path.join(args.replay_dir, f"case_{k:04d}.json"), "w") as fh:
                    json.dump(fail["config"], fh, indent=2)
        return report, code, args.format
    if args.command == "dedekind":
        params = {}
        if args.r is not None:
            params["r"] = args.r
        if args.r_range:
            params["r_range"] = args.r_range
        if args.a is not None:
            params["a"] = args.a
        if args.b is not None:
            params["b"] = args.b
        gens = [_parse_gen(g) for g in args.gen] + [_parse_gen_rot(g) for g in args.gen_rot]
        if gens:
            params["coord"] = args.coord
        return cmd_dedekind(params, gens, args.group_cap) + (args.format,)
    raise ConfigError(f"unknown command {args.command}")


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        report, code, fmt = _run(args)
    except GroupTooLargeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except ConsistencyError as exc:
        print(f"check failure: {exc}", file=sys.stderr)
        return EXIT_CHECK
    except (ConfigError, OrbivarError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    emit(report, fmt, timing=not args.no_timing)
    return code


if __name__ == "__main__":
    sys.exit(main())
