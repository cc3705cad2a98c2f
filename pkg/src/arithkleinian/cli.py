"""Command-line front end.

Every subcommand maps to one library call.  Exit status is 0 on success, 1 on a
domain error (the library exception name is printed) and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import shlex
import sys
from importlib import resources

import numpy as np

from . import lattices, zetavol
from .errors import ArithKleinianError, SpecSyntaxError
from .hyperbolic import automorphic, bessel, geometry
from .numfield import QuadraticField, class_number
from .parsing import (
    parse_complex,
    parse_complex_list,
    parse_element,
    parse_element_list,
    parse_field,
    parse_matrix,
    parse_point,
)
from .quatalg import (
    DEFAULT_SEARCH_BOUND,
    QuaternionAlgebra,
    ramification_set,
    realize_ramification_set,
)

EPS_ENV = "ARITHKLEIN_EPS"
SIG_DIGITS = 10


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}\n{self.format_usage().strip()}")


# -- output ------------------------------------------------------------------


def _round(x: float) -> float:
    if not math.isfinite(x):
        return x
    return float(f"{x:.{SIG_DIGITS}g}")


def jsonable(obj):
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return _round(float(obj))
    if isinstance(obj, (complex, np.complexfloating)):
        return [_round(obj.real), _round(obj.imag)]
    if isinstance(obj, np.ndarray):
        return [jsonable(v) for v in obj.tolist()]
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    return str(obj)


def dumps(obj) -> str:
    return json.dumps(jsonable(obj), sort_keys=True, ensure_ascii=False)


def output_schema() -> dict:
    text = resources.files("arithkleinian").joinpath("output_schema.json").read_text()
    return json.loads(text)


def _plain(result) -> str:
    if isinstance(result, dict):
        lines = []
        for k in sorted(result):
            v = jsonable(result[k])
            lines.append(f"{k}: {v if isinstance(v, (str, int, float)) else json.dumps(v, sort_keys=True)}")
        return "\n".join(lines)
    return str(jsonable(result))


# -- helpers -----------------------------------------------------------------


def _eps(args):
    if getattr(args, "sub_eps", None) is not None:
        return args.sub_eps
    return args.eps


def _algebra(args):
    K = parse_field(args.field)
    a, b = parse_element(K, args.a), parse_element(K, args.b)
    return K, QuaternionAlgebra(a, b, field=K)


def _element_dict(K, x):
    return {"text": K.element_str(x), "coords": [str(c) for c in x.coeffs]}


def _quat_dict(K, q):
    return [K.element_str(c) for c in q.coords]


def _point_dict(P):
    if isinstance(P, geometry.PointH2):
        return {"x": P.x, "y": P.y}
    return {"x1": P.x1, "x2": P.x2, "y": P.y}


def _imag_quadratic(text):
    K = parse_field(text)
    if not (isinstance(K, QuadraticField) and K.is_imaginary):
        raise SpecSyntaxError(f"{text!r} is not an imaginary quadratic field spec d=<negative int>")
    return K


# -- field -------------------------------------------------------------------


def cmd_field_info(args):
    K = parse_field(args.field)
    out = {
        "field": K.spec(),
        "degree": K.degree,
        "min_poly": [str(c) for c in K.min_poly],
        "discriminant": K.discriminant,
        "signature": list(K.signature),
    }
    if isinstance(K, QuadraticField) and K.is_imaginary:
        out["class_number"] = class_number(K)
    return out


def cmd_field_split(args):
    K = parse_field(args.field)
    primes = K.primes_above(args.p)
    return {
        "field": K.spec(),
        "p": args.p,
        "primes": [{"label": P.label, "e": P.e, "f": P.f, "norm": P.norm} for P in primes],
        "splitting_type": [list(t) for t in K.splitting_type(args.p)],
    }


def cmd_field_class_number(args):
    K = _imag_quadratic(args.field) if args.field else QuadraticField(-abs(args.d))
    return {"field": K.spec(), "class_number": class_number(K)}


# -- quat --------------------------------------------------------------------


def cmd_quat_ramify(args):
    K, D = _algebra(args)
    return ramification_set(D).as_dict()


def cmd_quat_norm(args):
    K, D = _algebra(args)
    q = D(*parse_element_list(K, args.x, 4))
    return {
        "element": _quat_dict(K, q),
        "reduced_norm": _element_dict(K, q.reduced_norm()),
        "reduced_trace": _element_dict(K, q.reduced_trace()),
    }


def cmd_quat_mul(args):
    K, D = _algebra(args)
    x = D(*parse_element_list(K, args.x, 4))
    y = D(*parse_element_list(K, args.y, 4))
    return {"product": _quat_dict(K, x * y)}


def cmd_quat_realize(args):
    places = [t.strip() for t in args.set.split(",") if t.strip()]
    bound = args.search_bound if args.search_bound is not None else DEFAULT_SEARCH_BOUND
    a, b = realize_ramification_set(places, search_bound=bound)
    check = ramification_set(QuaternionAlgebra(a, b))
    return {"a": a, "b": b, "ramification": check.as_dict()}


# -- geom --------------------------------------------------------------------


def _two_points(args, cls):
    P, Q = parse_point(args.p), parse_point(args.q)
    if not (isinstance(P, cls) and isinstance(Q, cls)):
        raise SpecSyntaxError("points have the wrong dimension for this subcommand")
    return P, Q


def cmd_geom_dist2(args):
    P, Q = _two_points(args, geometry.PointH2)
    return {"distance": geometry.h2_distance(P, Q), "cosh_distance": geometry.cosh_h2_distance(P, Q)}


def cmd_geom_dist3(args):
    P, Q = _two_points(args, geometry.PointH3)
    return {"distance": geometry.h3_distance(P, Q), "cosh_distance": geometry.cosh_h3_distance(P, Q)}


def cmd_geom_act2(args):
    g, P = parse_matrix(args.g), parse_point(args.p)
    if not isinstance(P, geometry.PointH2):
        raise SpecSyntaxError("act2 needs a point x,y")
    return {"image": _point_dict(geometry.h2_act(g, P))}


def cmd_geom_act3(args):
    g, P = parse_matrix(args.g), parse_point(args.p)
    if not isinstance(P, geometry.PointH3):
        raise SpecSyntaxError("act3 needs a point x1,x2,y")
    return {
        "image": _point_dict(geometry.h3_act_components(g, P)),
        "image_quaternion": _point_dict(geometry.h3_act_quaternion(g, P)),
    }


def cmd_geom_slash(args):
    g, P = parse_matrix(args.g), parse_point(args.p)
    vals = parse_complex_list(args.value)
    if isinstance(P, geometry.PointH2):
        if len(vals) != 1:
            raise SpecSyntaxError("slash on H2 takes a single value")
        F = lambda z: vals[0]
        return {
            "image": _point_dict(geometry.h2_act(g, P)),
            "value": automorphic.slash(F, args.k, g, "H2")(P),
        }
    if len(vals) != args.k + 1:
        raise SpecSyntaxError(f"slash of weight {args.k} on H3 needs {args.k + 1} values")
    F = lambda z: np.array(vals)
    return {
        "image": _point_dict(geometry.h3_act_components(g, P)),
        "value": automorphic.slash(F, args.k, g, "H3")(P),
    }


def cmd_geom_sym(args):
    M = parse_complex_list(args.m)
    if len(M) != 4:
        raise SpecSyntaxError("sym needs a matrix a,b,c,d")
    return {"k": args.k, "matrix": automorphic.sym_power(args.k, np.array(M).reshape(2, 2)).matrix}


def cmd_geom_bessel(args):
    return {"nu": args.nu, "y": args.y, "value": bessel.bessel_k(args.nu, args.y)}


def cmd_geom_expand(args):
    K = _imag_quadratic(args.field)
    P = parse_point(args.p)
    if not isinstance(P, geometry.PointH3):
        raise SpecSyntaxError("expand needs a point x1,x2,y")
    coeffs = {}
    for item in args.coeff or []:
        parts = item.split(",")
        if len(parts) != 3:
            raise SpecSyntaxError(f"bad coefficient {item!r}; expected u,v,c")
        try:
            key = (int(parts[0]), int(parts[1]))
        except ValueError:
            raise SpecSyntaxError(f"bad coefficient {item!r}; u and v must be integers") from None
        coeffs[key] = parse_complex(parts[2])
    E = automorphic.CuspExpansion(K, coeffs)
    res = automorphic.evaluate_cusp_expansion(E, P)
    return {"value": res.value, "tail_estimate": res.tail_estimate, "terms": len(coeffs)}


# -- zeta, volume ------------------------------------------------------------


def cmd_zeta(args):
    K = parse_field(args.field)
    if args.method == "euler":
        bound = args.max_prime if args.max_prime is not None else 10**4
        res = zetavol.euler_product_zeta2(K, prime_bound=bound)
    else:
        res = zetavol.dedekind_zeta2(K, eps=_eps(args), method=args.method)
    return {"field": K.spec(), **res.as_dict()}


def cmd_volume_bianchi(args):
    return zetavol.bianchi_volume(args.d, eps=_eps(args)).as_dict()


def cmd_volume_covol(args):
    K, D = _algebra(args)
    res = zetavol.arithmetic_covolume(K, D, eps=_eps(args))
    out = res.as_dict()
    if args.compare is not None:
        idx = zetavol.covering_index(res.value, target=args.compare)
        out["covering_index"] = idx.index
        out["relative_residue"] = idx.residue
    return out


# -- lattice -----------------------------------------------------------------


def cmd_lattice_classify(args):
    K, D = _algebra(args)
    return lattices.classify(K, D).as_dict()


def cmd_lattice_cusps(args):
    return {"d": -abs(args.d), "cusps": lattices.cusp_count(args.d)}


def cmd_lattice_eis_dim(args):
    return {"d": -abs(args.d), "eisenstein_dimension": lattices.eisenstein_dimension(args.d)}


def cmd_lattice_cuspidal_vanishing(args):
    return {"d": -abs(args.d), "cuspidal_vanishing": lattices.cuspidal_vanishing_known(args.d)}


def cmd_lattice_clozel(args):
    K, D = _algebra(args)
    return {"field": K.spec(), "clozel_applies": lattices.clozel_applies(K, D)}


def cmd_schema(args):
    return output_schema()


# -- parser ------------------------------------------------------------------


def _env_eps():
    raw = os.environ.get(EPS_ENV)
    if raw is None:
        return None
    try:
        value = float(raw)
    except ValueError:
        raise UsageError(f"{EPS_ENV}={raw!r} is not a number") from None
    if not value > 0:
        raise UsageError(f"{EPS_ENV} must be positive")
    return value


def _positive_float(text):
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not v > 0:
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return v


def _algebra_args(p):
    p.add_argument("--field", required=True, help="Q | d=<int> | poly=c0,...,cn")
    p.add_argument("--a", required=True, help="element for i^2")
    p.add_argument("--b", required=True, help="element for j^2")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="arithklein", description="Arithmetic Kleinian groups toolkit")
    parser.add_argument("--json", action="store_true", help="emit JSON")
    parser.add_argument("--eps", type=_positive_float, default=None, help=f"target error (env {EPS_ENV})")
    parser.add_argument("--max-prime", type=int, default=None, help="prime bound for Euler products")
    parser.add_argument("--search-bound", type=int, default=None, help="bound for realization searches")
    top = parser.add_subparsers(dest="group", required=True, parser_class=_Parser)

    def leaf(group, name, func, help_text):
        p = group.add_parser(name, help=help_text)
        p.set_defaults(func=func, command_name=f"{group_name[group]} {name}".strip())
        return p

    group_name = {}

    def group(name, help_text):
        p = top.add_parser(name, help=help_text)
        g = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)
        group_name[g] = name
        return g

    g = group("field", "number field data")
    p = leaf(g, "info", cmd_field_info, "degree, discriminant, signature")
    p.add_argument("--field", required=True)
    p = leaf(g, "split", cmd_field_split, "primes above p")
    p.add_argument("--field", required=True)
    p.add_argument("--p", type=int, required=True)
    p = leaf(g, "class-number", cmd_field_class_number, "class number of Q(sqrt d), d < 0")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--field")
    src.add_argument("--d", type=int)

    g = group("quat", "quaternion algebras")
    _algebra_args(leaf(g, "ramify", cmd_quat_ramify, "ramified places"))
    p = leaf(g, "norm", cmd_quat_norm, "reduced norm and trace")
    _algebra_args(p)
    p.add_argument("--x", required=True, help="four comma-separated coordinates")
    p = leaf(g, "mul", cmd_quat_mul, "product of two elements")
    _algebra_args(p)
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p = leaf(g, "realize", cmd_quat_realize, "algebra over Q with a given ramification set")
    p.add_argument("--set", required=True, help="comma-separated primes and inf")

    g = group("geom", "hyperbolic geometry and automorphic kernels")
    for name, func in (("dist2", cmd_geom_dist2), ("dist3", cmd_geom_dist3)):
        p = leaf(g, name, func, "hyperbolic distance")
        p.add_argument("--p", required=True)
        p.add_argument("--q", required=True)
    for name, func in (("act2", cmd_geom_act2), ("act3", cmd_geom_act3)):
        p = leaf(g, name, func, "Moebius action")
        p.add_argument("--g", required=True, help="matrix a,b,c,d")
        p.add_argument("--p", required=True)
    p = leaf(g, "slash", cmd_geom_slash, "weight-k automorphy factor applied to F(gz)")
    p.add_argument("--g", required=True)
    p.add_argument("--p", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--value", required=True, help="F(gz) as comma-separated complex numbers")
    p = leaf(g, "sym", cmd_geom_sym, "symmetric power matrix")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--m", required=True)
    p = leaf(g, "bessel", cmd_geom_bessel, "K_nu(y)")
    p.add_argument("--nu", type=int, choices=(0, 1), required=True)
    p.add_argument("--y", type=_positive_float, required=True)
    p = leaf(g, "expand", cmd_geom_expand, "finite Fourier-Bessel expansion")
    p.add_argument("--field", required=True)
    p.add_argument("--p", required=True)
    p.add_argument("--coeff", action="append", help="u,v,c: coefficient c at u + v w (repeatable)")

    p = top.add_parser("zeta", help="zeta_K(2) with certified error")
    p.set_defaults(func=cmd_zeta, command_name="zeta")
    p.add_argument("--field", required=True)
    p.add_argument("--eps", dest="sub_eps", type=_positive_float, default=None)
    p.add_argument("--method", choices=("quotient", "direct", "euler"), default="quotient")

    g = group("volume", "covolumes")
    p = leaf(g, "bianchi", cmd_volume_bianchi, "covolume of SL2(O_K)")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--eps", dest="sub_eps", type=_positive_float, default=None)
    p = leaf(g, "covol", cmd_volume_covol, "covolume of a maximal order")
    _algebra_args(p)
    p.add_argument("--eps", dest="sub_eps", type=_positive_float, default=None)
    p.add_argument("--compare", type=_positive_float, default=None, help="report the nearest integer index of this volume")

    g = group("lattice", "classification predicates")
    _algebra_args(leaf(g, "classify", cmd_lattice_classify, "Fuchsian/Kleinian, cocompactness"))
    for name, func in (
        ("cusps", cmd_lattice_cusps),
        ("eis-dim", cmd_lattice_eis_dim),
        ("cuspidal-vanishing", cmd_lattice_cuspidal_vanishing),
    ):
        leaf(g, name, func, name).add_argument("--d", type=int, required=True)
    _algebra_args(leaf(g, "clozel", cmd_lattice_clozel, "residue-degree-one criterion"))

    p = top.add_parser("batch", help="run invocations listed in a file")
    p.set_defaults(func=None, command_name="batch")
    p.add_argument("file")

    p = top.add_parser("schema", help="print the JSON output schema")
    p.set_defaults(func=cmd_schema, command_name="schema")
    return parser


# -- execution ---------------------------------------------------------------


_BARE_FLAGS = {"--json", "--help", "-h"}


def _attach_values(argv):
    """Rewrite "--flag value" as "--flag=value" so values such as -3+w are not read as options."""
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok.startswith("--") and "=" not in tok and tok not in _BARE_FLAGS and i + 1 < len(argv):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def execute(argv):
    """Run one invocation; return (exit status, envelope dict)."""
    parser = build_parser()
    try:
        args = parser.parse_args(_attach_values(list(argv)))
        if args.eps is None:
            args.eps = _env_eps()
        if args.group == "batch":
            raise UsageError("batch files cannot nest batch invocations")
        result = args.func(args)
    except UsageError as exc:
        return 2, {"ok": False, "error": {"type": "UsageError", "message": str(exc)}}
    except SpecSyntaxError as exc:
        return 2, {"ok": False, "error": {"type": "SpecSyntaxError", "message": str(exc)}}
    except (ArithKleinianError, ValueError, ArithmeticError) as exc:
        return 1, {"ok": False, "error": {"type": type(exc).__name__, "message": str(exc)}}
    return 0, {"ok": True, "command": args.command_name, "result": result}


def parse_batch(text: str):
    """List of (line number, argv or None, error message)."""
    items = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        try:
            items.append((lineno, shlex.split(stripped, comments=True), None))
        except ValueError as exc:
            items.append((lineno, None, f"line {lineno}: {exc} in {stripped!r}"))
    return items


def run_batch(path: str, global_argv=()):
    with open(path, encoding="utf-8") as fh:
        items = parse_batch(fh.read())
    results = []
    status = 0
    for lineno, argv, err in items:
        if argv is None:
            code, env = 2, {"ok": False, "error": {"type": "UsageError", "message": err}}
        else:
            code, env = execute(list(global_argv) + argv)
            if not env["ok"]:
                env["error"]["message"] = f"line {lineno}: {env['error']['message']}"
        env["line"] = lineno
        results.append(env)
        if code:
            status = 1
    return status, results


def _split_global(argv):
    """Global flags preceding the subcommand, and the rest."""
    out = []
    i = 0
    while i < len(argv) and argv[i].startswith("--"):
        flag = argv[i]
        out.append(flag)
        if flag != "--json" and "=" not in flag and i + 1 < len(argv):
            out.append(argv[i + 1])
            i += 1
        i += 1
    return out, argv[i:]


def run(argv=None, stdout=None, stderr=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    global_argv, rest = _split_global(argv)
    if rest[:1] == ["batch"]:
        try:
            args = build_parser().parse_args(_attach_values(argv))
        except UsageError as exc:
            print(str(exc), file=stderr)
            return 2
        try:
            status, results = run_batch(args.file, [g for g in global_argv if g != "--json"])
        except OSError as exc:
            print(f"error: {type(exc).__name__}: {exc}", file=stderr)
            return 2
        print(dumps(results), file=stdout)
        return status
    code, env = execute(argv)
    as_json = "--json" in global_argv
    if env["ok"]:
        print(dumps(env) if as_json else _plain(env["result"]), file=stdout)
    else:
        err = env["error"]
        if as_json:
            print(dumps(env), file=stdout)
        print(f"error: {err['type']}: {err['message']}", file=stderr)
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
