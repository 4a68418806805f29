import argparse
import io
import logging
import os
import re
import sys

from . import __version__
from .almost_periodic import translation_numbers
from .cartan import cartan_cover, annulus_point_for
from .constants import (QUAD_TOL, JENSEN_QUAD_TOL, MATCH_TOL, TAU, THETA, THETA_PRIME, LIMIT_TOL, DIVERGENCE_SLOPE,
                        INFINITY, EXIT_OK, EXIT_ASSERTION, EXIT_USAGE)
from .counting import build_counting_table, locate_values
from .engine.errors import (CustomException, ConfigError, InvalidSeries, InvalidArgument, ValidityExceeded,
                            InsufficientGrid, UncertifiedCount, BoundViolation, HypothesisViolation,
                            CertificationRefused)
from .engine.workers import set_threads, log_exception
from .jensen import jensen_check, poisson_jensen_check
from .operators import lambda_iterate, check_tau
from .parsers.function_config import load_function
from .parsers.grid import parse_grid, parse_complex
from .product import growth_bound_check
from .symdiff import AGREEMENT_TOL, symmetric_difference, linear_growth_verdict
from .utility.logsetup import ScriptLog, verbosity_level
from .utility.output import Manifest, dumps, write_json, write_table, append_row
from .utility.utils import complex_to_pair
from .verify import catalog, run_suite

log = logging.getLogger(__name__)

USAGE_ERRORS = (ConfigError, InvalidSeries, InvalidArgument, ValidityExceeded, InsufficientGrid)
ASSERTION_ERRORS = (UncertifiedCount, BoundViolation, HypothesisViolation, CertificationRefused)
DEFAULT_GRID = "5:50:8log"

SUBCOMMANDS = ["eval", "count", "zeros", "table", "jensen", "poisson", "product", "lambda", "cartan",
               "translation", "symdiff", "verify", "catalog"]


class RunConfig(object):
    """
    Validated command line settings of one run

    :param args: parsed argparse namespace
    """

    def __init__(self, args):
        self.command = args.command
        self.args = args
        for flag in ("tol", "match_tol"):
            value = getattr(args, flag)
            if not value > 0:
                raise ConfigError("--" + flag.replace("_", "-"), "tolerances must be positive, got " + repr(value))
        if args.threads is not None and args.threads < 1:
            raise ConfigError("--threads", "thread count must be positive")
        self.tol = args.tol
        self.match_tol = args.match_tol
        self.seed = args.seed
        self.out = args.out
        self.threads = args.threads

    def value(self, name, field=None):
        value = getattr(self.args, name, None)
        if value is None:
            raise ConfigError(field or "--" + name.replace("_", "-"), "required by the " + self.command +
                              " subcommand")
        return value

    def function(self, name="fn"):
        return load_function(self.value(name)).oracle()

    def radii(self, name="r"):
        return parse_grid(self.value(name), "--" + name)

    def radius(self, name="r"):
        radii = self.radii(name)
        if len(radii) != 1:
            raise ConfigError("--" + name, "expected a single radius")
        return radii[0]

    def target(self):
        return parse_complex(self.args.a, "--a")

    def point(self):
        return parse_complex(self.value("s"), "--s")

    def path(self, *parts):
        return os.path.join(self.out or ".", *parts)

    def to_dict(self):
        data = {}
        for key, value in sorted(vars(self.args).items()):
            if key in ("handler",):
                continue
            data[key] = value
        data["tolerances"] = {
            "quad_tol": self.tol,
            "match_tol": self.match_tol,
            "jensen_quad_tol": getattr(self.args, "quad_tol", JENSEN_QUAD_TOL),
            "theta": THETA,
            "theta_prime": THETA_PRIME,
            "limit_tol": LIMIT_TOL,
            "agreement_tol": AGREEMENT_TOL,
            "divergence_slope": DIVERGENCE_SLOPE,
        }
        return data


def _common_parser():
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--fn", help="function config (JSON)")
    parent.add_argument("--F", dest="F", help="first function config of a pair")
    parent.add_argument("--G", dest="G", help="second function config of a pair")
    parent.add_argument("--r", help="radius, or grid 'a:b:n' / 'a:b:nlog'")
    parent.add_argument("--T", dest="T", help="radius T, or grid of radii")
    parent.add_argument("--a", default="0", help="target value, 'inf' for poles (default: 0)")
    parent.add_argument("--grid", help="radius grid 'a:b:n' or 'a:b:nlog' (default: " + DEFAULT_GRID + ")")
    parent.add_argument("--tol", type=float, default=QUAD_TOL, help="quadrature tolerance (default: 1e-8)")
    parent.add_argument("--match-tol", dest="match_tol", type=float, default=MATCH_TOL,
                        help="zero matching tolerance (default: 1e-6)")
    parent.add_argument("--out", help="output directory")
    parent.add_argument("--threads", type=int, help="worker threads (default: hardware count)")
    parent.add_argument("--seed", type=int, default=0, help="seed of the random sweeps (default: 0)")
    parent.add_argument("-v", "--verbose", action="count", default=0, help="-v info, -vv debug")
    return parent


def build_parser():
    parser = argparse.ArgumentParser(prog="dirichletlib",
                                     description="Value distribution tools for exponential sums and "
                                                 "meromorphic functions")
    parser.add_argument("--version", action="version", version="%(prog)s " + __version__)
    sub = parser.add_subparsers(dest="command", metavar="command")
    sub.required = True
    parent = _common_parser()

    def add(name, handler, text):
        each = sub.add_parser(name, parents=[parent], help=text, description=text)
        each.set_defaults(handler=handler)
        return each

    add("eval", cmd_eval, "evaluate f and f' at a point").add_argument("--s", help="evaluation point")
    add("count", cmd_count, "count solutions of f = a in |s| <= r; with --out the row is appended to count.csv")
    add("zeros", cmd_zeros, "locate solutions of f = a in |s| <= r")
    add("table", cmd_table, "counting table over a radius grid")
    each = add("jensen", cmd_jensen, "Jensen formula residual on |s| = r")
    each.add_argument("--quad-tol", dest="quad_tol", type=float, default=JENSEN_QUAD_TOL)
    each = add("poisson", cmd_poisson, "Poisson-Jensen residual at s inside |s| = r")
    each.add_argument("--s", help="interior point")
    each.add_argument("--quad-tol", dest="quad_tol", type=float, default=JENSEN_QUAD_TOL)
    each = add("product", cmd_product, "growth bound of a genus one product")
    each.add_argument("--zeros", help="semicolon separated zeros, e.g. '1;2,1;-3'")
    each.add_argument("--s", help="evaluation point")
    each = add("lambda", cmd_lambda, "iterate the difference operator f(s + tau)/f(s)")
    each.add_argument("--tau", type=float, default=TAU, help="step (default: 0.1)")
    each.add_argument("--d", type=int, default=1, help="number of iterations (default: 1)")
    each.add_argument("--s", help="evaluation point")
    each = add("cartan", cmd_cartan, "Cartan disks of a point set, or an annulus point for --fn with --r R1")
    each.add_argument("--points", help="semicolon separated points")
    each.add_argument("--h", type=float, default=1.0, help="lemma parameter (default: 1)")
    each = add("translation", cmd_translation, "scan for epsilon-translation numbers of a finite sum")
    each.add_argument("--epsilon", type=float, default=0.1)
    each.add_argument("--window", type=float, default=200.0)
    each.add_argument("--step", type=float, default=1e-3)
    each.add_argument("--sigma0", type=float, default=0.0)
    each.add_argument("--range", dest="scan_range", default="0:5000", help="scan range 'start:stop'")
    add("symdiff", cmd_symdiff, "symmetric difference of the zeros of F and G")
    add("verify", cmd_verify, "run the verification suite over the catalog").add_argument(
        "--zeta", action="store_true", help="include the zeta counts")
    add("catalog", cmd_catalog, "list the catalog")
    return parser


def _points(text, field):
    return [parse_complex(each, field) for each in text.split(";") if each.strip()]


def _emit(config, name, data):
    text = dumps(data)
    sys.stdout.write(text)
    if config.out:
        path = config.path(name)
        write_json(path, data)
        return [path]
    return []


@log_exception(log)
def cmd_eval(config):
    f = config.function()
    s = config.point()
    value, bound = f.evaluate(s)
    derivative, dbound = f.derivative(s)
    data = {"s": complex_to_pair(s), "value": complex_to_pair(value), "bound": bound,
            "derivative": complex_to_pair(derivative), "derivative_bound": dbound}
    return EXIT_OK, _emit(config, "eval.json", data)


@log_exception(log)
def cmd_count(config):
    f = config.function()
    r = config.radius()
    a = config.target()
    table = build_counting_table(f, [r], 0.0 if a == INFINITY else a, config.tol)
    row = table.rows[0]
    count = row[2] if a == INFINITY else row[1]
    sys.stdout.write(str(count) + "\n")
    if not config.out:
        return EXIT_OK, []
    path = config.path("count.csv")
    append_row(path, row)
    return EXIT_OK, [path]


@log_exception(log)
def cmd_zeros(config):
    f = config.function()
    records = locate_values(f, config.radius(), config.target(), config.tol)
    data = {"r": config.radius(), "a": complex_to_pair(config.target()),
            "records": [rec.to_dict() for rec in records]}
    return EXIT_OK, _emit(config, "zeros.json", data)


@log_exception(log)
def cmd_table(config):
    f = config.function()
    grid = parse_grid(config.args.grid or config.args.r or DEFAULT_GRID, "--grid")
    table = build_counting_table(f, grid, config.target(), config.tol)
    if config.out:
        path = config.path("table.csv")
        write_table(path, table)
        return EXIT_OK, [path]
    stream = io.StringIO()
    table.to_csv(stream)
    sys.stdout.write(stream.getvalue())
    return EXIT_OK, []


def _identity(config, check):
    data = {"lhs": check.lhs, "rhs": check.rhs, "residual": check.residual, "radius": check.radius,
            "converged": check.converged, "achieved": check.achieved}
    return EXIT_OK, _emit(config, config.command + ".json", data)


@log_exception(log)
def cmd_jensen(config):
    return _identity(config, jensen_check(config.function(), config.radius(), config.args.quad_tol))


@log_exception(log)
def cmd_poisson(config):
    check = poisson_jensen_check(config.function(), config.point(), config.radius(), config.args.quad_tol)
    return _identity(config, check)


@log_exception(log)
def cmd_product(config):
    zeros = _points(config.value("zeros"), "--zeros")
    s = config.point()
    lhs, rhs = growth_bound_check(zeros, s)
    data = {"zeros": [complex_to_pair(w) for w in zeros], "s": complex_to_pair(s), "lhs": lhs, "rhs": rhs,
            "holds": lhs <= rhs}
    paths = _emit(config, "product.json", data)
    return (EXIT_OK if lhs <= rhs else EXIT_ASSERTION), paths


@log_exception(log)
def cmd_lambda(config):
    f = config.function()
    tau, d = config.args.tau, config.args.d
    if config.args.s is None:
        check_tau(f, tau, d)
        data = {"tau": tau, "d": d, "checked_radius": 2.0 * d * tau}
    else:
        s = config.point()
        value, bound = lambda_iterate(f, tau, d).evaluate(s)
        data = {"tau": tau, "d": d, "s": complex_to_pair(s), "value": complex_to_pair(value), "bound": bound}
    return EXIT_OK, _emit(config, "lambda.json", data)


@log_exception(log)
def cmd_cartan(config):
    if config.args.fn is not None:
        picked = annulus_point_for(config.function(), config.radius())
        data = picked.to_dict()
        code = EXIT_OK if picked.regular and picked.zero_bound and picked.pole_bound else EXIT_ASSERTION
        return code, _emit(config, "cartan.json", data)
    points = _points(config.value("points"), "--points")
    cover = cartan_cover(points, config.args.h)
    data = {"h": cover.h, "n_points": cover.n_points, "disks": cover.to_json(), "total_radius": cover.total_radius}
    return EXIT_OK, _emit(config, "cartan.json", data)


@log_exception(log)
def cmd_translation(config):
    series = load_function(config.value("fn")).series()
    match = re.match(r"^\s*([^:]+):([^:]+)\s*$", config.args.scan_range)
    if not match:
        raise ConfigError("--range", "expected 'start:stop', got " + repr(config.args.scan_range))
    try:
        scan_range = (float(match.group(1)), float(match.group(2)))
    except ValueError:
        raise ConfigError("--range", "not a number in " + repr(config.args.scan_range))
    result = translation_numbers(series, config.args.epsilon, config.args.window, config.args.step,
                                 config.args.sigma0, scan_range)
    paths = _emit(config, "translation.json", result.to_dict())
    return (EXIT_OK if result.relatively_dense else EXIT_ASSERTION), paths


@log_exception(log)
def cmd_symdiff(config):
    F = config.function("F")
    G = config.function("G")
    grid = config.radii("T")
    zerosF = locate_values(F, grid[-1], 0.0, config.tol)
    zerosG = locate_values(G, grid[-1], 0.0, config.tol)
    report = symmetric_difference(zerosF, zerosG, grid, config.match_tol)
    data = report.to_dict()
    try:
        verdict, A = linear_growth_verdict(report, THETA)
        data.update({"verdict": verdict, "A": A})
    except InsufficientGrid:
        data.update({"verdict": None, "A": None})
    return EXIT_OK, _emit(config, "symdiff.json", data)


def _safe_name(name):
    return re.sub(r"[^A-Za-z0-9+._-]", "_", name)


@log_exception(log)
def cmd_verify(config):
    grid = parse_grid(config.args.grid or DEFAULT_GRID, "--grid")
    result = run_suite(grid, config.seed, config.args.zeta)
    paths = []
    if config.out:
        for name, table in result.tables.items():
            path = config.path("verify", _safe_name(name) + ".csv")
            write_table(path, table)
            paths.append(path)
        path = config.path("verify", "summary.json")
        write_json(path, result.to_dict())
        paths.append(path)
    for check in result.checks:
        sys.stdout.write(("PASS " if check.passed else "FAIL ") + check.name + "\n")
    return (EXIT_OK if result.passed else EXIT_ASSERTION), paths


@log_exception(log)
def cmd_catalog(config):
    return EXIT_OK, _emit(config, "catalog.json", [entry.to_dict() for entry in catalog()])


def _scan_command_line(argv):
    """
    Subcommand and --out of a command line argparse rejected, for its manifest
    """
    command = argv[0] if argv and not argv[0].startswith("-") else None
    out = None
    for i, each in enumerate(argv):
        if each == "--out" and i + 1 < len(argv):
            out = argv[i + 1]
        elif each.startswith("--out="):
            out = each[len("--out="):]
    return command, out


def main(argv=None):
    """
    Command line entry point

    :param argv: arguments without the program name (optional, default: sys.argv[1:])
    :return: 0 on success, 1 on a failed check or uncertified result, 2 on a usage or config error
    :rtype: int
    """
    if argv is None:
        argv = sys.argv[1:]
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        code = EXIT_OK if e.code in (0, None) else EXIT_USAGE
        command, out = _scan_command_line(argv)
        manifest = Manifest(command, {"argv": list(argv)})
        manifest.exit_code = code
        manifest.emit(out)
        return code
    logger = ScriptLog(consolelevel=verbosity_level(args.verbose))
    manifest = Manifest(args.command, {})
    try:
        config = RunConfig(args)
        manifest.config = config.to_dict()
        if config.threads is not None:
            set_threads(config.threads)
        code, paths = args.handler(config)
        for path in paths:
            manifest.add_output(path)
    except USAGE_ERRORS as e:
        sys.stderr.write(str(e) + "\n")
        code = EXIT_USAGE
    except ASSERTION_ERRORS as e:
        sys.stderr.write(str(e) + "\n")
        code = EXIT_ASSERTION
    except CustomException as e:
        sys.stderr.write(str(e) + "\n")
        code = EXIT_ASSERTION
    finally:
        set_threads(None)
    manifest.exit_code = code
    try:
        manifest.emit(args.out)
    finally:
        logger.close()
    return code
