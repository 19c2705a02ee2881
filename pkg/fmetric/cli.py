"""
Command line front end.

    dist              d_m between two measure spec files
    moments           moment table of a measure spec file
    lipschitz         d_m(mu_{1/delta1}, mu_{1/delta2}) against |delta1 - delta2|
    cauchy            pairwise d_m over members of the Cauchy sequence
    smoothness-probe  second difference quotients of phi_0

Output is CSV on stdout, diagnostics go to stderr.
Exit codes: 0 success, 1 input or usage error, 2 divergence verdict.
"""

import csv
import sys
import logging
import argparse

from .counterexample import (cauchySequence, loadMomentSpecJSON, phi0SmoothnessProbe,
                             verifyLipschitz)
from .errors import DimensionMismatchError, DivergentMetricError, FourierMetricError
from .measure import MOMENT_TOL, loadMeasureJSON
from .metric import DEFAULT_TOL, MetricEstimate, SupremumSearch, dm
from .multiindex import enumerateUpto

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_DIVERGENT = 2

DEFAULT_N_MAX = 20

logger = logging.getLogger("fmetric.CLI")

class UsageError(FourierMetricError):

    pass

class ArgumentParser(argparse.ArgumentParser):

    #usage errors exit with EXIT_INPUT instead of argparse's 2
    def error(self, message):

        raise UsageError(message)

def _format(value):

    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return "%.17g" % (value + 0.0)
    return str(value)

class CSVOutput():

    """
    Writes rows to a stream with every float in round trip precision.
    """

    def __init__(self, stream):

        self.stream = stream
        self.writer = csv.writer(stream, lineterminator="\n")

    def line(self, text):

        self.stream.write(text + "\n")

    def row(self, values):

        self.writer.writerow([_format(v) for v in values])

def positiveInt(value):

    n = int(value)
    if n < 1:
        raise argparse.ArgumentTypeError("expected a positive integer, got %s" % value)
    return n

def positiveFloat(value):

    x = float(value)
    if not x > 0:
        raise argparse.ArgumentTypeError("expected a positive number, got %s" % value)
    return x

def cmdDist(args, out):

    mu = loadMeasureJSON(args.spec_a)
    nu = loadMeasureJSON(args.spec_b)
    if mu.dim != nu.dim:
        raise DimensionMismatchError("measures live in R^%d and R^%d" % (mu.dim, nu.dim))
    search = SupremumSearch(momentTol=args.moment_tol)
    estimate = dm(mu, nu, args.m, args.tol, search)
    out.row(MetricEstimate.header(mu.dim))
    out.row(estimate.toRow())
    return EXIT_OK

def cmdMoments(args, out):

    mu = loadMeasureJSON(args.spec)
    #nothing is written unless every moment is available
    table = []
    for beta in enumerateUpto(mu.dim, args.order):
        value = mu.moment(beta)
        table.append([str(beta), float(value.real), float(value.imag)])
    out.row(["beta", "re", "im"])
    for values in table:
        out.row(values)
    return EXIT_OK

def _momentSpec(args):

    return loadMomentSpecJSON(args.moments, m=args.m, dim=args.d)

def cmdLipschitz(args, out):

    spec = _momentSpec(args)
    report = verifyLipschitz(spec, args.delta1, args.delta2, args.tol)
    out.row(["estimate", "bound", "pass"])
    out.row([float(report.estimate), float(report.bound), report.passed])
    return EXIT_OK

def cmdCauchy(args, out):

    spec = _momentSpec(args)
    measures = [cauchySequence(spec, j) for j in args.j]
    out.row(["j", "k", "dm", "bound", "pass"])
    for a in range(len(args.j)):
        for b in range(a + 1, len(args.j)):
            j, k = args.j[a], args.j[b]
            value = dm(measures[a], measures[b], spec.m, args.tol).value
            bound = abs(1.0 / j - 1.0 / k)
            out.row([j, k, float(value), bound, value <= bound + args.tol])
    return EXIT_OK

def cmdSmoothnessProbe(args, out):

    trace = phi0SmoothnessProbe(args.m, args.n_max)
    out.row(["n", "h", "quotient", "branch"])
    for n, h, quotient, branch in trace.rows:
        out.row([n, h, quotient, branch.value])
    out.line("# limit_a=%s limit_b=%s gap=%s" % (_format(trace.limitA), _format(trace.limitB), _format(trace.gap)))
    return EXIT_OK

def buildParser():

    parser = ArgumentParser(prog="fmetric", description="Fourier based metrics between complex measures")
    parser.add_argument("--verbose", action="store_true", default=False, required=False)
    sub = parser.add_subparsers(dest="command", metavar="command")
    sub.required = True

    p = sub.add_parser("dist", help="estimate d_m between two measure specs")
    p.add_argument("spec_a")
    p.add_argument("spec_b")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--tol", type=positiveFloat, default=DEFAULT_TOL)
    p.add_argument("--moment-tol", type=positiveFloat, default=MOMENT_TOL)
    p.set_defaults(handler=cmdDist)

    p = sub.add_parser("moments", help="list the moments of a measure spec")
    p.add_argument("spec")
    p.add_argument("--order", type=int, required=True)
    p.set_defaults(handler=cmdMoments)

    for name, handler, text in (("lipschitz", cmdLipschitz, "compare d_m of two family members with |delta1 - delta2|"),
                                ("cauchy", cmdCauchy, "pairwise d_m along the Cauchy sequence")):
        p = sub.add_parser(name, help=text)
        p.add_argument("--moments", required=True, help="moment spec file (phi_delta schema, delta not needed)")
        p.add_argument("--m", type=int, default=None)
        p.add_argument("--d", type=int, default=None)
        p.add_argument("--tol", type=positiveFloat, default=DEFAULT_TOL)
        p.set_defaults(handler=handler)
        if name == "lipschitz":
            p.add_argument("--delta1", type=float, required=True)
            p.add_argument("--delta2", type=float, required=True)
        else:
            p.add_argument("--j", type=positiveInt, nargs="+", required=True)

    p = sub.add_parser("smoothness-probe", help="difference quotients of phi_0 along two scale sequences")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n-max", type=positiveInt, default=DEFAULT_N_MAX)
    p.set_defaults(handler=cmdSmoothnessProbe)

    return parser

def run(args, stream=None):

    """
    Execute parsed arguments. Returns the exit code.
    """

    out = CSVOutput(stream if stream is not None else sys.stdout)
    try:
        return args.handler(args, out)
    except DivergentMetricError as e:
        logger.debug(str(e))
        if e.beta is not None:
            out.line("divergent beta=%s" % e.beta)
        else:
            out.line("divergent exponent=%s" % _format(float(e.exponent)))
        return EXIT_DIVERGENT
    except (FourierMetricError, ValueError, TypeError) as e:
        print("error: %s" % str(e), file=sys.stderr)
        return EXIT_INPUT

def main(argv=None, stream=None):

    parser = buildParser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        parser.print_usage(sys.stderr)
        print("%s: error: %s" % (parser.prog, str(e)), file=sys.stderr)
        return EXIT_INPUT
    except SystemExit as e:
        #--help
        return e.code if isinstance(e.code, int) else EXIT_INPUT

    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARN)
    return run(args, stream)
