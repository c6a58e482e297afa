"""permstab command-line interface.

    permstab <eval|grad|maximize|certify|oracle-check> --matrix PATH [options]

Every command writes one JSON report. Exit status: 0 on success, 2 when a
certificate fails (or the polynomial is zero, for maximize and certify),
1 on usage or parse errors.
"""
import argparse
import sys
import time

import numpy as np

from .core_eval import DomainError, eval_F_bruteforce, eval_F_fast, grad_F, grad_log_F
from .matrix_io import ParseError, inputs_digest, parse_lambda, parse_matrix, render_report
from .simplex_opt import MaximizeConfig, maximize_log_F
from .stability import CertifyConfig, certify_all

EXIT_OK, EXIT_USAGE, EXIT_CERT = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser():
    parser = _Parser(prog="permstab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in ("eval", "grad", "maximize", "certify", "oracle-check"):
        p = sub.add_parser(name)
        p.add_argument("--matrix", required=True, help="CSV or .json matrix file")
        p.add_argument("--lambda", dest="lam", help="comma list or one-row CSV (default all ones)")
        p.add_argument("--tol", type=float, default=1e-9)
        p.add_argument("--samples", type=int, default=1000)
        p.add_argument("--seed", type=int, default=42)
        p.add_argument("--max-iters", type=int, default=10000)
        p.add_argument("--gap-tol", type=float, default=1e-8)
        p.add_argument("--output", help="report path (default stdout)")
    return parser


def _point(args, A):
    if args.lam is None:
        return np.ones(A.N)
    return parse_lambda(args.lam, A.N)


def cmd_eval(args, A):
    lam = _point(args, A)
    value = eval_F_fast(A, lam)
    results = {"lambda": lam.tolist(), "value": value.value, "zero_polynomial": value.zero_flag}
    return {"lambda": lam.tolist()}, results, "ok", EXIT_OK


def cmd_grad(args, A):
    lam = _point(args, A)
    results = {"lambda": lam.tolist(), "grad_F": grad_F(A, lam).tolist(),
               "zero_polynomial": A.is_zero}
    try:
        results["grad_log_F"] = grad_log_F(A, lam).tolist()
    except DomainError:
        results["grad_log_F"] = None
    return {"lambda": lam.tolist()}, results, "ok", EXIT_OK


def cmd_maximize(args, A):
    config = MaximizeConfig(max_iters=args.max_iters, gap_tol=args.gap_tol)
    inputs = {"max_iters": config.max_iters, "gap_tol": config.gap_tol}
    if A.is_zero:
        return inputs, {"zero_polynomial": True}, "zero_polynomial", EXIT_CERT
    report = maximize_log_F(A, config)
    results = {"zero_polynomial": False, **report.to_dict()}
    verdict = "converged" if report.converged else "not_converged"
    return inputs, results, verdict, EXIT_OK if report.converged else EXIT_CERT


def cmd_certify(args, A):
    config = CertifyConfig(samples=args.samples, seed=args.seed, tol=args.tol)
    inputs = {"samples": config.samples, "tol": config.tol,
              "imag_tol": config.imag_tol, "real_tol": config.real_tol}
    report = certify_all(A, config)
    results = report.to_dict()
    return inputs, results, report.verdict, EXIT_OK if report.passed else EXIT_CERT


def cmd_oracle_check(args, A):
    rng = np.random.default_rng(args.seed)
    worst = 0.0
    for _ in range(args.samples):
        lam = rng.random(A.N)
        fast = eval_F_fast(A, lam).value
        brute = eval_F_bruteforce(A, lam).value
        worst = max(worst, abs(fast - brute) / max(1.0, abs(brute)))
    passed = worst <= args.tol
    results = {"samples": args.samples, "max_relative_deviation": worst, "tol": args.tol}
    inputs = {"samples": args.samples, "tol": args.tol}
    return inputs, results, "pass" if passed else "fail", EXIT_OK if passed else EXIT_CERT


COMMANDS = {
    "eval": cmd_eval,
    "grad": cmd_grad,
    "maximize": cmd_maximize,
    "certify": cmd_certify,
    "oracle-check": cmd_oracle_check,
}


def run(argv=None):
    """Execute one command; returns (exit status, report dict or None)."""
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    try:
        A = parse_matrix(args.matrix)
        inputs, results, verdict, status = COMMANDS[args.command](args, A)
    except ParseError as exc:
        print(f"permstab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE, None
    inputs = {"command": args.command, "seed": args.seed, **inputs}
    report = {
        "command": args.command,
        "inputs_digest": inputs_digest(A, **inputs),
        "matrix_shape": [A.M, A.N],
        "seed": args.seed,
        "results": results,
        "verdict": verdict,
        "wall_time": time.perf_counter() - start,
    }
    text = render_report(report)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status, report


def main(argv=None):
    status, _ = run(argv)
    return status


if __name__ == "__main__":
    sys.exit(main())
