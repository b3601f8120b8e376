"""
Perfect State Transfer Toolkit
Command-line front end for simulating, certifying and synthesizing perfect state
transfer of continuous-time quantum walks on graphs with a potential.

Exit codes: 0 affirmative result, 1 well-formed negative result, 2 input or usage error.
"""
import argparse
import json
import logging
import sys

from config import (
    LOG_LEVEL,
    MAX_DENOMINATOR,
    NEWTON_TOL,
    RATIONAL_TOL,
    SCAN_BOX,
    SCAN_T_MAX,
    SYNTH_D_MAX,
    SYNTH_SCALE,
    SYNTH_SEEDS,
)
from services.report_generator import (
    generate_certificate_report,
    generate_scan_report,
    generate_synthesis_report,
    save_report_to_file,
)
from utils.certifier import certify
from utils.errors import InputError, PSTError, SynthesisFailure
from utils.evolution import fidelity, max_fidelity, trace_frame
from utils.graph_core import build_hamiltonian
from utils.graph_io import dump_json, graph_to_dict, load_graph_json, write_text, write_trace_csv
from utils.paths import p3_graph, p3_instance, path_scan
from utils.products import product_pst
from utils.spectral import decompose
from utils.twin_synthesis import synthesize

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT = 0, 1, 2


def _emit(args, payload: dict) -> None:
    text = dump_json(payload)
    out = getattr(args, "out", None)
    if out:
        write_text(text, out)
    else:
        print(text)


def _graph_source(args) -> str:
    source = getattr(args, "graph", None)
    if not source:
        raise InputError(f"'{args.command}' needs a graph file (--graph/-g)")
    return source


def _save_pdf(args, pdf_bytes: bytes) -> None:
    if getattr(args, "pdf", None):
        save_report_to_file(pdf_bytes, args.pdf)


def cmd_simulate(args) -> int:
    g, q = load_graph_json(_graph_source(args))
    d = decompose(build_hamiltonian(g, q))
    record = max_fidelity(d, args.source, args.target, args.t_max, args.samples)
    if args.trace_out:
        write_trace_csv(trace_frame(d, args.source, args.target, args.t_max, args.samples), args.trace_out)
    _emit(args, record.to_dict())
    return EXIT_OK


def cmd_certify(args) -> int:
    g, q = load_graph_json(_graph_source(args))
    d = decompose(build_hamiltonian(g, q))
    certificate = certify(d, args.source, args.target, args.max_den, args.tol)
    payload = certificate.to_dict()
    _emit(args, payload)
    _save_pdf(args, generate_certificate_report(payload, graph_to_dict(g, q)))
    return EXIT_OK if certificate.certified else EXIT_NEGATIVE


def cmd_p3(args) -> int:
    inst = p3_instance(args.k, args.l)
    g, q = p3_graph(inst)
    payload = inst.to_dict()
    payload["fidelity"] = fidelity(decompose(build_hamiltonian(g, q)), 0, 2, inst.t)
    _emit(args, payload)
    return EXIT_OK


def cmd_synth_twin(args) -> int:
    g, _ = load_graph_json(_graph_source(args))
    try:
        result = synthesize(g, args.source, args.target, d_max=args.d_max, seeds=args.seeds,
                            tol=args.tol, seed=getattr(args, "seed", 0), scale=args.scale)
    except SynthesisFailure as e:
        _emit(args, {"status": "failed", "message": str(e), "attempts": e.attempts})
        return EXIT_NEGATIVE
    payload = result.to_dict()
    payload["status"] = "synthesized"
    payload["graph"] = graph_to_dict(g, result.potential)
    _emit(args, payload)
    _save_pdf(args, generate_synthesis_report(payload))
    return EXIT_OK


def cmd_product(args) -> int:
    g1, q1 = load_graph_json(args.g1)
    g2, q2 = load_graph_json(args.g2)
    t = args.time
    if t is None:
        certificate = certify(decompose(build_hamiltonian(g1, q1)), args.from1, args.to1)
        if not certificate.certified:
            _emit(args, {"status": "failed", "message": "first factor has no certified transfer",
                         "certificate": certificate.to_dict()})
            return EXIT_NEGATIVE
        t = certificate.transfer_time
    instance = product_pst(g1, q1, args.from1, args.to1, g2, q2, args.from2, args.to2, t)
    _emit(args, instance.to_dict())
    return EXIT_OK


def cmd_path_scan(args) -> int:
    report = path_scan(args.n, args.trials, t_max=args.t_max, sampler_seed=getattr(args, "seed", 0),
                       box=args.box, samples=args.samples, symmetric=not args.asymmetric)
    if args.trials_out:
        write_trace_csv(report.trial_table, args.trials_out)
    payload = report.to_dict()
    _emit(args, payload)
    _save_pdf(args, generate_scan_report(payload, report.trial_table.to_dict("records")))
    return EXIT_OK if report.all_refused and report.below_threshold else EXIT_NEGATIVE


def _common_flags() -> argparse.ArgumentParser:
    # SUPPRESS lets the flags appear before or after the command without clobbering each other
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--graph", "-g", default=argparse.SUPPRESS, help="graph JSON file")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="seed for all randomness (default 0)")
    common.add_argument("--out", default=argparse.SUPPRESS, help="write the JSON result to this file")
    common.add_argument("--verbose", "-v", action="store_true", default=argparse.SUPPRESS)
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_flags()
    parser = argparse.ArgumentParser(prog="pst", description=__doc__.strip().splitlines()[0], parents=[common])
    commands = parser.add_subparsers(dest="command", required=True)

    simulate = commands.add_parser("simulate", parents=[common], help="maximum transfer fidelity on [0, t_max]")
    simulate.add_argument("--from", dest="source", type=int, required=True)
    simulate.add_argument("--to", dest="target", type=int, required=True)
    simulate.add_argument("--t-max", type=float, default=SCAN_T_MAX)
    simulate.add_argument("--samples", type=int, default=None)
    simulate.add_argument("--trace-out", default=None, help="CSV file for the fidelity trace")
    simulate.set_defaults(handler=cmd_simulate)

    cert = commands.add_parser("certify", parents=[common], help="decide transfer from the spectrum")
    cert.add_argument("--from", dest="source", type=int, required=True)
    cert.add_argument("--to", dest="target", type=int, required=True)
    cert.add_argument("--max-den", type=int, default=MAX_DENOMINATOR)
    cert.add_argument("--tol", type=float, default=RATIONAL_TOL)
    cert.add_argument("--pdf", default=None)
    cert.set_defaults(handler=cmd_certify)

    p3 = commands.add_parser("p3", parents=[common], help="member (k, l) of the P3 family")
    p3.add_argument("--k", type=int, required=True)
    p3.add_argument("--l", type=int, required=True)
    p3.set_defaults(handler=cmd_p3)

    synth = commands.add_parser("synth-twin", parents=[common], help="synthesize a potential for twin vertices")
    synth.add_argument("--from", dest="source", type=int, required=True)
    synth.add_argument("--to", dest="target", type=int, required=True)
    synth.add_argument("--d-max", type=int, default=SYNTH_D_MAX)
    synth.add_argument("--seeds", type=int, default=SYNTH_SEEDS)
    synth.add_argument("--scale", type=float, default=SYNTH_SCALE)
    synth.add_argument("--tol", type=float, default=NEWTON_TOL)
    synth.add_argument("--pdf", default=None)
    synth.set_defaults(handler=cmd_synth_twin)

    product = commands.add_parser("product", parents=[common], help="compose transfer on a Cartesian product")
    product.add_argument("--g1", required=True)
    product.add_argument("--g2", required=True)
    product.add_argument("--from1", type=int, required=True)
    product.add_argument("--to1", type=int, required=True)
    product.add_argument("--from2", type=int, required=True)
    product.add_argument("--to2", type=int, required=True)
    product.add_argument("--time", type=float, default=None,
                         help="shared transfer time (default: certified time of the first factor)")
    product.set_defaults(handler=cmd_product)

    scan = commands.add_parser("path-scan", parents=[common], help="random potential search on P_n endpoints")
    scan.add_argument("--n", type=int, required=True)
    scan.add_argument("--trials", type=int, default=1000)
    scan.add_argument("--t-max", type=float, default=SCAN_T_MAX)
    scan.add_argument("--box", type=float, default=SCAN_BOX)
    scan.add_argument("--samples", type=int, default=None)
    scan.add_argument("--asymmetric", action="store_true", help="sample unrestricted potentials")
    scan.add_argument("--trials-out", default=None, help="CSV file for the per-trial table")
    scan.add_argument("--pdf", default=None)
    scan.set_defaults(handler=cmd_path_scan)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_OK

    level = logging.DEBUG if getattr(args, "verbose", False) else getattr(logging, LOG_LEVEL, logging.WARNING)
    logging.basicConfig(
        level=level,
        format='%(asctime)s - %(levelname)s - %(message)s',
        stream=sys.stderr,
    )

    try:
        return args.handler(args)
    except (InputError, OSError, json.JSONDecodeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except PSTError as e:
        logger.error("%s failed: %s", args.command, e)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_NEGATIVE


if __name__ == "__main__":
    sys.exit(main())
