"""Command-line interface: recognize | generate | classify | verify."""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import tempfile

from . import coxeter, generate, graphs, oracle, recognition

log = logging.getLogger("mirrorgraphs")

EXIT_OK = 0
EXIT_REJECT = 1
EXIT_INVALID = 2


def _write_output(path: str | None, payload: dict) -> None:
    text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if path is None:
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _read_json(path: str):
    with open(path, "r", encoding="utf-8") as handle:
        return json.load(handle)


def _load_graph_file(path: str) -> graphs.Graph:
    with open(path, "r", encoding="utf-8") as handle:
        return graphs.load_graph(handle)


def _full_certificate_payload(g: graphs.Graph,
                              cert: recognition.MirrorCertificate) -> dict:
    payload = recognition.certificate_payload(cert)
    matrix = coxeter.extract_coxeter_matrix(g, cert)
    ctype = coxeter.classify(matrix)
    payload["coxeter_matrix"] = matrix.payload()
    payload.update(ctype.payload())
    payload["order_check"] = coxeter.check_order(g, ctype)
    return payload


def cmd_recognize(args) -> int:
    try:
        g = _load_graph_file(args.input)
    except (OSError, graphs.ParseError, graphs.ValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    result = recognition.recognize(g)
    if args.oracle:
        try:
            brute = oracle.brute_force_mirror(g)
        except oracle.BudgetExceeded as exc:
            print(f"error: oracle budget exceeded: {exc}", file=sys.stderr)
            return EXIT_INVALID
        accepted = isinstance(result, recognition.MirrorCertificate)
        if brute.is_mirror != accepted:
            print(f"error: oracle disagrees: recognize={accepted} "
                  f"brute-force={brute.is_mirror}", file=sys.stderr)
            return EXIT_INVALID
        print(f"oracle agrees: mirror={brute.is_mirror}", file=sys.stderr)
    if isinstance(result, recognition.RejectReason):
        _write_output(args.output, recognition.reject_payload(result))
        log.info("reject at stage %s", result.stage)
        return EXIT_REJECT
    try:
        payload = _full_certificate_payload(g, result)
    except (coxeter.StructureError, coxeter.NotFiniteType) as exc:
        print(f"error: internal consistency failure: {exc}", file=sys.stderr)
        return EXIT_INVALID
    _write_output(args.output, payload)
    log.info("accept: type %s", payload["type"])
    return EXIT_OK


def cmd_generate(args) -> int:
    try:
        if args.type is not None:
            g = generate.named_example(args.type, budget=args.budget)
            payload = graphs.graph_payload(g)
        elif args.matrix is not None:
            matrix = coxeter.CoxeterMatrix.from_rows(_read_json(args.matrix))
            g = generate.generate_cayley(matrix, budget=args.budget)
            payload = graphs.graph_payload(g)
        else:
            arrangement = generate.arrangement_from_payload(_read_json(args.normals))
            g, signs = generate.tope_graph(arrangement, seed=args.seed,
                                           budget=args.budget)
            payload = graphs.graph_payload(g)
            payload["sign_vectors"] = signs
    except (OSError, json.JSONDecodeError, ValueError,
            coxeter.NotFiniteType,
            generate.ArrangementError, generate.UnknownName,
            generate.NotReflectionArrangement, generate.GroupBudgetExceeded,
            generate.DegeneracyUnresolved, generate.NumericalCollision) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    _write_output(args.output, payload)
    log.info("generated graph with %d vertices", payload["n"])
    return EXIT_OK


def cmd_classify(args) -> int:
    try:
        matrix = coxeter.CoxeterMatrix.from_rows(_read_json(args.matrix))
    except (OSError, json.JSONDecodeError, TypeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    try:
        ctype = coxeter.classify(matrix)
    except coxeter.NotFiniteType as exc:
        _write_output(args.output, {"finite": False, "detail": str(exc),
                                    "component": list(exc.component)})
        return EXIT_OK
    payload = {"finite": True}
    payload.update(ctype.payload())
    _write_output(args.output, payload)
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        g = _load_graph_file(args.input)
        payload = _read_json(args.certificate)
    except (OSError, json.JSONDecodeError, graphs.ParseError,
            graphs.ValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    if not isinstance(payload, dict) or "verdict" not in payload:
        print("error: certificate must be an object with a verdict", file=sys.stderr)
        return EXIT_INVALID
    if payload["verdict"] == "not-mirror":
        result = recognition.recognize(g)
        stage = payload.get("reason", {}).get("stage")
        if isinstance(result, recognition.RejectReason) and result.stage == stage:
            print("certificate verified: reject reproduced", file=sys.stderr)
            return EXIT_OK
        print("certificate check failed: reject not reproduced", file=sys.stderr)
        return EXIT_REJECT
    try:
        cert = recognition.certificate_from_payload(g, payload)
    except (KeyError, IndexError, TypeError, ValueError) as exc:
        print(f"error: malformed certificate: {exc}", file=sys.stderr)
        return EXIT_INVALID
    ok, failing = recognition.verify_certificate(g, cert)
    if not ok:
        print(f"certificate check failed: {failing}", file=sys.stderr)
        return EXIT_REJECT
    if "coxeter_matrix" in payload:
        matrix = coxeter.extract_coxeter_matrix(g, cert)
        if matrix.payload() != payload["coxeter_matrix"]:
            print("certificate check failed: coxeter-matrix", file=sys.stderr)
            return EXIT_REJECT
        ctype = coxeter.classify(matrix)
        if (payload.get("type") != ctype.name
                or payload.get("predicted_order") != ctype.order
                or payload.get("order_check") != coxeter.check_order(g, ctype)):
            print("certificate check failed: coxeter-type", file=sys.stderr)
            return EXIT_REJECT
    print("certificate verified", file=sys.stderr)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mirrorgraphs",
        description="Recognize mirror graphs and generate Coxeter/arrangement families.")
    parser.add_argument("-v", "--verbose", action="store_true",
                        help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    rec = sub.add_parser("recognize", help="recognize a graph and emit a certificate")
    rec.add_argument("--input", required=True, help="graph JSON file")
    rec.add_argument("--output", default=None, help="certificate path (default stdout)")
    rec.add_argument("--oracle", action="store_true",
                     help="cross-check the verdict against the brute-force oracle")
    rec.set_defaults(func=cmd_recognize)

    gen = sub.add_parser("generate", help="generate a Cayley or tope graph")
    source = gen.add_mutually_exclusive_group(required=True)
    source.add_argument("--type", default=None,
                        help="type or example name (A3, I2_6, Q4, permutahedron, ...)")
    source.add_argument("--matrix", default=None, help="Coxeter matrix JSON file")
    source.add_argument("--normals", default=None, help="arrangement JSON file")
    gen.add_argument("--budget", type=int, default=generate.DEFAULT_BUDGET,
                     help="group element cap")
    gen.add_argument("--seed", type=int, default=0,
                     help="seed for the generic point of a tope graph")
    gen.add_argument("--output", required=True, help="graph JSON path")
    gen.set_defaults(func=cmd_generate)

    cls = sub.add_parser("classify", help="classify a Coxeter matrix")
    cls.add_argument("--matrix", required=True, help="Coxeter matrix JSON file")
    cls.add_argument("--output", default=None, help="verdict path (default stdout)")
    cls.set_defaults(func=cmd_classify)

    ver = sub.add_parser("verify", help="re-check a certificate against a graph")
    ver.add_argument("--input", required=True, help="graph JSON file")
    ver.add_argument("--certificate", required=True, help="certificate JSON file")
    ver.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(message)s", stream=sys.stderr)
    for attr in ("budget",):
        if getattr(args, attr, 1) is not None and getattr(args, attr, 1) <= 0:
            print(f"error: --{attr} must be positive", file=sys.stderr)
            return EXIT_INVALID
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
