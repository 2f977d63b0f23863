"""Command-line front end.

Subcommands: ``analyze`` (full report for one instance), ``dot`` (Hasse
diagram export), ``verify`` (rule suite over a corpus), ``corpus`` (print
the instance list).  Machine-readable output goes to stdout behind a
single version header line; a short human summary goes to stderr.  Output
is byte-identical across runs for the same inputs.

Exit codes: 0 success / all rules pass, 1 rule failure, 2 usage or parse
error, 3 size cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__, modules, oracle, rings, scalars, topology, verifier
from .modules import SizeCapExceeded

HEADER = f"# qdivtop {__version__}"

EXIT_OK = 0
EXIT_RULE_FAILURE = 1
EXIT_USAGE = 2
EXIT_CAP = 3


def parse_spec(text: str):
    """Parse an instance spec; module specs and bare ring expressions both
    round-trip through their canonical form."""
    s = text.strip()
    if s.startswith("ring:") or ":" in s:
        return modules.build_module(s)
    return modules.ring_cyclic(rings.build_ring(s))


def _mask_labels(space, mask):
    return space.label_set(mask)


def _analyze_payload(E, with_oracle: bool):
    space = topology.build_space(E)
    classes = modules.scalar_classes(E)
    sep = topology.separation_report(space)
    conn = topology.connectivity_report(space)
    second = modules.is_second_module(E)
    ann = modules.annihilator(E)
    if isinstance(ann, scalars.Scalar):
        ann_text = str(ann)
    else:
        ann_text = "{" + ",".join(
            sorted(E.residue_ring.format_element(x) for x in ann)
        ) + "}"

    payload = {
        "spec": E.spec_text,
        "domain": E.domain_label,
        "order": E.order,
        "annihilator": ann_text,
        "second_module": second,
        "note": "second module (empty space)" if second else None,
        "quasi_second": modules.is_quasi_second(E),
        "points": space.n,
        "classes": [
            {
                "label": c.label,
                "members": [E.residue_ring.format_element(m) for m in c.members],
                "image": c.image.element_strs(),
                "image_size": c.image.size,
            }
            for c in classes
        ],
        "basis": {
            space.labels[i]: _mask_labels(space, topology.basis_set(space, i))
            for i in range(space.n)
        },
        "hasse": [
            [space.labels[i], space.labels[j]] for i, j in topology.hasse_edges(space)
        ],
        "maximal_classes": _mask_labels(space, topology.maximal_classes(space)),
        "minimal_classes": _mask_labels(space, topology.minimal_classes(space)),
        "isolated_points": _mask_labels(space, topology.isolated_points(space)),
        "separation": {
            "T0": sep.t0,
            "T1": sep.t1,
            "T2": sep.t2,
            "T3": sep.t3,
            "discrete": sep.discrete,
            "metrizable": sep.metrizable,
            "empty": sep.empty,
        },
        "connectivity": {
            "connected": conn.connected,
            "hyperconnected": conn.hyperconnected,
            "ultraconnected": conn.ultraconnected,
            "nested": conn.nested,
            "noetherian": conn.noetherian,
            "empty": conn.empty,
        },
        "compactness": {
            "compact": True,
            "lindelof": True,
            "minimal_element_count": len(
                _mask_labels(space, topology.minimal_classes(space))
            ),
        },
        "countability": {"first_countable": True, "second_countable": True},
    }
    if E.base_ring is not None:
        payload["ring_order"] = E.base_ring.order
    try:
        preds = modules.structural_predicates(E)
        payload["predicates"] = {
            "divisible": preds.divisible,
            "simple": preds.simple,
            "uniserial": preds.uniserial,
            "multiplication": preds.multiplication,
            "comultiplication": preds.comultiplication,
            "semiprime_annihilator": preds.semiprime_annihilator,
        }
    except SizeCapExceeded:
        payload["predicates"] = None
    split = modules.weak_idempotent_split(E)
    if split.kind == "split":
        payload["weak_idempotent_split"] = {
            "idempotent": E.residue_ring.format_element(split.idempotent),
            "parts": [p.element_strs() for p in split.parts],
        }
    else:
        payload["weak_idempotent_split"] = split.kind

    if with_oracle:
        if space.n > oracle.OPEN_ENUM_CAP:
            payload["oracle"] = {"skipped": "beyond the oracle point cap"}
        else:
            topo = oracle.enumerate_open_sets(space)
            axioms = {}
            for name in oracle.AXIOMS:
                if name == "T5" and space.n > oracle.T5_CAP:
                    axioms[name] = None
                    continue
                axioms[name] = oracle.oracle_axiom(topo, name)
            agreement = {
                "T0": axioms["T0"] == sep.t0,
                "T1": axioms["T1"] == sep.t1,
                "T2": axioms["T2"] == sep.t2,
                "T3": axioms["T3"] == sep.t3,
                "discrete": axioms["discrete"] == sep.discrete,
                "connected": axioms["connected"] == conn.connected,
                "hyperconnected": axioms["hyperconnected"] == conn.hyperconnected,
                "ultraconnected": axioms["ultraconnected"] == conn.ultraconnected,
            }
            checks = oracle.oracle_structure_checks(topo, space)
            payload["oracle"] = {
                "opens_count": len(topo.opens),
                "axioms": axioms,
                "agreement": agreement,
                "structure": {
                    "minimal_neighborhoods_ok": checks.minimal_neighborhoods_ok,
                    "closure_union_ok": checks.closure_union_ok,
                    "open_dense_contains_maximal_ok": checks.open_dense_contains_maximal_ok,
                },
                "related_rules": {
                    "T1": "R2",
                    "discrete": "R3",
                    "T3": "R17",
                    "hyperconnected": "R5",
                },
            }
    return payload


def _emit(payload, compact: bool):
    print(HEADER)
    if compact:
        print(json.dumps(payload, separators=(",", ":")))
    else:
        print(json.dumps(payload, indent=2))


def cmd_analyze(args) -> int:
    E = parse_spec(args.spec)
    payload = _analyze_payload(E, args.oracle)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(HEADER + "\n")
            fh.write(json.dumps(payload, indent=2) + "\n")
        print(f"wrote {args.out}", file=sys.stderr)
    else:
        _emit(payload, args.json)
    sep = payload["separation"]
    print(
        f"{payload['spec']}: {payload['points']} points, "
        f"T1={sep['T1']}, quasi_second={payload['quasi_second']}",
        file=sys.stderr,
    )
    return EXIT_OK


def cmd_dot(args) -> int:
    E = parse_spec(args.spec)
    space = topology.build_space(E)
    lines = ["digraph quasi_divisor_space {", f"  // spec: {E.spec_text}"]
    if space.n == 0:
        lines.append("  // empty space (second module)")
    for i in range(space.n):
        size = space.classes[i].image.size
        lines.append(f'  n{i} [label="{space.labels[i]} |aE|={size}"];')
    for i, j in topology.hasse_edges(space):
        lines.append(f"  n{i} -> n{j};")
    lines.append("}")
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
        print(f"wrote {args.out}", file=sys.stderr)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _corpus_spec_from_args(args) -> verifier.CorpusSpec:
    kwargs = {}
    if args.max_order is not None:
        kwargs["element_cap"] = args.max_order
        kwargs["ring_order_cap"] = min(args.max_order, 64)
    if args.summands is not None:
        kwargs["max_summands"] = args.summands
    return verifier.CorpusSpec(**kwargs)


def cmd_verify(args) -> int:
    spec = _corpus_spec_from_args(args)
    rule_ids = None
    if args.rules:
        rule_ids = [r.strip() for r in args.rules.split(",") if r.strip()]
    report = verifier.run_all(spec, rule_ids=rule_ids)
    payload = report.payload()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(HEADER + "\n")
            fh.write(json.dumps(payload, indent=2) + "\n")
        print(f"wrote {args.out}", file=sys.stderr)
    else:
        _emit(payload, args.json)
    for entry in payload["rules"]:
        print(
            f"{entry['rule_id']}: pass={entry['pass']} fail={entry['fail']} "
            f"vacuous={entry['vacuous']}",
            file=sys.stderr,
        )
    summary = "OK" if report.total_failures == 0 else "FAILURES"
    print(
        f"verify: {summary} ({report.total_failures} failures over "
        f"{report.corpus_size} instances)",
        file=sys.stderr,
    )
    return EXIT_OK if report.total_failures == 0 else EXIT_RULE_FAILURE


def cmd_corpus(args) -> int:
    spec = _corpus_spec_from_args(args)
    for inst in verifier.generate_corpus(spec):
        print(f"{inst.kind}\t{inst.spec_text}")
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qdivtop",
        description="quasi divisor topologies of finite modules",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_analyze = sub.add_parser("analyze", help="analyze one module or ring spec")
    p_analyze.add_argument("spec")
    p_analyze.add_argument("--oracle", action="store_true")
    p_analyze.add_argument("--json", action="store_true", help="compact payload")
    p_analyze.add_argument("--out")
    p_analyze.set_defaults(fn=cmd_analyze)

    p_dot = sub.add_parser("dot", help="export the Hasse diagram as a digraph")
    p_dot.add_argument("spec")
    p_dot.add_argument("--out")
    p_dot.set_defaults(fn=cmd_dot)

    p_verify = sub.add_parser("verify", help="run the rule suite over a corpus")
    p_verify.add_argument("--rules", help="comma-separated rule ids, e.g. R2,R14")
    p_verify.add_argument("--max-order", type=int, default=None)
    p_verify.add_argument("--summands", type=int, default=None)
    p_verify.add_argument("--out")
    p_verify.add_argument("--json", action="store_true")
    p_verify.set_defaults(fn=cmd_verify)

    p_corpus = sub.add_parser("corpus", help="print the corpus instance list")
    p_corpus.add_argument("--max-order", type=int, default=None)
    p_corpus.add_argument("--summands", type=int, default=None)
    p_corpus.set_defaults(fn=cmd_corpus)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.fn(args)
    except (SizeCapExceeded, rings.RingCapExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def console_main():
    raise SystemExit(main())


if __name__ == "__main__":
    console_main()
