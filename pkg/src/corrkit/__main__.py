import argparse
import io
import json
import logging
import math
import os
import sys
from dataclasses import dataclass, field
from typing import Any, Callable, Optional

import corrkit._internal.coxeter as coxeter
import corrkit._internal.storage as storage
from corrkit._internal.constraints import PSD_TOLERANCE, BudgetExceededError, EnumerationBudget
from corrkit._internal.correlation import (
    gf_distinguish,
    link_matching,
    stable_isomorphism_verdict,
    tensor_match,
)
from corrkit._internal.default import named_graph
from corrkit._internal.graph_product import (
    GammaPrimeConstruction,
    GraphProduct,
    GraphProductError,
    construct_gamma_prime,
    coset_action,
    verify_phi_homomorphism,
    verify_phi_injective_on_ball,
    verify_projection,
)
from corrkit._internal.graphs import SimpleGraph, graphs_isomorphic, is_rigid
from corrkit._internal.models import (
    DecayRow,
    DeformRow,
    MomentRow,
    TnRow,
    VertexGroupKind,
    VertexGroupSpec,
)
from corrkit._internal.qfock import (
    FockSpace,
    Splitting,
    decay_profile,
    deformation_profile,
    moment_table,
    tn_sweep,
)
from corrkit._internal.utils import parse_syllables, parse_word, split_list
from corrkit.groups.subgroup import FiniteIndexSubgroupSpec

logger = logging.getLogger(__name__)

DEFAULT_LABEL = "F2"

EXIT_OK = 0
EXIT_FALSIFIED = 1
EXIT_ERROR = 2


@dataclass
class CommandRequest:
    """
    Attributes:
        command: subcommand, e.g. "graph rigid"
        inputs: positional inputs (paths, corpus names or descriptors)
        options: validated flags of the subcommand
        output: report destination, standard output if not specified
    """

    command: str
    inputs: list[str] = field(default_factory=list)
    options: dict[str, Any] = field(default_factory=dict)
    output: Optional[str] = None


@dataclass
class CommandResult:
    status: int
    report: Optional[str] = None
    error: Optional[str] = None


@dataclass
class _Rows:
    rows: list
    cls: type


Report = Any
Handler = Callable[[CommandRequest], tuple[int, Report]]


def resolve_graph(value: str) -> tuple[SimpleGraph, Optional[dict[str, str]]]:
    """
    A graph file (JSON, or DOT by extension) or a name from the built-in corpus.
    """
    if os.path.exists(value):
        return storage.load_graph(value)
    if value.endswith((".json", ".dot", ".gv")):
        raise ValueError(f"graph file {value!r} does not exist")
    return named_graph(value), None


def _labels_or_default(graph: SimpleGraph, labels: Optional[dict[str, str]]) -> dict[str, str]:
    labels = dict(labels or {})
    for vertex in graph.vertices:
        labels.setdefault(vertex, DEFAULT_LABEL)
    return labels


def _parse_label_option(value: Optional[str]) -> dict[str, str]:
    result = {}
    for item in split_list(value):
        vertex, sep, label = item.partition("=")
        if not sep or not vertex or not label:
            raise ValueError(f"malformed label {item!r}, expected vertex=label")
        result[vertex] = label
    return result


def _budget(req: CommandRequest) -> EnumerationBudget:
    return EnumerationBudget(max_elements=req.options.get("max_elements"))


def _single_input(req: CommandRequest) -> str:
    if len(req.inputs) != 1:
        raise ValueError(f"{req.command} takes exactly one input, got {len(req.inputs)}")
    return req.inputs[0]


def _two_inputs(req: CommandRequest) -> tuple[str, str]:
    if len(req.inputs) != 2:
        raise ValueError(f"{req.command} takes exactly two inputs, got {len(req.inputs)}")
    return req.inputs[0], req.inputs[1]


def _graph_rigid(req: CommandRequest) -> tuple[int, Report]:
    graph, _ = resolve_graph(_single_input(req))
    report = is_rigid(graph)
    return (EXIT_OK if report.rigid else EXIT_FALSIFIED), report.dict()


def _graph_iso(req: CommandRequest) -> tuple[int, Report]:
    first, second = _two_inputs(req)
    g1, labels1 = resolve_graph(first)
    g2, labels2 = resolve_graph(second)
    mapping = graphs_isomorphic(
        g1, g2, labels1, labels2, max_vertices=req.options.get("max_vertices")
    )
    return EXIT_OK, {"isomorphic": mapping is not None, "mapping": mapping}


def _coxeter_graph(req: CommandRequest) -> SimpleGraph:
    graph, _ = resolve_graph(req.options["graph"])
    return graph


def _coxeter_reduce(req: CommandRequest) -> tuple[int, Report]:
    graph = _coxeter_graph(req)
    word = coxeter.CoxeterWord(graph, parse_word(req.options["word"]))
    g = coxeter.normal_form(word)
    return EXIT_OK, {
        "normal_form": list(g.letters),
        "length": g.length,
        "input_reduced": coxeter.is_reduced(word),
    }


def _coxeter_equal(req: CommandRequest) -> tuple[int, Report]:
    graph = _coxeter_graph(req)
    w1 = coxeter.CoxeterWord(graph, parse_word(req.options["word"]))
    w2 = coxeter.CoxeterWord(graph, parse_word(req.options["word2"]))
    return EXIT_OK, {
        "equal": coxeter.equal(w1, w2),
        "normal_forms": [list(coxeter.normal_form(w).letters) for w in (w1, w2)],
    }


def _coxeter_growth(req: CommandRequest) -> tuple[int, Report]:
    graph = _coxeter_graph(req)
    counts = coxeter.growth_counts(graph, req.options["max_length"], _budget(req))
    return EXIT_OK, {"counts": counts}


def _gp_normal_form(req: CommandRequest) -> tuple[int, Report]:
    graph, file_labels = resolve_graph(req.options["graph"])
    labels = {**(file_labels or {}), **_parse_label_option(req.options.get("labels"))}
    product = GraphProduct.build(graph, _labels_or_default(graph, labels))
    element = product.normal_form(parse_syllables(req.options["syllables"]))
    return EXIT_OK, {"normal_form": element.to_list(), "syllable_length": len(element)}


def _construction(req: CommandRequest) -> GammaPrimeConstruction:
    value = _single_input(req)
    if os.path.exists(value):
        document = storage.load_construction(value)
    else:
        document = storage.loads_construction(value)
    inline = storage.construction_graph(document)
    graph, file_labels = inline if inline is not None else resolve_graph(document.graph)
    labels = _labels_or_default(graph, {**(file_labels or {}), **(document.labels or {})})
    if document.s1 not in graph:
        raise GraphProductError(f"s1 = {document.s1!r} is not a vertex of the graph")
    spec = VertexGroupSpec.cast(labels[document.s1])
    if spec.kind != VertexGroupKind.FREE:
        raise GraphProductError(
            f"label mismatch: the group at {document.s1!r} is {spec.label}, not a free group"
        )
    sub = FiniteIndexSubgroupSpec.from_mapping(spec.parameter, document.quotient)
    return construct_gamma_prime(graph, labels, document.s1, sub)


def _gp_gamma_prime(req: CommandRequest) -> tuple[int, Report]:
    return EXIT_OK, _construction(req).dict()


def _gp_verify(req: CommandRequest) -> tuple[int, Report]:
    c = _construction(req)
    summary = c.dict()
    injectivity = verify_phi_injective_on_ball(c, req.options["radius"], _budget(req))
    residual = verify_phi_homomorphism(
        c,
        radius=min(req.options["radius"], 2),
        samples=req.options["samples"],
        seed=req.options["seed"],
        budget=_budget(req),
    )
    action = coset_action(c)
    projection = verify_projection(c)
    checks = {
        "vertex_count": summary["vertex_count"] == summary["expected_vertex_count"],
        "rigidity_preserved": summary["rigid"] or not summary["source_rigid"],
        "phi_injective": injectivity.passed,
        "phi_homomorphism": residual == 0,
        "coset_action": action.passed,
        "projection": not projection,
    }
    report = {
        "s1": c.s1,
        "k": c.index,
        "vertex_count": summary["vertex_count"],
        "expected_vertex_count": summary["expected_vertex_count"],
        "rigid": summary["rigid"],
        "source_rigid": summary["source_rigid"],
        "subgroup_rank": c.subgroup.rank,
        "injectivity": injectivity.dict(),
        "homomorphism_residual": residual,
        "coset_action": action.dict(),
        "projection_violations": list(projection),
        "checks": checks,
        "passed": all(checks.values()),
    }
    return (EXIT_OK if report["passed"] else EXIT_FALSIFIED), report


def _inv_gf(req: CommandRequest) -> tuple[int, Report]:
    family = split_list(req.options["F"], int)
    other = split_list(req.options["Fprime"], int)
    return EXIT_OK, gf_distinguish(family, other).dict()


def _inv_tensor_match(req: CommandRequest) -> tuple[int, Report]:
    a = split_list(req.options["a"])
    b = [split_list(block) for block in req.options["b"].split(";")]
    partition = tensor_match(a, b)
    return EXIT_OK, {
        "partition": [list(block) for block in partition] if partition is not None else None
    }


def _inv_compare(req: CommandRequest) -> tuple[int, Report]:
    first, second = _two_inputs(req)
    g1, labels1 = resolve_graph(first)
    g2, labels2 = resolve_graph(second)
    labels1 = _labels_or_default(g1, labels1)
    labels2 = _labels_or_default(g2, labels2)
    return EXIT_OK, {
        "link_matching": link_matching(g1, labels1, g2, labels2).dict(),
        "stable_isomorphism": stable_isomorphism_verdict(
            g1, labels1, g2, labels2, max_vertices=req.options.get("max_vertices")
        ).dict(),
    }


def _qfock_tn(req: CommandRequest) -> tuple[int, Report]:
    rows = tn_sweep(
        split_list(req.options["q"], float),
        split_list(req.options["n"], int),
        split_list(req.options["dim"], int),
    )
    positive = all(row.min_eig >= -PSD_TOLERANCE for row in rows)
    return EXIT_OK if positive else EXIT_FALSIFIED, _Rows(rows, TnRow)


def _qfock_moments(req: CommandRequest) -> tuple[int, Report]:
    rows = moment_table(split_list(req.options["q"], float), split_list(req.options["power"], int))
    return EXIT_OK, _Rows(rows, MomentRow)


def _qfock_decay(req: CommandRequest) -> tuple[int, Report]:
    rows = []
    for q in split_list(req.options["q"], float):
        rows.extend(
            decay_profile(
                q,
                req.options["k"],
                req.options["n_max"],
                dim_h=req.options["dim_h"],
                dim_k=req.options["dim_k"],
                samples=req.options["samples"],
                seed=req.options["seed"],
            )
        )
    status = EXIT_FALSIFIED if any(row.violated for row in rows) else EXIT_OK
    return status, _Rows(rows, DecayRow)


def _qfock_deform(req: CommandRequest) -> tuple[int, Report]:
    dim_h, n = req.options["dim_h"], req.options["n"]
    space = FockSpace(req.options["q"], 2 * dim_h, n, splitting=Splitting(dim_h, dim_h))
    rows = []
    for t in split_list(req.options["t"], float):
        rows.extend(deformation_profile(space, t, n))
    return EXIT_OK, _Rows(rows, DeformRow)


HANDLERS: dict[str, Handler] = {
    "graph rigid": _graph_rigid,
    "graph iso": _graph_iso,
    "coxeter reduce": _coxeter_reduce,
    "coxeter equal": _coxeter_equal,
    "coxeter growth": _coxeter_growth,
    "gp normal-form": _gp_normal_form,
    "gp gamma-prime": _gp_gamma_prime,
    "gp verify": _gp_verify,
    "inv gf": _inv_gf,
    "inv tensor-match": _inv_tensor_match,
    "inv compare": _inv_compare,
    "qfock tn": _qfock_tn,
    "qfock moments": _qfock_moments,
    "qfock decay": _qfock_decay,
    "qfock deform": _qfock_deform,
}


def _json_default(value: Any) -> Any:
    if isinstance(value, float) and math.isnan(value):
        return None
    raise TypeError(f"not JSON serializable: {value!r}")


def render(report: Report) -> str:
    if isinstance(report, _Rows):
        stream = io.StringIO()
        storage.dump_rows(report.rows, stream, cls=report.cls)
        return stream.getvalue()
    return json.dumps(report, sort_keys=True, default=_json_default) + "\n"


def dispatch(req: CommandRequest) -> CommandResult:
    """
    Run one subcommand. Exit status 0 on success, 1 when the check a subcommand performs
    is falsified, 2 on invalid input, exhausted budgets or unknown subcommands.
    """
    handler = HANDLERS.get(req.command)
    if handler is None:
        return CommandResult(EXIT_ERROR, error=f"unknown subcommand: {req.command}")
    try:
        status, report = handler(req)
    except BudgetExceededError as e:
        return CommandResult(EXIT_ERROR, error=f"budget exceeded: {e}")
    except (ValueError, OSError) as e:
        return CommandResult(EXIT_ERROR, error=f"input error: {e}")
    return CommandResult(status, report=render(report))


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        if "invalid choice" in message:
            self.exit(EXIT_ERROR, f"unknown subcommand: {message}\n")
        super().error(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="python3 -m corrkit")
    parser.add_argument("-v", "--verbose", action="store_true")
    parser.add_argument("--output", help="report path, default standard output")
    groups = parser.add_subparsers(dest="group", required=True)

    graph = groups.add_parser("graph").add_subparsers(dest="command", required=True)
    p = graph.add_parser("rigid")
    p.add_argument("inputs", nargs=1, metavar="GRAPH")
    p = graph.add_parser("iso")
    p.add_argument("inputs", nargs=2, metavar="GRAPH")
    p.add_argument("--max-vertices", type=int)

    cox = groups.add_parser("coxeter").add_subparsers(dest="command", required=True)
    p = cox.add_parser("reduce")
    p.add_argument("--graph", required=True)
    p.add_argument("--word", required=True)
    p = cox.add_parser("equal")
    p.add_argument("--graph", required=True)
    p.add_argument("--word", required=True)
    p.add_argument("--word2", required=True)
    p = cox.add_parser("growth")
    p.add_argument("--graph", required=True)
    p.add_argument("--max-length", type=int, required=True)
    p.add_argument("--max-elements", type=int)

    gp = groups.add_parser("gp").add_subparsers(dest="command", required=True)
    p = gp.add_parser("normal-form")
    p.add_argument("--graph", required=True)
    p.add_argument("--labels", help="vertex=label pairs, e.g. u=F2,v=Z/3")
    p.add_argument("--syllables", required=True, help='e.g. "u:a v:b u:A"')
    p = gp.add_parser("gamma-prime")
    p.add_argument("inputs", nargs=1, metavar="DESCRIPTOR", help="path or inline JSON")
    p = gp.add_parser("verify")
    p.add_argument("inputs", nargs=1, metavar="DESCRIPTOR", help="path or inline JSON")
    p.add_argument("--radius", type=int, default=3)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-elements", type=int)

    inv = groups.add_parser("inv").add_subparsers(dest="command", required=True)
    p = inv.add_parser("gf")
    p.add_argument("--F", dest="F", required=True)
    p.add_argument("--Fprime", dest="Fprime", required=True)
    p = inv.add_parser("tensor-match")
    p.add_argument("--a", required=True, help="labels, e.g. x,x,y")
    p.add_argument("--b", required=True, help="signatures, e.g. x,y;x")
    p = inv.add_parser("compare")
    p.add_argument("inputs", nargs=2, metavar="GRAPH")
    p.add_argument("--max-vertices", type=int)

    qfock = groups.add_parser("qfock").add_subparsers(dest="command", required=True)
    p = qfock.add_parser("tn")
    p.add_argument("--q", required=True)
    p.add_argument("--n", required=True)
    p.add_argument("--dim", required=True)
    p = qfock.add_parser("moments")
    p.add_argument("--q", required=True)
    p.add_argument("--power", default="2,4,6,8")
    p = qfock.add_parser("decay")
    p.add_argument("--q", required=True)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--n-max", type=int, default=3)
    p.add_argument("--dim-h", type=int, default=1)
    p.add_argument("--dim-k", type=int, default=1)
    p.add_argument("--samples", type=int, default=8)
    p.add_argument("--seed", type=int, default=0)
    p = qfock.add_parser("deform")
    p.add_argument("--t", required=True)
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--dim-h", type=int, default=1)
    p.add_argument("--q", type=float, default=0.5)
    return parser


def request_from_args(args: argparse.Namespace) -> CommandRequest:
    options = vars(args).copy()
    command = f"{options.pop('group')} {options.pop('command')}"
    inputs = options.pop("inputs", [])
    output = options.pop("output", None)
    options.pop("verbose", None)
    return CommandRequest(command=command, inputs=list(inputs), options=options, output=output)


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(message)s",
    )
    req = request_from_args(args)
    result = dispatch(req)
    if result.error is not None:
        print(result.error, file=sys.stderr)
    if result.report is not None:
        if req.output:
            with open(req.output, "w", newline="") as f:
                f.write(result.report)
        else:
            sys.stdout.write(result.report)
    return result.status


if __name__ == "__main__":
    sys.exit(main())
