"""
Subcommand implementations for groupoidlab.

Each cmd_* takes the parsed namespace and returns an exit code:
0 on success, 1 when a property is violated. Input and validation
errors propagate as GroupoidLabError and are mapped to 2 by main().
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

from algebra.convolution import i_norm
from cli.serialization import (
    MorphismDefinition,
    NamedElement,
    dumps,
    kind_of,
    load,
    save,
)
from cli.suite import VerificationReport, default_seed, paper_suite, run_random, run_scenario
from groupoid_core.errors import ParseError, ValidationError
from groupoid_core.groupoid import FiniteGroupoid
from groupoid_core.reports import CheckReport
from groupoid_core.structure import (
    is_group_bundle,
    is_principal,
    is_transitive,
    isotropy_summary,
    orbits,
)
from measure.haar import HaarSystem, canonical_counting_haar, check_haar, haar_from_unit_weights
from measure.measures import require_quasi_invariant
from measure.rationals import format_rational
from morphism.algebraic import check_algebraic_morphism
from morphism.composition import compose_morphisms
from morphism.morphism import ZakrzewskiMorphism
from spectra.norms import build_norm_report, ii_norm, norm_h, reduced_norm, trivial_norm

logger = logging.getLogger(__name__)

BUILTIN_SCENARIOS = ("paper-suite",)


def _load_kind(path: str, kind: str, registry: Optional[Dict[str, Any]] = None, validate: bool = True) -> Any:
    artifact = load(path, registry, validate)
    found = kind_of(artifact)
    if found != kind:
        raise ParseError(f"expected a {kind} definition, found {found}", path)
    return artifact


def _groupoid_of(path: str, registry: Dict[str, Any]) -> FiniteGroupoid:
    """A groupoid file, or the groupoid under a Haar system file"""
    artifact = load(path, registry)
    if isinstance(artifact, HaarSystem):
        return artifact.groupoid
    if not isinstance(artifact, FiniteGroupoid):
        raise ParseError(f"expected a groupoid definition, found {kind_of(artifact)}", path)
    return artifact


def _emit(doc: Any, out: str = "") -> None:
    text = json.dumps(doc, indent=2, ensure_ascii=False)
    if out:
        Path(out).parent.mkdir(parents=True, exist_ok=True)
        Path(out).write_text(text + "\n", encoding="utf-8")
        print(f"  Saved: {out}")
    else:
        print(text)


def _banner(title: str) -> None:
    print("=" * 70)
    print(title)
    print("=" * 70)


def _print_report(report: CheckReport) -> None:
    status = "PASS" if report.passed else "FAIL"
    print(f"{report.subject:<30} {status}")
    for v in report.violations:
        print(f"  [{v.kind}] {', '.join(v.witness)}  {v.detail}".rstrip())


# ============================================================================
# validate / info
# ============================================================================

def cmd_validate(args: argparse.Namespace) -> int:
    artifact = load(args.file)
    kind = kind_of(artifact)
    name = getattr(artifact, "name", "") or Path(args.file).stem
    if isinstance(artifact, dict):
        print(f"OK bundle {name}: {', '.join(sorted(artifact))}")
    else:
        print(f"OK {kind} {name}")
    return 0


def groupoid_info(g: FiniteGroupoid) -> Dict[str, Any]:
    parts = orbits(g)
    return {
        "name": g.name,
        "elements": len(g),
        "units": len(g.units),
        "orbits": len(parts),
        "transitive": is_transitive(g),
        "principal": is_principal(g),
        "group_bundle": is_group_bundle(g),
        "isotropy": isotropy_summary(g),
    }


def cmd_info(args: argparse.Namespace) -> int:
    info = groupoid_info(_groupoid_of(args.file, {}))
    if args.format == "json":
        _emit(info)
        return 0
    _banner(f"GROUPOID: {info['name'] or Path(args.file).stem}")
    for key in ("elements", "units", "orbits", "transitive", "principal", "group_bundle"):
        print(f"{key:<30} {info[key]}")
    print("-" * 70)
    print(f"{'Orbit':<40} {'Isotropy':>10} {'Abelian':>10}")
    for entry in info["isotropy"]:
        units = ", ".join(entry["units"])
        print(f"{units[:40]:<40} {entry['isotropy_order']:>10} {str(entry['abelian']):>10}")
    return 0


# ============================================================================
# haar
# ============================================================================

def cmd_haar_check(args: argparse.Namespace) -> int:
    haar = _load_kind(args.file, "haar", validate=False)
    report = check_haar(haar)
    if args.format == "json":
        _emit(report.to_dict())
    else:
        _print_report(report)
    return 0 if report.passed else 1


def cmd_haar_canonical(args: argparse.Namespace) -> int:
    g = _groupoid_of(args.groupoid, {})
    haar = canonical_counting_haar(g)
    if args.out:
        print(f"  Saved: {save(haar, args.out, name=args.name)}")
    else:
        print(dumps(haar, name=args.name))
    return 0


def _parse_weights(items: List[str]) -> Dict[str, str]:
    weights: Dict[str, str] = {}
    for item in items:
        unit, sep, value = item.rpartition("=")
        if not sep or not unit:
            raise ParseError(f"expected UNIT=p/q, got {item!r}", "--weight")
        weights[unit] = value
    return weights


def cmd_haar_from_weights(args: argparse.Namespace) -> int:
    g = _groupoid_of(args.groupoid, {})
    weights = _parse_weights(args.weight)
    if args.weights_file:
        with open(args.weights_file, encoding="utf-8") as fh:
            try:
                weights.update({k: str(v) for k, v in json.load(fh).items()})
            except json.JSONDecodeError as exc:
                raise ParseError(exc.msg, args.weights_file, exc.lineno, exc.colno) from None
    haar = haar_from_unit_weights(g, weights, name=args.name)
    if args.out:
        print(f"  Saved: {save(haar, args.out, name=args.name)}")
    else:
        print(dumps(haar, name=args.name))
    return 0


# ============================================================================
# norm
# ============================================================================

def cmd_norm(args: argparse.Namespace) -> int:
    registry: Dict[str, Any] = {}
    _groupoid_of(args.groupoid, registry)
    haar = _load_kind(args.haar, "haar", registry)
    named = _load_kind(args.element, "algebra-element", registry)
    f = named.element if isinstance(named, NamedElement) else named
    if f.haar != haar:
        raise ParseError("element does not live on the given Haar system", args.element)
    morphisms: List[ZakrzewskiMorphism] = [_load_kind(p, "morphism", registry) for p in args.morphism]
    measures = [_load_kind(p, "measure", registry) for p in args.measure]
    for mu in measures:
        require_quasi_invariant(haar, mu)

    if args.kind == "all":
        report = build_norm_report(f, morphisms, measures, element=getattr(named, "name", "f"))
        doc = report.to_dict()
        violated = bool(report.violations())
    else:
        doc = {"element": getattr(named, "name", "f"), "kind": args.kind}
        if args.kind == "red":
            doc["value"] = reduced_norm(f)
        elif args.kind == "I":
            doc["value"] = i_norm(f)
        elif args.kind == "II":
            if not measures:
                raise ParseError("--kind II needs at least one --measure", "norm")
            doc["values"] = {mu.name or f"μ{k}": {"trivial": trivial_norm(haar, mu, f), "II": ii_norm(haar, mu, f)}
                             for k, mu in enumerate(measures)}
        else:
            if not morphisms:
                raise ParseError("--kind h needs at least one --morphism", "norm")
            doc["values"] = {h.name or f"h{k}": norm_h(h, f) for k, h in enumerate(morphisms)}
        violated = False

    if args.format == "json":
        _emit(doc)
    else:
        _banner(f"NORMS OF {doc['element']}")
        for key, value in doc.items():
            if key in ("element", "tolerances"):
                continue
            print(f"{key:<30} {value}")
    return 1 if violated else 0


# ============================================================================
# morphism
# ============================================================================

def cmd_morphism_check(args: argparse.Namespace) -> int:
    definition = _load_kind(args.file, "morphism", validate=False)
    report = check_algebraic_morphism(definition.algebraic)
    for haar in (definition.source_haar, definition.target_haar):
        for v in check_haar(haar).violations:
            report.add(f"haar-{v.kind}", v.witness, v.detail)
    if report.passed and isinstance(definition, MorphismDefinition):
        try:
            definition.build()
        except ValidationError as exc:
            report.add(exc.axiom, exc.witness, str(exc))
    if args.format == "json":
        _emit(report.to_dict())
    else:
        _print_report(report)
    return 0 if report.passed else 1


def delta_table(h: ZakrzewskiMorphism) -> Dict[str, str]:
    return {label: format_rational(value) for label, value in h.delta.to_mapping().items()}


def cmd_morphism_delta(args: argparse.Namespace) -> int:
    h = _load_kind(args.file, "morphism")
    table = delta_table(h)
    if args.format == "json":
        _emit({"morphism": h.name, "trivial": h.delta.is_trivial(), "delta": table})
        return 0
    _banner(f"Δ FOR {h.name or Path(args.file).stem}")
    for label, value in table.items():
        print(f"{label:<30} {value}")
    return 0


def cmd_morphism_compose(args: argparse.Namespace) -> int:
    registry: Dict[str, Any] = {}
    first = _load_kind(args.first, "morphism", registry)
    second = _load_kind(args.second, "morphism", registry)
    kh = compose_morphisms(first, second, name=args.name)
    if args.out:
        print(f"  Saved: {save(kh, args.out, name=args.name)}")
    else:
        print(dumps(kh, name=args.name))
    return 0


# ============================================================================
# verify
# ============================================================================

def _render(report: VerificationReport, fmt: str, out: str) -> None:
    if fmt == "text":
        text = report.render_text()
    else:
        doc = report.to_dict()
        doc["fingerprint"] = report.fingerprint()
        text = json.dumps(doc, indent=2, ensure_ascii=False)
    if out:
        Path(out).parent.mkdir(parents=True, exist_ok=True)
        Path(out).write_text(text + "\n", encoding="utf-8")
        print(f"  Saved: {out}", file=sys.stderr)
    else:
        print(text)


def cmd_verify(args: argparse.Namespace) -> int:
    seed = default_seed() if args.seed is None else args.seed
    if args.random:
        report = run_random(seed, args.cases, args.threads)
    elif args.scenario and not (args.scenario in BUILTIN_SCENARIOS and not Path(args.scenario).exists()):
        scenario = _load_kind(args.scenario, "scenario", validate=False)
        report = run_scenario(scenario, seed)
    else:
        report = paper_suite(seed, threads=args.threads)
    logger.info("verification %s finished: %s", report.suite, "pass" if report.passed else "FAIL")
    _render(report, args.format, args.out)
    return 0 if report.passed else 1


def add_subcommands(sub: "argparse._SubParsersAction") -> None:
    v = sub.add_parser("validate", help="Load a definition file and run every axiom check")
    v.add_argument("file")
    v.set_defaults(func=cmd_validate)

    i = sub.add_parser("info", help="Orbits, isotropy and structure of a groupoid")
    i.add_argument("file", help="Groupoid or Haar system file")
    i.add_argument("--format", choices=("json", "text"), default="text")
    i.set_defaults(func=cmd_info)

    h = sub.add_parser("haar", help="Haar system checks and constructors")
    h_sub = h.add_subparsers(dest="haar_cmd", required=True)

    hc = h_sub.add_parser("check")
    hc.add_argument("file")
    hc.add_argument("--format", choices=("json", "text"), default="text")
    hc.set_defaults(func=cmd_haar_check)

    hk = h_sub.add_parser("canonical", help="Counting Haar system")
    hk.add_argument("groupoid")
    hk.add_argument("--name", default="counting")
    hk.add_argument("--out", default="")
    hk.set_defaults(func=cmd_haar_canonical)

    hw = h_sub.add_parser("from-weights", help="weight(x) = c(d(x)) from unit weights")
    hw.add_argument("groupoid")
    hw.add_argument("--weight", action="append", default=[], help="UNIT=p/q, repeatable")
    hw.add_argument("--weights-file", default="", help="JSON object of unit weights")
    hw.add_argument("--name", default="")
    hw.add_argument("--out", default="")
    hw.set_defaults(func=cmd_haar_from_weights)

    n = sub.add_parser("norm", help="I, reduced, per-morphism and trivial-representation norms")
    n.add_argument("groupoid")
    n.add_argument("haar")
    n.add_argument("element")
    n.add_argument("--kind", choices=("all", "red", "I", "II", "h"), default="all")
    n.add_argument("--morphism", action="append", default=[])
    n.add_argument("--measure", action="append", default=[])
    n.add_argument("--format", choices=("json", "text"), default="json")
    n.set_defaults(func=cmd_norm)

    m = sub.add_parser("morphism", help="Morphism checks, Δ tables and composition")
    m_sub = m.add_subparsers(dest="morphism_cmd", required=True)

    mc = m_sub.add_parser("check")
    mc.add_argument("file")
    mc.add_argument("--format", choices=("json", "text"), default="text")
    mc.set_defaults(func=cmd_morphism_check)

    md = m_sub.add_parser("delta")
    md.add_argument("file")
    md.add_argument("--format", choices=("json", "text"), default="text")
    md.set_defaults(func=cmd_morphism_delta)

    mk = m_sub.add_parser("compose", help="The composite of FIRST then SECOND")
    mk.add_argument("first")
    mk.add_argument("second")
    mk.add_argument("--name", default="")
    mk.add_argument("--out", default="")
    mk.set_defaults(func=cmd_morphism_compose)

    r = sub.add_parser("verify", help="Run the property suite")
    source = r.add_mutually_exclusive_group()
    source.add_argument("--scenario", default="", help="Scenario file, or the built-in 'paper-suite'")
    source.add_argument("--random", action="store_true")
    r.add_argument("--seed", type=int, default=None, help="Default: $GROUPOIDLAB_SEED or 42")
    r.add_argument("--cases", type=int, default=100)
    r.add_argument("--threads", type=int, default=None, help="Default: $GROUPOIDLAB_THREADS or the CPU count")
    r.add_argument("--format", choices=("json", "text"), default="json")
    r.add_argument("--out", default="")
    r.set_defaults(func=cmd_verify)
