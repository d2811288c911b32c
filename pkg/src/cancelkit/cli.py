"""``cancelkit`` command line: decide, witness, oracle, normal-form, conic, cheb.

Every command prints one canonical JSON document (sorted keys, exact values
as strings) that embeds the run configuration and library version.
Exit codes: 0 completed, 1 usage or parse error, 2 certificate failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass, field as dc_field
from fractions import Fraction

from . import __version__
from .conics import ConicVerdict, conic_point_search, conic_rational_point
from .conjugacy import NormalFormReport, classify
from .decider import (DEFAULT_DEGREE_CAP, DEFAULT_HEIGHT_BOUND, DEFAULT_WORD_CAP, AbsenceProof,
                      DecisionReport, decide)
from .errors import CancelKitError, CertificateFailure
from .numberfield import FieldElement, NumberField, TowerElement, format_rational
from .parsing import parse_conic, parse_field, parse_polynomial, split_generators
from .polyring import Polynomial, cheb_expand
from .witness import BivariatePolynomial, collision_oracle, generate_pairs, invariant_curve
from .words import GeneratorSet, ObstructionWitness, Word

COMMANDS = ("decide", "witness", "oracle", "normal-form", "conic", "cheb")


@dataclass
class RunConfig:
    command: str
    field_minpoly: str = "t"
    generators: list = dc_field(default_factory=list)
    depth: int = 3
    degree_cap: int = DEFAULT_DEGREE_CAP
    word_cap: int = DEFAULT_WORD_CAP
    height_bound: int = DEFAULT_HEIGHT_BOUND
    pair_count: int = 5
    j: int = 0
    prover: bool = True
    witness_index: int = 0
    polynomial: str | None = None
    conic: str | None = None
    a: str | None = None
    b: str | None = None
    output_path: str | None = None

    def validate(self):
        if self.command not in COMMANDS:
            raise CancelKitError("USAGE", f"unknown command {self.command!r}")
        for name in ("depth", "degree_cap", "word_cap", "height_bound", "pair_count"):
            if getattr(self, name) < 1:
                raise CancelKitError("USAGE", f"{name} must be >= 1")
        if self.j < 0:
            raise CancelKitError("USAGE", "j must be >= 0")
        needs = {"decide": ["generators"], "witness": ["generators"], "oracle": ["generators", "a", "b"],
                 "normal-form": ["polynomial"], "cheb": ["polynomial"], "conic": ["conic"]}
        for name in needs[self.command]:
            if not getattr(self, name):
                raise CancelKitError("USAGE", f"{self.command} needs --{name.replace('_', '-')}")


# -- serialization -----------------------------------------------------------------

def value_text(x) -> str:
    if isinstance(x, Fraction):
        return format_rational(x)
    return str(x)


def _poly(p: Polynomial | None):
    return None if p is None else str(p)


def _word(w: Word, S: GeneratorSet) -> dict:
    out = {"word": list(w.indices), "label": w.label(S)}
    if w.poly is not None:
        out["polynomial"] = str(w.poly)
        out["degree"] = w.poly.degree
    return out


def _plain(obj):
    """Certificates and similar free-form data, with exact values as strings."""
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, (FieldElement, TowerElement, Fraction)):
        return value_text(obj)
    if obj is None or isinstance(obj, (bool, int, str)):
        return obj
    if hasattr(obj, "value"):
        return obj.value
    return str(obj)


def conic_verdict_dict(v: ConicVerdict) -> dict:
    return {"status": v.status.value,
            "point": None if v.point is None else [value_text(c) for c in v.point],
            "certificate": _plain(v.certificate)}


def witness_dict(w: ObstructionWitness, S: GeneratorSet) -> dict:
    c = w.conjugator
    return {
        "case": w.case_tag.short,
        "case_tag": w.case_tag.value,
        "h1": _word(w.h1, S),
        "h2": _word(w.h2, S),
        "d": w.d,
        "r": w.r,
        "conjugator": {"v": value_text(c.v),
                       "u_squared": None if c.u_squared is None else value_text(c.u_squared),
                       "u": None if c.u_in_K is None else value_text(c.u_in_K),
                       "power_ambiguity": c.power_ambiguity},
        "cyclotomic": None if w.cyclotomic is None else value_text(w.cyclotomic),
        "outer_P": _poly(w.outer),
        "inner_Q": _poly(w.inner_Q),
        "conic": None if w.conic is None else {"equation": str(w.conic),
                                               "verdict": conic_verdict_dict(w.conic_verdict)},
        "curve": None if w.curve is None else str(w.curve),
        "status": w.status.value,
        "sample_pairs": [[value_text(s.a), value_text(s.b)] for s in w.samples],
    }


def absence_dict(p: AbsenceProof | None) -> dict | None:
    if p is None:
        return None
    return {"candidate_d_set": {str(d): why for d, why in sorted(p.candidate_d_set.items())},
            "degree_prime_set": list(p.degree_prime_set),
            "rule_trace": p.rule_trace.splitlines()}


def field_dict(K: NumberField) -> dict:
    return {"minpoly": K.minpoly_text(), "degree": K.degree}


def decision_dict(rep: DecisionReport) -> dict:
    S = rep.generators
    return {
        "verdict": rep.verdict.value,
        "depth": rep.depth,
        "conditional": rep.conditional,
        "generators": [{"index": i, "label": S.labels[i], "polynomial": str(g)}
                       for i, g in enumerate(S.generators)],
        "witnesses": [witness_dict(w, S) for w in rep.witnesses],
        "absence_proof": absence_dict(rep.absence_proof),
        "stats": rep.stats,
        "notes": list(rep.notes),
    }


def normal_form_dict(rep: NormalFormReport) -> dict:
    c = rep.conjugator
    return {"kind": rep.kind.value,
            "kinds": sorted(k.value for k in rep.kinds),
            "r": rep.r,
            "v": value_text(c.v),
            "u_squared": None if c.u_squared is None else value_text(c.u_squared),
            "u": None if c.u_in_K is None else value_text(c.u_in_K),
            "power_ambiguity": c.power_ambiguity,
            "centered": str(rep.centered),
            "xqxd_gcd": rep.xqxd_gcd,
            "sign": rep.sign_resolved}


def dumps(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


# -- running ---------------------------------------------------------------------------

def _generators(cfg: RunConfig, K: NumberField) -> GeneratorSet:
    texts = cfg.generators
    polys = [parse_polynomial(t, K, generator=True) for t in texts]
    return GeneratorSet(K, polys, labels=texts)


def run(cfg: RunConfig) -> dict:
    """Execute one command and return the JSON-ready report."""
    cfg.validate()
    K = parse_field(cfg.field_minpoly)
    doc = {"version": __version__, "config": asdict(cfg), "command": cfg.command, "field": field_dict(K)}
    if cfg.command == "decide":
        S = _generators(cfg, K)
        doc["report"] = decision_dict(decide(S, cfg.depth, cfg.prover, cfg.degree_cap, cfg.word_cap,
                                             cfg.height_bound))
    elif cfg.command == "witness":
        S = _generators(cfg, K)
        rep = decide(S, cfg.depth, False, cfg.degree_cap, cfg.word_cap, cfg.height_bound)
        if not rep.witnesses:
            doc["report"] = {"verdict": rep.verdict.value, "witness": None, "pairs": []}
        else:
            if cfg.witness_index >= len(rep.witnesses):
                raise CancelKitError("USAGE", f"only {len(rep.witnesses)} witnesses")
            w = rep.witnesses[cfg.witness_index]
            curve = invariant_curve(w)
            pairs = generate_pairs(w, cfg.j, cfg.pair_count, curve=curve)
            doc["report"] = {"verdict": rep.verdict.value, "witness": witness_dict(w, S),
                             "curve": str(curve.equation),
                             "pairs": [{"a": value_text(p.a), "b": value_text(p.b), "j": p.j,
                                        "h1j_a": value_text(p.checks["h1j_a"]),
                                        "h1j_b": value_text(p.checks["h1j_b"]),
                                        "h2_value": value_text(p.checks["h2_a"])} for p in pairs]}
    elif cfg.command == "oracle":
        S = _generators(cfg, K)
        a = parse_polynomial(cfg.a, K)
        b = parse_polynomial(cfg.b, K)
        if a.degree > 0 or b.degree > 0:
            raise CancelKitError("USAGE", "oracle points must be constants")
        hit = collision_oracle(S, a[0], b[0], cfg.depth)
        doc["report"] = {"collision": None if hit is None else
                         {"word": _word(hit[0], S), "depth": hit[1]}}
    elif cfg.command == "normal-form":
        doc["report"] = normal_form_dict(classify(parse_polynomial(cfg.polynomial, K, generator=True)))
    elif cfg.command == "cheb":
        exp = cheb_expand(parse_polynomial(cfg.polynomial, K))
        doc["report"] = {"a0": value_text(exp.a0),
                         "coefficients": {str(i): value_text(c) for i, c in sorted(exp.a.items())},
                         "support": exp.support()}
    else:
        C = parse_conic(cfg.conic, K)
        verdict = conic_rational_point(C) if K.is_rational else conic_point_search(C, cfg.height_bound)
        doc["report"] = {"conic": str(C), **conic_verdict_dict(verdict)}
    return doc


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        sys.exit(1)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="cancelkit", description="Obstructions to dynamical cancellation for polynomial sets.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, gens=True):
        sp.add_argument("--field", default="t", help='minimal polynomial in t; "t" is Q')
        if gens:
            sp.add_argument("--gens", required=True, help='comma separated, e.g. "T(2),T(3)"')
        sp.add_argument("--json", dest="output_path", help="also write the report to this file")

    for name in ("decide", "witness"):
        sp = sub.add_parser(name)
        common(sp)
        sp.add_argument("--depth", type=int, default=3)
        sp.add_argument("--degree-cap", type=int, default=DEFAULT_DEGREE_CAP)
        sp.add_argument("--word-cap", type=int, default=DEFAULT_WORD_CAP)
        sp.add_argument("--height-bound", type=int, default=DEFAULT_HEIGHT_BOUND)
        if name == "decide":
            sp.add_argument("--no-prover", action="store_true")
        else:
            sp.add_argument("--index", type=int, default=0, help="witness index in the sorted list")
            sp.add_argument("--pairs", type=int, default=5)
            sp.add_argument("--iterate-j", type=int, default=0)
    sp = sub.add_parser("oracle")
    common(sp)
    sp.add_argument("--a", required=True)
    sp.add_argument("--b", required=True)
    sp.add_argument("--depth", type=int, default=6)
    for name in ("normal-form", "cheb"):
        sp = sub.add_parser(name)
        common(sp, gens=False)
        sp.add_argument("--poly", required=True)
    sp = sub.add_parser("conic")
    common(sp, gens=False)
    sp.add_argument("--conic", required=True, help='e.g. "X^2 + X*Y + Y^2 - 3"')
    sp.add_argument("--height-bound", type=int, default=DEFAULT_HEIGHT_BOUND)
    return p


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(command=ns.command, field_minpoly=ns.field, output_path=ns.output_path)
    if hasattr(ns, "gens"):
        cfg.generators = split_generators(ns.gens)
    for attr, key in (("depth", "depth"), ("degree_cap", "degree_cap"), ("word_cap", "word_cap"),
                      ("height_bound", "height_bound"), ("pairs", "pair_count"), ("iterate_j", "j"),
                      ("index", "witness_index"), ("poly", "polynomial"), ("conic", "conic"),
                      ("a", "a"), ("b", "b")):
        if hasattr(ns, attr):
            setattr(cfg, key, getattr(ns, attr))
    if getattr(ns, "no_prover", False):
        cfg.prover = False
    return cfg


def main(argv=None) -> int:
    ns = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(ns)
        text = dumps(run(cfg))
    except CertificateFailure as e:
        sys.stderr.write(dumps({"error": {"code": e.code, "message": e.message}}))
        return 2
    except (CancelKitError, ValueError) as e:
        code = getattr(e, "code", "USAGE")
        sys.stderr.write(dumps({"error": {"code": code, "message": getattr(e, "message", str(e))}}))
        return 1
    sys.stdout.write(text)
    if cfg.output_path:
        with open(cfg.output_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
