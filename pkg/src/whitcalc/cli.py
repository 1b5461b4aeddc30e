"""Command-line front end: ``whit <rootinfo|cells|dims|verify> --config path``.

Reads one JSON config, prints one JSON (or text) report.  Exit status is 0
on success, 1 when a verification fails and 2 on invalid input.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from .cells import ProblemInput, survivor_set
from .rootsys import InvalidCartan, NonFiniteType, Weight, build_root_system, fundamental_to_simple, half_sum
from .scalars import cq, fmt_rational, parse_rational
from .weylgrp import GroupTooLarge, min_coset_reps, parse_word, weyl_group, word_str
from .whitdim import (MissingTable, NonSplitUnsupported, dim_wh_algebraic, dim_wh_continuous,
                      oshima_identity_check)

COMMANDS = ("rootinfo", "cells", "dims", "verify")
KNOWN_KEYS = {"command", "root", "multiplicities", "theta", "supp_eta", "eta_values", "unitary", "lambda",
              "nu_tilde", "mu_tilde", "wh_table", "genericity_variant", "truncation", "seed"}


class ParseError(ValueError):
    def __init__(self, msg, line=None, field=None):
        where = f" (line {line})" if line else f" (field {field!r})" if field else ""
        super().__init__(msg + where)
        self.line, self.field = line, field


class ValidationError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    root: object
    multiplicities: dict | None = None
    theta: tuple = ()
    supp_eta: tuple = ()
    eta_values: tuple = ()
    unitary: bool = True
    lam: dict | None = None
    nu_tilde: dict | None = None
    mu_tilde: dict | None = None
    wh_table: dict | None = None
    genericity_variant: int = 1
    truncation: dict = field(default_factory=lambda: {"K": 4, "D": 4})
    seed: int = 0

    def echo(self) -> dict:
        out = {"command": self.command, "root": self.root, "theta": list(self.theta),
               "supp_eta": list(self.supp_eta), "eta_values": [list(v) for v in self.eta_values],
               "unitary": self.unitary, "genericity_variant": self.genericity_variant,
               "truncation": dict(self.truncation), "seed": self.seed}
        for key, val in (("multiplicities", self.multiplicities), ("lambda", self.lam),
                         ("nu_tilde", self.nu_tilde), ("mu_tilde", self.mu_tilde), ("wh_table", self.wh_table)):
            if val is not None:
                out[key] = val
        return out

    # derived objects ---------------------------------------------------
    def root_datum(self):
        return build_root_system(self.root if isinstance(self.root, str) else tuple(map(tuple, self.root)))

    def weight(self, spec):
        if spec is None:
            return None
        R = self.root_datum()
        coords = [parse_rational(c) for c in spec["coords"]]
        if spec["basis"] == "fundamental":
            return fundamental_to_simple(R, coords)
        return Weight(coords)

    def problem(self) -> ProblemInput:
        R = self.root_datum()
        eta = {i: cq(*v) for i, v in zip(self.supp_eta, self.eta_values)}
        mult = None
        if self.multiplicities:
            mult = tuple(int(self.multiplicities.get(",".join(map(str, r)), 1)) for r in R.positive_roots)
        table = None
        if self.wh_table is not None:
            G = weyl_group(R)
            table = {G.from_word(parse_word(k)): int(v) for k, v in self.wh_table.items()}
        return ProblemInput(root=R, theta=self.theta, eta_values=eta, unitary=self.unitary,
                            lam=self.weight(self.lam), nu_tilde=self.weight(self.nu_tilde),
                            mu_tilde=self.weight(self.mu_tilde), wh_table=table,
                            genericity_variant=self.genericity_variant, multiplicities=mult)


def _index_list(raw, name, rank):
    if not isinstance(raw, list) or not all(isinstance(i, int) and not isinstance(i, bool) for i in raw):
        raise ValidationError(f"{name} must be a list of integers")
    if any(not 0 <= i < rank for i in raw):
        raise ValidationError(f"{name} entries must lie in 0..{rank - 1}")
    if len(set(raw)) != len(raw):
        raise ValidationError(f"{name} has repeated entries")
    return tuple(sorted(raw))


def _weight_spec(raw, name, rank):
    if raw is None:
        return None
    if not isinstance(raw, dict) or set(raw) != {"basis", "coords"}:
        raise ValidationError(f"{name} must be {{'basis': ..., 'coords': [...]}}")
    if raw["basis"] not in ("simple", "fundamental"):
        raise ValidationError(f"{name}.basis must be 'simple' or 'fundamental'")
    if not isinstance(raw["coords"], list) or len(raw["coords"]) != rank:
        raise ValidationError(f"{name}.coords must have {rank} entries")
    try:
        coords = [fmt_rational(parse_rational(c)) for c in raw["coords"]]
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise ValidationError(f"{name}.coords: {exc}") from None
    return {"basis": raw["basis"], "coords": coords}


def parse_config(text: str, command: str | None = None) -> RunConfig:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno) from None
    if not isinstance(raw, dict):
        raise ParseError("config must be a JSON object")
    unknown = set(raw) - KNOWN_KEYS
    if unknown:
        raise ParseError(f"unknown keys {sorted(unknown)}", field=sorted(unknown)[0])
    command = command or raw.get("command")
    if command not in COMMANDS:
        raise ValidationError(f"command must be one of {COMMANDS}")
    if "root" not in raw:
        raise ValidationError("root is required")
    root = raw["root"]
    try:
        R = build_root_system(root if isinstance(root, str) else tuple(map(tuple, root)))
    except (InvalidCartan, NonFiniteType, TypeError, ValueError) as exc:
        raise ValidationError(f"root: {exc}") from None
    n = R.rank
    theta = _index_list(raw.get("theta", []), "theta", n)
    supp = _index_list(raw.get("supp_eta", []), "supp_eta", n)
    order = sorted(range(len(raw.get("supp_eta", []))), key=lambda k: raw["supp_eta"][k])
    eta_raw = raw.get("eta_values")
    if eta_raw is None:
        eta_vals = tuple(("0", "1") for _ in supp)
    else:
        if not isinstance(eta_raw, list) or len(eta_raw) != len(supp):
            raise ValidationError("eta_values must have one [re, im] pair per supp_eta entry")
        try:
            pairs = [tuple(fmt_rational(parse_rational(x)) for x in p) for p in eta_raw]
        except (TypeError, ValueError, ZeroDivisionError) as exc:
            raise ValidationError(f"eta_values: {exc}") from None
        if any(len(p) != 2 for p in pairs):
            raise ValidationError("eta_values entries must be [re, im] pairs")
        if any(p == ("0", "0") for p in pairs):
            raise ValidationError("eta_values must be nonzero on supp_eta")
        eta_vals = tuple(pairs[k] for k in order)
    unitary = raw.get("unitary", True)
    if not isinstance(unitary, bool):
        raise ValidationError("unitary must be a boolean")
    variant = raw.get("genericity_variant", 1)
    if variant not in (1, 2):
        raise ValidationError("genericity_variant must be 1 or 2")
    trunc = raw.get("truncation", {"K": 4, "D": 4})
    if (not isinstance(trunc, dict) or set(trunc) != {"K", "D"}
            or not all(isinstance(v, int) and v >= 0 for v in trunc.values())):
        raise ValidationError("truncation must be {'K': int >= 0, 'D': int >= 0}")
    seed = raw.get("seed", 0)
    if not isinstance(seed, int):
        raise ValidationError("seed must be an integer")
    table = raw.get("wh_table")
    if table is not None:
        if not isinstance(table, dict):
            raise ValidationError("wh_table must map reduced words to integers")
        G = weyl_group(R)
        try:
            for k, v in table.items():
                G.from_word(parse_word(k))
                if not isinstance(v, int) or v < 0:
                    raise ValueError(f"entry {k!r} must be a nonnegative integer")
        except (ValueError, IndexError) as exc:
            raise ValidationError(f"wh_table: {exc}") from None
    mult = raw.get("multiplicities")
    if mult is not None and (not isinstance(mult, dict)
                             or not all(isinstance(v, int) and v > 0 for v in mult.values())):
        raise ValidationError("multiplicities must map 'c1,c2,...' root keys to positive integers")
    if mult is not None:
        keys = {",".join(map(str, r)) for r in R.positive_roots}
        if set(mult) - keys:
            raise ValidationError(f"multiplicities: unknown roots {sorted(set(mult) - keys)}")
    return RunConfig(
        command=command, root=root, multiplicities=mult, theta=theta, supp_eta=supp,
        eta_values=eta_vals, unitary=unitary, lam=_weight_spec(raw.get("lambda"), "lambda", n),
        nu_tilde=_weight_spec(raw.get("nu_tilde"), "nu_tilde", n),
        mu_tilde=_weight_spec(raw.get("mu_tilde"), "mu_tilde", n),
        wh_table=table, genericity_variant=variant, truncation=dict(trunc), seed=seed)


# -- serialization helpers -----------------------------------------------------

def _wt(x):
    return [fmt_rational(Fraction(c)) for c in x]


def _val(x):
    if x is None or isinstance(x, (bool, int, str)):
        return x
    if isinstance(x, Fraction):
        return fmt_rational(x)
    if hasattr(x, "word"):
        return word_str(x.word)
    if isinstance(x, (tuple, list, Weight)):
        return [_val(c) for c in x]
    return str(x)


def _genericity(rep):
    if rep is None:
        return None
    return {"passed": rep.passed, "variant": rep.variant, "bound": rep.bound,
            "witnesses": [_val(f) for f in rep.failures]}


def _dimension(res):
    return {
        "value": res.value,
        "routes": dict(res.routes),
        "consistent": res.consistent,
        "in_proven_range": res.in_proven_range,
        "variant": res.variant,
        "notes": list(res.notes),
        "genericity": [{"cell": _val(w), "a": _genericity(a), "b": _genericity(b)}
                       for w, a, b in res.genericity],
    }


def _cell(rep):
    return {"w": word_str(rep.w.word), "index": rep.index, "survives": rep.survives,
            "unitary_ok": rep.unitary_ok, "blocking_roots": list(rep.blocking_roots),
            "jacquet_nonzero": rep.jacquet_nonzero}


# -- commands -----------------------------------------------------------------------

def report_rootinfo(cfg: RunConfig) -> tuple:
    R = cfg.root_datum()
    G = weyl_group(R)
    return {
        "label": R.label, "rank": R.rank, "reduced": R.reduced,
        "cartan": [list(r) for r in R.cartan],
        "form": [_wt(r) for r in R.form],
        "positive_roots": [list(r) for r in R.positive_roots],
        "highest_root": list(R.highest_root),
        "rho": _wt(half_sum(R)),
        "fundamental_weights": [_wt(w) for w in R.fundamental_weights],
        "weyl_order": len(G),
        "longest": word_str(G.longest.word),
        "min_coset_reps": [word_str(w.word) for w in min_coset_reps(R, cfg.theta)],
    }, 0


def report_cells(cfg: RunConfig) -> tuple:
    inp = cfg.problem()
    reps = survivor_set(inp)
    return {"cells": [_cell(r) for r in reps],
            "survivors": [word_str(r.w.word) for r in reps if r.survives]}, 0


def report_dims(cfg: RunConfig) -> tuple:
    inp = cfg.problem()
    cont, alg = dim_wh_continuous(inp), dim_wh_algebraic(inp)
    osh = oshima_identity_check(inp.root, inp.theta, inp.supp_eta)
    body = {"continuous": _dimension(cont), "algebraic": _dimension(alg),
            "comparison_counts": {"pair_count": osh.pair_count, "filter_count": osh.rhs1,
                                  "supp_subgroup_order": osh.w_supp_order, "levi_filter_count": osh.rhs2,
                                  "levi_filter_count_simple": osh.rhs2_simple,
                                  "ok": osh.ok}}
    return body, 0 if cont.consistent and alg.consistent and osh.ok else 1


def report_verify(cfg: RunConfig) -> tuple:
    from . import suites  # keeps the algebra modules off the import path of the light commands
    results = suites.run_all(cfg)
    ok = all(r["passed"] for r in results.values() if r.get("passed") is not None)
    return {"suites": results, "passed": ok}, 0 if ok else 1


DISPATCH = {"rootinfo": report_rootinfo, "cells": report_cells, "dims": report_dims, "verify": report_verify}


def run_report(cfg: RunConfig) -> tuple:
    try:
        body, code = DISPATCH[cfg.command](cfg)
    except (MissingTable, NonSplitUnsupported, GroupTooLarge, ValueError) as exc:
        return {"config": cfg.echo(), "error": f"{type(exc).__name__}: {exc}", "exit": 2}, 2
    return {"config": cfg.echo(), "report": body, "exit": code}, code


def render_text(report: dict) -> str:
    lines = []

    def walk(obj, prefix):
        if isinstance(obj, dict):
            for k in sorted(obj):
                walk(obj[k], f"{prefix}.{k}" if prefix else k)
        elif isinstance(obj, list) and obj and isinstance(obj[0], (dict, list)):
            for i, v in enumerate(obj):
                walk(v, f"{prefix}[{i}]")
        else:
            lines.append(f"{prefix}: {json.dumps(obj)}")

    walk(report, "")
    return "\n".join(lines)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="whit", description=__doc__.splitlines()[0])
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--config", required=True)
    ap.add_argument("--format", choices=("json", "text"), default="json")
    ap.add_argument("--seed", type=int, default=None)
    args = ap.parse_args(argv)
    try:
        with open(args.config) as fh:
            text = fh.read()
        cfg = parse_config(text, command=args.command)
    except OSError as exc:
        print(json.dumps({"error": f"cannot read config: {exc}", "exit": 2}), file=sys.stdout)
        return 2
    except (ParseError, ValidationError) as exc:
        print(json.dumps({"error": f"{type(exc).__name__}: {exc}", "exit": 2}, sort_keys=True))
        return 2
    if args.seed is not None:
        cfg.seed = args.seed
    report, code = run_report(cfg)
    if args.format == "json":
        print(json.dumps(report, sort_keys=True, indent=2))
    else:
        print(render_text(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
