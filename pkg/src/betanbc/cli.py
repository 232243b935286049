"""
Command-line front end.

    betanbc <subcommand> ARRANGEMENT [--weights W] [options]

Reports are JSON on stdout (or ``--output``). Exit codes: 0 success,
1 usage or parse error, 2 a computation contradicted a verified theorem.
Errors are reported as ``{"error": {"kind": ..., "message": ...}}`` on stderr.
"""

import argparse
import json
import random
import sys
from dataclasses import dataclass
from typing import Optional

from .arrangement import ArrangementError, load_arrangement, projective_closure
from .bases import (InconsistencyError, betanbc_basis, monomial_basis_check,
                    transition_matrix)
from .complexes import (broken_circuit_complex, check_lex_shelling, folkman_complex,
                        reduced_betti_numbers)
from .linalg import fstr
from .matroid import (betanbc_direct, betanbc_recursive, broken_circuits, char_poly,
                      circuits, nbc_bases, nbc_sets)
from .osalgebra import OSAlgebra, aomoto
from .resonance import (WeightVector, check_nonresonance, check_yuzvinsky,
                        dense_report, sample_weights)
from .verify import run_checks


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    arrangement: str
    subcommand: str
    weights: Optional[str] = None
    order: Optional[tuple] = None
    samples: int = 3
    seed: int = 0
    method: str = "direct"
    with_infinity: bool = False
    paper_example_compat: bool = False
    output: Optional[str] = None


def load_weights(path, n):
    try:
        with open(path) as f:
            data = json.load(f)
    except OSError as e:
        raise UsageError("cannot read weights: %s" % e) from None
    except json.JSONDecodeError as e:
        raise UsageError("weights file is not valid JSON: %s" % e) from None
    if not isinstance(data, list) or not all(isinstance(x, str) for x in data):
        raise UsageError("weights must be a JSON array of rational strings")
    if len(data) != n:
        raise UsageError("expected %d weights, got %d" % (n, len(data)))
    try:
        return WeightVector(data)
    except (ValueError, ZeroDivisionError):
        raise UsageError("malformed rational in weights: %r" % (data,)) from None


def parse_order(text, n):
    try:
        order = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError("order must be a comma-separated list of integers") from None
    if sorted(order) != list(range(1, n + 1)):
        raise UsageError("order must be a permutation of 1..%d" % n)
    return order


def _bases(Bs):
    return [list(B) for B in Bs]


def _need_weights(cfg, A):
    if cfg.weights is None:
        raise UsageError("%s requires --weights" % cfg.subcommand)
    return load_weights(cfg.weights, A.n)


def _lattice(cfg, A):
    L = A.lattice
    flats = []
    for X in L:
        flats.append({
            "id": X.id,
            "support": list(X.support),
            "codim": X.codim,
            "point": [fstr(x) for x in X.point],
            "directions": [[fstr(x) for x in d] for d in X.directions],
        })
    return {"dimension": A.dimension, "n": A.n, "rank": L.rank, "flats": flats}


def _circuits(cfg, A):
    return {"circuits": _bases(circuits(A)), "broken_circuits": _bases(broken_circuits(A))}


def _nbc(cfg, A):
    sets = nbc_sets(A)
    return {"rank": A.rank, "nbc": {str(p): _bases(sets[p]) for p in range(A.rank + 1)},
            "bases": _bases(nbc_bases(A))}


def _betanbc(cfg, A):
    if cfg.method == "direct":
        return _bases(betanbc_direct(A))
    if cfg.method == "recursive":
        return _bases(betanbc_recursive(A))
    rep = check_lex_shelling(A)
    if not rep.is_shelling:
        raise InconsistencyError("lexicographic order on nbc bases is not a shelling")
    return _bases(rep.homology_facets)


def _charpoly(cfg, A):
    chi = char_poly(A)
    return {"coefficients": [fstr(c) for c in chi.coefficients], "polynomial": str(chi),
            "beta": fstr((-1) ** A.rank * chi(1))}


def _complex_json(K, label):
    return {"dimension": K.dimension, "vertices": [label(v) for v in K.vertices],
            "facets": [[label(K.vertices[i]) for i in s] for s in K.facets()]}


def _folkman(cfg, A):
    F = folkman_complex(A)
    return _complex_json(F, lambda X: list(X.support))


def _betti(cfg, A):
    F = folkman_complex(A)
    BC = broken_circuit_complex(A)
    bF, bBC = reduced_betti_numbers(F), reduced_betti_numbers(BC)
    if bF != bBC:
        raise InconsistencyError("Folkman and broken circuit complexes have different Betti numbers")
    return {"degrees": list(range(-1, len(bF) - 1)), "folkman": bF, "broken_circuit": bBC}


def _os_dims(cfg, A):
    return {"dims": OSAlgebra(A).dims()}


def _aomoto(cfg, A):
    w = _need_weights(cfg, A)
    dims = aomoto(A, w).cohomology()
    yz = check_yuzvinsky(A, w).ok
    beta = len(betanbc_direct(A))
    if yz and dims != [0] * A.rank + [beta]:
        raise InconsistencyError("Aomoto cohomology %r contradicts vanishing under the dense-flat condition" % dims)
    return {"weights": w.to_json(), "cohomology": dims, "yuzvinsky": yz}


def _basis(cfg, A):
    w = _need_weights(cfg, A)
    return betanbc_basis(A, w).to_json()


def _monomial(cfg, A):
    w = _need_weights(cfg, A)
    rep = monomial_basis_check(A, w)
    return {"weights": w.to_json(), **rep.to_json()}


def _transition(cfg, A):
    w = _need_weights(cfg, A)
    if cfg.order is None:
        raise UsageError("transition requires --order")
    if cfg.samples < 1:
        raise UsageError("--samples must be positive")
    rng = random.Random(cfg.seed)
    samples = [w] + [sample_weights(rng, A) for _ in range(cfg.samples - 1)]
    return transition_matrix(A, cfg.order, samples).to_json()


def _dense(cfg, A):
    return dense_report(A, cfg.with_infinity, cfg.paper_example_compat)


def _nonresonance(cfg, A):
    w = _need_weights(cfg, A)
    rep = check_nonresonance(projective_closure(A), w, cfg.paper_example_compat)
    return {"ok": rep.ok, "violations": [{"support": s} for s in rep.violations],
            "conditions": [{"support": s} for s in rep.conditions]}


def _verify(cfg, A):
    w = _need_weights(cfg, A)
    return run_checks(A, w, cfg.seed)


COMMANDS = {
    "lattice": _lattice,
    "circuits": _circuits,
    "nbc": _nbc,
    "betanbc": _betanbc,
    "charpoly": _charpoly,
    "folkman": _folkman,
    "betti": _betti,
    "os-dims": _os_dims,
    "aomoto": _aomoto,
    "basis": _basis,
    "monomial-check": _monomial,
    "transition": _transition,
    "dense": _dense,
    "nonresonance": _nonresonance,
    "verify": _verify,
}


def _emit(obj, path, stream):
    text = json.dumps(obj, separators=(",", ":")) + "\n"
    if path:
        with open(path, "w") as f:
            f.write(text)
    else:
        stream.write(text)


def _error(kind, message):
    _emit({"error": {"kind": kind, "message": message}}, None, sys.stderr)


def run(cfg: RunConfig):
    """Run one subcommand; returns the exit code."""
    try:
        A = load_arrangement(cfg.arrangement)
    except OSError as e:
        _error("io", str(e))
        return 1
    except ArrangementError as e:
        _error("parse", str(e))
        return 1
    if cfg.order is not None and not isinstance(cfg.order, tuple):
        try:
            cfg.order = parse_order(cfg.order, A.n)
        except UsageError as e:
            _error("usage", str(e))
            return 1
    try:
        report = COMMANDS[cfg.subcommand](cfg, A)
    except UsageError as e:
        _error("usage", str(e))
        return 1
    except InconsistencyError as e:
        _error("inconsistency", str(e))
        return 2
    _emit(report, cfg.output, sys.stdout)
    if cfg.subcommand == "verify" and not report["ok"]:
        return 2
    return 0


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        _error("usage", message)
        raise SystemExit(1)


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("arrangement", help="arrangement JSON file")
    common.add_argument("--output", help="write the report here instead of stdout")
    common.add_argument("--paper-example-compat", action="store_true",
                        help="omit the condition on the hyperplane at infinity alone")
    common.add_argument("--seed", type=int, default=0)

    weighted = _Parser(add_help=False)
    weighted.add_argument("--weights", required=True, help="JSON array of rational strings")

    p = _Parser(prog="betanbc", description="Exact computations for affine arrangements with weights.")
    sub = p.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)
    for name in ("lattice", "circuits", "nbc", "charpoly", "folkman", "betti", "os-dims"):
        sub.add_parser(name, parents=[common])
    b = sub.add_parser("betanbc", parents=[common])
    b.add_argument("--method", choices=("direct", "recursive", "shelling"), default="direct")
    for name in ("aomoto", "basis", "monomial-check", "nonresonance", "verify"):
        sub.add_parser(name, parents=[common, weighted])
    t = sub.add_parser("transition", parents=[common, weighted])
    t.add_argument("--order", required=True, help="comma-separated permutation of 1..n")
    t.add_argument("--samples", type=int, default=3)
    d = sub.add_parser("dense", parents=[common])
    d.add_argument("--with-infinity", action="store_true")
    return p


def config_from_args(argv=None) -> RunConfig:
    ns = build_parser().parse_args(argv)
    return RunConfig(
        arrangement=ns.arrangement,
        subcommand=ns.subcommand,
        weights=getattr(ns, "weights", None),
        order=getattr(ns, "order", None),
        samples=getattr(ns, "samples", 3),
        seed=ns.seed,
        method=getattr(ns, "method", "direct"),
        with_infinity=getattr(ns, "with_infinity", False),
        paper_example_compat=ns.paper_example_compat,
        output=ns.output,
    )


def main(argv=None):
    try:
        cfg = config_from_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 1
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
