"""Command-line front end.

Subcommands: validate, radial, extend, busemann, certify, estimate-e, gen.

Exit codes: 0 success / feasible, 1 witness found / infeasible (informative
negative), 2 usage or input error, 3 numeric non-convergence.

``--format machine`` emits a single JSON document on stdout with all floats
rounded to 9 significant digits; identical inputs and seed reproduce
byte-identical machine output (timing is reported only in human format).
Size caps are configurable via the MONOLIP_TRIPLE_CAP and MONOLIP_SIZE_CAP
environment variables.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time

import numpy as np

from . import __version__, cones, extension, files, obstruction, poset as poset_mod
from . import spaces, trees
from .errors import (
    ConvergenceError,
    MonolipError,
    NumericInstabilityError,
    RadialityRequiredError,
    SchemaError,
    SizeCapError,
)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_NUMERIC = 3

TRIPLE_CAP = int(os.environ.get("MONOLIP_TRIPLE_CAP", poset_mod.DEFAULT_TRIPLE_CAP))
SIZE_CAP = int(os.environ.get("MONOLIP_SIZE_CAP", 4096))


# ---------------------------------------------------------------------------
# Report plumbing
# ---------------------------------------------------------------------------


def _sha256(path):
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(65536), b""):
            h.update(chunk)
    return h.hexdigest()


def _round9(obj):
    """Round every float to 9 significant digits, recursively."""
    if isinstance(obj, float):
        return float(format(obj, ".9g"))
    if isinstance(obj, dict):
        return {k: _round9(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round9(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _round9(obj.tolist())
    if isinstance(obj, (np.floating,)):
        return _round9(float(obj))
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    return obj


def _fmt(x):
    return format(float(x), ".9g")


class Report:
    """Run report: command, input digests, seed, structured outcome."""

    def __init__(self, command, seed=None):
        self.command = command
        self.seed = seed
        self.inputs = {}
        self.outcome = {}
        self.lines = []
        self._t0 = time.monotonic()

    def add_input(self, path):
        self.inputs[path] = _sha256(path)

    def say(self, text):
        self.lines.append(text)

    def emit(self, fmt):
        if fmt == "machine":
            doc = {
                "command": self.command,
                "inputs": self.inputs,
                "outcome": _round9(self.outcome),
                "version": __version__,
            }
            if self.seed is not None:
                doc["seed"] = self.seed
            print(json.dumps(doc, sort_keys=True, separators=(",", ":")))
        else:
            for line in self.lines:
                print(line)
            ms = (time.monotonic() - self._t0) * 1000.0
            print(f"[{self.command}] done in {ms:.1f} ms")


# ---------------------------------------------------------------------------
# Shared argument helpers
# ---------------------------------------------------------------------------


def _vector(text):
    try:
        return np.array([float(x) for x in text.split(",")], dtype=float)
    except ValueError:
        raise SchemaError(f"cannot parse vector {text!r} (expected comma floats)")


def _target_from_args(args, report):
    """Build the target space selected by --space and its companion flags."""
    if args.space == "hilbert":
        if args.e is None:
            raise SchemaError("--space hilbert requires --e")
        e = _vector(args.e)
        norm = float(np.linalg.norm(e))
        if norm == 0:
            raise SchemaError("--e must be nonzero")
        e = e / norm
        if args.cone is not None:
            report.add_input(args.cone)
            cone = files.load_cone(args.cone)
        else:
            # Default: the ray cone generated by e itself (e is then
            # automatically in the cone and its dual).
            cone = cones.ConeOrder(dim=e.shape[0], generators=e[None, :])
        return spaces.HilbertRay(dim=e.shape[0], e=e, cone=cone)
    if args.space == "halfspace":
        n = args.n
        if n is None:
            if args.point is None:
                raise SchemaError("--space halfspace requires --n or --point")
            n = len(_vector(args.point))
        return spaces.HalfSpaceHn(n=n)
    if args.space == "tree":
        if args.tree is None:
            raise SchemaError("--space tree requires --tree")
        report.add_input(args.tree)
        return files.load_tree(args.tree)
    raise SchemaError(f"unknown space {args.space!r}")


def _tree_point(tree, text):
    """Parse a tree point: vertex id, 'edge:u:v:offset', or 'ray:t'."""
    parts = text.split(":")
    if parts[0] == "edge" and len(parts) == 4:
        return tree.canon(("edge", parts[1], parts[2], float(parts[3])))
    if parts[0] == "ray" and len(parts) == 2:
        return tree.canon(("ray", float(parts[1])))
    return tree.canon(text)


def _witness_doc(poset, w):
    return {
        "kind": w.kind,
        "triple": list(w.triple),
        "labels": [poset.labels[i] for i in w.triple],
        "lhs": w.lhs,
        "rhs": w.rhs,
        "ratio": w.ratio,
    }


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def _cmd_validate(args, report):
    report.add_input(args.poset)
    poset = files.load_poset(args.poset)
    ver = poset_mod.validate(poset, tol=args.tol)
    report.outcome = {
        "ok": ver.ok,
        "violations": [
            {"kind": v.kind, "indices": list(v.indices), "detail": v.detail}
            for v in ver.violations
        ],
    }
    if ver.ok:
        report.say(f"valid metric poset on {poset.n} points")
        return EXIT_OK
    for v in ver.violations:
        report.say(f"violation [{v.kind}] at {v.indices}: {v.detail}")
    return EXIT_NEGATIVE


def _cmd_radial(args, report):
    report.add_input(args.poset)
    poset = files.load_poset(args.poset)
    w = poset_mod.check_radiality(poset, tol=args.tol, triple_cap=TRIPLE_CAP)
    if w is None:
        report.outcome = {"radial": True}
        report.say("radial: no violating triple")
        return EXIT_OK
    report.outcome = {"radial": False, "witness": _witness_doc(poset, w)}
    report.say(
        f"{w.kind} witness at triple {w.triple} "
        f"({', '.join(poset.labels[i] for i in w.triple)}): "
        f"lhs={_fmt(w.lhs)}, rhs={_fmt(w.rhs)}"
    )
    return EXIT_NEGATIVE


def _result_doc(res):
    return {
        "status": res.status,
        "K": res.K,
        "values": res.values,
        "residuals": {
            "lipschitz": res.residuals.lipschitz,
            "order": res.residuals.order,
            "anchor": res.residuals.anchor,
        }
        if res.residuals is not None
        else None,
    }


def _cmd_extend(args, report):
    report.add_input(args.problem)
    problem = files.load_problem(args.problem, tol=args.tol)
    if args.mode == "interpolate":
        positions = []
        for lab in problem.domain.labels:
            try:
                positions.append(float(lab))
            except ValueError:
                raise SchemaError(
                    "affine-interpolation mode needs a domain on the real "
                    f"line with numeric labels; got {lab!r}"
                )
        anchors = [positions[i] for i in problem.subset]
        queries = (
            [float(q) for q in args.queries.split(",")]
            if args.queries
            else [positions[i] for i in range(problem.domain.n)]
        )
        cone = None if problem.is_scalar else problem.target
        out = extension.line_extend(anchors, problem.f, queries, cone=cone)
        report.outcome = {
            "status": "Feasible",
            "K": 1.0,
            "queries": queries,
            "values": out,
        }
        for q, v in zip(queries, np.atleast_2d(out)):
            report.say(f"F({_fmt(q)}) = ({', '.join(_fmt(c) for c in v)})")
        return EXIT_OK
    if args.mode == "scalar":
        res = extension.scalar_extend(problem)
    elif args.mode == "componentwise":
        res = extension.componentwise_extend(problem)
    elif args.mode == "feasible":
        if args.K is None:
            raise SchemaError("--mode feasible requires --K")
        res = extension.feasibility_at_K(
            problem, args.K, max_iter=args.max_iter, seed=args.seed
        )
    else:
        raise SchemaError(f"unknown mode {args.mode!r}")
    report.outcome = _result_doc(res)
    report.say(f"status: {res.status}" + (f", K = {_fmt(res.K)}" if res.K else ""))
    if res.values is not None:
        for lab, v in zip(problem.domain.labels, np.atleast_2d(res.values)):
            report.say(f"  {lab}: ({', '.join(_fmt(c) for c in v)})")
    if res.status == extension.FEASIBLE:
        return EXIT_OK
    if res.status == extension.INFEASIBLE:
        return EXIT_NEGATIVE
    return EXIT_NUMERIC


def _cmd_busemann(args, report):
    target = _target_from_args(args, report)
    if args.point is None:
        raise SchemaError("busemann requires --point")
    if args.space == "tree":
        point = _tree_point(target, args.point)
        label = args.point
    else:
        point = _vector(args.point)
        target.check_point(point)
        label = args.point
    value = float(target.busemann(point))
    report.outcome = {"space": args.space, "point": label, "busemann": value}
    report.say(f"busemann({label}) = {_fmt(value)}")
    if args.limit:
        lim = spaces.busemann_limit(target, point, tol=args.tol)
        report.outcome["limit"] = lim.value
        report.outcome["horizon"] = lim.horizon
        report.outcome["limit_gap"] = abs(lim.value - value)
        report.say(
            f"limit oracle at T={_fmt(lim.horizon)}: {_fmt(lim.value)} "
            f"(gap {_fmt(abs(lim.value - value))})"
        )
    return EXIT_OK


def _cmd_certify(args, report):
    report.add_input(args.poset)
    poset = files.load_poset(args.poset)
    target = _target_from_args(args, report)
    bound, cert = obstruction.e2_lower_bound(
        poset, target, tol=args.tol, triple_cap=TRIPLE_CAP
    )
    if cert is None:
        report.outcome = {"radial": True, "bound": 1.0}
        report.say("radial: no obstruction, lower bound 1")
        return EXIT_OK
    w = cert.witness
    report.outcome = {
        "radial": False,
        "bound": cert.bound,
        "target": cert.target,
        "witness": _witness_doc(poset, w),
        "chain": [
            {"statement": s.statement, "lhs": s.lhs, "relation": s.relation, "rhs": s.rhs}
            for s in cert.chain
        ],
    }
    report.say(
        f"{w.kind} witness at triple {w.triple}: lhs={_fmt(w.lhs)}, rhs={_fmt(w.rhs)}"
    )
    report.say(f"certified lower bound on the extension modulus: {_fmt(cert.bound)}")
    for s in cert.chain:
        report.say(f"  {s.statement}: {_fmt(s.lhs)} {s.relation} {_fmt(s.rhs)}")
    return EXIT_NEGATIVE


def _cmd_estimate_e(args, report):
    report.add_input(args.problem)
    problem = files.load_problem(args.problem, tol=args.tol)
    if args.samples:
        rng = np.random.default_rng(args.seed)
        k, m = len(problem.subset), problem.target.dim
        scale = max(1.0, float(np.max(problem.domain.dist)))
        best, conclusive = 1.0, True
        for _ in range(args.samples):
            raw = rng.normal(scale=scale, size=(k, m))
            f = np.column_stack(
                [
                    extension.fit_monotone_lipschitz(
                        problem.domain, problem.subset, raw[:, c], lipschitz=1.0 / m
                    )
                    for c in range(m)
                ]
            )
            sampled = extension.ExtensionProblem(
                domain=problem.domain,
                subset=problem.subset,
                target=problem.target,
                f=f,
                tol=1e-6,
            )
            est = extension.estimate_e(
                sampled, tol=args.tol if args.tol < 1 else 1e-4,
                max_iter=args.max_iter, seed=args.seed,
            )
            best = max(best, est.K)
            conclusive = conclusive and est.conclusive
        report.outcome = {
            "samples": args.samples,
            "modulus_lower_bound": best,
            "conclusive": conclusive,
        }
        report.say(
            f"sampled modulus lower bound over {args.samples} admissible maps: "
            f"{_fmt(best)}"
        )
        return EXIT_OK if conclusive else EXIT_NUMERIC
    est = extension.estimate_e(
        problem, tol=args.tol if args.tol < 1 else 1e-4,
        max_iter=args.max_iter, seed=args.seed,
    )
    report.outcome = {
        "K": est.K,
        "lo": est.lo,
        "hi": est.hi,
        "conclusive": est.conclusive,
    }
    report.say(
        f"estimated minimal Lipschitz constant: {_fmt(est.K)} "
        f"(bracket [{_fmt(est.lo)}, {_fmt(est.hi)}], "
        f"{'conclusive' if est.conclusive else 'INCONCLUSIVE'})"
    )
    return EXIT_OK if est.conclusive else EXIT_NUMERIC


def _cmd_gen(args, report):
    if args.kind == "grid":
        cone = cones.orthant(args.dim, norm=args.norm)
        poset = poset_mod.grid_instance(
            args.dim, args.side, args.spacing, cone, size_cap=SIZE_CAP
        )
        doc = files.poset_to_dict(poset)
        files.dump(doc, args.out)
        report.outcome = {"kind": "grid", "points": poset.n, "out": args.out}
        report.say(f"wrote {poset.n}-point grid poset to {args.out}")
        return EXIT_OK
    if args.kind == "tree":
        rng = np.random.default_rng(args.seed)
        tree = trees.random_tree(args.vertices, rng)
        doc = files.tree_to_dict(tree)
        files.dump(doc, args.out)
        report.outcome = {
            "kind": "tree",
            "vertices": len(tree.vertices),
            "out": args.out,
        }
        report.say(f"wrote {len(tree.vertices)}-vertex tree to {args.out}")
        return EXIT_OK
    raise SchemaError(f"unknown generator {args.kind!r}")


# ---------------------------------------------------------------------------
# Parser and dispatch
# ---------------------------------------------------------------------------


def _build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=1e-9)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=("human", "machine"), default="human")
    common.add_argument("--max-iter", type=int, default=100_000, dest="max_iter")

    parser = argparse.ArgumentParser(
        prog="monolip",
        description="Order-preserving Lipschitz extensions on finite metric posets.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="subcommand")

    p = sub.add_parser("validate", parents=[common], help="check metric + order axioms")
    p.add_argument("poset")
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("radial", parents=[common], help="radiality check with witness")
    p.add_argument("poset")
    p.set_defaults(func=_cmd_radial)

    p = sub.add_parser("extend", parents=[common], help="solve an extension problem")
    p.add_argument("problem")
    p.add_argument(
        "--mode",
        choices=("interpolate", "scalar", "feasible", "componentwise"),
        default="scalar",
    )
    p.add_argument("--K", type=float, default=None)
    p.add_argument("--queries", default=None, help="comma floats (interpolate mode)")
    p.set_defaults(func=_cmd_extend)

    def add_space_flags(p):
        p.add_argument("--space", choices=("hilbert", "halfspace", "tree"), required=True)
        p.add_argument("--e", default=None, help="ray direction (hilbert)")
        p.add_argument("--cone", default=None, help="cone file (hilbert)")
        p.add_argument("--n", type=int, default=None, help="dimension (halfspace)")
        p.add_argument("--tree", default=None, help="tree file")

    p = sub.add_parser("busemann", parents=[common], help="evaluate a Busemann function")
    add_space_flags(p)
    p.add_argument("--point", default=None)
    p.add_argument("--limit", action="store_true", help="also run the limit oracle")
    p.set_defaults(func=_cmd_busemann)

    p = sub.add_parser("certify", parents=[common], help="obstruction certificate")
    p.add_argument("poset")
    add_space_flags(p)
    p.set_defaults(func=_cmd_certify)

    p = sub.add_parser(
        "estimate-e", parents=[common], help="minimal Lipschitz constant by bisection"
    )
    p.add_argument("problem")
    p.add_argument(
        "--samples",
        type=int,
        default=0,
        help="sample this many random admissible maps and report the max estimate",
    )
    p.set_defaults(func=_cmd_estimate_e)

    p = sub.add_parser("gen", parents=[common], help="write generated instances")
    p.add_argument("kind", choices=("grid", "tree"))
    p.add_argument("--out", required=True)
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--side", type=int, default=2)
    p.add_argument("--spacing", type=float, default=1.0)
    p.add_argument("--norm", choices=("l1", "l2", "linf"), default="l2")
    p.add_argument("--vertices", type=int, default=10)
    p.set_defaults(func=_cmd_gen)

    return parser


def dispatch(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors and 0 on --help/--version.
        return int(exc.code or 0)
    if not getattr(args, "subcommand", None):
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    report = Report(args.subcommand, seed=getattr(args, "seed", None))
    try:
        code = args.func(args, report)
    except (SchemaError, SizeCapError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except RadialityRequiredError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NEGATIVE
    except (ConvergenceError, NumericInstabilityError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except MonolipError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    report.emit(args.format)
    return code


def main():
    raise SystemExit(dispatch())


if __name__ == "__main__":
    main()
