"""Command-line interface.

Exit codes: 0 pass, 1 a checked property failed, 2 usage or input error,
3 the total state is GMW-entangled.
"""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from ._config import DEFAULT_EPS, tolerance
from .exterior import AntiSymTensor, inner, is_decomposable, wedge, wedge_all
from .lattice import contains, join, meet, overlaps
from .mereology import (
    AXIOMS,
    Assembly,
    GMWEntangledError,
    boolean_restriction,
    build_assembly,
    check_axioms,
    check_union_model,
    continuum_atoms_demo,
    verify_fusion_refutation,
    UnionObject,
    union_fusion,
    union_overlaps,
)
from .serialize import (
    DocumentError,
    complex_to_json,
    document_kind,
    dumps,
    load_document,
    state_from_doc,
    state_to_doc,
    subspace_to_json,
    vectors_from_doc,
)
from .subspace import Subspace

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_DOMAIN = 0, 1, 2, 3

DEMOS = ("singlet", "xi-square", "distributivity", "no-fusion", "boolean", "union-fix")


@dataclass
class RunConfig:
    seed: int = 0
    epsilon: float = DEFAULT_EPS
    samples: int = 64
    caps: dict = field(default_factory=lambda: {"product": 10**6, "sector": 10**3})

    def __post_init__(self):
        if not self.epsilon > 0:
            raise ValueError("epsilon must be positive")
        if self.samples < 1:
            raise ValueError("samples must be at least 1")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")


# -- demos ------------------------------------------------------------------


def _random_orthonormal_pair(rng: np.random.Generator):
    z = rng.standard_normal(2) + 1j * rng.standard_normal(2)
    plus = z / np.linalg.norm(z)
    minus = np.array([-np.conj(plus[1]), np.conj(plus[0])])
    return plus, minus


def demo_singlet(cfg: RunConfig):
    up, down = np.eye(2)
    singlet = wedge_all([up, down])
    rng = np.random.default_rng(cfg.seed)
    overlaps_ = []
    for _ in range(12):
        plus, minus = _random_orthonormal_pair(rng)
        overlaps_.append(abs(inner(singlet, wedge_all([plus, minus]))))
    ok = all(abs(v - 1.0) <= cfg.epsilon for v in overlaps_)
    atoms = continuum_atoms_demo(build_assembly([up, down]), 8)
    named = {
        "up": Subspace.span(up),
        "right": Subspace.span((up + down) / np.sqrt(2)),
        "down": Subspace.span(down),
        "left": Subspace.span((up - down) / np.sqrt(2)),
    }
    found = {k: any(a.space.equals(s) for a in atoms) for k, s in named.items()}
    ok = ok and all(found.values())
    lines = [f"|<up^down, n+^n->| over 12 random directions: min {min(overlaps_):.15f} max {max(overlaps_):.15f}"]
    lines.append("atomic parts on an 8-point grid include " + ", ".join(k for k, v in found.items() if v))
    return ok, {"overlaps": overlaps_, "grid_atoms_found": found}, lines


def demo_xi_square(cfg: RunConfig):
    e = lambda *i: AntiSymTensor.basis(4, i)
    xi = (e(0, 1) + e(2, 3)) / np.sqrt(2)
    sq = wedge(xi, xi)
    target = e(0, 1, 2, 3)
    verdict = is_decomposable(xi)
    ok = sq.allclose(target, 1e-12) and not verdict.decomposable
    lines = [f"xi ^ xi = {state_to_doc(sq)['coeffs']}", f"xi decomposable: {verdict.decomposable}"]
    return ok, {"xi": state_to_doc(xi), "xi_wedge_xi": state_to_doc(sq), "xi_decomposable": verdict.decomposable}, lines


def _spin_triple():
    up = Subspace.coordinate(2, [0])
    down = Subspace.coordinate(2, [1])
    right = Subspace.span(np.array([1.0, 1.0]) / np.sqrt(2))
    return up, down, right


def demo_distributivity(cfg: RunConfig):
    up, down, right = _spin_triple()
    lhs = meet(right, join(up, down))
    rhs = join(meet(right, up), meet(right, down))
    ok = lhs.equals(right) and rhs.is_zero
    lines = [
        f"right & (up + down) has rank {lhs.rank} (equals right: {lhs.equals(right)})",
        f"(right & up) + (right & down) has rank {rhs.rank}",
    ]
    return ok, {"lhs": subspace_to_json(lhs), "rhs": subspace_to_json(rhs)}, lines


def demo_no_fusion(cfg: RunConfig):
    assembly = build_assembly(np.eye(2))
    report = check_axioms(assembly, samples=cfg.samples, seed=cfg.seed)
    fusion = report.verdicts["unrestricted_fusion"]
    w = fusion.witness or {}
    ok = (
        report.pattern() == {"partial_order": True, "strong_supplementation": True, "atomicity": True, "unrestricted_fusion": False}
        and _reverify(report)
    )
    lines = []
    if "w0" in w:
        lines.append(f"w0 = span{np.round(w['w0'].generators[0], 12).tolist()}")
        lines.append(
            "violated side: w0 o z holds for z = x +_f y, but (w0 o x or w0 o y) is false"
        )
    return ok, report.to_dict(), lines


def demo_boolean(cfg: RunConfig):
    a3 = build_assembly(np.eye(4)[:3])
    r3 = boolean_restriction(a3, np.eye(4)[:3])
    singlet = build_assembly(np.eye(2))
    r2 = boolean_restriction(singlet, np.eye(2))
    ok = all(r3.pattern().values()) and all(r2.pattern().values()) and r3.objects == 7 and r2.objects == 3
    lines = [
        f"N=3 orthobasis: {r3.objects} objects, " + ", ".join(f"{k}={v}" for k, v in r3.pattern().items()),
        f"singlet with {{up, down}}: {r2.objects} objects",
    ]
    return ok, {"n3": r3.to_dict(), "singlet": r2.to_dict()}, lines


def demo_union_fix(cfg: RunConfig):
    up, down, right = _spin_triple()
    x, y = UnionObject((up,)), UnionObject((down,))
    z = union_fusion([x, y])
    probes = [x, y, z, UnionObject((right,)), UnionObject((Subspace.full(2),))]
    cond = {
        i: union_overlaps(w, z) == (union_overlaps(w, x) or union_overlaps(w, y)) for i, w in enumerate(probes)
    }
    model = check_union_model([up, down, right], seed=cfg.seed)
    ok = len(z.parts) == 2 and all(cond.values()) and all(model.pattern().values())
    lines = [
        f"fusion of {{up}} and {{down}} has {len(z.parts)} parts; fusion condition on {len(probes)} probes: {all(cond.values())}",
        "generated union model: " + ", ".join(f"{k}={v}" for k, v in model.pattern().items()),
    ]
    return ok, {"fusion": [subspace_to_json(p) for p in z.parts], "model": model.to_dict()}, lines


_DEMO_FUNCS = {
    "singlet": demo_singlet,
    "xi-square": demo_xi_square,
    "distributivity": demo_distributivity,
    "no-fusion": demo_no_fusion,
    "boolean": demo_boolean,
    "union-fix": demo_union_fix,
}


def _reverify(report) -> bool:
    """Re-check every failing verdict's witness before it is shown."""
    for name, verdict in report.verdicts.items():
        if verdict.holds:
            continue
        w = verdict.witness
        if name == "unrestricted_fusion" and report.model == "subspace":
            if not w or "w0" not in w:
                return False
            x, y = w["x"].space, w["y"].space
            if not (
                verify_fusion_refutation(x, y, w["candidate"], w["w0"])
                and overlaps(w["w0"], w["candidate"])
                and contains(w["candidate"], x)
                and contains(w["candidate"], y)
            ):
                return False
        elif not w:
            return False
    return True


# -- commands ---------------------------------------------------------------


def _emit(payload: dict, args, stdout: bool = False) -> None:
    text = dumps(payload)
    if args.json:
        Path(args.json).write_text(text)
    if stdout:
        sys.stdout.write(text)


def cmd_demo(args, cfg: RunConfig) -> int:
    ok, payload, lines = _DEMO_FUNCS[args.name](cfg)
    for line in lines:
        print(line)
    print(f"{args.name}: {'PASS' if ok else 'FAIL'}")
    _emit({"demo": args.name, "pass": ok, "seed": cfg.seed, "result": payload}, args)
    return EXIT_OK if ok else EXIT_FAIL


def _load_assembly(path) -> Assembly:
    doc = load_document(path)
    if document_kind(doc) == "state":
        return Assembly.from_state(state_from_doc(doc))
    try:
        return build_assembly(vectors_from_doc(doc))
    except ValueError as exc:
        raise DocumentError(str(exc)) from None


def cmd_check(args, cfg: RunConfig) -> int:
    start = time.perf_counter()
    assembly = _load_assembly(args.file)
    report = check_axioms(assembly, samples=cfg.samples, seed=cfg.seed)
    elapsed = time.perf_counter() - start
    verified = _reverify(report)
    for name in AXIOMS:
        v = report.verdicts[name]
        print(f"{name}: {'PASS' if v.holds else 'FAIL'} ({v.checked} checked)")
    w = report.verdicts["unrestricted_fusion"].witness
    if not report.holds("unrestricted_fusion") and w and "w0" in w:
        print(f"  witness w0 = span{np.round(w['w0'].generators[0], 12).tolist()}")
    print(f"elapsed {elapsed:.3f}s, witnesses re-verified: {verified}")
    payload = {"dim": assembly.dim, "N": assembly.N, "config": asdict(cfg), "report": report.to_dict(), "witnesses_verified": verified}
    if args.timing:
        payload["elapsed_s"] = elapsed
    _emit(payload, args)
    if not verified:
        return EXIT_FAIL
    if args.strict and not all(report.pattern().values()):
        return EXIT_FAIL
    return EXIT_OK


def _load_tensor(path) -> AntiSymTensor:
    doc = load_document(path)
    if document_kind(doc) == "state":
        return state_from_doc(doc)
    return wedge_all(vectors_from_doc(doc), dim=int(doc["dim"]))


def _load_space(path) -> Subspace:
    doc = load_document(path)
    if document_kind(doc) == "state":
        verdict = is_decomposable(state_from_doc(doc))
        if not verdict.decomposable:
            raise DocumentError(f"{path}: state is GMW-entangled and has no system-space")
        return verdict.support
    return Subspace.span(vectors_from_doc(doc), int(doc["dim"]))


def cmd_algebra(args, cfg: RunConfig) -> int:
    op, files = args.op, args.inputs
    arity = {"wedge": 2, "decompose": 1, "fuse": 2, "meet": 2}[op]
    if len(files) != arity:
        raise DocumentError(f"algebra {op} takes {arity} input file(s), got {len(files)}")
    if op == "wedge":
        a, b = (_load_tensor(f) for f in files)
        result = {"op": op, "result": state_to_doc(wedge(a, b))}
    elif op == "decompose":
        verdict = is_decomposable(_load_tensor(files[0]))
        result = {"op": op, "decomposable": verdict.decomposable, "support_rank": verdict.support_rank}
        if verdict.decomposable:
            result["support"] = [[complex_to_json(z) for z in g] for g in verdict.support.generators]
        else:
            result["note"] = "GMW-entangled: not a wedge of one-particle states"
    else:
        x, y = (_load_space(f) for f in files)
        if op == "fuse":
            space = join(x, y)
            result = {"op": op, "result": subspace_to_json(space), "note": "fermionic fusion, not mereological fusion"}
        else:
            result = {"op": op, "result": subspace_to_json(meet(x, y))}
    _emit(result, args, stdout=True)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="64-bit seed for every random choice")
    common.add_argument("--epsilon", type=float, default=DEFAULT_EPS, help="tolerance for rank cuts and equality")
    common.add_argument("--samples", type=int, default=64, help="random subspaces per sample")
    common.add_argument("--json", metavar="OUT", help="write the JSON result to this file")

    parser = argparse.ArgumentParser(prog="fermereo", description="Fermionic composition and mereology checks.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("demo", parents=[common], help="run one of the scripted scenarios")
    p.add_argument("name", choices=DEMOS)
    p.set_defaults(func=cmd_demo)

    p = sub.add_parser("check", parents=[common], help="check the mereology axioms for an assembly file")
    p.add_argument("file")
    p.add_argument("--strict", action="store_true", help="exit 1 when any axiom fails")
    p.add_argument("--timing", action="store_true", help="include wall time in the JSON output")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("algebra", parents=[common], help="exterior-algebra and lattice utilities")
    p.add_argument("op", choices=("wedge", "decompose", "fuse", "meet"))
    p.add_argument("inputs", nargs="+")
    p.set_defaults(func=cmd_algebra)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = RunConfig(seed=args.seed, epsilon=args.epsilon, samples=args.samples)
    except ValueError as exc:
        parser.error(str(exc))
    try:
        with tolerance(cfg.epsilon):
            return args.func(args, cfg)
    except GMWEntangledError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (DocumentError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
