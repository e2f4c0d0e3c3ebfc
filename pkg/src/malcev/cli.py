"""Command-line interface.

Subcommands wrap the library one-to-one; the CLI adds only JSON I/O and
formatting.  All numbers are exact rational strings.  Exit code 0 means the
computation ran (even when the mathematical verdict is negative); nonzero
exit codes are reserved for malformed input and internal failures.
"""

import argparse
import hashlib
import json
import sys
from fractions import Fraction

from .linalg import Matrix, scalar, format_scalar
from .lie import (
    LieAlgebra, heisenberg, lcs_dims, check_automorphism,
)
from .freelie import hall_basis, free_nilpotent, word_to_json, word_str
from .bch import (
    bch, GroupPresentation, lattice_closed_under_bch, commutator_index,
)
from .dga import FiniteDGA, chevalley_eilenberg, massey_triple, MasseyUndefined
from .dgla import mc_solve
from .present import (
    QuadraticPresentation, CupDatum, realize, realized_graded_dims,
    is_quadratically_presented, malcev_model, weight_decomposition,
    lift_representation_criterion, lift_one_class,
)


class InputError(ValueError):
    pass


def load_json(arg):
    """Parse inline JSON, or read a file when the argument is a path."""
    s = arg.strip()
    if s.startswith("{") or s.startswith("["):
        try:
            return json.loads(s)
        except json.JSONDecodeError as e:
            raise InputError("invalid JSON: %s" % e)
    try:
        with open(arg) as f:
            return json.load(f)
    except OSError as e:
        raise InputError("cannot read %s: %s" % (arg, e))
    except json.JSONDecodeError as e:
        raise InputError("invalid JSON in %s: %s" % (arg, e))


def scalars(values):
    try:
        return tuple(scalar(v) for v in values)
    except (ValueError, TypeError, ZeroDivisionError) as e:
        raise InputError("bad scalar entry: %s" % e)


def digest(*objs):
    payload = json.dumps(objs, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(payload.encode()).hexdigest()[:16]


def report(args, command, inputs, verdicts, text_lines):
    out = {"command": command, "inputs_digest": digest(inputs),
           "verdicts": verdicts}
    if args.out == "json":
        print(json.dumps(out, indent=2, sort_keys=True))
    else:
        for line in text_lines:
            print(line)
    return 0


# ---------------------------------------------------------------------------
# Subcommands

def cmd_hall(args):
    groups = hall_basis(args.k, args.cls)
    words = [w for grp in groups for w in grp]
    verdicts = {
        "counts": [len(g) for g in groups],
        "total": len(words),
        "words": [word_to_json(w) for w in words],
    }
    lines = ["hall basis on %d generator(s), class %d:" % (args.k, args.cls)]
    for n, grp in enumerate(groups, start=1):
        lines.append("  degree %d (%d): %s" % (n, len(grp),
                                               ", ".join(word_str(w) for w in grp)))
    lines.append("total: %d" % len(words))
    return report(args, "hall", {"k": args.k, "class": args.cls}, verdicts, lines)


def _bch_algebra(args):
    if args.algebra:
        obj = load_json(args.algebra)
        try:
            return LieAlgebra.from_json(obj), obj
        except (KeyError, ValueError) as e:
            raise InputError("bad algebra JSON: %s" % e)
    if args.k is None:
        raise InputError("provide either --algebra or -k")
    if args.cls is None:
        raise InputError("free algebra needs --class")
    return free_nilpotent(args.k, args.cls), {"free": [args.k, args.cls]}


def cmd_bch(args):
    L, alg_obj = _bch_algebra(args)
    x = scalars(load_json(args.x))
    y = scalars(load_json(args.y))
    if len(x) != L.dim or len(y) != L.dim:
        raise InputError("elements must have %d coordinates" % L.dim)
    z = bch(x, y, L, cls=args.cls)
    verdicts = {"product": [format_scalar(c) for c in z]}
    lines = ["bch product: [%s]" % ", ".join(format_scalar(c) for c in z)]
    return report(args, "bch", {"algebra": alg_obj, "x": args.x, "y": args.y},
                  verdicts, lines)


def cmd_quadcheck(args):
    obj = load_json(args.algebra)
    try:
        L = LieAlgebra.from_json(obj)
    except (KeyError, ValueError) as e:
        raise InputError("bad algebra JSON: %s" % e)
    bad = L.check_jacobi()
    if bad:
        raise InputError("input violates the Jacobi identity at triples %s" % bad)
    v = is_quadratically_presented(L)
    verdicts = v.to_json()
    if v.yes:
        lines = ["quadratically presented: yes (%d relation(s))" % len(v.W)]
    else:
        lines = ["quadratically presented: no (stage: %s, failing degree: %s, "
                 "defect dim: %s)" % (v.stage, v.failing_degree, v.defect_dim)]
    return report(args, "quadcheck", obj, verdicts, lines)


def cmd_malcev_model(args):
    obj = load_json(args.cup)
    try:
        cd = CupDatum.from_json(obj)
    except (KeyError, ValueError) as e:
        raise InputError("bad cup datum: %s" % e)
    qp = malcev_model(cd)
    c = args.cls if args.cls is not None else 3
    L, stabilized = realize(qp, c)
    dims = realized_graded_dims(L)
    weights = weight_decomposition(qp, L)
    verdicts = {
        "presentation": qp.to_json(),
        "realization": L.to_json(),
        "stabilized": stabilized,
        "graded_dims": dims,
        "weights": weights,
    }
    lines = [
        "quadratic model: %d generator(s), %d relation(s)" % (qp.k, len(qp.relations)),
        "realized at class %d: dim %d, graded dims %s, stabilized: %s"
        % (c, L.dim, dims, stabilized),
        "weights: %s" % (weights,),
    ]
    return report(args, "malcev-model", obj, verdicts, lines)


def cmd_mc(args):
    dga_obj = load_json(args.dga)
    coeff_obj = load_json(args.coeff)
    try:
        A = FiniteDGA.from_json(dga_obj)
        N = LieAlgebra.from_json(coeff_obj)
    except (KeyError, ValueError) as e:
        raise InputError("bad input: %s" % e)
    initial = scalars(load_json(args.initial)) if args.initial else None
    try:
        rep = mc_solve(A, N, initial=initial)
    except ValueError as e:
        raise InputError(str(e))
    stages = []
    for s in rep.stages:
        entry = {"level": s.level, "obstructed": s.obstructed}
        if s.solution_dim is not None:
            entry["solution_dim"] = s.solution_dim
        if s.obstruction is not None:
            entry["obstruction_classes"] = [[format_scalar(c) for c in cl]
                                            for cl in s.obstruction]
        stages.append(entry)
    verdicts = {"completed": rep.completed, "stages": stages,
                "solution": [format_scalar(c) for c in rep.solution]}
    lines = ["maurer-cartan staged solve: %s"
             % ("completed" if rep.completed else "obstructed")]
    for e in stages:
        lines.append("  stage %d: %s" % (e["level"],
                     "obstructed" if e["obstructed"] else "lifted"))
    return report(args, "mc", {"dga": dga_obj, "coeff": coeff_obj},
                  verdicts, lines)


def cmd_massey(args):
    dga_obj = load_json(args.dga)
    try:
        A = FiniteDGA.from_json(dga_obj)
    except (KeyError, ValueError) as e:
        raise InputError("bad DGA JSON: %s" % e)
    p, q, r = args.degrees
    a = scalars(load_json(args.a))
    b = scalars(load_json(args.b))
    c = scalars(load_json(args.c))
    try:
        res = massey_triple(A, (p, a), (q, b), (r, c))
    except MasseyUndefined as e:
        raise InputError("massey product undefined: %s" % e)
    verdicts = res.to_json()
    lines = ["massey triple product in degree %d:" % res.degree,
             "  representative: [%s]" % ", ".join(format_scalar(x)
                                                  for x in res.representative),
             "  vanishes: %s" % res.vanishes]
    return report(args, "massey",
                  {"dga": dga_obj, "degrees": [p, q, r]}, verdicts, lines)


def cmd_lift(args):
    obj = load_json(args.data)
    mode = obj.get("mode")
    if mode == "criterion":
        try:
            qp = QuadraticPresentation.from_json(obj["presentation"])
            if "free" in obj:
                k, c = obj["free"]
                U = free_nilpotent(k, c)
            else:
                U = LieAlgebra.from_json(obj["target"])
            rho2 = [scalars(v) for v in obj["rho2"]]
        except (KeyError, ValueError) as e:
            raise InputError("bad criterion input: %s" % e)
        res = lift_representation_criterion(qp, U, rho2)
        verdicts = {"lifted": res.lifted}
        if res.lifted:
            verdicts["images"] = [[format_scalar(c) for c in v] for v in res.images]
            lines = ["lift exists"]
        else:
            verdicts["obstruction"] = [
                {"relation": [format_scalar(c) for c in rel],
                 "image": [format_scalar(c) for c in val]}
                for rel, val in res.witness]
            lines = ["no lift: theta does not annihilate the relations"]
        return report(args, "lift", obj, verdicts, lines)
    if mode == "one-class":
        try:
            p = GroupPresentation.from_json(obj["presentation"])
            if "free" in obj:
                k0, c0 = obj["free"]
                U = free_nilpotent(k0, c0)
            else:
                U = LieAlgebra.from_json(obj["algebra"])
            assignment = {g: scalars(v) for g, v in obj["assignment"].items()}
            level = obj["k"]
        except (KeyError, ValueError) as e:
            raise InputError("bad one-class input: %s" % e)
        try:
            res = lift_one_class(p, assignment, U, level)
        except ValueError as e:
            raise InputError(str(e))
        verdicts = {"lifted": res.lifted}
        if res.lifted:
            verdicts["assignment"] = {
                g: [format_scalar(c) for c in el.log]
                for g, el in res.images.items()}
            lines = ["lifted one class; verified against all relators"]
        else:
            verdicts["defects"] = [
                {"relator": rel, "defect": [format_scalar(c) for c in d]}
                for rel, d in res.witness]
            lines = ["obstructed: relator defects cannot be removed by "
                     "central corrections"]
            for rel, d in res.witness:
                lines.append("  %s -> [%s]" % (" ".join(rel),
                                               ", ".join(format_scalar(c) for c in d)))
        return report(args, "lift", obj, verdicts, lines)
    raise InputError("mode must be 'criterion' or 'one-class'")


def cmd_lattice_check(args):
    if args.matrix:
        mobj = load_json(args.matrix)
        try:
            M = Matrix([scalars(row) for row in mobj])
            idx = commutator_index(M)
        except ValueError as e:
            raise InputError(str(e))
        verdicts = {"commutator_index": idx}
        lines = ["commutator index: %s" % ("infinite" if idx is None else idx)]
        return report(args, "lattice-check", {"matrix": mobj}, verdicts, lines)
    if not args.lattice:
        raise InputError("provide --lattice or --matrix")
    if args.algebra:
        alg_obj = load_json(args.algebra)
        try:
            L = LieAlgebra.from_json(alg_obj)
        except (KeyError, ValueError) as e:
            raise InputError("bad algebra JSON: %s" % e)
    else:
        L, alg_obj = heisenberg(), "heisenberg"
    lobj = load_json(args.lattice)
    basis = [scalars(v) for v in lobj]
    if any(len(v) != L.dim for v in basis):
        raise InputError("lattice vectors must have %d coordinates" % L.dim)
    witness = lattice_closed_under_bch(L, basis)
    closed = witness is None
    verdicts = {"closed": closed}
    if closed:
        lines = ["lattice closed under the group law"]
    else:
        x, y, z = witness
        verdicts["witness"] = {"x": [format_scalar(c) for c in x],
                               "y": [format_scalar(c) for c in y],
                               "product": [format_scalar(c) for c in z]}
        lines = ["lattice NOT closed: bch([%s], [%s]) = [%s] escapes"
                 % (", ".join(format_scalar(c) for c in x),
                    ", ".join(format_scalar(c) for c in y),
                    ", ".join(format_scalar(c) for c in z))]
    return report(args, "lattice-check", {"algebra": alg_obj, "lattice": lobj},
                  verdicts, lines)


HEISENBERG_LATTICE = [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1/2"]]
DEMO_MATRIX = [["2", "3"], ["1", "2"]]


def cmd_heisenberg_demo(args):
    """End-to-end worked example: the Heisenberg lattice group extended by
    an infinite-order integral symplectic matrix is excluded as the
    fundamental group of any compact Kaehler manifold."""
    h = heisenberg()
    steps = []
    lines = []

    def step(name, ok, detail):
        steps.append({"step": len(steps) + 1, "name": name, "ok": ok,
                      "detail": detail})
        lines.append("[%d] %-34s %s  (%s)" % (len(steps), name,
                                              "pass" if ok else "FAIL", detail))

    # (1) Jacobi
    bad = h.check_jacobi()
    step("jacobi identity", not bad, "violations: %d" % len(bad))

    # (2) lattice closure under BCH
    lattice = load_json(args.lattice) if args.lattice else HEISENBERG_LATTICE
    basis = [scalars(v) for v in lattice]
    witness = lattice_closed_under_bch(h, basis)
    if witness is None:
        step("lattice closed under group law", True, "all generator products inside")
    else:
        step("lattice closed under group law", False,
             "witness product [%s]" % ", ".join(format_scalar(c) for c in witness[2]))

    # (3) SL2 acts by automorphisms: v part transformed, center scaled by det
    def act(mat):
        a, b, c, d = (scalar(mat[0][0]), scalar(mat[0][1]),
                      scalar(mat[1][0]), scalar(mat[1][1]))
        det = a * d - b * c
        return Matrix([[a, b, Fraction(0)], [c, d, Fraction(0)],
                       [Fraction(0), Fraction(0), det]])

    gens = {"S": [[0, -1], [1, 0]], "T": [[1, 1], [0, 1]],
            "M": load_json(args.matrix) if args.matrix else DEMO_MATRIX}
    auto_ok = all(check_automorphism(h, act(m)) for m in gens.values())
    step("integral symplectic action by automorphisms", auto_ok,
         "checked %s" % ", ".join(sorted(gens)))

    # (4) lower central series
    dims = lcs_dims(h)
    step("lower central series dims", dims == [3, 1, 0], "%s" % dims)

    # (5) quadraticity
    v = is_quadratically_presented(h)
    step("not quadratically presented", not v.yes,
         "failing degree %s, defect dim %s" % (v.failing_degree, v.defect_dim))

    # (6) commutator index of the abelianized action
    M = Matrix([scalars(row) for row in gens["M"]])
    idx = commutator_index(M)
    step("commutator subgroup of finite index", idx is not None,
         "index %s -> abelianization test %s"
         % ("infinite" if idx is None else idx,
            "blind (real abelianization is quadratic)" if idx is not None
            else "applicable"))

    # (7) one-class lift obstruction
    U = free_nilpotent(2, 3)
    p = GroupPresentation(
        ["x", "y", "z"],
        [["x", "y", "x^-1", "y^-1", "z^-1", "z^-1"],
         ["x", "z", "x^-1", "z^-1"],
         ["y", "z", "y^-1", "z^-1"]])
    assignment = {"x": (Fraction(1), Fraction(0), Fraction(0)),
                  "y": (Fraction(0), Fraction(1), Fraction(0)),
                  "z": (Fraction(0), Fraction(0), Fraction(1, 2))}
    lift = lift_one_class(p, assignment, U, 3)
    step("one-class lift obstructed", not lift.lifted,
         "defects on %d relator(s)" % (len(lift.witness) if lift.witness else 0))

    # (8) Massey witness
    A = chevalley_eilenberg(h)
    e1 = (Fraction(1), Fraction(0), Fraction(0))
    e2 = (Fraction(0), Fraction(1), Fraction(0))
    massey = massey_triple(A, (1, e1), (1, e1), (1, e2))
    step("massey triple product nonzero", not massey.vanishes,
         "representative [%s]" % ", ".join(format_scalar(c)
                                           for c in massey.representative))

    core = [s for s in steps if s["step"] in (1, 3, 4, 5, 7, 8)]
    excluded = all(s["ok"] for s in core)
    verdicts = {"steps": steps, "excluded_as_kaehler_group": excluded}
    lines.append("verdict: %s" % (
        "excluded as a Kaehler group (quadraticity and lifting both fail)"
        if excluded else "exclusion chain incomplete"))
    return report(args, "heisenberg-demo",
                  {"lattice": lattice, "matrix": gens["M"]}, verdicts, lines)


# ---------------------------------------------------------------------------

def build_parser():
    parser = argparse.ArgumentParser(
        prog="malcev",
        description="Exact computations with nilpotent Lie algebras, the "
                    "Campbell-Baker-Hausdorff group law, Maurer-Cartan "
                    "deformations, quadratic models, and Massey products.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--out", choices=["json", "text"], default="text")

    p = sub.add_parser("hall", help="Hall basis of a free nilpotent Lie algebra")
    p.add_argument("-k", type=int, required=True, help="number of generators")
    p.add_argument("--class", dest="cls", type=int, required=True)
    common(p)
    p.set_defaults(func=cmd_hall)

    p = sub.add_parser("bch", help="group product log(exp x . exp y)")
    p.add_argument("x", help="element JSON (array of scalars) or file")
    p.add_argument("y")
    p.add_argument("--algebra", help="Lie algebra JSON or file")
    p.add_argument("-k", type=int, help="use the free algebra on k generators")
    p.add_argument("--class", dest="cls", type=int)
    common(p)
    p.set_defaults(func=cmd_bch)

    p = sub.add_parser("quadcheck", help="decide quadratic presentability")
    p.add_argument("algebra")
    common(p)
    p.set_defaults(func=cmd_quadcheck)

    p = sub.add_parser("malcev-model", help="quadratic model from a cup datum")
    p.add_argument("cup")
    p.add_argument("--class", dest="cls", type=int, default=3)
    common(p)
    p.set_defaults(func=cmd_malcev_model)

    p = sub.add_parser("mc", help="staged Maurer-Cartan solve")
    p.add_argument("dga")
    p.add_argument("coeff", help="nilpotent coefficient Lie algebra JSON")
    p.add_argument("--initial", help="initial stage-1 cocycle JSON")
    common(p)
    p.set_defaults(func=cmd_mc)

    p = sub.add_parser("massey", help="triple Massey product")
    p.add_argument("dga")
    p.add_argument("--degrees", type=int, nargs=3, required=True,
                   metavar=("P", "Q", "R"))
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--c", required=True)
    common(p)
    p.set_defaults(func=cmd_massey)

    p = sub.add_parser("lift", help="representation lifting")
    p.add_argument("data", help="JSON with mode 'criterion' or 'one-class'")
    common(p)
    p.set_defaults(func=cmd_lift)

    p = sub.add_parser("lattice-check", help="lattice closure / commutator index")
    p.add_argument("--algebra")
    p.add_argument("--lattice", help="JSON list of basis vectors")
    p.add_argument("--matrix", help="integral matrix for the commutator index")
    common(p)
    p.set_defaults(func=cmd_lattice_check)

    p = sub.add_parser("heisenberg-demo",
                       help="worked example excluding a lattice group")
    p.add_argument("--lattice", help="override the default lattice basis")
    p.add_argument("--matrix", help="override the default symplectic matrix")
    common(p)
    p.set_defaults(func=cmd_heisenberg_demo)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as e:
        print("error: %s" % e, file=sys.stderr)
        return 2
    except MasseyUndefined as e:
        print("error: %s" % e, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
