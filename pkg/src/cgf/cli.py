"""Command-line front end: parse ring/matrix/word JSON, dispatch the library
operations, and emit witness JSON with the verification report embedded.

Exit codes: 0 on success, 2 on domain errors (structured JSON on stdout) or
failed harness checks, 1 on usage errors.  Identical (command, input, seed)
invocations print byte-identical JSON.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from .errors import CgfError
from .factor import (common_perp, roitman, transvection_factor, two_row_equiv,
                     whitehead_linear, whitehead_symplectic)
from .homotopy import Homotopy, homotopy_commute_linear, \
    homotopy_commute_orthogonal, homotopy_commute_symplectic
from .localglobal import patch, quillen_split
from .matrices import IsotropicFrame, Mat, RightInverseCert, identity, \
    membership, right_inverse
from .oracle import OrbitTable, certify_equivalence, enumerate_orbits
from .orthoquot import (FactoredOrthogonal, classify_o2, commutator_harness,
                        vaserstein_quotient)
from .reduce import (complete_orth, complete_sp, complete_um_linear,
                     reduce_row_linear, reduce_row_symplectic)
from .rings import (IntegerRing, LocalizedIntegers, ModularRing, PolyExt,
                    PrimeField, RationalField, Ring, TruncatedPolyLocal,
                    ring_from_json)
from .words import GenWord, Witness, apply_word_to_row


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _maybe_file(text: str) -> str:
    if text.startswith("@"):
        with open(text[1:], "r", encoding="utf-8") as fh:
            return fh.read()
    return text


def parse_ring(text: str) -> Ring:
    """Shorthand (mod:4, prime:5, locint:5, polyloc:2:2, int, rat) or JSON."""
    text = _maybe_file(text).strip()
    if text.startswith("{"):
        return ring_from_json(json.loads(text))
    parts = text.split(":")
    kind = parts[0]
    if kind == "int":
        return IntegerRing()
    if kind == "rat":
        return RationalField()
    if kind == "mod":
        return ModularRing(int(parts[1]))
    if kind == "prime":
        return PrimeField(int(parts[1]))
    if kind == "locint":
        return LocalizedIntegers(int(parts[1]))
    if kind == "polyloc":
        return TruncatedPolyLocal(int(parts[1]), int(parts[2]))
    if kind == "poly":
        return PolyExt(parse_ring(":".join(parts[1:])), "T")
    raise _UsageError(f"unknown ring shorthand {text!r}")


def _parse_matrix(text: str, ring: Ring | None) -> Mat:
    obj = json.loads(_maybe_file(text))
    if isinstance(obj, dict):
        return Mat.from_json(obj)
    if ring is None:
        raise _UsageError("a bare entry grid needs --ring")
    return Mat(ring, [[ring.value_from_json(e) for e in row] for row in obj])


def _parse_row(text: str, ring: Ring) -> Mat:
    obj = json.loads(_maybe_file(text))
    return Mat(ring, [[ring.value_from_json(e) for e in obj]])


def _parse_word(text: str) -> GenWord:
    return GenWord.from_json(json.loads(_maybe_file(text)))


def _emit(obj) -> int:
    payload = obj.to_json() if hasattr(obj, "to_json") else obj
    sys.stdout.write(json.dumps(payload, sort_keys=True,
                                separators=(",", ":")) + "\n")
    return 0


def _word_witness(claim: str, inputs: dict, word: GenWord,
                  checks) -> Witness:
    return Witness.certify(claim, inputs, {"word": word}, checks)


# ---------------------------------------------------------------------------
# verb implementations

def _cmd_reduce_row(args) -> int:
    ring = parse_ring(args.ring)
    row = _parse_row(args.row, ring)
    if args.flavor == "linear":
        word = reduce_row_linear(row)
    elif args.flavor == "sp":
        word = reduce_row_symplectic(row)
    else:
        raise _UsageError("reduce-row supports --flavor linear|sp")
    out = apply_word_to_row(list(row.entries[0]), word)
    target = [ring.one()] + [ring.zero()] * (row.cols - 1)
    return _emit(_word_witness(f"reduce_row_{args.flavor}",
                               {"row": row}, word,
                               [("row . eval(word) == e_1", out == target)]))


def _cmd_complete(args) -> int:
    ring = parse_ring(args.ring) if args.ring else None
    mat = _parse_matrix(args.matrix, ring)
    if args.flavor == "linear":
        word = complete_um_linear(mat)
        group_check = ("eval(word) has determinant 1",
                       word.eval().det() == mat.ring.one())
    elif args.flavor == "sp":
        word = complete_sp(IsotropicFrame(mat, "sp"))
        group_check = ("eval(word) is symplectic",
                       membership(word.eval(), "Sp"))
    elif args.flavor == "orth":
        word = complete_orth(IsotropicFrame(mat, "orth"),
                             permissive=args.permissive)
        group_check = ("eval(word) is orthogonal",
                       membership(word.eval(), "O"))
    else:
        raise _UsageError("complete supports --flavor linear|sp|orth")
    got = word.eval()
    rows_match = Mat(mat.ring, got.entries[:mat.rows]) == mat
    return _emit(_word_witness(f"complete_{args.flavor}", {"matrix": mat},
                               word,
                               [("leading rows equal the input", rows_match),
                                group_check]))


def _cmd_whitehead(args) -> int:
    ring = parse_ring(args.ring) if args.ring else None
    mat = _parse_matrix(args.matrix, ring)
    if args.flavor == "linear":
        word = whitehead_linear(mat)
        target = mat.block_perp(mat.inverse())
    elif args.flavor == "sp":
        from .factor import sp_inverse
        word = whitehead_symplectic(mat)
        target = mat.block_perp(sp_inverse(mat))
    else:
        raise _UsageError("whitehead supports --flavor linear|sp")
    return _emit(_word_witness(f"whitehead_{args.flavor}", {"matrix": mat},
                               word,
                               [("eval(word) == d ⊥ d^{-1}",
                                 word.eval() == target)]))


def _cmd_transvection(args) -> int:
    ring = parse_ring(args.ring)
    col = _parse_row(args.col, ring).transpose()
    row = _parse_row(args.row, ring)
    word = transvection_factor(col, row)
    target = identity(ring, col.rows) + col @ row
    return _emit(_word_witness("transvection_factor",
                               {"col": col, "row": row}, word,
                               [("eval(word) == I + c.r",
                                 word.eval() == target)]))


def _cmd_common_perp(args) -> int:
    ring = parse_ring(args.ring)
    v1 = _parse_row(args.v1, ring)
    v2 = _parse_row(args.v2, ring)
    w = _parse_row(args.w, ring)
    word = common_perp(v1, v2, w)
    got = apply_word_to_row(list(v1.entries[0]), word)
    return _emit(_word_witness("common_perp", {"v1": v1, "v2": v2, "w": w},
                               word,
                               [("v1 . eval(word) == v2",
                                 got == list(v2.entries[0]))]))


def _cmd_two_row(args) -> int:
    ring = parse_ring(args.ring) if args.ring else None
    mat = _parse_matrix(args.matrix, ring)
    if args.beta:
        beta = _parse_matrix(args.beta, mat.ring)
        cert = RightInverseCert(mat, beta)
    else:
        cert = right_inverse(mat)
    word = two_row_equiv(mat, cert)
    got = apply_word_to_row(list(mat.entries[0]), word)
    return _emit(_word_witness("two_row_equiv", {"matrix": mat}, word,
                               [("row1 . eval(word) == row2",
                                 got == list(mat.entries[1]))]))


def _cmd_roitman(args) -> int:
    ring = parse_ring(args.ring)
    x = _parse_row(args.row, ring)
    y = _parse_row(args.target, ring)
    word = roitman(x, args.k, y)
    got = apply_word_to_row(list(x.entries[0]), word)
    expected = list(x.entries[0])[:args.k] + list(y.entries[0])
    return _emit(_word_witness("roitman", {"x": x, "k": args.k, "y": y}, word,
                               [("x . eval(word) == (x_<k, y)",
                                 got == expected)]))


def _cmd_homotopy_commute(args) -> int:
    spec = json.loads(_maybe_file(args.input))
    ring = ring_from_json(spec["ring"])
    rt = PolyExt(ring, spec.get("var", "T"))
    flavor = args.flavor
    name = {"linear": "linear", "sp": "symplectic",
            "orth": "orthogonal"}[flavor]
    if "delta_word" in spec:
        word = GenWord.from_json(spec["delta_word"])
        hom = Homotopy.from_word(name, word)
    else:
        hom = Homotopy.from_matrix(name, Mat.from_json(spec["delta_matrix"]))
    v = Mat(ring, [[ring.value_from_json(e) for e in row]
                   for row in spec["v"]])
    if flavor == "linear":
        res = homotopy_commute_linear(hom, v)
    elif flavor == "sp":
        res = homotopy_commute_symplectic(hom, IsotropicFrame(v, "sp"))
    else:
        res = homotopy_commute_orthogonal(hom, IsotropicFrame(v, "orth"))
    return _emit(res.witness)


def _cmd_split(args) -> int:
    theta = _parse_word(args.theta)
    res = quillen_split(theta, args.s1, args.s2, n_max=args.n_max,
                        exponent=args.exponent)
    return _emit(res.witness)


def _cmd_patch(args) -> int:
    s1m = _parse_matrix(args.sigma1, None)
    s2m = _parse_matrix(args.sigma2, None)
    glued = patch(s1m, s2m, args.s1, args.s2)
    return _emit(Witness.certify("patch", {"sigma1": s1m, "sigma2": s2m},
                                 {"glued": glued},
                                 [("localization equalities", True)]))


def _cmd_classify_o2(args) -> int:
    ring = parse_ring(args.ring) if args.ring else None
    mat = _parse_matrix(args.matrix, ring)
    cls = classify_o2(mat)
    return _emit(Witness.certify("classify_o2", {"matrix": mat},
                                 {"shape": cls.shape, "u": cls.u},
                                 [("reconstruction equals the input",
                                   cls.reconstruct() == mat)]))


def _cmd_ortho_quotient(args) -> int:
    ring = parse_ring(args.ring) if args.ring else None
    mat = _parse_matrix(args.matrix, ring)
    delta, word = vaserstein_quotient(mat)
    corner = identity(mat.ring, mat.rows - 2).block_perp(delta)
    return _emit(Witness.certify(
        "vaserstein_quotient", {"matrix": mat},
        {"delta": delta, "word": word},
        [("matrix == (I ⊥ delta) . eval(word)",
          corner @ word.eval() == mat)]))


def _cmd_ortho_commutator(args) -> int:
    a = FactoredOrthogonal(_parse_matrix(args.a_delta, None),
                           _parse_word(args.a_word))
    b = FactoredOrthogonal(_parse_matrix(args.b_delta, None),
                           _parse_word(args.b_word))
    _, witness = commutator_harness(a, b)
    return _emit(witness)


def _cmd_orbits(args) -> int:
    ring = parse_ring(args.ring)
    table = enumerate_orbits(ring, args.kind, args.family, args.size,
                             frame_rows=args.frame_rows, budget=args.budget,
                             workers=args.workers)
    if args.cache:
        with open(args.cache, "w", encoding="utf-8") as fh:
            json.dump(table.to_json(), fh, sort_keys=True,
                      separators=(",", ":"))
    return _emit({"orbits": table.orbit_count(),
                  "sizes": sorted(table.orbit_sizes()),
                  "objects": len(table.orbit_of)})


def _cmd_certify(args) -> int:
    with open(args.table, "r", encoding="utf-8") as fh:
        table = OrbitTable.from_json(json.load(fh))
    ring = table.ring
    v1 = tuple(ring.value_from_json(e).payload
               for e in json.loads(_maybe_file(args.v1)))
    v2 = tuple(ring.value_from_json(e).payload
               for e in json.loads(_maybe_file(args.v2)))
    word = certify_equivalence(v1, v2, table)
    if word is None:
        return _emit({"equivalent": False})
    return _emit({"equivalent": True, "word": word.to_json()})


# ---------------------------------------------------------------------------
# harness suites

def _harness_lemmas(rng, budget, corrupt=False):
    from .sampling import random_frame, random_unimodular_rows, random_word
    from .words import FAMILY_LIN, FAMILY_SP
    checks = []
    failures = 0
    ring = ModularRing(9)
    n_fail = 0
    for _ in range(budget):
        v, _ = random_unimodular_rows(rng, ring, 1, 3, 5)
        w = reduce_row_linear(v)
        out = apply_word_to_row(list(v.entries[0]), w)
        expected = [ring.one(), ring.zero(), ring.zero()]
        if corrupt:
            expected = [ring.zero()] * 3
        if out != expected:
            n_fail += 1
    checks.append({"name": "row reduction reaches e_1", "instances": budget,
                   "failures": n_fail})
    failures += n_fail

    n_fail = 0
    for _ in range(budget):
        v, _ = random_unimodular_rows(rng, ring, 2, 4, 5)
        word = complete_um_linear(v)
        if Mat(ring, word.eval().entries[:2]) != v:
            n_fail += 1
    checks.append({"name": "linear completion round trip",
                   "instances": budget, "failures": n_fail})
    failures += n_fail

    n_fail = 0
    for _ in range(budget):
        fr, _ = random_frame(rng, ring, "sp", 1, 2, 5)
        word = complete_sp(fr)
        if Mat(ring, word.eval().entries[:2]) != fr.mat:
            n_fail += 1
    checks.append({"name": "symplectic completion round trip",
                   "instances": budget, "failures": n_fail})
    failures += n_fail

    n_fail = 0
    Z4 = ModularRing(4)
    table = enumerate_orbits(Z4, "row", FAMILY_LIN, 3) if budget else None
    for _ in range(budget):
        m, _ = random_unimodular_rows(rng, Z4, 2, 3, 5)
        eps = two_row_equiv(m, right_inverse(m))
        got = apply_word_to_row(list(m.entries[0]), eps)
        ok = got == list(m.entries[1])
        key1 = tuple(v.payload for v in m.entries[0])
        key2 = tuple(v.payload for v in m.entries[1])
        ok = ok and certify_equivalence(key1, key2, table) is not None
        if not ok:
            n_fail += 1
    checks.append({"name": "two-row equivalence vs oracle",
                   "instances": budget, "failures": n_fail})
    failures += n_fail
    return checks, failures


def _harness_homotopy(rng, budget, corrupt=False):
    from .sampling import random_unimodular_rows, random_word
    from .words import FAMILY_LIN, FAMILY_SP
    checks = []
    failures = 0
    ring = ModularRing(9)
    rt = PolyExt(ring, "T")
    n_fail = 0
    for _ in range(budget):
        base = random_word(rng, ring, FAMILY_LIN, 2, 2)
        hom = Homotopy.from_word("linear", base.times_variable(rt))
        v, _ = random_unimodular_rows(rng, ring, 2, 3, 4)
        res = homotopy_commute_linear(hom, v)
        ok = res.witness.all_passed()
        if corrupt:
            ok = not ok
        if not ok:
            n_fail += 1
    checks.append({"name": "linear homotopy commutation",
                   "instances": budget, "failures": n_fail})
    failures += n_fail

    n_fail = 0
    from .homotopy import commutator_witness, vaserstein_transport
    for _ in range(budget):
        base = random_word(rng, ring, FAMILY_LIN, 3, 2)
        hom = Homotopy.from_word("linear", base.times_variable(rt))
        b = random_word(rng, ring, FAMILY_LIN, 3, 4).eval()
        eps = commutator_witness(hom, b)
        alpha = hom.at(1)
        if (alpha @ b) != (b @ alpha @ eps.eval()):
            n_fail += 1
    checks.append({"name": "commutator witnesses", "instances": budget,
                   "failures": n_fail})
    failures += n_fail

    n_fail = 0
    for _ in range(budget):
        d = random_word(rng, ring, FAMILY_SP, 2, 2).eval()
        from .sampling import random_frame
        fr, _ = random_frame(rng, ring, "sp", 1, 2, 4)
        res = vaserstein_transport(d, fr, "symplectic")
        if not res.witness.all_passed():
            n_fail += 1
    checks.append({"name": "symplectic transport", "instances": budget,
                   "failures": n_fail})
    failures += n_fail
    return checks, failures


def _harness_localglobal(rng, budget, corrupt=False):
    from fractions import Fraction
    from .rings import FractionRing
    from .words import FAMILY_LIN, word_from_pairs
    checks = []
    failures = 0
    rt = PolyExt(FractionRing(IntegerRing(), 6), "T")
    if budget:
        theta = word_from_pairs(rt, 2, FAMILY_LIN,
                                [(1, 2, rt.coerce([0, Fraction(1, 6)]))])
        res = quillen_split(theta, 3, -2, exponent=2)
        ok = res.witness.all_passed() and res.b == rt.base.coerce(4)
        if corrupt:
            ok = not ok
        checks.append({"name": "documented split instance (b = 4)",
                       "instances": 1, "failures": 0 if ok else 1})
        failures += 0 if ok else 1

    n_fail = 0
    n_split = 0
    for _ in range(budget):
        num = rng.randint(-5, 5)
        k = rng.randrange(3)
        coeff = Fraction(num, 6 ** k) if num else Fraction(0)
        theta = word_from_pairs(rt, 3, FAMILY_LIN,
                                [(1, 2, rt.coerce([0, coeff])),
                                 (2, 3, rt.coerce([0, Fraction(rng.randint(-3, 3))]))])
        try:
            res = quillen_split(theta, 3, -2)
            n_split += 1
            if not res.witness.all_passed():
                n_fail += 1
        except CgfError:
            pass  # exhaustion is a reported outcome, not a failure
    checks.append({"name": "seeded splits verify or report exhaustion",
                   "instances": budget, "failures": n_fail,
                   "splits": n_split})
    failures += n_fail
    return checks, failures


def _harness_ortho(rng, budget, corrupt=False):
    from .sampling import random_word
    from .words import FAMILY_ORTH
    checks = []
    failures = 0
    Z5 = PrimeField(5)
    n_fail = 0
    for _ in range(budget):
        w = random_word(rng, Z5, FAMILY_ORTH, 6, 5)
        delta, word = vaserstein_quotient(w.eval())
        ok = delta.is_identity()
        if corrupt:
            ok = not ok
        if not ok:
            n_fail += 1
    checks.append({"name": "elementary words reduce to the trivial corner",
                   "instances": budget, "failures": n_fail})
    failures += n_fail

    n_fail = 0
    for _ in range(budget):
        a = FactoredOrthogonal.from_word(random_word(rng, Z5, FAMILY_ORTH,
                                                     6, 4))
        b = FactoredOrthogonal.from_word(random_word(rng, Z5, FAMILY_ORTH,
                                                     6, 4))
        _, witness = commutator_harness(a, b)
        if not witness.all_passed():
            n_fail += 1
    checks.append({"name": "commutator harness", "instances": budget,
                   "failures": n_fail})
    failures += n_fail
    return checks, failures


_SUITES = {"lemmas": _harness_lemmas, "homotopy": _harness_homotopy,
           "localglobal": _harness_localglobal, "ortho": _harness_ortho}


def _cmd_harness(args) -> int:
    rng = random.Random(args.seed)
    checks, failures = _SUITES[args.suite](rng, args.budget,
                                           corrupt=args.corrupt)
    report = {"suite": args.suite, "seed": args.seed, "budget": args.budget,
              "checks": checks, "failures": failures,
              "ok": failures == 0}
    _emit(report)
    return 0 if failures == 0 else 2


# ---------------------------------------------------------------------------

def _build_parser() -> _Parser:
    p = _Parser(prog="cgf", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("reduce-row")
    sp.add_argument("--flavor", default="linear")
    sp.add_argument("--ring", required=True)
    sp.add_argument("--row", required=True)
    sp.set_defaults(fn=_cmd_reduce_row)

    sp = sub.add_parser("complete")
    sp.add_argument("--flavor", default="linear")
    sp.add_argument("--ring")
    sp.add_argument("--matrix", required=True)
    sp.add_argument("--permissive", action="store_true")
    sp.set_defaults(fn=_cmd_complete)

    sp = sub.add_parser("whitehead")
    sp.add_argument("--flavor", default="linear")
    sp.add_argument("--ring")
    sp.add_argument("--matrix", required=True)
    sp.set_defaults(fn=_cmd_whitehead)

    sp = sub.add_parser("transvection")
    sp.add_argument("--ring", required=True)
    sp.add_argument("--col", required=True)
    sp.add_argument("--row", required=True)
    sp.set_defaults(fn=_cmd_transvection)

    sp = sub.add_parser("common-perp")
    sp.add_argument("--ring", required=True)
    sp.add_argument("--v1", required=True)
    sp.add_argument("--v2", required=True)
    sp.add_argument("--w", required=True)
    sp.set_defaults(fn=_cmd_common_perp)

    sp = sub.add_parser("two-row")
    sp.add_argument("--ring")
    sp.add_argument("--matrix", required=True)
    sp.add_argument("--beta")
    sp.set_defaults(fn=_cmd_two_row)

    sp = sub.add_parser("roitman")
    sp.add_argument("--ring", required=True)
    sp.add_argument("--row", required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--target", required=True)
    sp.set_defaults(fn=_cmd_roitman)

    sp = sub.add_parser("homotopy-commute")
    sp.add_argument("--flavor", required=True,
                    choices=("linear", "sp", "orth"))
    sp.add_argument("--input", required=True)
    sp.set_defaults(fn=_cmd_homotopy_commute)

    sp = sub.add_parser("split")
    sp.add_argument("--theta", required=True)
    sp.add_argument("--s1", type=int, required=True)
    sp.add_argument("--s2", type=int, required=True)
    sp.add_argument("--n-max", type=int, default=16)
    sp.add_argument("--exponent", type=int)
    sp.set_defaults(fn=_cmd_split)

    sp = sub.add_parser("patch")
    sp.add_argument("--sigma1", required=True)
    sp.add_argument("--sigma2", required=True)
    sp.add_argument("--s1", type=int, required=True)
    sp.add_argument("--s2", type=int, required=True)
    sp.set_defaults(fn=_cmd_patch)

    sp = sub.add_parser("classify-o2")
    sp.add_argument("--ring")
    sp.add_argument("--matrix", required=True)
    sp.set_defaults(fn=_cmd_classify_o2)

    sp = sub.add_parser("ortho-quotient")
    sp.add_argument("--ring")
    sp.add_argument("--matrix", required=True)
    sp.set_defaults(fn=_cmd_ortho_quotient)

    sp = sub.add_parser("ortho-commutator")
    sp.add_argument("--a-delta", required=True)
    sp.add_argument("--a-word", required=True)
    sp.add_argument("--b-delta", required=True)
    sp.add_argument("--b-word", required=True)
    sp.set_defaults(fn=_cmd_ortho_commutator)

    sp = sub.add_parser("orbits")
    sp.add_argument("--ring", required=True)
    sp.add_argument("--kind", default="row", choices=("row", "frame"))
    sp.add_argument("--family", default="lin", choices=("lin", "sp", "orth"))
    sp.add_argument("--size", type=int, required=True)
    sp.add_argument("--frame-rows", type=int, default=0)
    sp.add_argument("--budget", type=int, default=10 ** 7)
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--cache")
    sp.set_defaults(fn=_cmd_orbits)

    sp = sub.add_parser("certify")
    sp.add_argument("--table", required=True)
    sp.add_argument("--v1", required=True)
    sp.add_argument("--v2", required=True)
    sp.set_defaults(fn=_cmd_certify)

    sp = sub.add_parser("harness")
    sp.add_argument("suite", choices=sorted(_SUITES))
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--budget", type=int, default=10)
    sp.add_argument("--corrupt", action="store_true",
                    help="negative control: corrupt one expectation")
    sp.set_defaults(fn=_cmd_harness)
    return p


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return 1
    try:
        return args.fn(args)
    except _UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return 1
    except CgfError as exc:
        sys.stdout.write(json.dumps(exc.to_json(), sort_keys=True,
                                    separators=(",", ":")) + "\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
