"""Command line front end.

One exit-code convention across all subcommands:

    0   success, or a positive verdict (member / normal / realizable)
    1   negative verdict (not a member, not normal, obstruction found)
    2   input or usage error
    3   a verification step failed (signals a bug, not bad input)

Matrices are read from files (or stdin with `-`) in a plain text format:
the first line is n, followed by n rows of n integers. Output is JSON by
default (deterministic: sorted keys) or `--format text` for a flat dump.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Callable, Optional, Sequence

import numpy as np

from .intmat import (
    IntMatrix,
    MatrixFormatError,
    ResidueMatrix,
    hyperbolic_check,
    parse_matrix,
    parse_matrices,
)
from .subgroups import (
    NotInGroupError,
    coset_certificate,
    hR_member,
    in_W2,
    in_congruence,
    k_to_class,
    pre_dot,
)
from .words import (
    WordLengthError,
    decompose_gamma2,
    decompose_gamma_n,
    decompose_sln,
    parse_word,
    rewrite_table_audit,
    word_to_matrix,
    word_to_str,
)
from .obstruction import classify, cross_consistency, whitehead_coeffs
from .finitegrp import (
    GroupSizeLimitError,
    elementary_generators_mod,
    enumerate_group,
    find_normality_violation,
    power_subgroup,
    sl_order,
)
from .spheres import (
    PhaseAmbiguityError,
    antipodal_map,
    compose_maps,
    degree_estimate_details,
    induced_matrix_on_torus,
    p_a_torus_map,
    p_word_torus_map,
    psi_map,
    quaternion_collision_witness,
    reflection_shear_torus_map,
    slot_conjugation_torus_map,
)
from .ledger import run_ledger

SCHEMA = "spheremat/1"


def _read_matrix(source: str) -> IntMatrix:
    text = sys.stdin.read() if source == "-" else Path(source).read_text()
    return parse_matrix(text)


def _read_matrices(source: str) -> list[IntMatrix]:
    text = sys.stdin.read() if source == "-" else Path(source).read_text()
    return parse_matrices(text)


def _rows(a) -> list[list[int]]:
    return [list(r) for r in a.rows]


def _render_text(payload: dict) -> list[str]:
    lines = []
    for key in sorted(payload):
        value = payload[key]
        if isinstance(value, list) and value and isinstance(value[0], list):
            lines.append(f"{key}:")
            for row in value:
                lines.append("  " + " ".join(str(x) for x in row))
        elif isinstance(value, list):
            lines.append(f"{key}: {' '.join(str(x) for x in value)}")
        elif isinstance(value, dict):
            lines.append(f"{key}:")
            for sub in sorted(value):
                lines.append(f"  {sub}: {value[sub]}")
        else:
            lines.append(f"{key}: {value}")
    return lines


def _emit(payload: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        print("\n".join(_render_text(payload)))


def _fail(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return 2


def _w2_reason(a: IntMatrix) -> str:
    det = a.det()
    if det != 1:
        return f"determinant is {det}, need 1"
    for i in range(a.n):
        for j in range(i + 1, a.n):
            if any(v % 2 for v in pre_dot(a.rows[i], a.rows[j])):
                return f"rows {i + 1} and {j + 1} have some odd componentwise product"
    return "unit determinant, all distinct-row componentwise products even"


def _resolve_k_class(args: argparse.Namespace) -> Optional[str]:
    if args.k_class is not None:
        return "odd_generic" if args.k_class == "odd" else args.k_class
    if args.k is not None:
        return k_to_class(args.k)
    return None


def _cmd_member(args: argparse.Namespace) -> int:
    a = _read_matrix(args.matrix)
    payload: dict = {"schema": SCHEMA, "command": "member", "n": a.n, "group": args.group}
    if args.group == "w2":
        ok = in_W2(a)
        payload["reason"] = _w2_reason(a)
    elif args.group == "gamma":
        if args.mod < 2:
            return _fail("--mod must be at least 2")
        ok = in_congruence(a, args.mod)
        payload["mod"] = args.mod
        payload["reason"] = (
            "unit determinant and congruent to the identity"
            if ok
            else "determinant or residue test failed"
        )
    else:
        k_class = _resolve_k_class(args)
        if k_class is None:
            return _fail("--group hr needs --k or --k-class")
        check = hR_member(a, k_class)
        ok = check.member
        payload["k_class"] = k_class
        payload["reason"] = check.reason
    payload["member"] = ok
    _emit(payload, args.format)
    return 0 if ok else 1


def _cmd_coset(args: argparse.Namespace) -> int:
    a = _read_matrix(args.matrix)
    try:
        cert = coset_certificate(a)
    except NotInGroupError as exc:
        _emit(
            {"schema": SCHEMA, "command": "coset", "member": False, "reason": str(exc)},
            args.format,
        )
        return 1
    verified = True if args.no_verify else cert.verify(a)
    payload = {
        "schema": SCHEMA,
        "command": "coset",
        "member": True,
        "uses_tau": cert.uses_tau,
        "sigma": list(cert.sigma.images),
        "sigma_sign": cert.sigma.sign(),
        "residual": _rows(cert.residual),
        "verification": "UNVERIFIED" if args.no_verify else ("OK" if verified else "FAILED"),
    }
    _emit(payload, args.format)
    if not args.no_verify and not verified:
        return 3
    return 0


def _cmd_decompose(args: argparse.Namespace) -> int:
    a = _read_matrix(args.matrix)
    target = args.target
    if target == "auto":
        if a.n == 2 and in_congruence(a, 2):
            target = "gamma2"
        elif a.n >= 3 and in_congruence(a, 2):
            target = "gamman"
        else:
            target = "sln"
    if target == "gamma2":
        if a.n != 2:
            return _fail("gamma2 requires a 2x2 matrix")
        if not in_congruence(a, 2):
            _emit(
                {"schema": SCHEMA, "command": "decompose", "member": False,
                 "target": target, "reason": _membership_reason(a, 2)},
                args.format,
            )
            return 1
        word = decompose_gamma2(a)
    elif target == "gamman":
        if a.n < 3:
            return _fail("gamman requires n >= 3 (use gamma2 in the plane)")
        if not in_congruence(a, 2):
            _emit(
                {"schema": SCHEMA, "command": "decompose", "member": False,
                 "target": target, "reason": _membership_reason(a, 2)},
                args.format,
            )
            return 1
        word = decompose_gamma_n(a)
    else:
        if a.det() != 1:
            _emit(
                {"schema": SCHEMA, "command": "decompose", "member": False,
                 "target": "sln", "reason": f"determinant is {a.det()}, need 1"},
                args.format,
            )
            return 1
        word = decompose_sln(a)
    verified = True if args.no_verify else word_to_matrix(word) == a
    payload = {
        "schema": SCHEMA,
        "command": "decompose",
        "member": True,
        "target": target,
        "letters": len(word.letters),
        "word": word_to_str(word),
        "verification": "UNVERIFIED" if args.no_verify else ("OK" if verified else "FAILED"),
    }
    _emit(payload, args.format)
    if not args.no_verify and not verified:
        return 3
    return 0


def _membership_reason(a: IntMatrix, level: int) -> str:
    if a.det() != 1:
        return f"determinant is {a.det()}, need 1"
    return f"not congruent to the identity mod {level}"


def _cmd_verify_identities(args: argparse.Namespace) -> int:
    try:
        reports = rewrite_table_audit(args.n)
    except (WordLengthError, AssertionError) as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return 3
    entries = [
        {
            "family": r.family,
            "generator_kind": r.generator_kind,
            "sign": r.sign,
            "condition": r.condition,
            "instances": r.instances,
            "status": r.status,
        }
        for r in reports
    ]
    if args.format == "text":
        for r in reports:
            print(
                f"{r.status:>9}  {r.family:<10} {r.condition:<22} "
                f"{r.instances:>4} instances"
            )
        print(f"audited {len(reports)} case families at n={args.n}")
    else:
        _emit(
            {"schema": SCHEMA, "command": "verify-identities", "n": args.n,
             "families": len(reports), "entries": entries},
            "json",
        )
    return 0


def _cmd_obstruction(args: argparse.Namespace) -> int:
    a = _read_matrix(args.matrix)
    k_class = _resolve_k_class(args)
    if k_class is None:
        return _fail("need --k or --k-class")
    verdict = classify(a, k_class)
    payload = {
        "schema": SCHEMA,
        "command": "obstruction",
        "n": a.n,
        "k_class": k_class,
        "realizable": verdict.realizable,
        "violations": [[j, l, s] for (j, l), s in verdict.violations],
    }
    if not args.no_verify:
        for j in range(1, a.n + 1):
            for l in range(j + 1, a.n + 1):
                if not cross_consistency(a, j, l):
                    print("cross-coefficient check failed", file=sys.stderr)
                    return 3
    if args.coefficients:
        coeffs = {}
        for j in range(1, a.n + 1):
            for l in range(j + 1, a.n + 1):
                report = whitehead_coeffs(a, j, l)
                coeffs[f"{j},{l}"] = {
                    "cross": {f"{s},{t}": v for (s, t), v in sorted(report.cross.items())},
                    "diag": list(report.diag),
                }
        payload["coefficients"] = coeffs
    _emit(payload, args.format)
    return 0 if verdict.realizable else 1


def _load_residue_generators(
    source: Optional[str], n: int, m: int
) -> list[ResidueMatrix]:
    if source is None:
        return elementary_generators_mod(n, m)
    return [a.reduce_mod(m) for a in _read_matrices(source)]


def _cmd_enumerate(args: argparse.Namespace) -> int:
    gens = _load_residue_generators(args.generators, args.n, args.mod)
    table = enumerate_group(gens, args.n, args.mod, max_size=args.max_size)
    payload = {
        "schema": SCHEMA,
        "command": "enumerate",
        "n": args.n,
        "mod": args.mod,
        "order": table.order,
    }
    if args.generators is None:
        expected = sl_order(args.n, args.mod)
        payload["expected_order"] = expected
        payload["matches_formula"] = table.order == expected
    if args.list_elements:
        payload["elements"] = [_rows(x) for x in table.sorted_elements()]
    _emit(payload, args.format)
    if payload.get("matches_formula") is False:
        return 3
    return 0


def _cmd_normality(args: argparse.Namespace) -> int:
    if args.subgroup is None and args.power is None:
        return _fail("need --subgroup FILE, --power T, or both")
    group_gens = _load_residue_generators(args.generators, args.n, args.mod)
    group = enumerate_group(group_gens, args.n, args.mod, max_size=args.max_size)
    sub_gens = (
        [a.reduce_mod(args.mod) for a in _read_matrices(args.subgroup)]
        if args.subgroup
        else group_gens
    )
    if args.power is not None:
        if args.power < 1:
            return _fail("--power must be positive")
        sub = power_subgroup(group, sub_gens, args.power, max_size=args.max_size)
    else:
        sub = enumerate_group(sub_gens, args.n, args.mod, max_size=args.max_size)
        if not sub.elements <= group.elements:
            return _fail("subgroup generators do not lie inside the group")
    violation = find_normality_violation(sub, group)
    payload = {
        "schema": SCHEMA,
        "command": "normality",
        "n": args.n,
        "mod": args.mod,
        "group_order": group.order,
        "subgroup_order": sub.order,
        "index": group.order // sub.order,
        "normal": violation is None,
    }
    if violation is not None:
        g, h = violation
        payload["violation"] = {
            "conjugator": _rows(g),
            "element": _rows(h),
            "conjugate": _rows(g * h * g.inverse()),
        }
    _emit(payload, args.format)
    return 0 if violation is None else 1


def _cmd_quat_witness(args: argparse.Namespace) -> int:
    w = quaternion_collision_witness()
    payload = {
        "schema": SCHEMA,
        "command": "quat-witness",
        "matrix": _rows(w.matrix),
        "first_input": [x.components.tolist() for x in w.first_input],
        "second_input": [x.components.tolist() for x in w.second_input],
        "first_image": [x.components.tolist() for x in w.first_image],
        "second_image": [x.components.tolist() for x in w.second_image],
        "max_error": w.max_error,
        "input_separation": w.input_separation,
        "confirmed": w.confirmed,
    }
    _emit(payload, args.format)
    return 0 if w.confirmed else 3


def _degree_map(args: argparse.Namespace) -> Callable[[np.ndarray], np.ndarray]:
    if args.map == "identity":
        return lambda pts: pts
    if args.map == "antipodal":
        return antipodal_map
    if args.map == "psi":
        base = np.zeros(args.k + 1)
        base[0] = 1.0
        return psi_map(base)
    # circle power map z -> z^r
    if args.k != 1:
        raise ValueError("--map power needs --k 1")

    r = args.power

    def power(pts: np.ndarray) -> np.ndarray:
        z = pts[:, 0] + 1j * pts[:, 1]
        w = z**r
        return np.stack([w.real, w.imag], axis=1)

    return power


def _cmd_degree(args: argparse.Namespace) -> int:
    fn = _degree_map(args)
    estimate, stderr = degree_estimate_details(
        fn, args.k, sample_count=args.samples, seed=args.seed, step=args.step
    )
    payload = {
        "schema": SCHEMA,
        "command": "degree",
        "map": args.map,
        "k": args.k,
        "samples": args.samples,
        "seed": args.seed,
        "estimate": estimate,
        "stderr": stderr,
        "nearest_integer": round(estimate),
    }
    if args.map == "power":
        payload["power"] = args.power
    _emit(payload, args.format)
    return 0


def _induced_map_and_expected(
    args: argparse.Namespace,
) -> tuple[Callable[[np.ndarray], np.ndarray], Optional[IntMatrix]]:
    chosen = [
        x for x in (args.matrix, args.word, args.construction) if x is not None
    ]
    if len(chosen) != 1:
        raise ValueError("give exactly one of --matrix, --word, --construction")
    if args.matrix is not None:
        a = _read_matrix(args.matrix)
        if a.n != args.n:
            raise ValueError(f"matrix is {a.n}x{a.n} but --n is {args.n}")
        return p_a_torus_map(a), a
    if args.word is not None:
        word = parse_word(args.word, args.n)
        return p_word_torus_map(word), word.matrix()
    if args.construction == "reflection-shear":
        expected = [[1 if r == c else 0 for c in range(args.n)] for r in range(args.n)]
        expected[0][0] = -1
        expected[0][1] = 2
        return reflection_shear_torus_map(args.n), IntMatrix(expected)
    expected = [[1 if r == c else 0 for c in range(args.n)] for r in range(args.n)]
    expected[0][1] = 2
    return (
        compose_maps(
            reflection_shear_torus_map(args.n), slot_conjugation_torus_map(1, args.n)
        ),
        IntMatrix(expected),
    )


def _cmd_induced(args: argparse.Namespace) -> int:
    fn, expected = _induced_map_and_expected(args)
    measured = induced_matrix_on_torus(fn, args.n, resolution=args.resolution)
    payload = {
        "schema": SCHEMA,
        "command": "induced",
        "n": args.n,
        "resolution": args.resolution,
        "measured": _rows(measured),
    }
    matches = None
    if expected is not None:
        matches = measured == expected
        payload["expected"] = _rows(expected)
        payload["matches"] = matches
    _emit(payload, args.format)
    return 0 if matches in (True, None) else 3


def _cmd_ledger(args: argparse.Namespace) -> int:
    results = run_ledger()
    if args.format == "text":
        for r in results:
            mark = "ok  " if r.ok else "FAIL"
            print(f"{mark} {r.key}: {r.detail}")
        bad = sum(1 for r in results if not r.ok)
        print(f"{len(results) - bad}/{len(results)} identities verified")
    else:
        _emit(
            {
                "schema": SCHEMA,
                "command": "ledger",
                "entries": [
                    {"key": r.key, "claim": r.claim, "ok": r.ok, "detail": r.detail}
                    for r in results
                ],
                "all_ok": all(r.ok for r in results),
            },
            "json",
        )
    return 0 if all(r.ok for r in results) else 3


def _cmd_hyperbolic(args: argparse.Namespace) -> int:
    a = _read_matrix(args.matrix)
    result = hyperbolic_check(a)
    _emit(
        {
            "schema": SCHEMA,
            "command": "hyperbolic",
            "trace": a.trace(),
            "hyperbolic": result,
        },
        args.format,
    )
    return 0 if result else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spheremat",
        description="integer matrix groups and the sphere-product maps they induce",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.add_argument(
            "--format", choices=["json", "text"], default="json", help="output format"
        )
        return p

    k_class_choices = ["hopf", "odd", "odd_generic", "even"]

    p = add("member", "membership tests for an integer matrix")
    p.add_argument("matrix", help="matrix file, or - for stdin")
    p.add_argument("--group", choices=["w2", "gamma", "hr"], default="w2")
    p.add_argument("--mod", type=int, default=2, help="level for --group gamma")
    p.add_argument("--k", type=int, help="sphere dimension (hr group)")
    p.add_argument("--k-class", choices=k_class_choices, dest="k_class")
    p.set_defaults(func=_cmd_member)

    p = add("coset", "coset certificate inside the even-products group")
    p.add_argument("matrix")
    p.add_argument("--no-verify", action="store_true")
    p.set_defaults(func=_cmd_coset)

    p = add("decompose", "write a matrix as a word in the standard generators")
    p.add_argument("matrix")
    p.add_argument(
        "--target", choices=["auto", "gamma2", "gamman", "sln"], default="auto"
    )
    p.add_argument("--no-verify", action="store_true")
    p.set_defaults(func=_cmd_decompose)

    p = add("verify-identities", "re-verify the conjugation rewrite tables")
    p.add_argument("-n", "--n", type=int, default=4, dest="n")
    p.set_defaults(func=_cmd_verify_identities)

    p = add("obstruction", "commutator obstruction verdict for a matrix")
    p.add_argument("matrix")
    p.add_argument("--k", type=int)
    p.add_argument("--k-class", choices=k_class_choices, dest="k_class")
    p.add_argument("--coefficients", action="store_true", help="print all coefficients")
    p.add_argument("--no-verify", action="store_true")
    p.set_defaults(func=_cmd_obstruction)

    p = add("enumerate", "enumerate a matrix group over Z_m")
    p.add_argument("-n", "--n", type=int, required=True, dest="n")
    p.add_argument("-m", "--mod", type=int, required=True, dest="mod")
    p.add_argument("--generators", help="matrix list file (default: all elementary)")
    p.add_argument("--max-size", type=int, default=10**7)
    p.add_argument("--list-elements", action="store_true")
    p.set_defaults(func=_cmd_enumerate)

    p = add("normality", "check a subgroup for normality, with witness")
    p.add_argument("-n", "--n", type=int, required=True, dest="n")
    p.add_argument("-m", "--mod", type=int, required=True, dest="mod")
    p.add_argument("--generators", help="group generators (default: all elementary)")
    p.add_argument("--subgroup", help="subgroup generators file")
    p.add_argument("--power", type=int, help="use t-th powers of the subgroup")
    p.add_argument("--max-size", type=int, default=10**7)
    p.set_defaults(func=_cmd_normality)

    p = add("quat-witness", "print the quaternion collision witness")
    p.set_defaults(func=_cmd_quat_witness)

    p = add("degree", "Monte Carlo mapping degree of a built-in sphere map")
    p.add_argument("--k", type=int, required=True)
    p.add_argument(
        "--map",
        choices=["identity", "antipodal", "psi", "power"],
        default="identity",
    )
    p.add_argument("--power", type=int, default=2, help="exponent for --map power")
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--step", type=float, default=1e-5)
    p.set_defaults(func=_cmd_degree)

    p = add("induced", "measure the homology matrix of a torus self-map")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--resolution", type=int, default=1024)
    p.add_argument("--matrix", help="measure the monomial map of this matrix")
    p.add_argument("--word", help="measure the composite of elementary letters")
    p.add_argument(
        "--construction",
        choices=["reflection-shear", "reflection-shear-conjugated"],
    )
    p.set_defaults(func=_cmd_induced)

    p = add("hyperbolic", "trace test for a 2x2 unit-determinant matrix")
    p.add_argument("matrix")
    p.set_defaults(func=_cmd_hyperbolic)

    p = add("ledger", "re-run every identity in the built-in ledger")
    p.set_defaults(func=_cmd_ledger)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (MatrixFormatError, FileNotFoundError) as exc:
        return _fail(str(exc))
    except GroupSizeLimitError as exc:
        return _fail(f"{exc} (raise --max-size if this is intentional)")
    except PhaseAmbiguityError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        return _fail(str(exc))


if __name__ == "__main__":
    sys.exit(main())
