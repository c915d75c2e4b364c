"""Command-line front end: ``stabhyp <command> [options] FILE``.

Exit codes: 0 success, 1 a predicate (closed, stable, axis-stable) is
false, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings

from .classify import A_PRIME_ONLY, FULL, FamilyDescriptor, classify, make_family
from .convolve import (
    axis_closure,
    convolution,
    is_axis_stable,
    is_stable,
    is_v_closed,
    valid_directions,
)
from .cyclo import cyclotomic_field
from .expr import ParseError, parse_scalar, parse_vector, split_top_level
from .formats import (
    arrangement_to_data,
    flat_to_data,
    format_arrangement,
    format_flat,
    format_hyperplane,
    format_vector,
    parse_arrangement,
    parse_residues,
    subspace_to_data,
)
from .oracle import PoolSpec, enumerate_axis_stable, orbit_closure
from .pfaffian import LogConnection, check_integrability
from .poset import build_poset
from .structure import decompose, reduce_fully, substitute


class InputError(Exception):
    pass


def _read_text(path):
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise InputError(f"{path}: {e.strerror}") from None


def _load(path):
    text = _read_text(path)
    try:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            A = parse_arrangement(text)
    except ParseError as e:
        raise InputError(f"{path}: {e}") from None
    for w in caught:
        print(f"{path}: warning: {w.message}", file=sys.stderr)
    return A


def _vector(text, A):
    try:
        v = parse_vector(text, A.field)
    except ParseError as e:
        raise InputError(f"--v: {e}") from None
    if len(v) != A.dim:
        raise InputError(f"--v has {len(v)} entries, the arrangement lives in C^{A.dim}")
    if not any(v):
        raise InputError("--v must be nonzero")
    return v


def _emit(args, data, text):
    if args.json:
        print(json.dumps(data, sort_keys=True, indent=2))
    else:
        print(text.rstrip("\n"))


# -- commands -----------------------------------------------------------------


def cmd_poset(args):
    A = _load(args.file)
    P = build_poset(A)
    lines = [f"level sizes: {' '.join(map(str, P.level_sizes()))}"]
    levels = []
    for k, level in enumerate(P.strata):
        lines.append(f"codim {k}:")
        rows = []
        for S in level:
            idx = sorted(i + 1 for i in P.through[S])
            lines.append(f"  {format_flat(S)}  through {idx}")
            rows.append(dict(flat_to_data(S), through=idx))
        levels.append(rows)
    _emit(args, {"levels": levels, "level_sizes": list(P.level_sizes())}, "\n".join(lines))
    return 0


def cmd_convolve(args):
    A = _load(args.file)
    v = _vector(args.v, A)
    B = convolution(A, v)
    added = [H for H in B if H not in A]
    text = format_arrangement(B) + "".join(f"# added: {format_hyperplane(H)}\n" for H in added)
    data = {"arrangement": arrangement_to_data(B), "added": [format_hyperplane(H) for H in added]}
    _emit(args, data, text)
    return 0


def cmd_closed(args):
    A = _load(args.file)
    v = _vector(args.v, A)
    res = is_v_closed(A, v)
    if res:
        text = f"closed under {format_vector(v)}"
    else:
        C = res.witness.cylinder(v)
        text = (
            f"not closed under {format_vector(v)}\n"
            f"witness flat: {format_flat(res.witness)}\n"
            f"missing hyperplane: {format_hyperplane(C.as_hyperplane())}"
        )
    data = {"closed": res.closed, "witness": None if res else flat_to_data(res.witness)}
    _emit(args, data, text)
    return 0 if res else 1


def cmd_valid_dirs(args):
    A = _load(args.file)
    fam = valid_directions(A)
    lines = [f"{len(fam.subspaces)} maximal subspaces, spanning dimension {fam.span_dim()}"]
    for W in fam.subspaces:
        basis = W.direction_basis(A.field)
        lines.append(f"  dim {W.dim}: span{{{'; '.join(format_vector(b) for b in basis)}}}")
    data = {"subspaces": [subspace_to_data(W, A.field) for W in fam.subspaces], "span_dim": fam.span_dim()}
    _emit(args, data, "\n".join(lines))
    return 0


def cmd_stable(args):
    A = _load(args.file)
    st = is_stable(A)
    if st:
        text = "stable\nwitness basis:\n" + "\n".join(f"  {format_vector(v)}" for v in st.basis)
    else:
        text = "not stable"
    _emit(args, {"stable": st.stable, "basis": [format_vector(v) for v in st.basis]}, text)
    return 0 if st else 1


def cmd_axis_stable(args):
    A = _load(args.file)
    ok = is_axis_stable(A)
    _emit(args, {"axis_stable": ok}, "axis-stable" if ok else "not axis-stable")
    return 0 if ok else 1


def cmd_closure(args):
    A = _load(args.file)
    try:
        rep = axis_closure(A, args.budget)
    except ValueError as e:
        raise InputError(str(e)) from None
    growth = " -> ".join(map(str, rep.growth))
    if rep.diverged:
        text = f"budget exceeded after {rep.rounds} sweeps\ngrowth: {growth}"
    else:
        text = f"fixpoint after {rep.rounds} sweeps\ngrowth: {growth}\n" + format_arrangement(rep.result)
    data = {
        "diverged": rep.diverged,
        "rounds": rep.rounds,
        "growth": list(rep.growth),
        "arrangement": None if rep.diverged else arrangement_to_data(rep.result),
    }
    _emit(args, data, text)
    return 0


def cmd_decompose(args):
    A = _load(args.file)
    dec = decompose(A)
    lines = [f"{len(dec.blocks)} block(s)"]
    blocks = []
    for block, F in zip(dec.blocks, dec.factors):
        coords = [k + 1 for k in block]
        lines.append(f"block x{coords}:")
        lines.extend("  " + format_hyperplane(H) for H in F)
        blocks.append({"coordinates": coords, "arrangement": arrangement_to_data(F)})
    _emit(args, {"blocks": blocks}, "\n".join(lines))
    return 0


def cmd_reduce(args):
    A = _load(args.file)
    if A.dim < 2:
        raise InputError("reduction needs dimension at least 2")
    R, steps = reduce_fully(A)
    lines = [f"{len(steps)} reduction step(s)"]
    lines.extend(f"  {s}" for s in steps)
    text = "\n".join(lines) + "\n" + format_arrangement(R)
    data = {
        "steps": [{"i": s.i + 1, "j": s.j + 1, "a": str(s.a), "b": str(s.b)} for s in steps],
        "arrangement": arrangement_to_data(R),
    }
    _emit(args, data, text)
    return 0


def _fixings(text, A):
    """Either ``x3=0,x4=1`` or a bare vector for the last coordinates."""
    parts = split_top_level(text, ",")
    if parts and all("=" in p for p in parts):
        out = {}
        for p in parts:
            name, val = (s.strip() for s in p.split("=", 1))
            if not (name.startswith("x") and name[1:].isdigit()):
                raise InputError(f"--fix: expected x<k>=value, got {p!r}")
            k = int(name[1:]) - 1
            if not 0 <= k < A.dim:
                raise InputError(f"--fix: {name} is not a coordinate of C^{A.dim}")
            if k in out:
                raise InputError(f"--fix: {name} fixed twice")
            out[k] = parse_scalar(val, A.field)
        return out
    p = parse_vector(text, A.field)
    return {A.dim - len(p) + k: c for k, c in enumerate(p)}


def cmd_specialize(args):
    A = _load(args.file)
    try:
        fix = _fixings(args.fix, A)
    except ParseError as e:
        raise InputError(f"--fix: {e}") from None
    if not fix or len(fix) >= A.dim or min(fix) < 0:
        raise InputError(f"--fix must leave between 1 and {A.dim - 1} free coordinates")
    B = substitute(A, fix)
    _emit(args, {"arrangement": arrangement_to_data(B)}, format_arrangement(B))
    return 0


def _verdict_data(v):
    out = {
        "block": [k + 1 for k in v.block],
        "kind": v.kind,
        "codim2_count": v.codim2_count,
        "reductions": [{"i": s.i + 1, "j": s.j + 1, "a": str(s.a), "b": str(s.b)} for s in v.reductions],
    }
    if v.descriptor is not None:
        out["descriptor"] = v.descriptor.to_data()
        out["transform"] = v.transform.to_data()
    if v.diagnostic:
        out["diagnostic"] = v.diagnostic
    return out


def cmd_classify(args):
    A = _load(args.file)
    rep = classify(A)
    lines = ["stable" if rep.stable else "not stable"]
    if rep.coordinates is not None:
        lines.append("coordinate change (columns x = P y):")
        lines.extend(f"  {format_vector(b)}" for b in rep.coordinates.basis)
    for v in rep.factors:
        head = f"block x{[k + 1 for k in v.block]}: {v.kind}"
        if v.descriptor is not None:
            head += f" {v.descriptor}"
        lines.append(head)
        for s in v.reductions:
            lines.append(f"  reduction {s}")
        if v.transform is not None:
            t = v.transform
            for j in range(len(t.perm)):
                lines.append(f"  x{j + 1} = {t.scales[j]}*y{t.perm[j] + 1} + {t.shifts[j]}")
        if v.diagnostic:
            lines.append(f"  {v.diagnostic}")
    data = {
        "stable": rep.stable,
        "coordinates": None if rep.coordinates is None else [format_vector(b) for b in rep.coordinates.basis],
        "factors": [_verdict_data(v) for v in rep.factors],
    }
    _emit(args, data, "\n".join(lines))
    return 0


def cmd_family(args):
    M = args.field if args.field is not None else max(args.m, 1)
    if M < 1:
        raise InputError("--field must be positive")
    f = cyclotomic_field(M)
    try:
        if args.alphas is not None:
            alphas = parse_vector(args.alphas, f) if args.alphas.strip() else ()
        else:
            alphas = tuple(f(k) for k in range(1, (args.r or 0) + 1))
        omega_prime = None
        if args.omega_prime is not None:
            omega_prime = parse_vector(args.omega_prime, f)
        elif args.n == 2:
            omega_prime = (f.one,)
    except ParseError as e:
        raise InputError(str(e)) from None
    if args.r is not None and args.r != len(alphas):
        raise InputError(f"--r {args.r} but {len(alphas)} alphas given")
    d = FamilyDescriptor(args.n, args.m, tuple(alphas), omega_prime, args.variant)
    problem = d.problems(f)
    if problem:
        raise InputError(problem)
    A = make_family(d, f)
    _emit(args, {"descriptor": d.to_data(), "arrangement": arrangement_to_data(A)}, format_arrangement(A))
    return 0


def cmd_pfaff_check(args):
    A = _load(args.file)
    text = _read_text(args.residues)
    try:
        N, residues = parse_residues(text, A.field, len(A))
    except ParseError as e:
        raise InputError(f"{args.residues}: {e}") from None
    C = LogConnection(A, N, residues)
    bad = check_integrability(C)
    if bad:
        lines = [f"{len(bad)} violation(s)"]
        for v in bad:
            lines.append(f"  at {format_flat(v.flat)}: hyperplanes {[i + 1 for i in v.failing]}")
    else:
        lines = ["integrable"]
    data = {
        "integrable": not bad,
        "violations": [
            {"flat": flat_to_data(v.flat), "through": [i + 1 for i in v.through], "failing": [i + 1 for i in v.failing]}
            for v in bad
        ],
    }
    _emit(args, data, "\n".join(lines))
    return 0 if not bad else 1


def cmd_census(args):
    P = _load(args.pool)
    spec = PoolSpec(
        P.dim,
        P.field,
        P.hyperplanes,
        require_axis_stable=not args.any_stability,
        require_indecomposable=not args.allow_decomposable,
        require_reduced=not args.allow_reducible,
        require_nontrivial=not args.allow_trivial,
        min_size=args.min_size,
        max_size=args.max_size,
    )
    try:
        entries = enumerate_axis_stable(spec)
    except ValueError as e:
        raise InputError(str(e)) from None
    counts = {}
    rows = []
    lines = []
    for e in entries:
        for k in e.verdicts:
            counts[k] = counts.get(k, 0) + 1
        desc = [str(d) for d in e.report.descriptors()]
        lines.append(f"{[i + 1 for i in e.indices]}: {', '.join(e.verdicts)} {' '.join(desc)}".rstrip())
        rows.append({"pool_indices": [i + 1 for i in e.indices], "verdicts": list(e.verdicts), "descriptors": desc})
    summary = ", ".join(f"{k}={v}" for k, v in sorted(counts.items()))
    lines.insert(0, f"{len(entries)} arrangement(s) after filters; {summary or 'no verdicts'}")
    _emit(args, {"entries": rows, "counts": counts}, "\n".join(lines))
    return 0


def cmd_orbit(args):
    f = cyclotomic_field(args.field)
    try:
        a1, a2, a3, z = (parse_scalar(s, f) for s in (args.a1, args.a2, args.a3, args.z))
        rep = orbit_closure(a1, a2, a3, z, args.budget)
    except (ParseError, ValueError) as e:
        raise InputError(str(e)) from None
    if not rep.finite:
        text = f"budget {args.budget} exceeded"
        data = {"finite": False}
    else:
        F = sorted(rep.closure, key=lambda c: c.sort_key())
        text = (
            f"closure of size {len(F)}: {{{', '.join(map(str, F))}}}\n"
            f"m = {rep.m}, a3 = 0: {rep.alpha3_zero}, contains all m-th rotations of z: {rep.contains_rotations}"
        )
        data = {
            "finite": True,
            "closure": [str(c) for c in F],
            "m": rep.m,
            "alpha3_zero": rep.alpha3_zero,
            "contains_rotations": rep.contains_rotations,
        }
    _emit(args, data, text)
    return 0


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="structured output")
    with_file = argparse.ArgumentParser(add_help=False, parents=[common])
    with_file.add_argument("file", help="arrangement file, '-' for stdin")

    p = argparse.ArgumentParser(prog="stabhyp", description="Exact tools for stable hyperplane arrangements.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, helptext, parents=(with_file,)):
        sp = sub.add_parser(name, parents=list(parents), help=helptext)
        sp.set_defaults(func=func)
        return sp

    add("poset", cmd_poset, "intersection poset by codimension")
    add("convolve", cmd_convolve, "apply mc_v").add_argument("--v", required=True, help="direction, e.g. 1,0")
    add("closed", cmd_closed, "is the arrangement v-closed").add_argument("--v", required=True)
    add("valid-dirs", cmd_valid_dirs, "maximal subspaces of valid directions")
    add("stable", cmd_stable, "coordinate-free stability with a witness basis")
    add("axis-stable", cmd_axis_stable, "closedness under every coordinate direction")
    add("closure", cmd_closure, "iterate the axis convolutions").add_argument(
        "--budget", type=int, default=None, help="hyperplane budget (default $STABHYP_BUDGET or 200)"
    )
    add("decompose", cmd_decompose, "split into coordinate blocks")
    add("reduce", cmd_reduce, "merge collinear coordinate pairs until reduced")
    add("specialize", cmd_specialize, "restrict to a coordinate section").add_argument(
        "--fix", required=True, help="e.g. x3=0,x4=1, or values of the last coordinates"
    )
    add("classify", cmd_classify, "normal-form classification report")

    fam = add("family", cmd_family, "emit a normal-form family", parents=(common,))
    fam.add_argument("--n", type=int, required=True)
    fam.add_argument("--m", type=int, default=1)
    fam.add_argument("--r", type=int, default=None, help="number of alphas (default alphas 1..r)")
    fam.add_argument("--alphas", default=None, help="comma-separated nonzero scalars")
    fam.add_argument("--omega-prime", default=None, help="for n=2: roots containing 1")
    fam.add_argument("--variant", choices=[FULL, A_PRIME_ONLY], default=FULL)
    fam.add_argument("--field", type=int, default=None, help="cyclotomic modulus M (default m)")

    add("pfaff-check", cmd_pfaff_check, "residue integrability check").add_argument(
        "--residues", required=True, help="residue file"
    )

    orc = sub.add_parser("oracle", help="brute-force harnesses")
    osub = orc.add_subparsers(dest="oracle_command", required=True)
    cen = osub.add_parser("census", parents=[common], help="classify every filtered subset of a pool")
    cen.set_defaults(func=cmd_census)
    cen.add_argument("--pool", required=True, help="arrangement file listing the pool")
    cen.add_argument("--any-stability", action="store_true", help="skip the axis-stable filter")
    cen.add_argument("--allow-decomposable", action="store_true")
    cen.add_argument("--allow-reducible", action="store_true")
    cen.add_argument("--allow-trivial", action="store_true", help="keep #L^(2) <= 1")
    cen.add_argument("--min-size", type=int, default=1)
    cen.add_argument("--max-size", type=int, default=None)
    orb = osub.add_parser("orbit", parents=[common], help="finite closure under z -> a1 z, z -> a2 z + a3")
    orb.set_defaults(func=cmd_orbit)
    for name in ("--a1", "--a2", "--a3", "--z"):
        orb.add_argument(name, required=True)
    orb.add_argument("--budget", type=int, default=512)
    orb.add_argument("--field", type=int, default=1, help="cyclotomic modulus M")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args)
    except InputError as e:
        print(f"stabhyp: error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
