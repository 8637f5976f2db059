"""Command line front end: ``heegaard <command> [options]``.

Exit status is 0 on success, 1 when the input is rejected (invalid diagram,
failed precondition) and 2 on usage errors.  With ``--json`` every command
prints one JSON object carrying ``schema`` and ``command`` fields.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import bounds
from .covers import CoverError, cyclic_cover, enumerate_generators, generator_matrix, reduce_to_pointed
from .diagram import Diagram, DiagramError, intersection_stats, parse_diagram, serialize, validate
from .domains import check_weak_admissibility
from .fixtures import fixture_names, fixture_text
from .moves import MoveError, random_diagram
from .presentation import first_homology, intersection_matrix, presentation_length, short_curve_report, u_beta_presentation
from .winding import WindingError, wind

SCHEMA = "heegaard-cli/1"


class UsageError(Exception):
    pass


def _load(ref: str) -> Diagram:
    """Read a diagram file; a bundled fixture name (``l31`` or ``l31.hd``) also works."""
    p = Path(ref)
    if p.is_file():
        text = p.read_text(encoding="utf-8")
    elif p.stem in fixture_names() and p.parent == Path("."):
        text = fixture_text(p.stem)
    else:
        raise UsageError(f"cannot read {ref}")
    return parse_diagram(text, strict=False)


def _write(d: Diagram, path: str | None) -> None:
    if path:
        Path(path).write_text(serialize(d), encoding="utf-8")


def _ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _floats(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise UsageError(f"expected comma-separated numbers, got {text!r}") from None


def _num(x: float | None):
    """JSON has no infinity; write non-finite floats as strings."""
    if x is None or math.isfinite(x):
        return x
    return str(x)


# ---------------------------------------------------------------------------
# per-file commands; each returns (ok, record, text)


def _validate(ref: str):
    d = _load(ref)
    rep = validate(d)
    st = intersection_stats(d)
    rec = {
        "file": ref,
        "valid": rep.valid,
        "genus": rep.genus,
        "k": st.k,
        "kind": rep.kind,
        "violations": [{"code": v.code, "message": v.message} for v in rep.violations],
    }
    if rep.valid:
        return True, rec, f"valid, genus {rep.genus}, k={st.k}"
    lines = [f"invalid: {len(rep.violations)} violation(s)"] + [f"  [{v.code}] {v.message}" for v in rep.violations]
    return False, rec, "\n".join(lines)


def _checked(ref: str) -> Diagram:
    d = _load(ref)
    rep = validate(d)
    if not rep.valid:
        v = rep.violations[0]
        raise DiagramError(v.code, v.message)
    return d


def _invariants(ref: str):
    d = _checked(ref)
    st = intersection_stats(d)
    h = first_homology(d)
    p = u_beta_presentation(d)
    short = short_curve_report(d)
    rec = {
        "file": ref,
        "genus": d.genus,
        "points": len(d.points),
        "k_per_alpha": list(st.k_per_alpha),
        "k_per_beta": list(st.k_per_beta),
        "k": st.k,
        "k_min": st.k_min,
        "o_alpha": st.o_alpha,
        "o_beta": st.o_beta,
        "homology": {"invariant_factors": list(h.invariant_factors), "betti_one": h.betti_one, "text": str(h)},
        "presentation_length": presentation_length(p),
        "short_curves": [
            {"family": s.family, "index": s.index, "case": s.case, "partners": list(s.partners), "nu": s.nu, "notes": list(s.notes)}
            for s in short
        ],
    }
    text = [
        f"genus {d.genus}, {len(d.points)} point(s)",
        f"k per alpha {list(st.k_per_alpha)}, k={st.k}, k_min={st.k_min}, o_alpha={st.o_alpha}, o_beta={st.o_beta}",
        f"H1 = {h}",
        f"presentation length {presentation_length(p)}",
    ]
    for s in short:
        note = f" ({'; '.join(s.notes)})" if s.notes else ""
        text.append(f"short curve {s.family} {s.index}: {s.case}{note}")
    return True, rec, "\n".join(text)


def _present(ref: str):
    d = _checked(ref)
    p = u_beta_presentation(d)
    A = intersection_matrix(d)
    rec = {
        "file": ref,
        "generators": p.generator_count,
        "relators": [[list(x) for x in w] for w in p.relators],
        "text": str(p),
        "length": presentation_length(p),
        "intersection_matrix": A,
    }
    lines = [str(p), f"length {presentation_length(p)}", "intersection matrix (rows beta, columns alpha):"]
    lines += ["  " + " ".join(f"{x:3d}" for x in row) for row in A]
    return True, rec, "\n".join(lines)


def _admissible(ref: str):
    d = _checked(ref)
    v = check_weak_admissibility(d)
    rec = {"file": ref, "admissible": v.admissible, "witness": list(v.witness) if v.witness else None}
    if v.admissible:
        return True, rec, "admissible"
    return True, rec, f"not admissible, witness {list(v.witness)}"


def _generators(ref: str, materialize: bool = False):
    d = _checked(ref)
    n, tuples = enumerate_generators(d, materialize=materialize)
    rec = {"file": ref, "count": n, "multiplicities": generator_matrix(d)}
    text = [f"{n} generators"]
    if tuples is not None:
        rec["generators"] = [list(t) for t in tuples]
        text += ["  " + " ".join(str(x) for x in t) for t in tuples]
    return True, rec, "\n".join(text)


_PER_FILE = {
    "validate": _validate,
    "invariants": _invariants,
    "present": _present,
    "admissible": _admissible,
    "generators": _generators,
}


def _run_one(command: str, ref: str, extra: dict):
    """Worker entry point; errors come back as values so ordering stays fixed."""
    try:
        return _PER_FILE[command](ref, **extra)
    except UsageError as e:
        return None, {"file": ref, "error": str(e)}, f"error: {e}"
    except (DiagramError, MoveError, CoverError, WindingError, ValueError) as e:
        return False, {"file": ref, "error": str(e)}, f"error: {e}"


def _per_file(args, extra=None):
    extra = extra or {}
    files = args.files
    if args.jobs > 1 and len(files) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_run_one, [args.command] * len(files), files, [extra] * len(files)))
    else:
        results = [_run_one(args.command, f, extra) for f in files]
    if any(ok is None for ok, _, _ in results):
        raise UsageError(next(r["error"] for ok, r, _ in results if ok is None))
    ok = all(r[0] for r in results)
    if len(files) == 1:
        return ok, results[0][1], results[0][2]
    text = "\n".join(f"{f}: {t}" if "\n" not in t else f"{f}:\n{t}" for f, (_, _, t) in zip(files, results))
    return ok, {"results": [r for _, r, _ in results]}, text


# ---------------------------------------------------------------------------
# single-diagram pipeline commands


def _cmd_wind(args):
    d = _checked(args.file)
    out, rep = wind(d, rounds=args.rounds)
    _write(out, args.out)
    rec = {
        "file": args.file,
        "K": rep.K,
        "rounds": rep.rounds,
        "b": rep.b,
        "per_curve_new": list(rep.per_curve_new),
        "total_new": rep.total_new,
        "budget": rep.budget,
        "admissible": rep.verified_admissible,
        "relabeling": list(rep.relabeling),
        "R": rep.R,
        "out": args.out,
    }
    if args.out is None:
        rec["diagram"] = serialize(out)
    text = f"K={rep.K}, new intersections {rep.total_new}/{rep.budget} budget, " + (
        "admissible" if rep.verified_admissible else "NOT admissible"
    )
    if args.out is None:
        text += "\n" + serialize(out).rstrip("\n")
    return True, rec, text


def _cmd_cover(args):
    d = _checked(args.file)
    if args.cls is None:
        raise UsageError("cover needs --class")
    if args.sheets is None:
        raise UsageError("cover needs --sheets")
    cov = cyclic_cover(d, _ints(args.cls), args.sheets)
    rep = cov.report
    _write(cov.diagram, args.out)
    rec = {
        "file": args.file,
        "sheets": rep.sheets,
        "cover_genus": rep.cover_genus,
        "lifted_curve_counts": list(rep.lifted_curve_counts),
        "lifted_point_count": rep.lifted_point_count,
        "base_admissible": rep.base_admissible,
        "cover_admissible": rep.cover_admissible,
        "admissibility_preserved": rep.admissibility_preserved,
        "out": args.out,
    }
    if args.out is None:
        rec["diagram"] = serialize(cov.diagram)
    text = (
        f"{rep.sheets}-sheeted cover, genus {rep.cover_genus}, {rep.lifted_point_count} points, "
        f"admissible {rep.base_admissible} -> {rep.cover_admissible}"
    )
    if args.out is None:
        text += "\n" + serialize(cov.diagram).rstrip("\n")
    return True, rec, text


def _cmd_reduce(args):
    d = _checked(args.file)
    out = reduce_to_pointed(d)
    _write(out, args.out)
    st = intersection_stats(out)
    rec = {"file": args.file, "genus": out.genus, "k": st.k, "out": args.out}
    if args.out is None:
        rec["diagram"] = serialize(out)
    text = f"pointed diagram, genus {out.genus}, k={st.k}"
    if args.out is None:
        text += "\n" + serialize(out).rstrip("\n")
    return True, rec, text


def _cmd_random(args):
    if args.seed is None:
        raise UsageError("random needs an explicit --seed")
    d = random_diagram(args.genus, args.points, args.budget, args.seed, free_handles=args.free_handles)
    _write(d, args.out)
    st = intersection_stats(d)
    rec = {"genus": d.genus, "points": len(d.points), "k": st.k, "seed": args.seed, "out": args.out}
    if args.out is None:
        rec["diagram"] = serialize(d)
    text = f"random diagram, genus {d.genus}, k={st.k}"
    if args.out is None:
        text += "\n" + serialize(d).rstrip("\n")
    return True, rec, text


# ---------------------------------------------------------------------------
# numeric commands


def _fmt(x: float | None) -> str:
    return "n/a" if x is None else f"{x:.6f}"


def _cmd_bounds(args):
    if args.file:
        ks = list(intersection_stats(_checked(args.file)).k_per_alpha)
    elif args.k:
        ks = _ints(args.k)
    else:
        raise UsageError("bounds needs a diagram file or --k")
    r = bounds.entropy_bounds(ks, args.b1, args.fiber_genus, args.length, args.degree)
    names = ("with_betti", "fine", "genus_two", "log3", "via_length")
    rec = {"k_per_alpha": ks, "b1": args.b1, "fiber_genus": args.fiber_genus, "flags": r.flags, "best": r.best}
    rec.update({n: getattr(r, n) for n in names})
    text = [f"k per alpha {ks}, b1={args.b1}, fiber genus {args.fiber_genus}"]
    text += [f"{n}: {_fmt(getattr(r, n))}" for n in names]
    text.append(f"best: {_fmt(r.best)}")
    return True, rec, "\n".join(text)


def _cmd_tube(args):
    t = bounds.tube_metrics(args.depth, args.systole, args.volume, args.wrist, args.angle)
    rec = {
        "depth": t.depth,
        "systole": t.systole,
        "angle": t.angle,
        "volume": t.volume,
        "wrist": t.wrist,
        "ball_volume_at_depth": bounds.ball_volume(t.depth),
    }
    text = (
        f"depth {t.depth:.9g}, systole {t.systole:.9g}, volume {t.volume:.9g}, wrist {t.wrist:.9g}, "
        f"ball volume at depth {rec['ball_volume_at_depth']:.9g}"
    )
    return True, rec, text


def _cmd_geom(args):
    p = bounds.GeometricProfile(
        vol_w=args.vol_w,
        wrists=_floats(args.wrists) if args.wrists else (),
        total_vol=args.total_vol,
        systole=math.inf if args.systole == "inf" else (float(args.systole) if args.systole else None),
        eps=args.eps,
        mu=args.mu,
        tube_volumes=_floats(args.tube_volumes) if args.tube_volumes else (),
        tube_systoles=_floats(args.tube_systoles) if args.tube_systoles else (),
        genus=args.genus,
        Dmu=args.Dmu,
    )
    r = bounds.geometric_entropy_bounds(p)
    rec = {
        "length_cap": r.length_cap,
        "volume_entropy_cap": r.volume_entropy_cap,
        "assembled_entropy": r.assembled_entropy,
        "wrist_sum_coefficient": r.wrist_sum_coefficient,
        "wrist_sum": r.wrist_sum,
        "wrist_sum_cap": r.wrist_sum_cap,
        "short_systole": r.short_systole,
        "short_tube_volume_floor": r.short_tube_volume_floor,
        "collar_width": r.collar_width,
        "tube_count_cap": r.tube_count_cap,
        "delta": r.delta,
        "thin_curve_caps": list(r.thin_curve_caps),
        "thick_curve_cap": r.thick_curve_cap,
        "genus_cap": r.genus_cap,
        "C": r.C,
    }
    text = "\n".join(
        f"{k}: {v if isinstance(v, list) else ('n/a' if v is None else format(v, '.9g'))}" for k, v in rec.items()
    )
    return True, rec, text


def _cmd_penner(args):
    if args.n is None:
        raise UsageError("penner needs --n")
    genus = 2 if args.genus is None else args.genus
    r = bounds.penner_family(args.n, genus, args.w_inf, args.vol_inf, args.vol_cusped)
    rec = {
        "n": r.n,
        "genus": r.genus,
        "matrix": r.matrix,
        "eigenvalues": list(r.eigenvalues),
        "spectral_radius": r.spectral_radius,
        "entropy_floor": r.entropy_floor,
        "determinant": r.determinant,
        "characteristic_polynomial": r.characteristic_polynomial,
        "wrist_model": r.wrist_model,
        "systole_model": r.systole_model,
        "k_constant": r.k_constant,
    }
    n = r.n
    text = [
        f"spectral radius ({n}+2+sqrt({n * n + 4 * n}))/2 = {r.spectral_radius:.6f}, entropy floor {r.entropy_floor:.6f}"
    ]
    if n == 1:
        text = [f"spectral radius (3+√5)/2 ≈ {r.spectral_radius:.6f}, entropy floor {r.entropy_floor:.6f}"]
    if r.wrist_model is not None:
        text.append(f"wrist model {r.wrist_model:.9g}")
    if r.systole_model is not None:
        text.append(f"systole model {r.systole_model:.9g}")
    if r.k_constant is not None:
        text.append(f"ratio constant K {r.k_constant:.9g}")
    return True, rec, "\n".join(text)


def _cmd_transform(args):
    v = bounds.entropy_transform(args.ent, args.multiple, args.degree)
    return True, {"entropy": args.ent, "multiple": args.multiple, "cover_degree": args.degree, "result": v}, f"{v:.12g}"


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="heegaard", description="Heegaard diagram combinatorics and entropy bounds.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print one JSON record")
    common.add_argument("--jobs", type=int, default=1, help="parallel workers for multi-file commands")
    sub = ap.add_subparsers(dest="command", required=True, metavar="command")

    for name, help_ in (
        ("validate", "check a diagram file"),
        ("invariants", "genus, intersection counts, homology and short curves"),
        ("present", "group presentation and intersection matrix"),
        ("admissible", "weak admissibility with a witness domain"),
        ("generators", "count intersection-point generators"),
    ):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("files", nargs="+")
        if name == "generators":
            p.add_argument("--list", action="store_true", help="also list every generator")

    p = sub.add_parser("wind", parents=[common], help="wind alpha curves until the diagram is admissible")
    p.add_argument("file")
    p.add_argument("--out")
    p.add_argument("--rounds", type=int, help="override the number of winding rounds (at least the default)")

    p = sub.add_parser("cover", parents=[common], help="cyclic cover from beta weights")
    p.add_argument("file")
    p.add_argument("--class", dest="cls", help="comma-separated weights, one per beta curve")
    p.add_argument("--sheets", type=int)
    p.add_argument("--out")

    p = sub.add_parser("reduce", parents=[common], help="discard curves and points down to one point")
    p.add_argument("file")
    p.add_argument("--out")

    p = sub.add_parser("random", parents=[common], help="random diagram from finger moves")
    p.add_argument("--genus", type=int, default=1)
    p.add_argument("--points", type=int, default=1)
    p.add_argument("--budget", type=int, default=5)
    p.add_argument("--free-handles", type=int, default=0)
    p.add_argument("--seed", type=int)
    p.add_argument("--out")

    p = sub.add_parser("bounds", parents=[common], help="entropy bounds from intersection counts")
    p.add_argument("file", nargs="?")
    p.add_argument("--k", help="comma-separated k_1..k_g instead of a file")
    p.add_argument("--b1", type=int, default=0)
    p.add_argument("--fiber-genus", type=int, default=3)
    p.add_argument("--length", type=int, help="Heegaard presentation length of the base")
    p.add_argument("--degree", type=int, default=1, help="cover degree used with --length")

    p = sub.add_parser("tube", parents=[common], help="complete a hyperbolic tube from two quantities")
    p.add_argument("--depth", type=float)
    p.add_argument("--systole", type=float)
    p.add_argument("--volume", type=float)
    p.add_argument("--wrist", type=float)
    p.add_argument("--angle", type=float, default=0.0)

    p = sub.add_parser("geom", parents=[common], help="volume, wrist and systole estimates")
    p.add_argument("--vol-w", type=float)
    p.add_argument("--wrists")
    p.add_argument("--total-vol", type=float)
    p.add_argument("--systole", help="number or 'inf'")
    p.add_argument("--eps", type=float, default=1.0)
    p.add_argument("--mu", type=float, default=bounds.MEYERHOFF_MU)
    p.add_argument("--Dmu", type=float)
    p.add_argument("--genus", type=int)
    p.add_argument("--tube-volumes")
    p.add_argument("--tube-systoles")

    p = sub.add_parser("penner", parents=[common], help="homology action of T_x^n T_y^-1")
    p.add_argument("--n", type=int)
    p.add_argument("--genus", type=int)
    p.add_argument("--w-inf", type=float)
    p.add_argument("--vol-inf", type=float)
    p.add_argument("--vol-cusped", type=float, help="volume of the cusped limit; reports K = 1 + 2 vol")

    p = sub.add_parser("transform", parents=[common], help="entropy of a multiple or a pullback")
    p.add_argument("ent", type=float)
    p.add_argument("--multiple", type=int, default=1)
    p.add_argument("--degree", type=int, default=1)
    return ap


_HANDLERS = {
    "wind": _cmd_wind,
    "cover": _cmd_cover,
    "reduce": _cmd_reduce,
    "random": _cmd_random,
    "bounds": _cmd_bounds,
    "tube": _cmd_tube,
    "geom": _cmd_geom,
    "penner": _cmd_penner,
    "transform": _cmd_transform,
}


def _clean(x):
    if isinstance(x, float):
        return _num(x)
    if isinstance(x, dict):
        return {k: _clean(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_clean(v) for v in x]
    return x


def run(argv: list[str] | None = None) -> tuple[int, str]:
    """Run one command; return (exit status, text to print)."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0), ""
    if getattr(args, "jobs", 1) < 1:
        return 2, "error: --jobs must be positive"
    try:
        if args.command in _PER_FILE:
            extra = {"materialize": args.list} if args.command == "generators" else {}
            ok, rec, text = _per_file(args, extra)
        else:
            ok, rec, text = _HANDLERS[args.command](args)
    except UsageError as e:
        return 2, f"error: {e}"
    except (DiagramError, MoveError, CoverError, WindingError, ValueError) as e:
        ok, rec, text = False, {"error": str(e)}, f"error: {e}"
    status = 0 if ok else 1
    if args.json:
        body = {"schema": SCHEMA, "command": args.command, "ok": ok}
        body.update(rec)
        return status, json.dumps(_clean(body), sort_keys=True, ensure_ascii=False)
    return status, text


def main(argv: list[str] | None = None) -> int:
    status, text = run(argv)
    if text:
        stream = sys.stderr if text.startswith("error:") else sys.stdout
        print(text, file=stream)
    return status


if __name__ == "__main__":
    sys.exit(main())
