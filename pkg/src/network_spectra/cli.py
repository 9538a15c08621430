"""Command-line interface.

Every subcommand loads a network from a JSON file (or a bundled fixture name
such as ``sq1``), runs its checks, writes a JSON report into the output
directory, and exits 0 only if all asserted checks passed.  Exit codes:
0 success, 1 failed checks, 2 usage errors, 3 I/O errors.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import fixtures as fixture_lib
from .errors import NetworkSpectraError
from .graph_core import TorusGraph, unit_conductances
from .laplacian import build_laplacian, charpoly, node_check, principal_minor
from .forests import (
    boundary_point_counts,
    dual_pair_hull,
    enumerate_dual_pairs,
    enumerate_ocrsfs,
    pfnlap_sum,
)
from .temperley import (
    dimer_class,
    dimer_newton_polygon,
    enumerate_dimers,
    reference_pair,
    temperley_map,
)
from .ydelta import MoveProgram, discrete_abel, invariance_check, run_program
from .zigzag import minimality_check, trace_strands, zigzag_polygon


def _load_network(path_or_name: str):
    p = Path(path_or_name)
    if not p.exists():
        try:
            p = Path(str(fixture_lib.fixture_path(path_or_name)))
        except FileNotFoundError:
            raise FileNotFoundError(
                f"no such file or bundled fixture: {path_or_name}"
            ) from None
    graph, conductances = TorusGraph.load(p)
    if conductances is None:
        conductances = unit_conductances(graph)
    return graph, conductances, p.stem


def _write_report(outdir: Path, name: str, data: dict) -> Path:
    outdir.mkdir(parents=True, exist_ok=True)
    path = outdir / f"{name}.json"
    with open(path, "w") as fh:
        json.dump(data, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return path


def _poly_json(p) -> list:
    return p.to_json_terms()


def cmd_validate(args) -> tuple[int, dict]:
    graph, _, _ = _load_network(args.input)
    report = graph.validate()
    return (0 if report.ok else 1), {"validate": report.to_json()}


def cmd_charpoly(args) -> tuple[int, dict]:
    graph, c, _ = _load_network(args.input)
    p = charpoly(build_laplacian(graph, c), max_vertices=args.bound)
    node = node_check(p)
    data = {
        "charpoly": _poly_json(p),
        "node": node.to_json(),
        "sigma_symmetric": p == p.involution(),
        "newton_polygon": p.newton_polygon().to_json(),
    }
    ok = node.is_node and data["sigma_symmetric"]
    if graph.n_vertices >= 2:
        data["principal_minor_v0"] = _poly_json(principal_minor(build_laplacian(graph, c), 0))
    return (0 if ok else 1), data


def cmd_zigzag(args) -> tuple[int, dict]:
    graph, _, _ = _load_network(args.input)
    strands = trace_strands(graph)
    rep = minimality_check(graph)
    data = {
        "strands": [
            {"id": s.id, "length": len(s), "homology": list(s.homology)} for s in strands
        ],
        "minimality": rep.to_json(),
    }
    if rep.minimal:
        data["polygon"] = zigzag_polygon(graph).to_json()
    return (0 if rep.minimal else 1), data


def cmd_newton(args) -> tuple[int, dict]:
    graph, c, _ = _load_network(args.input)
    p = charpoly(build_laplacian(graph, c), max_vertices=args.bound)
    n_char = p.newton_polygon()
    n_zz = zigzag_polygon(graph)
    n_pairs = dual_pair_hull(graph, max_edges=args.bound)
    ok = n_char == n_zz == n_pairs
    data = {
        "charpoly_polygon": n_char.to_json(),
        "zigzag_polygon": n_zz.to_json(),
        "dual_pair_polygon": n_pairs.to_json(),
        "all_equal": ok,
        "interior_lattice_points": n_char.interior_lattice_count(),
        "boundary_lattice_points": n_char.boundary_lattice_count(),
        "genus": n_char.interior_lattice_count() - 1,
        "centrally_symmetric": n_char.is_centrally_symmetric(),
    }
    return (0 if ok and data["centrally_symmetric"] else 1), data


def cmd_ocrsf_check(args) -> tuple[int, dict]:
    graph, c, _ = _load_network(args.input)
    rng = random.Random(args.seed)
    det = charpoly(build_laplacian(graph, c), max_vertices=args.bound)
    oracle = pfnlap_sum(graph, c, max_edges=args.bound)
    draws_ok = True
    from .graph_core import random_rational_conductances

    for _ in range(args.draws):
        cr = random_rational_conductances(graph, rng, positive=False)
        draws_ok &= pfnlap_sum(graph, cr, max_edges=args.bound) == charpoly(
            build_laplacian(graph, cr), max_vertices=args.bound
        )
    counts, expected = boundary_point_counts(graph, max_edges=args.bound)
    data = {
        "oracle_equality": det == oracle,
        "random_draws": args.draws,
        "random_draws_equal": draws_ok,
        "ocrsf_count": len(enumerate_ocrsfs(graph, max_edges=args.bound)),
        "boundary_counts": {str(k): v for k, v in sorted(counts.items())},
        "binomial_expected": {str(k): v for k, v in sorted(expected.items())},
        "binomial_match": counts == expected,
        "seed": args.seed,
    }
    ok = data["oracle_equality"] and draws_ok and data["binomial_match"]
    return (0 if ok else 1), data


def cmd_temperley_check(args) -> tuple[int, dict]:
    graph, c, _ = _load_network(args.input)
    sup = graph.superpose()
    pairs = enumerate_dual_pairs(graph, max_edges=args.bound)
    covers = enumerate_dimers(sup, max_whites=args.bound)
    images = [temperley_map(sup, p) for p in pairs]
    bijection = len(set(images)) == len(pairs) and set(images) == set(covers)
    ref = reference_pair(graph)
    m0 = temperley_map(sup, ref)
    weights_ok = all(p.weight(c) == m.weight(sup, c) for p, m in zip(pairs, images))
    homology_ok = all(
        dimer_class(sup, m, m0, ref.cls) == p.cls for p, m in zip(pairs, images)
    )
    polygon_ok = dimer_newton_polygon(graph) == zigzag_polygon(graph)
    data = {
        "pairs": len(pairs),
        "dimer_covers": len(covers),
        "bijection": bijection,
        "weight_preserving": weights_ok,
        "homology_preserving": homology_ok,
        "polygon_equal": polygon_ok,
    }
    ok = bijection and weights_ok and homology_ok and polygon_ok
    return (0 if ok else 1), data


def cmd_ydelta(args) -> tuple[int, dict]:
    graph, c, _ = _load_network(args.input)
    if (args.y2d is None) == (args.d2y is None):
        raise SystemExit(2)
    if args.y2d is not None:
        rep = invariance_check(graph, c, "y2d", args.y2d)
    else:
        rep = invariance_check(graph, c, "d2y", args.d2y)
    data = rep.to_json()
    ok = rep.exact and rep.polygon_equal
    return (0 if ok else 1), data


def cmd_evolve(args) -> tuple[int, dict]:
    graph, c, _ = _load_network(args.input)
    with open(args.program) as fh:
        prog_data = json.load(fh)
    program = MoveProgram.from_json(prog_data)
    steps = args.steps if args.steps is not None else int(prog_data.get("steps", 10))
    if args.random_conductances:
        from .graph_core import random_rational_conductances

        c = random_rational_conductances(graph, random.Random(args.seed))
    t0 = time.time()
    rep = run_program(graph, c, program, steps)
    data = rep.to_json()
    data["elapsed_seconds"] = round(time.time() - t0, 3)
    data["seed"] = args.seed
    return (0 if rep.conserved_constant and rep.strand_classes_preserved else 1), data


def cmd_amoeba(args) -> tuple[int, dict]:
    from .spectral import amoeba, real_ovals, write_amoeba_csv, write_amoeba_svg

    graph, c, stem = _load_network(args.input)
    p = charpoly(build_laplacian(graph, c), max_vertices=args.bound)
    cloud = amoeba(p, grid=args.grid, radius=args.radius)
    ovals = real_ovals(p, radius=max(args.radius, 6.0))
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    csv_path = outdir / f"amoeba_{stem}.csv"
    svg_path = outdir / f"amoeba_{stem}.svg"
    write_amoeba_csv(csv_path, cloud)
    divisor_points = []
    if graph.n_vertices >= 2 and all(float(x) > 0 for x in c.values()):
        from .spectral import spectral_divisor

        try:
            divisor_points = spectral_divisor(graph, c, v0=args.v0).points
        except NetworkSpectraError:
            divisor_points = []
    write_amoeba_svg(svg_path, cloud, divisor_points)
    data = {
        "points": len(cloud.points),
        "skipped_fibers": cloud.skipped_fibers,
        "holes": len(ovals),
        "symmetry_defect": cloud.symmetric_defect(),
        "csv": str(csv_path),
        "svg": str(svg_path),
        "genus": p.newton_polygon().interior_lattice_count() - 1,
    }
    return (0 if data["symmetry_defect"] < 0.05 else 1), data


def cmd_divisor(args) -> tuple[int, dict]:
    from .spectral import spectral_divisor

    graph, c, _ = _load_network(args.input)
    res = spectral_divisor(
        graph,
        c,
        v0=args.v0,
        grid=args.grid,
        refine_tol=args.tol,
        check_count=False,
    )
    data = res.to_json()
    q_ok = all(
        pt.q_residual <= args.qtol and pt.q_residual_sigma <= args.qtol
        for pt in res.points
    )
    s_ok = all(pt.section_residual <= args.tol for pt in res.points)
    data["q_check"] = q_ok
    data["section_check"] = s_ok
    ok = res.count_matches_genus and q_ok and s_ok
    return (0 if ok else 1), data


def cmd_abel(args) -> tuple[int, dict]:
    graph, _, _ = _load_network(args.input)
    k = args.window
    chart = discrete_abel(graph, ("vertex", args.base), ((-k, k), (-k, k)))
    eq = {
        "(1,0)": chart.check_equivariance((1, 0)),
        "(0,1)": chart.check_equivariance((0, 1)),
        "(1,1)": chart.check_equivariance((1, 1)),
    }
    data = chart.to_json()
    data["equivariance"] = eq
    data["path_independent"] = True  # construction verifies all window loops
    return (0 if all(eq.values()) else 1), data


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default="reports", help="output directory for reports")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    common.add_argument(
        "--bound",
        type=int,
        default=24,
        help="size bound for exact determinants and enumerations",
    )
    ap = argparse.ArgumentParser(
        prog="network-spectra",
        description="Spectral data of biperiodic resistor networks on the torus.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text, parents=[common])
        p.add_argument("input", help="network JSON file or bundled fixture name")
        p.set_defaults(func=func)
        return p

    add("validate", cmd_validate, "structural torus-graph checks")
    add("charpoly", cmd_charpoly, "exact characteristic polynomial and node report")
    add("zigzag", cmd_zigzag, "strand table and minimality verdict")
    add("newton", cmd_newton, "three-way boundary polygon comparison")
    add("ocrsf-check", cmd_ocrsf_check, "forest oracle vs determinant; boundary counts").add_argument(
        "--draws", type=int, default=20
    )
    add("temperley-check", cmd_temperley_check, "dual pairs vs dimer covers bijection")
    yd = add("ydelta", cmd_ydelta, "single move with exact invariance check")
    yd.add_argument("--y2d", type=int, default=None, metavar="VERTEX")
    yd.add_argument("--d2y", type=int, default=None, metavar="FACE")
    ev = add("evolve", cmd_evolve, "run a move program; conserved quantities")
    ev.add_argument("--program", required=True, help="move program JSON")
    ev.add_argument("--steps", type=int, default=None)
    ev.add_argument("--random-conductances", action="store_true")
    am = add("amoeba", cmd_amoeba, "amoeba point cloud, CSV + SVG")
    am.add_argument("--grid", type=int, default=60)
    am.add_argument("--radius", type=float, default=3.0)
    am.add_argument("--v0", type=int, default=0)
    dv = add("divisor", cmd_divisor, "spectral divisor on the compact ovals")
    dv.add_argument("--v0", type=int, default=0)
    dv.add_argument("--grid", type=int, default=360)
    dv.add_argument("--tol", type=float, default=1e-9)
    dv.add_argument("--qtol", type=float, default=1e-6)
    ab = add("abel", cmd_abel, "discrete Abel chart over a window")
    ab.add_argument("--base", type=int, default=0)
    ab.add_argument("--window", type=int, default=1)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        code, data = args.func(args)
    except (FileNotFoundError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except NetworkSpectraError as exc:
        print(f"check failed: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    stem = Path(args.input).stem
    path = _write_report(Path(args.out), f"{args.command.replace('-', '_')}_{stem}", data)
    status = "PASS" if code == 0 else "FAIL"
    print(f"{args.command} {stem}: {status} ({path})")
    return code


if __name__ == "__main__":
    sys.exit(main())
