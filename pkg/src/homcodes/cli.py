"""Command-line entry point: ``homcodes <command> ...``.

Exit codes: 0 success, 1 failed verification, 2 usage error.  Parameters
printed by any command are measured on the constructed object.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction
from math import log2
from pathlib import Path

from . import families as fam
from .classical import (LinearCode, classical_code_from_graph, hamming_curve, is_homological,
                        rate_table)
from .complex2 import Complex2
from .graph import complete_graph, cycle_graph
from .homological import (HomologicalCode, TorsionObstruction, build,
                          homological_distance, mu_bound_ledger, parameter_report)
from .simulate import monte_carlo_logical_rate
from .symplectic import (StabilizerCode, TooLarge, format_check_matrix,
                         parse_check_matrix)
from .symplectic import distance_bruteforce as quantum_distance


class UsageError(Exception):
    pass


FAMILIES = ("sphere", "P", "T", "gT", "gP", "kitaev", "optimized-toric", "ring", "p93",
            "holed-disc", "regular-disc", "connected-sum")


def make_family(name: str, d: int | None, g: int | None, h: int | None) -> Complex2:
    def need(x, what):
        if x is None:
            raise UsageError(f"family {name} needs --{what}")
        return x

    if name == "sphere":
        return fam.sphere()
    if name == "P":
        return fam.projective_plane()
    if name == "T":
        return fam.genus_torus(1)
    if name == "gT":
        return fam.genus_torus(need(g, "g"))
    if name == "gP":
        return fam.genus_projective(need(g, "g"))
    if name == "kitaev":
        return fam.kitaev_toric(need(d, "d"))
    if name == "optimized-toric":
        return fam.optimized_toric(need(d, "d"))
    if name == "ring":
        return fam.ring_code_complex(need(d, "d"))
    if name == "p93":
        return fam.projective_plane_93()
    if name == "holed-disc":
        return fam.holed_disc(need(h, "h"))
    if name == "regular-disc":
        return fam.regular_disc_embedding(need(h, "h"), need(d, "d"))
    if name == "connected-sum":
        return fam.connected_sum_family(fam.optimized_toric(need(d, "d")), need(g, "g"))
    raise UsageError(f"unknown family {name!r}")


def _emit(obj, out=None) -> None:
    text = json.dumps(obj, indent=2)
    if out:
        Path(out).write_text(text + "\n")
    else:
        print(text)


def _report_json(rep) -> dict:
    out = rep.to_json()
    out["params"] = rep.triple()
    return out


def _load_code(path: str, D: int) -> StabilizerCode | HomologicalCode:
    """A complex JSON file builds a homological code; anything else is a check matrix."""
    text = Path(path).read_text()
    try:
        obj = json.loads(text)
    except json.JSONDecodeError:
        return StabilizerCode(parse_check_matrix(text, D), D, name=Path(path).stem)
    return build(Complex2.from_json(obj), D)


# -- commands ----------------------------------------------------------------------


def cmd_family(a) -> int:
    c = make_family(a.name, a.d, a.g, a.h)
    out = {"name": c.name or a.name, "vertices": c.n_vertices, "edges": c.n_edges,
           "faces": c.n_faces, "chi": c.euler_characteristic()}
    if a.emit:
        _emit(c.to_json(), a.emit)
        out["emitted"] = a.emit
    if not a.no_code:
        try:
            out["code"] = _report_json(parameter_report(build(c, a.D)))
        except TorsionObstruction as e:
            out["code"] = {"error": "TorsionObstruction", "detail": str(e)}
    _emit(out)
    return 0


def cmd_classical(a) -> int:
    if a.check_homological:
        obj = json.loads(Path(a.check_homological).read_text())
        code = LinearCode.from_json(obj)
        g = is_homological(code, up_to_permutation=a.permutations)
        _emit({"n": code.n, "k": code.k, "homological": g is not None,
               "graph": g.to_json() if g is not None else None})
        return 0
    if a.family is None or a.param is None:
        raise UsageError("classical needs --family and --param, or --check-homological")
    g = cycle_graph(a.param) if a.family == "C" else complete_graph(a.param)
    gc = classical_code_from_graph(g)
    out = {"family": a.family, "param": a.param, "n": gc.n, "k": gc.k, "d": gc.d,
           "params": f"[{gc.n},{gc.k},{gc.d}]"}
    if a.report:
        out["code"] = gc.code.to_json()
    _emit(out)
    return 0


def cmd_quantum(a) -> int:
    code = _load_code(a.complex, a.D)
    sc = code.code if isinstance(code, HomologicalCode) else code
    if a.export_check_matrix:
        Path(a.export_check_matrix).write_text(format_check_matrix(sc.generators))
    out = {"n": sc.n, "k": sc.k, "D": sc.D, "generators": sc.m}
    if a.report:
        out.update(_report_json(parameter_report(code)))
    _emit(out)
    return 0


def cmd_distance(a) -> int:
    code = _load_code(a.code, a.D)
    out = {}
    if a.method in ("homological", "both"):
        if not isinstance(code, HomologicalCode):
            raise UsageError("homological distance needs a complex")
        out["homological"] = homological_distance(code.complex, a.D).d
    if a.method in ("brute", "both"):
        sc = code.code if isinstance(code, HomologicalCode) else code
        out["bruteforce"] = quantum_distance(sc).d
    _emit(out)
    if len(set(out.values())) > 1:
        print("distance methods disagree", file=sys.stderr)
        return 1
    return 0


def cmd_simulate(a) -> int:
    code = _load_code(a.code, a.D)
    sc = code.code if isinstance(code, HomologicalCode) else code
    rows = []
    for p in a.p:
        r = monte_carlo_logical_rate(sc, p, a.shots, a.seed)
        rows.append({"p": p, "failures": r.failures, "shots": r.shots,
                     "rate": r.rate, "stderr": r.stderr, "seed": a.seed})
    if a.out == "json":
        _emit(rows)
    else:
        w = csv.DictWriter(sys.stdout, fieldnames=list(rows[0]))
        w.writeheader()
        w.writerows(rows)
    return 0


def cmd_scan_optimal(a) -> int:
    rep = fam.optimal_toric_scan(a.d)
    print(f"d={a.d}: sublattices of index < {rep.min_index}: {len(rep.failures)}, "
          f"all with shortest L1 vector < d: {rep.all_fail}")
    verdict = "achieved" if rep.achieved else "NOT achieved"
    print(f"minimum vertices {rep.min_index}, {verdict} "
          f"(optimized lattice shortest L1 vector {rep.optimized_shortest})")
    return 0 if rep.achieved else 1


def _binary_entropy(x: float) -> float:
    return 1 - hamming_curve(x)


def rate_rows(classical: bool, quantum: bool, samples: int = 100) -> list[dict]:
    rows = []

    def add(family, x, y):
        rows.append({"family": family, "x": float(x), "y": float(y),
                     "x_exact": str(x), "y_exact": str(y)})

    if classical:
        for p in rate_table("C", range(3, 10)):
            add(f"C{p.param}", p.rate, p.t_over_n)
        for p in rate_table("K", range(3, 8)):
            add(f"K{p.param}", p.rate, p.t_over_n)
        for i in range(samples):
            y = 0.5 * i / (samples - 1)
            rows.append({"family": "hamming-bound", "x": hamming_curve(y), "y": y,
                         "x_exact": "", "y_exact": ""})
    if quantum:
        for d in (3, 5, 7, 9):
            hc = build(fam.optimized_toric(d), 2)
            dd = homological_distance(hc.complex, 2).d
            add(f"optimized-toric-{d}", Fraction(hc.k, hc.n), Fraction((dd - 1) // 2, hc.n))
        for g in (2, 3, 4):
            hc = build(fam.connected_sum_family(fam.optimized_toric(3), g), 2)
            dd = homological_distance(hc.complex, 2).d
            add(f"connected-sum-3-g{g}", Fraction(hc.k, hc.n), Fraction((dd - 1) // 2, hc.n))
        k5 = build(fam.optimized_toric(3), 2)
        add("K5-torus", Fraction(k5.k, k5.n), Fraction(1, k5.n))
        for i in range(samples):
            y = 0.11 * (i + 1) / samples
            x = 1 - y * log2(3) - _binary_entropy(y)
            rows.append({"family": "quantum-hamming-bound", "x": x, "y": y,
                         "x_exact": "", "y_exact": ""})
    return rows


def cmd_rates(a) -> int:
    classical = a.classical or not a.quantum
    quantum = a.quantum or not a.classical
    rows = rate_rows(classical, quantum, a.samples)
    w = csv.DictWriter(sys.stdout, fieldnames=["family", "x", "y", "x_exact", "y_exact"])
    w.writeheader()
    w.writerows(rows)
    if a.ledger:
        for g in range(1, 5):
            for b in mu_bound_ledger("T", 3, g):
                print(f"# mu({b.surface},{b.d}) {b.kind} {b.edges}: {b.witness}")
    return 0


# -- parser ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="homcodes", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("family", help="build a named complex and measure its code")
    p.add_argument("--name", required=True, choices=FAMILIES)
    p.add_argument("--d", type=int)
    p.add_argument("--g", type=int)
    p.add_argument("--h", type=int)
    p.add_argument("--D", type=int, default=2)
    p.add_argument("--emit", help="write the complex JSON here")
    p.add_argument("--no-code", action="store_true", help="skip code construction")
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("classical", help="classical codes from graphs")
    p.add_argument("--family", choices=("C", "K"))
    p.add_argument("--param", type=int)
    p.add_argument("--report", action="store_true")
    p.add_argument("--check-homological", metavar="CODE_JSON")
    p.add_argument("--permutations", action="store_true",
                   help="allow coordinate permutations in the homological check")
    p.set_defaults(func=cmd_classical)

    p = sub.add_parser("quantum", help="stabilizer code from a complex or check matrix")
    p.add_argument("--complex", required=True, help="complex JSON or check-matrix text")
    p.add_argument("--D", type=int, default=2)
    p.add_argument("--report", action="store_true")
    p.add_argument("--export-check-matrix", metavar="OUT")
    p.set_defaults(func=cmd_quantum)

    p = sub.add_parser("distance", help="code distance by one or both methods")
    p.add_argument("--code", required=True)
    p.add_argument("--D", type=int, default=2)
    p.add_argument("--method", choices=("brute", "homological", "both"), default="both")
    p.set_defaults(func=cmd_distance)

    p = sub.add_parser("simulate", help="Monte Carlo logical failure rate")
    p.add_argument("--code", required=True)
    p.add_argument("--D", type=int, default=2)
    p.add_argument("--p", type=float, nargs="+", required=True)
    p.add_argument("--shots", type=int, default=100_000)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("scan-optimal", help="optimality scan of square-lattice tori")
    p.add_argument("--d", type=int, required=True)
    p.set_defaults(func=cmd_scan_optimal)

    p = sub.add_parser("rates", help="rate-figure data as CSV (family, x=k/n, y=t/n)")
    p.add_argument("--classical", action="store_true")
    p.add_argument("--quantum", action="store_true")
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--ledger", action="store_true", help="append the mu(gT,3) bound ledger")
    p.set_defaults(func=cmd_rates)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    a = ap.parse_args(argv)
    try:
        return a.func(a)
    except UsageError as e:
        print(f"homcodes: {e}", file=sys.stderr)
        return 2
    except (TorsionObstruction, TooLarge, ValueError) as e:
        print(f"homcodes: {type(e).__name__}: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
