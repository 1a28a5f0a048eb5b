"""Command-line verification harness.

Subcommands wire the library into reproducible runs with machine-readable
reports: exit code 0 when every assertion of the invoked command passes, 1 on
an assertion failure (the report names the graph and the violated claim), 2
on usage or capacity errors. Graph input is newline-delimited graph6 on stdin
or ``--in FILE``; ``--json``/``--csv`` write the full report.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from typing import Optional

from . import __version__
from ._kernels import BACKEND
from .errors import CapacityError, CopLabError, ParameterError, PreconditionError
from .graphs import (
    Graph,
    bits,
    complement,
    make_family,
    parse_graph6,
    read_graph6_stream,
    shrikhande,
    to_graph6,
)
from .invariants import (
    chromatic_number,
    clique_cover_number,
    clique_number,
    clique_pairs_connected,
    has_induced_cycle,
    independence_number,
    induced_cycle_spectrum,
    induces_cycle,
    is_dismantlable,
)
from .randgraphs import (
    PlantedCoverParams,
    blockable_vertices,
    check_max_degree,
    check_properties,
    monte_carlo,
    sample_planted_cover,
    trial_seed,
)
from .solver import cop_number, cops_win, optimal_robber_strategy, play, verify_transcript
from .solver import MAX_STATES
from .strategies import GreedyCops, RandomCops, RandomRobber, extract_induced_cycle, partition_evader

SCHEMA = "coplab-report/1"


def _report(command: str, inputs: dict) -> dict:
    return {
        "schema": SCHEMA,
        "version": __version__,
        "backend": BACKEND,
        "command": command,
        "inputs": inputs,
        "records": [],
        "verdicts": [],
        "pass": True,
    }


def _fail(report: dict, claim: str, graph: Optional[Graph] = None) -> None:
    verdict = {"claim": claim, "ok": False}
    if graph is not None:
        verdict["graph6"] = to_graph6(graph).decode()
    report["verdicts"].append(verdict)
    report["pass"] = False


def _ok(report: dict, claim: str) -> None:
    report["verdicts"].append({"claim": claim, "ok": True})


def _read_graphs(args) -> list[Graph]:
    if args.infile:
        with open(args.infile, "rb") as fh:
            return list(read_graph6_stream(fh))
    return list(read_graph6_stream(sys.stdin.buffer))


# -- per-graph invariant records ---------------------------------------------------


def _invariant_record(g6: str, max_states: int) -> dict:
    g = parse_graph6(g6)
    rec: dict = {"graph6": g6, "n": g.n}
    try:
        rec["alpha"] = independence_number(g)[0]
        rec["omega"] = clique_number(g)[0]
    except CapacityError as exc:
        rec["alpha"] = rec["omega"] = None
        rec["skip"] = str(exc)
    try:
        rec["chi"] = chromatic_number(g)[0]
        rec["theta"] = clique_cover_number(g)[0]
    except CapacityError as exc:
        rec["chi"] = rec["theta"] = None
        rec["skip"] = str(exc)
    if not g.is_connected():
        rec["cop_number"] = None
        rec["skip"] = "disconnected; cop number undefined"
    else:
        try:
            rec["cop_number"] = cop_number(g, max_states)
        except CapacityError as exc:
            rec["cop_number"] = None
            rec["skip"] = str(exc)
    c, a, th = rec.get("cop_number"), rec.get("alpha"), rec.get("theta")
    rec["sandwich_ok"] = None
    if c is not None and a is not None and th is not None:
        rec["sandwich_ok"] = c <= a <= th
    return rec


def cmd_invariants(args) -> tuple[dict, int]:
    graphs = _read_graphs(args)
    report = _report("invariants", {"count": len(graphs)})
    tasks = [to_graph6(g).decode() for g in graphs]
    if args.jobs > 1:
        from concurrent.futures import ProcessPoolExecutor
        from functools import partial

        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            records = list(pool.map(partial(_invariant_record, max_states=args.max_states), tasks))
    else:
        records = [_invariant_record(t, args.max_states) for t in tasks]
    report["records"] = records
    for rec in records:
        if rec["sandwich_ok"] is False:
            _fail(report, f"sandwich c <= alpha <= theta violated: {rec}")
    if report["pass"]:
        _ok(report, "sandwich inequality holds on every fully computed graph")
    return report, 0 if report["pass"] else 1


def cmd_shrikhande_verify(args) -> tuple[dict, int]:
    from .invariants import is_independent_set

    g = complement(shrikhande())
    report = _report("shrikhande-verify", {})
    alpha, wit = independence_number(g)
    theta, cover = clique_cover_number(g)
    cover.validate(g)
    if not is_independent_set(g, wit) or wit.bit_count() != alpha:
        _fail(report, "independence witness fails its definitional check", g)
    c = cop_number(g, args.max_states)
    c4 = has_induced_cycle(g, 4)
    report["records"].append(
        {
            "graph6": to_graph6(g).decode(),
            "cop_number": c,
            "alpha": alpha,
            "theta": theta,
            "independent_set": sorted(bits(wit)),
            "cover_parts": [sorted(bits(p)) for p in cover.parts],
            "induced_c4": sorted(bits(c4)) if c4 else None,
            "cycle_census_applies": c == theta,
        }
    )
    for claim, got, want in [
        ("cop number is 3", c, 3),
        ("independence number is 3", alpha, 3),
        ("clique cover number is 4", theta, 4),
    ]:
        if got == want:
            _ok(report, claim)
        else:
            _fail(report, f"{claim} (got {got})", g)
    if c4 is not None and induces_cycle(g, c4):
        _ok(report, "contains an induced 4-cycle")
    else:
        _fail(report, "induced 4-cycle missing", g)
    if c != theta:
        _ok(report, "cop number differs from cover number; cycle census holds vacuously")
    else:
        _fail(report, "expected cop number < cover number here", g)
    return report, 0 if report["pass"] else 1


def _census_record(g6: str, kmin: int, max_states: int) -> dict:
    g = parse_graph6(g6)
    rec: dict = {"graph6": g6, "n": g.n}
    if not g.is_connected():
        rec["status"] = "skipped-disconnected"
        return rec
    try:
        theta, cover = clique_cover_number(g)
    except CapacityError as exc:
        rec["status"] = "unknown-theta"
        rec["skip"] = str(exc)
        return rec
    rec["theta"] = theta
    try:
        c = cop_number(g, max_states)
    except CapacityError as exc:
        rec["status"] = "unknown-cop-number"
        rec["skip"] = str(exc)
        return rec
    rec["cop_number"] = c
    if c != theta or c < kmin:
        rec["status"] = "not-qualifying"
        return rec
    rec["status"] = "qualifying"
    k = c
    spectrum = induced_cycle_spectrum(g, min(k + 1, g.n))
    rec["cycle_spectrum"] = sorted(spectrum)
    rec["cycles_ok"] = all(t in spectrum for t in range(3, k + 2))
    pairs_ok, pair = clique_pairs_connected(g, cover)
    rec["pairs_ok"] = pairs_ok
    if not pairs_ok:
        rec["failing_pair"] = pair
    return rec


def cmd_census(args) -> tuple[dict, int]:
    graphs = _read_graphs(args)
    report = _report("census", {"count": len(graphs), "kmin": args.kmin})
    tasks = [to_graph6(g).decode() for g in graphs]
    if args.jobs > 1:
        from concurrent.futures import ProcessPoolExecutor
        from functools import partial

        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            records = list(
                pool.map(
                    partial(_census_record, kmin=args.kmin, max_states=args.max_states),
                    tasks,
                    chunksize=64,
                )
            )
    else:
        records = [_census_record(t, args.kmin, args.max_states) for t in tasks]
    counts: dict[str, int] = {}
    for rec in records:
        counts[rec["status"]] = counts.get(rec["status"], 0) + 1
        if rec["status"] == "qualifying":
            if not rec["cycles_ok"]:
                _fail(report, f"missing induced cycle lengths on qualifying graph: {rec}")
            if not rec["pairs_ok"]:
                _fail(report, f"cover parts without crossing edges on qualifying graph: {rec}")
    report["records"] = records if args.full_records else [r for r in records if r["status"] == "qualifying"]
    report["counts"] = counts
    report["qualifying"] = counts.get("qualifying", 0)
    report["unknown"] = counts.get("unknown-theta", 0) + counts.get("unknown-cop-number", 0)
    if report["pass"]:
        _ok(report, f"zero counterexamples among {report['qualifying']} qualifying graphs")
    return report, 0 if report["pass"] else 1


def _has_triangle(rows: list[int]) -> bool:
    n = len(rows)
    for v in range(n):
        row = rows[v] >> (v + 1) << (v + 1)
        m = row
        while m:
            low = m & -m
            u = low.bit_length() - 1
            m ^= low
            if rows[v] & rows[u]:
                return True
    return False


def cmd_ramsey_check(args) -> tuple[dict, int]:
    report = _report("ramsey-check", {"n": 6})
    scanned = 0
    violations = []
    positions = [(i, j) for i in range(6) for j in range(i + 1, 6)]
    for mask in range(1 << 15):
        scanned += 1
        rows = [0] * 6
        m = mask
        while m:
            low = m & -m
            i, j = positions[low.bit_length() - 1]
            rows[i] |= 1 << j
            rows[j] |= 1 << i
            m ^= low
        if _has_triangle(rows):
            continue
        co = [(~rows[v]) & 0x3F & ~(1 << v) for v in range(6)]
        if not _has_triangle(co):  # alpha <= 2 means complement triangle-free
            violations.append(to_graph6(Graph(6, rows, validate=False)).decode())
    report["counts"] = {"scanned": scanned, "violations": len(violations)}
    report["records"] = violations
    if scanned != 1 << 15:
        _fail(report, "expected 32768 labeled graphs on 6 vertices")
    if violations:
        _fail(report, f"triangle-free graphs with independence below 3: {violations[:5]}")
    else:
        _ok(report, "no 6-vertex graph is triangle-free with independence number below 3")
    # tightness witness: the 5-cycle
    c5 = make_family("cycle", 5)
    tight = not _has_triangle(list(c5.adj)) and independence_number(c5)[0] == 2
    report["witness"] = {"graph6": to_graph6(c5).decode(), "triangle_free": True, "alpha": 2}
    if tight:
        _ok(report, "the 5-cycle is a tight witness (triangle-free, independence number 2)")
    else:
        _fail(report, "5-cycle witness check failed", c5)
    return report, 0 if report["pass"] else 1


def _complement_bipartite(rows: list[int], n: int) -> bool:
    full = (1 << n) - 1
    co = [(~rows[v]) & full & ~(1 << v) for v in range(n)]
    color = [-1] * n
    for s in range(n):
        if color[s] != -1:
            continue
        color[s] = 0
        stack = [s]
        while stack:
            v = stack.pop()
            m = co[v]
            while m:
                low = m & -m
                u = low.bit_length() - 1
                m ^= low
                if color[u] == -1:
                    color[u] = 1 - color[v]
                    stack.append(u)
                elif color[u] == color[v]:
                    return False
    return True


def _has_induced_c4(rows: list[int], n: int) -> bool:
    for u in range(n):
        for v in range(u + 1, n):
            if rows[u] >> v & 1:
                continue
            common = rows[u] & rows[v]
            if common.bit_count() < 2:
                continue
            m = common
            while m:
                low = m & -m
                x = low.bit_length() - 1
                m ^= low
                if common & ~rows[x] & ~(1 << x) & ~(low - 1):
                    return True
    return False


def cmd_c4free_check(args) -> tuple[dict, int]:
    if args.nmax > 7:
        raise CapacityError("c4free-check is gated at nmax <= 7")
    report = _report("c4free-check", {"nmax": args.nmax})
    per_n = []
    violations = []
    for n in range(1, args.nmax + 1):
        positions = [(i, j) for i in range(n) for j in range(i + 1, n)]
        scanned = survivors = 0
        for mask in range(1 << (n * (n - 1) // 2)):
            scanned += 1
            rows = [0] * n
            m = mask
            while m:
                low = m & -m
                i, j = positions[low.bit_length() - 1]
                rows[i] |= 1 << j
                rows[j] |= 1 << i
                m ^= low
            if not _complement_bipartite(rows, n):
                continue
            if _has_induced_c4(rows, n):
                continue
            g = Graph(n, rows, validate=False)
            if not g.is_connected():
                continue
            survivors += 1
            ok_dismantle = is_dismantlable(g)[0]
            ok_onecop = cops_win(g, 1, args.max_states)[0]
            if not (ok_dismantle and ok_onecop):
                violations.append(to_graph6(g).decode())
        per_n.append({"n": n, "scanned": scanned, "survivors": survivors})
    report["counts"] = {"per_n": per_n, "violations": len(violations)}
    report["records"] = violations
    if violations:
        _fail(report, f"connected induced-C4-free graphs with cover number <= 2 but cop number > 1: {violations[:5]}")
    else:
        _ok(report, "every connected induced-C4-free graph with cover number <= 2 is one-cop-win")
    return report, 0 if report["pass"] else 1


def _default_p(k: int, ell: int) -> float:
    return 2 * k * math.log(ell) / ell


def cmd_sample(args) -> tuple[dict, int]:
    p = args.p if args.p is not None else _default_p(args.k, args.ell)
    report = _report(
        "sample",
        {"k": args.k, "ell": args.ell, "p": p, "seed": args.seed, "trials": args.trials},
    )
    nominal = 11 * math.log(args.k) ** 2 * args.k**4
    for t in range(args.trials):
        seed = trial_seed(args.seed, t)
        params = PlantedCoverParams(args.k, args.ell, p, seed)
        g, parts = sample_planted_cover(params)
        rep = check_properties(g, parts, params)
        rec = {"trial": t, **rep.as_dict()}
        rec["n"] = g.n
        rec["vertex_bound_nominal"] = nominal
        rec["vertex_bound_slack"] = g.n - nominal
        if g.n <= 64:
            rec["graph6"] = to_graph6(g).decode()
        report["records"].append(rec)
    _ok(report, f"sampled and checked {args.trials} instances")
    return report, 0


def cmd_montecarlo(args) -> tuple[dict, int]:
    rep = monte_carlo(args.k, args.ell, args.trials, args.seed, jobs=args.jobs)
    report = _report(
        "montecarlo",
        {"k": args.k, "ell": args.ell, "trials": args.trials, "seed": args.seed},
    )
    report["records"] = [rep.as_dict()]
    report["csv"] = rep.csv_rows()
    _ok(
        report,
        f"degree violations {rep.freq_degree_violation:.3f} (bound {min(rep.degree_bound, 1):.3g}), "
        f"blockable {rep.freq_any_blockable:.3f} (bound {min(rep.escape_bound, 1):.3g})",
    )
    return report, 0


def cmd_evade(args) -> tuple[dict, int]:
    p = args.p if args.p is not None else _default_p(args.k, args.ell)
    params = PlantedCoverParams(args.k, args.ell, p, args.seed)
    g, parts = sample_planted_cover(params)
    rounds = args.rounds if args.rounds is not None else 10 * g.n
    report = _report(
        "evade",
        {
            "k": args.k,
            "ell": args.ell,
            "p": p,
            "seed": args.seed,
            "rounds": rounds,
            "adversary": args.adversary,
        },
    )
    degree_ok, delta = check_max_degree(g, params)
    blocked = blockable_vertices(g, parts)
    report["records"].append(
        {"max_degree": delta, "degree_ok": degree_ok, "blockable": blocked[:16]}
    )
    if not degree_ok or blocked:
        _fail(report, "preconditions-not-met: property checks failed, evasion not guaranteed")
        return report, 1
    evader = partition_evader(g, parts)
    k_cops = args.k - 1
    adv = (
        RandomCops(g, k_cops, args.seed)
        if args.adversary == "random"
        else GreedyCops(g, k_cops, args.seed)
    )
    tr = play(g, adv, evader, rounds)
    report["records"].append({"outcome": tr.outcome, "rounds": tr.rounds})
    if tr.outcome == "evasion":
        _ok(report, f"evaded {args.adversary} cops for {rounds} rounds")
        return report, 0
    _fail(report, f"captured at round {tr.rounds}", g)
    return report, 1


def cmd_extract(args) -> tuple[dict, int]:
    graphs = _read_graphs(args)
    report = _report("extract", {"count": len(graphs), "robber": args.robber, "seed": args.seed})
    for g in graphs:
        g6 = to_graph6(g).decode()
        rec: dict = {"graph6": g6, "n": g.n}
        report["records"].append(rec)
        if not g.is_connected():
            rec["status"] = "skipped-disconnected"
            continue
        try:
            theta, cover = clique_cover_number(g)
        except CapacityError as exc:
            rec["status"] = "unknown-theta"
            rec["skip"] = str(exc)
            continue
        rec["theta"] = theta
        if theta < 3:
            rec["status"] = "skipped-small-cover"
            continue
        if args.robber == "optimal":
            try:
                robber = optimal_robber_strategy(g, theta - 1, allow_losing=True, max_states=args.max_states)
            except CapacityError as exc:
                rec["status"] = "unknown-solver"
                rec["skip"] = str(exc)
                continue
        else:
            robber = RandomRobber(g, args.seed)
        try:
            res = extract_induced_cycle(g, cover, robber)
        except PreconditionError as exc:
            rec["status"] = "precondition-error"
            rec["detail"] = str(exc)
            continue
        rec["status"] = res.kind
        if res.kind == "cycle":
            rec["cycle"] = sorted(bits(res.cycle))
            rec["length"] = res.length
            if not induces_cycle(g, res.cycle) or res.cycle.bit_count() != theta + 1:
                _fail(report, "extracted set does not induce the expected cycle", g)
        else:
            rec["transcript"] = json.loads(res.transcript.to_json())
            if not verify_transcript(g, res.transcript):
                _fail(report, "capture transcript fails legality", g)
    if report["pass"]:
        _ok(report, "every produced certificate re-verified")
    return report, 0 if report["pass"] else 1


# -- argument parsing ---------------------------------------------------------------


def _add_common(sub, stream: bool = False):
    sub.add_argument("--json", dest="json_out", metavar="OUT", help="write the JSON report")
    sub.add_argument("--csv", dest="csv_out", metavar="OUT", help="write CSV rows when available")
    sub.add_argument("--max-states", type=int, default=MAX_STATES, help="solver state gate override")
    sub.add_argument("--jobs", type=int, default=1, help="parallel worker count")
    if stream:
        sub.add_argument("--in", dest="infile", metavar="FILE", help="graph6 input file (default stdin)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="coplab", description=__doc__)
    ap.add_argument("--version", action="version", version=f"coplab {__version__} ({BACKEND} kernel)")
    sp = ap.add_subparsers(dest="command", required=True)

    s = sp.add_parser("invariants", help="alpha/omega/chi/theta/cop number per input graph")
    _add_common(s, stream=True)
    s.set_defaults(func=cmd_invariants)

    s = sp.add_parser("shrikhande-verify", help="verify the Shrikhande-complement invariants")
    _add_common(s)
    s.set_defaults(func=cmd_shrikhande_verify)

    s = sp.add_parser("census", help="induced-cycle census over graphs with equal cop and cover numbers")
    _add_common(s, stream=True)
    s.add_argument("--kmin", type=int, default=3)
    s.add_argument("--full-records", action="store_true", help="keep all per-graph records in the report")
    s.set_defaults(func=cmd_census)

    s = sp.add_parser("ramsey-check", help="no 6-vertex graph is triangle-free with independence below 3")
    _add_common(s)
    s.set_defaults(func=cmd_ramsey_check)

    s = sp.add_parser("c4free-check", help="induced-C4-free graphs with cover number <= 2 are one-cop-win")
    _add_common(s)
    s.add_argument("--nmax", type=int, default=7)
    s.set_defaults(func=cmd_c4free_check)

    s = sp.add_parser("sample", help="sample the planted construction and run its property checks")
    _add_common(s)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--ell", type=int, required=True)
    s.add_argument("--p", type=float, default=None, help="cross probability (default 2k ln(ell)/ell)")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--trials", type=int, default=1)
    s.set_defaults(func=cmd_sample)

    s = sp.add_parser("montecarlo", help="empirical violation frequencies against the analytic bounds")
    _add_common(s)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--ell", type=int, required=True)
    s.add_argument("--trials", type=int, default=30)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_montecarlo)

    s = sp.add_parser("evade", help="run the evading robber against a cop adversary")
    _add_common(s)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--ell", type=int, required=True)
    s.add_argument("--p", type=float, default=None)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--rounds", type=int, default=None, help="default 10*n")
    s.add_argument("--adversary", choices=["random", "greedy"], default="greedy")
    s.set_defaults(func=cmd_evade)

    s = sp.add_parser("extract", help="run the cycle-extraction script on each input graph")
    _add_common(s, stream=True)
    s.add_argument("--robber", choices=["optimal", "random"], default="optimal")
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_extract)

    return ap


def main(argv: Optional[list[str]] = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    t0 = time.time()
    try:
        report, code = args.func(args)
    except (CapacityError, ParameterError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CopLabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    report["elapsed_sec"] = round(time.time() - t0, 3)
    for v in report["verdicts"]:
        status = "PASS" if v["ok"] else "FAIL"
        extra = f" [{v['graph6']}]" if "graph6" in v else ""
        print(f"{status}: {v['claim']}{extra}")
    if args.json_out:
        with open(args.json_out, "w") as fh:
            json.dump(report, fh, indent=2)
        print(f"report written to {args.json_out}")
    if args.csv_out and "csv" in report:
        with open(args.csv_out, "w") as fh:
            fh.write("\n".join(report["csv"]) + "\n")
        print(f"csv written to {args.csv_out}")
    return code


if __name__ == "__main__":
    raise SystemExit(main())
