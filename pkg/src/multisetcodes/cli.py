"""Command-line interface.

Exit status: 0 success, 2 negative verdict, 3 budget exhausted, 1 error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from typing import Sequence

from . import __version__
from .altconstr import (
    IndexedCodeParams,
    PolyCodeParams,
    VietaCodeword,
    seq_decode,
    seq_encode,
    vieta_decode,
    vieta_encode,
)
from .bounds import fixed_alphabet_bounds, growing_alphabet_upper_best, growing_alphabet_upper_simple
from .channel import ErrorPattern, apply_pattern, make_rng
from .codes import (
    ExplicitCode,
    SidonCodeParams,
    build_sidon_code,
    exact_optimal_size,
    nearest_decode,
    syndrome_decode,
)
from .core import AnticodeSpec
from .errors import Budget, BudgetExhausted, MultisetCodesError
from .groups import AbelianGroup
from .lattices import IntegerLattice, tiling_check
from .sidon import SidonSet, bh_collision, bose_chowla, phi_bounds, search_bh, singer

SCHEMA_VERSION = 1

EXIT_OK, EXIT_ERROR, EXIT_NEGATIVE, EXIT_BUDGET = 0, 1, 2, 3


class Negative(Exception):
    """Carries a result whose verdict is negative (exit status 2)."""

    def __init__(self, result: dict):
        super().__init__("negative verdict")
        self.result = result


def _ints(text: str) -> list[int]:
    return [int(v) for v in text.replace(" ", "").split(",") if v]


def _range(text: str) -> range:
    lo, _, hi = text.partition(":")
    return range(int(lo), int(hi or lo) + 1)


def _elements(group: AbelianGroup, text: str) -> list[tuple[int, ...]]:
    """``0,1,3,9`` for cyclic groups; ``0:0,1:1,0:5`` for products."""
    out = []
    for token in text.replace(" ", "").split(","):
        if token:
            out.append(group.element([int(c) for c in token.split(":")]))
    return out


def _load_json(path: str) -> dict:
    with open(path) as fh:
        return json.load(fh)


def _budget(args) -> Budget:
    b = Budget.from_env(args.budget_nodes)
    if args.budget_ms is not None:
        b = Budget(args.budget_nodes, args.budget_ms)
    return b


def _sidon_set(args) -> SidonSet:
    G = AbelianGroup.parse(args.group)
    return SidonSet.normalized(G, _elements(G, args.set), args.h)


def _load_code(path: str):
    """An explicit code plus its construction parameters when available."""
    obj = _load_json(path)
    if "sidon_params" in obj:
        params = SidonCodeParams.from_json(obj["sidon_params"])
        return build_sidon_code(params), params
    return ExplicitCode.from_json(obj), None


# ----------------------------------------------------------------------------
# handlers return a JSON-serialisable dict, or raise Negative


def cmd_sidon(args) -> dict:
    if args.action == "verify":
        G = AbelianGroup.parse(args.group)
        elems = _elements(G, args.set)
        hit = bh_collision(G, elems, args.h)
        result = {"group": str(G), "h": args.h, "valid": hit is None}
        if hit is not None:
            result["collision"] = [list(hit[0]), list(hit[1])]
            raise Negative(result)
        return result
    if args.action == "singer":
        return {"sidon_set": singer(args.m).to_json()}
    if args.action == "bose-chowla":
        return {"sidon_set": bose_chowla(args.q, args.h).to_json()}
    if args.action == "search":
        G = AbelianGroup.parse(args.group)
        found = search_bh(G, args.size, args.h, _budget(args))
        if found is None:
            raise Negative({"group": str(G), "size": args.size, "h": args.h, "found": False})
        return {"found": True, "sidon_set": found.to_json()}
    if args.action == "phi":
        pb = phi_bounds(args.h, args.q, _budget(args))
        result = pb.to_json()
        if pb.budget_exhausted:
            raise BudgetExhausted(json.dumps(result))
        return result
    raise ValueError(args.action)


def cmd_code(args) -> dict:
    if args.action == "build":
        B = _sidon_set(args)
        params = SidonCodeParams(B, B.group.element(_elements(B.group, args.target)[0]), args.n)
        code = build_sidon_code(params)
        return {
            "sidon_params": params.to_json(),
            "size": len(code),
            "min_distance": code.min_distance,
            **code.to_json(),
        }
    if args.action == "distance":
        code, _ = _load_code(args.code)
        return {"size": len(code), "min_distance": code.min_distance}
    if args.action == "decode":
        code, params = _load_code(args.code)
        received = tuple(_ints(args.received))
        if params is not None and args.method != "nearest":
            res = syndrome_decode(params, received)
        else:
            res = nearest_decode(code, received)
        if not res.unique:
            raise Negative({"method": args.method, **res.to_json()})
        return res.to_json()
    if args.action == "optimal":
        res = exact_optimal_size(args.q, args.n, args.h, _budget(args))
        if not res.exact:
            raise BudgetExhausted(json.dumps(res.to_json()))
        return res.to_json()
    raise ValueError(args.action)


BOUND_COLUMNS = ["q", "n", "h", "lower", "upper_fixed", "upper_r0l1", "upper_best", "lower_method", "upper_method", "best_r", "best_l"]


def bounds_rows(qs, ns, hs, budget: Budget) -> list[dict]:
    rows = []
    phis = {}
    for q in qs:
        for h in hs:
            phis[(h, q)] = phi_bounds(h, q, budget)
            for n in ns:
                if n <= h:
                    continue
                rep = fixed_alphabet_bounds(q, n, h, phis[(h, q)])
                best, r, l = growing_alphabet_upper_best(q, n, h)
                rows.append(
                    {
                        "q": q,
                        "n": n,
                        "h": h,
                        "lower": rep.lower,
                        "upper_fixed": rep.upper,
                        "upper_r0l1": int(growing_alphabet_upper_simple(q, n, h) // 1),
                        "upper_best": int(best // 1),
                        "lower_method": rep.lower_method,
                        "upper_method": rep.upper_method,
                        "best_r": r,
                        "best_l": l,
                    }
                )
    return rows


def rows_to_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=BOUND_COLUMNS, lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()


def csv_to_rows(text: str) -> list[dict]:
    out = []
    for row in csv.DictReader(io.StringIO(text)):
        out.append({k: (v if k.endswith("_method") else int(v)) for k, v in row.items()})
    return out


def cmd_bounds(args) -> dict:
    rows = bounds_rows(_range(args.q_range), _range(args.n_range), _range(args.h_range), _budget(args))
    return {"rows": rows, "_csv": rows_to_csv(rows)}


def cmd_tiling(args) -> dict:
    m, rp, rm = _ints(args.anticode)
    spec = AnticodeSpec(m, rp, rm)
    if args.lattice:
        lat = IntegerLattice.from_json(_load_json(args.lattice))
    elif args.generators:
        lat = IntegerLattice(tuple(tuple(_ints(r)) for r in args.generators.split(";")))
    else:
        raise ValueError("give --lattice FILE or --generators 'a,b;c,d'")
    verdict = tiling_check(spec, lat)
    result = {"anticode": spec.to_json(), "lattice": lat.to_json(), **verdict.to_json()}
    if not verdict.is_tiling:
        raise Negative(result)
    return result


def cmd_simulate(args) -> dict:
    code, params = _load_code(args.code)
    pattern = ErrorPattern.parse(args.pattern)
    rng = make_rng(args.seed)
    picks = rng.integers(len(code), size=args.trials)
    trials = []
    ok = 0
    for t, idx in enumerate(picks):
        sent = code.codewords[int(idx)]
        out = apply_pattern(sent, pattern, seed=args.seed * 1_000_003 + t)
        try:
            if params is not None and pattern.h_ins == 0 and pattern.h_sub == 0:
                res = syndrome_decode(params, out)
            else:
                res = nearest_decode(code, out)
            decoded, unique = res.codeword, res.unique
        except MultisetCodesError:
            decoded, unique = None, False
        success = unique and decoded == sent
        ok += success
        trials.append(
            {
                "trial": t,
                "sent": list(sent),
                "received": out.to_json(),
                "decoded": None if decoded is None else list(decoded),
                "success": success,
            }
        )
    return {"pattern": pattern.to_json(), "trials": trials, "successes": ok, "total": args.trials}


def cmd_altconstr(args) -> dict:
    if args.family == "vieta":
        params = PolyCodeParams(args.p, args.m, args.n, args.h)
        if args.action == "encode":
            cw = vieta_encode(params, _ints(args.message))
            return {"params": params.to_json(), "codeword": cw.to_json()}
        cw = VietaCodeword.from_json(_load_json(args.codeword)["codeword"])
        if args.roots is not None:
            cw = VietaCodeword(cw.field, tuple(_ints(args.roots)))
        return {"params": params.to_json(), "message": list(vieta_decode(params, cw))}
    params = IndexedCodeParams(args.q_tilde, args.n, args.h)
    if args.action == "encode":
        word = seq_encode(params, _ints(args.message))
        return {"inner": repr(params.inner), "codeword": [list(u) for u in word]}
    received = [tuple(int(c) for c in tok.split(":")) for tok in args.received.split(",") if tok]
    return {"message": list(seq_decode(params, received))}


# ----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the JSON (or CSV) result here instead of stdout")
    common.add_argument("--manifest", help="write a reproducibility manifest here")
    common.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    common.add_argument("--budget-nodes", type=int, default=None, help="search node limit")
    common.add_argument("--budget-ms", type=float, default=None, help="search time limit (overrides MULTISET_BUDGET_MS)")

    parser = argparse.ArgumentParser(prog="multiset-codes", description="Multiset code toolkit")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sidon", help="B_h sets")
    ps = p.add_subparsers(dest="action", required=True)
    q = ps.add_parser("verify", parents=[common])
    q.add_argument("--group", required=True)
    q.add_argument("--set", required=True)
    q.add_argument("--h", type=int, required=True)
    q = ps.add_parser("singer", parents=[common])
    q.add_argument("--m", type=int, required=True)
    q = ps.add_parser("bose-chowla", parents=[common])
    q.add_argument("--q", type=int, required=True)
    q.add_argument("--h", type=int, required=True)
    q = ps.add_parser("search", parents=[common])
    q.add_argument("--group", required=True)
    q.add_argument("--size", type=int, required=True)
    q.add_argument("--h", type=int, required=True)
    q = ps.add_parser("phi", parents=[common])
    q.add_argument("--h", type=int, required=True)
    q.add_argument("--q", type=int, required=True)
    p.set_defaults(func=cmd_sidon)

    p = sub.add_parser("code", help="multiset codes")
    ps = p.add_subparsers(dest="action", required=True)
    q = ps.add_parser("build", parents=[common])
    q.add_argument("--group", required=True)
    q.add_argument("--set", required=True)
    q.add_argument("--h", type=int, required=True)
    q.add_argument("--target", default="0")
    q.add_argument("--n", type=int, required=True)
    q = ps.add_parser("distance", parents=[common])
    q.add_argument("--code", required=True)
    q = ps.add_parser("decode", parents=[common])
    q.add_argument("--code", required=True)
    q.add_argument("--received", required=True)
    q.add_argument("--method", choices=["auto", "syndrome", "nearest"], default="auto")
    q = ps.add_parser("optimal", parents=[common])
    q.add_argument("--q", type=int, required=True)
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--h", type=int, required=True)
    p.set_defaults(func=cmd_code)

    p = sub.add_parser("bounds", help="bound tables")
    ps = p.add_subparsers(dest="action", required=True)
    q = ps.add_parser("table", parents=[common])
    q.add_argument("--q-range", required=True, help="lo:hi inclusive")
    q.add_argument("--n-range", required=True)
    q.add_argument("--h-range", required=True)
    q.add_argument("--format", choices=["csv", "json"], default=None, help="default: json if --out ends in .json, else csv")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("tiling", help="anticode tilings")
    ps = p.add_subparsers(dest="action", required=True)
    q = ps.add_parser("check", parents=[common])
    q.add_argument("--anticode", required=True, help="m,r_plus,r_minus")
    q.add_argument("--lattice", help="lattice JSON file")
    q.add_argument("--generators", help="rows as 'a,b;c,d'")
    p.set_defaults(func=cmd_tiling)

    p = sub.add_parser("simulate", parents=[common], help="random channel trials")
    p.add_argument("--code", required=True)
    p.add_argument("--pattern", required=True, help="ins,del,sub,ers")
    p.add_argument("--trials", type=int, default=10)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("altconstr", help="prefix and polynomial-root codes")
    fam = p.add_subparsers(dest="family", required=True)
    v = fam.add_parser("vieta")
    va = v.add_subparsers(dest="action", required=True)
    for action in ("encode", "decode"):
        q = va.add_parser(action, parents=[common])
        for flag in ("--p", "--m", "--n", "--h"):
            q.add_argument(flag, type=int, required=True)
        if action == "encode":
            q.add_argument("--message", required=True)
        else:
            q.add_argument("--codeword", required=True, help="output file of 'vieta encode'")
            q.add_argument("--roots", help="surviving roots (default: all in the file)")
    s = fam.add_parser("seq")
    sa = s.add_subparsers(dest="action", required=True)
    for action in ("encode", "decode"):
        q = sa.add_parser(action, parents=[common])
        q.add_argument("--q-tilde", type=int, required=True)
        q.add_argument("--n", type=int, required=True)
        q.add_argument("--h", type=int, required=True)
        if action == "encode":
            q.add_argument("--message", required=True)
        else:
            q.add_argument("--received", required=True, help="index:symbol pairs, comma separated")
    p.set_defaults(func=cmd_altconstr)
    return parser


def _config(args) -> dict:
    return {k: v for k, v in vars(args).items() if k != "func"}


def _table_format(args) -> str:
    if args.format:
        return args.format
    return "json" if (args.out or "").endswith(".json") else "csv"


def _emit(text: str, path: str | None):
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.perf_counter()
    status = EXIT_OK
    exhausted = False
    try:
        result = args.func(args)
    except Negative as neg:
        result, status = neg.result, EXIT_NEGATIVE
    except BudgetExhausted as exc:
        result, status, exhausted = {"error": "budget exhausted", "detail": str(exc)}, EXIT_BUDGET, True
    except (MultisetCodesError, ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        result, status = {"error": type(exc).__name__, "detail": str(exc)}, EXIT_ERROR
    wall = time.perf_counter() - start

    csv_text = result.pop("_csv", None) if isinstance(result, dict) else None
    if csv_text is not None and _table_format(args) == "csv":
        _emit(csv_text, args.out)
    else:
        payload = {"schema_version": SCHEMA_VERSION, **result}
        _emit(json.dumps(payload, indent=2, sort_keys=True) + "\n", args.out)

    if getattr(args, "manifest", None):
        manifest = {
            "schema_version": SCHEMA_VERSION,
            "tool_version": __version__,
            "argv": list(argv) if argv is not None else sys.argv[1:],
            "config": _config(args),
            "seed": getattr(args, "seed", 0),
            "wall_time_s": wall,
            "budget": {
                "nodes": getattr(args, "budget_nodes", None),
                "ms": getattr(args, "budget_ms", None),
                "env_ms": _env_ms(),
            },
            "budget_exhausted": exhausted,
            "exit_status": status,
        }
        with open(args.manifest, "w") as fh:
            json.dump(manifest, fh, indent=2, sort_keys=True)
            fh.write("\n")
    return status


def _env_ms():
    raw = os.environ.get("MULTISET_BUDGET_MS")
    return float(raw) if raw else None


if __name__ == "__main__":
    sys.exit(main())
