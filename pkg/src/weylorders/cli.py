"""Command-line front end: JSON emission and persistent table caching.

Results go to standard output as JSON with stable ordering; a short human
summary goes to standard error.  Exit codes: 0 success, 1 verification or
computation failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from pathlib import Path
from random import Random
from typing import Dict, List, Optional

from . import coincidence, compalg, orders, reconstruct, weylchar
from .cyclotomic import CycloProduct
from .errors import (
    CacheInvalid,
    E8WithoutTable,
    TypeParseError,
    WeylOrdersError,
)
from .rootsystem import (
    SemisimpleType,
    SimpleType,
    parse_type,
    render,
    weyl_order,
)
from .weylchar import CharPolyTable

CACHE_VERSION = 1

_EXCEPTIONAL_LABELS = ("G2", "F4", "E6", "E7", "E8")


# --- cache files ---------------------------------------------------------------


def _cache_path(dir_: Path, type_label: str) -> Path:
    return Path(dir_) / f"charpolys_v{CACHE_VERSION}_{type_label}.json"


def cache_store(table: CharPolyTable, dir_: os.PathLike) -> Path:
    """Atomically write a single-factor table as JSON."""
    table.validate()
    label = render(table.type_label)
    payload = {
        "version": CACHE_VERSION,
        "type_label": label,
        "group_order": str(table.group_order),
        "entries": [
            {
                "exps": {str(d): t for d, t in poly.exps},
                "count": str(count),
            }
            for poly, count in sorted(
                table.entries.items(), key=lambda kv: kv[0].exps
            )
        ],
    }
    dir_ = Path(dir_)
    dir_.mkdir(parents=True, exist_ok=True)
    target = _cache_path(dir_, label)
    fd, tmp = tempfile.mkstemp(dir=dir_, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, sort_keys=True, indent=1)
        os.replace(tmp, target)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return target


def cache_load(type_label: str, dir_: os.PathLike) -> Optional[CharPolyTable]:
    """Load and re-validate a cached table; None when the file is absent."""
    path = _cache_path(Path(dir_), type_label)
    if not path.exists():
        return None
    try:
        payload = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise CacheInvalid(f"{path}: unreadable cache file ({exc})")
    if payload.get("version") != CACHE_VERSION:
        raise CacheInvalid(f"{path}: cache format version mismatch")
    if payload.get("type_label") != type_label:
        raise CacheInvalid(f"{path}: type label mismatch")
    try:
        t = parse_type(type_label)
        order = int(payload["group_order"])
        entries: Dict[CycloProduct, int] = {}
        for item in payload["entries"]:
            poly = CycloProduct.from_mapping(
                {int(d): int(v) for d, v in item["exps"].items()}
            )
            entries[poly] = entries.get(poly, 0) + int(item["count"])
    except (KeyError, ValueError, TypeError, TypeParseError) as exc:
        raise CacheInvalid(f"{path}: malformed cache payload ({exc})")
    table = CharPolyTable(t, order, entries)
    try:
        table.validate()
    except ValueError as exc:
        raise CacheInvalid(f"{path}: certificate failed: {exc}")
    if order != weyl_order(t):
        raise CacheInvalid(
            f"{path}: certificate failed: group order {order} is not the "
            f"reflection-group order {weyl_order(t)}"
        )
    return table


def _load_exceptional_tables(t: SemisimpleType, cache_dir: Optional[str]) -> None:
    """Seed the in-process table registry from the cache, computing and
    persisting missing enumerable tables."""
    needed = {f for f in t.factors if (f.letter, f.rank) in
              {("G", 2), ("F", 4), ("E", 6), ("E", 7), ("E", 8)}}
    for f in sorted(needed):
        label = str(f)
        if cache_dir is not None:
            cached = cache_load(label, cache_dir)
            if cached is not None:
                weylchar.seed_table(cached)
                continue
        if (f.letter, f.rank) == ("E", 8):
            continue  # never computed here; charpolys will raise E8WithoutTable
        table = weylchar.simple_table(f)
        if cache_dir is not None:
            cache_store(table, cache_dir)


# --- JSON helpers ----------------------------------------------------------------


def _emit(doc, summary: str) -> None:
    json.dump(doc, sys.stdout, sort_keys=True, indent=1)
    sys.stdout.write("\n")
    print(summary, file=sys.stderr)


def _poly_json(poly: CycloProduct) -> Dict[str, int]:
    return {str(d): t for d, t in poly.exps}


def _table_json(table: CharPolyTable) -> Dict:
    return {
        "type": render(table.type_label),
        "group_order": str(table.group_order),
        "entries": [
            {"exps": _poly_json(p), "count": str(c)}
            for p, c in sorted(table.entries.items(), key=lambda kv: kv[0].exps)
        ],
    }


def _pair_json(p: coincidence.CoincidencePair) -> Dict[str, str]:
    return {"left": render(p.left), "right": render(p.right)}


# --- subcommands -----------------------------------------------------------------


def _cmd_order(args) -> int:
    t = parse_type(args.type)
    fo = orders.order_factored(t, args.q)
    doc = {
        "type": render(t),
        "q": args.q,
        "order": str(fo.value()),
    }
    if args.factored:
        doc["factored"] = {
            "p": fo.p,
            "t": fo.t,
            "N": fo.n_exp,
            "degrees": list(fo.degrees),
        }
    _emit(doc, f"|{render(t)}(F_{args.q})| = {fo.value()}")
    return 0


def _cmd_charpolys(args) -> int:
    t = parse_type(args.type)
    _load_exceptional_tables(t, args.cache)
    table = weylchar.charpolys(t)
    _emit(
        _table_json(table),
        f"{render(t)}: {len(table.entries)} distinct polynomials, "
        f"group order {table.group_order}",
    )
    return 0


def _cmd_invariants(args) -> int:
    t = parse_type(args.type)
    _load_exceptional_tables(t, args.cache)
    if args.mu is not None:
        doc = {"type": render(t), "i": args.mu, "mu": weylchar.mu(t, args.mu)}
        _emit(doc, f"mu_{args.mu}({render(t)}) = {doc['mu']}")
        return 0
    if args.joint is not None:
        i, j = args.joint
        value = weylchar.mu_joint(t, i, j)
        doc = {"type": render(t), "i": i, "j": j, "mu_joint": value}
        _emit(doc, f"mu_{{{i},{j}}}({render(t)}) = {value}")
        return 0
    profile = weylchar.invariant_profile(t)
    doc = {
        "type": render(t),
        "index_bound": profile.index_bound,
        "mu": {str(i): v for i, v in sorted(profile.mu.items()) if v},
        "mu_prime": {str(i): v for i, v in sorted(profile.mu_prime.items()) if v},
        "mu_joint": {
            f"{i},{j}": v for (i, j), v in sorted(profile.mu_joint.items())
        },
        "absent_mu_prime": sorted(profile.absent_mu_prime),
        "absent_joint": sorted(map(list, profile.absent_joint)),
    }
    _emit(doc, f"invariant profile of {render(t)}")
    return 0


def _cmd_reconstruct(args) -> int:
    raw = json.loads(Path(args.input).read_text(encoding="utf-8"))
    polys = frozenset(
        CycloProduct.from_mapping({int(d): int(t) for d, t in entry.items()})
        for entry in raw["polys"]
    )
    fam = reconstruct.CharPolyFamily(polys, int(raw["rank"]))
    t = reconstruct.reconstruct(fam)
    _emit({"type": render(t), "rank": t.rank}, f"reconstructed {render(t)}")
    return 0


def _cmd_coincide(args) -> int:
    if args.factors != 2:
        raise TypeParseError("only --factors 2 is implemented (the exhaustive case)")
    pairs = coincidence.enumerate_two_factor_pairs(args.max_rank)
    doc = {"max_rank": args.max_rank, "pairs": [_pair_json(p) for p in pairs]}
    _emit(doc, f"{len(pairs)} two-factor pairs up to rank {args.max_rank}")
    return 0


def _cmd_decompose(args) -> int:
    try:
        left_s, right_s = args.pair.split(":")
    except ValueError:
        raise TypeParseError(f"--pair wants 'LEFT:RIGHT', got {args.pair!r}")
    pair = coincidence.reduce(parse_type(left_s), parse_type(right_s))
    word = coincidence.decompose(pair)
    doc = {
        "pair": _pair_json(pair),
        "word": [{"generator": gid, "sign": sign} for gid, sign in word],
    }
    _emit(doc, f"{pair} = product of {len(word)} generator letters")
    return 0


def _cmd_recognize(args) -> int:
    hits = orders.recognize_order(args.order, args.max_rank)
    doc = {
        "order": str(args.order),
        "max_rank": args.max_rank,
        "matches": [{"type": render(t), "q": q} for t, q in hits],
    }
    _emit(doc, f"{len(hits)} matches for order {args.order}")
    return 0


# --- verification suites -----------------------------------------------------------


def _suite_determination(args) -> Dict:
    e8 = cache_load("E8", args.cache) if args.cache else None
    for f in (SimpleType("G", 2), SimpleType("F", 4), SimpleType("E", 6),
              SimpleType("E", 7)):
        if f.rank <= (args.max_rank or 8):
            _load_exceptional_tables(SemisimpleType.of(f), args.cache)
    report = reconstruct.verify_determination(args.max_rank or 8, e8_table=e8)
    return report.to_json()


def _suite_prop_counter(args) -> Dict:
    rank_bound = args.max_rank or 6
    mismatches: List[Dict] = []
    checked = 0
    for t in _simple_types(rank_bound):
        for q in (q for q in range(2, 17) if _is_prime_power(q)):
            largest, witness = orders.p_contribution_is_largest(
                SemisimpleType.of(t), q
            )
            expected = orders.in_exception_list(t, q)
            checked += 1
            if largest == expected:
                mismatches.append(
                    {
                        "type": str(t),
                        "q": q,
                        "p_largest": largest,
                        "in_exception_list": expected,
                        "char_power": str(witness.char_power),
                        "rival_power": str(witness.rival_power),
                    }
                )
    return {"checked": checked, "mismatches": mismatches, "ok": not mismatches}


def _simple_types(rank_bound: int) -> List[SimpleType]:
    out = [SimpleType("A", n) for n in range(1, rank_bound + 1)]
    out += [SimpleType("B", n) for n in range(2, rank_bound + 1)]
    out += [SimpleType("D", n) for n in range(4, rank_bound + 1)]
    for f in (SimpleType("G", 2), SimpleType("F", 4), SimpleType("E", 6),
              SimpleType("E", 7), SimpleType("E", 8)):
        if f.rank <= rank_bound:
            out.append(f)
    return out


def _is_prime_power(q: int) -> bool:
    try:
        orders.split_prime_power(q)
        return True
    except WeylOrdersError:
        return False


def _suite_pairs(args) -> Dict:
    bound = args.max_rank or 20
    got = coincidence.enumerate_two_factor_pairs(bound)
    expected = coincidence.expected_two_factor_pairs(bound)
    got_keys = {str(p) for p in got}
    exp_keys = {str(p) for p in expected}
    return {
        "max_rank": bound,
        "found": [_pair_json(p) for p in got],
        "missing": sorted(exp_keys - got_keys),
        "unexpected": sorted(got_keys - exp_keys),
        "ok": got_keys == exp_keys,
    }


def _suite_group_axioms(args) -> Dict:
    report = coincidence.verify_group_axioms(100, args.max_rank or 20)
    return report.to_json()


def _suite_compalg(args) -> Dict:
    rng = Random(20240601)
    failures: List[str] = []
    checks = 0
    fields = (compalg.RationalField(), compalg.PrimeField(7), compalg.PrimeField(11))
    for field in fields:
        unit = compalg.oct_unit(field)
        for _ in range(200):
            a = compalg.random_octonion(field, rng)
            b = compalg.random_octonion(field, rng)
            checks += 3
            if compalg.oct_norm(compalg.oct_mul(a, b)) != compalg.oct_norm(a) * compalg.oct_norm(b):
                failures.append("norm multiplicativity")
            if compalg.oct_mul(a, compalg.oct_conj(a)) != compalg.oct_scale(compalg.oct_norm(a), unit):
                failures.append("x conj(x) = N(x)")
            if compalg.oct_conj(compalg.oct_mul(a, b)) != compalg.oct_mul(
                compalg.oct_conj(b), compalg.oct_conj(a)
            ):
                failures.append("conj anti-automorphism")
    field = compalg.PrimeField(7)
    gamma = (field.one, -field.one, field.one)
    for _ in range(100):
        x = _random_albert(field, gamma, rng)
        y = _random_albert(field, gamma, rng)
        checks += 2
        if compalg.albert_mul(x, y) != compalg.albert_mul(y, x):
            failures.append("Jordan commutativity")
        compalg.albert_q(x)  # internal agreement assertion
    u = compalg.idempotent_u(field, gamma)
    checks += 2
    if compalg.albert_mul(u, u) != u:
        failures.append("u idempotent")
    one = field.one
    if compalg.albert_q(u) != one / (one + one):
        failures.append("Q(u) = 1/2")
    space = compalg.e0_basis(field)
    checks += 1
    if len(space.basis) != 9:
        failures.append("dim E0 = 9")
    return {"checks": checks, "failures": failures, "ok": not failures}


def _random_albert(field, gamma, rng):
    xs = tuple(field.random(rng) for _ in range(3))
    cs = tuple(compalg.random_octonion(field, rng) for _ in range(3))
    return compalg.albert_from_coords(field, gamma, xs, cs)


_SUITES = {
    "determination": _suite_determination,
    "prop-counter": _suite_prop_counter,
    "pairs": _suite_pairs,
    "group-axioms": _suite_group_axioms,
    "compalg": _suite_compalg,
}


def _cmd_verify(args) -> int:
    doc = _SUITES[args.suite](args)
    ok = bool(doc.get("ok"))
    _emit(doc, f"suite {args.suite}: {'pass' if ok else 'FAIL'}")
    return 0 if ok else 1


# --- argument parsing ---------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise TypeParseError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="weylorders", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("order", help="order of a finite semisimple group")
    p.add_argument("--type", required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--factored", action="store_true")
    p.set_defaults(func=_cmd_order)

    p = sub.add_parser("charpolys", help="characteristic polynomial table")
    p.add_argument("--type", required=True)
    p.add_argument("--cache", default=None, help="cache directory for tables")
    p.set_defaults(func=_cmd_charpolys)

    p = sub.add_parser("invariants", help="mu invariants of a type")
    p.add_argument("--type", required=True)
    p.add_argument("--mu", type=int, default=None)
    p.add_argument("--joint", type=int, nargs=2, default=None)
    p.add_argument("--cache", default=None)
    p.set_defaults(func=_cmd_invariants)

    p = sub.add_parser("reconstruct", help="type from a polynomial family")
    p.add_argument("--input", required=True, help="JSON family file")
    p.set_defaults(func=_cmd_reconstruct)

    p = sub.add_parser("coincide", help="enumerate order-coincidence pairs")
    p.add_argument("--factors", type=int, default=2)
    p.add_argument("--max-rank", type=int, required=True)
    p.set_defaults(func=_cmd_coincide)

    p = sub.add_parser("decompose", help="decompose a pair into generators")
    p.add_argument("--pair", required=True, help='syntax "LEFT:RIGHT"')
    p.set_defaults(func=_cmd_decompose)

    p = sub.add_parser("recognize", help="types with a given order")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--max-rank", type=int, required=True)
    p.set_defaults(func=_cmd_recognize)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", required=True, choices=sorted(_SUITES))
    p.add_argument("--max-rank", type=int, default=None)
    p.add_argument("--cache", default=None)
    p.set_defaults(func=_cmd_verify)

    return parser


def run(argv) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except TypeParseError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except E8WithoutTable as exc:
        print(
            f"error: {exc}\n"
            "remediation: place a valid charpolys_v1_E8.json in a cache "
            "directory and pass --cache DIR",
            file=sys.stderr,
        )
        return 1
    except (WeylOrdersError, OSError, json.JSONDecodeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
