"""Command line front end: ``pcanon <command> [options]``.

Defaults may come from a JSON file named by ``--config`` or by the
``PCANON_CONFIG`` environment variable; keys are option names with
dashes replaced by underscores.  Explicit flags win.
"""
from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import os
import sys
import tempfile
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

from .coxeter import AFFINE, FINITE, system
from .hecke import kl_basis

CONFIG_ENV = "PCANON_CONFIG"

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_CACHE = 3
EXIT_CONSISTENCY = 4


class ConfigError(ValueError):
    pass


class CacheCorruption(RuntimeError):
    pass


# --------------------------------------------------------------------------
# cache


class RecordCache:
    """One JSON file per record, named by the SHA-256 of the key."""

    def __init__(self, root: Optional[str]):
        self.root = root
        if root:
            os.makedirs(root, exist_ok=True)

    @staticmethod
    def _canon(obj) -> str:
        return json.dumps(obj, sort_keys=True, separators=(",", ":"))

    def path(self, key) -> str:
        return os.path.join(self.root, hashlib.sha256(self._canon(key).encode()).hexdigest() + ".json")

    def get(self, key):
        if not self.root:
            return None
        path = self.path(key)
        if not os.path.exists(path):
            return None
        try:
            with open(path, "r", encoding="utf-8") as fh:
                rec = json.load(fh)
            value = rec["value"]
            ok = rec["key"] == key and rec["checksum"] == hashlib.sha256(self._canon(value).encode()).hexdigest()
        except (OSError, ValueError, KeyError, TypeError) as exc:
            raise CacheCorruption(f"unreadable cache record {path}: {exc}") from exc
        if not ok:
            raise CacheCorruption(f"checksum or key mismatch in {path}")
        return value

    def put(self, key, value) -> None:
        if not self.root:
            return
        rec = {"key": key, "value": value,
               "checksum": hashlib.sha256(self._canon(value).encode()).hexdigest()}
        fd, tmp = tempfile.mkstemp(dir=self.root, suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                fh.write(self._canon(rec))
            os.replace(tmp, self.path(key))
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise


# --------------------------------------------------------------------------
# tables


@dataclass
class Table:
    records: List[dict]
    columns: List[str]
    rows: List[list] = field(default_factory=list)


def _word_str(word) -> str:
    return " ".join(map(str, word)) if word else "-"


def _laurent_tex(pairs) -> str:
    if not pairs:
        return "0"
    terms = []
    for c, k in pairs:
        mon = "" if k == 0 else ("v" if k == 1 else f"v^{{{k}}}")
        coef = str(c) if (mon == "" or abs(c) != 1) else ("-" if c == -1 else "")
        terms.append(coef + mon)
    return " + ".join(terms).replace("+ -", "- ")


def emit(table: Table, fmt: str, out) -> None:
    if fmt == "json":
        for rec in table.records:
            out.write(json.dumps(rec, sort_keys=True) + "\n")
    elif fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(table.columns)
        w.writerows(table.rows)
    elif fmt == "latex":
        out.write("\\begin{tabular}{" + "l" * len(table.columns) + "}\n")
        out.write(" & ".join(table.columns) + " \\\\\n\\hline\n")
        for row in table.rows:
            out.write(" & ".join(f"${c}$" if isinstance(c, str) and "^" in c else str(c) for c in row) + " \\\\\n")
        out.write("\\end{tabular}\n")
    else:
        raise ConfigError(f"unknown format {fmt!r}")


# --------------------------------------------------------------------------
# parsing helpers


def parse_prime(text: str) -> Optional[int]:
    if str(text).lower() in ("rational", "0", "none"):
        return None
    p = int(text)
    if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
        raise ConfigError(f"{p} is not prime")
    return p


def parse_ints(text) -> tuple:
    if isinstance(text, (list, tuple)):
        return tuple(int(a) for a in text)
    return tuple(int(a) for a in str(text).replace(" ", "").split(",") if a != "")


def _p_label(p) -> str:
    return "rational" if p is None else str(p)


# --------------------------------------------------------------------------
# commands


def _elements(W, args) -> list:
    if args.element:
        return [W.element(parse_ints(w)) for w in args.element]
    if args.max_length is None:
        raise ConfigError("need --max-length or --element")
    if args.max_length < 0:
        raise ConfigError("--max-length must be nonnegative")
    return sorted(W.enumerate_up_to_length(args.max_length), key=lambda x: (x.length, W.canonical_word(x)))


def _system(args):
    if args.kind not in (FINITE, AFFINE):
        raise ConfigError(f"unknown kind {args.kind!r}")
    if args.rank is None or args.rank < 2:
        raise ConfigError("need --rank >= 2")
    return system(args.kind, args.rank)


def _expansion_record(W, w, p, expansion: Dict) -> dict:
    items = sorted(expansion.items(), key=lambda kv: (kv[0].length, W.canonical_word(kv[0])))
    return {"word": list(W.canonical_word(w)), "p": _p_label(p),
            "expansion": [[list(W.canonical_word(x)), c.pairs()] for x, c in items]}


def _expansion_table(records: List[dict]) -> Table:
    rows = []
    for r in records:
        body = " + ".join(f"({_laurent_tex(c)}) T_{{{_word_str(x)}}}" for x, c in r["expansion"])
        rows.append([_word_str(r["word"]), r["p"], body])
    return Table(records, ["word", "p", "expansion"], rows)


def cmd_pcan(args) -> Table:
    from .soergel import p_canonical
    W = _system(args)
    primes = [parse_prime(p) for p in (args.p or ["rational"])]
    cache = RecordCache(args.cache_dir)
    records = []
    for p in primes:
        for w in _elements(W, args):
            key = ["pcan", W.kind, W.n, _p_label(p), list(W.canonical_word(w))]
            rec = cache.get(key)
            if rec is None:
                entry = p_canonical(W.kind, W.n, w, p)
                rec = _expansion_record(W, w, p, entry.expansion)
                cache.put(key, rec)
            records.append(rec)
    return _expansion_table(records)


def cmd_klpoly(args) -> Table:
    W = _system(args)
    cache = RecordCache(args.cache_dir)
    records = []
    for w in _elements(W, args):
        key = ["kl", W.kind, W.n, list(W.canonical_word(w))]
        rec = cache.get(key)
        if rec is None:
            rec = _expansion_record(W, w, None, kl_basis(W, w).terms)
            cache.put(key, rec)
        records.append(rec)
    return _expansion_table(records)


def _mult(args, kind: str) -> Table:
    from .fock import format_multipartition, multipartitions_of, parse_multipartition
    from .mult import MultiplicityQuery, hecke_decomposition_number, schur_decomposition_number
    if args.e is None or args.m_vector is None or args.charges is None:
        raise ConfigError("need --e, --charges and --m-vector")
    m, charges = parse_ints(args.m_vector), parse_ints(args.charges)
    p = parse_prime((args.p or ["rational"])[0])
    if args.lam is not None:
        lams = [parse_multipartition(args.lam)]
    elif args.n is not None:
        lams = list(multipartitions_of(args.n, len(m)))
    else:
        raise ConfigError("need --lambda or --n")
    mus = [parse_multipartition(args.mu)] if args.mu is not None else None
    records, rows = [], []
    for lam in lams:
        for mu in (mus or list(multipartitions_of(sum(map(sum, lam)), len(m)))):
            q = MultiplicityQuery(args.e, lam, mu, m, charges, p, args.order_regime_confirmed)
            try:
                r = schur_decomposition_number(q) if kind == "schur" else hecke_decomposition_number(q)
            except ValueError as exc:
                raise ConfigError(str(exc)) from exc
            note = "pi L(mu) = 0" if r.value is None else ("" if r.orbit_match else "orbit gate")
            rec = {"lambda": format_multipartition(lam), "mu": format_multipartition(mu), "p": _p_label(p),
                   "value": r.value, "orbit_match": r.orbit_match, "conditional": r.conditional, "note": note}
            records.append(rec)
            rows.append([rec["lambda"], rec["mu"], rec["p"], "undefined" if r.value is None else r.value,
                         note, "conditional" if r.conditional else ""])
    return Table(records, ["lambda", "mu", "p", "value", "note", "regime"], rows)


def cmd_mult_schur(args) -> Table:
    return _mult(args, "schur")


def cmd_mult_hecke(args) -> Table:
    return _mult(args, "hecke")


def cmd_crystal(args) -> Table:
    from .fock import (SCHUR, crystal, format_multipartition, is_cosingular, is_singular,
                       parse_multipartition, signature)
    if args.e is None or args.charges is None or args.lam is None:
        raise ConfigError("need --e, --charges and --lambda")
    e, s = args.e, parse_ints(args.charges)
    lam = parse_multipartition(args.lam)
    if len(s) != len(lam):
        raise ConfigError("one charge per component")
    records, rows = [], []
    for i in range(e):
        sig = signature(lam, i, s, e, SCHUR)
        rec = {"lambda": format_multipartition(lam), "residue": i, "signature": sig.raw,
               "reduced": sig.reduced}
        for op in ("f", "e", "f*", "e*"):
            r = crystal(op, i, lam, s, e, SCHUR)
            rec[op] = None if r is None else format_multipartition(r)
        records.append(rec)
        rows.append([rec["lambda"], i, sig.raw or "-", sig.reduced or "-"] +
                    [rec[op] or "0" for op in ("f", "e", "f*", "e*")])
    records.append({"lambda": format_multipartition(lam), "singular": is_singular(lam, s, e),
                    "cosingular": is_cosingular(lam, s, e)})
    return Table(records, ["lambda", "i", "signature", "reduced", "f", "e", "f*", "e*"], rows)


def cmd_weights(args) -> Table:
    from .weights import is_weight, littelmann_F, stabilizer
    if args.e is None or args.weight is None or args.j is None:
        raise ConfigError("need --e, --weight and --j")
    lam = parse_ints(args.weight)
    if not is_weight(lam, args.e, args.kind):
        raise ConfigError(f"{lam} is not a weight for e={args.e}")
    records, rows = [], []
    cur, k = lam, 0
    while cur is not None:
        st = sorted(stabilizer(cur, args.e, args.kind))
        records.append({"k": k, "weight": list(cur), "stabilizer": st})
        rows.append([k, "".join(map(str, cur)) if all(0 <= a < 10 for a in cur) else ",".join(map(str, cur)),
                     " ".join(map(str, st)) or "-"])
        k += 1
        cur = littelmann_F(lam, args.j, k, args.e, args.kind)
    return Table(records, ["k", "weight", "stabilizer"], rows)


def cmd_verify(args) -> Table:
    from .weights import DotFamily, bubble, bubble_oracle, failure_example, verify_dot_properties
    if args.e is None or args.rank is None:
        raise ConfigError("need --e and --rank")
    records, rows = [], []
    rep = verify_dot_properties(DotFamily.standard(args.kind, args.rank, args.e))
    for prop in sorted(rep.checked):
        bad = len(rep.failed(prop))
        records.append({"check": prop, "checked": rep.checked[prop], "failures": bad})
        rows.append([prop, rep.checked[prop], bad])
    if args.kind == AFFINE:
        fx = failure_example(args.rank, args.e)
        records.append({"check": "corrupted_family_contradiction", "checked": 1,
                        "failures": 0 if fx["contradiction"] else 1})
        rows.append(["corrupted_family_contradiction", 1, 0 if fx["contradiction"] else 1])
    nb, bad = 0, 0
    for mode in ("pi", "xi"):
        for a in range(3):
            for b in range(3):
                for m in range(-2, 4):
                    nb += 1
                    bad += bubble(m, a, b, mode) != bubble_oracle(m, a, b, mode)
    records.append({"check": "bubbles", "checked": nb, "failures": bad})
    rows.append(["bubbles", nb, bad])
    return Table(records, ["check", "checked", "failures"], rows)


COMMANDS = {
    "pcan": cmd_pcan,
    "klpoly": cmd_klpoly,
    "mult-schur": cmd_mult_schur,
    "mult-hecke": cmd_mult_hecke,
    "crystal": cmd_crystal,
    "weights": cmd_weights,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="pcanon", description="p-canonical bases and decomposition numbers")
    ap.add_argument("--config", help=f"JSON defaults (also ${CONFIG_ENV})")
    sub = ap.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("--kind", choices=[FINITE, AFFINE], default=FINITE)
        sp.add_argument("--rank", type=int)
        sp.add_argument("--e", type=int)
        sp.add_argument("--p", action="append", help="prime or 'rational'; repeatable")
        sp.add_argument("--charges")
        sp.add_argument("--m-vector")
        sp.add_argument("--max-length", type=int)
        sp.add_argument("--element", action="append", help="comma separated word; repeatable")
        sp.add_argument("--lambda", dest="lam")
        sp.add_argument("--mu")
        sp.add_argument("--n", type=int)
        sp.add_argument("--weight")
        sp.add_argument("--j", type=int)
        sp.add_argument("--order-regime-confirmed", action="store_true")
        sp.add_argument("--format", choices=["json", "csv", "latex"], default="json")
        sp.add_argument("--cache-dir")
        sp.add_argument("--output", "-o")
    return ap


def load_config(path: Optional[str]) -> dict:
    if not path:
        return {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            cfg = json.load(fh)
    except (OSError, ValueError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(cfg, dict):
        raise ConfigError("config must be a JSON object")
    return {k.replace("-", "_"): v for k, v in cfg.items()}


def parse_args(argv: Optional[Sequence[str]] = None) -> argparse.Namespace:
    ap = build_parser()
    args = ap.parse_args(argv)
    cfg = load_config(args.config or os.environ.get(CONFIG_ENV))
    if "lambda" in cfg:
        cfg["lam"] = cfg.pop("lambda")
    defaults = vars(ap.parse_args([args.command]))
    unknown = set(cfg) - set(defaults)
    if unknown:
        raise ConfigError(f"unknown config keys {sorted(unknown)}")
    # config fills only what the command line left at its default
    for k, v in cfg.items():
        if getattr(args, k) == defaults[k]:
            setattr(args, k, v)
    return args


def main(argv: Optional[Sequence[str]] = None) -> int:
    from .soergel import ConsistencyError
    try:
        args = parse_args(argv)
        table = COMMANDS[args.command](args)
        buf = io.StringIO()
        emit(table, args.format, buf)
        if args.output:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(buf.getvalue())
        else:
            sys.stdout.write(buf.getvalue())
        return EXIT_OK
    except ConfigError as exc:
        print(f"pcanon: invalid configuration: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except CacheCorruption as exc:
        print(f"pcanon: cache corruption: {exc}", file=sys.stderr)
        return EXIT_CACHE
    except ConsistencyError as exc:
        print(f"pcanon: consistency failure: {exc}", file=sys.stderr)
        return EXIT_CONSISTENCY


if __name__ == "__main__":
    sys.exit(main())
