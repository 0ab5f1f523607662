"""Command-line driver: group catalog, checks, reports and the table cache."""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import re
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__
from .chartab import (CharacterTable, CtxError, TableError, ctx_parse_all, ctx_write, dixon_schneider,
                      verify_table)
from .cyclotomic import format_cyc
from .finitefield import GF
from .perm import fmt_perm, read_gens
from .permgroup import GroupError, PermGroup, alternating, cyclic, dihedral, from_generators, symmetric
from .report import Check

DATA = Path(__file__).parent / "data"
COMMANDS = ("table", "lambda", "sub", "picky", "check", "family")
CHECKS = ("picky", "subnormalizer", "sections", "irc", "eaton-moreto", "extensions", "family", "all")


class UsageError(Exception):
    """Bad arguments or an infeasible request (exit code 2)."""


# ---- group specifiers ---------------------------------------------------------------

@dataclass
class Resolved:
    spec: str
    canonical: str
    group: PermGroup | None = None
    tables: list[CharacterTable] = field(default_factory=list)
    determinism: dict = field(default_factory=dict)

    @property
    def table_only(self) -> bool:
        return self.group is None

    @property
    def name(self) -> str:
        return self.group.name if self.group is not None else self.tables[0].name


def _find_file(path: str) -> Path:
    p = Path(path)
    if p.is_file():
        return p
    for cand in (DATA / p, DATA / p.name):
        if cand.is_file():
            return cand
    raise UsageError(f"no such file: {path}")


def resolve(spec: str, trust: bool = False) -> Resolved:
    kind, sep, arg = spec.partition(":")
    if not sep or not arg:
        raise UsageError(f"bad group spec {spec!r}; expected kind:arg")
    builders = {"sym": symmetric, "alt": alternating, "cyclic": cyclic, "dihedral": dihedral}
    if kind in builders or kind == "psl2":
        if not arg.isdigit() or int(arg) < 1:
            raise UsageError(f"bad parameter in {spec!r}")
        n = int(arg)
        if kind == "psl2":
            from .constructions import psl2
            from .families import prime_power

            try:
                p, f = prime_power(n)
            except ValueError:
                raise UsageError(f"psl2 needs a prime power, got {n}") from None
            G = psl2(n)
            G.name = f"PSL2({n})"
            return Resolved(spec, f"psl2:{n}", G, determinism={"field_polynomial": GF(p, f).poly_str()})
        try:
            G = builders[kind](n)
        except (ValueError, GroupError) as exc:
            raise UsageError(str(exc)) from None
        return Resolved(spec, f"{kind}:{n}", G)
    if kind == "file":
        path = _find_file(arg)
        raw = path.read_bytes()
        try:
            degree, gens = read_gens(path)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        digest = hashlib.sha256(raw).hexdigest()[:16]
        G = from_generators(degree, gens, name=path.stem)
        return Resolved(spec, f"file:{path.stem}:{digest}", G)
    if kind == "ctx":
        path = _find_file(arg)
        text = path.read_text()
        try:
            tables = ctx_parse_all(text, source=str(path), trust=trust)
        except CtxError as exc:
            raise UsageError(str(exc)) from None
        digest = hashlib.sha256(text.encode()).hexdigest()[:16]
        return Resolved(spec, f"ctx:{path.stem}:{digest}", None, tables)
    raise UsageError(f"unknown group kind {kind!r}")


# ---- table cache ----------------------------------------------------------------------

def cache_dir() -> Path:
    return Path(os.environ.get("PICKYLAB_CACHE", ".pickylab-cache"))


def cache_path(canonical: str, seed: int) -> Path:
    stem = re.sub(r"[^A-Za-z0-9_.-]", "_", canonical)
    return cache_dir() / f"{stem}-v{__version__}-s{seed}.ctx"


def _attach(T: CharacterTable, G: PermGroup) -> bool:
    """Bind a loaded table to G if its class representatives sit in the matching classes."""
    classes = G.conjugacy_classes()
    if len(classes) != T.nclasses:
        return False
    for c, cl in enumerate(T.classes):
        rep = cl.representative
        if rep is None or rep.degree != G.degree or rep not in G or G.class_of(rep) != c or cl.size != classes[c].size:
            return False
    T.group = G
    T.classes = classes
    return True


def load_table(res: Resolved, seed: int = 0, use_cache: bool = True, trust: bool = False
               ) -> tuple[CharacterTable, str]:
    """Character table of the resolved group, via the cache; returns (table, cache status)."""
    G = res.group
    store = G.root._cache.setdefault("tables", {})
    key = G.idx.tobytes()
    status = "off"
    T = None
    path = cache_path(res.canonical, seed)
    if use_cache and path.is_file():
        try:
            T = ctx_parse_all(path.read_text(), source=str(path), trust=trust)[0]
            status = "hit" if _attach(T, G) else "stale"
        except (CtxError, TableError, ValueError, IndexError):
            status = "corrupt"
        if status != "hit":
            T = None
    if T is None:
        T = dixon_schneider(G, seed=seed)
        if use_cache:
            status = "miss" if status == "off" else status
            out = CharacterTable(T.name, T.order, T.classes, T.irr, labels=T.labels,
                                 meta={**T.meta, "dixon_prime": T.dixon_prime})
            path.parent.mkdir(parents=True, exist_ok=True)
            tmp = path.with_suffix(".tmp")
            tmp.write_text(ctx_write(out))
            tmp.replace(path)
    elif T.dixon_prime is None and "dixon_prime" in T.meta:
        T.dixon_prime = int(T.meta["dixon_prime"])
    store[key] = T
    return T, status


# ---- expected verdicts ----------------------------------------------------------------

# Failing verdicts that are the predicted outcome; everything else must pass.
# Keys: (check name, group name, prime).
EXPECTED = {
    ("picky-strong-A", "sz8", 2): "fails",
    ("picky-strong-A", "psu33", 3): "fails",
    ("picky-strong-global", "sz8", 2): "holds-nonstrict-only",
    ("picky-strong-global", "psu33", 3): "holds-nonstrict-only",
    ("subnormalizer-strong-B", "sz8", 2): "fails",
    ("subnormalizer-strong-B", "psu33", 3): "fails",
    ("irc-syl", "sz8", 2): "fails",
    ("irc-syl", "psu33", 3): "fails",
}


def expected_ok(chk: Check, group: str, prime: int | None) -> bool:
    want = EXPECTED.get((chk.name, group, prime))
    if want is not None:
        return chk.verdict == want
    return chk.ok or chk.verdict in ("skipped", "fixture")


# ---- commands -------------------------------------------------------------------------

@dataclass
class Run:
    args: argparse.Namespace
    res: Resolved | None
    prime: int | None
    checks: list[Check] = field(default_factory=list)
    lines: list[str] = field(default_factory=list)
    determinism: dict = field(default_factory=dict)
    table: CharacterTable | None = None

    def say(self, text: str = ""):
        self.lines.append(text)

    def add(self, chk: Check):
        self.checks.append(chk)
        self.say(f"{chk.name} [{chk.target}]: {chk.verdict}")
        for n in chk.notes:
            self.say(f"  {n}")


def _primes(args) -> list[int]:
    if not args.prime:
        return []
    try:
        ps = [int(t) for t in args.prime.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"bad --prime {args.prime!r}") from None
    from .permgroup import prime_factors

    for p in ps:
        if p < 2 or prime_factors(p) != [p]:
            raise UsageError(f"{p} is not a prime")
    return ps


def _need_group(run: Run) -> PermGroup:
    if run.res is None:
        raise UsageError("--group is required")
    if run.res.table_only:
        raise UsageError(f"{run.res.spec} is table-only; this command needs a permutation group")
    return run.res.group


def _need_prime(run: Run) -> int:
    if run.prime is None:
        raise UsageError("--prime is required")
    return run.prime


def _class_rep(G: PermGroup, T: CharacterTable, label: str):
    try:
        c = T.class_index(label)
    except TableError as exc:
        raise UsageError(f"{exc}; classes are {', '.join(T.labels)}") from None
    return c, G.conjugacy_classes()[c].representative


def _table(run: Run) -> CharacterTable:
    if run.table is not None:
        return run.table
    a = run.args
    T, status = load_table(run.res, seed=a.seed, use_cache=not a.no_cache, trust=a.trust)
    run.determinism["dixon_prime"] = T.dixon_prime
    run.determinism["class_order"] = [fmt_perm(c.representative) for c in T.classes]
    run.say(f"table cache: {status}")
    run.table = T
    return T


def cmd_table(run: Run):
    if run.res is not None and run.res.table_only:
        for T in run.res.tables:
            rep = verify_table(T) if not T.fixture else None
            verdict = "fixture" if rep is None else ("holds" if rep.ok else "fails")
            notes = [f"order {T.order or '?'}, {T.nclasses} classes, {len(T.irr)} rows"]
            if rep is not None and not rep.ok:
                notes += rep.failures[:5]
            run.add(Check("table", T.name, verdict, notes=notes))
        return
    G = _need_group(run)
    T = _table(run)
    rep = verify_table(T)
    run.say(f"{G.name}: order {G.order}, {T.nclasses} classes")
    run.say("classes: " + " ".join(T.labels))
    run.say("degrees: " + " ".join(str(d) for d in T.degrees))
    notes = [f"{T.nclasses} classes", f"degrees {T.degrees}"] + list(rep.failures[:5])
    run.add(Check("table", G.name, "holds" if rep.ok else "fails", notes=notes))


def cmd_lambda(run: Run):
    from .locality import casolo_verify, lambda_character_verify, lambda_count, p_element_classes

    G, p = _need_group(run), _need_prime(run)
    T = _table(run)
    classes = G.conjugacy_classes()
    vals = {}
    for c in p_element_classes(G, p):
        vals[T.labels[c]] = lambda_count(G, p, classes[c].representative)
        run.say(f"lambda({T.labels[c]}) = {vals[T.labels[c]]}")
    run.add(Check("lambda", f"{G.name} p={p}", "holds", witness=vals,
                  notes=["values " + ", ".join(f"{k}:{v}" for k, v in vals.items())]))
    run.add(casolo_verify(G, p))
    run.add(lambda_character_verify(G, p, T))


def cmd_sub(run: Run):
    from .locality import p_element_classes, sub_dual_route_verify, subnormalizer, subnormalizer_set

    G, p = _need_group(run), _need_prime(run)
    T = _table(run)
    classes = G.conjugacy_classes()
    cs = [_class_rep(G, T, run.args.cls)[0]] if run.args.cls else p_element_classes(G, p)
    for c in cs:
        x = classes[c].representative
        res = subnormalizer(G, x, p)
        size = res.set_size if res.set_size is not None else len(subnormalizer_set(G, x))
        malle = "-" if res.malle is None else res.malle.order
        run.say(f"{T.labels[c]}: |S_G(x)| = {size}, |Sub_G(x)| = {res.sub.order}, malle route {malle}")
    run.add(sub_dual_route_verify(G, p))


def cmd_picky(run: Run):
    from .locality import lambda_count, p_element_classes

    G, p = _need_group(run), _need_prime(run)
    T = _table(run)
    classes = G.conjugacy_classes()
    picky = [T.labels[c] for c in p_element_classes(G, p)
             if lambda_count(G, p, classes[c].representative) == 1]
    run.say(f"picky {p}-classes: {' '.join(picky) or 'none'}")
    run.add(Check("picky-classes", f"{G.name} p={p}", "holds", witness=picky,
                  notes=[f"{len(picky)} picky classes"]))


def _check_picky(run: Run):
    from .matchcheck import PICKY_MODES, check_picky

    G, p = _need_group(run), _need_prime(run)
    _table(run)
    modes = [run.args.mode] if run.args.mode else list(PICKY_MODES)
    for m in modes:
        if m not in PICKY_MODES:
            raise UsageError(f"unknown picky mode {m!r}; choose from {', '.join(PICKY_MODES)}")
        run.add(check_picky(G, p, m, uniform_sign=run.args.uniform_sign))
        if run.args.uniform_sign and m in ("strong-global", "global"):
            # both readings of the sign quantifier are reported
            other = check_picky(G, p, m, uniform_sign=False)
            other.name += "[per-element-sign]"
            run.add(other)


def _check_subnormalizer(run: Run):
    from .matchcheck import check_subnormalizer

    G, p = _need_group(run), _need_prime(run)
    _table(run)
    modes = [run.args.mode] if run.args.mode else ["B", "strong-B"]
    for m in modes:
        try:
            run.add(check_subnormalizer(G, p, m))
        except ValueError as exc:
            raise UsageError(str(exc)) from None


def _picky_classes(G, T, p):
    from .locality import lambda_count, p_element_classes

    classes = G.conjugacy_classes()
    return [c for c in p_element_classes(G, p) if lambda_count(G, p, classes[c].representative) == 1]


def _check_sections(run: Run):
    from .matchcheck import SECTION_MODES, check_sections

    G, p = _need_group(run), _need_prime(run)
    T = _table(run)
    classes = G.conjugacy_classes()
    cs = [_class_rep(G, T, run.args.cls)[0]] if run.args.cls else _picky_classes(G, T, p)
    modes = [run.args.mode] if run.args.mode else list(SECTION_MODES)
    for m in modes:
        if m not in SECTION_MODES:
            raise UsageError(f"unknown sections mode {m!r}")
    for c in cs:
        for m in modes:
            try:
                run.add(check_sections(G, p, classes[c].representative, m))
            except GroupError as exc:
                if run.args.mode:
                    raise UsageError(str(exc)) from None
                x = classes[c].representative
                run.add(Check(f"sections-{m}", f"{G.name} p={p} x={fmt_perm(x)}", "skipped", notes=[str(exc)]))


def _check_irc(run: Run):
    from .evseev import check_irc, check_self_normalizing_decomposition, vanishing_verify

    G, p = _need_group(run), _need_prime(run)
    _table(run)
    run.add(vanishing_verify(G, p))
    for weak, pv in ((False, False), (True, False), (False, True)):
        run.add(check_irc(G, p, weak=weak, picky_version=pv))
    try:
        run.add(check_self_normalizing_decomposition(G, p))
    except GroupError as exc:
        run.add(Check("irc-decomposition", f"{G.name} p={p}", "skipped", notes=[str(exc)]))


def _check_eaton_moreto(run: Run):
    from .matchcheck import check_degree_invariants

    G, p = _need_group(run), _need_prime(run)
    T = _table(run)
    run.add(check_degree_invariants(G, p, "eaton-moreto"))
    if run.args.cls:
        _, x = _class_rep(G, T, run.args.cls)
        run.add(check_degree_invariants(G, p, "ppart-multiset", x))


def _check_extensions(run: Run):
    from .matchcheck import check_extensions

    a = run.args
    mode = a.mode or "field-8.1"
    if mode == "hall-7.2":
        primes = _primes(a)
        if not primes:
            raise UsageError("hall-7.2 needs --prime with the set of primes")
        if run.res is not None and run.res.table_only:
            if len(run.res.tables) != 2 or not a.cls:
                raise UsageError("table-only hall-7.2 needs two tables (G, then N_G(H)) and --class")
            TG, TN = run.res.tables
            chk = check_extensions(mode, TG=TG, TN=TN, label_g=a.cls, label_n=a.cls, primes=primes)
            run.add(chk)
            return
        G = _need_group(run)
        _table(run)
        run.add(check_extensions(mode, G=G, primes=primes))
        return
    G = _need_group(run)
    T = _table(run)
    if mode == "mixed-7.1":
        if not a.cls:
            raise UsageError("mixed-7.1 needs --class")
        _, x = _class_rep(G, T, a.cls)
        run.add(check_extensions(mode, G=G, x=x))
    elif mode == "field-8.1":
        run.add(check_extensions(mode, G=G, p=_need_prime(run)))
    else:
        raise UsageError(f"unknown extensions mode {mode!r}")


def _family_args(run: Run) -> tuple[str, int]:
    from .families import FAMILIES, admissible

    a = run.args
    if a.family not in FAMILIES:
        raise UsageError(f"--family must be one of {', '.join(FAMILIES)}")
    if a.q is None or not admissible(a.family, a.q):
        raise UsageError(f"q={a.q} is not admissible for {a.family}")
    return a.family, a.q


def _check_family(run: Run):
    from .families import crosscheck, family_verify

    fam, q = _family_args(run)
    chk = family_verify(fam, q)
    run.checks.append(chk)
    run.say("; ".join(n for n in chk.notes if n.split(":")[0] in ("global", "strong(good)", "strong(bad)")))
    run.say(f"family [{chk.target}]: {chk.verdict}")
    for n in chk.notes:
        if n.split(":")[0] not in ("global", "strong(good)", "strong(bad)"):
            run.say(f"  {n}")
    from .families import CROSSCHECK_GROUPS

    if q in CROSSCHECK_GROUPS.get(fam, ()):
        run.add(crosscheck(fam, q))


def _check_all(run: Run):
    from .locality import (block_vanishing_verify, casolo_verify, fusion_control_verify, lambda_character_verify,
                           lambda_formula_verify, rae_verify, sub_containment_verify, sub_dual_route_verify,
                           value_field_verify)
    from .matchcheck import check_field_81, pprime_nonvanishing_verify

    G, p = _need_group(run), _need_prime(run)
    T = _table(run)
    for fn in (casolo_verify, lambda_formula_verify, sub_dual_route_verify, sub_containment_verify,
               fusion_control_verify, value_field_verify, block_vanishing_verify):
        run.add(fn(G, p))
    run.add(lambda_character_verify(G, p, T))
    run.add(pprime_nonvanishing_verify(T, p))
    try:
        run.add(rae_verify(G, p))
    except GroupError as exc:
        run.add(Check("rae", f"{G.name} p={p}", "skipped", notes=[str(exc)]))
    saved = run.args.mode
    run.args.mode = None
    try:
        _check_picky(run)
        _check_subnormalizer(run)
        cls = run.args.cls
        run.args.cls = None
        _check_sections(run)
        run.args.cls = cls
        _check_eaton_moreto(run)
        _check_irc(run)
    finally:
        run.args.mode = saved
    run.add(check_field_81(G, p))


CHECK_RUNNERS = {
    "picky": _check_picky, "subnormalizer": _check_subnormalizer, "sections": _check_sections,
    "irc": _check_irc, "eaton-moreto": _check_eaton_moreto, "extensions": _check_extensions,
    "family": _check_family, "all": _check_all,
}


def cmd_check(run: Run):
    CHECK_RUNNERS[run.args.what](run)


def oracle_text(orc) -> str:
    """CTX-like rendering of a partial oracle table: per class, one line per row group."""
    out = ["ctx-partial 1", f"family {orc.family}", f"q {orc.q}", f"p {orc.p}"]
    for k, v in sorted(orc.params.items()):
        out.append(f"param {k} {format_cyc(v) if hasattr(v, 'num') else v}")
    out.append(f"irr_p {orc.irr_p[0]} {orc.irr_p[1]}")
    for c in orc.classes:
        out.append(f"class {c.label} {c.kind} order={c.order}")
        for side in ("G", "H"):
            for r in c.rows(side):
                deg = "" if r.degree is None else f" degree={r.degree}"
                out.append(f"  {side} {r.label} value={format_cyc(r.value)} ppart={r.degree_part} "
                           f"mult={r.multiplicity}{deg}")
    for n in orc.notes:
        out.append(f"# {n}")
    return "\n".join(out) + "\n"


def cmd_family(run: Run):
    from .families import OracleError, invariants, oracle

    fam, q = _family_args(run)
    try:
        orc = oracle(fam, q)
    except OracleError as exc:
        raise UsageError(str(exc)) from None
    run.say(oracle_text(orc).rstrip("\n"))
    chk = invariants(orc)
    chk.witness = orc.to_json()
    run.add(chk)


HANDLERS = {"table": cmd_table, "lambda": cmd_lambda, "sub": cmd_sub, "picky": cmd_picky,
            "check": cmd_check, "family": cmd_family}


# ---- entry point ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--group", help="sym:n, alt:n, dihedral:n, cyclic:n, psl2:q, file:PATH or ctx:PATH")
    common.add_argument("--prime", help="a prime, or a comma list for Hall checks")
    common.add_argument("--class", dest="cls", help="class label")
    common.add_argument("--mode")
    common.add_argument("--q", type=int)
    common.add_argument("--family")
    common.add_argument("--json", help="write the JSON report here")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--trust", action="store_true", help="skip re-verification of loaded tables")
    common.add_argument("--no-cache", action="store_true")
    common.add_argument("--uniform-sign", action="store_true")
    ap = argparse.ArgumentParser(prog="pickylab", description=__doc__)
    ap.add_argument("--version", action="version", version=f"pickylab {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name, parents=[common])
        if name == "check":
            sp.add_argument("what", choices=CHECKS)
    return ap


def report(run: Run) -> dict:
    res = run.res
    det = {"seed": run.args.seed, **(res.determinism if res else {}), **run.determinism}
    if res is not None and res.table_only:
        det["mode"] = "fixture"
    return {
        "version": __version__,
        "spec": res.canonical if res else None,
        "prime": run.args.prime,
        "checks": [c.to_json() for c in run.checks],
        "determinism": det,
    }


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    t0 = time.perf_counter()
    try:
        ps = _primes(args)
        if args.seed < 0 or args.seed >= 2 ** 64:
            raise UsageError("--seed must be an unsigned 64-bit integer")
        res = resolve(args.group, trust=args.trust) if args.group else None
        run = Run(args, res, ps[0] if len(ps) == 1 else None)
        HANDLERS[args.command](run)
    except UsageError as exc:
        print(f"pickylab: {exc}", file=sys.stderr)
        return 2
    except (GroupError, ValueError) as exc:
        print(f"pickylab: infeasible: {exc}", file=sys.stderr)
        return 2
    group = res.name if res else None
    unexpected = [c for c in run.checks if not expected_ok(c, group, run.prime)]
    for line in run.lines:
        print(line)
    for c in unexpected:
        print(f"UNEXPECTED: {c.name} [{c.target}] -> {c.verdict}")
    print(f"({time.perf_counter() - t0:.2f}s)")
    if args.json:
        Path(args.json).write_text(json.dumps(report(run), indent=2, sort_keys=True) + "\n")
    return 1 if unexpected else 0


if __name__ == "__main__":
    sys.exit(main())
