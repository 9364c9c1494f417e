"""Command line entry point: ``heckemod <command> [options]``.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 a factor
needed a field extension to split (results are still reported).
"""

from __future__ import annotations

import argparse
import json
import sys

from .fields import GF, QQ, e_invariant, is_prime
from .hecke import AFFINE, FINITE
from .kzero import (
    GROUP_SIGN,
    HECKE_SIGN,
    LabelingError,
    block_simples,
    kato_dual,
    multiplicity_matrix,
    standard_module,
    tau_class,
)
from .meataxe import SimpleRegistry
from .modules import make_character, module_to_json
from .segments import enumerate_multisegments

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_EXTENDED = 0, 1, 2, 3
CORPORA = ("characters", "standard", "all-simples-in-block", "all")


class UsageError(Exception):
    pass


def _field(args):
    if args.rationals and args.char is not None:
        raise UsageError("give either --char or --rationals, not both")
    if args.rationals:
        return QQ
    if args.char is None:
        raise UsageError("a field is required: --char L or --rationals")
    if not is_prime(args.char):
        raise UsageError(f"--char {args.char} is not a prime")
    return GF(args.char)


def _u(args, F):
    if args.u is None:
        raise UsageError("--u is required")
    try:
        u = F.parse(args.u)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"cannot read --u {args.u!r}: {exc}") from None
    if F.is_zero(u):
        raise UsageError("--u must be nonzero")
    return u


def _n(args):
    if args.n is None or args.n < 1:
        raise UsageError("--n must be a positive integer")
    return args.n


def _support(args, n):
    if not args.support:
        return list(range(n))
    try:
        vals = [int(x) for x in args.support.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"bad --support {args.support!r}") from None
    if len(vals) != n:
        raise UsageError(f"--support lists {len(vals)} residues but n = {n}")
    return vals


def _shifts(e: int, n: int):
    return range(e) if 0 < e <= 8 else range(n)


# -- commands ---------------------------------------------------------------------------

def cmd_e(args):
    F = _field(args)
    return EXIT_OK, e_invariant(_u(args, F), F)


def _corpus(kind, n, u, F, support, reg, flavor):
    e = e_invariant(u, F)
    items = []
    if kind in ("characters", "all"):
        for k in ("Z", "L"):
            for a in _shifts(e, n):
                items.append((f"{k}(n={n},a={a})", make_character(k, n, a, u, F, flavor)))
    if kind in ("standard", "all"):
        for mu in enumerate_multisegments(n, e, support=support):
            items.append((f"M[{mu}]", standard_module(mu, u, F, flavor)))
    if kind in ("all-simples-in-block", "all"):
        for sid in block_simples(n, u, F, support, reg, flavor):
            items.append((f"simple {sid}", reg.lookup(sid)))
    return items


def cmd_kato_check(args):
    F = _field(args)
    u, n = _u(args, F), _n(args)
    support = _support(args, n)
    reg = SimpleRegistry(seed=args.seed)
    report, ok, counterexample = [], True, None
    for name, m in _corpus(args.corpus, n, u, F, support, reg, args.flavor):
        dual = kato_dual(m, reg, args.sign)
        twist = tau_class(m, reg)
        # the group-side sign differs from the Hecke-side one by (-1)^n
        flip = (-1) ** n if args.sign == GROUP_SIGN else 1
        passed = dual * flip == twist
        report.append({"module": name, "kato_dual": dual.to_dict(), "tau": twist.to_dict(), "pass": passed})
        if not passed and counterexample is None:
            ok = False
            counterexample = json.loads(module_to_json(m))
    out = {
        "field": F.spec(),
        "u": F.format(u),
        "n": n,
        "e": e_invariant(u, F),
        "corpus": args.corpus,
        "sign": args.sign,
        "pass": ok,
        "modules": report,
    }
    if counterexample is not None:
        out["counterexample"] = counterexample
    return _code(ok, reg), out


def _code(ok, reg):
    if not ok:
        return EXIT_FAIL
    return EXIT_EXTENDED if reg.extended else EXIT_OK


def _parse_compare(item):
    fields = dict(part.split("=", 1) for part in item.split(",") if "=" in part)
    if "u" not in fields or ("char" not in fields and "rationals" not in item):
        raise UsageError(f"bad --compare entry {item!r}; expected char=L,u=U")
    F = QQ if "char" not in fields else GF(int(fields["char"]))
    return F, F.parse(fields["u"])


def cmd_mult_matrix(args):
    n = _n(args)
    support = _support(args, n)
    if args.compare:
        if len(args.compare) < 2:
            raise UsageError("--compare needs at least two field specs")
        tables, es, reg_flags = [], [], []
        for item in args.compare:
            F, u = _parse_compare(item)
            reg = SimpleRegistry(seed=args.seed)
            M = multiplicity_matrix(n, u, F, support, reg, args.flavor)
            if M.violations():
                return EXIT_FAIL, {"result": "FAIL", "field": F.spec(), "violations": M.violations()}
            tables.append(M.by_label())
            es.append(M.e)
            reg_flags.append(bool(reg.extended))
        same = all(t == tables[0] for t in tables[1:])
        if same:
            return (EXIT_EXTENDED if any(reg_flags) else EXIT_OK), "MATCH"
        return EXIT_FAIL, "MISMATCH"
    F = _field(args)
    u = _u(args, F)
    reg = SimpleRegistry(seed=args.seed)
    M = multiplicity_matrix(n, u, F, support, reg, args.flavor)
    bad = M.violations()
    if bad:
        return EXIT_FAIL, {"result": "FAIL", "violations": bad}
    if args.format == "csv":
        return _code(True, reg), M.to_csv()
    return _code(True, reg), json.loads(M.to_json())


def cmd_duality_table(args):
    F = _field(args)
    u, n = _u(args, F), _n(args)
    support = _support(args, n)
    reg = SimpleRegistry(seed=args.seed)
    M = multiplicity_matrix(n, u, F, support, reg, args.flavor)
    label_of = {sid: str(mu) for mu, sid in M.labels.items()}
    rows, ok, image = [], True, {}
    for sid in block_simples(n, u, F, support, reg, args.flavor):
        dual = kato_dual(reg.lookup(sid), reg, HECKE_SIGN)
        target = dual.single()
        row = {"id": sid, "label": label_of.get(sid), "dual_id": target, "dual_label": label_of.get(target)}
        if target is None:
            ok = False
            row["dual_class"] = dual.to_dict()
        image[sid] = target
        rows.append(row)
    involution = ok and all(image.get(image[s]) == s for s in image)
    ok = ok and involution
    return _code(ok, reg), {
        "field": F.spec(),
        "u": F.format(u),
        "n": n,
        "e": M.e,
        "involution": involution,
        "pass": ok,
        "table": rows,
    }


COMMANDS = {
    "e": cmd_e,
    "kato-check": cmd_kato_check,
    "mult-matrix": cmd_mult_matrix,
    "duality-table": cmd_duality_table,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--char", type=int, help="prime characteristic of the field")
    common.add_argument("--rationals", action="store_true", help="work over the rationals")
    common.add_argument("--u", help="the parameter, e.g. 2 or 3/2")
    common.add_argument("--n", type=int)
    common.add_argument("--flavor", choices=(AFFINE, FINITE), default=AFFINE)
    common.add_argument("--support", help="comma separated residues (default 0,1,...,n-1)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("--format", choices=("json", "csv"), default="json")

    p = argparse.ArgumentParser(prog="heckemod", description=__doc__.splitlines()[0])
    p.add_argument("--manifest", help="JSON file with a list of jobs")
    sub = p.add_subparsers(dest="command")
    sub.add_parser("e", parents=[common], help="print the e-invariant of u")
    k = sub.add_parser("kato-check", parents=[common], help="compare the alternating sum with the tau-twist")
    k.add_argument("--corpus", choices=CORPORA, default="all")
    k.add_argument(
        "--sign",
        choices=(HECKE_SIGN, GROUP_SIGN),
        default=HECKE_SIGN,
        help="hecke: (-1)^(n-r); group: (-1)^r, compared after multiplying by (-1)^n",
    )
    m = sub.add_parser("mult-matrix", parents=[common], help="multiplicities of simples in standard modules")
    m.add_argument("--compare", nargs="+", metavar="char=L,u=U")
    sub.add_parser("duality-table", parents=[common], help="the map L -> dual of L on a block")
    return p


def _render(payload, fmt) -> str:
    if isinstance(payload, str) and (fmt == "csv" or payload in ("MATCH", "MISMATCH")):
        return payload.rstrip("\n")
    return json.dumps(payload, indent=None if isinstance(payload, (int, str)) else 2)


def _run(args) -> tuple[int, object]:
    if args.command not in COMMANDS:
        raise UsageError("a command is required")
    try:
        return COMMANDS[args.command](args)
    except LabelingError as exc:
        return EXIT_FAIL, {"result": "FAIL", "labeling": str(exc)}


def _job_argv(job: dict) -> list[str]:
    job = dict(job)
    argv = [str(job.pop("command"))]
    for key, val in job.items():
        flag = "--" + key.replace("_", "-")
        if val is True:
            argv.append(flag)
        elif isinstance(val, list):
            argv += [flag] + [str(v) for v in val]
        elif val is not None and val is not False:
            argv += [flag, str(val)]
    return argv


def _run_manifest(parser, path) -> tuple[str, int]:
    try:
        with open(path) as fh:
            jobs = json.load(fh)
    except (OSError, ValueError) as exc:
        raise UsageError(f"cannot read manifest: {exc}") from None
    if not isinstance(jobs, list):
        raise UsageError("the manifest must be a JSON list of jobs")
    results, codes = [], set()
    for job in jobs:
        try:
            c, payload = _run(parser.parse_args(_job_argv(job)))
        except (UsageError, SystemExit, KeyError) as exc:
            c, payload = EXIT_USAGE, {"usage_error": str(exc)}
        codes.add(c)
        results.append({"job": job, "exit": c, "result": payload})
    # failures dominate usage errors, which dominate the extension notice
    code = next((c for c in (EXIT_FAIL, EXIT_USAGE, EXIT_EXTENDED) if c in codes), EXIT_OK)
    return json.dumps(results, indent=2), code


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        if args.manifest:
            text, code = _run_manifest(parser, args.manifest)
            out_path = None
        else:
            code, payload = _run(args)
            text = _render(payload, args.format)
            out_path = args.out
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
