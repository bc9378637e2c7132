"""Command-line front end.

Exit codes: 0 success/PASS, 1 verification FAIL, 2 usage error (including an
unknown pair), 3 capacity exceeded, 4 malformed matrix input, 5 internal
verification error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from . import rational as Q
from .branchrules import EmbeddingPair, restrict_character, restriction_matrix
from .charcalc import decompose_character
from .errors import CapacityError, KringError, UnsupportedTypeError, VerificationError, set_max_dim
from .intertwine import (hom_dim_from_characters, is_symplectic, loop_matrix, random_special_linear,
                         random_symplectic, solve_intertwiner)
from .koszulhom import koszul_ranks, tor_ranks, truncated_exactness
from .ktheory import e2_page, format_poly, k_theory_split, k_theory_twisted
from .repring import pair_rings, restriction_hom, verify_kernel_generation
from .rootdata import weyl_dimension

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAPACITY, EXIT_MATRIX, EXIT_INTERNAL = 0, 1, 2, 3, 4, 5
PAIRS = ("sl-sp", "e6-f4")


class UsageError(Exception):
    pass


class MatrixInputError(Exception):
    pass


def _pair(args) -> EmbeddingPair:
    if args.pair not in PAIRS:
        raise UsageError(f"unknown pair {args.pair!r} (expected one of: {', '.join(PAIRS)})")
    if args.pair == "sl-sp":
        if args.n < 2:
            raise UsageError(f"--n must be at least 2, got {args.n}")
        return restriction_matrix("sl-sp", args.n)
    return restriction_matrix("e6-f4")


def _wt(w) -> str:
    return ",".join(str(x) for x in w)


def _decomp(rs, c) -> list[dict]:
    dec = decompose_character(rs, c)
    return [{"highest_weight": _wt(w), "multiplicity": m, "dim": weyl_dimension(rs, w)}
            for w, m in dec.terms.items()]


# --- subcommands -----------------------------------------------------------------

def cmd_info(args) -> tuple[dict, bool]:
    pair = _pair(args)
    big, small = pair_rings(pair)

    def gens(ring):
        return [{"name": nm, "highest_weight": _wt(ring.rs.fundamental_weights[f]), "dim": c.dim}
                for nm, c, f in zip(ring.gen_names, ring.gen_chars, ring.gen_fundamental)]

    report = {
        "pair": pair.name,
        "group": pair.big.name,
        "subgroup": pair.small.name,
        "m": pair.m,
        "group_generators": gens(big),
        "subgroup_generators": gens(small),
        "weight_projection": [" ".join(map(str, row)) for row in pair.weight_projection],
        "koszul_ranks": koszul_ranks(pair),
    }
    return report, True


def cmd_branch(args) -> tuple[dict, bool]:
    pair = _pair(args)
    big, small = pair_rings(pair)
    hom = restriction_hom(pair)
    rows = []
    restricted = {}
    for nm, c, img in zip(big.gen_names, big.gen_chars, hom.images):
        r = restrict_character(pair, c)
        restricted[nm] = r
        ok = r.dim == c.dim
        rows.append({
            "generator": nm,
            "dim": c.dim,
            "restriction": " + ".join(
                (f"{t['multiplicity']}*" if t["multiplicity"] > 1 else "") + f"V({t['highest_weight']})"
                for t in _decomp(small.rs, r)),
            "image": str(img),
            "dim_preserved": ok,
        })
    if pair.kind == "sl-sp":
        n = pair.n
        pairs = [(big.gen_names[k - 1], big.gen_names[2 * n - k - 1]) for k in range(1, n)]
    else:
        pairs = [("x_rho", "x_rhov"), ("x_L2rho", "x_L2rhov")]
    coincidences = [{"left": a, "right": b, "equal": restricted[a] == restricted[b]} for a, b in pairs]
    ok = all(r["dim_preserved"] for r in rows) and all(c["equal"] for c in coincidences)
    report = {
        "pair": pair.name,
        "restrictions": rows,
        "coincidences": coincidences,
        "surjectivity_witness": [{"target": t, "source": s}
                                 for t, s in hom.surjectivity_witness().items()],
        "pass": ok,
    }
    return report, ok


def _degree(args) -> int:
    if args.degree < 1:
        raise UsageError(f"--degree must be at least 1, got {args.degree}")
    return args.degree


def cmd_kernel_verify(args) -> tuple[dict, bool]:
    pair = _pair(args)
    report = verify_kernel_generation(pair, _degree(args))
    return report, report["pass"]


def cmd_koszul_verify(args) -> tuple[dict, bool]:
    pair = _pair(args)
    rep = truncated_exactness(pair, _degree(args))
    report = {
        "pair": rep["pair"],
        "d": rep["d"],
        "koszul_ranks": koszul_ranks(pair),
        "slices": [{"e": s["e"], "h_ranks": s["h_ranks"],
                    "torsion_free": not any(s["torsion"]),
                    "rh_graded_rank": s["rh_graded_rank"], "exact": s["exact"]}
                   for s in rep["slices"]],
        "tor_ranks": rep["tor_ranks"],
        "pass": rep["pass"],
    }
    return report, rep["pass"]


def cmd_e2(args) -> tuple[dict, bool]:
    pair = _pair(args)
    if args.qmax < 0:
        raise UsageError(f"--qmax must be nonnegative, got {args.qmax}")
    page = e2_page(pair, args.qmax)
    table = []
    for q in range(page.qmax + 1):
        row = {"q": q}
        for p in range(page.m + 1):
            row[f"p={p}"] = page.rank(p, q)
        table.append(row)
    report = {
        "pair": pair.name,
        "m": page.m,
        "qmax": page.qmax,
        "table": table,
        "tor_ranks": tor_ranks(pair),
        "entry": "Lambda^p(Z^m) (x) K_q(F)",
        "degenerates_at_e2": page.degenerate,
    }
    return report, True


def cmd_ktheory(args) -> tuple[dict, bool]:
    pair = _pair(args)
    module = k_theory_twisted(pair) if args.twisted else k_theory_split(pair)
    d = module.as_dict()
    report = {
        "pair": d["pair"],
        "m": d["m"],
        "twisted": d["twisted"],
        "poincare": format_poly(d["poincare"]),
        "poincare_coefficients": d["poincare"],
        "rank": len(module.basis),
        "reduced_k1_rank": module.reduced_k1_rank(),
        "basis": [{"I": b["I"], "shift": b["shift"],
                   "coefficient": b["coefficient"],
                   "tensor_word": " (x) ".join(b["tensor_word"]) or "-",
                   "label": b["label"]}
                  for b in d["basis"]],
    }
    return report, True


def _sl_sp_n(args) -> int:
    if args.pair != "sl-sp":
        if args.pair in PAIRS:
            raise UsageError(f"{args.command} is only available for sl-sp")
        raise UsageError(f"unknown pair {args.pair!r} (expected one of: {', '.join(PAIRS)})")
    if args.n < 2:
        raise UsageError(f"--n must be at least 2, got {args.n}")
    return args.n


def _ks(args, n) -> list[int]:
    if args.k is None:
        return list(range(1, n))
    if not 1 <= args.k <= n - 1:
        raise UsageError(f"--k must lie in 1..{n - 1}, got {args.k}")
    return [args.k]


def cmd_intertwiner(args) -> tuple[dict, bool]:
    n = _sl_sp_n(args)
    rows = []
    ok = True
    for k in _ks(args, n):
        it = solve_intertwiner(n, k)
        expected = k // 2 + 1
        chars = hom_dim_from_characters(n, k)
        good = it.hom_space_dim == expected == chars
        ok &= good
        row = {
            "n": n,
            "k": k,
            "dimension": len(it.alpha),
            "hom_space_dim": it.hom_space_dim,
            "expected": expected,
            "character_count": chars,
            "alpha_det": str(Q.det(it.alpha)),
            "pass": good,
        }
        if args.dump:
            row["alpha"] = Q.format_matrix(it.alpha).splitlines()
        rows.append(row)
    return {"pair": f"SL{2 * n}/Sp{2 * n}", "intertwiners": rows, "pass": ok}, ok


def _read_matrix(source: str):
    try:
        if source == "-":
            text = sys.stdin.read()
        elif source.startswith("@"):
            with open(source[1:], encoding="utf-8") as fh:
                text = fh.read()
        else:
            text = source
    except OSError as exc:
        raise MatrixInputError(f"cannot read matrix: {exc}") from None
    try:
        return Q.parse_matrix(text)
    except ValueError as exc:
        raise MatrixInputError(str(exc)) from None


def cmd_loop(args) -> tuple[dict, bool]:
    n = _sl_sp_n(args)
    ks = _ks(args, n)
    if args.matrix is not None:
        g = _read_matrix(args.matrix)
        if len(g) != 2 * n or len(g[0]) != 2 * n:
            raise MatrixInputError(f"matrix must be {2 * n}x{2 * n}, got {len(g)}x{len(g[0])}")
        if Q.det(g) != 1:
            raise MatrixInputError(f"matrix must have determinant 1, got {Q.det(g)}")
        report = {"pair": f"SL{2 * n}/Sp{2 * n}", "n": n}
        for k in ks:
            chi = loop_matrix(n, k, g).value
            report[f"k={k}"] = {"identity": Q.is_identity(chi), "det": str(Q.det(chi)),
                                "value": Q.format_matrix(chi).splitlines()}
        return report, True
    if args.samples < 1:
        raise UsageError(f"--samples must be positive, got {args.samples}")
    rng = random.Random(args.seed)
    rows = []
    ok = True
    for k in ks:
        alpha = solve_intertwiner(n, k).alpha
        ident = coset = dets = 0
        for _ in range(args.samples):
            h = random_symplectic(n, rng)
            g = random_special_linear(n, rng)
            if not is_symplectic(h):
                raise VerificationError("generated test element is not symplectic")
            chi_g = loop_matrix(n, k, g, alpha).value
            ident += Q.is_identity(loop_matrix(n, k, h, alpha).value)
            coset += loop_matrix(n, k, Q.matmul(g, h), alpha).value == chi_g
            dets += Q.det(chi_g) == 1
        diag = Q.identity(2 * n)
        diag[0][0], diag[2 * n - 1][2 * n - 1] = Fraction(2), Fraction(1, 2)
        chi_d = loop_matrix(n, k, diag, alpha).value
        good = ident == coset == dets == args.samples
        ok &= good
        rows.append({
            "k": k,
            "samples": args.samples,
            "identity_on_sp": ident,
            "coset_invariant": coset,
            "det_one": dets,
            "diag_is_identity": Q.is_identity(chi_d),
            "diag_det": str(Q.det(chi_d)),
            "pass": good,
        })
    return {"pair": f"SL{2 * n}/Sp{2 * n}", "n": n, "seed": args.seed, "checks": rows, "pass": ok}, ok


COMMANDS = {
    "info": cmd_info,
    "branch": cmd_branch,
    "kernel-verify": cmd_kernel_verify,
    "koszul-verify": cmd_koszul_verify,
    "e2": cmd_e2,
    "ktheory": cmd_ktheory,
    "intertwiner": cmd_intertwiner,
    "loop": cmd_loop,
}


# --- rendering ---------------------------------------------------------------------

VERDICT_KEYS = {"pass", "match", "exact", "equal", "dim_preserved"}


def _scalar(v, key: str = "") -> str:
    if isinstance(v, bool):
        if key in VERDICT_KEYS:
            return "PASS" if v else "FAIL"
        return "yes" if v else "no"
    return str(v)


def _table(rows: list[dict]) -> list[str]:
    cols = list(rows[0])
    cells = [[_cell(r.get(c), c) for c in cols] for r in rows]
    widths = [max(len(c), *(len(row[i]) for row in cells)) for i, c in enumerate(cols)]
    out = ["  ".join(c.ljust(w) for c, w in zip(cols, widths)).rstrip()]
    out += ["  ".join(x.ljust(w) for x, w in zip(row, widths)).rstrip() for row in cells]
    return out


def _cell(v, key: str = "") -> str:
    if key == "I":
        return "{" + ",".join(map(str, v)) + "}"
    if isinstance(v, list):
        return " ".join(_cell(x) for x in v) if v else "[]"
    return _scalar(v, key)


def _render_table(report: dict, indent: str = "") -> list[str]:
    lines = []
    for key, v in report.items():
        if isinstance(v, dict):
            lines.append(f"{indent}{key}:")
            lines += _render_table(v, indent + "  ")
        elif isinstance(v, list) and v and all(isinstance(x, dict) for x in v):
            lines.append(f"{indent}{key}:")
            lines += [indent + "  " + ln for ln in _table(v)]
        elif isinstance(v, list) and v and all(isinstance(x, str) and " " in x for x in v):
            lines.append(f"{indent}{key}:")
            lines += [indent + "  " + ln for ln in v]
        else:
            lines.append(f"{indent}{key}: {_cell(v, key)}")
    return lines


def render(report: dict, fmt: str = "json") -> str:
    if fmt == "json":
        return json.dumps(report, indent=2, ensure_ascii=False)
    return "\n".join(_render_table(report))


# --- entry point ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kring", description=(
        "Representation rings, restriction kernels, Koszul resolutions and "
        "K-theory of SL(2n)/Sp(2n) and E6/F4."))
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, pair_required=True):
        if pair_required:
            p.add_argument("pair", help="sl-sp or e6-f4")
        else:
            p.add_argument("pair", nargs="?", default="sl-sp", help="sl-sp (default)")
        p.add_argument("--n", type=int, default=2, help="rank of Sp(2n) for sl-sp (default 2)")
        p.add_argument("--format", choices=("json", "table"), default="table")
        p.add_argument("--max-dim", type=int, default=None, help="capacity bound (env KRING_MAX_DIM)")
        p.add_argument("--seed", type=int, default=0)
        return p

    for name in ("info", "branch"):
        common(sub.add_parser(name))
    for name in ("kernel-verify", "koszul-verify"):
        common(sub.add_parser(name)).add_argument("--degree", type=int, default=2)
    common(sub.add_parser("e2")).add_argument("--qmax", type=int, default=2)
    common(sub.add_parser("ktheory")).add_argument("--twisted", action="store_true")
    p = common(sub.add_parser("intertwiner"), pair_required=False)
    p.add_argument("--k", type=int, default=None, help="single k in 1..n-1 (default all)")
    p.add_argument("--dump", action="store_true", help="include the alpha matrix")
    p = common(sub.add_parser("loop"), pair_required=False)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--samples", type=int, default=30)
    p.add_argument("--matrix", default=None,
                   help="evaluate on this matrix: inline text, @file, or - for stdin")
    return parser


def run(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    token = None
    if args.max_dim is not None:
        if args.max_dim < 1:
            print("error: --max-dim must be positive", file=err)
            return EXIT_USAGE
        token = set_max_dim(args.max_dim)
    try:
        report, ok = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_USAGE
    except UnsupportedTypeError as exc:
        print(f"error: unsupported: {exc}", file=err)
        return EXIT_USAGE
    except CapacityError as exc:
        print(f"error: capacity exceeded: {exc}", file=err)
        return EXIT_CAPACITY
    except MatrixInputError as exc:
        print(f"error: malformed matrix input: {exc}", file=err)
        return EXIT_MATRIX
    except (VerificationError, KringError) as exc:
        print(f"error: verification failed: {exc}", file=err)
        return EXIT_INTERNAL
    finally:
        if token is not None:
            from .errors import _max_dim
            _max_dim.reset(token)
    print(render(report, args.format), file=out)
    return EXIT_OK if ok else EXIT_FAIL


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
