"""Command-line front end.  Every subcommand reads and writes JSON.

Exit status: 0 on success, 1 when a verification fails, 2 on bad usage or input.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .errors import GermError
from .group import word_eval
from .koenigs import Flow, express_as_commutator, linearize, solve_twisted_conjugacy
from .rings import QQ, PAdicRing, parse_ring
from .series import Germ, commutator, compose, invert, jet
from .surface import baumslag_check, baumslag_word, get_presentation, twist_injectivity_scan
from .words import parse_word


class UsageError(Exception):
    pass


class VerificationFailed(Exception):
    def __init__(self, payload: dict):
        super().__init__(payload.get("reason", "verification failed"))
        self.payload = payload


# ---------------------------------------------------------------------------
# input helpers


def _load_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None
    except json.JSONDecodeError as e:
        raise UsageError(f"{path} is not valid JSON: {e}") from None


def _load_germ(path: str, order: int | None) -> Germ:
    obj = _load_json(path)
    try:
        g = Germ.from_json(obj)
    except (KeyError, ValueError, TypeError) as e:
        raise UsageError(f"{path} is not a germ: {e}") from None
    if order is not None:
        if order > g.order:
            raise UsageError(f"--order {order} exceeds the order {g.order} of {path}")
        g = g.truncate(order)
    return g


def _fraction(text: str, flag: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"{flag}: {text!r} is not a rational number") from None


def _ring(args) -> object:
    try:
        return parse_ring(args.ring)
    except ValueError as e:
        raise UsageError(f"--ring: {e}") from None


def _presentation(text: str):
    try:
        return get_presentation(text)
    except ValueError as e:
        raise UsageError(f"--group: {e}") from None


def _word(pres, text: str, flag: str = "--word"):
    try:
        return pres.word(text)
    except ValueError as e:
        raise UsageError(f"{flag}: {e}") from None


def _need_order(args, default: int) -> int:
    n = args.order if args.order is not None else default
    if n < 1:
        raise UsageError("--order must be >= 1")
    return n


# ---------------------------------------------------------------------------
# subcommands


def cmd_compose(args):
    gs = [_load_germ(p, args.order) for p in args.germs]
    out = gs[0]
    for g in gs[1:]:
        out = compose(out, g)
    return out.to_json()


def cmd_invert(args):
    f = _load_germ(args.germ, args.order)
    return invert(f, args.method).to_json()


def cmd_word_eval(args):
    gs = [_load_germ(p, args.order) for p in args.germs]
    pres = _presentation(args.group or f"free:{len(gs)}")
    if len(gs) != len(pres.names):
        raise UsageError(f"{pres.variant} needs {len(pres.names)} germs, got {len(gs)}")
    return word_eval(_word(pres, args.word), gs).to_json()


def cmd_jet(args):
    f = _load_germ(args.germ, None)
    if args.ell > f.order:
        raise UsageError(f"--ell {args.ell} exceeds the germ order {f.order}")
    return jet(f, args.ell).to_json()


def cmd_linearize(args):
    f = _load_germ(args.germ, args.order)
    lin = linearize(f)
    ok = lin.verify(f)
    out = {"h": lin.h.to_json(), "lambda": f.ring.to_json(lin.lam), "mode": lin.mode, "verified": ok}
    if not ok:
        raise VerificationFailed(out)
    return out


def cmd_flow(args):
    f = _load_germ(args.germ, args.order)
    s = f.ring(_fraction(args.s, "--s"))
    return Flow(f)(s).to_json()


def cmd_solve_conjugacy(args):
    g, fb, gb = (_load_germ(p, args.order) for p in (args.g, args.fbar, args.gbar))
    f = solve_twisted_conjugacy(g, fb, gb)
    ok = commutator(f, g) == commutator(fb, gb)
    out = {"f": f.to_json(), "verified": ok}
    if not ok:
        raise VerificationFailed(out)
    return out


def cmd_commutator_split(args):
    f = _load_germ(args.germ, args.order)
    h, m = express_as_commutator(f, f.ring(_fraction(args.lam, "--lambda")))
    ok = commutator(h, m) == f
    out = {"h": h.to_json(), "m": m.to_json(), "verified": ok}
    if not ok:
        raise VerificationFailed(out)
    return out


def cmd_twist_scan(args):
    pres = _presentation(args.group)
    if args.max_N < 1:
        raise UsageError("--max-N must be >= 1")
    scan = twist_injectivity_scan(pres, _word(pres, args.word), args.max_N)
    return scan.to_json(pres)


def cmd_baumslag_check(args):
    names = args.names.split(",") if args.names else None

    def words(text, flag):
        try:
            return [parse_word(t, names) for t in text.split(";")]
        except ValueError as e:
            raise UsageError(f"{flag}: {e}") from None

    gs, cs = words(args.g, "--g"), words(args.c, "--c")
    try:
        ok = baumslag_check(gs, cs)
    except ValueError as e:
        raise UsageError(str(e)) from None
    out = {"hypothesis_holds": ok}
    if args.N is not None:
        w = baumslag_word(gs, cs, args.N)
        out["word"] = w.to_text(names)
        out["trivial"] = w.is_trivial()
    return out


def _default_pair(args, order):
    from .representations import rescaled_free_pair

    return rescaled_free_pair(_ring(args), order)


def cmd_rep_build(args):
    from .representations import (
        build_rep_genus2_flows,
        build_rep_genus2_koenigs,
        build_rep_n4,
        build_rep_nodd,
        free_pair_representation,
        nodd_generators,
        nodd_twist_germs,
        separation_seed,
    )

    order = _need_order(args, 16)
    kind = args.group.lower()
    inputs = [_load_germ(p, args.order) for p in args.germs]
    params = [_fraction(t, "--params") for t in args.params.split(",")] if args.params else None
    N = args.twist

    def pair():
        if inputs:
            if len(inputs) != 2:
                raise UsageError(f"{kind} takes two input germs")
            return inputs
        return _default_pair(args, order)

    if kind == "genus2-flows":
        f1, f2 = pair()
        f0 = compose(invert(f2), invert(f1))
        s = params or [f0.a1**N, f1.a1**N, f2.a1**N]
        if len(s) != 3:
            raise UsageError("--params needs three values for genus2-flows")
        rep = build_rep_genus2_flows(f1, f2, [f1.ring(x) for x in s])
    elif kind == "n4":
        f1, f2 = pair()
        s = params or [invert(compose(f1**2, f2**2)).a1 ** N]
        rep = build_rep_n4(f1, f2, f1.ring(s[0]))
    elif kind.startswith("n-odd"):
        k = int(kind.partition(":")[2] or 2)
        g1, g2 = pair()
        fs = nodd_generators(g1, g2, k)
        gam, dlt = nodd_twist_germs(fs)
        s = params or [gam.a1**N, dlt.a1**N]
        if len(s) != 2:
            raise UsageError("--params needs two values for n-odd")
        rep = build_rep_nodd(fs, [g1.ring(x) for x in s])
    elif kind in ("genus2-koenigs", "genus2-std"):
        if inputs:
            if len(inputs) != 3:
                raise UsageError("genus2-koenigs takes three input germs g, fbar, gbar")
            rep = build_rep_genus2_koenigs(*inputs)
        else:
            rep = separation_seed(order, N, _ring(args))[0]
    elif kind in ("free", "free:2", "free-pair"):
        rep = free_pair_representation(_ring(args), order)
    else:
        raise UsageError(f"--group: unknown representation variant {args.group!r}")
    return rep.to_json()


def _load_rep(path):
    from .representations import Representation

    try:
        return Representation.from_json(_load_json(path))
    except (KeyError, ValueError, TypeError) as e:
        raise UsageError(f"{path} is not a representation: {e}") from None


def cmd_rep_verify(args):
    rep = _load_rep(args.rep)
    fails = rep.relator_failures()
    out = {"verified": not fails, "order": str(rep.order)}
    if fails:
        out["failures"] = [{"relator": r, "first_failing_coefficient": str(n)} for r, n in fails]
        raise VerificationFailed(out)
    return out


def cmd_certify(args):
    from .representations import certify_nontrivial, generic_representation_certify

    if args.symbolic is not None:
        pres = get_presentation("genus2-std")
        words = [_word(pres, w) for w in args.word]
        order = _need_order(args, 8)
        certs = generic_representation_certify(words, args.symbolic, order, ell=args.ell)
        return {"certificates": [c.to_json() for c in certs]}
    if not args.rep:
        raise UsageError("certify needs a representation file or --symbolic")
    rep = _load_rep(args.rep)
    words = [_word(rep.presentation, w) for w in args.word]
    return {"certificates": [c.to_json() for c in certify_nontrivial(rep, words)]}


def cmd_free_pair(args):
    from .representations import explicit_free_pair

    pair = explicit_free_pair(_ring(args), _need_order(args, 24))
    return {"f0": pair.f0.to_json(), "g0": pair.g0.to_json()}


def cmd_padic_membership(args):
    from .padic import gp_membership

    m = gp_membership(_load_germ(args.germ, args.order))
    return {"member": m.member, "failing_index": None if m.failing_index is None else str(m.failing_index)}


def cmd_padic_closure(args):
    from .padic import gp_closure_check

    f, g = _load_germ(args.f, args.order), _load_germ(args.g, args.order)
    res = gp_closure_check(f, g)
    out = {
        "closed": bool(res),
        "composition_member": res.composition.member,
        "inverse_member": res.inverse.member,
    }
    if not res:
        raise VerificationFailed(out)
    return out


def cmd_padic_jet_kernel(args):
    from .padic import jet_kernel_membership

    return {"in_kernel": jet_kernel_membership(_load_germ(args.germ, args.order), args.ell)}


def cmd_padic_derived(args):
    from .padic import derived_free_generators

    ring = _ring(args)
    if not isinstance(ring, PAdicRing):
        raise UsageError("--ring must be padic:p:M")
    return derived_free_generators(args.ell, _need_order(args, 24), ring).to_json()


def cmd_padic_family(args):
    from .padic import parameter_family_sample

    ring = _ring(args)
    if not isinstance(ring, PAdicRing):
        raise UsageError("--ring must be padic:p:M")
    pres = get_presentation("free:2")
    words = [_word(pres, w) for w in args.word]
    rep, certs = parameter_family_sample(_fraction(args.t, "--t"), _need_order(args, 24), words, ring)
    return {"representation": rep.to_json(), "certificates": [c.to_json() for c in certs]}


def _rational_map(text: str):
    from .orbit import RationalMap

    if Path(text).is_file():
        try:
            return RationalMap.parse(_load_json(text))
        except (KeyError, ValueError, TypeError) as e:
            raise UsageError(f"{text} is not a rational map: {e}") from None
    return RationalMap.homothety(_fraction(text, "--f/--g"))


def cmd_orbit_search(args):
    from .orbit import orbit_separation_search, verify_witness

    f, g = _rational_map(args.f), _rational_map(args.g)
    pres = get_presentation("free:2")
    w = _word(pres, args.word)
    wit = orbit_separation_search(f, g, w, budget=args.budget, seed=args.seed)
    out = wit.to_json()
    out["word"] = pres.format(w)
    out["verified"] = verify_witness(wit, f, g)
    if not out["verified"]:
        raise VerificationFailed(out)
    return out


def cmd_acceptance(args):
    from .acceptance import run_all

    only = [int(x) for x in args.only.split(",")] if args.only else None
    results = run_all(args.seed, only)
    for r in results:
        print(r.line(), file=sys.stderr)
    out = {"seed": str(args.seed), "results": [r.to_json() for r in results]}
    if not all(r.passed for r in results):
        raise VerificationFailed(out)
    return out


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="germforge", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"germforge {__version__}")
    sub = ap.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, fn, help_):
        p = sub.add_parser(name, help=help_)
        p.set_defaults(fn=fn)
        p.add_argument("--output", "-o", help="write JSON here instead of stdout")
        p.add_argument("--order", type=int, help="truncation order N")
        return p

    p = add("compose", cmd_compose, "compose germs left to right as f o g o ...")
    p.add_argument("germs", nargs="+")
    p = add("invert", cmd_invert, "compositional inverse")
    p.add_argument("germ")
    p.add_argument("--method", choices=("substitution", "formula"), default="substitution")
    p = add("word-eval", cmd_word_eval, "evaluate a word on germs")
    p.add_argument("germs", nargs="+")
    p.add_argument("--word", required=True)
    p.add_argument("--group", help="presentation naming the generators (default free:m)")
    p = add("jet", cmd_jet, "the ell-jet of a germ")
    p.add_argument("germ")
    p.add_argument("--ell", type=int, required=True)
    p = add("linearize", cmd_linearize, "Koenigs linearization")
    p.add_argument("germ")
    p = add("flow", cmd_flow, "flow(f, s)")
    p.add_argument("germ")
    p.add_argument("--s", required=True)
    p = add("solve-conjugacy", cmd_solve_conjugacy, "tangent f with [f,g] = [fbar,gbar]")
    p.add_argument("g")
    p.add_argument("fbar")
    p.add_argument("gbar")
    p = add("commutator-split", cmd_commutator_split, "write a tangent germ as [h, m_lambda]")
    p.add_argument("germ")
    p.add_argument("--lambda", dest="lam", default="2")
    p = add("twist-scan", cmd_twist_scan, "images of p o tau^N(w)")
    p.add_argument("--group", required=True)
    p.add_argument("--word", required=True)
    p.add_argument("--max-N", dest="max_N", type=int, default=10)
    p = add("baumslag-check", cmd_baumslag_check, "non-commutation hypothesis for g_0 c_1^N g_1 ...")
    p.add_argument("--g", required=True, help="g_0;...;g_n")
    p.add_argument("--c", required=True, help="c_1;...;c_n")
    p.add_argument("--names", help="comma-separated generator names (default g1,g2,...)")
    p.add_argument("--N", type=int)
    p = add("rep-build", cmd_rep_build, "build a certified representation")
    p.add_argument("germs", nargs="*")
    p.add_argument("--group", required=True, help="genus2-flows | n4 | n-odd:k | genus2-koenigs | free:2")
    p.add_argument("--ring", default="QQ")
    p.add_argument("--twist", type=int, default=0, help="twist exponent N for the default parameters")
    p.add_argument("--params", help="explicit flow parameters, comma-separated")
    p = add("rep-verify", cmd_rep_verify, "recheck relators of a representation file")
    p.add_argument("rep")
    p = add("certify", cmd_certify, "nontriviality certificates for words")
    p.add_argument("rep", nargs="?")
    p.add_argument("--word", action="append", required=True)
    p.add_argument("--symbolic", type=int, metavar="M", help="generic genus-two route with M indeterminates")
    p.add_argument("--ell", type=int, default=1)
    p = add("free-pair", cmd_free_pair, "the explicit integral free pair")
    p.add_argument("--ring", default="QQ")
    p = add("padic-membership", cmd_padic_membership, "membership in G_p")
    p.add_argument("germ")
    p = add("padic-closure", cmd_padic_closure, "f o g and f^-1 in G_p")
    p.add_argument("f")
    p.add_argument("g")
    p = add("padic-jet-kernel", cmd_padic_jet_kernel, "membership in the kernel of j_ell")
    p.add_argument("germ")
    p.add_argument("--ell", type=int, required=True)
    p = add("padic-derived", cmd_padic_derived, "two commutator words in the kernel of j_ell")
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--ring", default="padic:5:20")
    p = add("padic-family", cmd_padic_family, "rho_t(a) = m_t o f0, rho_t(b) = g0")
    p.add_argument("--t", required=True)
    p.add_argument("--word", action="append", default=[])
    p.add_argument("--ring", default="padic:5:20")
    p = add("orbit-search", cmd_orbit_search, "polynomial h separating w(h f h^-1, g) from id")
    p.add_argument("--word", required=True)
    p.add_argument("--f", default="2", help="multiplier or rational-map JSON file")
    p.add_argument("--g", default="3", help="multiplier or rational-map JSON file")
    p.add_argument("--budget", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p = add("acceptance", cmd_acceptance, "run the acceptance criteria")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--only", help="comma-separated criterion numbers")
    return ap


def _emit(obj, output: str | None) -> None:
    text = json.dumps(obj, indent=2)
    if output:
        Path(output).write_text(text + "\n")
    else:
        print(text)


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        _emit(args.fn(args), args.output)
        return 0
    except UsageError as e:
        print(f"germforge {args.command}: {e}", file=sys.stderr)
        return 2
    except VerificationFailed as e:
        _emit(e.payload, args.output)
        return 1
    except (GermError, ValueError, ZeroDivisionError) as e:
        _emit({"error": type(e).__name__, "message": str(e)}, args.output)
        return 1


if __name__ == "__main__":
    sys.exit(main())
