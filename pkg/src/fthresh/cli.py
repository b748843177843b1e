"""Command-line front end.

One subcommand per invocation, deterministic output.  By default requests
are dispatched in-process through the same handlers the HTTP service uses;
pass --server URL to send them to a running service instead.  Exit codes:
0 success, 1 usage or session-syntax error, 2 precondition violation,
3 budget exceeded, 4 internal invariant breach.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from pydantic import ValidationError

from .errors import (BudgetExceededError, FThreshError, InternalCheckError,
                     PreconditionError, SessionSyntaxError)
from .service import models
from .service.handlers import ROUTES

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PRECONDITION = 2
EXIT_BUDGET = 3
EXIT_INTERNAL = 4


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def _default_budget() -> int | None:
    raw = os.environ.get("FT_BUDGET")
    return int(raw) if raw else None


def _add_common(p: argparse.ArgumentParser, *, session: bool = True) -> None:
    if session:
        p.add_argument("--session", required=True, help="path to a session file")
    p.add_argument("--budget", type=int, default=_default_budget(),
                   help="step budget (default: FT_BUDGET env var or built-in)")
    p.add_argument("--json", action="store_true", dest="as_json",
                   help="emit a single JSON object")
    p.add_argument("--server", default=None,
                   help="base URL of a running service; default is in-process")


def build_parser() -> _Parser:
    parser = _Parser(prog="fthresh", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def cmd(name: str, path: str, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.set_defaults(path=path)
        _add_common(p, session=(name != "battery"))
        return p

    p = cmd("nu", "/v1/nu", help="nu-sequence table")
    p.add_argument("--num", required=True)
    p.add_argument("--den", required=True)
    p.add_argument("--emax", type=int, default=2)
    p.add_argument("--assert-f-pure", action="store_true")

    p = cmd("fthresh", "/v1/fthresh", help="threshold estimate from the nu sequence")
    p.add_argument("--num", required=True)
    p.add_argument("--den", required=True)
    p.add_argument("--emax", type=int, default=2)
    p.add_argument("--assert-f-pure", action="store_true")

    p = cmd("fthresh-exact", "/v1/fthresh-exact",
            help="exact monomial F-threshold via the Newton polyhedron")
    p.add_argument("--num", required=True)
    p.add_argument("--den", required=True)

    p = cmd("fpt", "/v1/fpt", help="F-pure threshold of a monomial ideal")
    p.add_argument("--num", required=True)

    p = cmd("testideal", "/v1/testideal", help="monomial generalized test ideal")
    p.add_argument("--num", required=True)
    p.add_argument("--c", required=True, help="exponent, an exact rational")

    p = cmd("jumps", "/v1/jumps", help="jumping exponents strictly below a bound")
    p.add_argument("--num", required=True)
    p.add_argument("--bound", required=True)

    p = cmd("newton", "/v1/newton", help="facet normals of the Newton polyhedron")
    p.add_argument("--num", required=True)

    p = cmd("mult", "/v1/mult", help="exact multiplicity report")
    p.add_argument("--num", required=True)

    p = cmd("length", "/v1/length", help="colength of a zero-dimensional ideal")
    p.add_argument("--num", required=True)

    p = cmd("hs", "/v1/hs", help="Hilbert-Samuel normalized length sequence")
    p.add_argument("--num", required=True)
    p.add_argument("--nmax", type=int, default=3)

    p = sub.add_parser("closure", help="tight / integral closure tests")
    closure_sub = p.add_subparsers(dest="kind", required=True)
    p = closure_sub.add_parser("tight")
    p.set_defaults(path="/v1/closure/tight")
    _add_common(p)
    p.add_argument("--J", required=True, dest="den_j")
    p.add_argument("--I", required=True, dest="num_i")
    p.add_argument("--emax", type=int, default=2)
    p = closure_sub.add_parser("integral")
    p.set_defaults(path="/v1/closure/integral")
    _add_common(p)
    p.add_argument("--I", required=True, dest="num_i")
    p.add_argument("--J", required=True, dest="den_j")
    p.add_argument("--emax", type=int, default=2)
    p.add_argument("--assert-f-pure", action="store_true")

    p = sub.add_parser("check", help="multiplicity-bound checkers")
    check_sub = p.add_subparsers(dest="kind", required=True)
    for kind in ("conjecture", "diagonal", "homogeneous", "another"):
        q = check_sub.add_parser(kind)
        q.set_defaults(path=f"/v1/check/{kind}")
        _add_common(q)
        q.add_argument("--num", required=True)
        q.add_argument("--den", required=True)
        q.add_argument("--emax", type=int, default=2)
        q.add_argument("--assert-f-pure", action="store_true")
    q = check_sub.add_parser("onedim")
    q.set_defaults(path="/v1/check/onedim")
    _add_common(q)
    q.add_argument("--num", required=True)
    q.add_argument("--den", required=True)
    q.add_argument("--emax", type=int, default=2)
    q.add_argument("--hs-nmax", type=int, default=4)

    p = cmd("battery", "/v1/battery", help="deterministic monomial battery")
    p.add_argument("--seed", type=int, default=20080614)
    p.add_argument("--count", type=int, default=40)

    return parser


def _read_session(args) -> str:
    try:
        with open(args.session, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise SystemExit(_fail(f"cannot read session file: {exc}", EXIT_USAGE))


def _build_request(args):
    path = args.path
    model = ROUTES[path][0]
    payload: dict = {}
    if path != "/v1/battery":
        payload["session"] = _read_session(args)
        payload["budget"] = args.budget
    for attr, key in (("num", "num"), ("den", "den"), ("emax", "emax"),
                      ("assert_f_pure", "assert_f_pure"), ("c", "c"),
                      ("bound", "bound"), ("nmax", "nmax"),
                      ("hs_nmax", "hs_nmax"), ("seed", "seed"),
                      ("count", "count")):
        if hasattr(args, attr):
            payload[key] = getattr(args, attr)
    if hasattr(args, "num_i"):
        payload["I"] = args.num_i
        payload["J"] = args.den_j
    return model.model_validate(payload)


def _dispatch(args, request):
    path = args.path
    if args.server:
        import httpx

        response = httpx.post(args.server.rstrip("/") + path,
                              json=request.model_dump(mode="json", by_alias=True),
                              timeout=600.0)
        if response.status_code != 200:
            body = response.json()
            kind = body.get("kind", "internal")
            message = body.get("message", response.text)
            if kind == "parse_error":
                raise SessionSyntaxError(message, 0, 0)
            exc = {"precondition": PreconditionError,
                   "budget": BudgetExceededError}.get(kind, InternalCheckError)
            raise exc(message)
        return ROUTES[path][2].model_validate(response.json())
    return ROUTES[path][1](request)


# ---------------------------------------------------------------------------
# formatting


def _kv(key: str, value) -> str:
    return f"{key}\t{value if value is not None else '-'}"


def _entry_table(entries) -> list[str]:
    lines = ["e\tq\tnu\tnu/q\tnu/q~"]
    for entry in entries:
        lines.append(f"{entry.e}\t{entry.q}\t{entry.nu}\t{entry.nu_over_q}"
                     f"\t{entry.nu_over_q_decimal}")
    return lines


def _fmt_nu(resp: models.NuResponse) -> str:
    lines = [f"# ring {resp.ring}", f"# num {resp.num}", f"# den {resp.den}",
             _kv("f_pure_assumed", str(resp.f_pure_assumed).lower())]
    lines += _entry_table(resp.entries)
    return "\n".join(lines)


def _fmt_fthresh(resp: models.ThresholdResponse) -> str:
    lines = [f"# ring {resp.ring}", f"# num {resp.num}", f"# den {resp.den}"]
    lines += _entry_table(resp.entries)
    lines.append(_kv("sup_lower", resp.sup_lower)
                 + ("\tcertified" if resp.sup_certified else "\tuncertified"))
    lines.append(_kv("affine_fit", resp.affine_fit) + "\theuristic")
    lines.append(_kv("upper_hint", resp.upper_hint)
                 + ("\tcertified" if resp.upper_certified else "\theuristic"))
    lines.append(_kv("exact", resp.exact) + f"\t{resp.exact_provenance}")
    lines.append(_kv("f_pure_assumed", str(resp.f_pure_assumed).lower()))
    return "\n".join(lines)


def _fmt_exact(resp: models.ExactThresholdResponse) -> str:
    u = ", ".join(str(x) for x in resp.argmax)
    return f"{resp.value} at u=({u})"


def _fmt_fpt(resp: models.FptResponse) -> str:
    return _kv("fpt", resp.value)


def _fmt_testideal(resp: models.TestIdealResponse) -> str:
    gens = " ".join("(" + ",".join(str(x) for x in g) + ")" for g in resp.generators)
    return "\n".join([_kv("exponent", resp.exponent), _kv("generators", gens)])


def _fmt_jumps(resp: models.JumpsResponse) -> str:
    return "\n".join([_kv("bound", resp.bound)] + [f"jump\t{j}" for j in resp.jumps])


def _fmt_newton(resp: models.NewtonResponse) -> str:
    lines = [_kv("dim", resp.dim)]
    for w in resp.facets:
        lines.append("facet\t" + "\t".join(w))
    return "\n".join(lines)


def _fmt_mult(resp: models.MultResponse) -> str:
    lines = [_kv("ideal", resp.ideal), _kv("colength", resp.colength),
             _kv("multiplicity", resp.multiplicity), _kv("method", resp.method)]
    lines += [f"assumption\t{a}" for a in resp.assumptions]
    return "\n".join(lines)


def _fmt_length(resp: models.LengthResponse) -> str:
    return "\n".join([_kv("ideal", resp.ideal), _kv("colength", resp.colength)])


def _fmt_hs(resp: models.HsResponse) -> str:
    lines = [_kv("ring_dim", resp.ring_dim), "n\tlength\tnormalized"]
    for n, (ell, norm) in enumerate(zip(resp.lengths, resp.normalized), start=1):
        lines.append(f"{n}\t{ell}\t{norm}")
    lines.append(_kv("extrapolation", resp.extrapolation))
    lines.append(_kv("stabilized", str(resp.stabilized).lower()))
    return "\n".join(lines)


def _fmt_closure(resp: models.ClosureResponse) -> str:
    lines = [_kv("verdict", resp.kind), _kv("e_max", resp.e_max)]
    if resp.certificate is not None:
        lines.append(f"certificate\tq0={resp.certificate.q0}"
                     f"\t{resp.certificate.witness}"
                     f"\tverified={str(resp.certificate.verified).lower()}")
    if resp.witness_q is not None:
        lines.append(_kv("witness_q", resp.witness_q))
    if resp.membership is not None:
        for exp, ok in resp.membership:
            vec = "(" + ",".join(str(x) for x in exp) + ")"
            lines.append(f"membership\t{vec}\t{'in' if ok else 'out'}")
    if resp.nu_entries is not None:
        lines += _entry_table(resp.nu_entries)
    lines += [f"hypothesis\t{f}" for f in resp.hypothesis_flags]
    lines += [f"note\t{n}" for n in resp.notes]
    return "\n".join(lines)


def _fmt_bound(resp: models.BoundResponse) -> str:
    lines = [_kv("verdict", resp.verdict), _kv("lhs", resp.lhs),
             _kv("rhs", resp.rhs), _kv("threshold", resp.threshold_value),
             _kv("threshold_provenance", resp.threshold_provenance),
             _kv("d", resp.d)]
    lines += [f"assumption\t{a}" for a in resp.assumptions]
    lines += [f"note\t{n}" for n in resp.notes]
    return "\n".join(lines)


def _fmt_homogeneous(resp: models.HomogeneousResponse) -> str:
    lines = [_kv("n", resp.n),
             _kv("a_degrees", " ".join(map(str, resp.a_degrees))),
             _kv("j_degrees", " ".join(map(str, resp.j_degrees))),
             _kv("N", resp.big_n),
             _kv("t", " ".join(map(str, resp.t)) or "-"),
             _kv("prefix_ok", " ".join(str(b).lower() for b in resp.prefix_ok) or "-"),
             _kv("final_ok", str(resp.final_ok).lower())]
    lines += [f"diagnostic\t{x}" for x in resp.diagnostics]
    lines.append("# headline bound")
    lines.append(_fmt_bound(resp.bound))
    return "\n".join(lines)


def _fmt_onedim(resp: models.OnedimResponse) -> str:
    lines = [_kv("predicted", resp.predicted), _kv("gap", resp.gap),
             _kv("sup_lower", resp.sup_lower), _kv("affine_fit", resp.affine_fit),
             _kv("e_num", resp.e_num), _kv("e_den", resp.e_den)]
    lines += [f"assumption\t{a}" for a in resp.assumptions]
    return "\n".join(lines)


def _fmt_battery(resp: models.BatteryResponse) -> str:
    lines = [_kv("seed", resp.seed), _kv("count", resp.count),
             _kv("all_hold", str(resp.all_hold).lower()),
             "d\ta\tdiagonal\tdiag_verdict\tdiag_lhs\tdiag_rhs"
             "\tanother_verdict\tanother_lhs\tanother_rhs"]
    for r in resp.rows:
        diag = ",".join(map(str, r.diagonal))
        lines.append(f"{r.d}\t{r.a}\t{diag}\t{r.diagonal_check}\t{r.diagonal_lhs}"
                     f"\t{r.diagonal_rhs}\t{r.another_check}\t{r.another_lhs}"
                     f"\t{r.another_rhs}")
    return "\n".join(lines)


_FORMATTERS = {
    "/v1/nu": _fmt_nu,
    "/v1/fthresh": _fmt_fthresh,
    "/v1/fthresh-exact": _fmt_exact,
    "/v1/fpt": _fmt_fpt,
    "/v1/testideal": _fmt_testideal,
    "/v1/jumps": _fmt_jumps,
    "/v1/newton": _fmt_newton,
    "/v1/mult": _fmt_mult,
    "/v1/length": _fmt_length,
    "/v1/hs": _fmt_hs,
    "/v1/closure/tight": _fmt_closure,
    "/v1/closure/integral": _fmt_closure,
    "/v1/check/conjecture": _fmt_bound,
    "/v1/check/diagonal": _fmt_bound,
    "/v1/check/homogeneous": _fmt_homogeneous,
    "/v1/check/onedim": _fmt_onedim,
    "/v1/check/another": _fmt_bound,
    "/v1/battery": _fmt_battery,
}


def _fail(message: str, code: int) -> int:
    sys.stderr.write(f"fthresh: {message}\n")
    return code


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        request = _build_request(args)
        response = _dispatch(args, request)
    except SystemExit as exc:
        return int(exc.code or 0)
    except SessionSyntaxError as exc:
        return _fail(f"session error: {exc}", EXIT_USAGE)
    except ValidationError as exc:
        return _fail(f"bad request: {exc.errors()[0].get('msg', exc)}", EXIT_USAGE)
    except BudgetExceededError as exc:
        return _fail(str(exc), EXIT_BUDGET)
    except InternalCheckError as exc:
        return _fail(f"internal invariant breach: {exc}", EXIT_INTERNAL)
    except PreconditionError as exc:
        return _fail(f"precondition violated: {exc}", EXIT_PRECONDITION)
    except FThreshError as exc:
        return _fail(str(exc), EXIT_PRECONDITION)
    except ValueError as exc:
        return _fail(str(exc), EXIT_USAGE)

    if args.as_json:
        body = {"command": args.path, **response.model_dump(mode="json")}
        print(json.dumps(body, sort_keys=True))
    else:
        print(_FORMATTERS[args.path](response))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
