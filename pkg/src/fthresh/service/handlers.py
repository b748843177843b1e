"""Shared dispatch layer: the FastAPI app and the CLI both route through
these handlers, so local and remote invocations produce identical values."""

from __future__ import annotations

from fractions import Fraction

from .. import bounds, closure, frobenius, multiplicity, newton
from ..errors import PreconditionError
from ..exactnum import decimal_string, format_rational, parse_rational
from ..groebner import Budget
from ..poly import Ideal
from ..sessions import Session, parse_session
from . import models


def _budget(req) -> Budget | None:
    return Budget(req.budget) if getattr(req, "budget", None) else None


def _session(req) -> Session:
    return parse_session(req.session)


def _rat(x: Fraction | None) -> str | None:
    return None if x is None else format_rational(x)


def _entries(entries) -> list[models.NuEntry]:
    return [models.NuEntry(e=e, q=q, nu=n,
                           nu_over_q=format_rational(Fraction(n, q)),
                           nu_over_q_decimal=decimal_string(Fraction(n, q)))
            for e, q, n in entries]


def _monomial(session: Session, name: str) -> newton.MonomialIdeal:
    return newton.MonomialIdeal.from_ideal(session.ideal(name))


def handle_nu(req: models.NuRequest) -> models.NuResponse:
    s = _session(req)
    seq = frobenius.nu_sequence(s.ideal(req.num), s.ideal(req.den), req.emax,
                                assert_f_pure=req.assert_f_pure, budget=_budget(req))
    return models.NuResponse(ring=repr(s.ring), num=str(seq.a), den=str(seq.J),
                             f_pure_assumed=seq.f_pure_assumed,
                             entries=_entries(seq.entries))


def handle_fthresh(req: models.NuRequest) -> models.ThresholdResponse:
    s = _session(req)
    a, J = s.ideal(req.num), s.ideal(req.den)
    seq = frobenius.nu_sequence(a, J, req.emax, assert_f_pure=req.assert_f_pure,
                                budget=_budget(req))
    est = frobenius.threshold_estimate(seq)
    exact = None
    provenance = est.exact_provenance
    if (s.ring.is_polynomial_ring
            and all(g.is_monomial for g in a.generators)
            and all(g.is_monomial for g in J.generators)):
        Jm = newton.MonomialIdeal.from_ideal(J)
        if Jm.is_zero_dimensional:
            exact, _ = newton.monomial_fthreshold(newton.MonomialIdeal.from_ideal(a), Jm)
            provenance = "polyhedral"
    return models.ThresholdResponse(
        ring=repr(s.ring), num=str(a), den=str(J),
        f_pure_assumed=seq.f_pure_assumed, entries=_entries(seq.entries),
        sup_lower=format_rational(est.sup_lower), sup_certified=est.sup_certified,
        affine_fit=_rat(est.affine_fit), upper_hint=_rat(est.upper_hint),
        upper_certified=est.upper_certified, exact=_rat(exact),
        exact_provenance=provenance)


def handle_fthresh_exact(req: models.ExactThresholdRequest) -> models.ExactThresholdResponse:
    s = _session(req)
    value, argmax = newton.monomial_fthreshold(_monomial(s, req.num),
                                               _monomial(s, req.den))
    return models.ExactThresholdResponse(ring=repr(s.ring),
                                         value=format_rational(value),
                                         argmax=list(argmax))


def handle_fpt(req: models.IdealRequest) -> models.FptResponse:
    s = _session(req)
    return models.FptResponse(ring=repr(s.ring),
                              value=format_rational(newton.fpt(_monomial(s, req.num))))


def handle_testideal(req: models.TestIdealRequest) -> models.TestIdealResponse:
    s = _session(req)
    report = newton.test_ideal_monomial(_monomial(s, req.num), parse_rational(req.c))
    return models.TestIdealResponse(exponent=format_rational(report.exponent),
                                    generators=[list(g) for g in report.generators])


def handle_jumps(req: models.JumpsRequest) -> models.JumpsResponse:
    s = _session(req)
    jumps = newton.jumping_exponents(_monomial(s, req.num), parse_rational(req.bound))
    return models.JumpsResponse(bound=req.bound,
                                jumps=[format_rational(j) for j in jumps])


def handle_newton(req: models.IdealRequest) -> models.NewtonResponse:
    s = _session(req)
    P = newton.newton_polyhedron(_monomial(s, req.num))
    return models.NewtonResponse(dim=P.dim,
                                 facets=[[format_rational(x) for x in w]
                                         for w in P.facets])


def handle_mult(req: models.IdealRequest) -> models.MultResponse:
    s = _session(req)
    ideal = s.ideal(req.num)
    report = multiplicity.multiplicity_exact(ideal, _budget(req))
    if report is None:
        raise PreconditionError(
            "no exact multiplicity path: the ideal is neither monomial in a "
            "polynomial ring nor a full system of parameters; use `hs`")
    return models.MultResponse(ideal=report.ideal, colength=report.colength,
                               multiplicity=format_rational(report.multiplicity),
                               method=report.method,
                               assumptions=list(report.assumptions))


def handle_length(req: models.IdealRequest) -> models.LengthResponse:
    s = _session(req)
    ideal = s.ideal(req.num)
    return models.LengthResponse(ideal=str(ideal),
                                 colength=multiplicity.colength(ideal, _budget(req)))


def handle_hs(req: models.HsRequest) -> models.HsResponse:
    s = _session(req)
    est = multiplicity.hs_estimate(s.ideal(req.num), req.nmax, _budget(req))
    return models.HsResponse(ring_dim=est.ring_dim, lengths=list(est.lengths),
                             normalized=[format_rational(x) for x in est.normalized],
                             extrapolation=_rat(est.extrapolation),
                             stabilized=est.stabilized)


def _closure_response(verdict: closure.ClosureVerdict) -> models.ClosureResponse:
    cert = None
    if verdict.certificate is not None:
        cert = models.CertificateModel(q0=verdict.certificate.q0,
                                       witness=verdict.certificate.witness,
                                       verified=verdict.certificate.verified)
    return models.ClosureResponse(
        kind=verdict.kind, e_max=verdict.e_max,
        hypothesis_flags=list(verdict.hypothesis_flags), certificate=cert,
        nu_entries=None if verdict.nu_entries is None else _entries(verdict.nu_entries),
        witness_q=verdict.witness_q,
        membership=None if verdict.membership is None else [
            (list(exp), ok) for exp, ok in verdict.membership],
        notes=list(verdict.notes))


def handle_closure_tight(req: models.TightRequest) -> models.ClosureResponse:
    s = _session(req)
    verdict = closure.tight_certificate(s.ideal(req.j), s.ideal(req.i), req.emax,
                                        budget=_budget(req),
                                        asserted_hypotheses=req.asserted_hypotheses)
    return _closure_response(verdict)


def handle_closure_integral(req: models.IntegralRequest) -> models.ClosureResponse:
    s = _session(req)
    verdict = closure.integral_test(s.ideal(req.i), s.ideal(req.j), req.emax,
                                    assert_f_pure=req.assert_f_pure,
                                    budget=_budget(req))
    return _closure_response(verdict)


def _bound_response(report: bounds.BoundReport) -> models.BoundResponse:
    return models.BoundResponse(
        lhs=format_rational(report.lhs), rhs=_rat(report.rhs),
        threshold_value=_rat(report.threshold_value),
        threshold_provenance=report.threshold_provenance, d=report.d,
        verdict=report.verdict, assumptions=list(report.assumptions),
        notes=list(report.notes))


def handle_check_conjecture(req: models.CheckRequest) -> models.BoundResponse:
    s = _session(req)
    report = bounds.conjecture_check(s.ideal(req.num), s.ideal(req.den), req.emax,
                                     assert_f_pure=req.assert_f_pure,
                                     budget=_budget(req))
    return _bound_response(report)


def _diagonal_exponents(J: newton.MonomialIdeal) -> tuple[int, ...]:
    exponents = [0] * J.dim
    for g in J.gens:
        support = [i for i, e in enumerate(g) if e]
        if len(support) != 1:
            raise PreconditionError(
                "diagonal check needs a denominator generated by pure powers")
        exponents[support[0]] = g[support[0]]
    if any(e == 0 for e in exponents):
        raise PreconditionError("diagonal denominator misses a variable")
    return tuple(exponents)


def handle_check_diagonal(req: models.CheckRequest) -> models.BoundResponse:
    s = _session(req)
    J = _monomial(s, req.den)
    report = bounds.diagonal_check(_monomial(s, req.num), _diagonal_exponents(J))
    return _bound_response(report)


def handle_check_another(req: models.CheckRequest) -> models.BoundResponse:
    s = _session(req)
    report = bounds.another_check(_monomial(s, req.num), _monomial(s, req.den))
    return _bound_response(report)


def handle_check_homogeneous(req: models.CheckRequest) -> models.HomogeneousResponse:
    s = _session(req)
    report, bound = bounds.homogeneous_check(s.ideal(req.num), s.ideal(req.den),
                                             budget=_budget(req))
    return models.HomogeneousResponse(
        n=report.n, a_degrees=list(report.a_degrees),
        j_degrees=list(report.j_degrees), big_n=report.N, t=list(report.t),
        prefix_ok=list(report.prefix_ok), final_ok=report.final_ok,
        diagnostics=list(report.diagnostics), bound=_bound_response(bound))


def handle_check_onedim(req: models.OnedimRequest) -> models.OnedimResponse:
    s = _session(req)
    report = bounds.onedim_check(s.ideal(req.num), s.ideal(req.den), req.emax,
                                 hs_n_max=req.hs_nmax, budget=_budget(req))
    return models.OnedimResponse(
        predicted=format_rational(report.predicted),
        gap=format_rational(report.gap),
        sup_lower=format_rational(report.estimate.sup_lower),
        affine_fit=_rat(report.estimate.affine_fit),
        e_num=format_rational(report.e_a), e_den=format_rational(report.e_J),
        assumptions=list(report.assumptions))


def handle_battery(req: models.BatteryRequest) -> models.BatteryResponse:
    report = bounds.run_battery(seed=req.seed, count=req.count)
    rows = [models.BatteryRow(
        d=r["d"], a=r["a"], diagonal=list(r["diagonal"]),
        diagonal_check=r["diagonal_check"],
        diagonal_lhs=format_rational(r["diagonal_lhs"]),
        diagonal_rhs=format_rational(r["diagonal_rhs"]),
        another_check=r["another_check"],
        another_lhs=format_rational(r["another_lhs"]),
        another_rhs=format_rational(r["another_rhs"])) for r in report.rows]
    return models.BatteryResponse(seed=report.seed, count=report.count,
                                  all_hold=report.all_hold, rows=rows)


# route path -> (request model, handler, response model); shared with the CLI.
ROUTES = {
    "/v1/nu": (models.NuRequest, handle_nu, models.NuResponse),
    "/v1/fthresh": (models.NuRequest, handle_fthresh, models.ThresholdResponse),
    "/v1/fthresh-exact": (models.ExactThresholdRequest, handle_fthresh_exact,
                          models.ExactThresholdResponse),
    "/v1/fpt": (models.IdealRequest, handle_fpt, models.FptResponse),
    "/v1/testideal": (models.TestIdealRequest, handle_testideal,
                      models.TestIdealResponse),
    "/v1/jumps": (models.JumpsRequest, handle_jumps, models.JumpsResponse),
    "/v1/newton": (models.IdealRequest, handle_newton, models.NewtonResponse),
    "/v1/mult": (models.IdealRequest, handle_mult, models.MultResponse),
    "/v1/length": (models.IdealRequest, handle_length, models.LengthResponse),
    "/v1/hs": (models.HsRequest, handle_hs, models.HsResponse),
    "/v1/closure/tight": (models.TightRequest, handle_closure_tight,
                          models.ClosureResponse),
    "/v1/closure/integral": (models.IntegralRequest, handle_closure_integral,
                             models.ClosureResponse),
    "/v1/check/conjecture": (models.CheckRequest, handle_check_conjecture,
                             models.BoundResponse),
    "/v1/check/diagonal": (models.CheckRequest, handle_check_diagonal,
                           models.BoundResponse),
    "/v1/check/homogeneous": (models.CheckRequest, handle_check_homogeneous,
                              models.HomogeneousResponse),
    "/v1/check/onedim": (models.OnedimRequest, handle_check_onedim,
                         models.OnedimResponse),
    "/v1/check/another": (models.CheckRequest, handle_check_another,
                          models.BoundResponse),
    "/v1/battery": (models.BatteryRequest, handle_battery, models.BatteryResponse),
}
