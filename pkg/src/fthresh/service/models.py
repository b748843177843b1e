"""Pydantic request/response models for the service and the CLI client.

Every exact rational travels as a "num/den" string (plain "num" when the
denominator is 1); decimals are separate fields explicitly marked
approximate.  Session text is sent inline so the service never touches the
client's filesystem.
"""

from __future__ import annotations

from pydantic import BaseModel, Field


class SessionRequest(BaseModel):
    session: str = Field(description="session text (char/vars/order/rel/ideal lines)")
    budget: int | None = Field(default=None, gt=0)


class NuRequest(SessionRequest):
    num: str
    den: str
    emax: int = Field(default=2, ge=1, le=6)
    assert_f_pure: bool = False


class NuEntry(BaseModel):
    e: int
    q: int
    nu: int
    nu_over_q: str
    nu_over_q_decimal: str


class NuResponse(BaseModel):
    ring: str
    num: str
    den: str
    f_pure_assumed: bool
    entries: list[NuEntry]


class ThresholdResponse(BaseModel):
    ring: str
    num: str
    den: str
    f_pure_assumed: bool
    entries: list[NuEntry]
    sup_lower: str
    sup_certified: bool
    affine_fit: str | None
    upper_hint: str | None
    upper_certified: bool
    exact: str | None
    exact_provenance: str


class IdealRequest(SessionRequest):
    num: str


class ExactThresholdRequest(SessionRequest):
    num: str
    den: str


class ExactThresholdResponse(BaseModel):
    ring: str
    value: str
    argmax: list[int]


class FptResponse(BaseModel):
    ring: str
    value: str


class TestIdealRequest(IdealRequest):
    c: str = Field(description="exponent, as an exact rational string")


class TestIdealResponse(BaseModel):
    exponent: str
    generators: list[list[int]]


class JumpsRequest(IdealRequest):
    bound: str


class JumpsResponse(BaseModel):
    bound: str
    jumps: list[str]


class NewtonResponse(BaseModel):
    dim: int
    facets: list[list[str]]


class MultResponse(BaseModel):
    ideal: str
    colength: int
    multiplicity: str
    method: str
    assumptions: list[str]


class LengthResponse(BaseModel):
    ideal: str
    colength: int


class HsRequest(IdealRequest):
    nmax: int = Field(default=3, ge=1, le=8)


class HsResponse(BaseModel):
    ring_dim: int
    lengths: list[int]
    normalized: list[str]
    extrapolation: str | None
    stabilized: bool


class TightRequest(SessionRequest):
    j: str = Field(alias="J")
    i: str = Field(alias="I")
    emax: int = Field(default=2, ge=1, le=6)
    asserted_hypotheses: list[str] = []

    model_config = {"populate_by_name": True}


class IntegralRequest(SessionRequest):
    i: str = Field(alias="I")
    j: str = Field(alias="J")
    emax: int = Field(default=2, ge=1, le=6)
    assert_f_pure: bool = False

    model_config = {"populate_by_name": True}


class CertificateModel(BaseModel):
    q0: int
    witness: str
    verified: bool


class ClosureResponse(BaseModel):
    kind: str
    e_max: int
    hypothesis_flags: list[str]
    certificate: CertificateModel | None
    nu_entries: list[NuEntry] | None
    witness_q: int | None
    membership: list[tuple[list[int], bool]] | None
    notes: list[str]


class CheckRequest(SessionRequest):
    num: str
    den: str
    emax: int = Field(default=2, ge=1, le=6)
    assert_f_pure: bool = False


class BoundResponse(BaseModel):
    lhs: str
    rhs: str | None
    threshold_value: str | None
    threshold_provenance: str
    d: int
    verdict: str
    assumptions: list[str]
    notes: list[str]


class HomogeneousResponse(BaseModel):
    n: int
    a_degrees: list[int]
    j_degrees: list[int]
    big_n: int
    t: list[int]
    prefix_ok: list[bool]
    final_ok: bool
    diagnostics: list[str]
    bound: BoundResponse


class OnedimRequest(CheckRequest):
    hs_nmax: int = Field(default=4, ge=1, le=8)


class OnedimResponse(BaseModel):
    predicted: str
    gap: str
    sup_lower: str
    affine_fit: str | None
    e_num: str
    e_den: str
    assumptions: list[str]


class BatteryRequest(BaseModel):
    seed: int = 20080614
    count: int = Field(default=40, ge=1, le=500)


class BatteryRow(BaseModel):
    d: int
    a: str
    diagonal: list[int]
    diagonal_check: str
    diagonal_lhs: str
    diagonal_rhs: str
    another_check: str
    another_lhs: str
    another_rhs: str


class BatteryResponse(BaseModel):
    seed: int
    count: int
    all_hold: bool
    rows: list[BatteryRow]


class ErrorBody(BaseModel):
    kind: str
    message: str
