"""HTTP surface: endpoints return the library's values; errors carry kinds."""

import pytest
from fastapi.testclient import TestClient

from fthresh.service.app import create_app

A1 = "char 3 / vars x y z / rel x*y - z^2 / ideal m = x, y, z"
MONO = "char 2 / vars x y / ideal a = x^2, y^3 / ideal J = x^4, y^4 / ideal m = x, y"
E8 = ("char 7 / vars x y z / rel x^2 + y^3 + z^5 / "
      "ideal a = x, z / ideal J = y, z")


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


def test_info(client):
    body = client.get("/").json()
    assert body["name"] == "fthresh"
    assert "/v1/nu" in body["endpoints"]


def test_nu_endpoint(client):
    r = client.post("/v1/nu", json={"session": A1, "num": "m", "den": "m",
                                    "emax": 3})
    assert r.status_code == 200
    body = r.json()
    assert [(e["q"], e["nu"]) for e in body["entries"]] == [(3, 3), (9, 12), (27, 39)]
    assert body["entries"][2]["nu_over_q"] == "13/9"
    assert body["entries"][2]["nu_over_q_decimal"] == "~1.444444"
    assert body["f_pure_assumed"] is False


def test_fthresh_endpoint_fills_exact_on_monomial_input(client):
    r = client.post("/v1/fthresh", json={"session": MONO, "num": "a",
                                         "den": "J", "emax": 2})
    body = r.json()
    assert body["exact"] == "10/3"
    assert body["exact_provenance"] == "polyhedral"
    assert body["sup_certified"] is True


def test_exact_threshold_endpoint(client):
    r = client.post("/v1/fthresh-exact", json={"session": MONO, "num": "a",
                                               "den": "J"})
    assert r.json() == {"ring": "F_2[x, y; grevlex]", "value": "10/3",
                        "argmax": [3, 3]}


def test_newton_testideal_jumps(client):
    assert client.post("/v1/fpt", json={"session": MONO, "num": "a"}).json()[
        "value"] == "5/6"
    tau = client.post("/v1/testideal", json={"session": MONO, "num": "a",
                                             "c": "5/6"}).json()
    assert tau["generators"] == [[0, 1], [1, 0]]
    jumps = client.post("/v1/jumps", json={"session": MONO, "num": "a",
                                           "bound": "3/2"}).json()
    assert jumps["jumps"] == ["5/6", "7/6", "4/3"]
    facets = client.post("/v1/newton", json={"session": MONO, "num": "a"}).json()
    assert facets["facets"] == [["1/2", "1/3"]]


def test_mult_length_hs(client):
    mult = client.post("/v1/mult", json={"session": E8, "num": "a"}).json()
    assert mult["multiplicity"] == "3"
    assert mult["method"] == "colength_CM"
    length = client.post("/v1/length", json={"session": E8, "num": "J"}).json()
    assert length["colength"] == 2
    hs = client.post("/v1/hs", json={"session": A1, "num": "m", "nmax": 3}).json()
    assert hs["lengths"] == [1, 4, 9]
    assert hs["extrapolation"] == "2"


def test_closure_endpoints(client):
    tight = client.post("/v1/closure/tight", json={
        "session": "char 3 / vars x y / ideal J = x^2, y^2 / ideal I = x^2, y^2, x*y",
        "J": "J", "I": "I", "emax": 2}).json()
    assert tight["kind"] == "not_in_tight_closure"
    assert tight["certificate"]["q0"] == 3
    integral = client.post("/v1/closure/integral", json={
        "session": "char 5 / vars x y / ideal J = x^2, y^2 / ideal I = x*y",
        "I": "I", "J": "J", "emax": 1}).json()
    assert integral["kind"] == "in_integral_closure"


def test_check_endpoints(client):
    conj = client.post("/v1/check/conjecture", json={
        "session": MONO, "num": "a", "den": "J", "emax": 1}).json()
    assert conj["verdict"] == "holds_exact"
    assert conj["rhs"] == "144/25"
    homog = client.post("/v1/check/homogeneous", json={
        "session": "char 5 / vars x y / ideal m = x, y / ideal J = x^2, y^2",
        "num": "m", "den": "J"}).json()
    assert homog["big_n"] == 3 and homog["t"] == [2]
    onedim = client.post("/v1/check/onedim", json={
        "session": "char 5 / vars x y / rel y^2 - x^3 / ideal m = x, y / ideal X = x",
        "num": "m", "den": "X", "emax": 2}).json()
    assert onedim["gap"] == "0"
    another = client.post("/v1/check/another", json={
        "session": MONO, "num": "a", "den": "J"}).json()
    assert another["verdict"] == "holds_exact"
    diag = client.post("/v1/check/diagonal", json={
        "session": MONO, "num": "a", "den": "J"}).json()
    assert diag["verdict"] == "holds_exact"


def test_battery_endpoint(client):
    body = client.post("/v1/battery", json={"seed": 5, "count": 3}).json()
    assert body["all_hold"] is True
    assert len(body["rows"]) == 3


def test_error_kinds(client):
    bad_parse = client.post("/v1/nu", json={"session": "char 4 / vars x",
                                            "num": "a", "den": "a"})
    assert bad_parse.status_code == 400
    assert bad_parse.json()["kind"] == "parse_error"

    precondition = client.post("/v1/check/conjecture", json={
        "session": "char 5 / vars x y / ideal a = x / ideal J = x^2, y^2",
        "num": "J", "den": "a"})
    assert precondition.status_code == 409
    assert precondition.json()["kind"] == "precondition"

    budget = client.post("/v1/nu", json={"session": A1, "num": "m", "den": "m",
                                         "emax": 6, "budget": 5})
    assert budget.status_code == 429
    assert budget.json()["kind"] == "budget"

    shape = client.post("/v1/nu", json={"session": A1, "num": "m"})
    assert shape.status_code == 422  # fastapi request validation


def test_unknown_ideal_is_a_parse_error(client):
    r = client.post("/v1/nu", json={"session": MONO, "num": "zzz", "den": "J"})
    assert r.status_code == 400
    assert "zzz" in r.json()["message"]
