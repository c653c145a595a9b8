import pytest
from fastapi.testclient import TestClient

from src.main import app
from src.utils import constant

PENTAGON = {
    "carrier": ["0", "a", "b", "c", "1"],
    "leq": [["0", "a"], ["a", "b"], ["b", "1"], ["0", "c"], ["c", "1"]],
}


@pytest.fixture(scope="module")
def client():
    with TestClient(app) as client:
        yield client


def test_health(client):
    response = client.get("/health")
    assert response.status_code == 200
    assert response.json() == {"status": "OK"}


def test_request_id_header(client):
    response = client.post("/model/universe", json={"structure": "m3", "rank": 1})
    assert response.headers["X-Request-ID"]


def test_universe(client):
    response = client.post("/model/universe", json={"structure": "m3", "rank": 3})
    assert response.status_code == 200
    body = response.json()
    assert body["status"] == "success"
    assert body["exitCode"] == constant.EXIT_VALID
    assert body["response"]["counts"] == {"1": 1, "2": 4, "3": 256}


def test_universe_too_large(client):
    response = client.post("/model/universe", json={"structure": "m3", "rank": 4})
    assert response.status_code == 413
    body = response.json()
    assert body["exitCode"] == constant.EXIT_RESOURCE
    assert body["error"] == "UniverseTooLarge"


def test_eval(client):
    response = client.post("/model/eval", json={"structure": "m3", "formula": "{} in {{}: 1/2}"})
    assert response.status_code == 200
    assert response.json()["response"]["value"] == "1/2"


def test_eval_free_variable(client):
    response = client.post("/model/eval", json={"structure": "m3", "formula": "x in {}"})
    assert response.status_code == 400
    body = response.json()
    assert body["status"] == "error"
    assert body["exitCode"] == constant.EXIT_USAGE
    assert body["error"] == "ScopeError"


def test_missing_field_is_a_bad_request(client):
    response = client.post("/model/eval", json={"structure": "m3"})
    assert response.status_code == 400
    body = response.json()
    assert body["exitCode"] == constant.EXIT_USAGE
    assert any(line.startswith("body.formula") for line in body["description"])


def test_leibniz_counterexample(client):
    response = client.post("/model/leibniz", json={"structure": "h3star", "policy": "algebraic"})
    assert response.status_code == 200
    body = response.json()
    assert body["status"] == constant.COUNTEREXAMPLE
    assert body["exitCode"] == constant.EXIT_COUNTEREXAMPLE
    (check,) = body["response"]["checks"]
    assert check["values"] == {"u eq v": "1/2", "phi(u)": "1", "phi(v)": "0"}


def test_inline_algebra_definition(client):
    definition = {"name": "two", "carrier": ["0", "1"], "leq": [["0", "1"]]}
    response = client.post("/algebra/check", json={"structure": definition})
    assert response.status_code == 200
    body = response.json()["response"]
    assert body["valid"]
    assert body["algebra"] == "two"


def test_pentagon_is_rejected(client):
    response = client.post("/algebra/check", json={"structure": PENTAGON})
    assert response.status_code == 400
    assert response.json()["error"] == "NoResiduum"


def test_structure_check(client):
    response = client.post("/structure/check", json={"structure": "h3star"})
    assert response.status_code == 200
    assert response.json()["response"]["N"]["1/2"] == ["1"]


def test_paraconsistent(client):
    response = client.post("/propositional/paraconsistent", json={"structure": "m3"})
    body = response.json()
    assert body["exitCode"] == constant.EXIT_COUNTEREXAMPLE
    assert body["response"]["witness"] == {"alpha": "1/2", "beta": "0", "~alpha": "1"}


def test_propositional_axioms(client):
    response = client.post("/propositional/axioms", json={"structure": "m3", "schemas": ["a1", "g3"]})
    body = response.json()
    assert body["exitCode"] == constant.EXIT_COUNTEREXAMPLE
    verdicts = {check["check"]: check["verdict"] for check in body["response"]["checks"]}
    assert verdicts == {"a1": constant.VALID, "g3": constant.COUNTEREXAMPLE}


def test_zf_pairing(client):
    response = client.post("/zf/check", json={"structure": "m3", "axiom": "pairing"})
    assert response.status_code == 200
    body = response.json()
    assert body["exitCode"] == constant.EXIT_VALID
    assert body["response"]["results"][0]["verdict"] == constant.VALID
