import pytest
from fastapi.testclient import TestClient

from app.main import app

PREFIX = "/api/v1"

TRIANGLE = {
    "r": 2,
    "classes": [{"weights": ["1"]}, {"weights": ["1"]}, {"weights": ["1"]}],
    "edges": [[[0, 0], [1, 0]], [[0, 0], [2, 0]], [[1, 0], [2, 0]]],
}


@pytest.fixture
def client():
    return TestClient(app)


def test_health(client):
    response = client.get(f"{PREFIX}/health")
    assert response.status_code == 200
    assert response.json()["status"] == "healthy"


def test_density(client):
    response = client.post(f"{PREFIX}/instances/density", json=TRIANGLE)
    assert response.status_code == 200
    assert response.json() == {"rho": ["1", "1", "1"]}


def test_cliques_with_witnesses(client):
    response = client.post(f"{PREFIX}/instances/cliques", params={"witnesses": True}, json=TRIANGLE)
    body = response.json()
    assert body["C"] == "1"
    assert body["witnesses"] == [[[0, 0], [1, 0], [2, 0]]]


def test_near_cliques(client):
    path = dict(TRIANGLE, edges=TRIANGLE["edges"][:1] + TRIANGLE["edges"][2:])
    response = client.post(f"{PREFIX}/instances/near-cliques", params={"k": 1}, json=path)
    assert response.json()["C"] == "1"


def test_bad_weight_is_a_422_with_context(client):
    document = dict(TRIANGLE, classes=[{"weights": ["0/3"]}, {"weights": ["1"]}, {"weights": ["1"]}])
    response = client.post(f"{PREFIX}/instances/density", json=document)
    assert response.status_code == 422
    detail = response.json()["detail"]
    assert detail["error"] == "InvalidWeightError"
    assert detail["context"] == "classes[0].weights[0]"


def test_blowup(client):
    document = dict(TRIANGLE, classes=[{"weights": ["1/2"]}, {"weights": ["1"]}, {"weights": ["1"]}])
    response = client.post(f"{PREFIX}/instances/blowup", json={"instance": document, "scale": [2, 1, 1]})
    assert response.status_code == 200
    assert [len(c["weights"]) for c in response.json()["classes"]] == [2, 1, 1]

    uneven = dict(TRIANGLE, classes=[{"weights": ["1/3", "1/2"]}, {"weights": ["1"]}, {"weights": ["1"]}])
    response = client.post(f"{PREFIX}/instances/blowup", json={"instance": uneven, "scale": 3})
    assert response.status_code == 422
    assert response.json()["detail"]["error"] == "ScaleError"


def test_balance_threshold_codegrees(client):
    assert client.post(f"{PREFIX}/instances/balance", json=TRIANGLE).json()["balanced"] is True
    certificate = client.post(f"{PREFIX}/instances/threshold", json=TRIANGLE).json()
    assert certificate["margin"] == "1"
    assert certificate["theorem_violation"] is False
    summary = client.post(f"{PREFIX}/instances/codegrees", json=TRIANGLE).json()
    assert summary["min"] == summary["max"] == 2


def test_construct(client):
    response = client.post(f"{PREFIX}/constructions/construct", json={"r": 3, "rho": ["9/10"] * 4})
    assert response.status_code == 200
    body = response.json()
    assert body["recipe"]["clique_density"] == "3/5"
    assert len(body["instance"]["classes"]) == 4


def test_construct_out_of_regime(client):
    response = client.post(f"{PREFIX}/constructions/construct", json={"r": 2, "rho": ["1/2"] * 3})
    assert response.status_code == 422
    assert response.json()["detail"]["error"] == "OutOfRegimeError"


def test_lift(client):
    response = client.post(f"{PREFIX}/constructions/lift", json={"r": 2, "n": 2, "edges": [[0, 1]]})
    assert len(response.json()["edges"]) == 6


def test_pos_region_and_grid(client):
    verdict = client.post(f"{PREFIX}/constructions/pos-region", json={"a": "3/4", "b": "3/4", "c": "3/4"}).json()
    assert verdict["delta"] == "0"
    assert verdict["in_region"] is True
    report = client.get(f"{PREFIX}/constructions/pos-grid", params={"denominator": 4}).json()
    assert report["triples_checked"] == 20
    assert report["passed"] is True


def test_verification(client):
    report = client.post(f"{PREFIX}/verification/verify-bound", json={"r": 2, "class_sizes": [1, 1, 1]}).json()
    assert report["instances_checked"] == 8
    assert report["violations"] == []

    report = client.post(f"{PREFIX}/verification/tightness", json={"r": 2, "grid": [["3/4", "3/4", "3/4"]]}).json()
    assert report["all_tight"] is True
    assert report["rows"][0]["clique_density"] == "1/4"


def test_threshold_property(client):
    report = client.post(
        f"{PREFIX}/verification/threshold-property", json={"r": 2, "class_size": 2, "count": 10}
    ).json()
    assert report["instances_checked"] == 10
    assert report["passed"] is True
    assert client.post(f"{PREFIX}/verification/threshold-property", json={"r": 1}).status_code == 422
