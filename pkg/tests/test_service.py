import numpy as np
import pytest
from fastapi.testclient import TestClient

from atomwalk import __version__
from atomwalk.runners import run_walk
from atomwalk.schemas import WalkRequest
from atomwalk.service import app


@pytest.fixture()
def client():
    return TestClient(app)


def test_health(client):
    payload = client.get("/health").json()
    assert payload == {"status": "ok", "version": __version__}


def test_walk_endpoint_matches_runner(client):
    request = {"steps": 6, "theta": np.pi / 2, "seed": 4}
    reply = client.post("/walk", json=request)
    assert reply.status_code == 200
    body = reply.json()
    direct = run_walk(WalkRequest(**request))
    assert body["rms_width"] == direct.rms_width
    assert body["version"] == __version__
    assert len(body["distribution"]) == 2 * 7 + 1
    assert sum(row["probability"] for row in body["distribution"]) == pytest.approx(1.0)


def test_walk_endpoint_is_deterministic(client):
    request = {"steps": 5, "p_spin": 0.2, "trajectories": 100, "seed": 8}
    first = client.post("/walk", json=request)
    second = client.post("/walk", json=request)
    assert first.text == second.text


def test_unknown_field_rejected(client):
    reply = client.post("/walk", json={"steps": 3, "bogus": 1})
    assert reply.status_code == 422


def test_out_of_range_field_rejected(client):
    reply = client.post("/walk", json={"steps": 3, "p_pos": 1.5})
    assert reply.status_code == 422


def test_boundary_overflow_maps_to_400(client):
    reply = client.post("/walk", json={"steps": 9, "half_width": 2})
    assert reply.status_code == 400
    assert "boundary overflow" in reply.json()["detail"]


def test_widthscan_endpoint(client):
    reply = client.post("/widthscan", json={"max_steps": 4, "p_spin": 1.0})
    rows = reply.json()["rows"]
    assert [row["n"] for row in rows] == [0, 1, 2, 3, 4]
    assert rows[4]["rms"] == pytest.approx(2.0, abs=1e-12)


def test_electric_endpoint(client):
    reply = client.post("/electric", json={"steps": 10, "phi": 0.0})
    assert reply.status_code == 200
    assert reply.json()["command"] == "electric"


def test_lg_endpoint(client):
    reply = client.post("/lg", json={"thetas": [0.0, np.pi / 2]})
    ks = [row["k"] for row in reply.json()["rows"]]
    assert ks[0] == pytest.approx(1.0, abs=1e-12)
    assert ks[1] > 1.0


def test_hom_endpoint(client):
    reply = client.post(
        "/hom", json={"overlap": 0.36, "events": 2000, "seed": 6}
    )
    body = reply.json()
    assert body["p_diff_site"] == pytest.approx(0.32)
    assert sum(body["counts"].values()) == 2000


def test_collide_endpoint(client):
    reply = client.post(
        "/collide",
        json={"p": 0.09, "pcoll": [0.5], "events": 5000, "seed": 2},
    )
    row = reply.json()["rows"][0]
    assert row["ci_low"] <= 0.5 <= row["ci_high"]


def test_collide_rejects_bad_pcoll(client):
    reply = client.post(
        "/collide", json={"p": 0.09, "pcoll": [1.4], "events": 100}
    )
    assert reply.status_code == 422
