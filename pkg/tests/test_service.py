"""The HTTP session service: lifecycle, errors, and transcript conformance."""

import json
import threading

import pytest
from fastapi.testclient import TestClient

from pairmodel.game import canonical_json, replay_transcript
from pairmodel.service import create_app


@pytest.fixture()
def client():
    return TestClient(create_app(max_n=4))


def make_session(client, n=2, w="5"):
    res = client.post("/sessions", json={"n": n, "w": w})
    assert res.status_code == 201
    return res.json()


def test_create_session_standard_anchor(client):
    desc = make_session(client, n=2, w="5")
    assert set(desc) == {"id", "n", "w", "a0", "b0"}
    assert desc["a0"] == "d(1,0)"
    assert desc["n"] == 2 and desc["w"] == "5"


def test_create_session_nonstandard_anchor(client):
    desc = make_session(client, n=1, w="d(2,0)")
    assert desc["a0"] == "d(1,0)"
    # rho(1, 2) + 1 = 10066329601, first index past the separating window
    assert desc["b0"] == "d(10066329601,0)"


def test_create_session_validation(client):
    assert client.post("/sessions", json={"n": 99, "w": "5"}).status_code == 400
    assert client.post("/sessions", json={"n": -1, "w": "5"}).status_code == 400
    assert client.post("/sessions", json={"n": 1, "w": "p("}).status_code == 400


def test_standard_move_echoes(client):
    desc = make_session(client)
    res = client.post(f"/sessions/{desc['id']}/moves",
                      json={"side": "left", "element": "5"})
    assert res.status_code == 200
    body = res.json()
    assert body["reply"] == "5"
    assert body["round"] == 0
    assert body["side"] == "left"
    assert not body["done"]
    assert body["verdict"] is None
    assert body["fragmentReport"]["ok"]


def test_parameter_move_maps_across(client):
    desc = make_session(client, n=1)
    res = client.post(f"/sessions/{desc['id']}/moves",
                      json={"side": "left", "element": desc["a0"]})
    body = res.json()
    assert body["reply"] == desc["b0"]
    assert body["done"]
    assert body["verdict"]["ok"]


def test_move_errors(client):
    desc = make_session(client, n=1)
    sid = desc["id"]
    assert client.post("/sessions/zzz/moves",
                       json={"side": "left", "element": "5"}).status_code == 404
    assert client.post(f"/sessions/{sid}/moves",
                       json={"side": "up", "element": "5"}).status_code == 400
    assert client.post(f"/sessions/{sid}/moves",
                       json={"side": "left", "element": "wat"}).status_code == 400
    client.post(f"/sessions/{sid}/moves", json={"side": "left", "element": "5"})
    res = client.post(f"/sessions/{sid}/moves",
                      json={"side": "left", "element": "5"})
    assert res.status_code == 409


def test_round_index_conflict(client):
    desc = make_session(client, n=2)
    sid = desc["id"]
    ok = client.post(f"/sessions/{sid}/moves",
                     json={"side": "left", "element": "5", "round": 0})
    assert ok.status_code == 200
    stale = client.post(f"/sessions/{sid}/moves",
                        json={"side": "left", "element": "5", "round": 0})
    assert stale.status_code == 409


def test_get_state_lifecycle(client):
    desc = make_session(client, n=1)
    sid = desc["id"]
    fresh = client.get(f"/sessions/{sid}")
    assert fresh.status_code == 200
    doc = json.loads(fresh.content)
    assert doc["rounds"] == [] and doc["verdict"] is None
    assert doc["a0"] == desc["a0"]
    client.post(f"/sessions/{sid}/moves",
                json={"side": "right", "element": desc["b0"]})
    done = json.loads(client.get(f"/sessions/{sid}").content)
    assert len(done["rounds"]) == 1
    assert done["rounds"][0]["reply"] == desc["a0"]
    assert done["verdict"]["ok"]
    assert client.get("/sessions/zzz").status_code == 404


def test_get_state_bytes_are_canonical(client):
    desc = make_session(client, n=2)
    sid = desc["id"]
    client.post(f"/sessions/{sid}/moves",
                json={"side": "left", "element": "d(1,0)"})
    raw = client.get(f"/sessions/{sid}").content
    assert raw == canonical_json(json.loads(raw)).encode()
    assert client.get(f"/sessions/{sid}").headers["content-type"].startswith(
        "application/json")


def test_finished_verdict_agrees_with_replay(client):
    desc = make_session(client, n=2, w="d(3,1)")
    sid = desc["id"]
    for el in (desc["a0"], "4"):
        assert client.post(f"/sessions/{sid}/moves",
                           json={"side": "left", "element": el}).status_code == 200
    doc = json.loads(client.get(f"/sessions/{sid}").content)
    out = replay_transcript(doc)
    assert out["matches"] and doc["verdict"]["ok"]


def test_listing_tracks_status(client):
    a = make_session(client, n=0)  # n=0 sessions finish immediately
    b = make_session(client, n=2)
    rows = client.get("/sessions").json()
    by_id = {row["id"]: row for row in rows}
    assert by_id[a["id"]]["status"] == "finished"
    assert by_id[b["id"]]["status"] == "awaiting-forall"
    assert set(rows[0]) == {"id", "n", "w", "createdAt", "status"}
    assert [r["createdAt"] for r in rows] == sorted(r["createdAt"] for r in rows)


def test_cors_is_open_for_the_local_ui(client):
    res = client.get("/sessions", headers={"Origin": "http://localhost:5173"})
    assert res.headers.get("access-control-allow-origin") == "*"


def test_concurrent_moves_serialize(client):
    desc = make_session(client, n=1)
    sid = desc["id"]
    codes = []
    lock = threading.Lock()

    def fire():
        res = client.post(f"/sessions/{sid}/moves",
                          json={"side": "left", "element": "7", "round": 0})
        with lock:
            codes.append(res.status_code)

    threads = [threading.Thread(target=fire) for _ in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert sorted(codes) == [200] + [409] * 7
