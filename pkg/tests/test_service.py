from __future__ import annotations

import pytest
from fastapi.testclient import TestClient

from ratebench import SessionStore
from ratebench.service import ServiceConfig, create_app, load_config


@pytest.fixture
def client():
    return TestClient(create_app(SessionStore()))


def open_session(client, text):
    resp = client.post("/sessions", content=text, headers={"content-type": "text/csv"})
    assert resp.status_code == 201, resp.text
    return resp.json()


class TestSessions:
    def test_upload_raw_body(self, client, thirty_banks):
        doc = open_session(client, thirty_banks)
        assert doc["session"]["entityCount"] == 30
        assert [s["id"] for s in doc["session"]["schemes"]] == ["default"]
        assert len(doc["ranking"]["entities"]) == 30

    def test_upload_multipart(self, client, thirty_banks):
        resp = client.post(
            "/sessions", files={"file": ("banks.csv", thirty_banks, "text/csv")}
        )
        assert resp.status_code == 201
        assert resp.json()["session"]["entityCount"] == 30

    def test_malformed_upload_is_400_with_row(self, client):
        resp = client.post("/sessions", content="bank,bank_type,a,b\nX,T,1,2\nY,T,zz,4\n")
        assert resp.status_code == 400
        assert "row 3" in resp.json()["detail"]

    def test_summary_and_unknown_session(self, client, thirty_banks):
        doc = open_session(client, thirty_banks)
        sid = doc["sessionId"]
        assert client.get(f"/sessions/{sid}").json()["sessionId"] == sid
        assert client.get("/sessions/zzz").status_code == 404


class TestRankings:
    def test_default_scheme_rankings(self, client, thirty_banks):
        sid = open_session(client, thirty_banks)["sessionId"]
        doc = client.get(f"/sessions/{sid}/rankings").json()
        assert doc["schemeId"] == "default"
        ranks = [row["rank"] for row in doc["entities"]]
        assert ranks == list(range(1, 31))
        scores = [row["score"] for row in doc["entities"]]
        assert scores == sorted(scores, reverse=True)

    def test_unknown_scheme_404(self, client, thirty_banks):
        sid = open_session(client, thirty_banks)["sessionId"]
        assert client.get(f"/sessions/{sid}/rankings", params={"scheme": "s7"}).status_code == 404


class TestDragAndSave:
    def test_paper_style_flow(self, client, thirty_banks):
        # drag the rank-5 row to rank 13, save the type scheme, compare
        sid = open_session(client, thirty_banks)["sessionId"]
        base = client.get(f"/sessions/{sid}/rankings").json()["entities"]
        dragged = base[4]["id"]

        preview = client.post(
            f"/sessions/{sid}/drags", json={"entityId": dragged, "toRank": 13}
        )
        assert preview.status_code == 200
        pdoc = preview.json()
        assert pdoc["drag"]["fromRank"] == 5 and pdoc["drag"]["toRank"] == 13
        assert set(pdoc["candidates"]) == {"local", "global", "type"}
        for slot in pdoc["candidates"].values():
            assert slot is not None
            assert len(slot["ranking"]["entities"]) == 30

        saved = client.post(f"/sessions/{sid}/schemes", json={"which": "type"})
        assert saved.status_code == 201
        sdoc = saved.json()
        assert sdoc["scheme"]["id"] == "s1"
        assert sdoc["scheme"]["kind"] == "type"
        assert "weightsByType" in sdoc["scheme"]

        comp = client.get(f"/sessions/{sid}/comparison").json()
        assert [a["schemeId"] for a in comp["axes"]] == ["default", "s1"]
        assert comp["draggedEntity"] == dragged

    def test_unknown_entity_404(self, client, thirty_banks):
        sid = open_session(client, thirty_banks)["sessionId"]
        resp = client.post(f"/sessions/{sid}/drags", json={"entityId": "ghost", "toRank": 3})
        assert resp.status_code == 404

    def test_bad_rank_400(self, client, thirty_banks):
        sid = open_session(client, thirty_banks)["sessionId"]
        base = client.get(f"/sessions/{sid}/rankings").json()["entities"]
        resp = client.post(
            f"/sessions/{sid}/drags", json={"entityId": base[0]["id"], "toRank": 99}
        )
        assert resp.status_code == 400

    def test_double_save_conflicts(self, client, thirty_banks):
        sid = open_session(client, thirty_banks)["sessionId"]
        base = client.get(f"/sessions/{sid}/rankings").json()["entities"]
        client.post(f"/sessions/{sid}/drags", json={"entityId": base[4]["id"], "toRank": 13})
        assert client.post(f"/sessions/{sid}/schemes", json={"which": "local"}).status_code == 201
        assert client.post(f"/sessions/{sid}/schemes", json={"which": "local"}).status_code == 409

    def test_comparison_before_save_conflicts(self, client, thirty_banks):
        sid = open_session(client, thirty_banks)["sessionId"]
        assert client.get(f"/sessions/{sid}/comparison").status_code == 409


class TestProjectionEndpoint:
    def test_projection_for_saved_scheme(self, client, thirty_banks):
        sid = open_session(client, thirty_banks)["sessionId"]
        base = client.get(f"/sessions/{sid}/rankings").json()["entities"]
        client.post(f"/sessions/{sid}/drags", json={"entityId": base[4]["id"], "toRank": 13})
        client.post(f"/sessions/{sid}/schemes", json={"which": "global"})
        doc = client.get(f"/sessions/{sid}/projection", params={"scheme": "s1"}).json()
        assert doc["schemeId"] == "s1"
        assert len(doc["points"]) == 30

    def test_default_available_without_saves(self, client, thirty_banks):
        sid = open_session(client, thirty_banks)["sessionId"]
        doc = client.get(f"/sessions/{sid}/projection").json()
        assert doc["schemeId"] == "default"

    def test_unknown_scheme_404(self, client, thirty_banks):
        sid = open_session(client, thirty_banks)["sessionId"]
        assert client.get(f"/sessions/{sid}/projection", params={"scheme": "zz"}).status_code == 404


class TestConfig:
    def test_load_config_round_trip(self, tmp_path):
        path = tmp_path / "svc.conf"
        path.write_text(
            "# comment\n"
            "host = 0.0.0.0\n"
            "port = 9000\n"
            "data_dir = /tmp/sessions\n"
            "trainer.c = 2.5\n"
            "trainer.max_iter = 500\n"
            "projection.perplexity = 7\n"
            "projection.seed = 3\n"
        )
        cfg = load_config(path)
        assert cfg.host == "0.0.0.0" and cfg.port == 9000
        assert cfg.trainer.c == 2.5 and cfg.trainer.max_iter == 500
        assert cfg.projection.perplexity == 7.0 and cfg.projection.seed == 3

    def test_unknown_key_rejected(self, tmp_path):
        path = tmp_path / "svc.conf"
        path.write_text("hosty = nope\n")
        with pytest.raises(ValueError, match="unknown config keys"):
            load_config(path)

    def test_defaults(self):
        cfg = ServiceConfig()
        assert cfg.trainer.c == 1.0
        assert cfg.projection.perplexity == 10.0
