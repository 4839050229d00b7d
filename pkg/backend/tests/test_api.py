import inspect

from app.main import app
from tests.conftest import SINGLE_AND_AAG, TWO_LEVEL_AAG


def test_root_and_health(client):
    root = client.get("/").json()
    assert root["name"] == "NPN Classification API"
    assert root["endpoints"]["canon"] == "/api/canon"
    assert client.get("/health").json()["status"] == "healthy"


def test_compute_endpoints_are_plain_functions():
    # FastAPI runs plain functions in its threadpool, off the event loop.
    routes = [r for r in app.routes if getattr(r, "path", "").startswith("/api/")]
    assert {r.path for r in routes} == {"/api/canon", "/api/signatures/{table}", "/api/classify", "/api/cuts"}
    assert not any(inspect.iscoroutinefunction(r.endpoint) for r in routes)


class TestCanon:
    def test_canonicalizes_each_table(self, client):
        response = client.post("/api/canon", json={"functions": ["8", "E8", "zz"]})
        assert response.status_code == 200
        body = response.json()
        assert body["method"] == "inf-plus"
        first = body["results"][0]
        assert (first["input_hex"], first["canonical_hex"], first["out_neg"], first["phase_mask_hex"], first["perm"]) == (
            "8", "1", "0", "3", "1-2"
        )
        assert first["counters"]["polarity_candidates"] == 1
        assert len(body["results"]) == 2
        assert [e["line"] for e in body["errors"]] == [3]

    def test_method_and_inputs(self, client):
        response = client.post("/api/canon", json={
            "functions": ["01"], "inputs": 1, "method": "baseline", "symmetry_policy": "representative",
        })
        assert response.status_code == 200
        assert response.json()["results"][0]["canonical_hex"] == "01"

    def test_validation(self, client):
        assert client.post("/api/canon", json={"functions": []}).status_code == 422
        assert client.post("/api/canon", json={"functions": ["8"], "method": "fast"}).status_code == 422
        assert client.post("/api/canon", json={"functions": ["8"], "sers_base": 1}).status_code == 422


class TestSignatures:
    def test_report(self, client):
        body = client.get("/api/signatures/E8").json()
        assert body["n"] == 3
        assert body["cofactor"]["total"] == 4
        assert body["influence"]["per_var"] == [2, 2, 2]

    def test_mixed_groups(self, client):
        body = client.get("/api/signatures/5DAE51AE5DA251A2").json()
        assert body["groupings"]["cofactor+influence"] == [[5, 6], [2, 3], [1], [4]]

    def test_explicit_inputs(self, client):
        assert client.get("/api/signatures/00E8", params={"inputs": 4}).json()["n"] == 4

    def test_bad_table(self, client):
        response = client.get("/api/signatures/XYZ")
        assert response.status_code == 400
        assert "malformed" in response.json()["detail"]

    def test_bad_base(self, client):
        assert client.get("/api/signatures/E8", params={"sers_base": 1}).status_code == 422


class TestClassify:
    def test_upload(self, client):
        text = "\n".join(format(bits, "X") for bits in range(16)) + "\nzz\n"
        response = client.post(
            "/api/classify",
            files={"file": ("functions.txt", text.encode(), "text/plain")},
            data={"method": "inf", "inputs": "2"},
        )
        assert response.status_code == 200
        body = response.json()
        assert [row["canonical_hex"] for row in body["classes"]] == ["0", "1", "5", "6"]
        assert [row["count"] for row in body["classes"]] == [2, 8, 4, 2]
        assert body["stats"]["method"] == "inf"
        assert body["stats"]["function_count"] == 16
        assert body["stats"]["error_count"] == 1
        assert body["errors"][0]["line"] == 17

    def test_not_text(self, client):
        response = client.post("/api/classify", files={"file": ("f.bin", b"\xff\xfe\x00", "application/octet-stream")})
        assert response.status_code == 400


class TestCuts:
    def test_upload(self, client):
        response = client.post("/api/cuts", files={"file": ("c.aag", TWO_LEVEL_AAG.encode(), "text/plain")})
        assert response.status_code == 200
        body = response.json()
        assert body["functions"] == ["8", "8", "80"]
        assert body["inputs"] == [2, 2, 3]
        assert body["count"] == 3
        assert body["cut_size"] == 8

    def test_options(self, client):
        response = client.post(
            "/api/cuts",
            files={"file": ("c.aag", TWO_LEVEL_AAG.encode(), "text/plain")},
            data={"cut_size": "2", "dedupe": "true"},
        )
        assert response.json()["functions"] == ["8"]

    def test_binary_upload(self, client):
        response = client.post("/api/cuts", files={"file": ("and.aig", b"aig 3 2 0 1 1\n6\n\x02\x02", "application/octet-stream")})
        assert response.json()["functions"] == ["8"]

    def test_rejects_latches(self, client):
        response = client.post("/api/cuts", files={"file": ("s.aag", b"aag 1 0 1 0 0\n2 3\n", "text/plain")})
        assert response.status_code == 400
        assert "sequential" in response.json()["detail"]

    def test_bad_cut_size(self, client):
        response = client.post(
            "/api/cuts",
            files={"file": ("c.aag", SINGLE_AND_AAG.encode(), "text/plain")},
            data={"cut_size": "40"},
        )
        assert response.status_code == 422
