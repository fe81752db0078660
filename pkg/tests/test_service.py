import json
import socket
import threading
import time

import pytest
from fastapi.testclient import TestClient

from armourloss import __version__, run_single
from armourloss.cli import main
from armourloss.service import app
from armourloss.service.models import DesignModel

from conftest import make_design
from test_config import DESIGN_TEXT


@pytest.fixture(scope="module")
def client():
    return TestClient(app)


def design_payload(**overrides):
    model = DesignModel.from_design(make_design(r_ac=4e-5))
    payload = model.model_dump(mode="json")
    for key, value in overrides.items():
        section, _, field = key.partition(".")
        payload[section][field] = value
    return payload


def test_healthz(client):
    response = client.get("/healthz")
    assert response.status_code == 200
    assert response.json() == {"status": "ok", "version": __version__}


def test_eval_matches_library(client):
    response = client.post("/eval", json=design_payload())
    assert response.status_code == 200
    body = response.json()
    expected = run_single(make_design(r_ac=4e-5))
    assert body["loss"]["loss_w_per_m"] == pytest.approx(
        expected.loss.armour_loss_w_per_m, rel=1e-12)
    assert body["loss"]["lambda2"] == pytest.approx(expected.loss.lambda2, rel=1e-12)
    assert body["tube"]["thickness_m"] == pytest.approx(expected.tube.t, rel=1e-12)
    assert len(body["loss"]["per_harmonic"]) == len(expected.loss.per_harmonic)


def test_eval_validation_422(client):
    response = client.post("/eval", json=design_payload(**{"armour.wire_count": 200}))
    assert response.status_code == 422
    assert "overlap" in response.json()["detail"]


def test_eval_schema_422(client):
    payload = design_payload()
    del payload["armour"]["wire_count"]
    assert client.post("/eval", json=payload).status_code == 422


def test_eval_numerical_500(client):
    payload = design_payload()
    payload["solver"]["tail_tol"] = 1e-25
    response = client.post("/eval", json=payload)
    assert response.status_code == 500
    assert "tail" in response.json()["detail"]


def test_sweep_endpoint(client):
    request = {"design": design_payload(), "parameter": "N",
               "values": [25, 200, 135], "both_truncations": True}
    response = client.post("/sweep", json=request)
    assert response.status_code == 200
    rows = response.json()["rows"]
    assert [r["value"] for r in rows] == [25, 200, 135]
    assert rows[1]["error"] and not rows[1]["results"]
    assert set(rows[0]["results"]) == {"1", "17"}


def test_sweep_complex_values(client):
    request = {"design": design_payload(), "parameter": "mu_r",
               "values": [{"re": 150, "im": -50}, {"re": 600, "im": -350}]}
    response = client.post("/sweep", json=request)
    assert response.status_code == 200
    losses = [r["results"]["1"]["loss"]["loss_w_per_m"]
              for r in response.json()["rows"]]
    assert losses[1] > losses[0]


def test_validate_endpoint(client):
    response = client.post("/validate", json=design_payload())
    assert response.status_code == 200
    body = response.json()
    assert body["all_converged"] is True
    assert {r["name"] for r in body["reports"]} >= {
        "mu_longitudinal", "field_hz_vs_biot_savart"}


@pytest.fixture(scope="module")
def live_server():
    import uvicorn

    with socket.socket() as sock:
        sock.bind(("127.0.0.1", 0))
        port = sock.getsockname()[1]
    config = uvicorn.Config(app, host="127.0.0.1", port=port, log_level="error")
    server = uvicorn.Server(config)
    thread = threading.Thread(target=server.run, daemon=True)
    thread.start()
    deadline = time.time() + 10
    while not server.started:
        if time.time() > deadline:
            raise RuntimeError("uvicorn did not start")
        time.sleep(0.05)
    yield f"http://127.0.0.1:{port}"
    server.should_exit = True
    thread.join(timeout=5)


class TestCliRemote:
    def test_eval_remote_matches_local(self, live_server, tmp_path, capsys):
        path = tmp_path / "cable.design"
        path.write_text(DESIGN_TEXT)
        assert main(["eval", str(path), "--emit", "json"]) == 0
        local = json.loads(capsys.readouterr().out)
        assert main(["eval", str(path), "--emit", "json",
                     "--server", live_server]) == 0
        remote = json.loads(capsys.readouterr().out)
        assert remote == local

    def test_remote_validation_exit_2(self, live_server, tmp_path, capsys):
        path = tmp_path / "overlap.design"
        path.write_text(DESIGN_TEXT.replace("armour.wire_count = 135",
                                            "armour.wire_count = 200"))
        assert main(["eval", str(path), "--server", live_server]) == 2
        assert "overlap" in capsys.readouterr().err

    def test_remote_sweep_matches_local(self, live_server, tmp_path, capsys):
        path = tmp_path / "cable.design"
        path.write_text(DESIGN_TEXT)
        args = ["sweep", str(path), "--param", "N", "--values", "60;135"]
        assert main(args) == 0
        local = capsys.readouterr().out
        assert main(args + ["--server", live_server]) == 0
        remote = capsys.readouterr().out
        assert remote == local
