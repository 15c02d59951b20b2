"""End-to-end: CLI as an HTTP client of a live service instance."""

import json
import threading
import time

import httpx
import pytest
import uvicorn

from bihomsd.cli import main
from bihomsd.corpus import bihom_corpus
from bihomsd.fields import QQ
from bihomsd.serialize import save
from bihomsd.service.app import app


@pytest.fixture(scope="module")
def live_server():
    config = uvicorn.Config(app, host="127.0.0.1", port=0, log_level="error")
    server = uvicorn.Server(config)
    thread = threading.Thread(target=server.run, daemon=True)
    thread.start()
    for _ in range(100):
        if server.started and server.servers:
            break
        time.sleep(0.05)
    else:
        raise RuntimeError("service did not start")
    host, port = server.servers[0].sockets[0].getsockname()[:2]
    url = f"http://{host}:{port}"
    for _ in range(50):
        try:
            if httpx.get(f"{url}/health", timeout=1.0).status_code == 200:
                break
        except httpx.HTTPError:
            time.sleep(0.05)
    yield url
    server.should_exit = True
    thread.join(timeout=5)


def test_cli_check_over_http(live_server, tmp_path, capsys):
    entry = bihom_corpus(1, QQ, 2)[0]
    path = tmp_path / "inst.json"
    save(entry.instance, path)
    code = main(["--server", live_server, "check", str(path), "--format", "json"])
    assert code == 0
    body = json.loads(capsys.readouterr().out)
    assert body["ok"] is True


def test_cli_twist_over_http(live_server, tmp_path):
    entry = bihom_corpus(1, QQ, 2)[0]
    path = tmp_path / "inst.json"
    save(entry.instance, path)
    out = tmp_path / "twisted.json"
    code = main(
        [
            "--server",
            live_server,
            "twist",
            str(path),
            "--power",
            "1",
            "--verify",
            "--out",
            str(out),
        ]
    )
    assert code == 0
    assert out.exists()


def test_cli_schema_error_over_http(live_server, tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text('{"field": "Q", "dim": 1, "parity": [0]}')
    code = main(["--server", live_server, "check", str(path)])
    assert code == 2
