"""HTTP service: wrapper shape, error codes, live counters."""

from __future__ import annotations

import json

from fastapi.testclient import TestClient

from autolink.linker import Linker
from autolink.service import ServiceConfig, create_app
from autolink.store import ConceptStore


def _client(size_limit=None):
    store = ConceptStore()
    store.add_concept("group", [], ["20A05"], "planetmath", "https://pm/g")
    store.add_concept("chain", [], ["05C38"], "dlmf", "https://dlmf/c")
    store.add_concept("permanent", [], ["15A15"], "mathworld", "https://mw/p")
    config = ServiceConfig()
    if size_limit is not None:
        config.size_limit = size_limit
    linker = Linker(store)
    return TestClient(create_app(linker, config)), store


def test_annotate_embeds_group_sentence():
    client, _ = _client()
    response = client.post("/annotate", content="Let $G$ be a group")
    assert response.status_code == 200
    body = response.json()
    assert body["status"] == "OK"
    assert body["payload"].startswith("Let $G$ be a ")
    assert body["payload"].count('<a class="nnexus_concept"') == 1
    assert ">group</a>" in body["payload"]


def test_empty_body_is_ok_empty_payload():
    client, _ = _client()
    response = client.post("/annotate", content="")
    assert response.status_code == 200
    assert response.json() == {"status": "OK", "payload": ""}


def test_unknown_format_or_policy_is_400():
    client, _ = _client()
    for params in ({"format": "xml"}, {"policy": "never"}):
        response = client.post("/annotate", params=params, content="x")
        assert response.status_code == 400
        assert response.json()["status"] == "error"


def test_oversized_body_is_413():
    client, _ = _client(size_limit=16)
    response = client.post("/annotate", content="x" * 17)
    assert response.status_code == 413
    assert response.json()["status"] == "error"


def test_invalid_utf8_body_is_400():
    client, _ = _client()
    response = client.post("/annotate", content=b"\xff\xfe\xfa")
    assert response.status_code == 400


def test_standoff_format_returns_record_list():
    client, _ = _client()
    response = client.post(
        "/annotate", params={"format": "standoff"}, content="a group and a chain"
    )
    records = response.json()["payload"]
    assert [r["surface"] for r in records] == ["group", "chain"]
    for record in records:
        assert set(record) == {"start", "end", "surface", "concept", "href",
                               "source", "msc"}


def test_sources_filter_query_param():
    client, _ = _client()
    response = client.post(
        "/annotate", params={"sources": "dlmf"}, content="a group and a chain"
    )
    payload = response.json()["payload"]
    assert payload.count("<a ") == 1
    assert 'data-source="dlmf"' in payload


def test_status_reports_corpus_and_cache():
    client, store = _client()
    status = client.get("/status").json()
    assert status["concepts"] == 3
    assert status["sources"] == ["dlmf", "mathworld", "planetmath"]
    assert status["cache"] == {"entries": 0, "hits": 0, "misses": 0, "expired": 0}

    client.post("/annotate", content="a group")
    client.post("/annotate", content="a group")
    status = client.get("/status").json()
    assert status["cache"]["hits"] == 1
    assert status["cache"]["misses"] == 1
    assert status["cache"]["entries"] == 1

    store.add_concept("group action", [], [], "planetmath", "https://pm/ga")
    status = client.get("/status").json()
    assert status["cache"]["expired"] == 1
    assert status["concepts"] == 4


def test_identical_requests_identical_payloads():
    client, _ = _client()
    a = client.post("/annotate", content="a permanent of a matrix").json()
    b = client.post("/annotate", content="a permanent of a matrix").json()
    assert a == b


def test_embed_payload_preserves_request_bytes():
    from test_annotate import strip_inserted_wrappers

    client, _ = _client()
    html = "<p>café has a group &amp; a chain</p>"
    payload = client.post("/annotate", content=html.encode("utf-8")).json()["payload"]
    assert strip_inserted_wrappers(payload) == html


def test_config_from_dict_and_file(tmp_path):
    data = {
        "port": 9999,
        "corpus": "corpus.jsonl",
        "source_priority": ["dlmf", "planetmath"],
        "cache_capacity": 4,
        "size_limit": 1024,
        "stopwords": "sw.txt",
    }
    path = tmp_path / "config.json"
    path.write_text(json.dumps(data), encoding="utf-8")
    config = ServiceConfig.load(str(path))
    assert config.port == 9999
    assert config.corpus == "corpus.jsonl"
    assert config.source_priority == ("dlmf", "planetmath")
    assert config.cache_capacity == 4
    assert config.size_limit == 1024
    assert config.stopwords == "sw.txt"
    defaults = ServiceConfig.from_dict({})
    assert defaults.port == 8080 and defaults.corpus is None
