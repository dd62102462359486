import os
import socket

import pytest

from conftest import DATA
from vsbench.pubchem.client import (
    AssayFetchSpec,
    AssayTable,
    FixtureTransport,
    NotFoundError,
    PubChemClient,
    PubChemError,
    PubChemFormatError,
    RateLimiter,
    normalize_outcome,
    parse_assay_csv,
)

FIXTURES = DATA / "pubchem"
LIVE = os.environ.get("VSBENCH_LIVE") == "1"


@pytest.fixture(autouse=True)
def no_sockets(monkeypatch):
    """Offline tests must never open a connection."""
    if LIVE:
        return

    def refuse(*args, **kwargs):
        raise AssertionError("network access attempted in offline test")

    monkeypatch.setattr(socket.socket, "connect", refuse)


class ScriptedTransport:
    """Replays (status, body) responses in order and records the URLs."""

    def __init__(self, responses):
        self.responses = list(responses)
        self.urls = []

    def __call__(self, url, data=None):
        self.urls.append((url, data))
        return self.responses.pop(0)


def client(tmp_path, transport=None, **kw):
    return PubChemClient(tmp_path / "cache", transport or FixtureTransport(FIXTURES), sleep=lambda s: None, **kw)


def test_fetch_primary_screen_fixture(tmp_path):
    t = client(tmp_path).fetch_assay(626)
    assert len(t.outcomes) == 63_676
    assert t.counts()["active"] == 1_665


def test_fetch_confirmatory_values(tmp_path):
    t = client(tmp_path).fetch_assay(1488)
    assert t.values
    assert all(t.outcomes[c] == "active" for c in t.values)


def test_cache_hit_makes_no_requests(tmp_path):
    transport = FixtureTransport(FIXTURES)
    c = client(tmp_path, transport)
    first = c.fetch_assay(1741)
    assert transport.calls == 1
    raw = c.assay_cache_path(1741).read_bytes()
    again = client(tmp_path, transport).fetch_assay(1741)
    assert transport.calls == 1
    assert again.outcomes == first.outcomes
    assert c.assay_cache_path(1741).read_bytes() == raw
    assert again.to_csv().encode() == raw


def test_fetch_spec_cache_dir(tmp_path):
    c = client(tmp_path)
    c.fetch_assay(AssayFetchSpec(1741, cache_dir=str(tmp_path / "other")))
    assert (tmp_path / "other" / "assay" / "1741.csv").exists()


def test_fetch_spec_rejects_bad_aid():
    with pytest.raises(ValueError):
        AssayFetchSpec(0)


def test_unknown_aid_not_found(tmp_path):
    with pytest.raises(NotFoundError):
        client(tmp_path).fetch_assay(999999)


def test_malformed_payload_preserved(tmp_path):
    c = client(tmp_path, ScriptedTransport([(200, b"<html>oops</html>\n")]))
    with pytest.raises(PubChemFormatError) as info:
        c.fetch_assay(5)
    assert info.value.raw_path.read_bytes() == b"<html>oops</html>\n"
    assert not c.assay_cache_path(5).exists()


def test_retries_with_backoff(tmp_path):
    sleeps = []
    body = b"PUBCHEM_CID,PUBCHEM_ACTIVITY_OUTCOME\n1,Active\n"
    transport = ScriptedTransport([(503, b""), (503, b""), (200, body)])
    c = PubChemClient(tmp_path, transport, sleep=sleeps.append, rate=0, backoff=0.5)
    assert c.fetch_assay(7).outcomes == {1: "active"}
    assert sleeps == [0.5, 1.0]


def test_retries_exhausted(tmp_path):
    transport = ScriptedTransport([(500, b"")] * 3)
    c = PubChemClient(tmp_path, transport, sleep=lambda s: None, retries=2)
    with pytest.raises(PubChemError, match="3 attempts"):
        c.fetch_assay(7)
    assert len(transport.urls) == 3


def test_bad_request_not_retried(tmp_path):
    transport = ScriptedTransport([(400, b"bad")])
    with pytest.raises(PubChemError):
        client(tmp_path, transport).fetch_assay(7)
    assert len(transport.urls) == 1


def test_rate_limiter_spacing():
    now = [0.0]
    slept = []

    def sleep(s):
        slept.append(s)
        now[0] += s

    lim = RateLimiter(4.0, clock=lambda: now[0], sleep=sleep)
    for _ in range(3):
        lim.wait()
    assert slept == pytest.approx([0.25, 0.25])


@pytest.mark.parametrize(
    "text,expected",
    [("Active", "active"), (" INACTIVE ", "inactive"), ("Inconclusive", "inconclusive"),
     ("Unspecified", "inconclusive"), ("2", "active"), ("1", "inactive"), ("Probe", "active")],
)
def test_normalize_outcome(text, expected):
    assert normalize_outcome(text) == expected


def test_normalize_outcome_unknown():
    with pytest.raises(ValueError, match="maybe"):
        normalize_outcome("maybe")


def test_parse_assay_csv_skips_descriptor_rows_and_merges_substances():
    payload = (
        "PUBCHEM_RESULT_TAG,PUBCHEM_SID,PUBCHEM_CID,PUBCHEM_ACTIVITY_OUTCOME,Potency\n"
        "RESULT_TYPE,,,,FLOAT\n"
        "1,11,5,Inactive,\n"
        "2,12,5,Active,3.5\n"
        "3,13,6,Inconclusive,\n"
        "4,14,,Active,\n"
    ).encode()
    t = parse_assay_csv(1, payload)
    assert t.outcomes == {5: "active", 6: "inconclusive"}
    assert t.values == {5: 3.5}


def test_parse_assay_csv_missing_columns():
    with pytest.raises(ValueError):
        parse_assay_csv(1, b"a,b\n1,2\n")


def test_assay_table_csv_round_trip():
    t = AssayTable(3, {2: "active", 1: "inactive"}, {2: 0.25})
    back = AssayTable.from_csv(3, t.to_csv())
    assert back.outcomes == t.outcomes and back.values == t.values
    assert t.to_csv().splitlines()[1].startswith("1,")


def _compound_fixture(tmp_path):
    root = tmp_path / "fx"
    root.mkdir()
    (root / "compounds.csv").write_text(
        "cid,smiles,inchi\n1,C,InChI=1S/CH4/h1H4\n2,CC,InChI=1S/C2H6/c1-2/h1-2H3\n3,CCO,\"InChI=1S/C2H6O/c1-2-3/h3H,2H2,1H3\"\n"
    )
    return FixtureTransport(root)


def test_exchange_identifiers(tmp_path):
    res = client(tmp_path, _compound_fixture(tmp_path)).exchange_identifiers([1, 2, 3])
    assert res.found == {1: ("C", "InChI=1S/CH4/h1H4"), 2: ("CC", "InChI=1S/C2H6/c1-2/h1-2H3"),
                         3: ("CCO", "InChI=1S/C2H6O/c1-2-3/h3H,2H2,1H3")}
    assert res.missing == []


def test_exchange_identifiers_partial_and_batched(tmp_path):
    transport = _compound_fixture(tmp_path)
    c = client(tmp_path, transport, batch_size=2)
    res = c.exchange_identifiers([1, 99, 3])
    assert set(res.found) == {1, 3}
    assert res.missing == [99]
    assert transport.calls == 2
    c.exchange_identifiers([1, 99, 3])
    assert transport.calls == 2  # served from the batch cache


def test_exchange_identifiers_empty(tmp_path):
    transport = _compound_fixture(tmp_path)
    res = client(tmp_path, transport).exchange_identifiers([])
    assert res.found == {} and res.missing == []
    assert transport.calls == 0


def test_fixture_env_selects_transport(tmp_path, monkeypatch):
    monkeypatch.setenv("VSBENCH_FIXTURES", str(FIXTURES))
    monkeypatch.setenv("VSBENCH_CACHE", str(tmp_path / "envcache"))
    c = PubChemClient()
    assert isinstance(c.transport, FixtureTransport)
    c.fetch_assay(1741)
    assert (tmp_path / "envcache" / "assay" / "1741.csv").exists()


@pytest.mark.skipif(not LIVE, reason="live PubChem tests run only with VSBENCH_LIVE=1")
def test_live_identifier_exchange(tmp_path):
    c = PubChemClient(tmp_path)
    res = c.exchange_identifiers([2244])
    assert 2244 in res.found
    assert res.found[2244][1].startswith("InChI=1S/C9H8O4")
