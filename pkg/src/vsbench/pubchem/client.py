"""PubChem PUG REST client: assay outcome tables and CID -> SMILES/InChI.

All traffic goes through an injected transport, so tests can run on a
fixture directory without ever opening a socket.  Responses are normalized
and cached on disk with atomic writes; cached entries are served without
touching the transport.
"""

from __future__ import annotations

import csv
import gzip
import hashlib
import io
import logging
import os
import tempfile
import threading
import time
import urllib.error
import urllib.request
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable, Protocol

log = logging.getLogger(__name__)

BASE_URL = "https://pubchem.ncbi.nlm.nih.gov/rest/pug"
CACHE_ENV = "VSBENCH_CACHE"
FIXTURE_ENV = "VSBENCH_FIXTURES"
DEFAULT_RATE = 5.0  # requests per second
OUTCOMES = ("active", "inactive", "inconclusive")

_OUTCOME_SYNONYMS = {
    "active": "active",
    "2": "active",
    "probe": "active",
    "5": "active",
    "inactive": "inactive",
    "1": "inactive",
    "inconclusive": "inconclusive",
    "3": "inconclusive",
    "unspecified": "inconclusive",
    "4": "inconclusive",
}
_CID_COLUMNS = ("PUBCHEM_CID", "CID", "cid")
_OUTCOME_COLUMNS = ("PUBCHEM_ACTIVITY_OUTCOME", "ACTIVITY_OUTCOME", "Activity Outcome", "outcome")
_VALUE_COLUMNS = ("Potency", "IC50", "EC50", "AC50", "PUBCHEM_ACTIVITY_VALUE", "Activity Value [uM]", "activity_value")


class PubChemError(RuntimeError):
    pass


class NotFoundError(PubChemError):
    pass


class PubChemFormatError(PubChemError):
    def __init__(self, message: str, raw_path: Path | None = None):
        super().__init__(message + (f" (raw payload kept at {raw_path})" if raw_path else ""))
        self.raw_path = raw_path


class Transport(Protocol):
    def __call__(self, url: str, data: bytes | None = None) -> tuple[int, bytes]: ...


class UrllibTransport:
    """Live HTTPS transport."""

    def __init__(self, timeout: float = 60.0):
        self.timeout = timeout
        self.calls = 0

    def __call__(self, url: str, data: bytes | None = None) -> tuple[int, bytes]:
        self.calls += 1
        req = urllib.request.Request(url, data=data)
        if data is not None:
            req.add_header("Content-Type", "application/x-www-form-urlencoded")
        try:
            with urllib.request.urlopen(req, timeout=self.timeout) as resp:
                return resp.status, resp.read()
        except urllib.error.HTTPError as exc:
            return exc.code, exc.read() or b""
        except urllib.error.URLError as exc:
            raise PubChemError(f"network error for {url}: {exc.reason}") from None


class FixtureTransport:
    """Serves PUG REST URLs from a directory; never touches the network.

    Layout: ``assay/<aid>.csv`` or ``assay/<aid>.csv.gz`` (PubChem assay
    CSV) and ``compounds.csv`` (``cid,smiles,inchi``).
    """

    def __init__(self, root: str | Path):
        self.root = Path(root)
        self.calls = 0
        self._compounds: dict[int, tuple[str, str]] | None = None

    def _compound_table(self) -> dict[int, tuple[str, str]]:
        if self._compounds is None:
            self._compounds = {}
            path = self.root / "compounds.csv"
            if path.exists():
                with open(path, newline="") as fh:
                    for row in csv.DictReader(fh):
                        self._compounds[int(row["cid"])] = (row["smiles"], row.get("inchi", ""))
        return self._compounds

    def __call__(self, url: str, data: bytes | None = None) -> tuple[int, bytes]:
        self.calls += 1
        path = url[len(BASE_URL):] if url.startswith(BASE_URL) else url
        parts = path.strip("/").split("/")
        if parts[:2] == ["assay", "aid"] and len(parts) >= 3:
            f = self.root / "assay" / f"{parts[2]}.csv"
            if f.exists():
                return 200, f.read_bytes()
            gz = f.with_name(f.name + ".gz")
            if gz.exists():
                return 200, gzip.decompress(gz.read_bytes())
            return 404, b"PUGREST.NotFound"
        if parts[:2] == ["compound", "cid"]:
            body = data.decode() if data else parts[2]
            text = body.split("=", 1)[1] if body.startswith("cid=") else body
            cids = [int(c) for c in text.split(",") if c.strip()]
            table = self._compound_table()
            out = io.StringIO()
            w = csv.writer(out, lineterminator="\n")
            w.writerow(["CID", "IsomericSMILES", "InChI"])
            hits = 0
            for c in cids:
                if c in table:
                    w.writerow([c, *table[c]])
                    hits += 1
            if not hits:
                return 404, b"PUGREST.NotFound"
            return 200, out.getvalue().encode()
        return 400, b"PUGREST.BadRequest"


class RateLimiter:
    """Spaces calls at least ``1/rate`` seconds apart; thread-safe."""

    def __init__(self, rate: float = DEFAULT_RATE, clock: Callable[[], float] = time.monotonic,
                 sleep: Callable[[float], None] = time.sleep):
        self.interval = 1.0 / rate if rate > 0 else 0.0
        self._clock, self._sleep = clock, sleep
        self._next = 0.0
        self._lock = threading.Lock()

    def wait(self) -> None:
        with self._lock:
            now = self._clock()
            if now < self._next:
                self._sleep(self._next - now)
                now = self._next
            self._next = now + self.interval


@dataclass(frozen=True)
class AssayFetchSpec:
    aid: int
    fields: tuple[str, ...] = ("cid", "outcome", "activity_value")
    cache_dir: str | None = None

    def __post_init__(self):
        if int(self.aid) <= 0:
            raise ValueError("aid must be positive")


@dataclass
class AssayTable:
    aid: int
    outcomes: dict[int, str] = field(default_factory=dict)  # cid -> active/inactive/inconclusive
    values: dict[int, float] = field(default_factory=dict)  # cid -> µM

    def counts(self) -> dict[str, int]:
        c = {o: 0 for o in OUTCOMES}
        for o in self.outcomes.values():
            c[o] += 1
        return c

    def to_csv(self) -> str:
        out = io.StringIO()
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["cid", "outcome", "activity_value"])
        for cid in sorted(self.outcomes):
            v = self.values.get(cid)
            w.writerow([cid, self.outcomes[cid], "" if v is None else repr(v)])
        return out.getvalue()

    @classmethod
    def from_csv(cls, aid: int, text: str) -> "AssayTable":
        t = cls(aid)
        for row in csv.DictReader(io.StringIO(text)):
            cid = int(row["cid"])
            t.outcomes[cid] = row["outcome"]
            if row.get("activity_value"):
                t.values[cid] = float(row["activity_value"])
        return t


def normalize_outcome(text: str) -> str:
    key = text.strip().lower()
    if key not in _OUTCOME_SYNONYMS:
        raise ValueError(f"unknown activity outcome {text!r}")
    return _OUTCOME_SYNONYMS[key]


def _pick(header: list[str], names: Iterable[str]) -> str | None:
    for n in names:
        if n in header:
            return n
    return None


def parse_assay_csv(aid: int, payload: bytes) -> AssayTable:
    """Normalize a PubChem assay CSV; descriptor rows without a numeric CID are skipped."""
    reader = csv.DictReader(io.StringIO(payload.decode("utf-8-sig")))
    header = reader.fieldnames or []
    cid_col = _pick(header, _CID_COLUMNS)
    out_col = _pick(header, _OUTCOME_COLUMNS)
    if cid_col is None or out_col is None:
        raise ValueError(f"no CID/outcome column among {header[:12]}")
    val_col = _pick(header, _VALUE_COLUMNS)
    table = AssayTable(aid)
    for row in reader:
        raw_cid = (row.get(cid_col) or "").strip()
        if not raw_cid.isdigit():
            continue
        cid = int(raw_cid)
        outcome = normalize_outcome(row.get(out_col) or "")
        prev = table.outcomes.get(cid)
        # several substances can share a CID; an active reading wins, then inactive
        if prev is None or OUTCOMES.index(outcome) < OUTCOMES.index(prev):
            table.outcomes[cid] = outcome
        if val_col and (row.get(val_col) or "").strip():
            try:
                table.values.setdefault(cid, float(row[val_col]))
            except ValueError:
                pass
    return table


def _atomic_write(path: Path, data: bytes) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name + ".")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise


@dataclass
class IdentifierResult:
    found: dict[int, tuple[str, str]]  # cid -> (isomeric SMILES, InChI)
    missing: list[int]


class PubChemClient:
    def __init__(
        self,
        cache_dir: str | Path | None = None,
        transport: Transport | None = None,
        *,
        fixture_dir: str | Path | None = None,
        rate: float = DEFAULT_RATE,
        retries: int = 3,
        backoff: float = 0.5,
        batch_size: int = 200,
        sleep: Callable[[float], None] = time.sleep,
    ):
        cache_dir = cache_dir or os.environ.get(CACHE_ENV) or "cache"
        self.cache = Path(cache_dir)
        fixture_dir = fixture_dir or os.environ.get(FIXTURE_ENV)
        if transport is None:
            transport = FixtureTransport(fixture_dir) if fixture_dir else UrllibTransport()
        self.transport = transport
        self.limiter = RateLimiter(rate, sleep=sleep)
        self.retries = retries
        self.backoff = backoff
        self.batch_size = batch_size
        self._sleep = sleep

    def _request(self, url: str, data: bytes | None = None) -> bytes:
        last = None
        for attempt in range(self.retries + 1):
            self.limiter.wait()
            status, body = self.transport(url, data)
            if status == 200:
                return body
            if status == 404:
                raise NotFoundError(f"not found: {url}")
            if status in (400, 405):
                raise PubChemError(f"HTTP {status} for {url}: {body[:200]!r}")
            last = status
            if attempt < self.retries:
                self._sleep(self.backoff * 2 ** attempt)
        raise PubChemError(f"HTTP {last} for {url} after {self.retries + 1} attempts")

    def assay_cache_path(self, aid: int) -> Path:
        return self.cache / "assay" / f"{int(aid)}.csv"

    def fetch_assay(self, spec: AssayFetchSpec | int) -> AssayTable:
        if not isinstance(spec, AssayFetchSpec):
            spec = AssayFetchSpec(int(spec))
        path = (Path(spec.cache_dir) / "assay" / f"{spec.aid}.csv") if spec.cache_dir else self.assay_cache_path(spec.aid)
        if path.exists():
            return AssayTable.from_csv(spec.aid, path.read_text())
        payload = self._request(f"{BASE_URL}/assay/aid/{spec.aid}/CSV")
        try:
            table = parse_assay_csv(spec.aid, payload)
        except ValueError as exc:
            raw = path.parent.parent / "raw" / f"assay_{spec.aid}.csv"
            _atomic_write(raw, payload)
            raise PubChemFormatError(f"assay {spec.aid}: {exc}", raw) from None
        _atomic_write(path, table.to_csv().encode())
        return table

    def _batch_path(self, cids: list[int]) -> Path:
        digest = hashlib.sha256(",".join(map(str, cids)).encode()).hexdigest()[:16]
        return self.cache / "cid" / f"{digest}.csv"

    def exchange_identifiers(self, cids: Iterable[int]) -> IdentifierResult:
        """CID -> (isomeric SMILES, InChI), batched; unknown CIDs are listed as missing."""
        wanted = list(dict.fromkeys(int(c) for c in cids))
        found: dict[int, tuple[str, str]] = {}
        for i in range(0, len(wanted), self.batch_size):
            batch = wanted[i:i + self.batch_size]
            path = self._batch_path(batch)
            if path.exists():
                text = path.read_text()
            else:
                url = f"{BASE_URL}/compound/cid/property/IsomericSMILES,InChI/CSV"
                try:
                    payload = self._request(url, ("cid=" + ",".join(map(str, batch))).encode())
                    text = payload.decode()
                except NotFoundError:
                    text = "CID,IsomericSMILES,InChI\n"
                _atomic_write(path, text.encode())
            for row in csv.DictReader(io.StringIO(text)):
                smiles = row.get("IsomericSMILES") or row.get("SMILES") or ""
                found[int(row["CID"])] = (smiles, row.get("InChI", ""))
        missing = [c for c in wanted if c not in found]
        return IdentifierResult({c: found[c] for c in wanted if c in found}, missing)
