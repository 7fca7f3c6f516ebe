"""Client for a COMcheck-style compliance API with three transports.

The tool surface is identical whatever the connectivity: `live` posts to
a configured HTTP endpoint, `replay` answers from recorded fixtures keyed
by a canonical request hash, and `local` delegates to the in-process
rules engine. Replay is the default in tests and local the default in
the CLI, so everything runs offline; live mode needs COMCHECK_ENDPOINT
(and optionally COMCHECK_TOKEN) and is never exercised by the test suite.

The live request/response schema is a thin placeholder seam (a JSON
mapping of the request fields, answered by {"allowed_watts": N}); the
real service's contract is not public, so only the transport shape is
fixed here.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
import time
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Mapping

from . import rules

logger = logging.getLogger(__name__)

ENDPOINT_ENV = "COMCHECK_ENDPOINT"
TOKEN_ENV = "COMCHECK_TOKEN"
MODE_ENV = "COMCHECK_MODE"


class ComcheckError(Exception):
    pass


class MissingFixture(ComcheckError):
    pass


class EndpointUnreachable(ComcheckError):
    pass


class MalformedResponse(ComcheckError):
    pass


class TransportMode(Enum):
    LIVE = "live"
    REPLAY = "replay"
    LOCAL = "local"


@dataclass(frozen=True)
class AllowanceRequest:
    floor_area_ft2: float
    use_type: str
    code_version: str

    def to_payload(self) -> dict:
        return {
            "floor_area_ft2": self.floor_area_ft2,
            "use_type": self.use_type,
            "code_version": self.code_version,
        }


def canonical_request(request: AllowanceRequest) -> str:
    """Canonical JSON for hashing: sorted keys, repr-exact floats."""
    return json.dumps(request.to_payload(), sort_keys=True, separators=(",", ":"))


def request_hash(request: AllowanceRequest) -> str:
    return hashlib.sha256(canonical_request(request).encode()).hexdigest()


class FixtureStore:
    """Recorded responses keyed by canonical request hash.

    In-memory map, optionally mirrored to one JSON file per hash under a
    fixtures directory. Re-recording an identical (request, response)
    pair is a no-op; a different response overwrites with a warning.
    """

    def __init__(self, directory: str | Path | None = None):
        self.directory = Path(directory) if directory else None
        self._entries: dict[str, dict] = {}
        if self.directory and self.directory.is_dir():
            for path in sorted(self.directory.glob("*.json")):
                self._entries[path.stem] = json.loads(path.read_text())

    def __len__(self) -> int:
        return len(self._entries)

    def record(self, request: AllowanceRequest, response: dict, source: str = "") -> str:
        digest = request_hash(request)
        existing = self._entries.get(digest)
        if existing is not None:
            if existing["response"] == response:
                return digest
            logger.warning(
                "overwriting fixture %s with a different response", digest[:12]
            )
        entry = {
            "request": request.to_payload(),
            "response": response,
            "recorded_at": time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()),
            "source": source,
        }
        self._entries[digest] = entry
        if self.directory:
            self.directory.mkdir(parents=True, exist_ok=True)
            (self.directory / f"{digest}.json").write_text(json.dumps(entry, indent=2))
        return digest

    def lookup(self, request: AllowanceRequest) -> dict:
        digest = request_hash(request)
        try:
            return self._entries[digest]["response"]
        except KeyError:
            raise MissingFixture(f"no recorded response for request hash {digest}") from None


def record_fixture(
    store: FixtureStore, request: AllowanceRequest, response: dict
) -> FixtureStore:
    store.record(request, response)
    return store


def _parse_watts(document: Mapping) -> int:
    try:
        watts = document["allowed_watts"]
    except (KeyError, TypeError):
        raise MalformedResponse(
            f"response lacks 'allowed_watts': {json.dumps(dict(document))[:200]}"
        ) from None
    if not isinstance(watts, (int, float)):
        raise MalformedResponse(f"'allowed_watts' is not numeric: {watts!r}")
    return int(watts)


class ComcheckClient:
    """Allowance queries through one of the three transports."""

    def __init__(
        self,
        mode: TransportMode = TransportMode.LOCAL,
        store: FixtureStore | None = None,
        endpoint: str | None = None,
        token: str | None = None,
        tables: Mapping[str, rules.LpdTable] | None = None,
        transport=None,  # injectable httpx transport, for offline tests
    ):
        self.mode = mode
        self.store = store
        self.endpoint = endpoint or os.environ.get(ENDPOINT_ENV)
        self.token = token or os.environ.get(TOKEN_ENV)
        self.tables = tables
        self._transport = transport

    @classmethod
    def from_env(cls, fixtures_dir: str | Path | None = None) -> "ComcheckClient":
        """Mode from COMCHECK_MODE; defaults to local when unset."""
        mode = TransportMode(os.environ.get(MODE_ENV, "local"))
        store = FixtureStore(fixtures_dir) if fixtures_dir else None
        return cls(mode=mode, store=store)

    def allowed_wattage(self, request: AllowanceRequest) -> int:
        if self.mode is TransportMode.LOCAL:
            return rules.lighting_allowed_wattage(
                request.floor_area_ft2,
                rules.AreaUnit.FT2,
                request.use_type,
                request.code_version,
                self.tables,
            )
        if self.mode is TransportMode.REPLAY:
            if self.store is None:
                raise MissingFixture("replay mode configured without a fixture store")
            return _parse_watts(self.store.lookup(request))
        return self._live_call(request)

    def _live_call(self, request: AllowanceRequest) -> int:
        if not self.endpoint:
            raise EndpointUnreachable(
                f"live mode needs an endpoint ({ENDPOINT_ENV} unset)"
            )
        import httpx

        headers = {}
        if self.token:
            headers["Authorization"] = f"Bearer {self.token}"
        try:
            with httpx.Client(transport=self._transport, timeout=30.0) as client:
                response = client.post(
                    self.endpoint, json=request.to_payload(), headers=headers
                )
            response.raise_for_status()
            document = response.json()
        except httpx.HTTPError as exc:
            raise EndpointUnreachable(str(exc)) from exc
        except json.JSONDecodeError as exc:
            raise MalformedResponse(f"response is not JSON: {exc}") from exc
        watts = _parse_watts(document)
        if self.store is not None:
            self.store.record(request, document, source=self.endpoint)
        return watts


def allowed_wattage(
    request: AllowanceRequest,
    mode: TransportMode,
    store: FixtureStore | None = None,
    tables: Mapping[str, rules.LpdTable] | None = None,
) -> int:
    """One-shot helper over ComcheckClient for the common transports."""
    return ComcheckClient(mode=mode, store=store, tables=tables).allowed_wattage(request)
