"""National Vulnerability Database client with a write-through file cache.

Fetches the English description of a CVE from the public NVD JSON API.
Every successful fetch is cached (one JSON file per CVE id), so repeated
lookups are offline and byte-identical.  The API key and cache directory
can be supplied via the NVD_API_KEY and VULNCHAR_CACHE_DIR environment
variables.
"""

from __future__ import annotations

import json
import os
import threading
from pathlib import Path
from typing import Callable

import requests

from .corpus import CveRecord, MalformedCveIdError, _check_cve_id

NVD_API_URL = "https://services.nvd.nist.gov/rest/json/cves/2.0"
API_KEY_ENV = "NVD_API_KEY"
CACHE_DIR_ENV = "VULNCHAR_CACHE_DIR"

# transport(url, params, headers, timeout) -> (status_code, headers, parsed json)
Transport = Callable[[str, dict, dict, float], tuple[int, dict, dict]]


class NvdError(Exception):
    """Base class for NVD lookup failures."""


class CveNotFoundError(NvdError):
    def __init__(self, cve_id: str):
        super().__init__(f"{cve_id} not found in the NVD")
        self.cve_id = cve_id


class NvdTransportError(NvdError):
    pass


class NvdRateLimitedError(NvdError):
    def __init__(self, retry_after: float | None):
        suffix = f"; retry after {retry_after}s" if retry_after is not None else ""
        super().__init__(f"NVD rate limit hit{suffix}")
        self.retry_after = retry_after


def _requests_transport(url: str, params: dict, headers: dict, timeout: float):
    try:
        resp = requests.get(url, params=params, headers=headers, timeout=timeout)
    except requests.RequestException as e:
        raise NvdTransportError(str(e)) from e
    body = {}
    if resp.status_code == 200:
        try:
            body = resp.json()
        except ValueError as e:
            raise NvdTransportError(f"invalid JSON from NVD: {e}") from e
    return resp.status_code, dict(resp.headers), body


def default_cache_dir() -> Path:
    override = os.environ.get(CACHE_DIR_ENV)
    if override:
        return Path(override)
    return Path.home() / ".cache" / "vulnchar" / "nvd"


class NvdClient:
    def __init__(
        self,
        cache_dir: str | Path | None = None,
        api_key: str | None = None,
        transport: Transport = _requests_transport,
        timeout: float = 30.0,
    ):
        self.cache_dir = Path(cache_dir) if cache_dir is not None else default_cache_dir()
        self.api_key = api_key if api_key is not None else os.environ.get(API_KEY_ENV)
        self.transport = transport
        self.timeout = timeout
        self._cache_lock = threading.Lock()

    def _cache_path(self, cve_id: str) -> Path:
        return self.cache_dir / f"{cve_id}.json"

    def _read_cache(self, cve_id: str) -> CveRecord | None:
        path = self._cache_path(cve_id)
        if not path.exists():
            return None
        try:
            data = json.loads(path.read_text("utf-8"))
            return CveRecord(data["cve_id"], data["description"], data.get("source"))
        except (ValueError, KeyError):
            return None  # corrupt cache entry: fall through to a fresh fetch

    def _write_cache(self, record: CveRecord) -> None:
        payload = json.dumps(
            {
                "cve_id": record.cve_id,
                "description": record.description,
                "source": record.source,
            },
            ensure_ascii=False,
            indent=2,
        )
        with self._cache_lock:
            self.cache_dir.mkdir(parents=True, exist_ok=True)
            self._cache_path(record.cve_id).write_text(payload + "\n", "utf-8")

    def fetch(self, cve_id: str) -> CveRecord:
        """Return the CVE record, from cache when available.

        Malformed ids are rejected before any network activity.  Rate-limit
        responses surface the server's Retry-After value.
        """
        _check_cve_id(cve_id)
        cached = self._read_cache(cve_id)
        if cached is not None:
            return cached

        headers = {}
        if self.api_key:
            headers["apiKey"] = self.api_key
        status, resp_headers, body = self.transport(
            NVD_API_URL, {"cveId": cve_id}, headers, self.timeout
        )

        if status in (403, 429):
            retry_after = resp_headers.get("Retry-After")
            raise NvdRateLimitedError(float(retry_after) if retry_after else None)
        if status == 404:
            raise CveNotFoundError(cve_id)
        if status != 200:
            raise NvdTransportError(f"NVD returned HTTP {status} for {cve_id}")

        record = self._parse_response(cve_id, body)
        self._write_cache(record)
        return record

    @staticmethod
    def _parse_response(cve_id: str, body: dict) -> CveRecord:
        vulnerabilities = body.get("vulnerabilities") or []
        for item in vulnerabilities:
            cve = item.get("cve", {})
            if cve.get("id") != cve_id:
                continue
            for desc in cve.get("descriptions", []):
                if desc.get("lang") == "en":
                    return CveRecord(cve_id, desc["value"], source=NVD_API_URL)
        raise CveNotFoundError(cve_id)


def fetch_cve(cve_id: str, **kwargs) -> CveRecord:
    """One-shot convenience wrapper around NvdClient.fetch."""
    return NvdClient(**kwargs).fetch(cve_id)
