"""Thin HTTP client for the proxy service's management endpoints."""
from __future__ import annotations

import requests

from .errors import CommsError


class ManagementClient:
    def __init__(self, management_url: str, timeout: float = 10.0):
        self.base = management_url.rstrip("/")
        self.timeout = timeout
        self._session = requests.Session()

    def _call(self, method: str, path: str, params: dict) -> str:
        try:
            resp = self._session.request(
                method, f"{self.base}{path}", params=params, timeout=self.timeout
            )
        except requests.RequestException as exc:
            raise CommsError(f"cannot reach {self.base}{path}: {exc}") from exc
        if resp.status_code != 200:
            raise CommsError(
                f"{path} returned {resp.status_code}: {resp.text.strip() or '(no body)'}"
            )
        return resp.text

    def get_token(self) -> str:
        label = self._call("GET", "/getlink.cgi", {}).strip()
        if not label:
            raise CommsError("service returned an empty token")
        return label

    def register_job(self, token: str, job_id: str) -> None:
        self._call("POST", "/registerjob", {"token": token, "job_id": job_id})

    def redeem(self, token: str, port: int) -> None:
        self._call("GET", "/redeemtoken.cgi", {"token": token, "port": port})

    def destroy(self, token: str, port: int) -> None:
        self._call("GET", "/destroytoken.cgi", {"token": token, "port": port})

    def post_job_status(self, job_id: str, state: str, detail: str | None = None) -> None:
        params = {"job_id": job_id, "state": state}
        if detail is not None:
            params["detail"] = detail
        self._call("POST", "/jobstatus", params)

    def close(self) -> None:
        self._session.close()
