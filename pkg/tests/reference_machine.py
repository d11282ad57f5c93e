"""Independent reference interpreter for the token lifecycle.

Deliberately naive: plain dicts, no locks, no journal, no routing-table
bookkeeping (the routed set is recomputed from scratch on every reconcile).
It encodes the documented transition rules and validation order directly, so
equivalence against the production registry is a meaningful check. Keep this
file free of imports from tokenrelay internals beyond error codes.
"""
from __future__ import annotations

import ipaddress

ISSUED, MAPPED, DESTROYED, EXPIRED = "ISSUED", "MAPPED", "DESTROYED", "EXPIRED"
TERMINAL = {DESTROYED, EXPIRED}


class RefMachine:
    def __init__(self, trusted_cidrs, mapping_ttl, issue_ttl, retention):
        self.nets = [ipaddress.ip_network(c) for c in trusted_cidrs]
        self.mapping_ttl = mapping_ttl
        self.issue_ttl = issue_ttl
        self.retention = retention
        self.recs: dict[str, dict] = {}
        self.terminal_at: dict[str, float] = {}
        self.routed: set[str] = set()

    def _trusted(self, ip):
        try:
            addr = ipaddress.ip_address(ip)
        except ValueError:
            return False
        return any(addr in n for n in self.nets)

    # every op returns "OK" or an error code string

    def issue(self, label, client_ip, now):
        if not self._trusted(client_ip):
            return "ORIGIN_FORBIDDEN"
        if label in self.recs:
            return "EXHAUSTED"  # production never reuses a stored label
        self.recs[label] = {
            "label": label,
            "state": ISSUED,
            "issued_at": now,
            "issuer_ip": client_ip,
            "job_id": None,
            "mapping": None,
        }
        return "OK"

    def register(self, label, job_id, client_ip, now):
        if not self._trusted(client_ip):
            return "ORIGIN_FORBIDDEN"
        rec = self.recs.get(label)
        if rec is None or rec["state"] in TERMINAL:
            return "NOT_FOUND"
        if rec["job_id"] is not None and rec["job_id"] != job_id:
            return "CONFLICT"
        rec["job_id"] = job_id
        return "OK"

    def redeem(self, label, port, client_ip, now):
        if not self._trusted(client_ip):
            return "ORIGIN_FORBIDDEN"
        rec = self.recs.get(label)
        if rec is None or rec["state"] in TERMINAL:
            return "NOT_FOUND"
        if rec["state"] == MAPPED:
            return "ALREADY_MAPPED"
        if not 1 <= port <= 65535:
            return "BAD_PORT"
        if port < 1024:
            return "PRIVILEGED_PORT"
        rec["state"] = MAPPED
        rec["mapping"] = {
            "target_ip": client_ip,
            "target_port": port,
            "created_at": now,
            "expires_at": now + self.mapping_ttl,
            "creator_ip": client_ip,
            "active": False,
        }
        return "OK"

    def destroy(self, label, port, client_ip, now):
        rec = self.recs.get(label)
        if rec is None or rec["state"] != MAPPED:
            return "NOT_FOUND"
        if client_ip != rec["mapping"]["creator_ip"]:
            return "ORIGIN_FORBIDDEN"
        if port != rec["mapping"]["target_port"]:
            return "BAD_PORT"
        rec["state"] = DESTROYED
        rec["mapping"] = None
        self.terminal_at[label] = now
        return "OK"

    def expire(self, now):
        out = []
        for rec in self.recs.values():
            if rec["state"] == MAPPED and rec["mapping"]["expires_at"] <= now:
                rec["state"] = EXPIRED
                rec["mapping"] = None
            elif rec["state"] == ISSUED and rec["issued_at"] + self.issue_ttl <= now:
                rec["state"] = EXPIRED
            else:
                continue
            self.terminal_at[rec["label"]] = now
            out.append(rec["label"])
        return out

    def reconcile(self, now):
        self.expire(now)
        for label in [l for l, t in self.terminal_at.items() if t + self.retention <= now]:
            del self.terminal_at[label]
            self.recs.pop(label, None)
        for rec in self.recs.values():
            if rec["state"] == MAPPED:
                rec["mapping"]["active"] = True
        new_routed = {l for l, r in self.recs.items() if r["state"] == MAPPED}
        activations = len(new_routed - self.routed)
        deactivations = len(self.routed - new_routed)
        self.routed = new_routed
        return activations, deactivations
