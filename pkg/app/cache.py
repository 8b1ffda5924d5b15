import hashlib
import json
import time
from typing import Any, Optional, Dict

class ReportCache:
    """In-memory TTL cache for evaluation reports, keyed by upload content and parameters"""

    def __init__(self, ttl_seconds: int = 300):
        self.ttl_seconds = ttl_seconds
        self._entries: Dict[str, Dict[str, Any]] = {}

    def _key(self, endpoint: str, params: Dict[str, Any]) -> str:
        # parameter order must not change the key
        encoded = json.dumps(params, sort_keys=True, default=str)
        return hashlib.md5(f"{endpoint}:{encoded}".encode()).hexdigest()

    def _expired(self, entry: Dict[str, Any], now: float) -> bool:
        return now - entry["timestamp"] >= self.ttl_seconds

    def get(self, endpoint: str, params: Dict[str, Any]) -> Optional[Any]:
        """Stored report for this request, or None once its TTL has passed"""
        key = self._key(endpoint, params)
        entry = self._entries.get(key)
        if entry is None:
            return None
        if self._expired(entry, time.time()):
            del self._entries[key]
            return None
        entry["hits"] += 1
        return entry["data"]

    def set(self, endpoint: str, params: Dict[str, Any], data: Any) -> None:
        self.clear_expired()
        self._entries[self._key(endpoint, params)] = {
            "data": data,
            "timestamp": time.time(),
            "hits": 0,
            "endpoint": endpoint
        }

    def clear_expired(self) -> int:
        """Drop every expired report; returns how many were dropped"""
        now = time.time()
        expired = [key for key, entry in self._entries.items() if self._expired(entry, now)]
        for key in expired:
            del self._entries[key]
        return len(expired)

    def get_stats(self) -> Dict[str, Any]:
        by_endpoint: Dict[str, Dict[str, int]] = {}
        for entry in self._entries.values():
            stats = by_endpoint.setdefault(entry["endpoint"], {"count": 0, "hits": 0})
            stats["count"] += 1
            stats["hits"] += entry["hits"]

        return {
            "total_entries": len(self._entries),
            "total_hits": sum(stats["hits"] for stats in by_endpoint.values()),
            "endpoint_breakdown": by_endpoint,
            "ttl_seconds": self.ttl_seconds
        }

def content_digest(content: bytes) -> str:
    """SHA-256 of an uploaded CSV, used as the dataset part of a cache key"""
    return hashlib.sha256(content).hexdigest()
