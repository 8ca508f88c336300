import json
import logging
import threading
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, Optional

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CachedCompletion:
    content: str
    model: str


class ResponseCache:
    """
    A thread-safe map from request cache keys to completions, optionally persisted as one JSON file per
    key under a directory.
    """

    def __init__(self, directory: Optional[Path | str] = None):
        self.directory = Path(directory) if directory is not None else None
        if self.directory is not None:
            self.directory.mkdir(parents=True, exist_ok=True)
        self.__entries: Dict[str, CachedCompletion] = {}
        self.__lock = threading.Lock()

    def __entry_path(self, key: str) -> Path:
        return self.directory / f"{key}.json"

    def get(self, key: str) -> Optional[CachedCompletion]:
        with self.__lock:
            if key in self.__entries:
                return self.__entries[key]

            if self.directory is None or not self.__entry_path(key).exists():
                return None

            try:
                data = json.loads(self.__entry_path(key).read_text(encoding="utf-8"))
                entry = CachedCompletion(data["content"], data["model"])
            except (OSError, ValueError, KeyError) as error:
                logger.warning("Ignoring unreadable cache entry %s: %s", key, error)
                return None

            self.__entries[key] = entry
            return entry

    def put(self, key: str, content: str, model: str) -> None:
        entry = CachedCompletion(content, model)
        with self.__lock:
            self.__entries[key] = entry
            if self.directory is not None:
                self.__entry_path(key).write_text(
                    json.dumps({"content": content, "model": model}, ensure_ascii=False),
                    encoding="utf-8",
                )

    def __len__(self) -> int:
        with self.__lock:
            return len(self.__entries)
