import threading
from collections import OrderedDict
from typing import Optional

from litera.pipeline.translation_trace import TranslationTrace


class TraceStore:
    """
    The most recent traces, held in memory. The oldest trace is evicted once capacity is reached.
    """

    def __init__(self, capacity: int):
        if capacity < 1:
            raise ValueError(f"capacity must be at least 1, got {capacity}")
        self.capacity = capacity
        self.__traces: "OrderedDict[str, TranslationTrace]" = OrderedDict()
        self.__lock = threading.Lock()

    def put(self, trace: TranslationTrace) -> None:
        with self.__lock:
            self.__traces[trace.trace_id] = trace
            self.__traces.move_to_end(trace.trace_id)
            while len(self.__traces) > self.capacity:
                self.__traces.popitem(last=False)

    def get(self, trace_id: str) -> Optional[TranslationTrace]:
        with self.__lock:
            return self.__traces.get(trace_id)

    def __len__(self) -> int:
        with self.__lock:
            return len(self.__traces)
