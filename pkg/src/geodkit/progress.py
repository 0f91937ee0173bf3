"""Status lines for long computations, written to stderr."""

import sys
import threading
import time
from contextlib import contextmanager
from typing import Callable, ContextManager, Iterator, Optional, TextIO, TypeVar

CLEAR_LINE = "\r\033[K"


class _StatusLine:
    """One rewritable terminal line; writes are serialized by a lock."""

    def __init__(self, message: str, stream: Optional[TextIO] = None) -> None:
        self.message = message
        self.stream = stream if stream is not None else sys.stderr
        self._lock = threading.Lock()

    def show(self, text: str) -> None:
        with self._lock:
            self.stream.write(CLEAR_LINE + text)
            self.stream.flush()

    def clear(self, final_message: Optional[str] = None) -> None:
        with self._lock:
            self.stream.write(CLEAR_LINE)
            if final_message:
                self.stream.write(final_message + "\n")
            self.stream.flush()


class Spinner(_StatusLine):
    """Spinner with elapsed seconds, for computations of unknown length."""

    FRAMES = "⠋⠙⠹⠸⠼⠴⠦⠧⠇⠏"

    def __init__(
        self, message: str = "Working", interval: float = 0.1, stream: Optional[TextIO] = None
    ) -> None:
        super().__init__(message, stream)
        self.interval = interval
        self._halt = threading.Event()
        self._worker: Optional[threading.Thread] = None
        self._started = 0.0

    def render(self, tick: int) -> str:
        elapsed = time.monotonic() - self._started
        return f"{self.FRAMES[tick % len(self.FRAMES)]} {self.message} ({elapsed:.0f}s)"

    def _run(self) -> None:
        tick = 0
        while not self._halt.wait(self.interval if tick else 0):
            self.show(self.render(tick))
            tick += 1

    def start(self) -> "Spinner":
        if self._worker is None:
            self._halt.clear()
            self._started = time.monotonic()
            self._worker = threading.Thread(target=self._run, daemon=True)
            self._worker.start()
        return self

    def stop(self, final_message: Optional[str] = None) -> None:
        self._halt.set()
        if self._worker is not None:
            self._worker.join(timeout=1.0)
            self._worker = None
        self.clear(final_message)


class SearchProgress(_StatusLine):
    """Bar over the candidate ``N`` of a common index jump search.

    Instances are callables with the ``(done, total)`` signature expected by
    :func:`geodkit.jump.find_common_jump`. The search may stop early, so the bar is
    cleared rather than filled when it finishes.
    """

    def __init__(
        self, message: str = "Searching N", width: int = 30, stream: Optional[TextIO] = None
    ) -> None:
        super().__init__(message, stream)
        self.width = width
        self.done = 0
        self.total = 0

    def render(self) -> str:
        filled = self.width * self.done // max(self.total, 1)
        bar = "█" * filled + "░" * (self.width - filled)
        return f"{self.message} [{bar}] N {self.done}/{self.total}"

    def __call__(self, done: int, total: int) -> None:
        self.done, self.total = done, total
        self.show(self.render())


S = TypeVar("S", bound=_StatusLine)


@contextmanager
def _status(make: Callable[[], S], close: Callable[[S, Optional[str]], None],
            enabled: bool) -> Iterator[Optional[S]]:
    if not enabled:
        yield None
        return
    line = make()
    try:
        yield line
    except Exception:
        close(line, f"✗ {line.message} failed")
        raise
    close(line, None)


def spinner(
    message: str, enabled: bool = True, stream: Optional[TextIO] = None
) -> ContextManager[Optional[Spinner]]:
    """Show a spinner around a block when ``enabled``.

    Example:
        with spinner("Counting critical modules", enabled=sys.stderr.isatty()):
            table = morse_counts(models, 20)
    """
    return _status(lambda: Spinner(message, stream=stream).start(), Spinner.stop, enabled)


def search_progress(
    enabled: bool = True, stream: Optional[TextIO] = None
) -> ContextManager[Optional[SearchProgress]]:
    """Yield a :class:`SearchProgress` callback, or ``None`` when disabled."""
    return _status(lambda: SearchProgress(stream=stream), SearchProgress.clear, enabled)
