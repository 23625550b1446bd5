"""Coarse reader-writer exclusion for the ontology store.

One writer or many readers at a time. The lock is reentrant for the thread
that holds it: a writer may take nested read or write holds, and a thread
already holding a read hold is granted further reads even while a writer is
queued (otherwise a reader that re-enters during a pending write would
deadlock). Read-to-write upgrades are refused outright.
"""

import threading
from contextlib import contextmanager


class RWLock:
    def __init__(self):
        self._cond = threading.Condition()
        self._readers: dict[int, int] = {}  # thread ident -> nesting depth
        self._writer: int | None = None
        self._writer_depth = 0
        self._want_write = 0

    @contextmanager
    def read(self):
        self.acquire_read()
        try:
            yield
        finally:
            self.release_read()

    @contextmanager
    def write(self):
        self.acquire_write()
        try:
            yield
        finally:
            self.release_write()

    def acquire_read(self):
        me = threading.get_ident()
        with self._cond:
            if self._writer == me or me in self._readers:
                self._readers[me] = self._readers.get(me, 0) + 1
                return
            # writer preference: fresh readers queue behind waiting writers
            while self._writer is not None or self._want_write:
                self._cond.wait()
            self._readers[me] = 1

    def release_read(self):
        me = threading.get_ident()
        with self._cond:
            depth = self._readers.get(me, 0)
            if depth == 0:
                raise RuntimeError("release_read without a matching acquire")
            if depth == 1:
                del self._readers[me]
                self._cond.notify_all()
            else:
                self._readers[me] = depth - 1

    def acquire_write(self):
        me = threading.get_ident()
        with self._cond:
            if self._writer == me:
                self._writer_depth += 1
                return
            if me in self._readers:
                raise RuntimeError("cannot upgrade a read hold to a write hold")
            self._want_write += 1
            try:
                while self._writer is not None or self._readers:
                    self._cond.wait()
            finally:
                self._want_write -= 1
            self._writer = me
            self._writer_depth = 1

    def release_write(self):
        me = threading.get_ident()
        with self._cond:
            if self._writer != me:
                raise RuntimeError("release_write by a thread that does not hold it")
            self._writer_depth -= 1
            if self._writer_depth == 0:
                self._writer = None
                self._cond.notify_all()
