"""Persistent cache of computed counts.

File format: one record per line, ``section:key<TAB>value``, where the
section is ``gw`` (blowup Gromov-Witten invariants) or ``ht`` (tangency
invariants in the ordered-branch normalization), the key is the textual
form of the invariant's arguments, and the value is a decimal integer.
Damaged or unrecognized lines are skipped on load, so a truncated append
never poisons a cache file.

New results are appended as they are harvested; a clean close rewrites the
whole file atomically (temp file in the same directory, then rename) with
one sorted record per key.  Concurrent runs are serialized by an advisory
lock on the cache file itself; when the lock cannot be taken the cache
opens read-only and says so on stderr.
"""

import fcntl
import os
import sys

from . import gw

_SECTIONS = ("gw", "ht")


class CountCache:
    """One cache file: load at open, append as results arrive, compact at
    close.  Usable as a context manager."""

    def __init__(self, path):
        self.path = path
        self.entries = {}
        self.read_only = False
        self._handle = None
        self._dirty = False
        parent = os.path.dirname(os.path.abspath(path))
        os.makedirs(parent, exist_ok=True)
        try:
            self._handle = open(path, "a+")
        except OSError as exc:
            print("cache %s unavailable (%s); running without persistence"
                  % (path, exc), file=sys.stderr)
            self.read_only = True
            return
        try:
            fcntl.flock(self._handle.fileno(), fcntl.LOCK_EX | fcntl.LOCK_NB)
        except OSError:
            print("cache %s is locked by another run; opening read-only"
                  % (path,), file=sys.stderr)
            self.read_only = True
        self._load()

    def _load(self):
        bad = 0
        self._handle.seek(0)
        for line in self._handle:
            line = line.rstrip("\n")
            if not line:
                continue
            head, sep, tail = line.partition("\t")
            section, colon, key = head.partition(":")
            if not sep or not colon or section not in _SECTIONS:
                bad += 1
                continue
            try:
                self.entries[(section, key)] = int(tail)
            except ValueError:
                bad += 1
        if bad:
            print("cache %s: skipped %d unreadable line(s)"
                  % (self.path, bad), file=sys.stderr)

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc, tb):
        self.close(compact=exc_type is None)
        return False

    def preload(self, engine):
        """Push every stored record into the backend and engine memos."""
        loaded = 0
        for (section, key), value in self.entries.items():
            try:
                if section == "gw":
                    gw.absorb_item(key, value)
                else:
                    engine.absorb_item(key, value)
                loaded += 1
            except (ValueError, TypeError):
                pass
        return loaded

    def harvest(self, engine):
        """Append any results the run produced that the file lacks."""
        fresh = []
        for section, items in (("gw", gw.memo_items()),
                               ("ht", engine.memo_items())):
            for key, value in items:
                if (section, key) not in self.entries:
                    self.entries[(section, key)] = value
                    fresh.append((section, key, value))
        if not fresh or self.read_only:
            return len(fresh)
        self._handle.seek(0, os.SEEK_END)
        for section, key, value in fresh:
            self._handle.write("%s:%s\t%d\n" % (section, key, value))
        self._handle.flush()
        self._dirty = True
        return len(fresh)

    def close(self, compact=True):
        """Release the file, rewriting it deduplicated and sorted if this
        run added anything and exited cleanly."""
        if self._handle is None:
            return
        if compact and self._dirty and not self.read_only:
            tmp = "%s.%d.tmp" % (self.path, os.getpid())
            with open(tmp, "w") as out:
                for (section, key), value in sorted(self.entries.items()):
                    out.write("%s:%s\t%d\n" % (section, key, value))
                out.flush()
                os.fsync(out.fileno())
            os.replace(tmp, self.path)
        try:
            fcntl.flock(self._handle.fileno(), fcntl.LOCK_UN)
        except OSError:
            pass
        self._handle.close()
        self._handle = None
