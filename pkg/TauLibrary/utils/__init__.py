# -*- coding: utf-8 -*-
import os
import re
from pathlib import Path

from robot.utils import abspath

from TauLibrary.errors import ConfigError

from .tablecache import TableCache

_RANGE = re.compile(r'^\s*(-?\d+)\s*\.\.\s*(-?\d+)\s*$')


def parse_range(value):
    """Parses ``lo..hi`` (or a single integer) into an inclusive ``(lo, hi)`` pair.

    ``lo > hi`` is accepted and denotes an empty range. Tuples and lists of
    two integers are passed through.
    """
    if isinstance(value, (tuple, list)):
        if len(value) != 2:
            raise ConfigError('range needs two bounds, got %r' % (value,))
        try:
            return int(value[0]), int(value[1])
        except (TypeError, ValueError):
            raise ConfigError('range bounds must be integers, got %r' % (value,)) from None
    if isinstance(value, int) and not isinstance(value, bool):
        return value, value
    text = str(value)
    match = _RANGE.match(text)
    if match:
        return int(match.group(1)), int(match.group(2))
    try:
        single = int(text)
    except ValueError:
        raise ConfigError("expected an integer range like '-1..1', got %r" % (text,)) from None
    return single, single


def parse_window(value):
    """Windows share the range syntax; ``lo > hi`` is the empty window."""
    return parse_range(value)


def format_range(bounds):
    return '%d..%d' % tuple(bounds)


def write_text(path, text):
    """Writes ``text`` as UTF-8 with ``\\n`` line endings and returns the absolute path."""
    path = _absnorm(path)
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, 'w', encoding='UTF-8', newline='\n') as f:
        f.write(text)
    return path


def read_file(file_path):
    with open(_absnorm(file_path), encoding='UTF-8', errors='strict', newline="") as f:
        return f.read().replace("\r\n", "\n")


def _absnorm(path):
    return abspath(_normalize_path(path))


def _normalize_path(path):
    """Normalizes the given path.

    - Collapses redundant separators and up-level references.
    - Replaces initial ``~`` or ``~user`` by that user's home directory.
    - Converts ``pathlib.Path`` instances to ``str``.
    """
    if isinstance(path, Path):
        path = str(path)
    else:
        path = path.replace("/", os.sep)
    path = os.path.normpath(os.path.expanduser(path))
    return path or "."
