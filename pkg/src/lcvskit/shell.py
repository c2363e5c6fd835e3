import contextlib
import os
import sys
from typing import ContextManager, TextIO

STDOUT = '-'


def open_output(path: str, newline: str = None) -> ContextManager[TextIO]:
    """Opens path for writing, creating missing folders; "-" writes to stdout and leaves it open."""
    if path == STDOUT:
        return contextlib.nullcontext(sys.stdout)

    folder = os.path.dirname(path)
    if folder and not os.path.isdir(folder):
        os.makedirs(folder)

    return open(path, 'w', encoding='utf-8', newline=newline)
