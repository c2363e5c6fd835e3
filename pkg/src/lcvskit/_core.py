from typing import Optional


class LcvsError(Exception):
    pass


class InvalidFoV(LcvsError, ValueError):
    pass


class GridTooLarge(LcvsError):
    def __init__(self, cells: int, budget: int):
        super().__init__(cells, budget)
        self.cells: int = cells
        self.budget: int = budget

    def __str__(self):
        return f'Grid of {self.cells} cells exceeds the budget of {self.budget} cells'


class InputTooLarge(LcvsError):
    def __init__(self, m: int, n: int, limit: int):
        super().__init__(m, n, limit)
        self.m: int = m
        self.n: int = n
        self.limit: int = limit

    def __str__(self):
        return f'Input of size {self.m}x{self.n} exceeds the limit of {self.limit} frames per video'


class EmptyInput(LcvsError):
    pass


class DegenerateStep(LcvsError):
    pass


class ParseError(LcvsError):
    def __init__(self, path: str, line: Optional[int], message: str):
        super().__init__(path, line, message)
        self.path: str = path
        self.line: Optional[int] = line
        self.message: str = message

    def __str__(self):
        where = self.path if self.line is None else f'{self.path}:{self.line}'
        return f'{where}: {self.message}'


class EmptyFile(LcvsError):
    def __init__(self, path: str):
        super().__init__(path)
        self.path: str = path

    def __str__(self):
        return f'File "{self.path}" contains no samples'


class SchemaError(LcvsError):
    def __init__(self, path: str, field: str, message: Optional[str] = None):
        super().__init__(path, field, message)
        self.path: str = path
        self.field: str = field
        self.message: Optional[str] = message

    def __str__(self):
        string = f'{self.path}: invalid or missing field "{self.field}"'
        if self.message is not None:
            string += ': ' + self.message
        return string


class UnknownId(LcvsError, KeyError):
    def __init__(self, video_id: str):
        super().__init__(video_id)
        self.video_id: str = video_id

    def __str__(self):
        return f'Unknown video id: {self.video_id!r}'


class IdMismatch(LcvsError):
    pass
