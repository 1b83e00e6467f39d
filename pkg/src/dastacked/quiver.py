"""Quivers and paths.

Paths are read left to right: ``a.b`` means first ``a`` then ``b``, so
``t(a) == s(b)``.  Vertices and arrows are referred to by dense integer
indices internally; labels only matter at the input/output boundary.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

DEFAULT_MAX_PATH_LENGTH = 64


class PathLengthError(ValueError):
    pass


class _Zero:
    """The zero result of composing non-composable paths."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "Zero"

    def __bool__(self):
        return False


ZERO = _Zero()


class Path(NamedTuple):
    """A basis path; ``arrows == ()`` is the trivial path at ``source``."""

    source: int
    target: int
    arrows: tuple

    @property
    def length(self) -> int:
        return len(self.arrows)

    def is_trivial(self) -> bool:
        return not self.arrows


@dataclass(frozen=True)
class Quiver:
    vertices: tuple
    arrows: tuple  # (label, source index, target index)
    max_path_length: int = DEFAULT_MAX_PATH_LENGTH
    _vindex: dict = field(init=False, repr=False, compare=False)
    _aindex: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "arrows", tuple(tuple(a) for a in self.arrows))
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertex label")
        labels = [a[0] for a in self.arrows]
        if len(set(labels)) != len(labels):
            raise ValueError("duplicate arrow label")
        n = len(self.vertices)
        for label, s, t in self.arrows:
            if not (0 <= s < n and 0 <= t < n):
                raise ValueError(f"arrow {label} has an invalid endpoint")
        object.__setattr__(self, "_vindex", {v: i for i, v in enumerate(self.vertices)})
        object.__setattr__(self, "_aindex", {a[0]: i for i, a in enumerate(self.arrows)})

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    @property
    def num_arrows(self) -> int:
        return len(self.arrows)

    def source(self, a: int) -> int:
        return self.arrows[a][1]

    def target(self, a: int) -> int:
        return self.arrows[a][2]

    def arrow_label(self, a: int) -> str:
        return self.arrows[a][0]

    def vertex_index(self, label: str) -> int:
        return self._vindex[label]

    def arrow_index(self, label: str) -> int:
        return self._aindex[label]

    def has_vertex(self, label: str) -> bool:
        return label in self._vindex

    def has_arrow(self, label: str) -> bool:
        return label in self._aindex

    def arrows_from(self, v: int) -> list[int]:
        return [a for a, (_, s, _) in enumerate(self.arrows) if s == v]

    def trivial(self, v: int) -> Path:
        return Path(v, v, ())

    def arrow(self, a: int) -> Path:
        return Path(self.arrows[a][1], self.arrows[a][2], (a,))

    def path(self, arrows: Sequence[int], source: int | None = None) -> Path:
        """Build a path from arrow indices; raises if they do not compose."""
        arrows = tuple(arrows)
        if not arrows:
            if source is None:
                raise ValueError("trivial path needs its vertex")
            return Path(source, source, ())
        if len(arrows) > self.max_path_length:
            raise PathLengthError(f"path of length {len(arrows)} exceeds cutoff {self.max_path_length}")
        for x, y in zip(arrows, arrows[1:]):
            if self.arrows[x][2] != self.arrows[y][1]:
                raise ValueError(
                    f"arrows {self.arrows[x][0]} and {self.arrows[y][0]} do not compose"
                )
        s = self.arrows[arrows[0]][1]
        if source is not None and source != s:
            raise ValueError("source vertex does not match the first arrow")
        return Path(s, self.arrows[arrows[-1]][2], arrows)

    def compose(self, p: Path, q: Path):
        """Concatenate ``p`` then ``q``; ``ZERO`` when ``t(p) != s(q)``."""
        if p is ZERO or q is ZERO or p.target != q.source:
            return ZERO
        if len(p.arrows) + len(q.arrows) > self.max_path_length:
            raise PathLengthError(
                f"path of length {len(p.arrows) + len(q.arrows)} exceeds cutoff {self.max_path_length}"
            )
        return Path(p.source, q.target, p.arrows + q.arrows)

    def format_path(self, p: Path) -> str:
        if not p.arrows:
            return self.vertices[p.source]
        return ".".join(self.arrows[a][0] for a in p.arrows)

    def paths_of_length(self, d: int) -> list[Path]:
        """All paths of length exactly ``d`` (exhaustive; small quivers only)."""
        if d == 0:
            return [self.trivial(v) for v in range(self.num_vertices)]
        out = [self.arrow(a) for a in range(self.num_arrows)]
        for _ in range(d - 1):
            out = [
                Path(p.source, self.arrows[a][2], p.arrows + (a,))
                for p in out
                for a in range(self.num_arrows)
                if self.arrows[a][1] == p.target
            ]
        return out


def compose(quiver: Quiver, p: Path, q: Path):
    return quiver.compose(p, q)
